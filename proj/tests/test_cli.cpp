#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

int g_workspace_counter = 0;

// Fresh directory per test case; removed on destruction so reruns start clean.
struct Workspace {
  fs::path dir;

  Workspace() {
    dir = fs::temp_directory_path() /
          ("ctl_cli_" + std::to_string(::getpid()) + "_" +
           std::to_string(g_workspace_counter++));
    fs::create_directories(dir);
  }
  ~Workspace() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }

  fs::path config(const Json& body, const std::string& name = "run.json") const {
    const fs::path p = dir / name;
    std::ofstream out(p);
    out << body.dump(2) << '\n';
    return p;
  }
};

int run_tool(const std::string& args) {
  const std::string cmd =
      std::string(CTL_SIM_BINARY) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json read_json(const fs::path& p) { return Json::parse(slurp(p)); }

Json base_circuit() {
  return {{"c_left", "0.4pF"}, {"l_left", "60pH"},   {"c_right", "1.6pF"},
          {"l_right", "60pH"}, {"n_cells", 200},     {"i_crit", "1.25uA"}};
}

// Single tone on the j = 30 conversion gap, amplitude 0.1.
Json conversion_drive() {
  return {{"tones", Json::array({{{"eps", 0.1},
                                  {"kappa", 0.0},
                                  {"frequency", 132268689500.7148}}})}};
}

std::vector<std::vector<double>> read_csv(const fs::path& p,
                                          std::string* header = nullptr) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::string line;
  REQUIRE(std::getline(in, line));
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

TEST_CASE("dispersion run writes the band table and is byte-stable") {
  Workspace ws;
  const fs::path cfg = ws.config({{"circuit", base_circuit()}});
  const fs::path out_a = ws.dir / "a";
  const fs::path out_b = ws.dir / "b";

  REQUIRE(run_tool("dispersion --config " + cfg.string() + " --out " +
                   out_a.string()) == 0);
  REQUIRE(run_tool("dispersion --config " + cfg.string() + " --out " +
                   out_b.string()) == 0);

  std::string header;
  const auto rows = read_csv(out_a / "dispersion.csv", &header);
  CHECK(header ==
        "j,k_j,omega_bare,omega_corrected,upsilon_bare,upsilon_corrected,"
        "epsilon_corrected_over_hbar");
  REQUIRE(rows.size() == 100);
  CHECK(rows.front()[0] == 1.0);
  CHECK(rows.back()[0] == 100.0);
  CHECK(rows.back()[2] == doctest::Approx(102062072615.96576).epsilon(1e-13));
  CHECK(rows[49][4] == doctest::Approx(144337567297.40643).epsilon(1e-13));

  const Json meta = read_json(out_a / "dispersion.json");
  CHECK(meta["tool"]["name"] == "ctl_sim");
  CHECK(meta["command"] == "dispersion");
  CHECK(meta["invariants"]["omega_bare_decreasing"] == true);
  CHECK(meta["invariants"]["upsilon_bare_increasing"] == true);
  CHECK(meta["invariants"]["corrected_above_bare"] == true);
  CHECK(meta["passed"] == true);
  CHECK(meta["config"]["circuit"]["c_left"].get<double>() ==
        doctest::Approx(0.4e-12));

  CHECK(slurp(out_a / "dispersion.csv") == slurp(out_b / "dispersion.csv"));
}

TEST_CASE("match run reproduces the degeneracy capacitances") {
  Workspace ws;
  const fs::path cfg = ws.config(
      {{"circuit", base_circuit()},
       {"match", {{"j_values", Json::array({30, 50, 100})}}}});
  REQUIRE(run_tool("match --config " + cfg.string() + " --out " +
                   ws.dir.string()) == 0);

  const Json meta = read_json(ws.dir / "match.json");
  CHECK(meta["invariants"]["all_solved"] == true);
  const Json& results = meta["results"];
  REQUIRE(results.size() == 3);
  const double expect_pf[] = {0.27, 1.60, 6.39};
  const double expect_si[] = {2.720054072416551e-13, 1.5981794722107939e-12,
                              6.389078387737778e-12};
  for (int k = 0; k < 3; ++k) {
    CHECK(results[k]["c_r_picofarad"].get<double>() ==
          doctest::Approx(expect_pf[k]).epsilon(0.005 / expect_pf[k]));
    CHECK(results[k]["c_r"].get<double>() ==
          doctest::Approx(expect_si[k]).epsilon(1e-9));
    CHECK(results[k]["relative_residual"].get<double>() <= 1e-12);
  }
}

TEST_CASE("classify run reports the conversion resonance") {
  Workspace ws;
  const fs::path cfg = ws.config(
      {{"circuit", base_circuit()},
       {"drive", conversion_drive()},
       {"classify",
        {{"modes", Json::array({{{"j", 30}, {"line", "left"}},
                                {{"j", 30}, {"line", "right"}}})}}}});
  REQUIRE(run_tool("classify --config " + cfg.string() + " --out " +
                   ws.dir.string()) == 0);

  const Json meta = read_json(ws.dir / "classify.json");
  REQUIRE(meta["invariants"]["count"] == 1);
  const Json& res = meta["resonances"][0];
  CHECK(res["kind"] == "raman_l_to_r");
  CHECK(res["mode_left"]["j"] == 30);
  CHECK(res["mode_right"]["line"] == "right");
  CHECK(res["drive_tone_index"] == 0);
  CHECK(std::abs(res["detuning"].get<double>()) < 1.0);
}

TEST_CASE("evolve run conserves what the resonance conserves") {
  Workspace ws;
  Json evolve = {{"modes", Json::array({{{"j", 30}, {"line", "left"}},
                                        {{"j", 30}, {"line", "right"}}})},
                 {"resonance", "free"},
                 {"initial",
                  {{"type", "thermal"},
                   {"occupations", Json::array({0.3, 0.1})}}},
                 {"t_max", 1e-7},
                 {"n_steps", 40}};
  fs::path cfg = ws.config({{"circuit", base_circuit()},
                            {"drive", conversion_drive()},
                            {"evolve", evolve}},
                           "free.json");
  REQUIRE(run_tool("evolve --config " + cfg.string() + " --out " +
                   (ws.dir / "free").string()) == 0);

  std::string header;
  auto rows = read_csv(ws.dir / "free" / "evolve.csv", &header);
  CHECK(header == "t,n_l30,n_r30");
  REQUIRE(rows.size() == 41);
  for (const auto& row : rows) {
    CHECK(row[1] == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(row[2] == doctest::Approx(0.1).epsilon(1e-9));
  }

  evolve["resonance"] = "auto";
  cfg = ws.config({{"circuit", base_circuit()},
                   {"drive", conversion_drive()},
                   {"evolve", evolve}},
                  "auto.json");
  REQUIRE(run_tool("evolve --config " + cfg.string() + " --out " +
                   (ws.dir / "auto").string()) == 0);

  const Json meta = read_json(ws.dir / "auto" / "evolve.json");
  CHECK(meta["request"]["resonance"] == "raman_l_to_r");
  CHECK(meta["invariants"]["symplectic_ok"] == true);
  CHECK(meta["invariants"]["uncertainty_ok"] == true);

  rows = read_csv(ws.dir / "auto" / "evolve.csv");
  bool moved = false;
  for (const auto& row : rows) {
    CHECK(row[1] + row[2] == doctest::Approx(0.4).epsilon(1e-6));
    moved = moved || std::abs(row[1] - 0.3) > 0.15;
  }
  CHECK(moved);
}

TEST_CASE("g2 squeeze scan settles on the thermal plateau") {
  Workspace ws;
  const fs::path cfg = ws.config({{"circuit", base_circuit()},
                                  {"g2",
                                   {{"family", "squeeze"},
                                    {"s_left", 0},
                                    {"s_right", 0},
                                    {"xi", 1.0},
                                    {"xi_t_max", 10.0},
                                    {"n_points", 51}}}});
  REQUIRE(run_tool("g2 --config " + cfg.string() + " --out " +
                   ws.dir.string()) == 0);

  const Json meta = read_json(ws.dir / "g2.json");
  CHECK(meta["invariants"]["nonnegative_correlator"] == true);
  CHECK(meta["invariants"]["final_normalized"].get<double>() ==
        doctest::Approx(2.0).epsilon(1e-3));

  const auto rows = read_csv(ws.dir / "g2_scan.csv");
  REQUIRE(rows.size() == 51);
  CHECK(rows.back()[0] == 10.0);
}

TEST_CASE("hom run reports a clean dip and balanced pairs") {
  Workspace ws;
  const fs::path cfg = ws.config(
      {{"circuit", base_circuit()},
       {"hom", {{"xi", 1.0}, {"n_points", 11}}}});
  REQUIRE(run_tool("hom --config " + cfg.string() + " --out " +
                   ws.dir.string()) == 0);

  const Json meta = read_json(ws.dir / "hom.json");
  const Json& report = meta["report"];
  CHECK(report["t_dip"].get<double>() ==
        doctest::Approx(0.7853981633974483).epsilon(1e-14));
  CHECK(report["g2_at_dip"].get<double>() <= 1e-10);
  CHECK(report["prob_20_at_dip"].get<double>() == doctest::Approx(0.5));
  CHECK(report["prob_02_at_dip"].get<double>() == doctest::Approx(0.5));
  CHECK(report["prob_11_at_dip"].get<double>() <= 1e-10);
  CHECK(meta["passed"] == true);
}

TEST_CASE("power run matches the matched-point stroke average") {
  Workspace ws;
  const fs::path cfg = ws.config({{"circuit", base_circuit()},
                                  {"drive", conversion_drive()},
                                  {"power",
                                   {{"pair", {{"j_left", 30}, {"j_right", 30}}},
                                    {"t_hot", "200mK"},
                                    {"t_cold", "20mK"},
                                    {"n_points", 501},
                                    {"strokes", 1.0}}}});
  REQUIRE(run_tool("power --config " + cfg.string() + " --out " +
                   ws.dir.string()) == 0);

  const Json meta = read_json(ws.dir / "power.json");
  const Json& report = meta["report"];
  CHECK(report["xi"].get<double>() ==
        doctest::Approx(-16425843.330392823).epsilon(1e-9));
  CHECK(report["n_hot"].get<double>() ==
        doctest::Approx(0.00018495594810457284).epsilon(1e-10));
  CHECK(report["time_average"].get<double>() ==
        doctest::Approx(2.697797284757583e-20).epsilon(1e-5));
  CHECK(meta["invariants"]["sign_follows_imbalance"] == true);

  const auto rows = read_csv(ws.dir / "power_trace.csv");
  REQUIRE(rows.size() == 501);
  CHECK(rows.front()[1] == doctest::Approx(0.0).scale(1e-20));
}

TEST_CASE("seed and tolerance land in the run metadata") {
  Workspace ws;
  const fs::path cfg = ws.config({{"circuit", base_circuit()}});
  REQUIRE(run_tool("dispersion --config " + cfg.string() + " --out " +
                   ws.dir.string() + " --seed 42 --tol 1e-9") == 0);
  const Json meta = read_json(ws.dir / "dispersion.json");
  CHECK(meta["seed"] == 42);
  CHECK(meta["tolerance"].get<double>() == doctest::Approx(1e-9));
}

TEST_CASE("bad inputs exit nonzero without partial metadata") {
  Workspace ws;

  CHECK(run_tool("dispersion --config " + (ws.dir / "missing.json").string() +
                 " --out " + ws.dir.string()) != 0);

  Json bad = {{"circuit", base_circuit()}};
  bad["circuit"]["c_middle"] = "1pF";
  CHECK(run_tool("dispersion --config " + ws.config(bad, "bad.json").string() +
                 " --out " + ws.dir.string()) != 0);

  const fs::path no_block = ws.config({{"circuit", base_circuit()}}, "nb.json");
  CHECK(run_tool("g2 --config " + no_block.string() + " --out " +
                 ws.dir.string()) != 0);
  CHECK_FALSE(fs::exists(ws.dir / "g2.json"));

  Json both = {{"circuit", base_circuit()},
               {"hom",
                {{"xi", 1.0},
                 {"pair", {{"j_left", 30}, {"j_right", 30}}}}}};
  CHECK(run_tool("hom --config " + ws.config(both, "both.json").string() +
                 " --out " + ws.dir.string()) != 0);

  CHECK(run_tool("frobnicate --config " + no_block.string()) != 0);
  CHECK(run_tool("dispersion") != 0);
}

TEST_CASE("output directory is created on demand") {
  Workspace ws;
  const fs::path cfg = ws.config({{"circuit", base_circuit()}});
  const fs::path nested = ws.dir / "deep" / "nested" / "out";
  REQUIRE(run_tool("dispersion --config " + cfg.string() + " --out " +
                   nested.string()) == 0);
  CHECK(fs::exists(nested / "dispersion.csv"));
  CHECK(fs::exists(nested / "dispersion.json"));
}
