#include "ctl/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <utility>
#include <vector>

#include "ctl/errors.hpp"

namespace ctl {

namespace {

struct Suffix {
  const char* text;
  double factor;
};

const std::vector<Suffix>& suffixes(Quantity kind) {
  static const std::vector<Suffix> capacitance{
      {"fF", 1e-15}, {"pF", 1e-12}, {"nF", 1e-9}, {"uF", 1e-6}, {"mF", 1e-3},
      {"F", 1.0}};
  static const std::vector<Suffix> inductance{
      {"pH", 1e-12}, {"nH", 1e-9}, {"uH", 1e-6}, {"mH", 1e-3}, {"H", 1.0}};
  static const std::vector<Suffix> current{
      {"nA", 1e-9}, {"uA", 1e-6}, {"mA", 1e-3}, {"A", 1.0}};
  constexpr double two_pi = 2.0 * std::numbers::pi;
  static const std::vector<Suffix> angular{{"rad/s", 1.0},
                                           {"THz", two_pi * 1e12},
                                           {"GHz", two_pi * 1e9},
                                           {"MHz", two_pi * 1e6},
                                           {"kHz", two_pi * 1e3},
                                           {"Hz", two_pi}};
  static const std::vector<Suffix> temperature{
      {"uK", 1e-6}, {"mK", 1e-3}, {"K", 1.0}};
  static const std::vector<Suffix> time{{"fs", 1e-15}, {"ps", 1e-12},
                                        {"ns", 1e-9},  {"us", 1e-6},
                                        {"ms", 1e-3},  {"s", 1.0}};
  static const std::vector<Suffix> energy{{"J", 1.0}};
  static const std::vector<Suffix> length{
      {"nm", 1e-9}, {"um", 1e-6}, {"mm", 1e-3}, {"m", 1.0}};
  static const std::vector<Suffix> none{};
  switch (kind) {
    case Quantity::Capacitance: return capacitance;
    case Quantity::Inductance: return inductance;
    case Quantity::Current: return current;
    case Quantity::AngularFrequency: return angular;
    case Quantity::Temperature: return temperature;
    case Quantity::Time: return time;
    case Quantity::Energy: return energy;
    case Quantity::Length: return length;
    case Quantity::Dimensionless: return none;
  }
  return none;
}

}  // namespace

double parse_quantity(const Json& value, Quantity kind,
                      const std::string& context) {
  if (value.is_number()) {
    return value.get<double>();
  }
  if (!value.is_string()) {
    throw ConfigError(context + ": expected a number or unit string");
  }
  const std::string text = value.get<std::string>();
  const char* begin = text.c_str();
  char* end = nullptr;
  const double magnitude = std::strtod(begin, &end);
  if (end == begin) {
    throw ConfigError(context + ": no number in \"" + text + "\"");
  }
  std::string rest(end);
  while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.front()))) {
    rest.erase(rest.begin());
  }
  if (rest.empty()) {
    throw ConfigError(context + ": missing unit in \"" + text +
                      "\" (use a plain number for SI)");
  }
  for (const Suffix& s : suffixes(kind)) {
    if (rest == s.text) return magnitude * s.factor;
  }
  throw ConfigError(context + ": unknown unit \"" + rest + "\"");
}

void require_keys(const Json& object, std::initializer_list<const char*> allowed,
                  const std::string& context) {
  if (!object.is_object()) {
    throw ConfigError(context + ": expected an object");
  }
  for (const auto& item : object.items()) {
    bool ok = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw ConfigError(context + ": unknown key \"" + item.key() + "\"");
    }
  }
}

ModeIndex parse_mode(const Json& value, const std::string& context) {
  require_keys(value, {"j", "line"}, context);
  if (!value.contains("j") || !value.contains("line")) {
    throw ConfigError(context + ": mode needs j and line");
  }
  if (!value["j"].is_number_integer()) {
    throw ConfigError(context + ": j must be an integer");
  }
  const std::string line = value["line"].get<std::string>();
  if (line != "left" && line != "right") {
    throw ConfigError(context + ": line must be \"left\" or \"right\"");
  }
  return {value["j"].get<int>(), line == "left" ? Line::Left : Line::Right};
}

Json RunConfig::resolved() const {
  Json tones = Json::array();
  for (const DriveTone& tone : drive.tones) {
    tones.push_back(
        {{"eps", tone.eps}, {"kappa", tone.kappa}, {"omega", tone.omega}});
  }
  return {{"circuit",
           {{"c_left", circuit.c_left},
            {"l_left", circuit.l_left},
            {"c_right", circuit.c_right},
            {"l_right", circuit.l_right},
            {"n_cells", circuit.n_cells},
            {"dx", circuit.dx},
            {"i_crit", circuit.i_crit},
            {"josephson_energy", circuit.josephson_energy()}}},
          {"drive", {{"e0", drive.e0}, {"tones", tones}}}};
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file " + path.string());
  }
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config parse failure: " + std::string(e.what()));
  }

  require_keys(doc,
               {"circuit", "drive", "dispersion", "match", "classify", "evolve",
                "g2", "hom", "power"},
               "config");
  if (!doc.contains("circuit")) {
    throw ConfigError("config: missing circuit section");
  }

  const Json& c = doc["circuit"];
  require_keys(c,
               {"c_left", "l_left", "c_right", "l_right", "n_cells",
                "dx", "i_crit"},
               "circuit");
  for (const char* key : {"c_left", "l_left", "c_right", "l_right", "n_cells"}) {
    if (!c.contains(key)) {
      throw ConfigError(std::string("circuit: missing ") + key);
    }
  }

  RunConfig cfg;
  cfg.circuit.c_left = parse_quantity(c["c_left"], Quantity::Capacitance,
                                      "circuit.c_left");
  cfg.circuit.l_left =
      parse_quantity(c["l_left"], Quantity::Inductance, "circuit.l_left");
  cfg.circuit.c_right = parse_quantity(c["c_right"], Quantity::Capacitance,
                                       "circuit.c_right");
  cfg.circuit.l_right =
      parse_quantity(c["l_right"], Quantity::Inductance, "circuit.l_right");
  if (!c["n_cells"].is_number_integer()) {
    throw ConfigError("circuit.n_cells must be an integer");
  }
  cfg.circuit.n_cells = c["n_cells"].get<int>();
  if (c.contains("dx")) {
    cfg.circuit.dx =
        parse_quantity(c["dx"], Quantity::Length, "circuit.dx");
  }
  if (c.contains("i_crit")) {
    cfg.circuit.i_crit =
        parse_quantity(c["i_crit"], Quantity::Current, "circuit.i_crit");
  }
  try {
    cfg.circuit.validate();
  } catch (const std::exception& e) {
    throw ConfigError("circuit: " + std::string(e.what()));
  }

  cfg.drive.e0 = cfg.circuit.josephson_energy();
  if (doc.contains("drive")) {
    const Json& d = doc["drive"];
    require_keys(d, {"e0", "tones"}, "drive");
    if (d.contains("e0")) {
      cfg.drive.e0 = parse_quantity(d["e0"], Quantity::Energy, "drive.e0");
    }
    if (d.contains("tones")) {
      if (!d["tones"].is_array()) {
        throw ConfigError("drive.tones must be an array");
      }
      int k = 0;
      for (const Json& tone : d["tones"]) {
        const std::string ctx = "drive.tones[" + std::to_string(k++) + "]";
        require_keys(tone, {"eps", "kappa", "frequency"}, ctx);
        if (!tone.contains("frequency")) {
          throw ConfigError(ctx + ": missing frequency");
        }
        DriveTone t;
        if (tone.contains("eps")) {
          t.eps = parse_quantity(tone["eps"], Quantity::Dimensionless,
                                 ctx + ".eps");
        }
        if (tone.contains("kappa")) {
          t.kappa = parse_quantity(tone["kappa"], Quantity::Dimensionless,
                                   ctx + ".kappa");
        }
        t.omega = parse_quantity(tone["frequency"], Quantity::AngularFrequency,
                                 ctx + ".frequency");
        cfg.drive.tones.push_back(t);
      }
    }
  }

  cfg.blocks = Json::object();
  for (const char* key :
       {"dispersion", "match", "classify", "evolve", "g2", "hom", "power"}) {
    if (doc.contains(key)) cfg.blocks[key] = doc[key];
  }
  return cfg;
}

}  // namespace ctl
