#pragma once

#include <filesystem>
#include <initializer_list>
#include <string>

#include <json.hpp>

#include "ctl/circuit.hpp"

namespace ctl {

// Key-ordered so emitted metadata is byte-stable.
using Json = nlohmann::ordered_json;

enum class Quantity {
  Capacitance,
  Inductance,
  Current,
  AngularFrequency,  // plain numbers are rad/s; Hz-suffixed values pick up 2*pi
  Temperature,
  Time,
  Energy,
  Length,
  Dimensionless
};

// Accepts a JSON number (already SI) or a string with a unit suffix, e.g.
// "0.4pF", "60pH", "1.25uA", "5GHz", "200mK", "18ns". Throws ConfigError
// naming the context on anything else.
double parse_quantity(const Json& value, Quantity kind,
                      const std::string& context);

// Rejects keys outside the allowed set, naming the offenders.
void require_keys(const Json& object, std::initializer_list<const char*> allowed,
                  const std::string& context);

// {"j": 30, "line": "left"|"right"}
ModeIndex parse_mode(const Json& value, const std::string& context);

struct RunConfig {
  CircuitParams circuit;
  DriveSpec drive;  // e0 defaults to the circuit junction energy
  Json blocks;      // per-command sections, top-level keys already checked

  // Circuit and drive re-serialized in plain SI for run metadata.
  Json resolved() const;
};

RunConfig load_config(const std::filesystem::path& path);

}  // namespace ctl
