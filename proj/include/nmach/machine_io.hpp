#pragma once

#include <string>

#include <json.hpp>

#include "nmach/machine.hpp"

namespace nmach {

// {"alphabet": [...], "states": [...], "matrices": {"<symbol>": [[...]]}, "stationary": [...]}
// Numbers are written in shortest round-trip form, so reloading is bit-exact.
nlohmann::json machine_to_json(const Machine& m);
// The stationary vector is recomputed; a supplied one is only used when the
// fixed space is degenerate and it passes validation.
Machine machine_from_json(const nlohmann::json& j, double tol = kStructTol);

std::string machine_to_string(const Machine& m, int indent = 2);
Machine machine_from_string(const std::string& text, double tol = kStructTol);
Machine load_machine(const std::string& path, double tol = kStructTol);
void save_machine(const Machine& m, const std::string& path);

}  // namespace nmach
