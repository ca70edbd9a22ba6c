#pragma once

#include <json.hpp>

#include "permsaddle/oracles.hpp"

namespace permsaddle {

// Stable JSON schema for a test run:
//   { "n": ..., "v0": ...,
//     "methods": { "saddlepoint": {"p_value": ...},
//                  "exact": {"p_value": ...},
//                  "monte_carlo": {"p_value": ..., "std_error": ..., "replicates": ...},
//                  "normal": {"p_value": ...} },
//     "diagnostics": { ... }, "errors": { ... } }
// Callers may add extra top-level keys (the CLI adds "input"); parsing
// ignores anything it does not know.
nlohmann::json report_to_json(const PValueReport& report);
PValueReport report_from_json(const nlohmann::json& doc);

}  // namespace permsaddle
