#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "serialize.hpp"

namespace covexp::cli {

// Resolved invocation. Every field has a concrete value after resolve(), so the
// JSON form embedded in a report is enough to replay the run.
struct RunConfig {
  std::string command;              // classify | reduce | bargmann | schrodinger | verify-rep
  std::string algebra;              // catalog selector, empty when `config` is used
  std::string config;               // algebra config path
  unsigned degree = 2;
  bool trivial_action = false;
  std::vector<std::string> keep;    // reduce: coordinates allowed to survive
  std::string exponent;             // reduce: optional exponent file
  std::size_t modes = 1024;         // schrodinger grid size; verify-rep Weyl order
  double box = 80.0;                // schrodinger: x in [-box/2, box/2)
  double tol = 1e-9;
  std::string out;
  std::string format = "json";

  json to_json() const;
  // Rejects unknown or mistyped fields.
  static RunConfig from_json(const json& j);
  // Throws ConfigError for anything that can be rejected before computing.
  void validate() const;
};

struct Outcome {
  int exit_code = 0;  // 0 ok, 2 computation-level failure
  json payload;
  std::string text;
};

// Runs a validated config. Throws ConfigError / InvalidAlgebra /
// InvalidRealization for input problems and NotACocycle for bad exponents.
Outcome execute(const RunConfig& cfg);

json make_envelope(const RunConfig& cfg, const json& payload);
// Structural check of an envelope: schema version, required keys, embedded
// config parses, checksum matches. On failure `why` says what is wrong.
bool validate_envelope(const json& envelope, std::string* why = nullptr);

// Full front end. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace covexp::cli
