#pragma once

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>

#include "covexp/base_action.hpp"
#include "covexp/error.hpp"
#include "covexp/exponent_space.hpp"
#include "covexp/factor_rep.hpp"
#include "covexp/lie_algebra.hpp"
#include "covexp/trunc_poly.hpp"

namespace covexp::cli {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Bad user input: unknown fields, malformed JSON, invalid values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct LoadedAlgebra {
  LieAlgebra algebra;
  std::optional<ActionRealization> realization;  // absent: trivial action on `coordinates`
  std::vector<std::string> coordinates;
};

// Parses the algebra config schema:
//   {"schema":1, "dim":n, "names":[...],
//    "brackets":[{"i":int,"j":int,"coeffs":{"k":"p/q",...}},...],
//    "chart":{"dim":d,"coords":[...]},
//    "fields":[{"generator":int,"components":[{"const":"p/q","linear":{"coord":"p/q"}},...]},...]}
// A bracket entry (i, j) also defines (j, i) by antisymmetry unless (j, i) is
// listed explicitly, in which case both entries are taken verbatim and checked.
// Throws ConfigError, InvalidAlgebra (offending pair/triple) or
// InvalidRealization (offending generator pair).
LoadedAlgebra parse_algebra_config(const json& doc, const std::string& name);
LoadedAlgebra load_algebra_config(const std::filesystem::path& path);

json poly_to_json(const TruncPoly& p, const std::vector<std::string>& coords);
TruncPoly poly_from_json(const json& j, std::size_t num_vars, unsigned degree_cap);

json exponent_to_json(const InfExponent& xi, const std::vector<std::string>& names,
                      const std::vector<std::string>& coords);
// Accepts {"pairs":[{"i":..,"j":..,"terms":[{"exponents":[..],"coeff":"p/q"}]}]}; other
// keys written by exponent_to_json ("left", "right", "text") are ignored.
InfExponent exponent_from_json(const json& j, std::size_t algebra_dim, std::size_t chart_dim, unsigned degree_cap);

json lambda_to_json(const LambdaForm& lambda, const std::vector<std::string>& names,
                    const std::vector<std::string>& coords);

json report_to_json(const ClassificationReport& r);
std::string report_to_text(const ClassificationReport& r);

// FNV-1a 64 of the compact payload dump, as "fnv1a64:<16 hex digits>".
std::string payload_checksum(const json& payload);

// Writes to a temporary file next to `path` and renames it into place.
void write_atomically(const std::filesystem::path& path, const std::string& contents);

}  // namespace covexp::cli
