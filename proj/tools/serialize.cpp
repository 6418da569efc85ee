#include "serialize.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <unistd.h>

#include "covexp/error.hpp"

namespace covexp::cli {

namespace {

void require_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected a JSON object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!ok.contains(key)) throw ConfigError(where + ": unknown field '" + key + "'");
  }
}

Rational rational_field(const json& j, const std::string& where) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
  throw ConfigError(where + ": rationals must be strings such as \"3/2\"");
}

bool is_count(const json& j) { return j.is_number_integer() && j.get<long long>() >= 0; }

std::size_t index_field(const json& j, const char* key, std::size_t bound, const std::string& where) {
  if (!j.contains(key) || !is_count(j.at(key))) {
    throw ConfigError(where + ": '" + key + "' must be a non-negative integer");
  }
  const auto v = j.at(key).get<std::size_t>();
  if (v >= bound) throw ConfigError(where + ": '" + key + "' = " + std::to_string(v) + " out of range");
  return v;
}

}  // namespace

LoadedAlgebra parse_algebra_config(const json& doc, const std::string& name) {
  require_keys(doc, {"schema", "dim", "names", "brackets", "chart", "fields"}, "algebra config");
  if (!doc.contains("schema") || doc.at("schema") != kSchemaVersion) throw ConfigError("algebra config: expected \"schema\": 1");
  if (!doc.contains("dim") || !is_count(doc.at("dim"))) throw ConfigError("algebra config: 'dim' must be a positive integer");
  const auto n = doc.at("dim").get<std::size_t>();
  if (n == 0) throw ConfigError("algebra config: 'dim' must be positive");

  std::vector<std::string> names;
  if (doc.contains("names")) {
    names = doc.at("names").get<std::vector<std::string>>();
    if (names.size() != n) throw ConfigError("algebra config: 'names' must have 'dim' entries");
  } else {
    for (std::size_t i = 0; i < n; ++i) names.push_back("e" + std::to_string(i));
  }

  StructureConstants c(n);
  std::set<std::pair<std::size_t, std::size_t>> listed;
  const json brackets = doc.value("brackets", json::array());
  if (!brackets.is_array()) throw ConfigError("algebra config: 'brackets' must be an array");
  for (const auto& b : brackets) {
    require_keys(b, {"i", "j", "coeffs"}, "bracket");
    const std::size_t i = index_field(b, "i", n, "bracket");
    const std::size_t j = index_field(b, "j", n, "bracket");
    if (!listed.insert({i, j}).second) {
      throw ConfigError("bracket (" + std::to_string(i) + "," + std::to_string(j) + ") listed twice");
    }
    const json coeffs = b.value("coeffs", json::object());
    if (!coeffs.is_object()) throw ConfigError("bracket: 'coeffs' must be an object");
    for (const auto& [key, value] : coeffs.items()) {
      std::size_t k = 0;
      try {
        std::size_t used = 0;
        k = std::stoul(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw ConfigError("bracket: coefficient key '" + key + "' is not a basis index");
      }
      if (k >= n) throw ConfigError("bracket: coefficient index " + key + " out of range");
      c.at(i, j, k) = rational_field(value, "bracket coefficient");
    }
  }
  // Implied antisymmetric partners for pairs listed in one order only.
  for (const auto& [i, j] : listed) {
    if (i == j || listed.contains({j, i})) continue;
    for (std::size_t k = 0; k < n; ++k) c.at(j, i, k) = -c.at(i, j, k);
  }
  LieAlgebra algebra(name, std::move(names), std::move(c));

  std::vector<std::string> coords;
  if (doc.contains("chart")) {
    const json& chart = doc.at("chart");
    require_keys(chart, {"dim", "coords"}, "chart");
    if (!chart.contains("dim") || !is_count(chart.at("dim"))) throw ConfigError("chart: 'dim' must be a non-negative integer");
    const auto d = chart.at("dim").get<std::size_t>();
    if (chart.contains("coords")) {
      coords = chart.at("coords").get<std::vector<std::string>>();
      if (coords.size() != d) throw ConfigError("chart: 'coords' must have 'dim' entries");
    } else {
      for (std::size_t i = 0; i < d; ++i) coords.push_back("x" + std::to_string(i));
    }
    if (std::set<std::string>(coords.begin(), coords.end()).size() != coords.size()) {
      throw ConfigError("chart: duplicate coordinate names");
    }
  }

  LoadedAlgebra out{std::move(algebra), std::nullopt, coords};
  if (!doc.contains("fields")) return out;
  if (!doc.contains("chart")) throw ConfigError("algebra config: 'fields' require a 'chart'");

  const std::size_t d = coords.size();
  std::vector<AffineVectorField> fields(n, AffineVectorField(d));
  std::set<std::size_t> seen;
  for (const auto& f : doc.at("fields")) {
    require_keys(f, {"generator", "components"}, "field");
    const std::size_t g = index_field(f, "generator", n, "field");
    if (!seen.insert(g).second) throw ConfigError("field for generator " + std::to_string(g) + " listed twice");
    const json& comps = f.at("components");
    if (!comps.is_array() || comps.size() != d) throw ConfigError("field: 'components' must have one entry per coordinate");
    for (std::size_t mu = 0; mu < d; ++mu) {
      require_keys(comps[mu], {"const", "linear"}, "field component");
      if (comps[mu].contains("const")) fields[g].set_offset(mu, rational_field(comps[mu].at("const"), "field const"));
      const json linear = comps[mu].value("linear", json::object());
      if (!linear.is_object()) throw ConfigError("field component: 'linear' must be an object");
      for (const auto& [coord, value] : linear.items()) {
        const auto it = std::find(coords.begin(), coords.end(), coord);
        if (it == coords.end()) throw ConfigError("field: unknown coordinate '" + coord + "'");
        fields[g].set_linear(mu, static_cast<std::size_t>(it - coords.begin()), rational_field(value, "field linear"));
      }
    }
  }
  ActionRealization act(coords, std::move(fields));
  require_valid_realization(out.algebra, act);
  out.realization = std::move(act);
  return out;
}

LoadedAlgebra load_algebra_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path.string() + "': " + e.what());
  }
  try {
    return parse_algebra_config(doc, path.stem().string());
  } catch (const json::exception& e) {
    throw ConfigError("config '" + path.string() + "': " + e.what());
  }
}

json poly_to_json(const TruncPoly& p, const std::vector<std::string>& coords) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms()) terms.push_back({{"exponents", m}, {"coeff", to_string(c)}});
  return {{"terms", terms}, {"text", p.to_string(coords)}};
}

TruncPoly poly_from_json(const json& j, std::size_t num_vars, unsigned degree_cap) {
  TruncPoly p(num_vars, degree_cap);
  for (const auto& t : j.at("terms")) {
    require_keys(t, {"exponents", "coeff"}, "polynomial term");
    const auto m = t.at("exponents").get<Monomial>();
    if (m.size() != num_vars) throw ConfigError("polynomial term: exponent vector has wrong length");
    p.add_term(m, rational_field(t.at("coeff"), "polynomial coefficient"));
  }
  return p;
}

json exponent_to_json(const InfExponent& xi, const std::vector<std::string>& names,
                      const std::vector<std::string>& coords) {
  json pairs = json::array();
  for (const auto& [i, j] : basis_pairs(xi.algebra_dim())) {
    const TruncPoly v = xi.value(i, j);
    if (v.is_zero()) continue;
    json entry = poly_to_json(v, coords);
    entry["i"] = i;
    entry["j"] = j;
    entry["left"] = names.at(i);
    entry["right"] = names.at(j);
    pairs.push_back(std::move(entry));
  }
  return {{"pairs", pairs}};
}

InfExponent exponent_from_json(const json& j, std::size_t algebra_dim, std::size_t chart_dim, unsigned degree_cap) {
  require_keys(j, {"pairs", "schema", "degree"}, "exponent");
  InfExponent xi(algebra_dim, chart_dim, degree_cap);
  for (const auto& entry : j.at("pairs")) {
    require_keys(entry, {"i", "j", "terms", "text", "left", "right"}, "exponent pair");
    const std::size_t a = index_field(entry, "i", algebra_dim, "exponent pair");
    const std::size_t b = index_field(entry, "j", algebra_dim, "exponent pair");
    if (a == b) throw ConfigError("exponent pair: diagonal entries must be omitted");
    xi.set(a, b, xi.value(a, b) + poly_from_json(entry, chart_dim, degree_cap));
  }
  return xi;
}

json lambda_to_json(const LambdaForm& lambda, const std::vector<std::string>& names,
                    const std::vector<std::string>& coords) {
  json values = json::array();
  for (std::size_t a = 0; a < lambda.algebra_dim(); ++a) {
    if (lambda.value(a).is_zero()) continue;
    json entry = poly_to_json(lambda.value(a), coords);
    entry["generator"] = a;
    entry["name"] = names.at(a);
    values.push_back(std::move(entry));
  }
  return {{"values", values}};
}

json report_to_json(const ClassificationReport& r) {
  json reps = json::array();
  for (const auto& xi : r.representatives) reps.push_back(exponent_to_json(xi, r.basis_names, r.coordinates));
  return {
      {"algebra", r.algebra},
      {"basis", r.basis_names},
      {"chart", r.coordinates},
      {"degree_cap", r.degree_cap},
      {"trivial_action", r.trivial_action},
      {"dim_cochains", r.dim_cochains},
      {"dim_lambda_admissible", r.dim_lambda_admissible},
      {"dim_cocycles", r.dim_cocycles},
      {"dim_coboundaries_admissible", r.dim_coboundaries_admissible},
      {"dim_coboundaries_all", r.dim_coboundaries_all},
      {"dim_quotient_admissible", r.dim_quotient_admissible},
      {"dim_quotient_all", r.dim_quotient_all},
      {"representatives", reps},
  };
}

std::string report_to_text(const ClassificationReport& r) {
  std::ostringstream os;
  os << "algebra " << r.algebra << " (";
  for (std::size_t i = 0; i < r.basis_names.size(); ++i) os << (i ? ", " : "") << r.basis_names[i];
  os << ")\nchart (";
  for (std::size_t i = 0; i < r.coordinates.size(); ++i) os << (i ? ", " : "") << r.coordinates[i];
  os << ")" << (r.trivial_action ? ", trivial action" : "") << ", degree cap " << r.degree_cap << "\n";
  os << "cochains                " << r.dim_cochains << "\n"
     << "cocycles                " << r.dim_cocycles << "\n"
     << "coboundaries admissible " << r.dim_coboundaries_admissible << "\n"
     << "coboundaries all        " << r.dim_coboundaries_all << "\n"
     << "quotient admissible     " << r.dim_quotient_admissible << "\n"
     << "quotient all            " << r.dim_quotient_all << "\n";
  for (std::size_t k = 0; k < r.representatives.size(); ++k) {
    os << "representative " << k + 1 << ":\n";
    std::istringstream lines(render(r.representatives[k], r.basis_names, r.coordinates));
    for (std::string line; std::getline(lines, line);) os << "  " << line << "\n";
  }
  return os.str();
}

std::string payload_checksum(const json& payload) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : payload.dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

void write_atomically(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) throw Error("short write to '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace covexp::cli
