#pragma once

// JSON encodings of maps, certificates and domains.
//
//   map:          { "dim": n, "variables": [...]?, "components": [poly], "inverse": map? }
//   certificate:  { "format_version": 1, "dim": n, "degree": m, "variables": [...],
//                   "basis": [poly],
//                   "generators": [{ "map": map, "matrix": [[scalar]], "cofactor": poly }] }
//   domain:       { "n": n, "r": poly in z1..zn, c1..cn, "points"?: [[scalar]],
//                   "boundary_points"?: [[scalar]] }
//
// Map variables default to x0..xn when "variables" is absent.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cremona/birational.hpp"
#include "cremona/domains.hpp"
#include "cremona/error.hpp"
#include "cremona/linearize.hpp"
#include "cremona/text.hpp"

namespace cremona {

using Json = nlohmann::json;

inline constexpr int format_version = 1;

/// Parses JSON text, reporting syntax errors with line and column.
inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t upto = e.byte == 0 ? 0 : e.byte - 1;
    for (std::size_t k = 0; k < upto && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("malformed JSON", line, col);
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

namespace detail {

[[noreturn]] inline void schema_error(const std::string& where, const std::string& what) {
  throw InputError("schema violation at " + where + ": " + what);
}

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema_error(where, std::string("missing field '") + key + "'");
  return *it;
}

inline std::string text_field(const Json& j, const std::string& where) {
  if (!j.is_string()) schema_error(where, "expected a string");
  return j.get<std::string>();
}

inline std::size_t count_field(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) schema_error(where, "expected a non-negative integer");
  return j.get<std::size_t>();
}

inline Form form_at(const Json& j, const Variables& vars, const std::string& where) {
  try {
    return parse_form(text_field(j, where), vars);
  } catch (const ParseError& e) {
    throw InputError("at " + where + ": " + e.what());
  }
}

inline Scalar scalar_at(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Scalar(j.get<long>());
  try {
    return parse_scalar(text_field(j, where));
  } catch (const ParseError& e) {
    throw InputError("at " + where + ": " + e.what());
  }
}

}  // namespace detail

inline Json variables_to_json(const Variables& v) { return Json(v.names()); }

inline Variables variables_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) detail::schema_error(where, "expected an array of names");
  std::vector<std::string> names;
  for (std::size_t k = 0; k < j.size(); ++k) names.push_back(detail::text_field(j[k], where + "[" + std::to_string(k) + "]"));
  return Variables(std::move(names));
}

inline Json forms_to_json(const std::vector<Form>& forms) {
  Json a = Json::array();
  for (const auto& f : forms) a.push_back(f.to_string());
  return a;
}

inline std::vector<Form> forms_from_json(const Json& j, const Variables& vars, const std::string& where) {
  if (!j.is_array()) detail::schema_error(where, "expected an array of polynomials");
  std::vector<Form> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(detail::form_at(j[k], vars, where + "[" + std::to_string(k) + "]"));
  return out;
}

inline Json point_to_json(std::span<const Scalar> p) {
  Json a = Json::array();
  for (const auto& s : p) a.push_back(s.to_string());
  return a;
}

inline std::vector<Scalar> point_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) detail::schema_error(where, "expected an array of scalars");
  std::vector<Scalar> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(detail::scalar_at(j[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

inline Json matrix_to_json(const Matrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(point_to_json(m.row(i)));
  return a;
}

inline Matrix matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) detail::schema_error(where, "expected an array of rows");
  std::vector<std::vector<Scalar>> rows;
  for (std::size_t k = 0; k < j.size(); ++k) rows.push_back(point_from_json(j[k], where + "[" + std::to_string(k) + "]"));
  for (const auto& r : rows) {
    if (r.size() != rows.size()) detail::schema_error(where, "matrix must be square");
  }
  return Matrix::from_rows(rows);
}

inline Json map_to_json(const BirationalMap& f, bool with_inverse = true) {
  Json j;
  j["dim"] = f.dimension();
  j["variables"] = variables_to_json(f.variables());
  j["components"] = forms_to_json(f.components());
  if (with_inverse) {
    if (auto inv = f.inverse()) j["inverse"] = map_to_json(*inv, false);
  }
  return j;
}

/// Reads a map; a supplied inverse must verify or the map is rejected.
inline BirationalMap map_from_json(const Json& j, const std::string& where = "map",
                                   const std::optional<Variables>& fallback = std::nullopt) {
  const std::size_t n = detail::count_field(detail::field(j, "dim", where), where + ".dim");
  Variables vars = fallback ? *fallback : Variables::indexed("x", n + 1);
  if (j.contains("variables")) vars = variables_from_json(j["variables"], where + ".variables");
  if (vars.size() != n + 1) detail::schema_error(where, "dim " + std::to_string(n) + " needs " + std::to_string(n + 1) + " variables");
  auto comps = forms_from_json(detail::field(j, "components", where), vars, where + ".components");
  if (comps.size() != n + 1) detail::schema_error(where + ".components", "expected " + std::to_string(n + 1) + " components");
  BirationalMap f(std::move(comps));
  if (j.contains("inverse")) {
    BirationalMap g = map_from_json(j["inverse"], where + ".inverse", vars);
    if (!verify_inverse(f, g)) throw InputError("at " + where + ".inverse: supplied inverse does not compose to the identity");
  }
  return f;
}

inline Json certificate_to_json(const LinearizationCertificate& cert) {
  Json j;
  j["format_version"] = format_version;
  j["dim"] = cert.dimension();
  j["degree"] = cert.degree;
  j["variables"] = variables_to_json(cert.variables);
  j["basis"] = forms_to_json(cert.basis);
  Json gens = Json::array();
  for (const auto& g : cert.generators) {
    Json e;
    e["map"] = map_to_json(g.map);
    e["matrix"] = matrix_to_json(g.matrix);
    e["cofactor"] = g.cofactor.to_string();
    gens.push_back(std::move(e));
  }
  j["generators"] = std::move(gens);
  return j;
}

inline LinearizationCertificate certificate_from_json(const Json& j) {
  const std::string where = "certificate";
  const std::size_t n = detail::count_field(detail::field(j, "dim", where), "dim");
  const auto degree = static_cast<unsigned>(detail::count_field(detail::field(j, "degree", where), "degree"));
  Variables vars = Variables::indexed("x", n + 1);
  if (j.contains("variables")) vars = variables_from_json(j["variables"], "variables");
  if (vars.size() != n + 1) detail::schema_error("variables", "dim " + std::to_string(n) + " needs " + std::to_string(n + 1) + " variables");
  LinearizationCertificate cert{vars, degree, forms_from_json(detail::field(j, "basis", where), vars, "basis"), {}};
  const Json& gens = detail::field(j, "generators", where);
  if (!gens.is_array() || gens.empty()) detail::schema_error("generators", "expected a non-empty array");
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const std::string at = "generators[" + std::to_string(k) + "]";
    BirationalMap map = map_from_json(detail::field(gens[k], "map", at), at + ".map", vars);
    Matrix m = matrix_from_json(detail::field(gens[k], "matrix", at), at + ".matrix");
    Form c = detail::form_at(detail::field(gens[k], "cofactor", at), vars, at + ".cofactor");
    cert.generators.push_back({std::move(map), std::move(m), std::move(c)});
  }
  return cert;
}

inline RealDefiningPolynomial domain_from_json(const Json& j) {
  const std::size_t n = detail::count_field(detail::field(j, "n", "domain"), "n");
  if (n == 0) detail::schema_error("n", "dimension must be positive");
  Form r = detail::form_at(detail::field(j, "r", "domain"), domain_variables(n), "r");
  return RealDefiningPolynomial(n, std::move(r));
}

inline std::vector<AffinePoint> points_from_json(const Json& j, const char* key, std::size_t n) {
  std::vector<AffinePoint> out;
  if (!j.contains(key)) return out;
  const Json& a = j[key];
  if (!a.is_array()) detail::schema_error(key, "expected an array of points");
  for (std::size_t k = 0; k < a.size(); ++k) {
    const std::string where = std::string(key) + "[" + std::to_string(k) + "]";
    out.push_back(point_from_json(a[k], where));
    if (out.back().size() != n) detail::schema_error(where, "point must have " + std::to_string(n) + " coordinates");
  }
  return out;
}

}  // namespace cremona
