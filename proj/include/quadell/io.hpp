#pragma once

//! @file
//! JSON documents for quadrilateral input and extremal-ellipse results.

#include <quadell/bielliptic.hpp>
#include <quadell/errors.hpp>
#include <quadell/extremal.hpp>
#include <quadell/quad.hpp>

#include <json.hpp>

#include <string>

namespace quadell {

using json = nlohmann::ordered_json;

inline constexpr const char* library_version = "0.1.0";
inline constexpr int schema_version = 1;

struct QuadDocument
{
  ConvexQuadrilateral quad;
  std::string label;
};

namespace detail {

inline double number_field(const json& j, const char* key)
{
  if (!j.contains(key) || !j.at(key).is_number())
    throw InputError(std::string("field '") + key + "' must be a number");
  return j.at(key).get<double>();
}

} // namespace detail

//! Accepts {"vertices": [[x,y] x4]}, {"s": .., "t": ..} or
//! {"t": .., "trapezoid": true}; an optional "label" string is kept.
inline QuadDocument parse_quad_document(const json& j)
{
  if (!j.is_object())
    throw InputError("input must be a JSON object");
  QuadDocument doc;
  if (j.contains("label")) {
    if (!j.at("label").is_string())
      throw InputError("field 'label' must be a string");
    doc.label = j.at("label").get<std::string>();
  }
  if (j.contains("vertices")) {
    const json& v = j.at("vertices");
    if (!v.is_array() || v.size() != 4)
      throw InputError("'vertices' must be an array of four [x, y] pairs");
    std::array<Point, 4> pts;
    for (std::size_t i = 0; i < 4; ++i) {
      const json& p = v.at(i);
      if (!p.is_array() || p.size() != 2 || !p.at(0).is_number() || !p.at(1).is_number())
        throw InputError("each vertex must be an [x, y] pair of numbers");
      pts[i] = Point(p.at(0).get<double>(), p.at(1).get<double>());
    }
    doc.quad = validate(pts);
    return doc;
  }
  const bool trapezoid = j.contains("trapezoid") && j.at("trapezoid").is_boolean() &&
                         j.at("trapezoid").get<bool>();
  if (trapezoid) {
    const double t = detail::number_field(j, "t");
    doc.quad = canonical_trapezoid(t);
    return doc;
  }
  if (j.contains("s") || j.contains("t")) {
    doc.quad = canonical_quad(detail::number_field(j, "s"), detail::number_field(j, "t"));
    return doc;
  }
  throw InputError("input needs 'vertices', or 's' and 't', or 't' with 'trapezoid': true");
}

inline QuadDocument parse_quad_document(const std::string& text)
{
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  return parse_quad_document(j);
}

inline json to_json(const Point& p) { return json::array({p.x(), p.y()}); }

inline json to_json(const ConvexQuadrilateral& q)
{
  json v = json::array();
  for (int i = 0; i < 4; ++i)
    v.push_back(to_json(q[i]));
  return {{"vertices", v}, {"shape", std::string(to_string(q.shape))}};
}

inline json to_json(const Conic& c)
{
  return {{"A", c.A}, {"B", c.B}, {"C", c.C}, {"D", c.D}, {"E", c.E}, {"F", c.F},
          {"convention", "A x^2 + B y^2 + 2C xy + D x + E y + F = 0"}};
}

inline Conic conic_from_json(const json& j)
{
  return {j.at("A").get<double>(), j.at("B").get<double>(), j.at("C").get<double>(),
          j.at("D").get<double>(), j.at("E").get<double>(), j.at("F").get<double>()};
}

inline json to_json(const EllipseGeometry& g)
{
  return {{"center", to_json(g.center)}, {"a", g.a}, {"b", g.b}, {"phi", g.phi}, {"ecc", g.ecc}};
}

inline json to_json(const Diagnostics& d)
{
  json j = {{"path", std::string(to_string(d.path))}, {"method", d.method}};
  if (d.parameter)
    j["parameter"] = *d.parameter;
  j["iterations"] = d.iterations;
  json r = json::object();
  for (const auto& [k, v] : d.residuals)
    r[k] = v;
  j["residuals"] = r;
  if (!d.note.empty())
    j["note"] = d.note;
  return j;
}

inline json provenance(const std::string& module, const std::string& operation)
{
  return {{"module", module}, {"operation", operation}, {"version", library_version}};
}

inline json result_document(const ExtremalEllipse& e, const std::string& module,
                            const std::string& operation)
{
  return {{"schema_version", schema_version},
          {"conic", to_json(e.conic)},
          {"geometry", to_json(e.geometry)},
          {"area", e.area},
          {"diagnostics", to_json(e.diagnostics)},
          {"provenance", provenance(module, operation)}};
}

inline json to_json(const BiellipticReport& r)
{
  json j = {{"ecc_inscribed", r.ecc_inscribed},
            {"ecc_circumscribed", r.ecc_circumscribed},
            {"tau", r.tau ? json(*r.tau) : json(nullptr)},
            {"cyclic", r.cyclic},
            {"tangential", r.tangential},
            {"bicentric", r.bicentric},
            {"inscribed_path", std::string(to_string(r.inscribed_path))},
            {"circumscribed_path", std::string(to_string(r.circumscribed_path))}};
  return j;
}

inline json to_json(const FamilySearchResult& r)
{
  return {{"r0", r.r0},
          {"tau", r.tau},
          {"ecc_inscribed", r.ecc_inscribed},
          {"ecc_circumscribed", r.ecc_circumscribed},
          {"s", r.s},
          {"t", r.t},
          {"cyclic", r.cyclic},
          {"tangential", r.tangential},
          {"roots", r.roots},
          {"evaluations", r.evaluations}};
}

inline json to_json(const TrapezoidBiellipticSolution& s)
{
  return {{"rho", s.rho},
          {"t", s.t},
          {"k", s.k},
          {"tau", s.tau},
          {"tau_variant_formula", s.tau_variant},
          {"ecc_inscribed_actual", s.ecc_inscribed},
          {"residual_cubic", s.residual_cubic},
          {"residual_equation", s.residual_equation},
          {"newton_steps", s.newton_steps}};
}

enum class ExitCode : int
{
  Ok = 0,
  Counterexample = 1,
  Invalid = 2,
  Unsupported = 3,
  Numeric = 4,
  Unwritable = 5
};

inline json error_document(const std::string& kind, const std::string& message,
                           const std::string& predicate = {})
{
  json e = {{"kind", kind}, {"message", message}};
  if (!predicate.empty())
    e["predicate"] = predicate;
  return {{"schema_version", schema_version}, {"error", e}};
}

} // namespace quadell
