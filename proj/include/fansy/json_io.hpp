#pragma once

// JSON encodings. Integers are decimal strings and rationals are "p/q"
// strings, so nothing is lost to floating point.

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "fansy/chow_recipe.hpp"
#include "fansy/complex.hpp"
#include "fansy/divisor.hpp"

namespace fansy {

using Json = nlohmann::ordered_json;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Encoding

inline Json to_json(const Integer& z) { return z.get_str(); }
inline Json to_json(const Rational& q) { return q.get_str(); }

template <class T>
Json to_json(const std::vector<T>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(to_json(x));
  return a;
}

template <class T>
Json to_json(const Matrix<T>& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

inline Json to_json(const LatticeMap& f) {
  return {{"domain", f.domain}, {"codomain", f.codomain}, {"matrix", to_json(f.matrix)}};
}

inline Json to_json(const Halfspace& h) { return {{"normal", to_json(h.normal)}, {"offset", to_json(h.offset)}}; }

inline Json to_json(const Polyhedron& p) {
  Json j;
  j["ambient"] = p.ambient_dim();
  j["empty"] = p.is_empty();
  j["vertices"] = to_json(p.vertices());
  j["rays"] = to_json(p.rays());
  j["lineality"] = to_json(p.lineality());
  Json hs = Json::array();
  for (const auto& h : p.facets()) hs.push_back(to_json(h));
  j["halfspaces"] = hs;
  Json eq = Json::array();
  for (const auto& h : p.equations()) eq.push_back(to_json(h));
  j["equations"] = eq;
  return j;
}

inline Json to_json(const Cone& c) {
  return {{"ambient", c.ambient_dim()},
          {"generators", to_json(c.rays())},
          {"lineality", to_json(c.lineality())},
          {"halfspaces", to_json(c.halfspace_normals())},
          {"equations", to_json(c.equation_normals())}};
}

inline Json to_json(const Fan& f) {
  Json cones = Json::array();
  for (const auto& c : f.maximal_cones) {
    Json e = to_json(c.cone);
    e.erase("ambient");
    Json out = {{"label", c.label}};
    out.update(e);
    cones.push_back(out);
  }
  return {{"ambient", f.ambient}, {"maximal_cones", cones}};
}

inline Json to_json(const Subdivision& s) {
  Json cells = Json::array();
  for (const auto& c : s.cells) cells.push_back({{"label", c.label}, {"polyhedron", to_json(c.cell)}});
  Json j = {{"ambient", s.ambient}, {"cells", cells}};
  j["support"] = s.support ? to_json(*s.support) : Json("whole space");
  return j;
}

inline Json to_json(const DivisorLabel& l) {
  if (const auto* p = std::get_if<Partition>(&l)) return {{"partition", p->first()}};
  if (const auto* r = std::get_if<ToricRay>(&l)) return {{"ray", to_json(r->ray)}};
  return {{"name", std::get<NamedLabel>(l).name}};
}

inline Json to_json(const PPDivisor& d) {
  Json terms = Json::array();
  for (const auto& t : d.terms())
    terms.push_back({{"label", to_json(t.label)},
                     {"polyhedron", t.coefficient.is_empty() ? Json("empty") : to_json(t.coefficient)}});
  return {{"ambient", d.ambient_dim()}, {"tail", to_json(d.tail())}, {"terms", terms}};
}

inline Json to_json(const FansyDivisor& f) {
  Json cells = Json::array();
  for (std::size_t k = 0; k < f.cells.size(); ++k) {
    Json c = {{"name", f.cell_names[k]}};
    c.update(to_json(f.cells[k]));
    cells.push_back(c);
  }
  Json labels = Json::array();
  for (const auto& l : f.labels) labels.push_back(to_json(l));
  return {{"ambient", f.ambient}, {"labels", labels}, {"cells", cells}};
}

inline Json to_json(const Report& r) { return {{"pass", r.pass}, {"findings", r.findings}}; }

inline Json to_json(const WeightSetup& s) {
  Json j;
  j["lattice_rank"] = s.rank();
  j["weights"] = to_json(s.deg.transpose());
  j["cocharacter_basis"] = to_json(s.dual_basis);
  j["deg_star"] = to_json(s.deg_star);
  j["pi"] = to_json(s.pi);
  j["section"] = to_json(s.section);
  j["sigma"] = to_json(s.sigma);
  j["degree_element"] = s.degree_element ? to_json(*s.degree_element) : Json(nullptr);
  return j;
}

// ---------------------------------------------------------------------------
// Decoding

inline Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) return parse_integer(j.get<std::string>());
  throw InputError("expected an integer, got " + j.dump());
}

inline IntVector int_vector_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("expected an array of integers, got " + j.dump());
  IntVector v;
  for (const auto& x : j) v.push_back(integer_from_json(x));
  return v;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

/// {lattice_rank: r, weights: [[w_1..w_r], ...]}: one weight per coordinate.
inline IntMatrix weights_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("lattice_rank") || !j.contains("weights"))
    throw InputError("weight file needs lattice_rank and weights");
  if (!j["lattice_rank"].is_number_integer() || j["lattice_rank"].get<long>() < 1)
    throw InputError("lattice_rank must be a positive integer");
  const std::size_t r = j["lattice_rank"].get<std::size_t>();
  const Json& w = j["weights"];
  if (!w.is_array() || w.empty()) throw InputError("weights must be a nonempty array");
  IntMatrix deg(r, w.size());
  for (std::size_t v = 0; v < w.size(); ++v) {
    IntVector col = int_vector_from_json(w[v]);
    if (col.size() != r) throw InputError("weight " + std::to_string(v) + " does not have lattice_rank entries");
    for (std::size_t i = 0; i < r; ++i) deg(i, v) = col[i];
  }
  return deg;
}

/// {rays: [[...], ...]} or a bare array.
inline std::vector<IntVector> rays_from_json(const Json& j) {
  const Json& a = j.is_object() && j.contains("rays") ? j["rays"] : j;
  if (!a.is_array()) throw InputError("rays must be an array");
  std::vector<IntVector> out;
  for (const auto& r : a) out.push_back(int_vector_from_json(r));
  return out;
}

/// "1,-2,3" or "[1,-2,3]".
inline IntVector int_vector_from_text(std::string text) {
  text.erase(std::remove_if(text.begin(), text.end(), [](char c) { return c == '[' || c == ']' || c == ' '; }), text.end());
  IntVector v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      v.push_back(parse_integer(part));
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }
  if (v.empty()) throw InputError("empty vector");
  return v;
}

}  // namespace fansy
