#pragma once

// Fans, subdivisions, and the checks that a family of polyhedra really is a
// polyhedral complex covering a given support.

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fansy/lattice.hpp"
#include "fansy/polyhedron.hpp"

namespace fansy {

class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LabeledCone {
  std::string label;
  Cone cone;
};

struct Fan {
  std::size_t ambient = 0;
  std::vector<LabeledCone> maximal_cones;

  /// Distinct rays of all maximal cones, sorted.
  std::vector<IntVector> rays() const {
    std::set<IntVector> out;
    for (const auto& c : maximal_cones) out.insert(c.cone.rays().begin(), c.cone.rays().end());
    return {out.begin(), out.end()};
  }
};

struct LabeledCell {
  std::string label;
  Polyhedron cell;
};

struct Subdivision {
  std::size_t ambient = 0;
  std::vector<LabeledCell> cells;
  std::optional<Polyhedron> support;  // nullopt: the whole space
};

struct Report {
  bool pass = true;
  std::vector<std::string> findings;

  void fail(std::string what) {
    pass = false;
    findings.push_back(std::move(what));
  }
  void note(std::string what) { findings.push_back(std::move(what)); }
  void merge(const Report& other, const std::string& prefix = "") {
    if (!other.pass) pass = false;
    for (const auto& f : other.findings) findings.push_back(prefix + f);
  }
};

inline std::string point_string(const RatVector& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ",";
    s += to_string(x[i]);
  }
  return s + ")";
}

/// The smallest face of P containing x (x must lie in P).
inline Polyhedron minimal_face_containing(const Polyhedron& p, const RatVector& x) {
  std::vector<Halfspace> eq = p.equations();
  for (const auto& h : p.facets())
    if (dot(h.normal, x) == h.offset) eq.push_back(h);
  return Polyhedron::from_inequalities(p.ambient_dim(), p.facets(), eq);
}

/// True iff F is a (possibly empty) face of P.
inline bool is_face_of(const Polyhedron& f, const Polyhedron& p) {
  if (f.is_empty()) return true;
  if (!p.contains(f)) return false;
  return minimal_face_containing(p, f.relative_interior_point()) == f;
}

/// Facets of P as polyhedra.
inline std::vector<Polyhedron> facet_polyhedra(const Polyhedron& p) {
  std::vector<Polyhedron> out;
  for (std::size_t k = 0; k < p.facets().size(); ++k) {
    std::vector<Halfspace> eq = p.equations();
    eq.push_back(p.facets()[k]);
    out.push_back(Polyhedron::from_inequalities(p.ambient_dim(), p.facets(), eq));
  }
  return out;
}

/// Pairwise face-to-face condition: every P ∩ Q is a face of both.
inline Report check_face_to_face(const std::vector<LabeledCell>& cells) {
  Report r;
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = i + 1; j < cells.size(); ++j) {
      const auto& a = cells[i].cell;
      const auto& b = cells[j].cell;
      Polyhedron meet = intersect(a, b);
      if (!is_face_of(meet, a) || !is_face_of(meet, b)) {
        r.fail("cells " + cells[i].label + " and " + cells[j].label +
               " overlap improperly, witness " + point_string(meet.relative_interior_point()));
      }
    }
  return r;
}

/// Checks that the cells form a polyhedral complex whose union is the
/// support. Coverage uses facet pairing: every facet of a full-dimensional
/// cell either lies on the boundary of the support or meets another cell.
/// With pure = false, lower-dimensional cells are allowed; they still have to
/// meet every other cell in a common face.
inline Report check_subdivision(const Subdivision& s, bool pure = true) {
  Report r;
  if (s.cells.empty()) {
    r.fail("no cells");
    return r;
  }
  const Polyhedron support = s.support ? *s.support : Polyhedron::whole_space(s.ambient);
  const int dim = support.dimension();
  for (const auto& c : s.cells) {
    if (c.cell.ambient_dim() != s.ambient) {
      r.fail("cell " + c.label + " lives in the wrong space");
      return r;
    }
    if (c.cell.dimension() > dim || (pure && c.cell.dimension() != dim))
      r.fail("cell " + c.label + " has dimension " + std::to_string(c.cell.dimension()));
    if (!support.contains(c.cell)) r.fail("cell " + c.label + " leaves the support");
  }
  if (!r.pass) return r;
  r.merge(check_face_to_face(s.cells));
  if (!r.pass) return r;
  bool any_full = false;
  for (std::size_t i = 0; i < s.cells.size(); ++i) {
    if (s.cells[i].cell.dimension() != dim) continue;
    any_full = true;
    for (const auto& f : facet_polyhedra(s.cells[i].cell)) {
      RatVector x = f.relative_interior_point();
      bool on_boundary = false;
      for (const auto& h : support.facets())
        if (dot(h.normal, x) == h.offset) on_boundary = true;
      if (on_boundary) continue;
      bool shared = false;
      for (std::size_t j = 0; j < s.cells.size() && !shared; ++j)
        if (j != i && s.cells[j].cell.dimension() == dim && s.cells[j].cell.contains(x)) shared = true;
      if (!shared) r.fail("facet of cell " + s.cells[i].label + " is exposed at " + point_string(x));
    }
  }
  if (!any_full) r.fail("no full-dimensional cell");
  return r;
}

inline std::vector<LabeledCell> as_cells(const Fan& f) {
  std::vector<LabeledCell> out;
  for (const auto& c : f.maximal_cones) out.push_back({c.label, c.cone.polyhedron()});
  return out;
}

inline Report check_fan(const Fan& f) {
  Report r;
  for (const auto& c : f.maximal_cones)
    if (c.cone.ambient_dim() != f.ambient) r.fail("cone " + c.label + " lives in the wrong space");
  if (!r.pass) return r;
  r.merge(check_face_to_face(as_cells(f)));
  return r;
}

/// A fan is complete if its maximal cones subdivide the whole space.
inline Report check_complete_fan(const Fan& f) {
  return check_subdivision({f.ambient, as_cells(f), std::nullopt});
}

// ---------------------------------------------------------------------------
// Fiber polyhedra and the chamber complex of a vector configuration.

/// π^{-1}(c) ∩ Q^l_{>=0}.
inline Polyhedron fiber_polyhedron(const IntMatrix& pi, const RatVector& c) {
  if (c.size() != pi.rows()) throw GeometryError("fiber_polyhedron: point has wrong dimension");
  const std::size_t l = pi.cols();
  std::vector<std::pair<RatVector, Rational>> ineq, eq;
  for (std::size_t j = 0; j < l; ++j) {
    RatVector e(l, Rational(0));
    e[j] = 1;
    ineq.push_back({e, 0});
  }
  for (std::size_t i = 0; i < pi.rows(); ++i) eq.push_back({to_rational(pi.row(i)), c[i]});
  return Polyhedron::from_rational_inequalities(l, ineq, eq);
}

inline Polyhedron fiber_polyhedron(const LatticeMap& pi, const RatVector& c) { return fiber_polyhedron(pi.matrix, c); }

namespace detail {

struct BasisCone {
  std::vector<std::size_t> columns;
  std::vector<IntVector> normals;  // rows of the inverse, primitive
};

inline std::vector<BasisCone> basis_cones(const IntMatrix& pi) {
  const std::size_t r = pi.rows(), l = pi.cols();
  std::vector<BasisCone> out;
  // Enumerate r-subsets in lexicographic order.
  std::vector<bool> mask(l, false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(r), true);
  do {
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < l; ++j)
      if (mask[j]) cols.push_back(j);
    RatMatrix m(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t k = 0; k < r; ++k) m(i, k) = pi(i, cols[k]);
    auto inv = inverse(m);
    if (!inv) continue;
    BasisCone b{cols, {}};
    for (std::size_t i = 0; i < r; ++i) b.normals.push_back(primitive(inv->row(i)));
    out.push_back(std::move(b));
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return out;
}

inline bool in_basis_cone(const BasisCone& b, const RatVector& y) {
  for (const auto& a : b.normals)
    if (dot(a, y) < 0) return false;
  return true;
}

}  // namespace detail

/// Coarsest common refinement of the images of all faces of the orthant
/// under π (the chamber complex of the columns of π). Each maximal cone is
/// labeled by the bases J (minimal orthant faces, 0-based coordinates) with
/// π(cone(e_J)) containing it.
inline Fan common_refinement_fan(const IntMatrix& pi, std::size_t max_faces = 16) {
  const std::size_t r = pi.rows(), l = pi.cols();
  if (l > max_faces)
    throw GuardError("common_refinement_fan: " + std::to_string(l) + " coordinates exceed the face guard " +
                     std::to_string(max_faces));
  if (rank(pi) != r) throw GeometryError("common_refinement_fan: map does not have full row rank");
  Fan fan;
  fan.ambient = r;
  if (r == 0) {
    fan.maximal_cones.push_back({"", Cone::zero(0)});
    return fan;
  }
  auto bases = detail::basis_cones(pi);
  Cone support = Cone::from_generators(r, pi.column_list());
  std::set<IntVector> support_normals;
  for (const auto& a : support.halfspace_normals()) support_normals.insert(a);

  struct Chamber {
    Cone cone;
    std::vector<std::size_t> bases;
  };
  auto chamber_of = [&](const RatVector& y) -> std::optional<Chamber> {
    std::vector<IntVector> normals;
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < bases.size(); ++k)
      if (detail::in_basis_cone(bases[k], y)) {
        idx.push_back(k);
        normals.insert(normals.end(), bases[k].normals.begin(), bases[k].normals.end());
      }
    if (idx.empty()) return std::nullopt;
    Cone c = Cone::from_halfspaces(r, normals);
    if (c.dimension() != static_cast<int>(r)) return std::nullopt;
    // Labels must be the bases containing the whole chamber.
    std::vector<std::size_t> full;
    RatVector inner = c.polyhedron().relative_interior_point();
    for (std::size_t k = 0; k < bases.size(); ++k)
      if (detail::in_basis_cone(bases[k], inner)) full.push_back(k);
    return Chamber{std::move(c), std::move(full)};
  };

  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<int> coin(-7, 7);
  auto perturbed = [&](const RatVector& x, const IntVector& outward, const Rational& eps) {
    RatVector y = x;
    for (std::size_t i = 0; i < r; ++i) y[i] += eps * outward[i] + eps * eps * Rational(coin(rng), 13);
    return y;
  };

  // Start inside the support: sum of the columns plus a small generic nudge.
  std::optional<Chamber> start;
  {
    RatVector base(r, Rational(0));
    for (const auto& col : pi.column_list()) base = add(base, to_rational(col));
    Rational eps(1, 8);
    for (int attempt = 0; attempt < 200 && !start; ++attempt) {
      RatVector y = perturbed(base, IntVector(r, Integer(0)), eps);
      start = chamber_of(y);
      if (attempt % 10 == 9) eps /= 2;
    }
  }
  if (!start) throw GeometryError("common_refinement_fan: no full-dimensional chamber found");

  std::map<Polyhedron, std::vector<std::size_t>> found;
  std::vector<Cone> queue{start->cone};
  found.emplace(start->cone.polyhedron(), start->bases);
  while (!queue.empty()) {
    Cone c = queue.back();
    queue.pop_back();
    auto facets = facet_polyhedra(c.polyhedron());
    for (std::size_t k = 0; k < facets.size(); ++k) {
      const IntVector& a = c.polyhedron().facets()[k].normal;
      if (support_normals.count(a)) continue;
      RatVector x = facets[k].relative_interior_point();
      IntVector out(a);
      for (auto& v : out) v = -v;
      Rational eps(1, 4);
      std::optional<Chamber> next;
      for (int attempt = 0; attempt < 400 && !next; ++attempt) {
        RatVector y = perturbed(x, out, eps);
        auto ch = chamber_of(y);
        if (ch && ch->cone.contains(x) && !c.contains(y)) next = std::move(ch);
        if (attempt % 4 == 3) eps /= 2;
      }
      if (!next) throw GeometryError("common_refinement_fan: could not cross a wall");
      if (found.emplace(next->cone.polyhedron(), next->bases).second) queue.push_back(next->cone);
    }
  }
  for (const auto& [p, idx] : found) {
    std::string label;
    for (auto k : idx) {
      if (!label.empty()) label += ";";
      label += "{";
      for (std::size_t i = 0; i < bases[k].columns.size(); ++i) {
        if (i) label += ",";
        label += std::to_string(bases[k].columns[i]);
      }
      label += "}";
    }
    fan.maximal_cones.push_back({label, Cone::from_polyhedron(p)});
  }
  return fan;
}

inline Fan common_refinement_fan(const LatticeMap& pi, std::size_t max_faces = 16) {
  return common_refinement_fan(pi.matrix, max_faces);
}

// ---------------------------------------------------------------------------
// Regular subdivisions.

inline std::string index_set_label(const std::vector<std::size_t>& idx) {
  std::string s = "{";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(idx[i]);
  }
  return s + "}";
}

/// Regular subdivision of conv(points) induced by lifting point i to height
/// heights[i] and projecting the lower faces. Cells are labeled by the
/// sorted indices of the points on them.
inline Subdivision induced_subdivision(const std::vector<RatVector>& points, const RatVector& heights) {
  if (points.empty()) throw GeometryError("induced_subdivision: no points");
  if (heights.size() != points.size()) throw GeometryError("induced_subdivision: one height per point required");
  const std::size_t d = points.front().size();
  std::vector<RatVector> lifted;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != d) throw GeometryError("induced_subdivision: ragged point list");
    RatVector x = points[i];
    x.push_back(heights[i]);
    lifted.push_back(std::move(x));
  }
  IntVector up(d + 1, Integer(0));
  up[d] = 1;
  Polyhedron hull = Polyhedron::from_generators(d + 1, lifted, {up});
  Subdivision s;
  s.ambient = d;
  s.support = convex_hull(d, points);
  std::vector<Halfspace> lower;
  for (const auto& h : hull.facets())
    if (h.normal[d] > 0) lower.push_back(h);
  if (lower.empty()) {
    // The lift is affine on the points: a single cell.
    std::vector<std::size_t> all(points.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    s.cells.push_back({index_set_label(all), *s.support});
    return s;
  }
  for (const auto& h : lower) {
    std::vector<std::size_t> idx;
    std::vector<RatVector> pts;
    for (std::size_t i = 0; i < lifted.size(); ++i)
      if (dot(h.normal, lifted[i]) == h.offset) {
        idx.push_back(i);
        pts.push_back(points[i]);
      }
    s.cells.push_back({index_set_label(idx), convex_hull(d, pts)});
  }
  std::sort(s.cells.begin(), s.cells.end(), [](const LabeledCell& a, const LabeledCell& b) { return a.label < b.label; });
  return s;
}

}  // namespace fansy
