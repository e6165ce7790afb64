#pragma once

// Exact rational polyhedra carried in both representations.
//
// A Polyhedron is always stored in canonical form, so that equality of sets
// is equality of representations:
//   - lineality: reduced row echelon basis, rows scaled to primitive integers;
//   - vertices: minimal-face representatives projected onto the orthogonal
//     complement of the lineality space, sorted;
//   - rays: primitive integer vectors, projected the same way, sorted;
//   - equations / facets: homogeneous vectors reduced modulo the equations
//     and scaled to primitive integers, sorted.
// Conversion between the two is done by the double description method on the
// homogenized cone.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "fansy/arith.hpp"

namespace fansy {

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// normal . x >= offset (inequality) or normal . x == offset (equation).
struct Halfspace {
  IntVector normal;
  Integer offset;

  friend bool operator==(const Halfspace&, const Halfspace&) = default;
  friend bool operator<(const Halfspace& a, const Halfspace& b) {
    if (a.normal != b.normal) return a.normal < b.normal;
    return a.offset < b.offset;
  }
};

namespace detail {

struct ConeGenerators {
  std::vector<IntVector> rays;
  std::vector<IntVector> lineality;
};

using Bits = std::vector<std::uint64_t>;

inline void set_bit(Bits& b, std::size_t i) { b[i / 64] |= (std::uint64_t{1} << (i % 64)); }

// Generators of {y : E y = 0, A y >= 0} in Q^dim.
inline ConeGenerators double_description(std::size_t dim, const std::vector<IntVector>& equations,
                                         const std::vector<IntVector>& inequalities) {
  struct Ray {
    IntVector v;
    Bits zero;
  };
  const std::size_t words = std::max<std::size_t>(1, (inequalities.size() + 63) / 64);
  std::vector<IntVector> lin;
  for (std::size_t i = 0; i < dim; ++i) {
    IntVector e(dim, Integer(0));
    e[i] = 1;
    lin.push_back(std::move(e));
  }
  std::vector<Ray> rays;

  // Constraint a meets the lineality space: pivot on one lineality vector.
  auto cut_lineality = [&](const IntVector& a, bool equality, std::size_t index) {
    std::size_t pick = lin.size();
    for (std::size_t i = 0; i < lin.size(); ++i)
      if (dot(a, lin[i]) != 0) {
        pick = i;
        break;
      }
    if (pick == lin.size()) return false;
    IntVector l0 = lin[pick];
    Integer al0 = dot(a, l0);
    if (al0 < 0) {
      for (auto& x : l0) x = -x;
      al0 = -al0;
    }
    lin.erase(lin.begin() + static_cast<std::ptrdiff_t>(pick));
    for (auto& l : lin) {
      Integer al = dot(a, l);
      if (al != 0) l = primitive(sub(scale(l, al0), scale(l0, al)));
    }
    for (auto& r : rays) {
      Integer ar = dot(a, r.v);
      if (ar != 0) r.v = primitive(sub(scale(r.v, al0), scale(l0, ar)));
      if (!equality) set_bit(r.zero, index);
    }
    if (!equality) {
      Bits z(words, 0);
      for (std::size_t k = 0; k < index; ++k) set_bit(z, k);
      rays.push_back({std::move(l0), std::move(z)});
    }
    return true;
  };

  for (const auto& e : equations) {
    if (e.size() != dim) throw GeometryError("double_description: equation of wrong length");
    if (cut_lineality(e, true, 0)) continue;
    // Equalities are processed first, so rays are still empty here.
    if (!rays.empty()) throw GeometryError("double_description: internal ordering error");
  }

  for (std::size_t k = 0; k < inequalities.size(); ++k) {
    const IntVector& a = inequalities[k];
    if (a.size() != dim) throw GeometryError("double_description: inequality of wrong length");
    if (cut_lineality(a, false, k)) continue;

    std::vector<Integer> val(rays.size());
    std::vector<std::size_t> pos, neg, zer;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(a, rays[i].v);
      if (val[i] > 0)
        pos.push_back(i);
      else if (val[i] < 0)
        neg.push_back(i);
      else
        zer.push_back(i);
    }
    if (neg.empty()) {
      for (auto i : zer) set_bit(rays[i].zero, k);
      continue;
    }
    std::vector<Ray> next;
    next.reserve(pos.size() + zer.size());
    for (auto i : pos) next.push_back(rays[i]);
    for (auto i : zer) {
      next.push_back(rays[i]);
      set_bit(next.back().zero, k);
    }
    for (auto p : pos)
      for (auto q : neg) {
        Bits z(words);
        for (std::size_t w = 0; w < words; ++w) z[w] = rays[p].zero[w] & rays[q].zero[w];
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          bool subset = true;
          for (std::size_t w = 0; w < words; ++w)
            if ((z[w] & ~rays[r].zero[w]) != 0) {
              subset = false;
              break;
            }
          if (subset) adjacent = false;
        }
        if (!adjacent) continue;
        IntVector v = primitive(add(scale(rays[p].v, Integer(-val[q])), scale(rays[q].v, val[p])));
        set_bit(z, k);
        next.push_back({std::move(v), std::move(z)});
      }
    rays = std::move(next);
  }

  ConeGenerators out;
  out.lineality = std::move(lin);
  for (auto& r : rays) out.rays.push_back(std::move(r.v));
  return out;
}

inline IntVector homogenize(const IntVector& normal, const Integer& offset) {
  IntVector h(normal);
  h.push_back(-offset);
  return h;
}

// Canonical basis of a rational row space: rref rows scaled to primitive integers.
inline std::vector<IntVector> canonical_row_space(const std::vector<RatVector>& rows, std::size_t cols) {
  EchelonForm e = rref(rows, cols);
  std::vector<IntVector> out;
  for (const auto& r : e.rows) out.push_back(primitive(r));
  return out;
}

inline std::vector<RatVector> as_rational(const std::vector<IntVector>& rows) {
  std::vector<RatVector> out;
  for (const auto& r : rows) out.push_back(to_rational(r));
  return out;
}

// Reduce h modulo rows of an rref system (rows primitive, pivots given).
inline RatVector reduce_modulo(RatVector h, const std::vector<IntVector>& rows, const std::vector<std::size_t>& pivots) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Integer& pv = rows[i][pivots[i]];
    if (h[pivots[i]] == 0) continue;
    Rational f = h[pivots[i]] / Rational(pv);
    for (std::size_t j = 0; j < h.size(); ++j) h[j] -= f * rows[i][j];
  }
  return h;
}

inline std::size_t first_nonzero(const IntVector& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) return i;
  return v.size();
}

}  // namespace detail

class Polyhedron {
 public:
  Polyhedron() = default;

  static Polyhedron empty(std::size_t dim) {
    Polyhedron p;
    p.dim_ = dim;
    p.empty_ = true;
    return p;
  }

  static Polyhedron whole_space(std::size_t dim) {
    std::vector<IntVector> lin;
    for (std::size_t i = 0; i < dim; ++i) {
      IntVector e(dim, Integer(0));
      e[i] = 1;
      lin.push_back(e);
    }
    return from_generators(dim, {RatVector(dim, Rational(0))}, {}, lin);
  }

  static Polyhedron point(const RatVector& x) { return from_generators(x.size(), {x}); }

  static Polyhedron from_generators(std::size_t dim, std::vector<RatVector> vertices, std::vector<IntVector> rays = {},
                                    std::vector<IntVector> lineality = {}) {
    for (const auto& v : vertices)
      if (v.size() != dim) throw GeometryError("from_generators: vertex of wrong dimension");
    for (const auto& r : rays)
      if (r.size() != dim) throw GeometryError("from_generators: ray of wrong dimension");
    for (const auto& l : lineality)
      if (l.size() != dim) throw GeometryError("from_generators: lineality vector of wrong dimension");
    if (vertices.empty()) return empty(dim);
    Polyhedron p;
    p.dim_ = dim;
    p.build_from_generators(vertices, rays, lineality);
    return p;
  }

  static Polyhedron from_inequalities(std::size_t dim, const std::vector<Halfspace>& inequalities,
                                      const std::vector<Halfspace>& equations = {}) {
    std::vector<IntVector> ineq_h{[&] {
      IntVector t(dim + 1, Integer(0));
      t[dim] = 1;
      return t;
    }()};
    std::vector<IntVector> eq_h;
    for (const auto& h : inequalities) {
      if (h.normal.size() != dim) throw GeometryError("from_inequalities: normal of wrong dimension");
      ineq_h.push_back(detail::homogenize(h.normal, h.offset));
    }
    for (const auto& h : equations) {
      if (h.normal.size() != dim) throw GeometryError("from_inequalities: normal of wrong dimension");
      eq_h.push_back(detail::homogenize(h.normal, h.offset));
    }
    auto gens = detail::double_description(dim + 1, eq_h, ineq_h);
    std::vector<RatVector> vertices;
    std::vector<IntVector> rays, lineality;
    for (const auto& g : gens.rays) {
      IntVector x(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(dim));
      if (g[dim] > 0) {
        RatVector v;
        for (const auto& c : x) v.push_back(make_rational(c, g[dim]));
        vertices.push_back(std::move(v));
      } else {
        rays.push_back(std::move(x));
      }
    }
    for (const auto& g : gens.lineality) {
      if (g[dim] != 0) throw GeometryError("from_inequalities: homogenizing coordinate in lineality");
      lineality.emplace_back(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(dim));
    }
    return from_generators(dim, std::move(vertices), std::move(rays), std::move(lineality));
  }

  /// Convenience for rational halfspaces a . x >= b.
  static Polyhedron from_rational_inequalities(std::size_t dim, const std::vector<std::pair<RatVector, Rational>>& ineqs,
                                               const std::vector<std::pair<RatVector, Rational>>& eqs = {}) {
    auto to_int = [](const std::pair<RatVector, Rational>& h) {
      RatVector hv = h.first;
      hv.push_back(-h.second);
      IntVector p = primitive(hv);
      Integer off = -p.back();
      p.pop_back();
      return Halfspace{std::move(p), std::move(off)};
    };
    std::vector<Halfspace> hi, he;
    for (const auto& h : ineqs) hi.push_back(to_int(h));
    for (const auto& h : eqs) he.push_back(to_int(h));
    return from_inequalities(dim, hi, he);
  }

  std::size_t ambient_dim() const { return dim_; }
  bool is_empty() const { return empty_; }
  /// Affine dimension; -1 for the empty set.
  int dimension() const { return empty_ ? -1 : static_cast<int>(dim_ - equations_.size()); }

  const std::vector<RatVector>& vertices() const { return vertices_; }
  const std::vector<IntVector>& rays() const { return rays_; }
  const std::vector<IntVector>& lineality() const { return lineality_; }
  const std::vector<Halfspace>& facets() const { return facets_; }
  const std::vector<Halfspace>& equations() const { return equations_; }

  bool is_bounded() const { return rays_.empty() && lineality_.empty(); }
  bool is_pointed() const { return lineality_.empty(); }
  bool is_cone() const {
    return !empty_ && vertices_.size() == 1 && is_zero(vertices_.front());
  }

  bool contains(const RatVector& x) const {
    if (x.size() != dim_) throw GeometryError("contains: dimension mismatch");
    if (empty_) return false;
    for (const auto& h : equations_)
      if (dot(h.normal, x) != h.offset) return false;
    for (const auto& h : facets_)
      if (dot(h.normal, x) < h.offset) return false;
    return true;
  }

  bool contains_direction(const IntVector& r) const {
    if (empty_) return false;
    for (const auto& h : equations_)
      if (dot(h.normal, r) != 0) return false;
    for (const auto& h : facets_)
      if (dot(h.normal, r) < 0) return false;
    return true;
  }

  bool contains(const Polyhedron& q) const {
    if (q.dim_ != dim_) throw GeometryError("contains: dimension mismatch");
    if (q.empty_) return true;
    if (empty_) return false;
    for (const auto& v : q.vertices_)
      if (!contains(v)) return false;
    for (const auto& r : q.rays_)
      if (!contains_direction(r)) return false;
    for (const auto& l : q.lineality_) {
      IntVector m(l);
      for (auto& x : m) x = -x;
      if (!contains_direction(l) || !contains_direction(m)) return false;
    }
    return true;
  }

  /// A point in the relative interior (barycenter of vertices plus all rays).
  RatVector relative_interior_point() const {
    if (empty_) throw GeometryError("relative_interior_point: empty polyhedron");
    RatVector x(dim_, Rational(0));
    for (const auto& v : vertices_) x = add(x, v);
    x = scale(x, Rational(1, static_cast<unsigned long>(vertices_.size())));
    for (const auto& r : rays_) x = add(x, to_rational(r));
    return x;
  }

  /// Canonical text form; equal polyhedra have equal keys.
  std::string key() const {
    std::string s = "d" + std::to_string(dim_);
    if (empty_) return s + "|empty";
    auto put = [&s](const auto& vec) {
      s += '(';
      for (const auto& x : vec) {
        s += to_string(x);
        s += ',';
      }
      s += ')';
    };
    s += "|V";
    for (const auto& v : vertices_) put(v);
    s += "|R";
    for (const auto& r : rays_) put(r);
    s += "|L";
    for (const auto& l : lineality_) put(l);
    return s;
  }

  friend bool operator==(const Polyhedron& a, const Polyhedron& b) {
    return a.dim_ == b.dim_ && a.empty_ == b.empty_ && a.vertices_ == b.vertices_ && a.rays_ == b.rays_ &&
           a.lineality_ == b.lineality_;
  }
  friend bool operator<(const Polyhedron& a, const Polyhedron& b) {
    if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
    if (a.empty_ != b.empty_) return a.empty_;
    if (a.vertices_ != b.vertices_) return a.vertices_ < b.vertices_;
    if (a.rays_ != b.rays_) return a.rays_ < b.rays_;
    return a.lineality_ < b.lineality_;
  }

 private:
  void build_from_generators(const std::vector<RatVector>& vertices, const std::vector<IntVector>& rays,
                             const std::vector<IntVector>& lineality) {
    const std::size_t d = dim_;
    empty_ = false;
    // H-representation from the dual cone of the homogenized cone.
    std::vector<IntVector> dual_eq, dual_ineq;
    for (const auto& v : vertices) {
      RatVector h(v);
      h.push_back(1);
      dual_ineq.push_back(primitive(h));
    }
    for (const auto& r : rays) {
      if (is_zero(r)) continue;
      IntVector h(r);
      h.push_back(0);
      dual_ineq.push_back(primitive(h));
    }
    for (const auto& l : lineality) {
      if (is_zero(l)) continue;
      IntVector h(l);
      h.push_back(0);
      dual_eq.push_back(primitive(h));
    }
    auto dual = detail::double_description(d + 1, dual_eq, dual_ineq);

    // Equations: canonical basis of the dual lineality.
    EchelonForm eqf = rref(detail::as_rational(dual.lineality), d + 1);
    std::vector<IntVector> eq_rows;
    for (const auto& r : eqf.rows) eq_rows.push_back(primitive(r));
    for (const auto& h : eq_rows) {
      IntVector n(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(d));
      if (is_zero(n)) throw GeometryError("internal: inconsistent equation for nonempty generators");
      equations_.push_back({std::move(n), -h[d]});
    }
    std::sort(equations_.begin(), equations_.end());

    std::set<Halfspace> facets;
    for (const auto& g : dual.rays) {
      RatVector h = detail::reduce_modulo(to_rational(g), eq_rows, eqf.pivots);
      IntVector p = primitive(h);
      IntVector n(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(d));
      if (is_zero(n)) continue;  // the face at infinity (t >= 0)
      facets.insert({std::move(n), -p[d]});
    }
    facets_.assign(facets.begin(), facets.end());

    // Lineality of the recession cone.
    std::vector<RatVector> normals;
    for (const auto& h : facets_) normals.push_back(to_rational(h.normal));
    for (const auto& h : equations_) normals.push_back(to_rational(h.normal));
    auto lin = nullspace(normals, d);
    lineality_ = detail::canonical_row_space(lin, d);
    std::vector<RatVector> lin_rat = detail::as_rational(lineality_);
    const std::size_t full_rank = d - lineality_.size();

    auto tight_rank = [&](auto&& is_tight) {
      std::vector<RatVector> rows;
      for (const auto& h : equations_) rows.push_back(to_rational(h.normal));
      for (const auto& h : facets_)
        if (is_tight(h)) rows.push_back(to_rational(h.normal));
      return rank(rows, d);
    };

    std::set<RatVector> vset;
    for (const auto& v : vertices) {
      RatVector pv = project_orthogonal(v, lin_rat);
      if (vset.count(pv)) continue;
      if (tight_rank([&](const Halfspace& h) { return dot(h.normal, pv) == h.offset; }) == full_rank) vset.insert(pv);
    }
    vertices_.assign(vset.begin(), vset.end());
    if (vertices_.empty()) throw GeometryError("internal: no vertex survived canonicalization");

    std::set<IntVector> rset;
    for (const auto& r : rays) {
      IntVector pr = primitive(project_orthogonal(to_rational(r), lin_rat));
      if (is_zero(pr) || rset.count(pr)) continue;
      if (full_rank >= 1 &&
          tight_rank([&](const Halfspace& h) { return dot(h.normal, pr) == 0; }) == full_rank - 1)
        rset.insert(pr);
    }
    rays_.assign(rset.begin(), rset.end());
  }

  std::size_t dim_ = 0;
  bool empty_ = true;
  std::vector<RatVector> vertices_;
  std::vector<IntVector> rays_;
  std::vector<IntVector> lineality_;
  std::vector<Halfspace> facets_;
  std::vector<Halfspace> equations_;
};

inline std::ostream& operator<<(std::ostream& os, const Polyhedron& p) { return os << p.key(); }

/// A polyhedral cone: a Polyhedron whose unique minimal face contains the origin.
class Cone {
 public:
  Cone() = default;

  static Cone from_generators(std::size_t dim, const std::vector<IntVector>& rays,
                              const std::vector<IntVector>& lineality = {}) {
    return Cone(Polyhedron::from_generators(dim, {RatVector(dim, Rational(0))}, rays, lineality));
  }

  /// {x : a . x >= 0 for all a in normals, e . x = 0 for all e in equation_normals}.
  static Cone from_halfspaces(std::size_t dim, const std::vector<IntVector>& normals,
                              const std::vector<IntVector>& equation_normals = {}) {
    std::vector<Halfspace> hi, he;
    for (const auto& a : normals) hi.push_back({a, 0});
    for (const auto& e : equation_normals) he.push_back({e, 0});
    return Cone(Polyhedron::from_inequalities(dim, hi, he));
  }

  static Cone from_polyhedron(Polyhedron p) {
    if (!p.is_cone()) throw GeometryError("from_polyhedron: not a cone");
    return Cone(std::move(p));
  }

  static Cone zero(std::size_t dim) { return from_generators(dim, {}); }

  std::size_t ambient_dim() const { return p_.ambient_dim(); }
  int dimension() const { return p_.dimension(); }
  const Polyhedron& polyhedron() const { return p_; }
  const std::vector<IntVector>& rays() const { return p_.rays(); }
  const std::vector<IntVector>& lineality() const { return p_.lineality(); }
  bool is_pointed() const { return p_.is_pointed(); }

  std::vector<IntVector> halfspace_normals() const {
    std::vector<IntVector> out;
    for (const auto& h : p_.facets()) out.push_back(h.normal);
    return out;
  }
  std::vector<IntVector> equation_normals() const {
    std::vector<IntVector> out;
    for (const auto& h : p_.equations()) out.push_back(h.normal);
    return out;
  }

  bool contains(const RatVector& x) const { return p_.contains(x); }
  bool contains(const IntVector& x) const { return p_.contains(to_rational(x)); }
  bool contains(const Cone& c) const { return p_.contains(c.p_); }

  /// {u : u . x >= 0 for all x in the cone}.
  Cone dual() const { return from_generators(ambient_dim(), halfspace_normals(), equation_normals()); }

  friend bool operator==(const Cone& a, const Cone& b) { return a.p_ == b.p_; }
  friend bool operator<(const Cone& a, const Cone& b) { return a.p_ < b.p_; }

 private:
  explicit Cone(Polyhedron p) : p_(std::move(p)) {}
  Polyhedron p_;
};

// ---------------------------------------------------------------------------
// Operations

inline Polyhedron tail_cone(const Polyhedron& p) {
  if (p.is_empty()) throw GeometryError("tail_cone: empty polyhedron");
  return Polyhedron::from_generators(p.ambient_dim(), {RatVector(p.ambient_dim(), Rational(0))}, p.rays(),
                                     p.lineality());
}

inline Cone tail(const Polyhedron& p) { return Cone::from_polyhedron(tail_cone(p)); }

inline Polyhedron minkowski_sum(const Polyhedron& p, const Polyhedron& q) {
  if (p.ambient_dim() != q.ambient_dim()) throw GeometryError("minkowski_sum: dimension mismatch");
  if (p.is_empty() || q.is_empty()) throw GeometryError("minkowski_sum: empty summand");
  std::vector<RatVector> verts;
  for (const auto& a : p.vertices())
    for (const auto& b : q.vertices()) verts.push_back(add(a, b));
  std::vector<IntVector> rays = p.rays();
  rays.insert(rays.end(), q.rays().begin(), q.rays().end());
  std::vector<IntVector> lin = p.lineality();
  lin.insert(lin.end(), q.lineality().begin(), q.lineality().end());
  return Polyhedron::from_generators(p.ambient_dim(), std::move(verts), std::move(rays), std::move(lin));
}

inline Polyhedron minkowski_sum(const Polyhedron& p, const Cone& c) { return minkowski_sum(p, c.polyhedron()); }

inline Polyhedron intersect(const Polyhedron& p, const Polyhedron& q) {
  if (p.ambient_dim() != q.ambient_dim()) throw GeometryError("intersect: dimension mismatch");
  if (p.is_empty() || q.is_empty()) return Polyhedron::empty(p.ambient_dim());
  std::vector<Halfspace> ineq = p.facets(), eq = p.equations();
  ineq.insert(ineq.end(), q.facets().begin(), q.facets().end());
  eq.insert(eq.end(), q.equations().begin(), q.equations().end());
  return Polyhedron::from_inequalities(p.ambient_dim(), ineq, eq);
}

inline Cone intersect(const Cone& a, const Cone& b) {
  return Cone::from_polyhedron(intersect(a.polyhedron(), b.polyhedron()));
}

inline Polyhedron translate(const Polyhedron& p, const RatVector& v) {
  if (v.size() != p.ambient_dim()) throw GeometryError("translate: dimension mismatch");
  if (p.is_empty()) return p;
  std::vector<RatVector> verts;
  for (const auto& x : p.vertices()) verts.push_back(add(x, v));
  return Polyhedron::from_generators(p.ambient_dim(), std::move(verts), p.rays(), p.lineality());
}

/// Image under a rational linear map (matrix acting on column vectors).
inline Polyhedron linear_image(const Polyhedron& p, const RatMatrix& f) {
  if (f.cols() != p.ambient_dim()) throw GeometryError("linear_image: map does not act on this space");
  if (p.is_empty()) return Polyhedron::empty(f.rows());
  std::vector<RatVector> verts;
  for (const auto& v : p.vertices()) verts.push_back(f.apply(v));
  std::vector<IntVector> rays, lin;
  for (const auto& r : p.rays()) rays.push_back(primitive(f.apply(to_rational(r))));
  for (const auto& l : p.lineality()) lin.push_back(primitive(f.apply(to_rational(l))));
  return Polyhedron::from_generators(f.rows(), std::move(verts), std::move(rays), std::move(lin));
}

inline Polyhedron linear_image(const Polyhedron& p, const IntMatrix& f) { return linear_image(p, to_rational(f)); }

inline Cone linear_image(const Cone& c, const RatMatrix& f) {
  return Cone::from_polyhedron(linear_image(c.polyhedron(), f));
}

/// min <P, u>; nullopt encodes -infinity.
inline std::optional<Rational> min_value(const Polyhedron& p, const RatVector& u) {
  if (p.is_empty()) throw GeometryError("min_value: empty polyhedron");
  if (u.size() != p.ambient_dim()) throw GeometryError("min_value: dimension mismatch");
  for (const auto& l : p.lineality())
    if (dot(l, u) != 0) return std::nullopt;
  for (const auto& r : p.rays())
    if (dot(r, u) < 0) return std::nullopt;
  Rational best = dot(p.vertices().front(), u);
  for (const auto& v : p.vertices()) best = std::min(best, Rational(dot(v, u)));
  return best;
}

inline std::optional<Rational> max_value(const Polyhedron& p, const RatVector& u) {
  auto m = min_value(p, scale(u, Rational(-1)));
  if (!m) return std::nullopt;
  return Rational(-*m);
}

/// The face of P on which u attains its minimum, or nullopt if u is
/// unbounded below on P.
inline std::optional<Polyhedron> face_minimizing(const Polyhedron& p, const RatVector& u) {
  auto m = min_value(p, u);
  if (!m) return std::nullopt;
  std::vector<RatVector> verts;
  for (const auto& v : p.vertices())
    if (dot(v, u) == *m) verts.push_back(v);
  std::vector<IntVector> rays;
  for (const auto& r : p.rays())
    if (dot(r, u) == 0) rays.push_back(r);
  return Polyhedron::from_generators(p.ambient_dim(), std::move(verts), std::move(rays), p.lineality());
}

inline Polyhedron convex_hull(std::size_t dim, std::vector<RatVector> points) {
  return Polyhedron::from_generators(dim, std::move(points));
}

/// P ∩ {u . x = c}.
inline Polyhedron slice(const Polyhedron& p, const RatVector& u, const Rational& c) {
  auto level = Polyhedron::from_rational_inequalities(p.ambient_dim(), {}, {{u, c}});
  return intersect(p, level);
}

}  // namespace fansy
