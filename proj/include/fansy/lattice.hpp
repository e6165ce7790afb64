#pragma once

// Integer linear algebra between named free lattices.
//
// Orientation: a LatticeMap from a rank-c lattice to a rank-r lattice holds an
// r x c matrix acting on column vectors, so column j is the image of the j-th
// domain basis vector.

#include <string>
#include <utility>
#include <vector>

#include "fansy/arith.hpp"

namespace fansy {

class LatticeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LatticeMap {
  IntMatrix matrix;
  std::string domain;
  std::string codomain;

  std::size_t domain_rank() const { return matrix.cols(); }
  std::size_t codomain_rank() const { return matrix.rows(); }

  IntVector operator()(const IntVector& x) const { return matrix.apply(x); }
  RatVector operator()(const RatVector& x) const { return matrix.apply(x); }

  LatticeMap dual(std::string dual_domain, std::string dual_codomain) const {
    return {matrix.transpose(), std::move(dual_domain), std::move(dual_codomain)};
  }

  friend bool operator==(const LatticeMap&, const LatticeMap&) = default;
};

/// f o g; the lattice tags must line up.
inline LatticeMap compose(const LatticeMap& f, const LatticeMap& g) {
  if (g.codomain != f.domain)
    throw LatticeError("compose: " + g.codomain + " is not " + f.domain);
  return {f.matrix * g.matrix, g.domain, f.codomain};
}

inline LatticeMap identity_map(std::size_t n, const std::string& name) {
  return {IntMatrix::identity(n), name, name};
}

struct SmithDecomposition {
  IntMatrix u;  // unimodular, rows x rows
  IntMatrix s;  // diagonal d1 | d2 | ..., d_i >= 0
  IntMatrix v;  // unimodular, cols x cols
  std::size_t rank = 0;
};

/// U A V = S. Pivoting rule: the entry of least absolute value in the
/// remaining block (first in row-major order on ties) becomes the pivot.
inline SmithDecomposition smith_decompose(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SmithDecomposition d{IntMatrix::identity(m), a, IntMatrix::identity(n), 0};
  IntMatrix& s = d.s;

  auto move_min_to = [&](std::size_t t) {
    bool found = false;
    std::size_t bi = t, bj = t;
    Integer best;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        if (s(i, j) == 0) continue;
        Integer av = abs(s(i, j));
        if (!found || av < best) {
          found = true;
          best = av;
          bi = i;
          bj = j;
        }
      }
    if (!found) return false;
    s.swap_rows(t, bi);
    d.u.swap_rows(t, bi);
    s.swap_cols(t, bj);
    d.v.swap_cols(t, bj);
    return true;
  };

  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    if (!move_min_to(t)) break;
    for (;;) {
      bool changed = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (s(i, t) == 0) continue;
        Integer q = s(i, t) / s(t, t);
        s.add_row(i, t, -q);
        d.u.add_row(i, t, -q);
        if (s(i, t) != 0) {
          s.swap_rows(i, t);
          d.u.swap_rows(i, t);
          changed = true;
        }
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (s(t, j) == 0) continue;
        Integer q = s(t, j) / s(t, t);
        s.add_col(j, t, -q);
        d.v.add_col(j, t, -q);
        if (s(t, j) != 0) {
          s.swap_cols(j, t);
          d.v.swap_cols(j, t);
          changed = true;
        }
      }
      if (changed) continue;
      // Row and column are clear; enforce divisibility of the rest.
      bool fixed = false;
      for (std::size_t i = t + 1; i < m && !fixed; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (s(i, j) % s(t, t) != 0) {
            s.add_row(t, i, 1);
            d.u.add_row(t, i, 1);
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    if (s(t, t) < 0) {
      for (std::size_t j = 0; j < n; ++j) s(t, j) = -s(t, j);
      for (std::size_t j = 0; j < m; ++j) d.u(t, j) = -d.u(t, j);
    }
  }
  d.rank = t;
  return d;
}

/// Row-style Hermite normal form of the lattice spanned by `rows`:
/// pivots positive and strictly increasing, entries above a pivot reduced
/// into [0, pivot). Zero rows are dropped. Canonical for the lattice.
inline std::vector<IntVector> hermite_normal_form(std::vector<IntVector> rows, std::size_t cols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    // Euclid down column c until only row r is nonzero.
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c]))) best = i;
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool rest_zero = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        Integer q = rows[i][c] / rows[r][c];
        for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= q * rows[r][j];
        if (rows[i][c] != 0) rest_zero = false;
      }
      if (rest_zero) break;
    }
    if (rows[r][c] == 0) continue;
    if (rows[r][c] < 0)
      for (auto& x : rows[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
      if (q != 0)
        for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= q * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

inline bool same_lattice(const std::vector<IntVector>& a, const std::vector<IntVector>& b, std::size_t cols) {
  return hermite_normal_form(a, cols) == hermite_normal_form(b, cols);
}

/// Embedding of the (automatically saturated) kernel {x : A x = 0}; the
/// columns of the result are the Hermite-normal-form basis rows.
inline LatticeMap kernel_basis(const LatticeMap& a, const std::string& kernel_name = "ker") {
  SmithDecomposition d = smith_decompose(a.matrix);
  std::vector<IntVector> rows;
  for (std::size_t j = d.rank; j < a.matrix.cols(); ++j) rows.push_back(d.v.column(j));
  rows = hermite_normal_form(std::move(rows), a.matrix.cols());
  IntMatrix emb(a.matrix.cols(), rows.size());
  for (std::size_t j = 0; j < rows.size(); ++j)
    for (std::size_t i = 0; i < a.matrix.cols(); ++i) emb(i, j) = rows[j][i];
  return {emb, kernel_name, a.domain};
}

inline bool is_injective(const IntMatrix& m) { return rank(m) == m.cols(); }

/// Surjection onto the torsion-free cokernel of an injective map B, i.e. a
/// map whose kernel is the saturation of im(B). Rows are the HNF basis of
/// the left kernel of B.
inline LatticeMap quotient_projection(const LatticeMap& b, const std::string& quotient_name = "quot") {
  if (!is_injective(b.matrix)) throw LatticeError("quotient_projection: map " + b.domain + " -> " + b.codomain + " is not injective");
  LatticeMap left = kernel_basis({b.matrix.transpose(), b.codomain, b.domain});
  return {left.matrix.transpose(), b.codomain, quotient_name};
}

inline bool is_surjective(const IntMatrix& m) {
  SmithDecomposition d = smith_decompose(m);
  if (d.rank != m.rows()) return false;
  for (std::size_t i = 0; i < d.rank; ++i)
    if (d.s(i, i) != 1) return false;
  return true;
}

/// s with pi o s = id, read off the Smith decomposition: s = V [I; 0] U.
inline LatticeMap integral_section(const LatticeMap& pi) {
  SmithDecomposition d = smith_decompose(pi.matrix);
  const std::size_t r = pi.matrix.rows();
  bool onto = d.rank == r;
  for (std::size_t i = 0; onto && i < r; ++i) onto = d.s(i, i) == 1;
  if (!onto) throw LatticeError("integral_section: map " + pi.domain + " -> " + pi.codomain + " is not surjective");
  IntMatrix pad(pi.matrix.cols(), r);
  for (std::size_t i = 0; i < r; ++i) pad(i, i) = 1;
  return {d.v * pad * d.u, pi.codomain, pi.domain};
}

/// True iff t o emb is exactly the identity.
inline bool check_retraction(const RatMatrix& t, const LatticeMap& emb) {
  if (t.cols() != emb.matrix.rows()) throw LatticeError("check_retraction: dimension mismatch");
  if (t.rows() != emb.matrix.cols()) return false;
  return t * to_rational(emb.matrix) == RatMatrix::identity(emb.matrix.cols());
}

/// A rational left inverse (E^T E)^-1 E^T of an injective map E.
inline RatMatrix rational_left_inverse(const IntMatrix& e) {
  RatMatrix er = to_rational(e);
  RatMatrix et = er.transpose();
  auto gram_inv = inverse(et * er);
  if (!gram_inv) throw LatticeError("rational_left_inverse: map is not injective");
  return *gram_inv * et;
}

}  // namespace fansy
