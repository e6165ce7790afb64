#pragma once

// Type-A root combinatorics and the Grassmannian Gr(2,n): tail fans, Plücker
// weights, boundary-partition rays, and the fansy divisor on the moduli space
// of stable n-pointed rational curves, computed in closed form and through
// the recipe.
//
// The cocharacter lattice of the quotient torus, <l_1..l_n | l_1+..+l_n = 0>,
// is written in the basis l_1..l_{n-1}; l_n = -(l_1+..+l_{n-1}).

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "fansy/chow_recipe.hpp"
#include "fansy/complex.hpp"
#include "fansy/divisor.hpp"

namespace fansy {

class GrassmannianError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Permutation = std::vector<int>;  // w[i-1] = w(i), values 1..n

inline Integer binomial(int n, int k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

// ---------------------------------------------------------------------------
// Root data

/// Coordinates of l_a (1-based) in the basis l_1..l_{n-1}.
inline IntVector ell(int a, int n) {
  IntVector v(static_cast<std::size_t>(n - 1), Integer(0));
  if (a == n)
    std::fill(v.begin(), v.end(), Integer(-1));
  else
    v[static_cast<std::size_t>(a - 1)] = 1;
  return v;
}

/// l_J = sum of l_a over a in J.
inline IntVector ell_sum(const std::vector<int>& j, int n) {
  IntVector v(static_cast<std::size_t>(n - 1), Integer(0));
  for (int a : j) v = add(v, ell(a, n));
  return v;
}

/// The root L_i - L_j as a linear form in the l-basis.
inline IntVector root_form(int i, int j, int n) {
  IntVector f(static_cast<std::size_t>(n - 1), Integer(0));
  if (i < n) f[static_cast<std::size_t>(i - 1)] += 1;
  if (j < n) f[static_cast<std::size_t>(j - 1)] -= 1;
  return f;
}

struct TypeARootData {
  int n = 0;
  std::vector<std::pair<int, int>> positive_roots;  // (i,j), i<j, lexicographic

  explicit TypeARootData(int n_) : n(n_) {
    if (n < 2) throw GrassmannianError("root data: n must be at least 2");
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) positive_roots.push_back({i, j});
  }

  IntVector simple_root(int i) const { return root_form(i, i + 1, n); }

  /// Generators l_1, l_1+l_2, ..., l_1+..+l_{n-1} of the fundamental cone.
  std::vector<IntVector> fundamental_generators() const {
    std::vector<IntVector> g;
    IntVector acc(static_cast<std::size_t>(n - 1), Integer(0));
    for (int p = 1; p < n; ++p) {
      acc = add(acc, ell(p, n));
      g.push_back(acc);
    }
    return g;
  }

  Cone fundamental_cone() const { return Cone::from_generators(static_cast<std::size_t>(n - 1), fundamental_generators()); }
};

// ---------------------------------------------------------------------------
// Permutations

inline Permutation identity_permutation(int n) {
  Permutation w(static_cast<std::size_t>(n));
  std::iota(w.begin(), w.end(), 1);
  return w;
}

inline Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation c(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = a[static_cast<std::size_t>(b[i] - 1)];
  return c;
}

/// (k, n-k)-shuffles in lexicographic order.
inline std::vector<Permutation> shuffles(int k, int n) {
  if (k < 1 || k > n - 1) throw GrassmannianError("shuffles: need 1 <= k <= n-1");
  std::vector<Permutation> out;
  std::vector<bool> mask(static_cast<std::size_t>(n), false);
  std::fill(mask.begin(), mask.begin() + k, true);
  do {
    Permutation w;
    for (int v = 1; v <= n; ++v)
      if (mask[static_cast<std::size_t>(v - 1)]) w.push_back(v);
    for (int v = 1; v <= n; ++v)
      if (!mask[static_cast<std::size_t>(v - 1)]) w.push_back(v);
    out.push_back(std::move(w));
  } while (std::prev_permutation(mask.begin(), mask.end()));
  std::sort(out.begin(), out.end());
  return out;
}

/// R(w) = {alpha_ij : i<j, w(i) > w(j)}; its size is the length of w.
inline std::vector<std::pair<int, int>> inversion_set(const Permutation& w) {
  std::vector<std::pair<int, int>> out;
  const int n = static_cast<int>(w.size());
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (w[static_cast<std::size_t>(i - 1)] > w[static_cast<std::size_t>(j - 1)]) out.push_back({i, j});
  return out;
}

inline std::size_t length(const Permutation& w) { return inversion_set(w).size(); }

inline Permutation longest_element(int n) {
  Permutation w(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) w[static_cast<std::size_t>(i - 1)] = n + 1 - i;
  return w;
}

/// Longest element of S_k x S_{n-k}.
inline Permutation longest_parabolic_element(int k, int n) {
  Permutation w(static_cast<std::size_t>(n));
  for (int i = 1; i <= k; ++i) w[static_cast<std::size_t>(i - 1)] = k + 1 - i;
  for (int i = k + 1; i <= n; ++i) w[static_cast<std::size_t>(i - 1)] = n + k + 1 - i;
  return w;
}

/// w^I = (1 2 ... n)^{-k}: i -> ((i-1-k) mod n) + 1. Checked against w0 * w0_I.
inline Permutation longest_coset_rep(int k, int n) {
  if (k < 1 || k > n - 1) throw GrassmannianError("longest_coset_rep: need 1 <= k <= n-1");
  Permutation w(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) w[static_cast<std::size_t>(i - 1)] = (((i - 1 - k) % n) + n) % n + 1;
  if (w != compose(longest_element(n), longest_parabolic_element(k, n)))
    throw GrassmannianError("longest_coset_rep: cyclic formula disagrees with w0 w0_I");
  return w;
}

/// w(l_a) = l_{w(a)} on l-coordinates.
inline IntVector weyl_act(const Permutation& w, const IntVector& x) {
  const int n = static_cast<int>(w.size());
  IntVector full(static_cast<std::size_t>(n), Integer(0));
  for (int a = 1; a < n; ++a) full[static_cast<std::size_t>(w[static_cast<std::size_t>(a - 1)] - 1)] += x[static_cast<std::size_t>(a - 1)];
  IntVector y(static_cast<std::size_t>(n - 1));
  const Integer last = full[static_cast<std::size_t>(n - 1)];
  for (int a = 0; a < n - 1; ++a) y[static_cast<std::size_t>(a)] = full[static_cast<std::size_t>(a)] - last;
  return y;
}

// ---------------------------------------------------------------------------
// Tail cones and tail fans

/// Simple roots are indexed 1..n-1 (alpha_i = L_i - L_{i+1}).
inline bool root_in_parabolic(int i, int j, const std::set<int>& simple) {
  for (int s = i; s < j; ++s)
    if (!simple.count(s)) return false;
  return true;
}

inline std::vector<std::pair<int, int>> roots_outside_parabolic(int n, const std::set<int>& simple) {
  std::vector<std::pair<int, int>> out;
  for (const auto& [i, j] : TypeARootData(n).positive_roots)
    if (!root_in_parabolic(i, j, simple)) out.push_back({i, j});
  return out;
}

/// Elements of W_I: permutations preserving the blocks joined by I.
inline std::vector<Permutation> parabolic_subgroup(int n, const std::set<int>& simple) {
  std::vector<int> block(static_cast<std::size_t>(n));
  int b = 0;
  for (int i = 1; i <= n; ++i) {
    block[static_cast<std::size_t>(i - 1)] = b;
    if (!simple.count(i)) ++b;
  }
  std::vector<Permutation> out;
  Permutation w = identity_permutation(n);
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) ok = block[static_cast<std::size_t>(w[static_cast<std::size_t>(i)] - 1)] == block[static_cast<std::size_t>(i)];
    if (ok) out.push_back(w);
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

/// (R+ \ R_I+)^dual in the l-lattice. Rejects I meeting (R+ \ R_I+)^perp,
/// where the torus acts with a non-discrete kernel. When W_I is small the
/// result is cross-checked against the cone spanned by W_I applied to the
/// fundamental cone.
inline Cone tail_cone_chart(const std::set<int>& simple, int n, std::size_t weyl_guard = 5040) {
  for (int s : simple)
    if (s < 1 || s > n - 1) throw GrassmannianError("tail_cone_chart: simple root index out of range");
  auto outside = roots_outside_parabolic(n, simple);
  for (int s : simple) {
    bool seen = false;
    for (const auto& [i, j] : outside) {
      // <L_i - L_j, e^s - e^{s+1}>
      int v = (i == s) - (i == s + 1) - (j == s) + (j == s + 1);
      if (v != 0) seen = true;
    }
    if (!seen) throw GrassmannianError("tail_cone_chart: simple root " + std::to_string(s) + " is orthogonal to all chart weights");
  }
  std::vector<IntVector> forms;
  for (const auto& [i, j] : outside) forms.push_back(root_form(i, j, n));
  const std::size_t dim = static_cast<std::size_t>(n - 1);
  Cone dual = Cone::from_halfspaces(dim, forms);
  Integer group_order = 1;
  {
    int run = 1;
    for (int i = 1; i <= n; ++i) {
      if (i < n && simple.count(i)) {
        ++run;
        continue;
      }
      Integer f;
      mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(run));
      group_order *= f;
      run = 1;
    }
  }
  if (group_order <= Integer(static_cast<unsigned long>(weyl_guard))) {
    std::vector<IntVector> gens;
    auto phi = TypeARootData(n).fundamental_generators();
    for (const auto& w : parabolic_subgroup(n, simple))
      for (const auto& g : phi) gens.push_back(weyl_act(w, g));
    if (!(Cone::from_generators(dim, gens) == dual))
      throw GrassmannianError("tail_cone_chart: W_I orbit of the fundamental cone differs from the dual cone");
  }
  return dual;
}

/// The parabolic of Gr(k,n): all simple roots except alpha_k.
inline std::set<int> grassmannian_parabolic(int k, int n) {
  std::set<int> s;
  for (int i = 1; i < n; ++i)
    if (i != k) s.insert(i);
  return s;
}

inline std::string subset_label(const std::vector<int>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "}";
}

/// Sign-pattern cone <±l_1..±l_n> with the given negatives.
inline Cone sign_pattern_cone(const std::vector<int>& negatives, int n) {
  std::vector<IntVector> gens;
  for (int a = 1; a <= n; ++a) {
    IntVector g = ell(a, n);
    if (std::binary_search(negatives.begin(), negatives.end(), a))
      for (auto& x : g) x = -x;
    gens.push_back(std::move(g));
  }
  return Cone::from_generators(static_cast<std::size_t>(n - 1), gens);
}

/// The C(n,k) cones <±l_1..±l_n> with exactly k negative signs, labeled by
/// the set of negative indices, in lexicographic order.
inline Fan tail_fan_grass(int k, int n) {
  if (k < 1 || k > n - 1) throw GrassmannianError("tail_fan_grass: need 1 <= k <= n-1");
  Fan f;
  f.ambient = static_cast<std::size_t>(n - 1);
  for (const auto& w : shuffles(k, n)) {
    std::vector<int> neg(w.begin(), w.begin() + k);
    f.maximal_cones.push_back({subset_label(neg), sign_pattern_cone(neg, n)});
  }
  std::sort(f.maximal_cones.begin(), f.maximal_cones.end(),
            [](const LabeledCone& a, const LabeledCone& b) { return a.label < b.label; });
  return f;
}

/// {-w(W_I Φ) : w in W^I}, labeled by w({1..k}).
inline Fan tail_fan_from_weyl(int k, int n) {
  Cone chart = tail_cone_chart(grassmannian_parabolic(k, n), n);
  Fan f;
  f.ambient = static_cast<std::size_t>(n - 1);
  for (const auto& w : shuffles(k, n)) {
    std::vector<IntVector> gens;
    for (const auto& r : chart.rays()) {
      IntVector g = weyl_act(w, r);
      for (auto& x : g) x = -x;
      gens.push_back(std::move(g));
    }
    std::vector<int> neg(w.begin(), w.begin() + k);
    std::sort(neg.begin(), neg.end());
    f.maximal_cones.push_back({subset_label(neg), Cone::from_generators(f.ambient, gens)});
  }
  std::sort(f.maximal_cones.begin(), f.maximal_cones.end(),
            [](const LabeledCone& a, const LabeledCone& b) { return a.label < b.label; });
  return f;
}

// ---------------------------------------------------------------------------
// Plücker data

inline std::vector<std::pair<int, int>> plucker_pairs(int n) { return TypeARootData(n).positive_roots; }

inline std::size_t plucker_index(int i, int j, int n) {
  if (i > j) std::swap(i, j);
  std::size_t idx = 0;
  for (int a = 1; a < i; ++a) idx += static_cast<std::size_t>(n - a);
  return idx + static_cast<std::size_t>(j - i - 1);
}

inline std::string plucker_name(int i, int j) { return "z{" + std::to_string(i) + "," + std::to_string(j) + "}"; }

/// Columns E_ij -> e_i + e_j.
inline IntMatrix plucker_degrees(int n) {
  if (n < 4) throw GrassmannianError("plucker_degrees: need n >= 4");
  auto pairs = plucker_pairs(n);
  IntMatrix d(static_cast<std::size_t>(n), pairs.size());
  for (std::size_t c = 0; c < pairs.size(); ++c) {
    d(static_cast<std::size_t>(pairs[c].first - 1), c) = 1;
    d(static_cast<std::size_t>(pairs[c].second - 1), c) = 1;
  }
  return d;
}

/// t(E^ij) = (e^i + e^j)/(n-2) - 1/((n-2)(n-1)).
inline RatMatrix plucker_retraction(int n) {
  auto pairs = plucker_pairs(n);
  RatMatrix t(static_cast<std::size_t>(n), pairs.size());
  const Rational a = make_rational(1, n - 2), c = make_rational(1, (n - 2) * (n - 1));
  for (std::size_t k = 0; k < pairs.size(); ++k)
    for (int r = 1; r <= n; ++r)
      t(static_cast<std::size_t>(r - 1), k) = (r == pairs[k].first || r == pairs[k].second ? a : Rational(0)) - c;
  return t;
}

/// e^i -> l_i.
inline RatMatrix plucker_projection(int n) {
  RatMatrix p(static_cast<std::size_t>(n - 1), static_cast<std::size_t>(n));
  for (int a = 1; a <= n; ++a) {
    IntVector v = ell(a, n);
    for (int r = 0; r < n - 1; ++r) p(static_cast<std::size_t>(r), static_cast<std::size_t>(a - 1)) = v[static_cast<std::size_t>(r)];
  }
  return p;
}

/// Setup for the affine cone over Gr(2,n) whose section is compatible with
/// the retraction t (t o s = 0), so that coefficients equal t(fiber).
inline WeightSetup plucker_setup(int n) {
  WeightSetup s = build_setup(plucker_degrees(n));
  RatMatrix sec = section_from_retraction(s, plucker_retraction(n));
  return build_setup(plucker_degrees(n), sec);
}

// ---------------------------------------------------------------------------
// Partitions

inline void require_boundary_partition(const Partition& b) {
  if (b.size_first() < 2 || b.size_first() > b.n() - 2)
    throw GrassmannianError("partition " + b.to_string() + " does not have two blocks of size >= 2");
}

/// All partitions with both blocks of size >= 2, block of 1 first, ordered
/// by block size then lexicographically.
inline std::vector<Partition> boundary_partitions(int n) {
  std::vector<Partition> out;
  for (unsigned long mask = 0; mask < (1ul << (n - 1)); ++mask) {
    std::vector<int> block{1};
    for (int i = 2; i <= n; ++i)
      if (mask & (1ul << (i - 2))) block.push_back(i);
    int b = static_cast<int>(block.size());
    if (b < 2 || b > n - 2) continue;
    out.emplace_back(n, block);
  }
  std::sort(out.begin(), out.end(), [](const Partition& a, const Partition& b) {
    if (a.size_first() != b.size_first()) return a.size_first() < b.size_first();
    return a.first() < b.first();
  });
  return out;
}

/// E^J = sum of E^ij over i<j in J.
inline IntVector plucker_block_vector(const std::vector<int>& block, int n) {
  IntVector e(plucker_pairs(n).size(), Integer(0));
  for (std::size_t x = 0; x < block.size(); ++x)
    for (std::size_t y = x + 1; y < block.size(); ++y) e[plucker_index(block[x], block[y], n)] += 1;
  return e;
}

/// e^J in the cocharacter coordinates.
inline RatVector indicator(const std::vector<int>& block, int n) {
  RatVector v(static_cast<std::size_t>(n), Rational(0));
  for (int a : block) v[static_cast<std::size_t>(a - 1)] = 1;
  return v;
}

struct PartitionRay {
  IntVector point;      // pi(E^{B'}) = pi(E^{B''})
  IntVector primitive;
  Integer scale;
};

inline PartitionRay c_ray(const Partition& b, const WeightSetup& s) {
  require_boundary_partition(b);
  const int n = b.n();
  IntVector e1 = plucker_block_vector(b.first(), n);
  IntVector e2 = plucker_block_vector(b.second(), n);
  IntVector c1 = s.pi(e1), c2 = s.pi(e2);
  if (c1 != c2) throw GrassmannianError("c_ray: pi(E^B') != pi(E^B'') for " + b.to_string());
  RatVector lhs = s.deg_star_rational().apply(sub(indicator(b.first(), n), indicator(b.second(), n)));
  if (lhs != scale(to_rational(sub(e1, e2)), Rational(2)))
    throw GrassmannianError("c_ray: deg*(e^B' - e^B'') != 2(E^B' - E^B'') for " + b.to_string());
  return {c1, primitive(c1), gcd_of(c1)};
}

/// deg*(σ) inside Q^{C(n,2)}.
inline Polyhedron embedded_sigma(const WeightSetup& s) { return linear_image(s.sigma.polyhedron(), s.deg_star_rational()); }

/// π^{-1}(c^B) ∩ orthant, checked against segment(E^B', E^B'') + deg*(σ).
inline Polyhedron positive_fiber_B(const Partition& b, const WeightSetup& s) {
  PartitionRay c = c_ray(b, s);
  Polyhedron fiber = fiber_polyhedron(s.pi, to_rational(c.point));
  Polyhedron closed = minkowski_sum(
      convex_hull(s.coordinates(), {to_rational(plucker_block_vector(b.first(), b.n())),
                                    to_rational(plucker_block_vector(b.second(), b.n()))}),
      embedded_sigma(s));
  if (!(fiber == closed)) throw GrassmannianError("positive_fiber_B: fiber differs from the closed form for " + b.to_string());
  return fiber;
}

/// Δ_B = (b-1)/(n-2) e^B' - (b-1)b/(2(n-2)(n-1)) 1 + 1/2 segment(0, e^B'' - e^B') + σ.
inline Polyhedron delta_B_closed(const Partition& b, const WeightSetup& s) {
  require_boundary_partition(b);
  const int n = b.n();
  const int bb = b.size_first();
  RatVector base = scale(indicator(b.first(), n), make_rational(bb - 1, n - 2));
  base = sub(base, RatVector(static_cast<std::size_t>(n), make_rational((bb - 1) * bb, 2 * (n - 2) * (n - 1))));
  RatVector dir = scale(sub(indicator(b.second(), n), indicator(b.first(), n)), make_rational(1, 2));
  return minkowski_sum(convex_hull(static_cast<std::size_t>(n), {base, add(base, dir)}), s.sigma.polyhedron());
}

/// Closed-form Δ_B, asserted equal to t(positive fiber).
inline Polyhedron delta_B(const Partition& b, const WeightSetup& s) {
  Polyhedron closed = delta_B_closed(b, s);
  Polyhedron via_t = linear_image(positive_fiber_B(b, s), plucker_retraction(b.n()));
  if (!(closed == via_t)) throw GrassmannianError("delta_B: closed form differs from t(fiber) for " + b.to_string());
  return closed;
}

// ---------------------------------------------------------------------------
// The fansy divisor

/// Endpoints (b+1-n)/(n-2) l_B' and (b-1)/(n-2) l_B' of the compact edge C_B.
inline std::pair<RatVector, RatVector> edge_endpoints(const Partition& b) {
  require_boundary_partition(b);
  const int n = b.n();
  RatVector lb = to_rational(ell_sum(b.first(), n));
  return {scale(lb, make_rational(b.size_first() + 1 - n, n - 2)), scale(lb, make_rational(b.size_first() - 1, n - 2))};
}

/// The part of C_B a tail cone τ is attached to: the points x of C_B with
/// (x + τ) ∩ C_B = {x}.
inline Polyhedron edge_attachment(const Partition& b, const Cone& tau) {
  auto [lo, hi] = edge_endpoints(b);
  IntVector d = primitive(sub(hi, lo));
  IntVector md(d);
  for (auto& x : md) x = -x;
  const std::size_t dim = lo.size();
  bool up = tau.contains(d), down = tau.contains(md);
  if (up && down) throw GrassmannianError("edge_attachment: tail cone contains a line");
  if (up) return Polyhedron::point(hi);
  if (down) return Polyhedron::point(lo);
  return convex_hull(dim, {lo, hi});
}

inline FansyDivisor fansy_closed_form(int n) {
  if (n < 4) throw GrassmannianError("fansy_closed_form: need n >= 4");
  Fan tails = tail_fan_grass(2, n);
  auto parts = boundary_partitions(n);
  FansyDivisor f;
  f.ambient = static_cast<std::size_t>(n - 1);
  for (const auto& b : parts) f.labels.push_back(b);
  for (const auto& t : tails.maximal_cones) {
    if (!t.cone.is_pointed()) throw GrassmannianError("fansy_closed_form: tail cone " + t.label + " is not pointed");
    std::vector<Term> terms;
    for (const auto& b : parts) terms.push_back({b, minkowski_sum(edge_attachment(b, t.cone), t.cone)});
    f.cells.emplace_back(t.cone, std::move(terms));
    f.cell_names.push_back(t.label);
  }
  return f;
}

struct GrassmannianRecipe {
  WeightSetup setup;
  RecipeDivisor divisor;
  FansyDivisor fansy;
};

/// The recipe path: rays restricted to the c^B, coefficients shifted by the
/// section compatible with t, boundary faces per Plücker coordinate, then
/// projected along e^i -> l_i.
inline GrassmannianRecipe fansy_via_recipe(int n, int max_n = 6) {
  if (n < 4) throw GrassmannianError("fansy_via_recipe: need n >= 4");
  if (n > max_n) throw GuardError("fansy_via_recipe: n = " + std::to_string(n) + " exceeds the guard " + std::to_string(max_n));
  GrassmannianRecipe out;
  out.setup = plucker_setup(n);
  std::vector<RaySpec> rays;
  for (const auto& b : boundary_partitions(n)) rays.push_back({c_ray(b, out.setup).point, DivisorLabel(b)});
  out.divisor = pp_from_weights(out.setup, rays);
  std::vector<std::string> names;
  for (const auto& [i, j] : plucker_pairs(n)) names.push_back(plucker_name(i, j));
  out.fansy = projectivize(out.setup, out.divisor, plucker_projection(n), names);
  return out;
}

struct FansyComparison {
  bool equal = false;
  std::vector<std::pair<std::string, std::string>> bijection;  // (left cell, right cell)
  std::vector<std::string> findings;
};

/// Geometric comparison: labels must agree as sets; cells are matched by
/// equality of tail and of every coefficient.
inline FansyComparison compare_fansy(const FansyDivisor& a, const FansyDivisor& b) {
  FansyComparison r;
  if (a.ambient != b.ambient) {
    r.findings.push_back("ambient dimensions differ");
    return r;
  }
  auto la = a.labels, lb = b.labels;
  std::sort(la.begin(), la.end());
  std::sort(lb.begin(), lb.end());
  if (la != lb) {
    r.findings.push_back("label sets differ");
    return r;
  }
  if (a.cells.size() != b.cells.size())
    r.findings.push_back("cell counts differ: " + std::to_string(a.cells.size()) + " vs " + std::to_string(b.cells.size()));
  std::vector<bool> used(b.cells.size(), false);
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    bool matched = false;
    for (std::size_t j = 0; j < b.cells.size() && !matched; ++j) {
      if (used[j] || !(a.cells[i].tail() == b.cells[j].tail())) continue;
      bool same = true;
      for (const auto& l : la)
        if (!(*a.cells[i].coefficient(l) == *b.cells[j].coefficient(l))) {
          same = false;
          break;
        }
      if (same) {
        used[j] = true;
        matched = true;
        r.bijection.push_back({a.cell_names[i], b.cell_names[j]});
      }
    }
    if (!matched) r.findings.push_back("cell " + a.cell_names[i] + " has no counterpart");
  }
  for (std::size_t j = 0; j < b.cells.size(); ++j)
    if (!used[j]) r.findings.push_back("cell " + b.cell_names[j] + " has no counterpart");
  r.equal = r.findings.empty();
  return r;
}

// ---------------------------------------------------------------------------
// The chart z_12 != 0

struct LocalChart {
  int n = 0;
  RatMatrix left;        // (n-1) x n: e^i -> l_i
  IntMatrix middle;      // 2(n-2) x C(n,2)
  IntMatrix deg_star;    // 2(n-2) x (n-1): local deg* on l_1..l_{n-1}
  IntMatrix pi;          // (n-3) x 2(n-2): f^1⊗g^j -> g^j, f^2⊗g^j -> -g^j into Z^{n-2}/1
  IntMatrix right;       // (n-3) x rank N'': c -> π_loc(middle(s(c)))
};

/// Local coordinate index of f^a ⊗ g^j (a in {1,2}, j in 3..n).
inline std::size_t local_index(int a, int j, int n) {
  return static_cast<std::size_t>((a - 1) * (n - 2) + (j - 3));
}

/// g^j in the basis g^3..g^{n-1} of Z^{n-2}/1.
inline IntVector g_class(int j, int n) {
  IntVector v(static_cast<std::size_t>(n - 3), Integer(0));
  if (j == n)
    std::fill(v.begin(), v.end(), Integer(-1));
  else
    v[static_cast<std::size_t>(j - 3)] = 1;
  return v;
}

inline LocalChart local_chart(int n, const WeightSetup& s) {
  if (n < 4) throw GrassmannianError("local_chart: need n >= 4");
  LocalChart c;
  c.n = n;
  const std::size_t loc = static_cast<std::size_t>(2 * (n - 2));
  c.left = plucker_projection(n);
  auto pairs = plucker_pairs(n);
  c.middle = IntMatrix(loc, pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    auto [i, j] = pairs[k];
    if (i == 1 && j == 2) {
      for (std::size_t r = 0; r < loc; ++r) c.middle(r, k) = -1;
    } else if (i == 1) {
      c.middle(local_index(2, j, n), k) = 1;
    } else if (i == 2) {
      c.middle(local_index(1, j, n), k) = 1;
    }
  }
  c.deg_star = IntMatrix(loc, static_cast<std::size_t>(n - 1));
  for (int m = 1; m < n; ++m) {
    const std::size_t col = static_cast<std::size_t>(m - 1);
    if (m <= 2) {
      for (int j = 3; j <= n; ++j) c.deg_star(local_index(m, j, n), col) = -1;
    } else {
      c.deg_star(local_index(1, m, n), col) = 1;
      c.deg_star(local_index(2, m, n), col) = 1;
    }
  }
  c.pi = IntMatrix(static_cast<std::size_t>(n - 3), loc);
  for (int j = 3; j <= n; ++j) {
    IntVector g = g_class(j, n);
    for (std::size_t r = 0; r < g.size(); ++r) {
      c.pi(r, local_index(1, j, n)) = g[r];
      c.pi(r, local_index(2, j, n)) = -g[r];
    }
  }
  RatMatrix right = to_rational(c.pi * c.middle) * s.section;
  c.right = IntMatrix(right.rows(), right.cols());
  for (std::size_t i = 0; i < right.rows(); ++i)
    for (std::size_t j = 0; j < right.cols(); ++j) {
      if (right(i, j).get_den() != 1) throw GrassmannianError("local_chart: right vertical map is not integral");
      c.right(i, j) = right(i, j).get_num();
    }
  return c;
}

struct LocalChartReport {
  Report report;
  std::vector<std::pair<Partition, IntVector>> images;  // c^B -> right(c^B)
};

/// Checks the global/local diagram for the chart z_12 != 0: exactness of the
/// local sequence, both squares, the local weights, and which partitions
/// survive in the chart.
inline LocalChartReport local_chart_check(int n) {
  LocalChartReport out;
  Report& r = out.report;
  WeightSetup s = build_setup(plucker_degrees(n));
  LocalChart c = local_chart(n, s);
  const std::size_t loc = c.middle.rows();

  if (!(c.pi * c.deg_star).is_zero()) r.fail("local sequence: pi_loc o deg*_loc != 0");
  if (!is_injective(c.deg_star)) r.fail("local sequence: deg*_loc is not injective");
  if (!is_surjective(c.pi)) r.fail("local sequence: pi_loc is not surjective");
  {
    LatticeMap k = kernel_basis({c.pi, "Z^2(n-2)", "Nbar"});
    if (!same_lattice(k.matrix.column_list(), c.deg_star.column_list(), loc))
      r.fail("local sequence: ker pi_loc is not the image of deg*_loc");
  }

  // Left square, on each e^i.
  RatMatrix lhs = to_rational(c.middle) * s.deg_star_rational();
  RatMatrix rhs = to_rational(c.deg_star) * c.left;
  for (std::size_t i = 0; i < lhs.cols(); ++i)
    if (lhs.column(i) != rhs.column(i)) r.fail("left square fails on e^" + std::to_string(i + 1));

  // Right square, on each E^ij.
  IntMatrix via_global = c.right * s.pi.matrix;
  IntMatrix via_local = c.pi * c.middle;
  auto pairs = plucker_pairs(n);
  for (std::size_t k = 0; k < pairs.size(); ++k)
    if (via_global.column(k) != via_local.column(k))
      r.fail("right square fails on E^" + std::to_string(pairs[k].first) + std::to_string(pairs[k].second));

  // Local weights are -(R+ \ R_I+) = {L_i - L_a : a in {1,2}, i >= 3}.
  {
    std::set<IntVector> have, want;
    IntMatrix w = c.deg_star.transpose();
    for (std::size_t k = 0; k < loc; ++k) have.insert(w.column(k));
    for (const auto& [a, i] : roots_outside_parabolic(n, grassmannian_parabolic(2, n)))
      want.insert(root_form(i, a, n));
    if (have != want) r.fail("local weights differ from -(R+ \\ R_I+)");
  }

  // Visibility of partitions.
  for (const auto& b : boundary_partitions(n)) {
    IntVector img = c.right.apply(c_ray(b, s).point);
    IntVector expect(static_cast<std::size_t>(n - 3), Integer(0));
    if (b.separates(1, 2)) {
      std::vector<int> block = b.contains_first(2) ? b.first() : b.second();
      for (int j : block)
        if (j != 2) expect = add(expect, g_class(j, n));
    }
    if (img != expect) r.fail("partition " + b.to_string() + " maps to " + point_string(to_rational(img)));
    out.images.push_back({b, img});
  }
  return out;
}

}  // namespace fansy
