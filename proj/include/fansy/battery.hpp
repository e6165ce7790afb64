#pragma once

// Verification battery for Gr(2,n): each check returns a Report, and
// grassmannian_battery collects them under stable names.

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fansy/grassmannian.hpp"
#include "fansy/parallel.hpp"

namespace fansy {

using NamedReport = std::pair<std::string, Report>;

inline Report check_weyl_identities(int k, int n) {
  Report r;
  auto sh = shuffles(k, n);
  if (Integer(static_cast<unsigned long>(sh.size())) != binomial(n, k))
    r.fail("#shuffles(" + std::to_string(k) + "," + std::to_string(n) + ") = " + std::to_string(sh.size()));
  for (const auto& w : sh) {
    if (!std::is_sorted(w.begin(), w.begin() + k) || !std::is_sorted(w.begin() + k, w.end())) {
      r.fail("shuffle not increasing on both blocks");
      break;
    }
  }
  Permutation wi;
  try {
    wi = longest_coset_rep(k, n);
  } catch (const GrassmannianError& e) {
    r.fail(e.what());
    return r;
  }
  if (!std::binary_search(sh.begin(), sh.end(), wi)) r.fail("w^I is not a shuffle");
  {
    // (1 2 ... n)^{-k}
    Permutation inv_cycle(static_cast<std::size_t>(n)), power = identity_permutation(n);
    for (int i = 1; i <= n; ++i) inv_cycle[static_cast<std::size_t>(i - 1)] = i == 1 ? n : i - 1;
    for (int j = 0; j < k; ++j) power = compose(inv_cycle, power);
    if (power != wi) r.fail("w^I is not (1 2 ... n)^{-k}");
  }
  const std::size_t expect = static_cast<std::size_t>(k * (n - k));
  if (length(wi) != expect) r.fail("length(w^I) = " + std::to_string(length(wi)));
  if (roots_outside_parabolic(n, grassmannian_parabolic(k, n)).size() != expect) r.fail("#(R+ \\ R_I+) != k(n-k)");
  for (const auto& w : sh)
    if (length(w) > expect) r.fail("a shuffle is longer than w^I");
  return r;
}

inline Report check_tail_fan(int k, int n) {
  Report r;
  Fan f = tail_fan_grass(k, n);
  if (Integer(static_cast<unsigned long>(f.maximal_cones.size())) != binomial(n, k))
    r.fail("tail fan has " + std::to_string(f.maximal_cones.size()) + " cones");
  for (const auto& c : f.maximal_cones) {
    if (!c.cone.is_pointed()) r.fail("cone " + c.label + " is not pointed");
    if (c.cone.dimension() != n - 1) r.fail("cone " + c.label + " is not full-dimensional");
  }
  r.merge(check_complete_fan(f), "completeness: ");
  Cone chart = tail_cone_chart(grassmannian_parabolic(k, n), n);
  std::vector<int> neg;
  for (int a = k + 1; a <= n; ++a) neg.push_back(a);
  if (!(chart == sign_pattern_cone(neg, n))) r.fail("chart cone differs from <l_1..l_k, -l_{k+1}..-l_n>");
  Fan w = tail_fan_from_weyl(k, n);
  if (w.maximal_cones.size() != f.maximal_cones.size()) {
    r.fail("Weyl orbit gives a different number of cones");
  } else {
    for (std::size_t i = 0; i < f.maximal_cones.size(); ++i)
      if (f.maximal_cones[i].label != w.maximal_cones[i].label || !(f.maximal_cones[i].cone == w.maximal_cones[i].cone))
        r.fail("cone " + f.maximal_cones[i].label + " differs from -w(W_I Phi)");
  }
  return r;
}

inline Report check_plucker_identities(int n) {
  Report r;
  WeightSetup s = plucker_setup(n);
  RatMatrix t = plucker_retraction(n);
  if (t * s.deg_star_rational() != RatMatrix::identity(static_cast<std::size_t>(n))) r.fail("t o deg* != id");
  if (!is_section(s, s.section)) r.fail("pi o s != id");
  if (!(to_rational(s.pi.matrix) * s.deg_star_rational()).is_zero()) r.fail("pi o deg* != 0");
  if (!(t * s.section).is_zero()) r.fail("t o s != 0");
  if (!s.degree_element || *s.degree_element != RatVector(static_cast<std::size_t>(n), make_rational(1, 2)))
    r.fail("degree element is not 1/2 (1,...,1)");
  for (const auto& b : boundary_partitions(n)) {
    try {
      c_ray(b, s);
    } catch (const GrassmannianError& e) {
      r.fail(e.what());
    }
    const int bb = b.size_first();
    RatVector expect = scale(indicator(b.first(), n), make_rational(bb - 1, n - 2));
    expect = sub(expect, RatVector(static_cast<std::size_t>(n), make_rational((bb - 1) * bb, 2 * (n - 2) * (n - 1))));
    if (t.apply(to_rational(plucker_block_vector(b.first(), n))) != expect)
      r.fail("t(E^B') formula fails for " + b.to_string());
  }
  // t restricted to deg*(sigma) is the inverse of deg*.
  for (const auto& ray : s.sigma.rays())
    if (t.apply(s.deg_star_rational().apply(to_rational(ray))) != to_rational(ray)) r.fail("t o deg* moves a ray of sigma");
  return r;
}

/// Positive fibers and Δ_B for every partition, in parallel.
inline Report check_positive_fibers(int n) {
  Report r;
  WeightSetup s = plucker_setup(n);
  auto parts = boundary_partitions(n);
  auto results = parallel_map<std::string>(parts.size(), [&](std::size_t i) -> std::string {
    try {
      positive_fiber_B(parts[i], s);
      delta_B(parts[i], s);
    } catch (const GrassmannianError& e) {
      return e.what();
    }
    return "";
  });
  for (const auto& msg : results)
    if (!msg.empty()) r.fail(msg);
  return r;
}

inline std::vector<RatVector> hypersimplex_points(int n) {
  std::vector<RatVector> pts;
  for (const auto& [i, j] : plucker_pairs(n)) pts.push_back(indicator({i, j}, n));
  return pts;
}

/// Heights read off E^B' (and, for lift independence, E^B'') split Δ(2,n)
/// into the pairs meeting B' and the pairs meeting B''.
inline Report check_induced_subdivisions(int n) {
  Report r;
  auto pts = hypersimplex_points(n);
  auto pairs = plucker_pairs(n);
  for (const auto& b : boundary_partitions(n)) {
    std::vector<std::size_t> meet1, meet2;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      bool a1 = b.contains_first(pairs[k].first), a2 = b.contains_first(pairs[k].second);
      if (a1 || a2) meet1.push_back(k);
      if (!a1 || !a2) meet2.push_back(k);
    }
    std::set<std::string> want{index_set_label(meet1), index_set_label(meet2)};
    for (const auto& block : {b.first(), b.second()}) {
      Subdivision sd = induced_subdivision(pts, to_rational(plucker_block_vector(block, n)));
      std::set<std::string> have;
      for (const auto& c : sd.cells) have.insert(c.label);
      if (have != want) r.fail("induced subdivision for " + b.to_string() + " has cells " + std::to_string(sd.cells.size()));
      Report sub = check_subdivision(sd);
      r.merge(sub, b.to_string() + ": ");
    }
  }
  return r;
}

/// σ ∩ {Σ v_i = 1} for n = 4.
inline Polyhedron cube_crosscut() {
  WeightSetup s = plucker_setup(4);
  return slice(s.sigma.polyhedron(), RatVector(4, Rational(1)), Rational(1));
}

inline Report check_cube() {
  Report r;
  Polyhedron c = cube_crosscut();
  std::set<RatVector> want;
  for (int i = 1; i <= 4; ++i) {
    RatVector e = indicator({i}, 4);
    want.insert(e);
    want.insert(sub(RatVector(4, make_rational(1, 2)), e));
  }
  std::set<RatVector> have(c.vertices().begin(), c.vertices().end());
  if (have != want) r.fail("crosscut has " + std::to_string(have.size()) + " vertices, not the expected 8");
  if (!c.is_bounded()) r.fail("crosscut is unbounded");
  if (c.dimension() != 3) r.fail("crosscut is not 3-dimensional");
  return r;
}

struct FansyCheck {
  Report report;
  FansyComparison comparison;
};

/// Closed form against recipe, plus the structural facts of the closed form.
inline FansyCheck check_fansy(int n, int max_n = 6, bool condition1 = true) {
  FansyCheck out;
  Report& r = out.report;
  FansyDivisor closed = fansy_closed_form(n);
  GrassmannianRecipe rec = fansy_via_recipe(n, max_n);
  out.comparison = compare_fansy(closed, rec.fansy);
  if (!out.comparison.equal) {
    r.fail("closed form and recipe differ");
    for (const auto& f : out.comparison.findings) r.note(f);
  }
  for (const auto& [a, b] : out.comparison.bijection)
    if ("z" + a != b) r.fail("cell " + a + " matched to " + b);

  const Integer labels = (Integer(1) << (n - 1)) - n - 1;
  if (Integer(static_cast<unsigned long>(closed.labels.size())) != labels) r.fail("wrong number of labels");
  const std::size_t cells = plucker_pairs(n).size();
  for (const auto& l : closed.labels) {
    const Partition& b = std::get<Partition>(l);
    Subdivision sd = closed.slice(l);
    if (sd.cells.size() != cells) r.fail(b.to_string() + ": " + std::to_string(sd.cells.size()) + " maximal cells");
    std::set<RatVector> verts;
    for (const auto& c : sd.cells)
      for (const auto& v : c.cell.vertices()) verts.insert(v);
    auto [lo, hi] = edge_endpoints(b);
    if (verts != std::set<RatVector>{lo, hi}) r.fail(b.to_string() + ": cell vertices are not the edge endpoints");
    RatVector lb = to_rational(ell_sum(b.first(), n));
    if (sub(hi, lo) != lb) r.fail(b.to_string() + ": edge vector is not l_B'");
    RatVector center = scale(add(lo, hi), make_rational(1, 2));
    if (center != scale(lb, make_rational(2 * b.size_first() - n, 2 * (n - 2)))) r.fail(b.to_string() + ": edge center");
  }
  Fan tails = closed.tail_fan();
  Fan grass = tail_fan_grass(2, n);
  for (std::size_t i = 0; i < tails.maximal_cones.size(); ++i)
    if (!(tails.maximal_cones[i].cone == grass.maximal_cones[i].cone)) r.fail("tail fan differs at " + tails.maximal_cones[i].label);
  r.merge(check_subdivision_structure(closed), "closed form: ");
  r.merge(check_subdivision_structure(rec.fansy), "recipe: ");
  if (condition1) {
    Condition1Report c1 = check_fansy_condition1(closed);
    for (const auto& p : c1.pairs)
      if (!p.u) r.fail("condition 1: no witness for " + closed.cell_names[p.mu] + "," + closed.cell_names[p.nu]);
  }
  return out;
}

inline std::vector<NamedReport> grassmannian_battery(int n, int max_n = 6) {
  std::vector<NamedReport> out;
  out.push_back({"weyl", check_weyl_identities(2, n)});
  out.push_back({"tail_fan", check_tail_fan(2, n)});
  out.push_back({"identities", check_plucker_identities(n)});
  out.push_back({"positive_fibers", check_positive_fibers(n)});
  out.push_back({"induced_subdivisions", check_induced_subdivisions(n)});
  if (n == 4) out.push_back({"cube", check_cube()});
  out.push_back({"fansy", check_fansy(n, max_n).report});
  out.push_back({"local_chart", local_chart_check(n).report});
  return out;
}

}  // namespace fansy
