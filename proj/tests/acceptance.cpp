// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "fansy/battery.hpp"
#include "fansy/cli.hpp"
#include "property_suite.hpp"

using namespace fansy;

namespace {

struct Result {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail = what;
      pass = false;
    }
  }
  void absorb(const Report& r, const std::string& prefix) {
    if (!r.pass) require(false, prefix + (r.findings.empty() ? "failed" : r.findings.front()));
  }
};

Json run_cli(std::vector<std::string> args, int& code) {
  args.insert(args.begin(), "fansy");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return code == 2 ? Json() : Json::parse(out.str());
}

RatVector l_of(const std::vector<int>& block, int n) { return to_rational(ell_sum(block, n)); }

std::set<RatVector> slice_vertices(const FansyDivisor& f, const Partition& b) {
  std::set<RatVector> out;
  for (const auto& c : f.slice(DivisorLabel(b)).cells)
    for (const auto& v : c.cell.vertices()) out.insert(v);
  return out;
}

Result fansy_criterion(int n, std::size_t labels, const Partition& probe, const Rational& hi, const Rational& lo,
                       const Rational& center) {
  Result r;
  int code = 0;
  Json j = run_cli({"fansy", "--n", std::to_string(n), "--method", "both"}, code);
  r.require(code == 0 && j.value("equal", false), "fansy --method both does not report equality");
  r.require(j.contains("closed") && j["closed"]["labels"].size() == labels, "wrong number of labels");
  FansyCheck fc = check_fansy(n);
  r.absorb(fc.report, "");
  FansyDivisor f = fansy_closed_form(n);
  for (const auto& l : f.labels)
    r.require(f.slice(l).cells.size() == plucker_pairs(n).size(), label_string(l) + ": wrong number of maximal cells");
  RatVector lb = l_of(probe.first(), n);
  r.require(slice_vertices(f, probe) == std::set<RatVector>{scale(lb, hi), scale(lb, lo)},
            probe.to_string() + ": edge endpoints");
  r.require(scale(add(scale(lb, hi), scale(lb, lo)), make_rational(1, 2)) == scale(lb, center), "edge center");
  if (r.pass)
    r.detail = "equal, " + std::to_string(labels) + " labels, " + probe.to_string() + " edge " + hi.get_str() + ", " +
               lo.get_str() + " times l_B', center " + center.get_str();
  return r;
}

Result criterion1() {
  Result r = fansy_criterion(4, 3, Partition(4, {1, 2}), make_rational(1, 2), make_rational(-1, 2), Rational(0));
  FansyDivisor f = fansy_closed_form(4);
  for (const auto& b : boundary_partitions(4)) {
    RatVector h = scale(l_of(b.first(), 4), make_rational(1, 2));
    r.require(slice_vertices(f, b) == std::set<RatVector>{h, scale(h, Rational(-1))}, b.to_string() + ": not ±1/2 l_B'");
  }
  return r;
}

Result criterion2() {
  return fansy_criterion(5, 10, Partition(5, {1, 2}), make_rational(1, 3), make_rational(-2, 3), make_rational(-1, 6));
}

Result criterion3(std::vector<double>& per_case) {
  Result r;
  struct Case {
    long a, b, A, B;
  };
  for (const Case& c : {Case{2, 1, 1, 1}, Case{3, 1, 1, 2}, Case{3, 2, 1, 1}, Case{5, 3, 2, 3}}) {
    auto t0 = std::chrono::steady_clock::now();
    const std::string tag = "(" + std::to_string(c.a) + "," + std::to_string(c.b) + "): ";
    r.require(c.A * c.a - c.B * c.b == 1, tag + "bad Bezout pair");
    RatMatrix sec(3, 1);
    sec(0, 0) = -c.B;
    sec(1, 0) = -c.A;
    WeightSetup s = build_setup(int_matrix({{c.a, c.b, 0}, {1, 1, 1}}), sec);
    DivisorLabel zero = NamedLabel{"0"}, inf = NamedLabel{"inf"};
    RecipeDivisor d = pp_from_weights(s, std::vector<RaySpec>{{int_vector({1}), zero}, {int_vector({-1}), inf}});
    Cone sigma = Cone::from_generators(2, {int_vector({1, 0}), int_vector({-1, c.a})});
    Polyhedron d0 = minkowski_sum(
        Polyhedron::from_generators(2, {RatVector{make_rational(c.B - c.A, c.a - c.b), make_rational(1, c.a - c.b)},
                                        RatVector{make_rational(c.A, c.b), Rational(0)}}),
        sigma);
    Polyhedron dinf = minkowski_sum(Polyhedron::point(RatVector{make_rational(-c.B, c.a), Rational(0)}), sigma);
    r.require(d.divisor.tail() == sigma, tag + "tail is not <(1,0),(-1,a)>");
    r.require(*d.divisor.coefficient(zero) == d0, tag + "Δ_0 differs");
    r.require(*d.divisor.coefficient(inf) == dinf, tag + "Δ_inf differs");
    r.require(boundary_face(s, dinf, d.rays[1].offset, 1).is_empty(), tag + "∂_1 Δ_inf is not empty");
    per_case.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    r.require(per_case.back() <= 1.0, tag + "over the 1 s budget");
  }
  return r;
}

Result criterion4() {
  Result r;
  for (int n : {4, 5, 6}) r.absorb(check_positive_fibers(n), "n=" + std::to_string(n) + ": ");
  return r;
}

Result criterion5() {
  Result r;
  for (int n : {4, 5}) r.absorb(check_induced_subdivisions(n), "n=" + std::to_string(n) + ": ");
  return r;
}

Result criterion6() {
  Result r;
  Polyhedron c = cube_crosscut();
  std::set<RatVector> want;
  for (std::size_t i = 0; i < 4; ++i) {
    RatVector e(4, Rational(0));
    e[i] = 1;
    want.insert(e);
    want.insert(sub(RatVector(4, make_rational(1, 2)), e));
  }
  r.require(std::set<RatVector>(c.vertices().begin(), c.vertices().end()) == want, "crosscut vertices");
  r.require(c.is_bounded() && c.dimension() == 3, "crosscut is not a 3-dimensional polytope");
  return r;
}

Result criterion7() {
  Result r;
  for (auto [k, n] : {std::pair{2, 4}, std::pair{2, 5}, std::pair{3, 6}})
    r.absorb(check_tail_fan(k, n), "(" + std::to_string(k) + "," + std::to_string(n) + "): ");
  return r;
}

Result criterion8() {
  Result r;
  for (int n = 2; n <= 7; ++n)
    for (int k = 1; k <= std::min(3, n - 1); ++k)
      r.absorb(check_weyl_identities(k, n), "(" + std::to_string(k) + "," + std::to_string(n) + "): ");
  return r;
}

Result criterion9() {
  Result r;
  for (int n : {4, 5, 6}) r.absorb(check_plucker_identities(n), "n=" + std::to_string(n) + ": ");
  return r;
}

Result criterion10() {
  Result r;
  for (int n : {4, 5}) {
    LocalChartReport lc = local_chart_check(n);
    r.absorb(lc.report, "n=" + std::to_string(n) + ": ");
    for (const auto& [b, img] : lc.images)
      r.require(is_zero(img) != b.separates(1, 2), b.to_string() + ": visibility differs from separating 1 and 2");
  }
  return r;
}

Result criterion11() {
  Result r;
  constexpr std::size_t kCases = 200;
  std::uint32_t seed = 1;
  std::ostringstream d;
  for (const auto& p : props::all_properties()) {
    props::Outcome o = p.run(seed++, kCases);
    r.require(o.pass() && o.cases >= kCases, p.name + ": " + o.first_failure);
    d << p.name << " " << o.cases << " ";
  }
  if (r.pass) r.detail = d.str();
  return r;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    double budget;  // seconds, 0 = none
    std::function<Result()> run;
  };
  std::vector<double> ex_times;
  std::vector<Criterion> all{
      {1, "fansy divisor n=4", 10, criterion1},
      {2, "fansy divisor n=5", 60, criterion2},
      {3, "example weight family", 4, [&] { return criterion3(ex_times); }},
      {4, "positive fibers n=4,5,6", 120, criterion4},
      {5, "induced subdivisions n=4,5", 0, criterion5},
      {6, "cube crosscut", 0, criterion6},
      {7, "tail fans", 0, criterion7},
      {8, "Weyl identities", 0, criterion8},
      {9, "algebraic identities n=4,5,6", 0, criterion9},
      {10, "local chart diagram n=4,5", 0, criterion10},
      {11, "property suites", 0, criterion11},
  };
  bool all_pass = true;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget > 0 && secs > c.budget) r.require(false, "over budget");
    all_pass = all_pass && r.pass;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << "criterion " << c.id << ": " << (r.pass ? "PASS" : "FAIL") << "  " << c.name << "  [" << secs << " s";
    if (c.budget > 0) line << " / " << c.budget << " s";
    line << "]";
    if (!r.detail.empty()) line << "  " << r.detail;
    std::cout << line.str() << std::endl;
  }
  std::cout << (all_pass ? "all criteria pass" : "some criteria FAIL") << std::endl;
  return all_pass ? 0 : 1;
}
