#pragma once

// Command-line front end. Every subcommand writes one JSON document to the
// output stream. Exit codes: 0 ok, 1 verification failure, 2 bad input.

#include <CLI11.hpp>
#include <ostream>
#include <string>

#include "fansy/battery.hpp"
#include "fansy/json_io.hpp"

namespace fansy::cli {

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kBadInput = 2;

struct Options {
  int k = 2;
  int n = 4;
  int max_n = 6;
  std::size_t max_faces = 16;
  std::string weights;
  std::string rays;
  std::string c;
  std::string method = "both";
};

inline void require_n(const Options& o, int lo = 4) {
  if (o.n < lo) throw InputError("--n must be at least " + std::to_string(lo));
  if (o.n > o.max_n)
    throw GuardError("--n " + std::to_string(o.n) + " exceeds --max-n " + std::to_string(o.max_n));
}

inline WeightSetup load_setup(const Options& o) { return build_setup(weights_from_json(read_json_file(o.weights))); }

inline RecipeDivisor load_divisor(const Options& o, const WeightSetup& s) {
  if (o.rays.empty()) return pp_from_weights(s, std::nullopt, o.max_faces);
  std::vector<RaySpec> specs;
  for (auto& r : rays_from_json(read_json_file(o.rays))) specs.push_back({std::move(r), std::nullopt});
  return pp_from_weights(s, specs, o.max_faces);
}

inline Json rays_json(const RecipeDivisor& d) {
  Json a = Json::array();
  for (const auto& r : d.rays)
    a.push_back({{"point", to_json(r.point)},
                 {"primitive", to_json(r.primitive)},
                 {"scale", to_json(r.scale)},
                 {"offset", to_json(r.offset)}});
  return a;
}

inline int cmd_tailfan(const Options& o, Json& out) {
  if (o.n > o.max_n) throw GuardError("--n exceeds --max-n");
  if (o.n < 2 || o.k < 1 || o.k > o.n - 1) throw InputError("need 1 <= k <= n-1");
  Fan f = tail_fan_grass(o.k, o.n);
  Report r = check_complete_fan(f);
  out = {{"k", o.k}, {"n", o.n}, {"fan", to_json(f)}, {"complete", r.pass}};
  return r.pass ? kOk : kVerificationFailed;
}

inline int cmd_setup(const Options& o, Json& out) {
  out = to_json(load_setup(o));
  return kOk;
}

inline int cmd_ppdivisor(const Options& o, Json& out) {
  WeightSetup s = load_setup(o);
  RecipeDivisor d = load_divisor(o, s);
  out = {{"divisor", to_json(d.divisor)}, {"rays", rays_json(d)}};
  return kOk;
}

inline int cmd_projectivize(const Options& o, Json& out) {
  WeightSetup s = load_setup(o);
  RecipeDivisor d = load_divisor(o, s);
  FansyDivisor f = projectivize(s, d);
  Report r = check_subdivision_structure(f);
  out = {{"fansy", to_json(f)}, {"structure", to_json(r)}};
  return r.pass ? kOk : kVerificationFailed;
}

inline int cmd_fansy(const Options& o, Json& out) {
  require_n(o);
  if (o.method != "closed" && o.method != "recipe" && o.method != "both")
    throw InputError("--method must be closed, recipe or both");
  out = {{"n", o.n}, {"method", o.method}};
  std::optional<FansyDivisor> closed, recipe;
  if (o.method != "recipe") {
    closed = fansy_closed_form(o.n);
    out["closed"] = to_json(*closed);
  }
  if (o.method != "closed") {
    recipe = fansy_via_recipe(o.n, o.max_n).fansy;
    out["recipe"] = to_json(*recipe);
  }
  if (closed && recipe) {
    FansyComparison c = compare_fansy(*closed, *recipe);
    out["equal"] = c.equal;
    Json b = Json::array();
    for (const auto& [x, y] : c.bijection) b.push_back({{"closed", x}, {"recipe", y}});
    out["bijection"] = b;
    out["findings"] = c.findings;
    return c.equal ? kOk : kVerificationFailed;
  }
  return kOk;
}

inline int cmd_verify(const Options& o, Json& out) {
  require_n(o);
  bool pass = true;
  Json checks = Json::array();
  for (const auto& [name, r] : grassmannian_battery(o.n, o.max_n)) {
    Json c = {{"name", name}};
    c.update(to_json(r));
    checks.push_back(c);
    pass = pass && r.pass;
  }
  out = {{"n", o.n}, {"pass", pass}, {"checks", checks}};
  return pass ? kOk : kVerificationFailed;
}

/// Heights on the weight points are the coordinates of s(c), a preimage of c.
inline int cmd_subdivision(const Options& o, Json& out) {
  WeightSetup s = load_setup(o);
  IntVector c = int_vector_from_text(o.c);
  if (c.size() != s.quotient_rank())
    throw InputError("--c needs " + std::to_string(s.quotient_rank()) + " entries");
  std::vector<RatVector> pts;
  for (std::size_t v = 0; v < s.coordinates(); ++v) pts.push_back(s.coordinate_form(v));
  Subdivision sd = induced_subdivision(pts, s.section.apply(to_rational(c)));
  Report r = check_subdivision(sd);
  out = {{"subdivision", to_json(sd)}, {"structure", to_json(r)}};
  return r.pass ? kOk : kVerificationFailed;
}

inline int cmd_localcheck(const Options& o, Json& out) {
  require_n(o);
  LocalChartReport lc = local_chart_check(o.n);
  Json images = Json::array();
  for (const auto& [b, img] : lc.images)
    images.push_back({{"partition", b.first()}, {"separates_1_2", b.separates(1, 2)}, {"image", to_json(img)}});
  out = {{"n", o.n}, {"report", to_json(lc.report)}, {"images", images}};
  return lc.report.pass ? kOk : kVerificationFailed;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact pp-divisors and fansy divisors of torus varieties"};
  app.require_subcommand(1);
  Options o;

  auto add_n = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--n", o.n, "number of points / ambient size");
    if (required) opt->required();
    sub->add_option("--max-n", o.max_n, "guard on n")->capture_default_str();
  };
  auto add_weights = [&](CLI::App* sub) {
    sub->add_option("--weights", o.weights, "weight file {lattice_rank, weights}")->required();
    sub->add_option("--max-faces", o.max_faces, "guard on the number of weights in the refinement fan")->capture_default_str();
  };

  auto* tailfan = app.add_subcommand("tailfan", "tail fan of Gr(k,n)");
  tailfan->add_option("--k", o.k)->required();
  add_n(tailfan, true);
  auto* setup = app.add_subcommand("setup", "exact sequences of a weight matrix");
  add_weights(setup);
  auto* pp = app.add_subcommand("ppdivisor", "pp-divisor of the affine variety");
  add_weights(pp);
  pp->add_option("--rays", o.rays, "ray file {rays: [[...]]}");
  auto* proj = app.add_subcommand("projectivize", "fansy divisor of the projectivization");
  add_weights(proj);
  proj->add_option("--rays", o.rays, "ray file {rays: [[...]]}");
  auto* fansy = app.add_subcommand("fansy", "fansy divisor of Gr(2,n)");
  add_n(fansy, true);
  fansy->add_option("--method", o.method, "closed, recipe or both")->capture_default_str();
  auto* verify = app.add_subcommand("verify", "run the Gr(2,n) verification battery");
  add_n(verify, true);
  auto* subdiv = app.add_subcommand("subdivision", "regular subdivision induced by a point of N''");
  add_weights(subdiv);
  subdiv->add_option("--c", o.c, "point of N'', e.g. 1,-1")->required();
  auto* local = app.add_subcommand("localcheck", "global/local diagram in the chart z_12 != 0");
  add_n(local, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }

  Json result;
  int code = kOk;
  try {
    if (*tailfan) code = cmd_tailfan(o, result);
    else if (*setup) code = cmd_setup(o, result);
    else if (*pp) code = cmd_ppdivisor(o, result);
    else if (*proj) code = cmd_projectivize(o, result);
    else if (*fansy) code = cmd_fansy(o, result);
    else if (*verify) code = cmd_verify(o, result);
    else if (*subdiv) code = cmd_subdivision(o, result);
    else if (*local) code = cmd_localcheck(o, result);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
  out << result.dump(2) << "\n";
  if (code == kVerificationFailed) err << "verification failed\n";
  return code;
}

}  // namespace fansy::cli
