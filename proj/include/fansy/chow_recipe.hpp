#pragma once

// From a weight matrix to the pp-divisor of the affine variety it defines and
// to the fansy divisor of its projectivization.
//
// Coordinates: deg is an r x l integer matrix whose columns are the weights
// of the coordinates z_0..z_{l-1}. Cocharacters live in Q^r (dual to the
// weight coordinates); the cocharacter lattice is {v : deg^T v integral}.

#include <optional>
#include <string>
#include <vector>

#include "fansy/complex.hpp"
#include "fansy/divisor.hpp"
#include "fansy/lattice.hpp"

namespace fansy {

class RecipeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct WeightSetup {
  IntMatrix deg;                           // r x l
  RatMatrix dual_basis;                    // r x r, columns: a basis of the cocharacter lattice
  LatticeMap deg_star;                     // cocharacter lattice (in dual_basis coordinates) -> Z^l
  LatticeMap pi;                           // Z^l -> N'', kernel = saturation of im(deg^T)
  RatMatrix section;                       // l x rank(N''), pi o section = id
  RatMatrix left_inverse;                  // r x l, left_inverse o deg^T = id
  std::optional<RatVector> degree_element; // e with <w_v, e> = 1 for all weights
  Cone sigma;                              // {v : deg^T v >= 0}

  std::size_t rank() const { return deg.rows(); }
  std::size_t coordinates() const { return deg.cols(); }
  std::size_t quotient_rank() const { return pi.matrix.rows(); }

  RatMatrix deg_star_rational() const { return to_rational(deg).transpose(); }

  /// The linear form E_v on Q^r: the weight of coordinate v.
  RatVector coordinate_form(std::size_t v) const { return to_rational(deg.column(v)); }
};

/// Validates a candidate section: pi o s must be the identity.
inline bool is_section(const WeightSetup& s, const RatMatrix& section) {
  if (section.rows() != s.coordinates() || section.cols() != s.quotient_rank()) return false;
  return to_rational(s.pi.matrix) * section == RatMatrix::identity(s.quotient_rank());
}

/// Builds the dual exact sequence 0 -> Ñ -> Z^l -> N'' -> 0 from the weights.
/// The default section is the integral one read off the Smith form of pi.
inline WeightSetup build_setup(const IntMatrix& deg, std::optional<RatMatrix> section = std::nullopt) {
  const std::size_t r = deg.rows(), l = deg.cols();
  if (r == 0 || l == 0) throw RecipeError("build_setup: empty weight matrix");
  if (rank(deg) != r) throw RecipeError("build_setup: weights do not span the character space");
  WeightSetup s;
  s.deg = deg;
  IntMatrix dt = deg.transpose();
  s.pi = quotient_projection({dt, "Ntilde_coords", "Z^l"}, "N''");
  LatticeMap ker = kernel_basis(s.pi, "Ntilde");
  s.left_inverse = rational_left_inverse(dt);
  s.dual_basis = s.left_inverse * to_rational(ker.matrix);
  s.deg_star = {ker.matrix, "Ntilde", "Z^l"};
  s.pi.domain = "Z^l";

  const std::size_t q = s.pi.matrix.rows();
  if (section) {
    s.section = *section;
    if (!is_section(s, s.section)) throw RecipeError("build_setup: supplied map is not a section of pi");
  } else if (q > 0) {
    s.section = to_rational(integral_section(s.pi).matrix);
  } else {
    s.section = RatMatrix(l, 0);
  }

  s.degree_element = solve(to_rational(dt), RatVector(l, Rational(1)));
  s.sigma = Cone::from_halfspaces(r, dt.row_list());
  return s;
}

/// The section s = (1 - deg^T t) s0, for which t o s = 0; shifting fibers by
/// it expresses coefficients through the rational retraction t.
inline RatMatrix section_from_retraction(const WeightSetup& s, const RatMatrix& t) {
  if (t.rows() != s.rank() || t.cols() != s.coordinates()) throw RecipeError("section_from_retraction: bad shape");
  if (t * s.deg_star_rational() != RatMatrix::identity(s.rank()))
    throw RecipeError("section_from_retraction: not a retraction of deg^T");
  RatMatrix proj = RatMatrix::identity(s.coordinates()) - s.deg_star_rational() * t;
  return proj * s.section;
}

/// Default quotient map p : Q^r -> Q^r / <e>, as an integer matrix in
/// cocharacter-lattice coordinates composed with the basis change.
inline RatMatrix default_projection(const WeightSetup& s) {
  if (!s.degree_element) throw RecipeError("projection: no degree element (weights not homogeneous)");
  auto binv = inverse(s.dual_basis);
  RatVector e_coords = binv->apply(*s.degree_element);
  IntVector e_prim = primitive(e_coords);
  IntMatrix col(e_prim.size(), 1);
  for (std::size_t i = 0; i < e_prim.size(); ++i) col(i, 0) = e_prim[i];
  LatticeMap q = quotient_projection({col, "e", "Ntilde"}, "N");
  return to_rational(q.matrix) * *binv;
}

struct RaySpec {
  IntVector point;                    // the point of N'' whose fiber is taken
  std::optional<DivisorLabel> label;  // defaults to the toric ray label
};

struct RayData {
  IntVector point;
  IntVector primitive;
  Integer scale;      // point = scale * primitive
  Polyhedron fiber;   // pi^{-1}(point) ∩ Q^l_{>=0}
  RatVector offset;   // s(point) in Q^l
};

struct RecipeDivisor {
  PPDivisor divisor;
  std::vector<RayData> rays;
};

/// Rays of the chamber complex of pi.
inline std::vector<RaySpec> refinement_rays(const WeightSetup& s, std::size_t max_faces = 16) {
  std::vector<RaySpec> out;
  if (s.quotient_rank() == 0) return out;
  for (const auto& r : common_refinement_fan(s.pi, max_faces).rays()) out.push_back({r, std::nullopt});
  return out;
}

/// Δ(c) = left_inverse(fiber(c) - s(c)) for every ray.
inline RecipeDivisor pp_from_weights(const WeightSetup& s, std::optional<std::vector<RaySpec>> rays = std::nullopt,
                                     std::size_t max_faces = 16) {
  std::vector<RaySpec> specs = rays ? *rays : refinement_rays(s, max_faces);
  if (specs.empty()) throw RecipeError("pp_from_weights: no rays (quotient is a point)");
  RecipeDivisor out;
  std::vector<Term> terms;
  for (const auto& spec : specs) {
    if (spec.point.size() != s.quotient_rank()) throw RecipeError("pp_from_weights: ray has wrong dimension");
    RayData d;
    d.point = spec.point;
    d.scale = gcd_of(spec.point);
    if (d.scale == 0) throw RecipeError("pp_from_weights: zero ray");
    d.primitive = primitive(spec.point);
    RatVector c = to_rational(spec.point);
    d.fiber = fiber_polyhedron(s.pi, c);
    if (d.fiber.is_empty()) throw RecipeError("pp_from_weights: empty fiber over " + point_string(c));
    d.offset = s.section.apply(c);
    Polyhedron coeff = linear_image(translate(d.fiber, scale(d.offset, Rational(-1))), s.left_inverse);
    terms.push_back({spec.label ? *spec.label : toric_ray_label(spec.point), std::move(coeff)});
    out.rays.push_back(std::move(d));
  }
  out.divisor = PPDivisor(s.sigma, std::move(terms));
  return out;
}

/// ∂_v Δ: the face of Δ minimizing E_v when min<Δ + s(c), E_v> = 0, else empty.
inline Polyhedron boundary_face(const WeightSetup& s, const Polyhedron& delta, const RatVector& offset, std::size_t v) {
  if (v >= s.coordinates()) throw RecipeError("boundary_face: coordinate out of range");
  if (delta.is_empty()) return Polyhedron::empty(delta.ambient_dim());
  RatVector w = s.coordinate_form(v);
  auto m = min_value(delta, w);
  if (!m) throw RecipeError("boundary_face: coordinate form unbounded below on the coefficient");
  if (*m + offset[v] != 0) return Polyhedron::empty(delta.ambient_dim());
  return *face_minimizing(delta, w);
}

inline std::string coordinate_cell_name(std::size_t v) { return "z" + std::to_string(v); }

/// p(∂D): one cell per coordinate v, with coefficients p(∂_v Δ_i) and tail
/// p(face of σ on which E_v vanishes). Cells whose coefficients are all
/// empty are dropped.
inline FansyDivisor projectivize(const WeightSetup& s, const RecipeDivisor& d, std::optional<RatMatrix> projection = std::nullopt,
                                 std::optional<std::vector<std::string>> names = std::nullopt) {
  RatMatrix p = projection ? *projection : default_projection(s);
  if (p.cols() != s.rank()) throw RecipeError("projectivize: projection has wrong source dimension");
  if (!s.degree_element || !is_zero(p.apply(*s.degree_element)))
    throw RecipeError("projectivize: projection does not kill the degree element");
  if (names && names->size() != s.coordinates()) throw RecipeError("projectivize: one name per coordinate required");
  FansyDivisor f;
  f.ambient = p.rows();
  for (const auto& t : d.divisor.terms()) f.labels.push_back(t.label);
  for (std::size_t v = 0; v < s.coordinates(); ++v) {
    RatVector w = s.coordinate_form(v);
    Polyhedron tail_face = *face_minimizing(s.sigma.polyhedron(), w);
    Cone tail = Cone::from_polyhedron(linear_image(tail_face, p));
    std::vector<Term> terms;
    bool any = false;
    for (std::size_t i = 0; i < d.divisor.terms().size(); ++i) {
      Polyhedron face = boundary_face(s, d.divisor.terms()[i].coefficient, d.rays[i].offset, v);
      Polyhedron img = linear_image(face, p);
      any = any || !img.is_empty();
      terms.push_back({d.divisor.terms()[i].label, std::move(img)});
    }
    if (!any) continue;
    f.cells.emplace_back(tail, std::move(terms));
    f.cell_names.push_back(names ? (*names)[v] : coordinate_cell_name(v));
  }
  return f;
}

}  // namespace fansy
