#pragma once

// pp-divisors (formal sums of polyhedra over prime divisor labels), their
// evaluations and intersections, and fansy divisors.

#include <algorithm>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fansy/complex.hpp"
#include "fansy/polyhedron.hpp"

namespace fansy {

class DivisorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two-block partition of {1..n}; `first` is the block containing 1.
class Partition {
 public:
  Partition() = default;
  Partition(int n, std::vector<int> block) : n_(n) {
    std::sort(block.begin(), block.end());
    block.erase(std::unique(block.begin(), block.end()), block.end());
    for (int x : block)
      if (x < 1 || x > n) throw DivisorError("partition block element out of range");
    if (block.empty() || static_cast<int>(block.size()) == n) throw DivisorError("partition has an empty block");
    if (block.front() != 1) {
      std::vector<int> other;
      for (int x = 1, k = 0; x <= n; ++x) {
        if (k < static_cast<int>(block.size()) && block[k] == x)
          ++k;
        else
          other.push_back(x);
      }
      block = std::move(other);
    }
    first_ = std::move(block);
  }

  int n() const { return n_; }
  const std::vector<int>& first() const { return first_; }
  std::vector<int> second() const {
    std::vector<int> out;
    for (int x = 1; x <= n_; ++x)
      if (!contains_first(x)) out.push_back(x);
    return out;
  }
  int size_first() const { return static_cast<int>(first_.size()); }
  bool contains_first(int x) const { return std::binary_search(first_.begin(), first_.end(), x); }
  bool separates(int a, int b) const { return contains_first(a) != contains_first(b); }

  std::string to_string() const {
    auto block = [](const std::vector<int>& v) {
      std::string s;
      for (int x : v) {
        if (!s.empty()) s += ",";
        s += std::to_string(x);
      }
      return s;
    };
    return "{" + block(first_) + "|" + block(second()) + "}";
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  int n_ = 0;
  std::vector<int> first_;
};

struct ToricRay {
  IntVector ray;
  friend bool operator==(const ToricRay&, const ToricRay&) = default;
  friend auto operator<=>(const ToricRay& a, const ToricRay& b) { return a.ray <=> b.ray; }
};

struct NamedLabel {
  std::string name;
  friend bool operator==(const NamedLabel&, const NamedLabel&) = default;
  friend auto operator<=>(const NamedLabel&, const NamedLabel&) = default;
};

using DivisorLabel = std::variant<ToricRay, Partition, NamedLabel>;

inline DivisorLabel toric_ray_label(const IntVector& c) { return ToricRay{primitive(c)}; }

inline std::string label_string(const DivisorLabel& l) {
  struct {
    std::string operator()(const ToricRay& r) const { return "orb" + point_string(to_rational(r.ray)); }
    std::string operator()(const Partition& p) const { return "D" + p.to_string(); }
    std::string operator()(const NamedLabel& n) const { return n.name; }
  } visit;
  return std::visit(visit, l);
}

struct Term {
  DivisorLabel label;
  Polyhedron coefficient;  // may be empty
};

class PPDivisor {
 public:
  PPDivisor() = default;

  PPDivisor(Cone tail, std::vector<Term> terms) : tail_(std::move(tail)), terms_(std::move(terms)) {
    bool any = false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      const auto& c = terms_[i].coefficient;
      if (c.ambient_dim() != tail_.ambient_dim())
        throw DivisorError("coefficient of " + label_string(terms_[i].label) + " lives in the wrong space");
      for (std::size_t j = 0; j < i; ++j)
        if (terms_[j].label == terms_[i].label) throw DivisorError("repeated label " + label_string(terms_[i].label));
      if (c.is_empty()) continue;
      any = true;
      if (tail_cone(c) != tail_.polyhedron())
        throw DivisorError("coefficient of " + label_string(terms_[i].label) + " has the wrong tail cone");
    }
    if (!any) throw DivisorError("pp-divisor needs a nonempty coefficient");
  }

  std::size_t ambient_dim() const { return tail_.ambient_dim(); }
  const Cone& tail() const { return tail_; }
  const std::vector<Term>& terms() const { return terms_; }

  const Polyhedron* coefficient(const DivisorLabel& l) const {
    for (const auto& t : terms_)
      if (t.label == l) return &t.coefficient;
    return nullptr;
  }

  friend bool operator==(const PPDivisor& a, const PPDivisor& b) {
    if (!(a.tail_ == b.tail_) || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].label == b.terms_[i].label) || !(a.terms_[i].coefficient == b.terms_[i].coefficient))
        return false;
    return true;
  }

 private:
  Cone tail_;
  std::vector<Term> terms_;
};

struct FormalDivisor {
  std::vector<std::pair<DivisorLabel, Rational>> terms;
  /// Labels whose coefficient was empty and therefore left out.
  std::vector<DivisorLabel> omitted;

  std::optional<Rational> coefficient(const DivisorLabel& l) const {
    for (const auto& [k, v] : terms)
      if (k == l) return v;
    return std::nullopt;
  }
};

inline bool in_dual_of(const Cone& c, const RatVector& u) {
  for (const auto& r : c.rays())
    if (dot(r, u) < 0) return false;
  for (const auto& l : c.lineality())
    if (dot(l, u) != 0) return false;
  return true;
}

/// D(u) = Σ min<Δ_i, u> D_i.
inline FormalDivisor evaluate(const PPDivisor& d, const RatVector& u) {
  if (u.size() != d.ambient_dim()) throw DivisorError("evaluate: form has wrong dimension");
  if (!in_dual_of(d.tail(), u)) throw DivisorError("evaluate: form is not in the dual of the tail cone");
  FormalDivisor out;
  for (const auto& t : d.terms()) {
    if (t.coefficient.is_empty()) {
      out.omitted.push_back(t.label);
      continue;
    }
    out.terms.push_back({t.label, *min_value(t.coefficient, u)});
  }
  return out;
}

/// Term-wise intersection; nullopt if every coefficient becomes empty.
inline std::optional<PPDivisor> intersect_pp(const PPDivisor& a, const PPDivisor& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DivisorError("intersect_pp: different ambient lattices");
  if (a.terms().size() != b.terms().size()) throw DivisorError("intersect_pp: label sets differ");
  std::vector<Term> terms;
  bool any = false;
  for (const auto& t : a.terms()) {
    const Polyhedron* other = b.coefficient(t.label);
    if (!other) throw DivisorError("intersect_pp: label " + label_string(t.label) + " missing");
    Polyhedron meet = intersect(t.coefficient, *other);
    any = any || !meet.is_empty();
    terms.push_back({t.label, std::move(meet)});
  }
  if (!any) return std::nullopt;
  return PPDivisor(intersect(a.tail(), b.tail()), std::move(terms));
}

inline PPDivisor translate_coefficient(const PPDivisor& d, const DivisorLabel& label, const RatVector& v) {
  std::vector<Term> terms = d.terms();
  bool hit = false;
  for (auto& t : terms)
    if (t.label == label) {
      t.coefficient = translate(t.coefficient, v);
      hit = true;
    }
  if (!hit) throw DivisorError("translate_coefficient: label " + label_string(label) + " absent");
  return PPDivisor(d.tail(), std::move(terms));
}

struct FansyDivisor {
  std::size_t ambient = 0;
  std::vector<DivisorLabel> labels;
  std::vector<PPDivisor> cells;
  std::vector<std::string> cell_names;

  /// Nonempty coefficients at one label, as a subdivision of the whole space.
  Subdivision slice(const DivisorLabel& l) const {
    Subdivision s;
    s.ambient = ambient;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      const Polyhedron* c = cells[k].coefficient(l);
      if (c && !c->is_empty()) s.cells.push_back({cell_names[k], *c});
    }
    return s;
  }

  Fan tail_fan() const {
    Fan f;
    f.ambient = ambient;
    for (std::size_t k = 0; k < cells.size(); ++k) f.maximal_cones.push_back({cell_names[k], cells[k].tail()});
    return f;
  }
};

inline Report check_subdivision_structure(const FansyDivisor& s) {
  Report r;
  if (s.cells.size() != s.cell_names.size()) {
    r.fail("cell names do not match cells");
    return r;
  }
  for (std::size_t k = 0; k < s.cells.size(); ++k) {
    if (s.cells[k].ambient_dim() != s.ambient) r.fail("cell " + s.cell_names[k] + " lives in the wrong space");
    for (const auto& l : s.labels)
      if (!s.cells[k].coefficient(l)) r.fail("cell " + s.cell_names[k] + " lacks label " + label_string(l));
  }
  if (!r.pass) return r;
  for (const auto& l : s.labels) r.merge(check_subdivision(s.slice(l), false), label_string(l) + ": ");
  r.merge(check_fan(s.tail_fan()), "tail fan: ");
  return r;
}

struct PairWitness {
  std::size_t mu = 0;
  std::size_t nu = 0;
  std::optional<IntVector> u;  // nullopt: inconclusive
  std::vector<DivisorLabel> disjoint_labels;
};

struct Condition1Report {
  Report report;
  std::vector<PairWitness> pairs;
};

namespace detail {

// Does u separate cell a (below) from cell b (above) at every label?
inline bool separates_cells(const PPDivisor& a, const PPDivisor& b, const std::vector<DivisorLabel>& labels,
                            const RatVector& u) {
  for (const auto& l : labels) {
    const Polyhedron& pa = *a.coefficient(l);
    const Polyhedron& pb = *b.coefficient(l);
    if (pa.is_empty() && pb.is_empty()) continue;
    if (pa.is_empty()) {
      if (!min_value(pb, u)) return false;
      continue;
    }
    if (pb.is_empty()) {
      if (!max_value(pa, u)) return false;
      continue;
    }
    auto hi = max_value(pa, u);
    auto lo = min_value(pb, u);
    if (!hi || !lo || *hi > *lo) return false;
    if (*hi < *lo) continue;
    if (slice(pa, u, *hi) != slice(pb, u, *lo)) return false;
  }
  return true;
}

}  // namespace detail

/// Searches, for each pair of cells, a form u with
/// max<Δ^μ_i,u> <= c_i <= min<Δ^ν_i,u> and equal level sets. Candidates are
/// 0 and the primitive facet normals (both signs) of the coefficients and
/// tails of the two cells. Found witnesses are verified exactly; a miss is
/// reported as inconclusive, never as a failure. The semiampleness part of
/// the definition is outside this check and recorded as assumed.
inline Condition1Report check_fansy_condition1(const FansyDivisor& s) {
  Condition1Report out;
  const std::size_t d = s.ambient;
  for (std::size_t mu = 0; mu < s.cells.size(); ++mu)
    for (std::size_t nu = mu; nu < s.cells.size(); ++nu) {
      PairWitness w{mu, nu, std::nullopt, {}};
      std::set<IntVector> cand{IntVector(d, Integer(0))};
      auto collect = [&](const Polyhedron& p) {
        for (const auto& h : p.facets()) {
          cand.insert(h.normal);
          IntVector m(h.normal);
          for (auto& x : m) x = -x;
          cand.insert(m);
        }
      };
      for (std::size_t k : {mu, nu}) {
        collect(s.cells[k].tail().polyhedron());
        for (const auto& t : s.cells[k].terms())
          if (!t.coefficient.is_empty()) collect(t.coefficient);
      }
      {
        // Forms bounded above on tail(μ) and below on tail(ν).
        std::vector<IntVector> gens = s.cells[nu].tail().rays();
        std::vector<IntVector> lin = s.cells[nu].tail().lineality();
        for (auto r : s.cells[mu].tail().rays()) {
          for (auto& x : r) x = -x;
          gens.push_back(std::move(r));
        }
        for (const auto& l : s.cells[mu].tail().lineality()) lin.push_back(l);
        Cone sep = Cone::from_generators(d, gens, lin).dual();
        IntVector sum(d, Integer(0));
        for (const auto& r : sep.rays()) {
          cand.insert(r);
          sum = add(sum, r);
        }
        if (!is_zero(sum)) cand.insert(primitive(sum));
      }
      for (const auto& u : cand)
        if (detail::separates_cells(s.cells[mu], s.cells[nu], s.labels, to_rational(u))) {
          w.u = u;
          break;
        }
      for (const auto& l : s.labels)
        if (intersect(*s.cells[mu].coefficient(l), *s.cells[nu].coefficient(l)).is_empty())
          w.disjoint_labels.push_back(l);
      std::string pair = s.cell_names[mu] + "," + s.cell_names[nu];
      if (w.u)
        out.report.note(pair + ": u = " + point_string(to_rational(*w.u)));
      else
        out.report.note(pair + ": inconclusive");
      if (!w.disjoint_labels.empty()) {
        std::string ls;
        for (const auto& l : w.disjoint_labels) ls += (ls.empty() ? "" : " ") + label_string(l);
        out.report.note(pair + ": semiample divisor on " + ls + " assumed");
      }
      out.pairs.push_back(std::move(w));
    }
  return out;
}

}  // namespace fansy
