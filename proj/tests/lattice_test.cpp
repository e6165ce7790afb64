#include <gtest/gtest.h>

#include <random>

#include "fansy/lattice.hpp"

using namespace fansy;

namespace {

IntVector iv(std::initializer_list<long> xs) { return int_vector(xs); }

bool unimodular(const IntMatrix& m) {
  auto inv = inverse(to_rational(m));
  if (!inv) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if ((*inv)(i, j).get_den() != 1) return false;
  return true;
}

void expect_smith(const IntMatrix& a) {
  auto d = smith_decompose(a);
  EXPECT_EQ(d.u * a * d.v, d.s);
  EXPECT_TRUE(unimodular(d.u));
  EXPECT_TRUE(unimodular(d.v));
  for (std::size_t i = 0; i < d.s.rows(); ++i)
    for (std::size_t j = 0; j < d.s.cols(); ++j)
      if (i != j) {
        EXPECT_EQ(d.s(i, j), 0);
      }
  for (std::size_t i = 0; i + 1 < d.rank; ++i) EXPECT_EQ(d.s(i + 1, i + 1) % d.s(i, i), 0);
  EXPECT_EQ(d.rank, rank(a));
}

// Hand enumeration: integer points of a box satisfying A x = 0.
std::vector<IntVector> kernel_points(const IntMatrix& a, long bound) {
  std::vector<IntVector> out;
  const std::size_t n = a.cols();
  IntVector x(n, Integer(-bound));
  while (true) {
    if (is_zero(a.apply(x))) out.push_back(x);
    std::size_t k = 0;
    while (k < n && x[k] == bound) x[k++] = -bound;
    if (k == n) break;
    x[k] += 1;
  }
  return out;
}

}  // namespace

TEST(Smith, Identity) {
  auto d = smith_decompose(IntMatrix::identity(2));
  EXPECT_EQ(d.s, IntMatrix::identity(2));
  EXPECT_EQ(d.u, IntMatrix::identity(2));
  EXPECT_EQ(d.v, IntMatrix::identity(2));
}

TEST(Smith, DivisibilityChain) {
  IntMatrix a = int_matrix({{2, 0}, {0, 3}});
  auto d = smith_decompose(a);
  EXPECT_EQ(d.s, int_matrix({{1, 0}, {0, 6}}));
  expect_smith(a);
}

TEST(Smith, ZeroMap) {
  IntMatrix z(2, 3);
  auto d = smith_decompose(z);
  EXPECT_TRUE(d.s.is_zero());
  EXPECT_EQ(d.rank, 0u);
}

TEST(Smith, RandomRoundTrip) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> ent(-6, 6), dim(1, 5);
  for (int trial = 0; trial < 60; ++trial) {
    IntMatrix a(dim(rng), dim(rng));
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = ent(rng);
    expect_smith(a);
    EXPECT_EQ(smith_decompose(a).u, smith_decompose(a).u);
  }
}

TEST(Kernel, RowMap) {
  LatticeMap a{int_matrix({{1, -2, 1}}), "Z^3", "Z"};
  auto k = kernel_basis(a, "K");
  EXPECT_EQ(k.domain, "K");
  EXPECT_EQ(k.codomain, "Z^3");
  EXPECT_EQ(k.matrix.cols(), 2u);
  EXPECT_TRUE((a.matrix * k.matrix).is_zero());
  EXPECT_TRUE(same_lattice(k.matrix.column_list(), {iv({2, 1, 0}), iv({1, 1, 1})}, 3));
  // every small kernel vector is an integer combination of the basis
  for (const auto& x : kernel_points(a.matrix, 3)) {
    auto rows = k.matrix.column_list();
    rows.push_back(x);
    EXPECT_TRUE(same_lattice(rows, k.matrix.column_list(), 3));
  }
}

TEST(Kernel, InjectiveHasNoKernel) {
  auto k = kernel_basis({int_matrix({{1, 0}, {0, 1}, {1, 1}}), "Z^2", "Z^3"});
  EXPECT_EQ(k.matrix.cols(), 0u);
}

TEST(Kernel, PluckerDegreeMap) {
  IntMatrix deg(4, 6);
  std::size_t c = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j, ++c) {
      deg(static_cast<std::size_t>(i), c) = 1;
      deg(static_cast<std::size_t>(j), c) = 1;
    }
  auto k = kernel_basis({deg, "Z^6", "Z^4"});
  EXPECT_EQ(k.matrix.cols(), 2u);
  EXPECT_EQ(smith_decompose(deg).rank, 4u);
}

TEST(Kernel, Deterministic) {
  LatticeMap a{int_matrix({{3, 5, 7, 1}, {2, 0, 4, 6}}), "Z^4", "Z^2"};
  EXPECT_EQ(kernel_basis(a), kernel_basis(a));
}

TEST(Quotient, SaturationKillsTorsion) {
  auto p = quotient_projection({int_matrix({{2}}), "2Z", "Z"});
  EXPECT_EQ(p.matrix.rows(), 0u);
  EXPECT_EQ(p.matrix.cols(), 1u);
}

TEST(Quotient, ExampleWeights) {
  IntMatrix dt = int_matrix({{2, 1}, {1, 1}, {0, 1}});
  auto p = quotient_projection({dt, "N", "Z^3"}, "N''");
  ASSERT_EQ(p.matrix.rows(), 1u);
  IntVector row = p.matrix.row(0);
  EXPECT_TRUE(row == iv({1, -2, 1}) || row == iv({-1, 2, -1}));
  EXPECT_TRUE((p.matrix * dt).is_zero());
}

TEST(Quotient, PluckerRank) {
  IntMatrix dt(6, 4);
  std::size_t c = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j, ++c) {
      dt(c, static_cast<std::size_t>(i)) = 1;
      dt(c, static_cast<std::size_t>(j)) = 1;
    }
  auto p = quotient_projection({dt, "N", "Z^6"});
  EXPECT_EQ(p.matrix.rows(), 2u);
  EXPECT_TRUE(is_surjective(p.matrix));
  auto k = kernel_basis(p);
  EXPECT_EQ(rank(dt) + p.matrix.rows(), 6u);
  EXPECT_EQ(k.matrix.cols(), 4u);
}

TEST(Quotient, RejectsNonInjective) {
  EXPECT_THROW(quotient_projection({int_matrix({{1, 1}, {1, 1}}), "A", "B"}), LatticeError);
}

TEST(Section, Identity) {
  auto s = integral_section({IntMatrix::identity(3), "A", "B"});
  EXPECT_EQ(s.matrix, IntMatrix::identity(3));
  EXPECT_EQ(s.domain, "B");
}

TEST(Section, RowMaps) {
  LatticeMap pi{int_matrix({{1, -2, 1}}), "Z^3", "Z"};
  auto s = integral_section(pi);
  EXPECT_EQ(pi.matrix * s.matrix, IntMatrix::identity(1));
  EXPECT_EQ(pi.matrix.apply(iv({-1, -1, 0})), iv({1}));

  LatticeMap p2{int_matrix({{2, 3}}), "Z^2", "Z"};
  EXPECT_EQ(p2.matrix * integral_section(p2).matrix, IntMatrix::identity(1));
  EXPECT_EQ(p2.matrix.apply(iv({-1, 1})), iv({1}));
}

TEST(Section, RejectsNonSurjective) {
  EXPECT_THROW(integral_section({int_matrix({{2, 4}}), "Z^2", "Z"}), LatticeError);
}

TEST(Retraction, Cases) {
  EXPECT_TRUE(check_retraction(RatMatrix::identity(2), identity_map(2, "A")));
  EXPECT_FALSE(check_retraction(RatMatrix(2, 2), {int_matrix({{1, 0}, {0, 2}}), "A", "B"}));

  // t(E^ij) = (e^i + e^j)/2 - 1/6 against deg*(e^i) = Σ_{j≠i} E^ij, n = 4
  const int n = 4;
  IntMatrix ds(6, 4);
  RatMatrix t(4, 6);
  std::size_t c = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++c) {
      ds(c, static_cast<std::size_t>(i)) = 1;
      ds(c, static_cast<std::size_t>(j)) = 1;
      for (int r = 0; r < n; ++r)
        t(static_cast<std::size_t>(r), c) = (r == i || r == j ? make_rational(1, 2) : Rational(0)) - make_rational(1, 6);
    }
  EXPECT_TRUE(check_retraction(t, {ds, "Ntilde", "Z^6"}));
  EXPECT_EQ(rational_left_inverse(ds) * to_rational(ds), RatMatrix::identity(4));
}

TEST(Tags, ComposeChecksLattices) {
  LatticeMap f{IntMatrix::identity(2), "B", "C"};
  LatticeMap g{IntMatrix::identity(2), "A", "B"};
  EXPECT_EQ(compose(f, g).domain, "A");
  EXPECT_THROW(compose(g, f), LatticeError);
}

TEST(Rationals, CanonicalForm) {
  EXPECT_EQ(make_rational(2, 4), make_rational(1, 2));
  EXPECT_EQ(make_rational(3, -6).get_den(), 2);
  EXPECT_EQ(parse_rational("4/8"), make_rational(1, 2));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
}
