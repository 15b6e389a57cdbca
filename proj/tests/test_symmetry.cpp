#include <gtest/gtest.h>

#include <random>

#include "qfint/symmetry.hpp"

using namespace qfint;

namespace {

Point random_nonzero(std::mt19937& rng, const Field& f, std::size_t m) {
  std::uniform_int_distribution<std::uint64_t> pick(1, space_size(f, m) - 1);
  return Point::from_index(f, m, pick(rng));
}

// A random point with the given norm, by rejection.
Point random_with_norm(std::mt19937& rng, const Field& f, std::size_t m, Elem tau) {
  while (true) {
    Point x = random_nonzero(rng, f, m);
    if (norm(f, x) == tau) return x;
  }
}

// Orthogonality straight from the definition, entry by entry.
bool orthogonal_oracle(const Field& f, const SquareMatrix& a) {
  const std::size_t m = a.dim();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Elem s = 0, t = 0;
      for (std::size_t k = 0; k < m; ++k) {
        s = f.add(s, f.mul(a(k, i), a(k, j)));
        t = f.add(t, f.mul(a(i, k), a(j, k)));
      }
      const Elem want = i == j ? 1 : 0;
      if (s != want || t != want) return false;
    }
  return true;
}

}  // namespace

TEST(Matrices, OrthogonalityExamples) {
  const Field f5 = make_field(5, 1);
  EXPECT_TRUE(is_orthogonal(f5, SquareMatrix::identity(3)));
  EXPECT_TRUE(is_orthogonal(f5, parse_matrix("0,4;1,0")));
  EXPECT_FALSE(is_orthogonal(f5, parse_matrix("1,1;0,1")));
  EXPECT_TRUE(is_oz(make_field(7, 1), SquareMatrix::scalar(3, 2)));
  EXPECT_TRUE(is_oz(f5, parse_matrix("0,4;1,0")));
  EXPECT_FALSE(is_oz(f5, parse_matrix("1,0;0,2")));
}

TEST(Matrices, SimilitudeWithNonSquareMultiplierIsNotOZ) {
  // A^T A = 2 E over F_5 with 2 a non-square: not a multiple of an
  // orthogonal matrix, and it moves e1 (norm 1) to a point of norm 2.
  const Field f5 = make_field(5, 1);
  const SquareMatrix a = parse_matrix("1,1;4,1");
  EXPECT_FALSE(is_oz(f5, a));
  EXPECT_FALSE(verify_delta_map(f5, AffineMap{a, Point(), 0}));
}

TEST(Matrices, FormatRoundTripAndErrors) {
  const SquareMatrix a = parse_matrix("0,4;1,0");
  EXPECT_EQ(format_matrix(a), "0,4;1,0");
  EXPECT_THROW(parse_matrix("1,2;3"), DimensionError);
  EXPECT_THROW(parse_matrix("1,x;3,4"), std::invalid_argument);
}

TEST(Matrices, InvertibilityAgreesWithGLOrder) {
  for (std::uint32_t q : {3u, 5u}) {
    const Field f = parse_field(std::to_string(q));
    std::uint64_t invertible = 0;
    for (Elem a = 0; a < q; ++a)
      for (Elem b = 0; b < q; ++b)
        for (Elem c = 0; c < q; ++c)
          for (Elem d = 0; d < q; ++d)
            invertible += is_invertible(f, SquareMatrix(2, {a, b, c, d}));
    EXPECT_EQ(BigInt(invertible), order_GL(2, q));
  }
}

TEST(GroupOrders, Formulas) {
  EXPECT_EQ(order_O(2, 5), 8);
  EXPECT_EQ(order_O(3, 3), 48);
  EXPECT_EQ(order_OZ(2, 5), 16);
  EXPECT_EQ(order_O(1, 7), 2);
  EXPECT_THROW(order_OZ(1, 5), std::invalid_argument);
  for (std::uint64_t q : {3ull, 5ull, 7ull, 9ull, 11ull})
    for (unsigned m = 2; m <= 6; ++m) {
      const auto g = group_orders(m, q);
      EXPECT_EQ(g.order_OZ, BigInt((q - 1) / 2) * g.order_O);
      EXPECT_EQ(order_GL(m, q) % g.order_O, 0) << m << "," << q;
    }
}

TEST(GroupOrders, BruteForceMatchesFormulas) {
  const std::pair<unsigned, std::uint32_t> cases[] = {{2, 3}, {2, 5}, {2, 7}, {2, 9}, {3, 3}};
  for (auto [m, q] : cases) {
    const Field f = parse_field(std::to_string(q));
    EXPECT_EQ(BigInt(enumerate_O_brute(f, m)), order_O(m, q)) << m << "," << q;
  }
  EXPECT_THROW(enumerate_O_brute(make_field(7, 1), 3, 1, 1'000'000), BudgetExceeded);
}

TEST(GroupOrders, BruteForceIsWorkerIndependent) {
  const Field f = make_field(7, 1);
  EXPECT_EQ(enumerate_O_brute(f, 2, 1), enumerate_O_brute(f, 2, 4));
}

TEST(Automorphisms, LinearAutomorphismCounts) {
  struct Case {
    unsigned m;
    std::uint32_t q;
    int ratio;
  };
  for (const Case c : {Case{2, 3, 1}, Case{2, 5, 2}, Case{2, 7, 1}, Case{2, 9, 3}, Case{3, 3, 1}}) {
    const Field f = parse_field(std::to_string(c.q));
    const auto r = enumerate_aut_linear(f, c.m);
    EXPECT_EQ(BigInt(r.invertible), order_GL(c.m, c.q));
    EXPECT_EQ(BigInt(r.in_oz), order_OZ(c.m, c.q));
    EXPECT_EQ(BigInt(r.automorphisms), c.ratio * order_OZ(c.m, c.q)) << c.m << "," << c.q;
    EXPECT_EQ(r.outside_oz_example.has_value(), c.ratio > 1);
  }
}

TEST(Automorphisms, DeltaMapExamples) {
  const Field f7 = make_field(7, 1);
  EXPECT_TRUE(verify_delta_map(f7, AffineMap{SquareMatrix::identity(2), Point{3, 5}, 0}));
  EXPECT_FALSE(verify_delta_map(f7, AffineMap{parse_matrix("1,1;0,1"), Point(), 0}));
  const Field f9 = make_field(3, 2);
  EXPECT_TRUE(verify_delta_map(f9, AffineMap{SquareMatrix::identity(2), Point(), 1}));
  EXPECT_TRUE(verify_delta_map(f9, AffineMap{SquareMatrix::scalar(3, 4), Point{1, 2, 3}, 1}));
  EXPECT_FALSE(verify_delta_map(f7, AffineMap{SquareMatrix(2), Point(), 0}));
}

TEST(Automorphisms, OZPreservesNormClassesExhaustively) {
  std::mt19937 rng(17);
  for (std::uint32_t q : {3u, 5u, 7u}) {
    const Field f = parse_field(std::to_string(q));
    for (std::size_t m = 2; m <= 3; ++m) {
      for (int t = 0; t < 6; ++t) {
        const Point u = random_nonzero(rng, f, m);
        Point v = random_with_norm(rng, f, m, norm(f, u));
        const Elem s = 1 + rng() % (q - 1);
        const SquareMatrix a = scaled(f, s, transitivity_witness(f, u, v));
        ASSERT_TRUE(is_oz(f, a));
        for (std::uint64_t i = 0; i < space_size(f, m); ++i) {
          const Point x = Point::from_index(f, m, i);
          ASSERT_EQ(norm_class(f, apply(f, a, x)), norm_class(f, x));
        }
      }
    }
  }
}

TEST(Automorphisms, OrthogonalProductsStayOrthogonal) {
  std::mt19937 rng(23);
  for (const char* spec : {"5", "7", "9", "13"}) {
    const Field f = parse_field(spec);
    for (std::size_t m = 2; m <= 4; ++m)
      for (int t = 0; t < 20; ++t) {
        const Point u = random_nonzero(rng, f, m), x = random_nonzero(rng, f, m);
        const SquareMatrix a = transitivity_witness(f, u, random_with_norm(rng, f, m, norm(f, u)));
        const SquareMatrix b = transitivity_witness(f, x, random_with_norm(rng, f, m, norm(f, x)));
        ASSERT_TRUE(is_orthogonal(f, multiply(f, a, b)));
      }
  }
}

TEST(Witness, SpecificCases) {
  const Field f5 = make_field(5, 1);
  EXPECT_EQ(transitivity_witness(f5, Point{1, 0}, Point{0, 1}), parse_matrix("0,4;1,0"));
  EXPECT_EQ(transitivity_witness(f5, Point{1, 2, 3}, Point{1, 2, 3}), SquareMatrix::identity(3));
  const SquareMatrix iso = transitivity_witness(f5, Point{1, 2}, Point{2, 4});
  EXPECT_TRUE(orthogonal_oracle(f5, iso));
  EXPECT_EQ(apply(f5, iso, Point{1, 2}), (Point{2, 4}));
  EXPECT_THROW(transitivity_witness(f5, Point{1, 0}, Point{1, 1}), WitnessError);
  EXPECT_THROW(transitivity_witness(f5, Point{0, 0}, Point{0, 0}), WitnessError);
  EXPECT_THROW(transitivity_witness(f5, Point{1, 0}, Point{1, 0, 0}), DimensionError);
}

TEST(Witness, RandomPairsInLowDimensions) {
  std::mt19937 rng(31);
  for (const char* spec : {"3", "5", "7", "9", "11", "13"}) {
    const Field f = parse_field(spec);
    for (std::size_t m = 2; m <= 3; ++m)
      for (int t = 0; t < 100; ++t) {
        const Point u = random_nonzero(rng, f, m);
        const Point v = random_with_norm(rng, f, m, norm(f, u));
        const SquareMatrix a = transitivity_witness(f, u, v);
        ASSERT_TRUE(orthogonal_oracle(f, a)) << spec << " " << format_point(u) << "->" << format_point(v);
        ASSERT_EQ(apply(f, a, u), v);
      }
  }
}

TEST(Witness, HigherDimensionsIncludingCharacteristicThree) {
  std::mt19937 rng(37);
  for (const char* spec : {"3", "5", "7", "9", "27"}) {
    const Field f = parse_field(spec);
    for (std::size_t m = 4; m <= 7; ++m)
      for (int t = 0; t < 25; ++t) {
        const Point u = random_nonzero(rng, f, m);
        const Point v = random_with_norm(rng, f, m, norm(f, u));
        const SquareMatrix a = transitivity_witness(f, u, v);
        ASSERT_TRUE(orthogonal_oracle(f, a));
        ASSERT_EQ(apply(f, a, u), v);
      }
  }
  // Every coordinate triple isotropic: all entries +-1 over F_3.
  const Field f3 = make_field(3, 1);
  const Point u{1, 2, 1, 1, 2};
  const Point v{1, 1, 0, 0, 0};
  ASSERT_EQ(norm(f3, u), norm(f3, v));
  const SquareMatrix a = transitivity_witness(f3, u, v);
  EXPECT_TRUE(orthogonal_oracle(f3, a));
  EXPECT_EQ(apply(f3, a, u), v);
}

TEST(Witness, ExhaustiveSmallSpaces) {
  for (const char* spec : {"3", "5"}) {
    const Field f = parse_field(spec);
    for (std::size_t m = 2; m <= 3; ++m) {
      const std::uint64_t n = space_size(f, m);
      for (std::uint64_t i = 1; i < n; ++i)
        for (std::uint64_t j = 1; j < n; ++j) {
          const Point u = Point::from_index(f, m, i), v = Point::from_index(f, m, j);
          if (norm(f, u) != norm(f, v)) continue;
          const SquareMatrix a = transitivity_witness(f, u, v);
          ASSERT_TRUE(is_orthogonal(f, a));
          ASSERT_EQ(apply(f, a, u), v);
        }
    }
  }
}

TEST(Orbits, PartitionCheck) {
  EXPECT_TRUE(orbit_partition_check(make_field(5, 1), 2).ok);
  EXPECT_TRUE(orbit_partition_check(make_field(3, 1), 3).ok);
  const auto r = orbit_partition_check(make_field(7, 1), 3, 100, 1, 0);
  EXPECT_TRUE(r.ok) << r.failure;
  EXPECT_EQ(r.pairs, 300u);
  for (const char* spec : {"9", "11", "13", "25"})
    for (unsigned m = 2; m <= 4; ++m) {
      const auto rep = orbit_partition_check(parse_field(spec), m, 30, 5);
      EXPECT_TRUE(rep.ok) << spec << " m=" << m << ": " << rep.failure;
    }
}
