#include <gtest/gtest.h>

#include <set>

#include "qfint/constructions.hpp"

using namespace qfint;

namespace {

// Pairwise check written against the raw arithmetic, not is_integral.
bool all_pairs(const Field& f, const PointSet& s, bool (*accept)(const Field&, Elem)) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      Elem d = 0;
      for (std::size_t k = 0; k < s[i].dim(); ++k) {
        const Elem t = f.sub(s[i][k], s[j][k]);
        d = f.add(d, f.mul(t, t));
      }
      if (!accept(f, d)) return false;
    }
  return true;
}

bool is_square_or_zero(const Field& f, Elem d) {
  for (Elem y = 0; y < f.q(); ++y)
    if (f.mul(y, y) == d) return true;
  return false;
}
bool is_zero(const Field&, Elem d) { return d == 0; }
bool is_nonzero_square(const Field& f, Elem d) { return d != 0 && is_square_or_zero(f, d); }
bool zero_or_nonsquare(const Field& f, Elem d) { return !is_nonzero_square(f, d); }

std::size_t distinct(const Field& f, const PointSet& s) {
  std::set<std::uint64_t> idx;
  for (const auto& p : s) idx.insert(p.index(f));
  return idx.size();
}

}  // namespace

TEST(Constructions, HyperplaneForQOneModFour) {
  for (const char* spec : {"5", "9", "13", "17", "25"}) {
    const Field f = parse_field(spec);
    const PointSet s = hyperplane_q1mod4(f);
    EXPECT_EQ(s.size(), std::size_t{f.q()} * f.q()) << spec;
    EXPECT_EQ(distinct(f, s), s.size());
    EXPECT_TRUE(all_pairs(f, s, is_square_or_zero)) << spec;
    EXPECT_TRUE(verify_construction(f, build_construction("hyperplane_q1mod4", f)));
  }
  EXPECT_THROW(hyperplane_q1mod4(make_field(7, 1)), ConstructionError);
}

TEST(Constructions, CirclePlusLineForQThreeModFour) {
  for (const char* spec : {"3", "7", "11", "19", "23", "27"}) {
    const Field f = parse_field(spec);
    std::string warning;
    const PointSet s = circle_plus_line(f, &warning);
    EXPECT_EQ(s.size(), f.q()) << spec;
    EXPECT_TRUE(warning.empty()) << spec << ": " << warning;
    EXPECT_EQ(distinct(f, s), s.size());
    EXPECT_TRUE(all_pairs(f, s, is_square_or_zero)) << spec;
    std::string why;
    EXPECT_TRUE(verify_construction(f, build_construction("circle_plus_line", f), &why)) << why;
  }
  EXPECT_THROW(circle_plus_line(make_field(5, 1)), ConstructionError);
}

TEST(Constructions, LinesAndCirclesAvoidZeroDistances) {
  for (const char* spec : {"3", "7", "11"}) {
    const Field f = parse_field(spec);
    EXPECT_TRUE(all_pairs(f, line(f, 3), is_nonzero_square)) << spec;
    EXPECT_TRUE(all_pairs(f, circle_plus_line(f), is_nonzero_square)) << spec;
  }
}

TEST(Constructions, IsotropicPlaneInFourDimensions) {
  for (const char* spec : {"3", "5", "7", "9", "11"}) {
    const Field f = parse_field(spec);
    const PointSet s = isotropic_plane_4d(f);
    EXPECT_EQ(s.size(), std::size_t{f.q()} * f.q());
    EXPECT_EQ(distinct(f, s), s.size());
    EXPECT_TRUE(all_pairs(f, s, is_zero)) << spec;
  }
}

TEST(Constructions, IsotropicLineInTwoDimensions) {
  const Field f = make_field(13, 1);
  const PointSet s = isotropic_line_2d(f);
  EXPECT_EQ(s.size(), 13u);
  EXPECT_TRUE(all_pairs(f, s, is_zero));
  EXPECT_THROW(isotropic_line_2d(make_field(11, 1)), ConstructionError);
}

TEST(Constructions, NonIntegralPlane) {
  for (const char* spec : {"3", "7", "11"}) {
    const Field f = parse_field(spec);
    const PointSet s = nonintegral_plane(f);
    EXPECT_EQ(s.size(), std::size_t{f.q()} * f.q());
    EXPECT_EQ(distinct(f, s), s.size());
    EXPECT_TRUE(all_pairs(f, s, zero_or_nonsquare)) << spec;
    EXPECT_TRUE(verify_construction(f, build_construction("nonintegral_plane", f)));
  }
  EXPECT_THROW(nonintegral_plane(make_field(5, 1)), ConstructionError);
}

TEST(Constructions, Products) {
  const Field f = make_field(7, 1);
  const PointSet s = product(f, line(f, 1), isotropic_plane_4d(f));
  EXPECT_EQ(s.size(), 343u);
  EXPECT_EQ(s.front().dim(), 5u);
  EXPECT_EQ(distinct(f, s), s.size());
  EXPECT_TRUE(all_pairs(f, s, is_square_or_zero));
  // The second factor must be totally isotropic.
  EXPECT_THROW(product(f, line(f, 1), line(f, 2)), ConstructionError);
  // The first factor must be integral.
  EXPECT_THROW(product(f, nonintegral_plane(f), isotropic_plane_4d(f)), ConstructionError);
}

TEST(Constructions, LowerBoundValues) {
  EXPECT_EQ(lower_bound(make_field(5, 1), 5).value, 125u);
  EXPECT_EQ(lower_bound(make_field(7, 1), 4).value, 49u);
  EXPECT_EQ(lower_bound(make_field(11, 1), 4).value, 121u);
  EXPECT_EQ(lower_bound(make_field(7, 1), 5).value, 343u);
  EXPECT_EQ(lower_bound(make_field(3, 1), 8).value, 81u);
  EXPECT_EQ(lower_bound(make_field(13, 1), 1).value, 13u);
  for (const auto& [spec, m] : std::vector<std::pair<const char*, unsigned>>{
           {"5", 2}, {"5", 3}, {"5", 5}, {"3", 4}, {"3", 5}, {"7", 6}, {"9", 4}, {"3", 7}}) {
    const Field f = parse_field(spec);
    const LowerBound lb = lower_bound(f, m);
    ASSERT_EQ(lb.witness.size(), lb.value) << spec << " m=" << m;
    EXPECT_EQ(distinct(f, lb.witness), lb.value);
    for (const auto& p : lb.witness) ASSERT_EQ(p.dim(), m);
    EXPECT_TRUE(all_pairs(f, lb.witness, is_square_or_zero)) << spec << " m=" << m;
    EXPECT_FALSE(lb.description.empty());
  }
  // Too large to materialize: value only.
  const LowerBound big = lower_bound(make_field(13, 1), 12, 1000);
  EXPECT_TRUE(big.witness.empty());
  EXPECT_EQ(big.value, 4826809u);
}

TEST(Constructions, NamedBuildsAndVerification) {
  const Field f = make_field(7, 1);
  for (const char* name : {"line", "circle_plus_line", "isotropic_plane_4d", "nonintegral_plane"}) {
    const Construction c = build_construction(name, f);
    std::string why;
    EXPECT_TRUE(verify_construction(f, c, &why)) << name << ": " << why;
  }
  const Construction p = build_construction("product", f, 5);
  EXPECT_EQ(p.claimed, 343u);
  EXPECT_TRUE(verify_construction(f, p));
  EXPECT_THROW(build_construction("product", f), ConstructionError);
  EXPECT_THROW(build_construction("nonsense", f), ConstructionError);

  Construction broken = build_construction("line", f);
  broken.points.back() = Point{1, 1, 1};  // squared distance 3 from the origin
  std::string why;
  EXPECT_FALSE(verify_construction(f, broken, &why));
  EXPECT_FALSE(why.empty());
  broken.claimed = 99;
  EXPECT_FALSE(verify_construction(f, broken));
}
