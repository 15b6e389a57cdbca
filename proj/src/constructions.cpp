#include "qfint/constructions.hpp"

#include <algorithm>

#include "qfint/clique.hpp"

namespace qfint {

namespace {

void require_q_mod4(const Field& f, unsigned residue, const char* name) {
  if (f.q() % 4 != residue)
    throw ConstructionError(std::string(name) + " needs q = " + std::to_string(residue) +
                            " mod 4, got q = " + std::to_string(f.q()));
}

Elem minus(const Field& f, long long c) { return f.neg(f.from_int(c)); }

// Concatenation without checks, for pieces already known to be compatible.
PointSet concat(const PointSet& p1, const PointSet& p2) {
  PointSet out;
  out.reserve(p1.size() * p2.size());
  for (const auto& u : p1)
    for (const auto& v : p2) {
      std::vector<Elem> c = u.coords();
      c.insert(c.end(), v.coords().begin(), v.coords().end());
      out.emplace_back(std::move(c));
    }
  return out;
}

bool all_distances_zero(const Field& f, const PointSet& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (sq_dist(f, p[i], p[j]) != 0) return false;
  return true;
}

// Multiplication in F_q[x]/(x^2+1) on pairs (a, b) = a + b x.
std::pair<Elem, Elem> gauss_mul(const Field& f, std::pair<Elem, Elem> x, std::pair<Elem, Elem> y) {
  return {f.sub(f.mul(x.first, y.first), f.mul(x.second, y.second)),
          f.add(f.mul(x.first, y.second), f.mul(x.second, y.first))};
}

}  // namespace

PointSet line(const Field& f, unsigned m) {
  if (m < 1) throw ConstructionError("line needs m >= 1");
  PointSet out;
  for (Elem a = 0; a < f.q(); ++a) {
    Point p = Point::zero(m);
    p[0] = a;
    out.push_back(std::move(p));
  }
  return out;
}

PointSet hyperplane_q1mod4(const Field& f) {
  require_q_mod4(f, 1, "hyperplane_q1mod4");
  const Elem w = f.omega();
  PointSet out;
  for (Elem a = 0; a < f.q(); ++a)
    for (Elem b = 0; b < f.q(); ++b) out.push_back(Point{a, f.mul(w, a), b});
  return out;
}

PointSet isotropic_line_2d(const Field& f) {
  require_q_mod4(f, 1, "isotropic_line_2d");
  const Elem w = f.omega();
  PointSet out;
  for (Elem a = 0; a < f.q(); ++a) out.push_back(Point{a, f.mul(w, a)});
  return out;
}

PointSet circle_plus_line(const Field& f, std::string* warning) {
  require_q_mod4(f, 3, "circle_plus_line");
  const std::uint64_t q = f.q();
  // The unit circle is cyclic of order q + 1; find a generator.
  std::vector<std::pair<Elem, Elem>> circle;
  for (Elem a = 0; a < q; ++a)
    for (Elem b = 0; b < q; ++b)
      if (f.add(f.sq(a), f.sq(b)) == 1) circle.emplace_back(a, b);
  if (circle.size() != q + 1) throw std::logic_error("unit circle has the wrong size");
  const std::pair<Elem, Elem> one{1, 0};
  std::optional<std::pair<Elem, Elem>> gen;
  for (const auto& z : circle) {
    std::uint64_t order = 1;
    for (auto x = z; x != one; x = gauss_mul(f, x, z)) ++order;
    if (order == q + 1) {
      gen = z;
      break;
    }
  }
  if (!gen) throw std::logic_error("unit circle is not cyclic");
  const auto g2 = gauss_mul(f, *gen, *gen);
  PointSet arc;
  auto x = one;
  for (std::uint64_t k = 0; k < (q + 1) / 2; ++k) {
    arc.push_back(Point{x.first, x.second, 0});
    x = gauss_mul(f, x, g2);
  }
  PointSet axis;
  for (Elem t = 0; t < q; ++t)
    if (f.is_square(f.add(f.sq(t), 1))) axis.push_back(Point{0, 0, t});

  if (!verify_point_set(f, arc).integral) {
    PointSet full;
    for (const auto& [a, b] : circle) full.push_back(Point{a, b, 0});
    arc = max_clique_in_set(f, full).witness;
    if (warning)
      *warning = "squares of the unit circle are not integral for q = " + std::to_string(q) +
                 "; used a maximum integral subset of size " + std::to_string(arc.size());
  }
  PointSet out = arc;
  out.insert(out.end(), axis.begin(), axis.end());
  if (!verify_point_set(f, out).integral)
    throw ConstructionError("circle plus line is not integral for q = " + std::to_string(q));
  return out;
}

PointSet isotropic_plane_4d(const Field& f) {
  auto ab = two_squares(f, minus(f, 2));
  if (!ab) throw std::logic_error("-2 is not a sum of two squares");
  const auto [a, b] = *ab;
  const Point u{a, b, 1, 1};
  const Point v{f.neg(b), a, f.neg(1), 1};
  PointSet out;
  for (Elem t = 0; t < f.q(); ++t)
    for (Elem s = 0; s < f.q(); ++s) out.push_back(add(f, scale(f, t, u), scale(f, s, v)));
  return out;
}

PointSet product(const Field& f, const PointSet& p1, const PointSet& p2) {
  if (const auto c = verify_point_set(f, p1); !c.integral)
    throw ConstructionError("first factor of a product is not integral");
  if (!all_distances_zero(f, p2))
    throw ConstructionError("second factor of a product has a nonzero squared distance");
  return concat(p1, p2);
}

PointSet nonintegral_plane(const Field& f) {
  require_q_mod4(f, 3, "nonintegral_plane");
  auto ab = two_squares(f, minus(f, 1));
  if (!ab) throw std::logic_error("-1 is not a sum of two squares");
  const auto [a, b] = *ab;
  const Point u{a, b, 1};
  const Point v{f.neg(b), a, 0};
  PointSet out;
  for (Elem t = 0; t < f.q(); ++t)
    for (Elem s = 0; s < f.q(); ++s) out.push_back(add(f, scale(f, t, u), scale(f, s, v)));
  return out;
}

const std::vector<std::array<const char*, 3>>& f27_example_poly() {
  static const std::vector<std::array<const char*, 3>> pts = {{
      {"2+2w+2w^2", "2+w^2", "w^2"},
      {"0", "2w+2w^2", "1+2w"},
      {"1", "1+w+w^2", "w"},
      {"2", "0", "0"},
      {"2", "w^2", "2+w"},
      {"2", "2w^2", "1+2w"},
      {"2", "2w+2w^2", "1+2w"},
      {"w", "2+2w", "2+2w+2w^2"},
      {"2w", "2w^2", "2+2w+w^2"},
      {"2+2w", "w^2", "2+w+w^2"},
      {"2+2w", "w+2w^2", "w+2w^2"},
      {"2+2w", "2w+2w^2", "2w"},
      {"w^2", "2+w+w^2", "1+2w^2"},
      {"1+w^2", "2w+2w^2", "2w"},
      {"0", "0", "0"},
      {"2+w^2", "1+2w", "2w^2"},
      {"1+w+w^2", "w^2", "2+w^2"},
      {"2+w+w^2", "w^2", "0"},
      {"1", "0", "0"},
      {"2w+w^2", "1+2w+2w^2", "2+2w+2w^2"},
      {"2+2w+w^2", "2+2w^2", "1"},
      {"1", "0", "1+w^2"},
      {"1+2w^2", "w+w^2", "2w"},
      {"w+2w^2", "1+w^2", "1+w+2w^2"},
      {"2+w+2w^2", "2+w", "2+w+2w^2"},
      {"2+w+2w^2", "2+2w", "2w+w^2"},
      {"1+2w+2w^2", "2+w+w^2", "2w+w^2"},
      {"1+2w+2w^2", "2w+2w^2", "2w"},
  }};
  return pts;
}

PointSet f27_example(const Field& f) {
  if (f != parse_field(kF27Modulus))
    throw ConstructionError("the F_27 example needs the field " + std::string(kF27Modulus));
  PointSet out;
  for (const auto& row : f27_example_poly())
    out.push_back(Point{f.parse_poly(row[0]), f.parse_poly(row[1]), f.parse_poly(row[2])});
  return out;
}

LowerBound lower_bound(const Field& f, unsigned m, std::uint64_t materialize_limit) {
  if (m < 1) throw ConstructionError("lower_bound needs m >= 1");
  const std::uint64_t q = f.q();
  LowerBound lb;
  // Blocks of pairwise zero distance: isotropic lines in F_q^2 (q points) or
  // isotropic planes in F_q^4 (q^2 points), then a line in what is left.
  const bool q1 = q % 4 == 1;
  const unsigned blocks = q1 ? m / 2 : m / 4;
  const unsigned residual = q1 ? m % 2 : m % 4;
  const unsigned exponent = blocks * (q1 ? 1 : 2) + (residual > 0 ? 1 : 0);
  lb.value = 1;
  for (unsigned i = 0; i < exponent; ++i) lb.value *= q;
  lb.description = std::to_string(blocks) + (q1 ? " isotropic line(s)" : " isotropic 4d plane(s)");
  if (residual > 0) lb.description += " x line in dimension " + std::to_string(residual);
  if (lb.value > materialize_limit) return lb;

  PointSet w = residual > 0 ? line(f, residual) : PointSet{Point()};
  const PointSet block = q1 ? isotropic_line_2d(f) : isotropic_plane_4d(f);
  for (unsigned i = 0; i < blocks; ++i) w = concat(w, block);
  lb.witness = std::move(w);
  return lb;
}

Construction build_construction(const std::string& name, const Field& f, unsigned m) {
  Construction c;
  c.name = name;
  c.parameters["q"] = f.descriptor();
  const std::uint64_t q = f.q();
  if (name == "line") {
    c.dim = m == 0 ? 3 : m;
    c.points = line(f, c.dim);
    c.claimed = q;
  } else if (name == "hyperplane_q1mod4") {
    c.dim = 3;
    c.points = hyperplane_q1mod4(f);
    c.parameters["omega"] = std::to_string(f.omega());
    c.claimed = q * q;
  } else if (name == "circle_plus_line") {
    c.dim = 3;
    std::string warning;
    c.points = circle_plus_line(f, &warning);
    if (!warning.empty()) c.parameters["warning"] = warning;
    c.claimed = q;
  } else if (name == "isotropic_plane_4d") {
    c.dim = 4;
    c.points = isotropic_plane_4d(f);
    const auto ab = two_squares(f, minus(f, 2));
    c.parameters["alpha"] = std::to_string(ab->first);
    c.parameters["beta"] = std::to_string(ab->second);
    c.claimed = q * q;
  } else if (name == "product") {
    if (m == 0) throw ConstructionError("product needs a dimension m");
    c.dim = m;
    LowerBound lb = lower_bound(f, m);
    if (lb.witness.empty() && lb.value > 0)
      throw ConstructionError("product witness too large to materialize");
    c.points = std::move(lb.witness);
    c.parameters["m"] = std::to_string(m);
    c.parameters["factors"] = lb.description;
    c.claimed = lb.value;
  } else if (name == "nonintegral_plane") {
    c.dim = 3;
    c.points = nonintegral_plane(f);
    const auto ab = two_squares(f, minus(f, 1));
    c.parameters["alpha"] = std::to_string(ab->first);
    c.parameters["beta"] = std::to_string(ab->second);
    c.claimed = q * q;
  } else {
    throw ConstructionError("unknown construction '" + name + "'");
  }
  return c;
}

bool verify_construction(const Field& f, const Construction& c, std::string* failure) {
  auto fail = [&](std::string why) {
    if (failure) *failure = std::move(why);
    return false;
  };
  if (c.points.size() != c.claimed)
    return fail("cardinality " + std::to_string(c.points.size()) + " differs from claimed " +
                std::to_string(c.claimed));
  for (const auto& p : c.points)
    if (p.dim() != c.dim) return fail("point " + format_point(p) + " has the wrong dimension");
  PointSet sorted = c.points;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    return fail("repeated point");
  if (c.name == "nonintegral_plane") {
    for (std::size_t i = 0; i < c.points.size(); ++i)
      for (std::size_t j = i + 1; j < c.points.size(); ++j)
        if (f.quad_class(sq_dist(f, c.points[i], c.points[j])) == QuadClass::Square)
          return fail("nonzero square distance between " + format_point(c.points[i]) + " and " +
                      format_point(c.points[j]));
    return true;
  }
  const auto check = verify_point_set(f, c.points);
  if (!check.integral)
    return fail("non-integral pair " + format_point(c.points[check.violation->first]) + ", " +
                format_point(c.points[check.violation->second]));
  return true;
}

}  // namespace qfint
