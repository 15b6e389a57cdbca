#include "qfint/symmetry.hpp"

#include <charconv>
#include <random>
#include <stdexcept>

#include "qfint/parallel.hpp"

namespace qfint {

SquareMatrix::SquareMatrix(std::size_t m, std::vector<Elem> row_major)
    : m_(m), a_(std::move(row_major)) {
  if (a_.size() != m * m) throw DimensionError("matrix entry count is not m*m");
}

SquareMatrix SquareMatrix::identity(std::size_t m) { return scalar(m, 1); }

SquareMatrix SquareMatrix::scalar(std::size_t m, Elem s) {
  SquareMatrix a(m);
  for (std::size_t i = 0; i < m; ++i) a(i, i) = s;
  return a;
}

SquareMatrix multiply(const Field& f, const SquareMatrix& a, const SquareMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("matrix dimension mismatch");
  const std::size_t m = a.dim();
  SquareMatrix c(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Elem s = 0;
      for (std::size_t k = 0; k < m; ++k) s = f.add(s, f.mul(a(i, k), b(k, j)));
      c(i, j) = s;
    }
  return c;
}

SquareMatrix transpose(const SquareMatrix& a) {
  SquareMatrix t(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) t(j, i) = a(i, j);
  return t;
}

SquareMatrix scaled(const Field& f, Elem s, const SquareMatrix& a) {
  SquareMatrix b = a;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) b(i, j) = f.mul(s, a(i, j));
  return b;
}

Point apply(const Field& f, const SquareMatrix& a, const Point& u) {
  if (a.dim() != u.dim()) throw DimensionError("matrix/vector dimension mismatch");
  std::vector<Elem> out(a.dim(), 0);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Elem s = 0;
    for (std::size_t k = 0; k < a.dim(); ++k) s = f.add(s, f.mul(a(i, k), u[k]));
    out[i] = s;
  }
  return Point(std::move(out));
}

bool is_invertible(const Field& f, const SquareMatrix& a) {
  SquareMatrix b = a;
  const std::size_t m = a.dim();
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    while (piv < m && b(piv, col) == 0) ++piv;
    if (piv == m) return false;
    if (piv != col)
      for (std::size_t j = 0; j < m; ++j) std::swap(b(piv, j), b(col, j));
    const Elem inv = f.inv(b(col, col));
    for (std::size_t i = col + 1; i < m; ++i) {
      const Elem factor = f.mul(b(i, col), inv);
      if (factor == 0) continue;
      for (std::size_t j = col; j < m; ++j) b(i, j) = f.sub(b(i, j), f.mul(factor, b(col, j)));
    }
  }
  return true;
}

namespace {

// A^T A == s I for some s; returns s, or nullopt if A^T A is not scalar.
std::optional<Elem> gram_scalar(const Field& f, const SquareMatrix& a) {
  const std::size_t m = a.dim();
  std::optional<Elem> s;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      Elem g = 0;
      for (std::size_t k = 0; k < m; ++k) g = f.add(g, f.mul(a(k, i), a(k, j)));
      if (i != j) {
        if (g != 0) return std::nullopt;
      } else if (!s) {
        s = g;
      } else if (*s != g) {
        return std::nullopt;
      }
    }
  return s;
}

}  // namespace

bool is_orthogonal(const Field& f, const SquareMatrix& a) {
  auto s = gram_scalar(f, a);
  if (!s || *s != 1) return false;
  return gram_scalar(f, transpose(a)) == std::optional<Elem>(1);
}

bool is_oz(const Field& f, const SquareMatrix& a) {
  // Scalar multiples of orthogonal matrices: A^T A = s^2 I with s != 0.
  auto s = gram_scalar(f, a);
  if (!s || f.quad_class(*s) != QuadClass::Square) return false;
  return gram_scalar(f, transpose(a)) == s;
}

std::string format_matrix(const SquareMatrix& a) {
  std::string s;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (i) s += ';';
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (j) s += ',';
      s += std::to_string(a(i, j));
    }
  }
  return s;
}

SquareMatrix parse_matrix(std::string_view text) {
  std::vector<std::vector<Elem>> rows;
  while (true) {
    const auto semi = text.find(';');
    std::string_view row = text.substr(0, semi);
    std::vector<Elem> r;
    while (true) {
      const auto comma = row.find(',');
      std::string_view tok = row.substr(0, comma);
      while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
      while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
      Elem v = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty())
        throw std::invalid_argument("malformed matrix entry '" + std::string(tok) + "'");
      r.push_back(v);
      if (comma == std::string_view::npos) break;
      row = row.substr(comma + 1);
    }
    rows.push_back(std::move(r));
    if (semi == std::string_view::npos) break;
    text = text.substr(semi + 1);
  }
  const std::size_t m = rows.size();
  std::vector<Elem> flat;
  for (const auto& r : rows) {
    if (r.size() != m) throw DimensionError("matrix is not square");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return SquareMatrix(m, std::move(flat));
}

Point AffineMap::operator()(const Field& f, const Point& u) const {
  Point x = u;
  if (frobenius != 0)
    for (std::size_t i = 0; i < x.dim(); ++i) x[i] = f.frobenius(x[i], frobenius);
  x = apply(f, matrix, x);
  if (translation.dim() != 0) x = add(f, x, translation);
  return x;
}

BigInt order_GL(unsigned m, std::uint64_t q) {
  BigInt r = 1;
  const BigInt qm = big_pow(q, m);
  for (unsigned i = 0; i < m; ++i) r *= qm - big_pow(q, i);
  return r;
}

BigInt order_O(unsigned m, std::uint64_t q) {
  if (m < 1) throw std::invalid_argument("order_O needs m >= 1");
  if (q % 2 == 0) throw std::invalid_argument("order_O needs odd q");
  if (m % 2 == 1) {
    const unsigned n = (m - 1) / 2;
    BigInt r = 2 * big_pow(q, n);
    for (unsigned i = 0; i < n; ++i) r *= big_pow(q, 2 * n) - big_pow(q, 2 * i);
    return r;
  }
  const unsigned n = m / 2;
  BigInt r = q % 4 == 1 ? 2 * (big_pow(q, n) - 1)
                        : 2 * (big_pow(q, n) + sign_pow(n + 1));
  for (unsigned i = 1; i < n; ++i) r *= big_pow(q, 2 * n) - big_pow(q, 2 * i);
  return r;
}

BigInt order_OZ(unsigned m, std::uint64_t q) {
  if (m < 2) throw std::invalid_argument("order_OZ needs m >= 2");
  return BigInt((q - 1) / 2) * order_O(m, q);
}

GroupOrderRecord group_orders(unsigned m, std::uint64_t q) {
  return {m, q, order_O(m, q), order_OZ(m, q)};
}

namespace {

std::uint64_t matrix_space(const Field& f, unsigned m, std::uint64_t budget) {
  std::uint64_t n = 1;
  for (unsigned i = 0; i < m * m; ++i) {
    n *= f.q();
    if (n > budget) throw BudgetExceeded("q^(m^2) exceeds the enumeration budget");
  }
  return n;
}

SquareMatrix matrix_from_index(const Field& f, unsigned m, std::uint64_t idx) {
  std::vector<Elem> e(std::size_t{m} * m);
  for (auto& x : e) {
    x = static_cast<Elem>(idx % f.q());
    idx /= f.q();
  }
  return SquareMatrix(m, std::move(e));
}

// Delta-preservation of a linear map given the norm-class table of all points.
bool preserves_delta(const Field& f, const SquareMatrix& a, const std::vector<Point>& pts,
                     const std::vector<char>& integral) {
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const Point img = apply(f, a, pts[i]);
    if (static_cast<char>(f.is_square(norm(f, img))) != integral[i]) return false;
  }
  return true;
}

}  // namespace

std::uint64_t enumerate_O_brute(const Field& f, unsigned m, unsigned workers,
                                std::uint64_t budget) {
  const std::uint64_t total = matrix_space(f, m, budget);
  const std::size_t chunks = 256;
  std::vector<std::uint64_t> partial(chunks, 0);
  parallel_for(chunks, workers, [&](std::size_t c) {
    const std::uint64_t lo = total * c / chunks, hi = total * (c + 1) / chunks;
    std::uint64_t n = 0;
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      const SquareMatrix a = matrix_from_index(f, m, idx);
      auto s = gram_scalar(f, a);
      n += static_cast<std::uint64_t>(s && *s == 1);
    }
    partial[c] = n;
  });
  std::uint64_t n = 0;
  for (auto x : partial) n += x;
  return n;
}

bool verify_delta_map(const Field& f, const AffineMap& map, std::uint64_t budget) {
  const std::size_t m = map.matrix.dim();
  const std::uint64_t n = space_size(f, m);
  if (n > budget) throw BudgetExceeded("verify_delta_map: q^m exceeds the enumeration budget");
  if (!is_invertible(f, map.matrix)) return false;
  AffineMap linear{map.matrix, Point(), map.frobenius};
  for (std::uint64_t i = 1; i < n; ++i) {
    const Point u = Point::from_index(f, m, i);
    const Point img = linear(f, u);
    if (f.is_square(norm(f, u)) != f.is_square(norm(f, img))) return false;
  }
  return true;
}

LinearAutCount enumerate_aut_linear(const Field& f, unsigned m, unsigned workers,
                                    std::uint64_t budget) {
  const std::uint64_t total = matrix_space(f, m, budget);
  const std::uint64_t n = space_size(f, m);
  std::vector<Point> pts(n);
  std::vector<char> integral(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    pts[i] = Point::from_index(f, m, i);
    integral[i] = static_cast<char>(f.is_square(norm(f, pts[i])));
  }
  const std::size_t chunks = 256;
  std::vector<LinearAutCount> partial(chunks);
  parallel_for(chunks, workers, [&](std::size_t c) {
    const std::uint64_t lo = total * c / chunks, hi = total * (c + 1) / chunks;
    auto& out = partial[c];
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      const SquareMatrix a = matrix_from_index(f, m, idx);
      if (!is_invertible(f, a)) continue;
      ++out.invertible;
      if (!preserves_delta(f, a, pts, integral)) continue;
      ++out.automorphisms;
      if (is_oz(f, a))
        ++out.in_oz;
      else if (!out.outside_oz_example)
        out.outside_oz_example = a;
    }
  });
  LinearAutCount total_count;
  for (auto& p : partial) {
    total_count.invertible += p.invertible;
    total_count.automorphisms += p.automorphisms;
    total_count.in_oz += p.in_oz;
    if (!total_count.outside_oz_example && p.outside_oz_example)
      total_count.outside_oz_example = p.outside_oz_example;
  }
  return total_count;
}

namespace {

// Identity except for the given k x k block acting on coordinates `pos`.
SquareMatrix embed(const SquareMatrix& block, std::size_t m, const std::vector<std::size_t>& pos) {
  SquareMatrix a = SquareMatrix::identity(m);
  for (std::size_t i = 0; i < pos.size(); ++i)
    for (std::size_t j = 0; j < pos.size(); ++j) a(pos[i], pos[j]) = block(i, j);
  return a;
}

SquareMatrix swap_coords(std::size_t m, std::size_t i, std::size_t j) {
  SquareMatrix a = SquareMatrix::identity(m);
  if (i == j) return a;
  a(i, i) = 0;
  a(j, j) = 0;
  a(i, j) = 1;
  a(j, i) = 1;
  return a;
}

// I - (2 / <w,w>) w w^T, for <w,w> != 0.
SquareMatrix reflection(const Field& f, const Point& w) {
  const std::size_t m = w.dim();
  const Elem c = f.div(f.from_int(2), norm(f, w));
  SquareMatrix a = SquareMatrix::identity(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) a(i, j) = f.sub(a(i, j), f.mul(c, f.mul(w[i], w[j])));
  return a;
}

Point truncate(const Point& u) {
  return Point(std::vector<Elem>(u.coords().begin(), u.coords().end() - 1));
}

SquareMatrix extend_by_one(const SquareMatrix& a) {
  const std::size_t m = a.dim() + 1;
  SquareMatrix b = SquareMatrix::identity(m);
  for (std::size_t i = 0; i + 1 < m; ++i)
    for (std::size_t j = 0; j + 1 < m; ++j) b(i, j) = a(i, j);
  return b;
}

SquareMatrix rotation2(const Field& f, Elem alpha, Elem beta) {
  return SquareMatrix(2, {alpha, beta, f.neg(beta), alpha});
}

// O(2,q) element mapping u to v, equal nonzero norms or both isotropic.
SquareMatrix witness2(const Field& f, const Point& u, const Point& v) {
  if (u == v) return SquareMatrix::identity(2);
  const Elem tau = norm(f, u);
  if (tau != 0) {
    const Elem t_inv = f.inv(tau);
    const Elem alpha = f.mul(f.add(f.mul(u[0], v[0]), f.mul(u[1], v[1])), t_inv);
    const Elem beta = f.mul(f.sub(f.mul(u[1], v[0]), f.mul(u[0], v[1])), t_inv);
    return rotation2(f, alpha, beta);
  }
  // Isotropic: u = nu (1, +-w), v = nu' (1, +-w). Rotations act on (1, w) as
  // multiplication by lambda = gamma + delta w.
  const Elem w = f.omega();
  const Elem sign_u = u[1] == f.mul(w, u[0]) ? 1 : f.neg(1);
  const Elem sign_v = v[1] == f.mul(w, v[0]) ? 1 : f.neg(1);
  const Elem lambda = f.div(v[0], u[0]);
  const Elem lambda_inv = f.inv(lambda);
  const Elem half = f.inv(f.from_int(2));
  const Elem gamma = f.mul(half, f.add(lambda, lambda_inv));
  const Elem delta = f.div(f.mul(half, f.sub(lambda, lambda_inv)), w);
  SquareMatrix a = multiply(f, rotation2(f, gamma, delta), SquareMatrix(2, {1, 0, 0, sign_u}));
  return multiply(f, SquareMatrix(2, {1, 0, 0, sign_v}), a);
}

// Canonical representative of the O(3,q)-orbit of vectors with norm tau.
Point canonical3(const Field& f, Elem tau) {
  if (tau == 0) {
    for (std::uint64_t i = 1; i < space_size(f, 3); ++i) {
      Point x = Point::from_index(f, 3, i);
      if (norm(f, x) == 0) return x;
    }
    throw std::logic_error("no isotropic vector in F_q^3");
  }
  if (auto s = f.sqrt(tau)) return Point{*s, 0, 0};
  auto ab = two_squares(f, tau);
  if (!ab) throw std::logic_error("no two-square representation found");
  return Point{ab->first, ab->second, 0};
}

// Orthonormal completion of a unit vector u in F_q^3: returns M = [u v w]
// (as columns) with M^T M = I.
SquareMatrix complete_unit3(const Field& f, const Point& u) {
  std::size_t pivot = 0;
  while (u[pivot] == 0) ++pivot;
  std::vector<Point> basis;
  for (std::size_t i = 0; i < 3; ++i) {
    if (i == pivot) continue;
    Point b = Point::zero(3);
    b[i] = 1;
    b[pivot] = f.neg(f.div(u[i], u[pivot]));
    basis.push_back(b);
  }
  Point vh, other;
  if (norm(f, basis[0]) != 0) {
    vh = basis[0];
    other = basis[1];
  } else if (norm(f, basis[1]) != 0) {
    vh = basis[1];
    other = basis[0];
  } else {
    vh = add(f, basis[0], basis[1]);
    other = basis[0];
  }
  const Elem a = norm(f, vh);
  const Point wh = sub(f, other, scale(f, f.div(inner(f, other, vh), a), vh));
  const Elem b = norm(f, wh);
  if (a == 0 || b == 0) throw std::logic_error("orthogonal complement is degenerate");
  // alpha^2 a + beta^2 b = 1, searched over alpha.
  for (Elem alpha = 0; alpha < f.q(); ++alpha) {
    const Elem rest = f.div(f.sub(1, f.mul(f.sq(alpha), a)), b);
    if (auto beta = f.sqrt(rest)) {
      const Point v = add(f, scale(f, alpha, vh), scale(f, *beta, wh));
      const Point w = cross(f, u, v);
      SquareMatrix m(3);
      for (std::size_t i = 0; i < 3; ++i) {
        m(i, 0) = u[i];
        m(i, 1) = v[i];
        m(i, 2) = w[i];
      }
      return m;
    }
  }
  throw std::logic_error("no representation alpha^2 a + beta^2 b = 1");
}

// Orthogonal T with T u = s, where <u,u> = <s,s> != 0, by one reflection.
SquareMatrix reflect_onto(const Field& f, const Point& u, const Point& s) {
  if (u == s) return SquareMatrix::identity(u.dim());
  const Point d = sub(f, u, s);
  if (norm(f, d) != 0) return reflection(f, d);
  const Point e = add(f, u, s);
  return scaled(f, f.neg(1), reflection(f, e));
}

// Orthogonal T with T u = canonical3(<u,u>).
SquareMatrix to_canonical3(const Field& f, const Point& u) {
  const Elem tau = norm(f, u);
  const Point c = canonical3(f, tau);
  if (u == c) return SquareMatrix::identity(3);
  if (tau == 0) {
    if (inner(f, u, c) != 0) return reflection(f, sub(f, u, c));
    // Route through an isotropic w not orthogonal to either end point.
    for (std::uint64_t i = 1; i < space_size(f, 3); ++i) {
      const Point w = Point::from_index(f, 3, i);
      if (norm(f, w) != 0 || inner(f, u, w) == 0 || inner(f, w, c) == 0) continue;
      return multiply(f, reflection(f, sub(f, w, c)), reflection(f, sub(f, u, w)));
    }
    throw std::logic_error("no intermediate isotropic vector found");
  }
  if (auto nu = f.sqrt(tau)) {
    const Point unit = scale(f, f.inv(*nu), u);
    return transpose(complete_unit3(f, unit));
  }
  // Non-square norm: zero a coordinate with a rotation in a plane where the
  // partial norm is a nonzero square, then solve the planar problem.
  const std::size_t pairs[3][3] = {{1, 2, 0}, {0, 2, 1}, {0, 1, 2}};
  for (const auto& pr : pairs) {
    const std::size_t i = pr[0], j = pr[1], k = pr[2];
    const Elem part = f.add(f.sq(u[i]), f.sq(u[j]));
    auto nu = f.sqrt(part);
    if (part == 0 || !nu) continue;
    const SquareMatrix rot = embed(witness2(f, Point{u[i], u[j]}, Point{*nu, 0}), 3, {i, j});
    // Coordinate j is now zero; move it to the last slot.
    const SquareMatrix perm = swap_coords(3, j, 2);
    const SquareMatrix z = multiply(f, perm, rot);
    const Point zu = apply(f, z, u);
    (void)k;
    const SquareMatrix planar =
        embed(witness2(f, Point{zu[0], zu[1]}, Point{c[0], c[1]}), 3, {0, 1});
    return multiply(f, planar, z);
  }
  return reflect_onto(f, u, c);
}

SquareMatrix witness_rec(const Field& f, const Point& u, const Point& v);

// Orthogonal Z with (Z u)_{m-1} = 0, for m >= 4 and u != 0.
SquareMatrix zero_last(const Field& f, const Point& u) {
  const std::size_t m = u.dim();
  for (std::size_t i = m; i-- > 0;)
    if (u[i] == 0) return swap_coords(m, i, m - 1);
  // A coordinate triple with nonzero partial norm, preferring the last three.
  for (std::size_t h = m - 2; h-- > 0;) {
    for (std::size_t i = m - 1; i-- > h + 1;) {
      for (std::size_t j = m; j-- > i + 1;) {
        const Elem part = f.add(f.add(f.sq(u[h]), f.sq(u[i])), f.sq(u[j]));
        if (part == 0) continue;
        const SquareMatrix t = embed(to_canonical3(f, Point{u[h], u[i], u[j]}), m, {h, i, j});
        return multiply(f, swap_coords(m, j, m - 1), t);
      }
    }
  }
  // Every triple is isotropic: only possible in characteristic 3 with all
  // u_i = +-u_0. Align signs, then use the 4x4 matrix sending (1,1,1,1) to e1.
  if (f.p() != 3) throw std::logic_error("all coordinate triples isotropic outside char 3");
  SquareMatrix d = SquareMatrix::identity(m);
  for (std::size_t i = 0; i < m; ++i) d(i, i) = u[i] == u[0] ? 1 : f.neg(1);
  const Elem two = f.from_int(2);
  const SquareMatrix block(4, {1, 1, 1, 1, 1, 1, two, two, 1, two, 1, two, 1, two, two, 1});
  const SquareMatrix t = multiply(f, embed(block, m, {0, 1, 2, 3}), d);
  return multiply(f, swap_coords(m, 1, m - 1), t);
}

SquareMatrix witness_rec(const Field& f, const Point& u, const Point& v) {
  const std::size_t m = u.dim();
  if (u == v) return SquareMatrix::identity(m);
  if (m == 1) return SquareMatrix::scalar(1, f.neg(1));
  if (m == 2) return witness2(f, u, v);
  if (m == 3) return multiply(f, transpose(to_canonical3(f, v)), to_canonical3(f, u));
  const SquareMatrix zu = zero_last(f, u);
  const SquareMatrix zv = zero_last(f, v);
  const Point tu = truncate(apply(f, zu, u));
  const Point tv = truncate(apply(f, zv, v));
  const SquareMatrix c = extend_by_one(witness_rec(f, tu, tv));
  return multiply(f, transpose(zv), multiply(f, c, zu));
}

}  // namespace

SquareMatrix transitivity_witness(const Field& f, const Point& u, const Point& v) {
  if (u.dim() != v.dim()) throw DimensionError("dimension mismatch");
  if (u.is_zero() || v.is_zero()) throw WitnessError("zero vector has a trivial orbit");
  if (norm(f, u) != norm(f, v)) throw WitnessError("norms differ");
  SquareMatrix a = witness_rec(f, u, v);
  if (!is_orthogonal(f, a) || apply(f, a, u) != v)
    throw std::logic_error("witness construction failed verification for " + format_point(u) +
                           " -> " + format_point(v));
  return a;
}

OrbitCheckReport orbit_partition_check(const Field& f, unsigned m, unsigned random_pairs,
                                       std::uint64_t seed, std::uint64_t exhaustive_limit) {
  if (m < 2) throw std::invalid_argument("orbit_partition_check needs m >= 2");
  OrbitCheckReport rep;
  const std::uint64_t n = space_size(f, m);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(1, n - 1);

  const NormClass classes[] = {NormClass::Plus, NormClass::Zero, NormClass::Minus};
  // A few sample points of every class for the cross-class check.
  std::vector<Point> probes;
  for (NormClass cls : classes) {
    unsigned found = 0;
    for (std::uint64_t i = 1; i < n && found < 4; ++i) {
      Point x = Point::from_index(f, m, i);
      if (norm_class(f, x) == cls) {
        probes.push_back(std::move(x));
        ++found;
      }
    }
  }

  auto check_pair = [&](const Point& u, const Point& v) {
    const Elem nu = norm(f, u), nv = norm(f, v);
    Elem s = 1;
    if (nu != 0) {
      auto root = f.sqrt(f.div(nv, nu));
      if (!root) {
        rep.ok = false;
        rep.failure = "norm ratio not a square for " + format_point(u) + ", " + format_point(v);
        return;
      }
      s = *root;
    }
    const SquareMatrix b = scaled(f, s, transitivity_witness(f, scale(f, s, u), v));
    ++rep.pairs;
    if (!is_oz(f, b) || apply(f, b, u) != v) {
      rep.ok = false;
      rep.failure = "OZ witness failed for " + format_point(u) + " -> " + format_point(v);
      return;
    }
    for (const auto& x : probes) {
      ++rep.cross_checks;
      if (norm_class(f, apply(f, b, x)) != norm_class(f, x)) {
        rep.ok = false;
        rep.failure = "OZ element " + format_matrix(b) + " moves " + format_point(x) +
                      " across norm classes";
        return;
      }
    }
  };

  for (NormClass cls : classes) {
    std::vector<Point> members;
    if (n <= exhaustive_limit) {
      for (std::uint64_t i = 1; i < n; ++i) {
        Point x = Point::from_index(f, m, i);
        if (norm_class(f, x) == cls) members.push_back(std::move(x));
      }
      for (std::size_t i = 1; i < members.size() && rep.ok; ++i) check_pair(members[0], members[i]);
    } else {
      // Skip classes that are empty (P0 for m = 2, q = 3 mod 4).
      if (cls == NormClass::Zero && m == 2 && f.q() % 4 == 3) continue;
      auto sample = [&] {
        while (true) {
          Point x = Point::from_index(f, m, pick(rng));
          if (norm_class(f, x) == cls) return x;
        }
      };
      for (unsigned k = 0; k < random_pairs && rep.ok; ++k) {
        const Point u = sample();
        const Point v = sample();
        check_pair(u, v);
      }
    }
    if (!rep.ok) break;
  }
  return rep;
}

}  // namespace qfint
