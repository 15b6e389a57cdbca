#include "qfint/geometry.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace qfint {

const char* to_string(NormClass c) {
  switch (c) {
    case NormClass::Origin:
      return "origin";
    case NormClass::Plus:
      return "plus";
    case NormClass::Zero:
      return "zero";
    case NormClass::Minus:
      return "minus";
  }
  return "?";
}

Point Point::unit(std::size_t m, std::size_t i) {
  Point u = zero(m);
  u[i] = 1;
  return u;
}

Point Point::from_index(const Field& f, std::size_t m, std::uint64_t index) {
  std::vector<Elem> c(m);
  for (std::size_t i = 0; i < m; ++i) {
    c[i] = static_cast<Elem>(index % f.q());
    index /= f.q();
  }
  return Point(std::move(c));
}

bool Point::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](Elem x) { return x == 0; });
}

std::uint64_t Point::index(const Field& f) const {
  std::uint64_t idx = 0;
  for (std::size_t i = coords_.size(); i-- > 0;) idx = idx * f.q() + coords_[i];
  return idx;
}

std::uint64_t space_size(const Field& f, std::size_t m) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (n > std::numeric_limits<std::uint64_t>::max() / f.q())
      throw DimensionError("q^m exceeds the 64-bit index range");
    n *= f.q();
  }
  return n;
}

namespace {

void check_dims(const Point& u, const Point& v) {
  if (u.dim() != v.dim())
    throw DimensionError("dimension mismatch: " + std::to_string(u.dim()) + " vs " +
                         std::to_string(v.dim()));
}

void check_coords(const Field& f, const Point& u) {
  for (std::size_t i = 0; i < u.dim(); ++i)
    if (u[i] >= f.q()) throw DimensionError("coordinate outside the field");
}

}  // namespace

Point add(const Field& f, const Point& u, const Point& v) {
  check_dims(u, v);
  Point w = u;
  for (std::size_t i = 0; i < u.dim(); ++i) w[i] = f.add(u[i], v[i]);
  return w;
}

Point sub(const Field& f, const Point& u, const Point& v) {
  check_dims(u, v);
  Point w = u;
  for (std::size_t i = 0; i < u.dim(); ++i) w[i] = f.sub(u[i], v[i]);
  return w;
}

Point scale(const Field& f, Elem s, const Point& u) {
  Point w = u;
  for (std::size_t i = 0; i < u.dim(); ++i) w[i] = f.mul(s, u[i]);
  return w;
}

Elem inner(const Field& f, const Point& u, const Point& v) {
  check_dims(u, v);
  check_coords(f, u);
  check_coords(f, v);
  Elem s = 0;
  for (std::size_t i = 0; i < u.dim(); ++i) s = f.add(s, f.mul(u[i], v[i]));
  return s;
}

Elem norm(const Field& f, const Point& u) { return inner(f, u, u); }

Elem sq_dist(const Field& f, const Point& u, const Point& v) {
  check_dims(u, v);
  check_coords(f, u);
  check_coords(f, v);
  Elem s = 0;
  for (std::size_t i = 0; i < u.dim(); ++i) s = f.add(s, f.sq(f.sub(u[i], v[i])));
  return s;
}

bool is_integral(const Field& f, const Point& u, const Point& v) {
  return f.is_square(sq_dist(f, u, v));
}

Point cross(const Field& f, const Point& u, const Point& v) {
  if (u.dim() != 3 || v.dim() != 3) throw DimensionError("cross product needs m = 3");
  return Point{f.sub(f.mul(u[1], v[2]), f.mul(u[2], v[1])),
               f.sub(f.mul(u[2], v[0]), f.mul(u[0], v[2])),
               f.sub(f.mul(u[0], v[1]), f.mul(u[1], v[0]))};
}

NormClass norm_class_of_value(const Field& f, Elem norm_value) {
  switch (f.quad_class(norm_value)) {
    case QuadClass::Zero:
      return NormClass::Zero;
    case QuadClass::Square:
      return NormClass::Plus;
    case QuadClass::NonSquare:
      return NormClass::Minus;
  }
  return NormClass::Minus;
}

NormClass norm_class(const Field& f, const Point& u) {
  if (u.is_zero()) return NormClass::Origin;
  return norm_class_of_value(f, norm(f, u));
}

std::vector<PythTriple> pyth_triples(const Field& f, Elem gamma) {
  std::vector<PythTriple> out;
  if (gamma == 0) {
    out.push_back({0, 0, 0});
    if (f.minus_one_is_square()) {
      const Elem w = f.omega();
      for (Elem t = 1; t < f.q(); ++t) {
        out.push_back({t, f.mul(t, w), 0});
        out.push_back({t, f.neg(f.mul(t, w)), 0});
      }
    }
    return out;
  }
  const Elem ng = f.neg(gamma);
  out.push_back({gamma, 0, gamma});
  out.push_back({ng, 0, gamma});
  out.push_back({0, gamma, gamma});
  out.push_back({0, ng, gamma});
  const Elem minus_one = f.neg(1);
  for (Elem t = 1; t < f.q(); ++t) {
    const Elem t2 = f.sq(t);
    if (t2 == 1 || t2 == minus_one) continue;
    const Elem denom = f.inv(f.add(t2, 1));
    out.push_back({f.mul(f.mul(f.sub(t2, 1), denom), gamma),
                   f.mul(f.mul(f.add(t, t), denom), gamma), gamma});
  }
  return out;
}

std::vector<PythTriple> pyth_triples_brute(const Field& f, Elem gamma) {
  std::vector<PythTriple> out;
  const Elem g2 = f.sq(gamma);
  for (Elem a = 0; a < f.q(); ++a)
    for (Elem b = 0; b < f.q(); ++b)
      if (f.add(f.sq(a), f.sq(b)) == g2) out.push_back({a, b, gamma});
  return out;
}

std::uint64_t count_circle(const Field& f, Elem gamma) {
  const std::uint64_t q = f.q();
  const bool one_mod_four = q % 4 == 1;
  if (gamma == 0) return one_mod_four ? 2 * q - 1 : 1;
  return one_mod_four ? q - 1 : q + 1;
}

std::uint64_t count_circle_brute(const Field& f, Elem gamma) {
  std::uint64_t n = 0;
  for (Elem a = 0; a < f.q(); ++a)
    for (Elem b = 0; b < f.q(); ++b)
      if (f.add(f.sq(a), f.sq(b)) == gamma) ++n;
  return n;
}

std::optional<std::pair<Elem, Elem>> two_squares(const Field& f, Elem target) {
  for (Elem a = 0; a < f.q(); ++a) {
    if (auto b = f.sqrt(f.sub(target, f.sq(a)))) return std::make_pair(a, *b);
  }
  return std::nullopt;
}

std::string format_point(const Point& u) {
  std::string s = "(";
  for (std::size_t i = 0; i < u.dim(); ++i) {
    if (i) s += ',';
    s += std::to_string(u[i]);
  }
  s += ')';
  return s;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Point parse_point(std::string_view text) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '(' || text.back() != ')')
    throw std::invalid_argument("malformed point '" + std::string(text) + "'");
  text = text.substr(1, text.size() - 2);
  std::vector<Elem> coords;
  while (true) {
    const auto comma = text.find(',');
    auto tok = trim(text.substr(0, comma));
    Elem v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty())
      throw std::invalid_argument("malformed coordinate '" + std::string(tok) + "'");
    coords.push_back(v);
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return Point(std::move(coords));
}

PointSet parse_point_list(std::string_view text) {
  PointSet pts;
  text = trim(text);
  if (text.empty()) return pts;
  while (true) {
    const auto semi = text.find(';');
    pts.push_back(parse_point(text.substr(0, semi)));
    if (semi == std::string_view::npos) break;
    text = text.substr(semi + 1);
  }
  return pts;
}

void write_point_set(std::ostream& os, const Field& f, std::size_t m, const PointSet& pts) {
  os << "q=" << f.descriptor() << " m=" << m << '\n';
  for (const auto& u : pts) os << format_point(u) << '\n';
}

PointSetFile read_point_set(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw std::invalid_argument("empty point-set file");
  std::istringstream hs(header);
  std::string qtok, mtok;
  hs >> qtok >> mtok;
  if (qtok.rfind("q=", 0) != 0 || mtok.rfind("m=", 0) != 0)
    throw std::invalid_argument("point-set header must be 'q=<field> m=<dim>'");
  PointSetFile out{parse_field(qtok.substr(2)), std::stoul(mtok.substr(2)), {}};
  std::string line;
  while (std::getline(is, line)) {
    if (trim(line).empty() || trim(line).front() == '#') continue;
    Point u = parse_point(line);
    if (u.dim() != out.dim) throw DimensionError("point " + line + " has wrong dimension");
    for (std::size_t i = 0; i < u.dim(); ++i)
      if (u[i] >= out.field.q()) throw DimensionError("coordinate outside the field in " + line);
    out.points.push_back(std::move(u));
  }
  return out;
}

}  // namespace qfint
