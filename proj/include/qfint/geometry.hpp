#pragma once

// Points of F_q^m, the standard bilinear form, squared distances and the
// integrality predicate.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qfint/ffield.hpp"

namespace qfint {

class Point {
 public:
  Point() = default;
  explicit Point(std::vector<Elem> coords) : coords_(std::move(coords)) {}
  Point(std::initializer_list<Elem> coords) : coords_(coords) {}

  static Point zero(std::size_t m) { return Point(std::vector<Elem>(m, 0)); }
  static Point unit(std::size_t m, std::size_t i);
  // Inverse of index(): coordinate 0 is the least significant digit.
  static Point from_index(const Field& f, std::size_t m, std::uint64_t index);

  std::size_t dim() const { return coords_.size(); }
  Elem operator[](std::size_t i) const { return coords_[i]; }
  Elem& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Elem>& coords() const { return coords_; }
  bool is_zero() const;

  // Canonical index sum coords[i] * q^i.
  std::uint64_t index(const Field& f) const;

  auto operator<=>(const Point&) const = default;

 private:
  std::vector<Elem> coords_;
};

using PointSet = std::vector<Point>;

enum class NormClass : std::uint8_t { Origin, Plus, Zero, Minus };

const char* to_string(NormClass c);

struct PythTriple {
  Elem alpha;
  Elem beta;
  Elem gamma;
  auto operator<=>(const PythTriple&) const = default;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// q^m, throwing if it does not fit the 64-bit index space.
std::uint64_t space_size(const Field& f, std::size_t m);

Point add(const Field& f, const Point& u, const Point& v);
Point sub(const Field& f, const Point& u, const Point& v);
Point scale(const Field& f, Elem s, const Point& u);

Elem inner(const Field& f, const Point& u, const Point& v);
Elem norm(const Field& f, const Point& u);  // <u,u>
Elem sq_dist(const Field& f, const Point& u, const Point& v);
bool is_integral(const Field& f, const Point& u, const Point& v);
Point cross(const Field& f, const Point& u, const Point& v);
NormClass norm_class(const Field& f, const Point& u);
NormClass norm_class_of_value(const Field& f, Elem norm_value);

// The solutions (alpha, beta) of alpha^2 + beta^2 = gamma^2, via the
// parametrisation: axis solutions first, then increasing tau.
std::vector<PythTriple> pyth_triples(const Field& f, Elem gamma);
std::vector<PythTriple> pyth_triples_brute(const Field& f, Elem gamma);

// |{(a, b) : a^2 + b^2 = gamma}| by the closed form and by enumeration.
std::uint64_t count_circle(const Field& f, Elem gamma);
std::uint64_t count_circle_brute(const Field& f, Elem gamma);

// First (alpha, beta) in canonical order with alpha^2 + beta^2 = target.
std::optional<std::pair<Elem, Elem>> two_squares(const Field& f, Elem target);

// Text formats. A point is `(c1,c2,...)` with canonical encodings; a point-set
// file has a header `q=<descriptor> m=<dim>` followed by one point per line.
std::string format_point(const Point& u);
Point parse_point(std::string_view text);
// Points separated by ';', e.g. "(0,0,0);(1,0,0)".
PointSet parse_point_list(std::string_view text);

struct PointSetFile {
  Field field;
  std::size_t dim;
  PointSet points;
};

void write_point_set(std::ostream& os, const Field& f, std::size_t m, const PointSet& pts);
PointSetFile read_point_set(std::istream& is);

}  // namespace qfint
