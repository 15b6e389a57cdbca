#pragma once

// Explicit integral point sets giving lower bounds for I(m,q), and a plane
// whose distances avoid the nonzero squares.

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qfint/ffield.hpp"
#include "qfint/geometry.hpp"

namespace qfint {

class ConstructionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// {(a, 0, ..., 0)}.
PointSet line(const Field& f, unsigned m);
// {(a, w a, b)} with w^2 = -1; q = 1 mod 4.
PointSet hyperplane_q1mod4(const Field& f);
// Squares of the unit circle of F_q[x]/(x^2+1) in the plane z = 0, plus
// {(0,0,t) : t^2 + 1 square}; q = 3 mod 4. Verified before return; if the
// circle part fails, it is replaced by a maximum integral subset of the circle
// and `warning` (when given) is set.
PointSet circle_plus_line(const Field& f, std::string* warning = nullptr);
// span{u, v}, u = (a,b,1,1), v = (-b,a,-1,1), a^2 + b^2 = -2: q^2 points at
// pairwise squared distance 0.
PointSet isotropic_plane_4d(const Field& f);
// {(a, w a)}: q points of F_q^2 at pairwise squared distance 0; q = 1 mod 4.
PointSet isotropic_line_2d(const Field& f);
// Concatenations (u, v); p2 must have all squared distances zero.
PointSet product(const Field& f, const PointSet& p1, const PointSet& p2);
// span{(a,b,1), (-b,a,0)}, a^2 + b^2 = -1; q = 3 mod 4. Every squared
// distance is 0 or a non-square.
PointSet nonintegral_plane(const Field& f);

// A 28-point candidate set in F_27^3, in polynomial notation over
// F_3[w]/(w^3+w^2+w+2). As listed, (1,0,0) is at a non-square squared
// distance from 14 of the others; the remaining 27 points are pairwise
// integral and no point of F_27^3 extends them.
inline constexpr const char* kF27Modulus = "3^3:2,1,1,1";
const std::vector<std::array<const char*, 3>>& f27_example_poly();
// The same points as canonical encodings; f must use the modulus above.
PointSet f27_example(const Field& f);

struct LowerBound {
  std::uint64_t value = 0;
  PointSet witness;
  std::string description;
};

// q^ceil(m/2) for q = 1 mod 4, q^(2 floor(m/4)) * (q if 4 does not divide m)
// for q = 3 mod 4, with its witness when it has at most `materialize_limit`
// points.
LowerBound lower_bound(const Field& f, unsigned m, std::uint64_t materialize_limit = 1'000'000);

struct Construction {
  std::string name;
  std::map<std::string, std::string> parameters;
  unsigned dim = 0;
  PointSet points;
  std::uint64_t claimed = 0;
};

// Builds a named construction: line, hyperplane_q1mod4, circle_plus_line,
// isotropic_plane_4d, product (isotropic line pairs times a line, or 4d planes
// times a line; the lower-bound witness for m), nonintegral_plane.
Construction build_construction(const std::string& name, const Field& f, unsigned m = 0);
// The defining predicate: pairwise integral, or for nonintegral_plane every
// squared distance 0 or a non-square. Also checks the claimed cardinality.
bool verify_construction(const Field& f, const Construction& c, std::string* failure = nullptr);

}  // namespace qfint
