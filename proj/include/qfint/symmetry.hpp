#pragma once

// Orthogonal groups O(m,q), their scalar extension OZ(m,q), automorphisms of
// F_q^m with respect to integral distances, and orbit witnesses.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qfint/counting.hpp"
#include "qfint/ffield.hpp"
#include "qfint/geometry.hpp"

namespace qfint {

class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t m) : m_(m), a_(m * m, 0) {}
  SquareMatrix(std::size_t m, std::vector<Elem> row_major);

  static SquareMatrix identity(std::size_t m);
  static SquareMatrix scalar(std::size_t m, Elem s);

  std::size_t dim() const { return m_; }
  Elem operator()(std::size_t i, std::size_t j) const { return a_[i * m_ + j]; }
  Elem& operator()(std::size_t i, std::size_t j) { return a_[i * m_ + j]; }
  const std::vector<Elem>& entries() const { return a_; }

  bool operator==(const SquareMatrix&) const = default;

 private:
  std::size_t m_ = 0;
  std::vector<Elem> a_;
};

SquareMatrix multiply(const Field& f, const SquareMatrix& a, const SquareMatrix& b);
SquareMatrix transpose(const SquareMatrix& a);
SquareMatrix scaled(const Field& f, Elem s, const SquareMatrix& a);
Point apply(const Field& f, const SquareMatrix& a, const Point& u);
bool is_invertible(const Field& f, const SquareMatrix& a);

bool is_orthogonal(const Field& f, const SquareMatrix& a);
bool is_oz(const Field& f, const SquareMatrix& a);

// Rows separated by ';', entries by ','.
std::string format_matrix(const SquareMatrix& a);
SquareMatrix parse_matrix(std::string_view text);

// u -> A * frob_i(u) + t.
struct AffineMap {
  SquareMatrix matrix;
  Point translation;
  std::uint32_t frobenius = 0;

  Point operator()(const Field& f, const Point& u) const;
};

struct GroupOrderRecord {
  unsigned m = 0;
  std::uint64_t q = 0;
  BigInt order_O;
  BigInt order_OZ;
};

BigInt order_GL(unsigned m, std::uint64_t q);
BigInt order_O(unsigned m, std::uint64_t q);
BigInt order_OZ(unsigned m, std::uint64_t q);  // m >= 2
GroupOrderRecord group_orders(unsigned m, std::uint64_t q);

// Exhaustive count of matrices with A^T A = I over all q^(m^2) matrices.
std::uint64_t enumerate_O_brute(const Field& f, unsigned m, unsigned workers = 1,
                                std::uint64_t budget = 100'000'000);

// True iff f preserves Delta on every pair of points. Uses that f(u) - f(v)
// depends only on u - v, so q^m differences are checked.
bool verify_delta_map(const Field& f, const AffineMap& map,
                      std::uint64_t budget = kDefaultEnumerationBudget);

struct LinearAutCount {
  std::uint64_t invertible = 0;  // |GL(m,q)| observed
  std::uint64_t automorphisms = 0;
  std::uint64_t in_oz = 0;
  std::optional<SquareMatrix> outside_oz_example;
};

// Counts invertible matrices preserving Delta, split by OZ membership.
LinearAutCount enumerate_aut_linear(const Field& f, unsigned m, unsigned workers = 1,
                                    std::uint64_t budget = 100'000'000);

class WitnessError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A in O(m,q) with A u = v for nonzero u, v of equal norm. The result is
// re-verified before it is returned; a construction that fails verification
// throws std::logic_error.
SquareMatrix transitivity_witness(const Field& f, const Point& u, const Point& v);

struct OrbitCheckReport {
  bool ok = true;
  std::uint64_t pairs = 0;
  std::uint64_t cross_checks = 0;
  std::string failure;
};

// Within each of P+, P0, P- produces verified OZ witnesses between pairs
// (exhaustively from a base point when q^m <= exhaustive_limit, else
// `random_pairs` random pairs per class), and checks that every produced
// matrix preserves the norm class of sampled points of every class.
OrbitCheckReport orbit_partition_check(const Field& f, unsigned m, unsigned random_pairs = 100,
                                       std::uint64_t seed = 1,
                                       std::uint64_t exhaustive_limit = 4096);

}  // namespace qfint
