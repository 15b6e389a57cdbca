#pragma once

// Point counts by norm class (S, Z, N), the degree D of the integral-distance
// graph, common-neighbour counts, and strong-regularity analysis.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qfint/ffield.hpp"
#include "qfint/geometry.hpp"

namespace qfint {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 200'000'000;

enum class CountMethod { Recursive, Closed, Brute, Trivial };
const char* to_string(CountMethod m);

// S: nonzero-square norm, Z: zero norm (including the origin), N: non-square
// norm, D = S + Z - 1 the degree of the integral-distance graph.
struct CountRecord {
  unsigned m = 0;
  std::uint64_t q = 0;
  BigInt S, Z, N, D;
  CountMethod method = CountMethod::Closed;

  bool same_counts(const CountRecord& o) const {
    return m == o.m && q == o.q && S == o.S && Z == o.Z && N == o.N && D == o.D;
  }
};

BigInt big_pow(std::uint64_t base, unsigned e);
// (-1)^e as +1 or -1 from an integer exponent.
int sign_pow(std::uint64_t e);

// Characteristic 2: every distance is integral, D = q^m - 1.
CountRecord counts_even_characteristic(unsigned m, std::uint64_t q);
// Base cases m = 1, 2 and the two-step recursion; even q goes to the trivial
// branch. Throws std::invalid_argument for m = 0 or q not a prime power.
CountRecord counts_recursive(unsigned m, std::uint64_t q);
// Closed forms; throws for even q.
CountRecord counts_closed(unsigned m, std::uint64_t q);
// Tallies every point of F_q^m. Throws BudgetExceeded above `budget` points.
CountRecord counts_brute(const Field& f, unsigned m, unsigned workers = 1,
                         std::uint64_t budget = 10'000'000);

// Common neighbours of 0 and e1 (closed form), for odd q.
BigInt common_adjacent_closed(unsigned m, std::uint64_t q);
// |{w not in {u, v} : Delta(u, w) = Delta(v, w) = 1}| by enumeration.
std::uint64_t common_neighbors_brute(const Field& f, const Point& u, const Point& v,
                                     unsigned workers = 1,
                                     std::uint64_t budget = kDefaultEnumerationBudget);
// Conjectured common neighbours of 0 and an isotropic v (unproven).
BigInt conjectured_B(unsigned m, std::uint64_t q);
// Common neighbours of 0 and a non-square-norm v implied by the identity
// S*A + (Z-1)*B + N*C = k(k-1), with B taken from the conjecture. Nullopt when
// the quotient is not an integer.
std::optional<BigInt> implied_nonsquare_common(unsigned m, std::uint64_t q);

struct SrgReport {
  unsigned m = 0;
  std::uint64_t q = 0;
  BigInt v, k, lambda;
  BigRational mu;  // solves (v - k - 1) mu = k (k - lambda - 1)
  bool mu_integral = false;
  std::optional<bool> is_srg;
  std::string decided_by;  // "odd_dimension", "parameters", "brute", or empty
};

// Closing-display formula for mu when m is even.
BigInt srg_mu_even_closed(unsigned m, std::uint64_t q);
// The same for odd m, as an exact fraction with denominator 4q.
BigRational srg_mu_odd_closed(unsigned m, std::uint64_t q);

// Pair-count budget for the brute-force strong-regularity check is q^(2m).
SrgReport srg_report(const Field& f, unsigned m, unsigned workers = 1,
                     std::uint64_t pair_budget = 500'000'000);

struct ConjectureCheck {
  std::uint64_t p = 0;
  NormClass cls = NormClass::Plus;
  Point v;
  std::uint64_t observed = 0;
  BigInt predicted;
};

struct ConjectureReport {
  unsigned m = 0;
  std::uint64_t p_max = 0;
  std::vector<std::uint64_t> primes;
  std::vector<ConjectureCheck> checks;
  std::optional<ConjectureCheck> counterexample;
  bool agreement() const { return !counterexample.has_value(); }
};

// For every odd prime p <= p_max compares brute-force common-neighbour counts
// of 0 and one canonical plus `samples` random representatives per norm class
// against A, the conjectured B, and the implied non-square count.
ConjectureReport verify_conjecture(unsigned m, std::uint64_t p_max, unsigned samples = 5,
                                   std::uint64_t seed = 1, unsigned workers = 1);

std::string to_string(const BigInt& x);
std::string to_string(const BigRational& x);

}  // namespace qfint
