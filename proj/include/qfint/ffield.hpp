#pragma once

// Finite fields F_q, q = p^r with p an odd prime.
//
// Elements are encoded as integers 0 <= x < q by packing the coefficients of
// the polynomial representative in base p: c_0 + c_1 p + ... + c_{r-1} p^{r-1}.
// This encoding is shared by every module (point indices, DIMACS vertex ids,
// text formats), so 0 and 1 always encode the field's zero and one.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qfint {

using Elem = std::uint32_t;

enum class QuadClass : std::uint8_t { Zero, Square, NonSquare };

const char* to_string(QuadClass c);

class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {
struct FieldTables;
}

// Immutable handle to a finite field. Copies share the same tables and may be
// used concurrently from any number of threads.
class Field {
 public:
  std::uint32_t p() const;
  std::uint32_t r() const;
  std::uint32_t q() const;
  // Monic modulus, constant term first, length r + 1.
  const std::vector<std::uint32_t>& modulus() const;
  bool is_prime_field() const { return r() == 1; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  // Image of an integer under Z -> F_p -> F_q.
  Elem from_int(long long v) const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;  // throws FieldError on 0
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem sq(Elem a) const { return mul(a, a); }
  // Exponent is reduced mod (q-1) for nonzero base; 0^0 == 1.
  Elem pow(Elem a, long long e) const;

  QuadClass quad_class(Elem a) const;
  // Euler's criterion, independent of the lookup table.
  QuadClass quad_class_by_power(Elem a) const;
  // True iff a lies in the set of squares (including 0).
  bool is_square(Elem a) const { return quad_class(a) != QuadClass::NonSquare; }
  // Smaller-encoded root of a, if a is a square.
  std::optional<Elem> sqrt(Elem a) const;
  // Square root of -1 with the smaller encoding; throws unless q = 1 mod 4.
  Elem omega() const;
  bool minus_one_is_square() const { return q() % 4 == 1; }
  // x^(p^i), 0 <= i < r.
  Elem frobenius(Elem a, std::uint32_t i) const;
  // Some fixed non-square (the smallest encoded one).
  Elem non_square() const;

  // `p` for prime fields, `p^r:c0,c1,...,cr` otherwise.
  std::string descriptor() const;
  // Polynomial notation in the generator w, e.g. "2+w+2w^2".
  std::string to_poly_string(Elem a) const;
  // Inverse of to_poly_string; also accepts unnormalised forms like "1w+0".
  Elem parse_poly(std::string_view text) const;

  bool operator==(const Field& other) const;
  bool operator!=(const Field& other) const { return !(*this == other); }

 private:
  friend Field make_field(std::uint32_t, std::uint32_t,
                          std::optional<std::vector<std::uint32_t>>);
  explicit Field(std::shared_ptr<const detail::FieldTables> t)
      : t_(std::move(t)) {}
  std::shared_ptr<const detail::FieldTables> t_;
};

// Builds F_{p^r}. Without a modulus, r > 1 picks the lexicographically smallest
// monic irreducible polynomial ordered by (c_0, ..., c_{r-1}).
// Throws FieldError for even or non-prime p, r < 1, q > 2^16, or a modulus that
// is not monic of degree r or not irreducible.
Field make_field(std::uint32_t p, std::uint32_t r,
                 std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

// Parses `p`, `p^r` or `p^r:c0,...,cr`, and also accepts a plain prime power
// such as `9`.
Field parse_field(std::string_view text);

// Decomposes q = p^r; nullopt unless q is a prime power >= 2.
std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q);
bool is_prime(std::uint64_t n);

// Irreducibility of a monic polynomial over F_p (constant term first).
bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly);

// Checked element wrapper for API-level arithmetic. Operations between elements
// of different fields throw FieldError.
class FieldElement {
 public:
  FieldElement(const Field& f, Elem v);

  const Field& field() const { return f_; }
  Elem value() const { return v_; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement inv() const;
  FieldElement pow(long long e) const;
  FieldElement frobenius(std::uint32_t i) const;
  QuadClass quad_class() const { return f_.quad_class(v_); }
  std::optional<FieldElement> sqrt() const;

  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

 private:
  void check_same(const FieldElement& o) const;
  Field f_;
  Elem v_;
};

}  // namespace qfint
