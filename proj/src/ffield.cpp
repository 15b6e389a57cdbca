#include "qfint/ffield.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <sstream>

namespace qfint {

const char* to_string(QuadClass c) {
  switch (c) {
    case QuadClass::Zero:
      return "zero";
    case QuadClass::Square:
      return "square";
    case QuadClass::NonSquare:
      return "nonsquare";
  }
  return "?";
}

namespace detail {

constexpr std::uint32_t kMaxOrder = 1u << 16;
constexpr std::uint32_t kAddTableLimit = 1024;

struct FieldTables {
  std::uint32_t p = 0;
  std::uint32_t r = 0;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> modulus;

  // Extension fields only.
  std::vector<Elem> exp;             // exp[k] = g^k, k in [0, q-1)
  std::vector<std::uint32_t> log;    // log[x] for x != 0
  std::vector<std::uint16_t> add;    // q*q, when q <= kAddTableLimit
  std::vector<std::uint16_t> sub;

  std::vector<Elem> neg;
  std::vector<Elem> inv;
  std::vector<QuadClass> quad;
  std::vector<std::int32_t> sqrt;    // -1 when absent
  Elem non_square = 0;
};

namespace {

std::vector<std::uint32_t> digits(std::uint32_t p, std::uint32_t r, Elem x) {
  std::vector<std::uint32_t> d(r);
  for (std::uint32_t i = 0; i < r; ++i) {
    d[i] = x % p;
    x /= p;
  }
  return d;
}

Elem pack(std::uint32_t p, const std::vector<std::uint32_t>& d) {
  Elem x = 0;
  for (std::size_t i = d.size(); i-- > 0;) x = x * p + d[i];
  return x;
}

// Product of two residues mod (modulus), both of degree < r.
Elem poly_mulmod(std::uint32_t p, const std::vector<std::uint32_t>& modulus,
                 Elem a, Elem b) {
  const std::uint32_t r = static_cast<std::uint32_t>(modulus.size()) - 1;
  auto da = digits(p, r, a);
  auto db = digits(p, r, b);
  std::vector<std::uint64_t> prod(2 * r, 0);
  for (std::uint32_t i = 0; i < r; ++i)
    for (std::uint32_t j = 0; j < r; ++j) prod[i + j] += std::uint64_t{da[i]} * db[j];
  for (auto& c : prod) c %= p;
  for (std::uint32_t k = 2 * r - 1; k >= r; --k) {
    const std::uint64_t c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    // x^k = x^(k-r) * x^r and x^r = -(m_0 + ... + m_{r-1} x^{r-1}).
    for (std::uint32_t i = 0; i < r; ++i) {
      prod[k - r + i] = (prod[k - r + i] + c * (p - modulus[i])) % p;
    }
  }
  std::vector<std::uint32_t> out(r);
  for (std::uint32_t i = 0; i < r; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
  return pack(p, out);
}

std::shared_ptr<FieldTables> build_tables(std::uint32_t p, std::uint32_t r,
                                          std::vector<std::uint32_t> modulus) {
  auto t = std::make_shared<FieldTables>();
  t->p = p;
  t->r = r;
  t->modulus = std::move(modulus);
  std::uint32_t q = 1;
  for (std::uint32_t i = 0; i < r; ++i) q *= p;
  t->q = q;

  if (r > 1) {
    t->exp.resize(q - 1);
    t->log.assign(q, 0);
    for (Elem g = 2; g < q; ++g) {
      Elem x = 1;
      std::uint32_t k = 0;
      bool primitive = true;
      do {
        if (k >= q - 1) {
          primitive = false;
          break;
        }
        t->exp[k++] = x;
        x = poly_mulmod(p, t->modulus, x, g);
      } while (x != 1);
      if (primitive && k == q - 1) break;
    }
    for (std::uint32_t k = 0; k + 1 < q; ++k) t->log[t->exp[k]] = k;
    t->neg.resize(q);
    for (Elem a = 0; a < q; ++a) {
      auto d = digits(p, r, a);
      for (auto& c : d) c = (p - c) % p;
      t->neg[a] = pack(p, d);
    }
    if (q <= kAddTableLimit) {
      t->add.resize(std::size_t{q} * q);
      t->sub.resize(std::size_t{q} * q);
      for (Elem a = 0; a < q; ++a) {
        auto da = digits(p, r, a);
        for (Elem b = 0; b < q; ++b) {
          auto db = digits(p, r, b);
          std::vector<std::uint32_t> s(r), d(r);
          for (std::uint32_t i = 0; i < r; ++i) {
            s[i] = (da[i] + db[i]) % p;
            d[i] = (da[i] + p - db[i]) % p;
          }
          t->add[std::size_t{a} * q + b] = static_cast<std::uint16_t>(pack(p, s));
          t->sub[std::size_t{a} * q + b] = static_cast<std::uint16_t>(pack(p, d));
        }
      }
    }
  }
  return t;
}

}  // namespace
}  // namespace detail

std::uint32_t Field::p() const { return t_->p; }
std::uint32_t Field::r() const { return t_->r; }
std::uint32_t Field::q() const { return t_->q; }
const std::vector<std::uint32_t>& Field::modulus() const { return t_->modulus; }

Elem Field::from_int(long long v) const {
  const long long p = t_->p;
  return static_cast<Elem>(((v % p) + p) % p);
}

Elem Field::add(Elem a, Elem b) const {
  const auto& t = *t_;
  if (t.r == 1) {
    Elem s = a + b;
    return s >= t.p ? s - t.p : s;
  }
  if (!t.add.empty()) return t.add[std::size_t{a} * t.q + b];
  Elem out = 0, scale = 1;
  for (std::uint32_t i = 0; i < t.r; ++i) {
    out += ((a % t.p + b % t.p) % t.p) * scale;
    a /= t.p;
    b /= t.p;
    scale *= t.p;
  }
  return out;
}

Elem Field::sub(Elem a, Elem b) const {
  const auto& t = *t_;
  if (t.r == 1) return a >= b ? a - b : a + t.p - b;
  if (!t.sub.empty()) return t.sub[std::size_t{a} * t.q + b];
  return add(a, t.neg[b]);
}

Elem Field::neg(Elem a) const { return t_->neg[a]; }

Elem Field::mul(Elem a, Elem b) const {
  const auto& t = *t_;
  if (t.r == 1) return static_cast<Elem>(std::uint64_t{a} * b % t.p);
  if (a == 0 || b == 0) return 0;
  std::uint32_t k = t.log[a] + t.log[b];
  if (k >= t.q - 1) k -= t.q - 1;
  return t.exp[k];
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw FieldError("inversion of zero");
  return t_->inv[a];
}

Elem Field::pow(Elem a, long long e) const {
  const auto& t = *t_;
  if (a == 0) {
    if (e == 0) return 1;
    if (e < 0) throw FieldError("negative power of zero");
    return 0;
  }
  const long long order = t.q - 1;
  long long k = e % order;
  if (k < 0) k += order;
  if (t.r > 1) {
    return t.exp[static_cast<std::uint32_t>((std::uint64_t{t.log[a]} * k) % order)];
  }
  std::uint64_t base = a, acc = 1;
  auto ek = static_cast<std::uint64_t>(k);
  while (ek) {
    if (ek & 1) acc = acc * base % t.p;
    base = base * base % t.p;
    ek >>= 1;
  }
  return static_cast<Elem>(acc);
}

QuadClass Field::quad_class(Elem a) const { return t_->quad[a]; }

QuadClass Field::quad_class_by_power(Elem a) const {
  if (a == 0) return QuadClass::Zero;
  return pow(a, (q() - 1) / 2) == 1 ? QuadClass::Square : QuadClass::NonSquare;
}

std::optional<Elem> Field::sqrt(Elem a) const {
  const std::int32_t s = t_->sqrt[a];
  if (s < 0) return std::nullopt;
  return static_cast<Elem>(s);
}

Elem Field::omega() const {
  if (q() % 4 != 1) throw FieldError("-1 is not a square in F_" + std::to_string(q()));
  return *sqrt(neg(1));
}

Elem Field::frobenius(Elem a, std::uint32_t i) const {
  if (i >= r()) throw FieldError("frobenius exponent out of range");
  long long e = 1;
  for (std::uint32_t k = 0; k < i; ++k) e *= p();
  return pow(a, e);
}

Elem Field::non_square() const { return t_->non_square; }

std::string Field::descriptor() const {
  if (r() == 1) return std::to_string(p());
  std::ostringstream os;
  os << p() << '^' << r() << ':';
  for (std::size_t i = 0; i < modulus().size(); ++i) {
    if (i) os << ',';
    os << modulus()[i];
  }
  return os.str();
}

std::string Field::to_poly_string(Elem a) const {
  if (r() == 1) return std::to_string(a);
  auto d = detail::digits(p(), r(), a);
  std::ostringstream os;
  bool first = true;
  for (std::uint32_t i = 0; i < r(); ++i) {
    if (d[i] == 0) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0 || d[i] != 1) os << d[i];
    if (i >= 1) os << 'w';
    if (i >= 2) os << '^' << i;
  }
  if (first) os << '0';
  return os.str();
}

Elem Field::parse_poly(std::string_view text) const {
  // Terms c, cw, cw^k joined by '+'; coefficients are reduced mod p and
  // repeated powers accumulate.
  std::vector<std::uint64_t> d(r(), 0);
  auto bad = [&] { return FieldError("malformed polynomial '" + std::string(text) + "'"); };
  std::string_view rest = text;
  while (true) {
    const auto plus = rest.find('+');
    std::string_view term = rest.substr(0, plus);
    while (!term.empty() && term.front() == ' ') term.remove_prefix(1);
    while (!term.empty() && term.back() == ' ') term.remove_suffix(1);
    if (term.empty()) throw bad();
    std::size_t i = 0;
    std::uint64_t coef = 0;
    bool has_coef = false;
    while (i < term.size() && std::isdigit(static_cast<unsigned char>(term[i]))) {
      coef = coef * 10 + static_cast<std::uint64_t>(term[i] - '0');
      has_coef = true;
      ++i;
      if (coef > 1'000'000) throw bad();
    }
    std::uint32_t power = 0;
    if (i < term.size()) {
      if (term[i] != 'w') throw bad();
      ++i;
      power = 1;
      if (i < term.size()) {
        if (term[i] != '^' || i + 1 == term.size()) throw bad();
        power = 0;
        for (++i; i < term.size(); ++i) {
          if (!std::isdigit(static_cast<unsigned char>(term[i]))) throw bad();
          power = power * 10 + static_cast<std::uint32_t>(term[i] - '0');
          if (power > 64) throw bad();
        }
      }
    }
    if (!has_coef) {
      if (power == 0) throw bad();
      coef = 1;
    }
    if (power >= r()) throw FieldError("power of w exceeds the field degree in '" + std::string(text) + "'");
    d[power] = (d[power] + coef) % p();
    if (plus == std::string_view::npos) break;
    rest = rest.substr(plus + 1);
  }
  Elem v = 0;
  for (std::size_t i = r(); i-- > 0;) v = v * p() + static_cast<Elem>(d[i]);
  return v;
}

bool Field::operator==(const Field& other) const {
  if (t_ == other.t_) return true;
  return p() == other.p() && r() == other.r() && modulus() == other.modulus();
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) p = q;
  std::uint32_t r = 0;
  while (q % p == 0) {
    q /= p;
    ++r;
  }
  if (q != 1) return std::nullopt;
  return std::make_pair(static_cast<std::uint32_t>(p), r);
}

namespace {

// Remainder of a modulo monic b, coefficients constant first.
std::vector<std::uint32_t> poly_rem(std::uint32_t p, std::vector<std::uint32_t> a,
                                    const std::vector<std::uint32_t>& b) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint32_t c = a.back();
    const std::size_t shift = a.size() - 1 - db;
    if (c != 0)
      for (std::size_t i = 0; i <= db; ++i)
        a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + std::uint64_t{p - c} * b[i]) % p);
    a.pop_back();
  }
  return a;
}

}  // namespace

bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly) {
  const std::size_t deg = poly.size() - 1;
  if (poly.size() < 2 || poly.back() != 1) return false;
  if (deg == 1) return true;
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::vector<std::uint32_t> divisor(d + 1);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        divisor[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      divisor[d] = 1;
      auto rem = poly_rem(p, poly, divisor);
      if (std::all_of(rem.begin(), rem.end(), [](std::uint32_t x) { return x == 0; }))
        return false;
    }
  }
  return true;
}

Field make_field(std::uint32_t p, std::uint32_t r,
                 std::optional<std::vector<std::uint32_t>> modulus) {
  if (!is_prime(p)) throw FieldError("characteristic " + std::to_string(p) + " is not prime");
  if (p == 2) throw FieldError("characteristic 2 is not supported");
  if (r < 1) throw FieldError("extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < r; ++i) {
    q *= p;
    if (q > detail::kMaxOrder) throw FieldError("field order exceeds 2^16");
  }

  std::vector<std::uint32_t> mod;
  if (modulus) {
    mod = *modulus;
    if (mod.size() != r + 1) throw FieldError("modulus must have degree r");
    for (auto c : mod)
      if (c >= p) throw FieldError("modulus coefficient out of range");
    if (mod.back() != 1) throw FieldError("modulus must be monic");
    if (r > 1 && !is_irreducible(p, mod)) throw FieldError("modulus is reducible");
  } else if (r == 1) {
    mod = {0, 1};
  } else {
    const std::uint64_t count = q;
    bool found = false;
    // Lexicographic order on (c_0, ..., c_{r-1}): c_0 varies slowest.
    for (std::uint64_t code = 0; code < count && !found; ++code) {
      std::vector<std::uint32_t> cand(r + 1);
      std::uint64_t c = code;
      for (std::uint32_t i = r; i-- > 0;) {
        cand[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      cand[r] = 1;
      if (is_irreducible(p, cand)) {
        mod = cand;
        found = true;
      }
    }
    if (!found) throw FieldError("no irreducible polynomial found");
  }

  auto t = detail::build_tables(p, r, std::move(mod));
  Field f(t);
  const std::uint32_t qq = t->q;
  if (t->neg.empty()) {
    t->neg.resize(qq);
    for (Elem a = 0; a < qq; ++a) t->neg[a] = (qq - a) % qq;
  }
  t->inv.assign(qq, 0);
  t->quad.assign(qq, QuadClass::NonSquare);
  t->sqrt.assign(qq, -1);
  for (Elem a = 1; a < qq; ++a) t->inv[a] = f.pow(a, qq - 2);
  for (Elem y = 0; y < qq; ++y) {
    const Elem s = f.mul(y, y);
    if (t->sqrt[s] < 0) t->sqrt[s] = static_cast<std::int32_t>(y);
  }
  for (Elem a = 0; a < qq; ++a) {
    t->quad[a] = a == 0 ? QuadClass::Zero
                        : (t->sqrt[a] >= 0 ? QuadClass::Square : QuadClass::NonSquare);
  }
  for (Elem a = 1; a < qq; ++a) {
    if (t->quad[a] == QuadClass::NonSquare) {
      t->non_square = a;
      break;
    }
  }
  return f;
}

namespace {

std::uint32_t parse_uint(std::string_view s) {
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw FieldError("malformed field descriptor '" + std::string(s) + "'");
  return v;
}

}  // namespace

Field parse_field(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const auto caret = head.find('^');
  if (caret == std::string_view::npos) {
    if (colon != std::string_view::npos) throw FieldError("modulus given without degree");
    const std::uint32_t q = parse_uint(head);
    auto pr = prime_power(q);
    if (!pr) throw FieldError(std::to_string(q) + " is not a prime power");
    return make_field(pr->first, pr->second);
  }
  const std::uint32_t p = parse_uint(head.substr(0, caret));
  const std::uint32_t r = parse_uint(head.substr(caret + 1));
  if (colon == std::string_view::npos) return make_field(p, r);
  std::vector<std::uint32_t> mod;
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    mod.push_back(parse_uint(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return make_field(p, r, mod);
}

FieldElement::FieldElement(const Field& f, Elem v) : f_(f), v_(v) {
  if (v >= f.q()) throw FieldError("element encoding out of range");
}

void FieldElement::check_same(const FieldElement& o) const {
  if (f_ != o.f_) throw FieldError("operands belong to different fields");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same(o);
  return {f_, f_.add(v_, o.v_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same(o);
  return {f_, f_.sub(v_, o.v_)};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same(o);
  return {f_, f_.mul(v_, o.v_)};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
  check_same(o);
  return {f_, f_.div(v_, o.v_)};
}
FieldElement FieldElement::operator-() const { return {f_, f_.neg(v_)}; }
FieldElement FieldElement::inv() const { return {f_, f_.inv(v_)}; }
FieldElement FieldElement::pow(long long e) const { return {f_, f_.pow(v_, e)}; }
FieldElement FieldElement::frobenius(std::uint32_t i) const {
  return {f_, f_.frobenius(v_, i)};
}
std::optional<FieldElement> FieldElement::sqrt() const {
  auto s = f_.sqrt(v_);
  if (!s) return std::nullopt;
  return FieldElement(f_, *s);
}
bool FieldElement::operator==(const FieldElement& o) const {
  return f_ == o.f_ && v_ == o.v_;
}

}  // namespace qfint
