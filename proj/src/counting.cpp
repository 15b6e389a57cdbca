#include "qfint/counting.hpp"

#include <array>
#include <functional>
#include <random>
#include <sstream>

#include "qfint/parallel.hpp"

namespace qfint {

const char* to_string(CountMethod m) {
  switch (m) {
    case CountMethod::Recursive:
      return "recursive";
    case CountMethod::Closed:
      return "closed";
    case CountMethod::Brute:
      return "brute";
    case CountMethod::Trivial:
      return "trivial";
  }
  return "?";
}

std::string to_string(const BigInt& x) { return x.str(); }

std::string to_string(const BigRational& x) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(x);
  if (boost::multiprecision::denominator(x) != 1) os << '/' << boost::multiprecision::denominator(x);
  return os.str();
}

BigInt big_pow(std::uint64_t base, unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

int sign_pow(std::uint64_t e) { return (e % 2 == 0) ? 1 : -1; }

namespace {

// (-q)^e
BigInt neg_pow(std::uint64_t q, unsigned e) { return sign_pow(e) * big_pow(q, e); }

void require_odd_prime_power(std::uint64_t q) {
  auto pr = prime_power(q);
  if (!pr) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
  if (pr->first == 2) throw std::invalid_argument("q must be odd");
}

void require_m(unsigned m) {
  if (m < 1) throw std::invalid_argument("dimension must be >= 1");
}

// |I_0| and |I_gamma|, gamma != 0.
std::pair<BigInt, BigInt> circle_counts(std::uint64_t q) {
  if (q % 4 == 1) return {BigInt(2 * q - 1), BigInt(q - 1)};
  return {BigInt(1), BigInt(q + 1)};
}

}  // namespace

CountRecord counts_even_characteristic(unsigned m, std::uint64_t q) {
  require_m(m);
  CountRecord rec;
  rec.m = m;
  rec.q = q;
  // (sum u_i^2) = (sum u_i)^2, so the norm vanishes on a hyperplane and is a
  // nonzero square elsewhere.
  rec.Z = big_pow(q, m - 1);
  rec.S = big_pow(q, m) - rec.Z;
  rec.N = 0;
  rec.D = rec.S + rec.Z - 1;
  rec.method = CountMethod::Trivial;
  return rec;
}

CountRecord counts_recursive(unsigned m, std::uint64_t q) {
  require_m(m);
  auto pr = prime_power(q);
  if (!pr) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
  if (pr->first == 2) return counts_even_characteristic(m, q);

  const auto [i0, i1] = circle_counts(q);
  const bool one_mod_four = q % 4 == 1;
  // Index 1 and 2 hold the base cases; recurse two steps at a time.
  std::vector<BigInt> S(m + 1), Z(m + 1), N(m + 1);
  S[1] = q - 1;
  Z[1] = 1;
  N[1] = 0;
  if (m >= 2) {
    const BigInt qq = BigInt(q) * q;
    S[2] = one_mod_four ? BigInt((q - 1) * (q - 1) / 2) : BigInt((qq - 1) / 2);
    Z[2] = one_mod_four ? BigInt(2 * q - 1) : BigInt(1);
    N[2] = S[2];
  }
  for (unsigned k = 3; k <= m; ++k) {
    Z[k] = Z[k - 2] * i0 + (big_pow(q, k - 2) - Z[k - 2]) * i1;
    S[k] = BigInt((q - 1) / 2) * (N[k - 2] + Z[k - 2]) * i1 +
           BigInt((q - 3) / 2) * S[k - 2] * i1 + S[k - 2] * i0;
    N[k] = big_pow(q, k) - S[k] - Z[k];
  }
  CountRecord rec;
  rec.m = m;
  rec.q = q;
  rec.S = S[m];
  rec.Z = Z[m];
  rec.N = N[m];
  rec.D = rec.S + rec.Z - 1;
  rec.method = CountMethod::Recursive;
  return rec;
}

CountRecord counts_closed(unsigned m, std::uint64_t q) {
  require_m(m);
  require_odd_prime_power(q);
  const BigInt qm = big_pow(q, m);
  const BigInt qm1 = big_pow(q, m - 1);
  CountRecord rec;
  rec.m = m;
  rec.q = q;
  rec.method = CountMethod::Closed;
  if (q % 4 == 1) {
    if (m % 2 == 1) {
      const BigInt a = big_pow(q, (m + 1) / 2), b = big_pow(q, (m - 1) / 2);
      rec.Z = qm1;
      rec.S = (qm - qm1 + a - b) / 2;
      rec.N = (qm - qm1 - a + b) / 2;
      rec.D = (qm + qm1 + a - b) / 2 - 1;
    } else {
      const BigInt a = big_pow(q, m / 2), b = big_pow(q, (m - 2) / 2);
      rec.Z = qm1 + a - b;
      rec.S = (qm - qm1 - a + b) / 2;
      rec.N = (qm - qm1 - a + b) / 2;
      rec.D = (qm + qm1 + a - b) / 2 - 1;
    }
  } else {
    if (m % 2 == 1) {
      const BigInt a = neg_pow(q, (m + 1) / 2), b = neg_pow(q, (m - 1) / 2);
      rec.Z = qm1;
      rec.S = (qm - qm1 - a - b) / 2;
      rec.N = (qm - qm1 + a + b) / 2;
      rec.D = (qm + qm1 - a - b) / 2 - 1;
    } else {
      const BigInt a = neg_pow(q, m / 2), b = neg_pow(q, (m - 2) / 2);
      rec.Z = qm1 + a + b;
      rec.S = (qm - qm1 - a - b) / 2;
      rec.N = (qm - qm1 - a - b) / 2;
      rec.D = (qm + qm1 + a + b) / 2 - 1;
    }
  }
  return rec;
}

namespace {

// Visits every w in F_q^len, maintaining K running sums where coordinate i at
// value x contributes table[k][i * q + x]. The leaf receives the K sums.
template <std::size_t K, class Leaf>
void enumerate_sums(const Field& f, std::size_t len,
                    const std::array<std::vector<Elem>, K>& table, std::array<Elem, K> sums,
                    Leaf& leaf, std::size_t i = 0) {
  if (i == len) {
    leaf(sums);
    return;
  }
  const std::size_t q = f.q();
  for (Elem x = 0; x < q; ++x) {
    std::array<Elem, K> next;
    for (std::size_t k = 0; k < K; ++k) next[k] = f.add(sums[k], table[k][i * q + x]);
    enumerate_sums<K>(f, len, table, next, leaf, i + 1);
  }
}

void check_budget(const Field& f, std::size_t m, std::uint64_t budget, const char* what) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < m; ++i) {
    n *= f.q();
    if (n > budget)
      throw BudgetExceeded(std::string(what) + ": q^m exceeds the enumeration budget");
  }
}

}  // namespace

CountRecord counts_brute(const Field& f, unsigned m, unsigned workers, std::uint64_t budget) {
  require_m(m);
  check_budget(f, m, budget, "counts_brute");
  const std::size_t q = f.q();
  // Split on the last coordinate; the rest is enumerated per task.
  std::array<std::vector<Elem>, 1> table;
  table[0].resize(q * m);
  for (std::size_t i = 0; i < m; ++i)
    for (Elem x = 0; x < q; ++x) table[0][i * q + x] = f.sq(x);
  std::vector<std::array<std::uint64_t, 3>> partial(q, {0, 0, 0});
  parallel_for(q, workers, [&](std::size_t top) {
    auto& tally = partial[top];
    auto leaf = [&](const std::array<Elem, 1>& s) {
      ++tally[static_cast<std::size_t>(f.quad_class(s[0]))];
    };
    enumerate_sums<1>(f, m - 1, table, {f.sq(static_cast<Elem>(top))}, leaf);
  });
  std::uint64_t zero = 0, square = 0, nonsquare = 0;
  for (const auto& t : partial) {
    zero += t[static_cast<std::size_t>(QuadClass::Zero)];
    square += t[static_cast<std::size_t>(QuadClass::Square)];
    nonsquare += t[static_cast<std::size_t>(QuadClass::NonSquare)];
  }
  CountRecord rec;
  rec.m = m;
  rec.q = q;
  rec.S = square;
  rec.Z = zero;
  rec.N = nonsquare;
  rec.D = rec.S + rec.Z - 1;
  rec.method = CountMethod::Brute;
  return rec;
}

BigInt common_adjacent_closed(unsigned m, std::uint64_t q) {
  require_m(m);
  require_odd_prime_power(q);
  if (m == 1) return BigInt(q - 2);
  const BigInt base = big_pow(q, m - 2) * (q + 1) * (q + 1);
  BigInt num;
  if (m % 2 == 1) {
    const int sign = sign_pow((std::uint64_t{m} - 1) * (q - 1) / 4);
    num = base + sign * big_pow(q, (m - 3) / 2) * (BigInt(3) * q * q - 2 * q - 1);
  } else {
    const int sign = sign_pow(std::uint64_t{m} * (q - 1) / 4);
    num = base + 2 * sign * big_pow(q, (m - 2) / 2) * (q - 1);
  }
  return num / 4 - 2;
}

BigInt conjectured_B(unsigned m, std::uint64_t q) {
  require_odd_prime_power(q);
  if (m < 2) throw std::invalid_argument("conjectured_B needs m >= 2");
  if (m == 2 && q % 4 != 1)
    throw std::invalid_argument("no isotropic vector exists for m = 2, q = 3 mod 4");
  const BigInt a = common_adjacent_closed(m, q);
  if (m % 2 == 0) return a;
  const int sign = sign_pow((q - 1) * (std::uint64_t{m} - 1) / 4);
  return a - sign * big_pow(q, (m - 3) / 2) * ((BigInt(q) * q - 1) / 4);
}

std::optional<BigInt> implied_nonsquare_common(unsigned m, std::uint64_t q) {
  const CountRecord c = counts_closed(m, q);
  if (c.N == 0) return std::nullopt;
  const BigInt a = common_adjacent_closed(m, q);
  BigInt b = 0;
  if (c.Z > 1) b = conjectured_B(m, q);
  const BigInt num = c.D * (c.D - 1) - c.S * a - (c.Z - 1) * b;
  if (num % c.N != 0) return std::nullopt;
  return num / c.N;
}

std::uint64_t common_neighbors_brute(const Field& f, const Point& u, const Point& v,
                                     unsigned workers, std::uint64_t budget) {
  if (u.dim() != v.dim()) throw DimensionError("dimension mismatch");
  if (u == v) throw std::invalid_argument("common_neighbors_brute needs u != v");
  const std::size_t m = u.dim();
  check_budget(f, m, budget, "common_neighbors_brute");
  const Point d = sub(f, v, u);
  const std::size_t q = f.q();
  // Sum 0: <w,w>, sum 1: <w-d,w-d>, after translating u to the origin.
  std::array<std::vector<Elem>, 2> table;
  table[0].resize(q * m);
  table[1].resize(q * m);
  for (std::size_t i = 0; i < m; ++i)
    for (Elem x = 0; x < q; ++x) {
      table[0][i * q + x] = f.sq(x);
      table[1][i * q + x] = f.sq(f.sub(x, d[i]));
    }
  const std::size_t top = m - 1;
  std::vector<std::uint64_t> partial(q, 0);
  parallel_for(q, workers, [&](std::size_t x) {
    std::uint64_t n = 0;
    auto leaf = [&](const std::array<Elem, 2>& s) {
      n += static_cast<std::uint64_t>(f.is_square(s[0]) && f.is_square(s[1]));
    };
    enumerate_sums<2>(f, top, table,
                      {table[0][top * q + x], table[1][top * q + x]}, leaf);
    partial[x] = n;
  });
  std::uint64_t total = 0;
  for (auto n : partial) total += n;
  // w = 0 and w = d are counted exactly when 0 and d are adjacent.
  if (f.is_square(norm(f, d))) total -= 2;
  return total;
}

BigInt srg_mu_even_closed(unsigned m, std::uint64_t q) {
  require_odd_prime_power(q);
  if (m % 2 != 0 || m < 2) throw std::invalid_argument("srg_mu_even_closed needs even m");
  const BigInt lead = big_pow(q, (m - 2) / 2) * (q + 1);
  if (q % 4 == 1) return lead * (big_pow(q, m / 2) + big_pow(q, (m - 2) / 2) + 2) / 4;
  const int s = sign_pow(m / 2);
  return lead * (big_pow(q, m / 2) + big_pow(q, (m - 2) / 2) + 2 * s) / 4;
}

BigRational srg_mu_odd_closed(unsigned m, std::uint64_t q) {
  require_odd_prime_power(q);
  if (m % 2 != 1 || m < 3) throw std::invalid_argument("srg_mu_odd_closed needs odd m >= 3");
  const BigInt qm = big_pow(q, m), qm1 = big_pow(q, m - 1);
  BigInt inner;
  if (q % 4 == 1)
    inner = qm + qm1 + big_pow(q, (m + 1) / 2) - big_pow(q, (m - 1) / 2) - 2;
  else
    inner = qm + qm1 - neg_pow(q, (m + 1) / 2) - neg_pow(q, (m - 1) / 2) - 2;
  return BigRational(BigInt(q + 1) * inner, BigInt(4) * q);
}

SrgReport srg_report(const Field& f, unsigned m, unsigned workers, std::uint64_t pair_budget) {
  if (m < 2) throw std::invalid_argument("srg_report needs m >= 2");
  const std::uint64_t q = f.q();
  const CountRecord c = counts_closed(m, q);
  SrgReport rep;
  rep.m = m;
  rep.q = q;
  rep.v = big_pow(q, m);
  rep.k = c.D;
  rep.lambda = common_adjacent_closed(m, q);
  const BigInt denom = rep.v - rep.k - 1;
  rep.mu = BigRational(rep.k * (rep.k - rep.lambda - 1), denom);
  rep.mu_integral = boost::multiprecision::denominator(rep.mu) == 1;

  if (m == 2) {
    rep.is_srg = true;
    rep.decided_by = "parameters";
    return rep;
  }
  if (m % 2 == 1) {
    rep.is_srg = false;
    rep.decided_by = "odd_dimension";
    return rep;
  }
  const BigInt pairs = rep.v * rep.v;
  if (pairs > pair_budget || !rep.mu_integral) return rep;

  // Translation invariance reduces every pair to (0, x).
  const std::uint64_t n = static_cast<std::uint64_t>(rep.v);
  std::vector<Point> pts(n);
  std::vector<char> adj(n, 0);
  std::vector<std::uint64_t> conn;
  for (std::uint64_t i = 0; i < n; ++i) {
    pts[i] = Point::from_index(f, m, i);
    if (i != 0 && f.is_square(norm(f, pts[i]))) {
      adj[i] = 1;
      conn.push_back(i);
    }
  }
  const std::uint64_t lambda = static_cast<std::uint64_t>(rep.lambda);
  const std::uint64_t mu = static_cast<std::uint64_t>(boost::multiprecision::numerator(rep.mu));
  std::vector<char> ok(n, 1);
  parallel_for(n - 1, workers, [&](std::size_t t) {
    const std::uint64_t x = t + 1;
    std::uint64_t count = 0;
    for (std::uint64_t w : conn) {
      std::uint64_t idx = 0;
      for (std::size_t i = m; i-- > 0;) idx = idx * q + f.sub(pts[w][i], pts[x][i]);
      count += static_cast<std::uint64_t>(adj[idx]);
    }
    ok[x] = static_cast<char>(count == (adj[x] ? lambda : mu));
  });
  bool all = true;
  for (std::uint64_t x = 1; x < n; ++x) all = all && ok[x];
  rep.is_srg = all;
  rep.decided_by = "brute";
  return rep;
}

ConjectureReport verify_conjecture(unsigned m, std::uint64_t p_max, unsigned samples,
                                   std::uint64_t seed, unsigned workers) {
  if (m < 3) throw std::invalid_argument("verify_conjecture needs m >= 3");
  ConjectureReport rep;
  rep.m = m;
  rep.p_max = p_max;
  for (std::uint64_t p = 3; p <= p_max; p += 2) {
    if (!is_prime(p)) continue;
    rep.primes.push_back(p);
    const Field f = make_field(static_cast<std::uint32_t>(p), 1);
    const std::array<std::pair<NormClass, BigInt>, 3> expected{{
        {NormClass::Plus, common_adjacent_closed(m, p)},
        {NormClass::Zero, conjectured_B(m, p)},
        {NormClass::Minus, implied_nonsquare_common(m, p).value_or(BigInt(-1))},
    }};
    const std::uint64_t n = space_size(f, m);
    std::mt19937_64 rng(seed * 1000003u + p);
    std::uniform_int_distribution<std::uint64_t> pick(1, n - 1);
    for (const auto& [cls, predicted] : expected) {
      std::vector<Point> reps;
      if (cls == NormClass::Plus) {
        reps.push_back(Point::unit(m, 0));
      } else {
        for (std::uint64_t i = 1; i < n; ++i) {
          Point x = Point::from_index(f, m, i);
          if (norm_class(f, x) == cls) {
            reps.push_back(std::move(x));
            break;
          }
        }
      }
      while (reps.size() < 1 + samples) {
        Point x = Point::from_index(f, m, pick(rng));
        if (norm_class(f, x) == cls) reps.push_back(std::move(x));
      }
      for (const auto& x : reps) {
        ConjectureCheck chk{p, cls, x,
                            common_neighbors_brute(f, Point::zero(m), x, workers), predicted};
        if (BigInt(chk.observed) != predicted && !rep.counterexample) rep.counterexample = chk;
        rep.checks.push_back(std::move(chk));
      }
    }
  }
  return rep;
}

}  // namespace qfint
