// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails, except the single documented failure listed in
// kKnownFailures (the line itself still reads FAIL).

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "qfint/clique.hpp"
#include "qfint/constructions.hpp"
#include "qfint/counting.hpp"
#include "qfint/symmetry.hpp"

#ifndef QFINT_CLI_PATH
#error "QFINT_CLI_PATH must name the qfint executable"
#endif

using namespace qfint;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  bool known_failure = false;  // documented in the decisions ledger
};

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string secs(double s) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << s << "s";
  return os.str();
}

const std::vector<std::uint32_t> kSmallQ = {3, 5, 7, 9, 11, 13};

SearchConfig deterministic_config() {
  SearchConfig c;
  c.deterministic = true;
  c.workers = 1;
  return c;
}

struct ITarget {
  unsigned m;
  std::uint32_t q;
  std::uint64_t expected;
  double budget;  // seconds
  bool optional;
};

// Shared by criteria 1 and 2.
Outcome run_targets(const std::vector<ITarget>& targets, std::optional<double> total_budget) {
  Outcome o{true, ""};
  double total = 0;
  for (const auto& t : targets) {
    const Field f = parse_field(std::to_string(t.q));
    SearchConfig cfg = deterministic_config();
    cfg.time_limit = std::chrono::duration<double>(t.budget);
    const auto t0 = Clock::now();
    const auto r = compute_I(f, t.m, cfg);
    const double dt = since(t0);
    total += dt;
    const bool value_ok = r.size == t.expected && r.status != CliqueStatus::LowerBound &&
                          r.witness.size() == r.size && verify_point_set(f, r.witness).integral;
    const bool ok = value_ok && dt <= t.budget;
    std::ostringstream d;
    d << " (" << t.m << "," << t.q << ")=" << r.size << " " << to_string(r.status) << " " << secs(dt);
    if (!ok && t.optional) {
      d << " [optional, soft]";
    } else if (!ok) {
      o.pass = false;
    }
    o.detail += d.str();
  }
  if (total_budget && total > *total_budget) {
    o.pass = false;
    o.detail += " total " + secs(total) + " over budget";
  }
  return o;
}

Outcome criterion1() {
  return run_targets({{3, 3, 4, 60, false},
                      {3, 5, 25, 60, false},
                      {3, 7, 8, 60, false},
                      {3, 11, 11, 1800, false},
                      {3, 13, 169, 1, false},
                      {3, 17, 289, 7200, true},
                      {3, 19, 19, 7200, true}},
                     std::nullopt);
}

Outcome criterion2() {
  Outcome req = run_targets({{4, 3, 9, 1800, false}, {5, 3, 27, 1800, false}, {4, 5, 25, 1800, false}}, 1800.0);
  Outcome opt = run_targets({{6, 3, 33, 7200, true}}, std::nullopt);
  req.detail += opt.detail;
  return req;
}

Outcome criterion3() {
  const auto t0 = Clock::now();
  Outcome o{true, ""};
  int compared = 0;
  for (std::uint32_t q : kSmallQ) {
    const Field f = parse_field(std::to_string(q));
    for (unsigned m = 1; m <= 5; ++m) {
      const auto c = counts_closed(m, q);
      if (!c.same_counts(counts_recursive(m, q)) || !c.same_counts(counts_brute(f, m))) {
        o.pass = false;
        o.detail += " mismatch at (" + std::to_string(m) + "," + std::to_string(q) + ")";
      }
      ++compared;
    }
  }
  const double dt = since(t0);
  if (dt > 300) o.pass = false;
  o.detail += " " + std::to_string(compared) + " (m,q) pairs, " + secs(dt);
  return o;
}

Outcome criterion4() {
  Outcome o{true, ""};
  for (std::uint32_t q : kSmallQ) {
    const Field f = parse_field(std::to_string(q));
    for (unsigned m = 1; m <= 4; ++m) {
      const auto brute = common_neighbors_brute(f, Point::zero(m), Point::unit(m, 0));
      if (BigInt(brute) != common_adjacent_closed(m, q)) {
        o.pass = false;
        o.detail += " mismatch (" + std::to_string(m) + "," + std::to_string(q) + ")";
      }
    }
  }
  const auto a35 = common_neighbors_brute(make_field(5, 1), Point::zero(3), Point::unit(3, 0));
  const auto a37 = common_neighbors_brute(make_field(7, 1), Point::zero(3), Point::unit(3, 0));
  o.pass = o.pass && a35 == 59 && a37 == 77;
  o.detail += " A(3,5)=" + std::to_string(a35) + " A(3,7)=" + std::to_string(a37);
  return o;
}

Outcome criterion5() {
  const auto t0 = Clock::now();
  const auto r3 = verify_conjecture(3, 101);
  const auto r4 = verify_conjecture(4, 13);
  const double dt = since(t0);
  Outcome o{r3.agreement() && r4.agreement() && dt <= 600, ""};
  o.detail = " m=3: " + std::to_string(r3.primes.size()) + " primes " + std::to_string(r3.checks.size()) +
             " checks; m=4: " + std::to_string(r4.primes.size()) + " primes " + std::to_string(r4.checks.size()) +
             " checks; " + secs(dt);
  for (const auto* r : {&r3, &r4})
    if (r->counterexample) o.detail += " counterexample at p=" + std::to_string(r->counterexample->p);
  return o;
}

Outcome criterion6() {
  Outcome o{true, ""};
  const auto r25 = srg_report(make_field(5, 1), 2);
  if (!(r25.v == 25 && r25.k == 16 && r25.lambda == 9 && r25.mu == BigRational(12) && r25.is_srg == true))
    o.pass = false;
  o.detail += " (2,5): (" + to_string(r25.v) + "," + to_string(r25.k) + "," + to_string(r25.lambda) + "," +
              to_string(r25.mu) + ")";
  for (std::uint32_t q : kSmallQ) {
    const auto r = srg_report(parse_field(std::to_string(q)), 3);
    if (r.mu_integral || r.is_srg != false) {
      o.pass = false;
      o.detail += " (3," + std::to_string(q) + ") mu=" + to_string(r.mu);
    }
  }
  o.detail += "; (3,q) mu non-integral";
  for (std::uint32_t q : {3u, 5u}) {
    const auto r = srg_report(make_field(q, 1), 4);
    const bool ok = r.is_srg == true && r.decided_by == "brute";
    o.pass = o.pass && ok;
    o.detail += std::string("; (4,") + std::to_string(q) + ") " + (ok ? "SRG by brute force" : "not confirmed");
  }
  return o;
}

Outcome criterion7() {
  const auto t0 = Clock::now();
  Outcome o{true, ""};
  for (auto [m, q] : std::vector<std::pair<unsigned, std::uint32_t>>{{2, 3}, {2, 5}, {2, 7}, {2, 9}, {3, 3}}) {
    const auto n = enumerate_O_brute(parse_field(std::to_string(q)), m);
    const bool ok = BigInt(n) == order_O(m, q);
    o.pass = o.pass && ok;
    o.detail += " |O(" + std::to_string(m) + "," + std::to_string(q) + ")|=" + std::to_string(n);
  }
  for (auto [m, q, ratio] : std::vector<std::tuple<unsigned, std::uint32_t, unsigned>>{{3, 3, 1}, {2, 5, 2}, {2, 9, 3}}) {
    const auto c = enumerate_aut_linear(parse_field(std::to_string(q)), m);
    const bool ok = BigInt(c.automorphisms) == order_OZ(m, q) * ratio;
    o.pass = o.pass && ok;
    o.detail += " Aut(" + std::to_string(m) + "," + std::to_string(q) + ")=" + std::to_string(c.automorphisms) + "=" +
                std::to_string(ratio) + "*|OZ|";
  }
  const double dt = since(t0);
  o.pass = o.pass && dt <= 600;
  o.detail += " " + secs(dt);
  return o;
}

Outcome criterion8() {
  Outcome o{true, ""};
  int fields = 0;
  for (std::uint32_t q = 3; q <= 49; q += 2) {
    if (!prime_power(q)) continue;
    ++fields;
    const Field f = parse_field(std::to_string(q));
    std::uint64_t total = 0;
    for (Elem g = 0; g < q; ++g) {
      const auto h = pyth_triples(f, g);
      const std::uint64_t expected = g == 0 ? (q % 4 == 1 ? 2 * q - 1 : 1) : (q % 4 == 1 ? q - 1 : q + 1);
      if (h.size() != expected) o.pass = false;
      total += h.size();
      if (q <= 27) {
        std::set<PythTriple> mine(h.begin(), h.end());
        std::set<PythTriple> brute;
        for (Elem x = 0; x < q; ++x)
          for (Elem y = 0; y < q; ++y)
            if (f.add(f.sq(x), f.sq(y)) == f.sq(g)) brute.insert({x, y, g});
        if (mine != brute || mine.size() != h.size()) o.pass = false;
      }
    }
    if (total != std::uint64_t{q} * q) {
      o.pass = false;
      o.detail += " sum mismatch q=" + std::to_string(q);
    }
  }
  o.detail += " " + std::to_string(fields) + " fields q<=49, set equality q<=27";
  return o;
}

Outcome criterion9() {
  Outcome o{true, ""};
  std::mt19937 rng(20240101);
  int pairs = 0, failures = 0;
  for (unsigned m : {2u, 3u})
    for (std::uint32_t q : kSmallQ) {
      const Field f = parse_field(std::to_string(q));
      std::uniform_int_distribution<std::uint64_t> pick(1, space_size(f, m) - 1);
      for (int t = 0; t < 100; ++t) {
        const Point u = Point::from_index(f, m, pick(rng));
        Point v;
        do v = Point::from_index(f, m, pick(rng));
        while (norm(f, v) != norm(f, u));
        ++pairs;
        try {
          const SquareMatrix a = transitivity_witness(f, u, v);
          if (!is_orthogonal(f, a) || apply(f, a, u) != v) ++failures;
        } catch (const std::exception&) {
          ++failures;
        }
      }
    }
  o.pass = failures == 0;
  o.detail = " " + std::to_string(pairs) + " pairs, " + std::to_string(failures) + " failures";
  return o;
}

Outcome criterion10() {
  Outcome o{true, ""};
  int checked = 0;
  auto check = [&](const std::string& name, std::uint32_t q) {
    const Field f = parse_field(std::to_string(q));
    std::string why;
    if (!verify_construction(f, build_construction(name, f), &why)) {
      o.pass = false;
      o.detail += " " + name + "(" + std::to_string(q) + "): " + why;
    }
    ++checked;
  };
  for (std::uint32_t q : {5u, 9u, 13u, 17u, 25u}) check("hyperplane_q1mod4", q);
  for (std::uint32_t q : {3u, 7u, 11u, 19u, 23u, 27u}) check("circle_plus_line", q);
  for (std::uint32_t q : {3u, 5u, 7u, 9u, 11u}) check("isotropic_plane_4d", q);
  for (std::uint32_t q : {3u, 7u, 11u}) check("nonintegral_plane", q);
  const bool constructions_ok = o.pass;
  o.detail += " " + std::to_string(checked) + " constructions " + (constructions_ok ? "verified" : "FAILED") + ";";

  const Field f27 = parse_field(kF27Modulus);
  const PointSet s = f27_example(f27);
  std::size_t bad = 0;
  std::set<std::size_t> involved;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (!is_integral(f27, s[i], s[j])) {
        ++bad;
        involved.insert(i);
        involved.insert(j);
      }
  if (bad == 0) {
    o.detail += " F_27 28-point example integral";
  } else {
    o.pass = false;
    o.detail += " F_27 28-point example NOT integral: " + std::to_string(bad) + " pairs fail";
    const Point culprit{1, 0, 0};
    std::size_t through = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j)
        if (!is_integral(f27, s[i], s[j]) && (s[i] == culprit || s[j] == culprit)) ++through;
    // The documented finding: all failures pass through (1,0,0), 14 of them.
    o.known_failure = constructions_ok && bad == 14 && through == 14;
    if (o.known_failure) o.detail += ", all through (1,0,0) (known; see README)";
  }
  return o;
}

Outcome criterion11() {
  Outcome o{true, ""};
  for (auto [m, q] : std::vector<std::pair<unsigned, std::uint32_t>>{{2, 3}, {3, 5}}) {
    const Field f = make_field(q, 1);
    const auto g = build_graph(f, m);
    std::stringstream io;
    export_dimacs(g, io);
    const DimacsGraph d = read_dimacs(io);
    const std::uint64_t n = space_size(f, m);
    const BigInt expected_edges = BigInt(n) * counts_closed(m, q).D / 2;
    bool iso = d.vertices == n && BigInt(d.edges.size()) == expected_edges;
    // Identity-labelled isomorphism: every exported edge is adjacent and the
    // count matches, so the relations coincide.
    std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
    for (const auto& [i, j] : d.edges) {
      iso = iso && i < j && g.adjacent(i - 1, j - 1);
      seen.insert({i, j});
    }
    iso = iso && seen.size() == d.edges.size();
    o.pass = o.pass && iso;
    o.detail += " (" + std::to_string(m) + "," + std::to_string(q) + "): " + std::to_string(d.vertices) + " vertices " +
                std::to_string(d.edges.size()) + " edges";
  }
  return o;
}

std::string run_cli(const std::string& args) {
  const std::string cmd = "env -u QFINT_CACHE_DIR '" + std::string(QFINT_CLI_PATH) + "' " + args + " 2>&1";
  std::string out;
  if (FILE* p = popen(cmd.c_str(), "r")) {
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    const int rc = pclose(p);
    out += "\nexit=" + std::to_string(rc);
  } else {
    out = "popen failed";
  }
  return out;
}

Outcome criterion12() {
  Outcome o{true, ""};
  const std::vector<std::pair<unsigned, std::uint32_t>> cases = {{3, 3},  {3, 5}, {3, 7}, {3, 11}, {3, 13}, {3, 17},
                                                                 {4, 3},  {5, 3}, {4, 5}, {6, 3}};
  int runs = 0;
  for (auto [m, q] : cases) {
    const std::string base = "clique --m " + std::to_string(m) + " --q " + std::to_string(q);
    const std::string ref = run_cli("--deterministic --workers 1 " + base);
    ++runs;
    for (unsigned w : {2u, 8u}) {
      const std::string other = run_cli("--deterministic --workers " + std::to_string(w) + " " + base);
      ++runs;
      if (other != ref) {
        o.pass = false;
        o.detail += " (" + std::to_string(m) + "," + std::to_string(q) + ") differs at workers=" + std::to_string(w);
      }
    }
    if (ref.find("exit=0") == std::string::npos) {
      o.pass = false;
      o.detail += " (" + std::to_string(m) + "," + std::to_string(q) + ") nonzero exit";
    }
  }
  const std::string itable = "itable --m 3 --q 3,5,7,11 --csv";
  const std::string ref = run_cli("--deterministic --workers 1 " + itable);
  for (unsigned w : {2u, 8u})
    if (run_cli("--deterministic --workers " + std::to_string(w) + " " + itable) != ref) o.pass = false;
  runs += 3;
  o.detail += " " + std::to_string(runs) + " CLI runs byte-identical across workers 1, 2, 8";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"I(3,q) table values", criterion1},
      {"higher-dimension exact values", criterion2},
      {"counting methods agree", criterion3},
      {"common neighbours of 0 and e1", criterion4},
      {"common-neighbour conjecture, m=3 p<=101 and m=4 p<=13", criterion5},
      {"strong regularity analysis", criterion6},
      {"orthogonal and automorphism group orders", criterion7},
      {"Pythagorean triple counts and enumeration", criterion8},
      {"orbit transitivity witnesses", criterion9},
      {"constructions and the F_27 example", criterion10},
      {"DIMACS export", criterion11},
      {"deterministic output across worker counts", criterion12},
  };
  bool unexpected = false;
  int idx = 0;
  for (const auto& [name, run] : criteria) {
    ++idx;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string(" exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << idx << " " << name << ":" << o.detail << " [" << secs(since(t0))
              << "]\n"
              << std::flush;
    if (!o.pass && !o.known_failure) unexpected = true;
  }
  return unexpected ? 1 : 0;
}
