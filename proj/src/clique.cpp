#include "qfint/clique.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>

#include "qfint/constructions.hpp"
#include "qfint/counting.hpp"
#include "qfint/parallel.hpp"

namespace qfint {

IntegralityGraph::IntegralityGraph(Field f, unsigned m, std::vector<std::uint64_t> connection,
                                   std::uint64_t degree)
    : f_(std::move(f)), m_(m), n_(space_size(f_, m)), conn_(std::move(connection)),
      degree_(degree) {}

std::uint64_t IntegralityGraph::diff_index(std::uint64_t u, std::uint64_t v) const {
  const std::uint64_t q = f_.q();
  std::uint64_t r = 0, pw = 1;
  for (unsigned i = 0; i < m_; ++i) {
    const Elem d = f_.sub(static_cast<Elem>(u % q), static_cast<Elem>(v % q));
    r += d * pw;
    pw *= q;
    u /= q;
    v /= q;
  }
  return r;
}

namespace {

std::uint64_t sum_index(const Field& f, unsigned m, std::uint64_t u, std::uint64_t v) {
  const std::uint64_t q = f.q();
  std::uint64_t r = 0, pw = 1;
  for (unsigned i = 0; i < m; ++i) {
    r += f.add(static_cast<Elem>(u % q), static_cast<Elem>(v % q)) * pw;
    pw *= q;
    u /= q;
    v /= q;
  }
  return r;
}

}  // namespace

IntegralityGraph build_graph(const Field& f, unsigned m, std::uint64_t budget) {
  if (m < 1) throw std::invalid_argument("build_graph needs m >= 1");
  std::uint64_t n = 1;
  for (unsigned i = 0; i < m; ++i) {
    n *= f.q();
    if (n > budget) throw BudgetExceeded("q^m exceeds the graph budget");
  }
  std::vector<std::uint64_t> bits((n + 63) / 64, 0);
  std::uint64_t degree = 0;
  for (std::uint64_t i = 1; i < n; ++i) {
    if (f.is_square(norm(f, Point::from_index(f, m, i)))) {
      bits[i >> 6] |= std::uint64_t{1} << (i & 63);
      ++degree;
    }
  }
  const BigInt expected = counts_recursive(m, f.q()).D;
  if (BigInt(degree) != expected)
    throw std::logic_error("connection set size " + std::to_string(degree) +
                           " disagrees with D = " + to_string(expected));
  return IntegralityGraph(f, m, std::move(bits), degree);
}

const char* to_string(CliqueStatus s) {
  switch (s) {
    case CliqueStatus::Optimal: return "optimal";
    case CliqueStatus::LowerBound: return "lower_bound";
    case CliqueStatus::FormulaCertified: return "formula_certified";
  }
  return "?";
}

const char* to_string(Reduction r) {
  switch (r) {
    case Reduction::None: return "none";
    case Reduction::PrescribedPair: return "prescribed_pair";
    case Reduction::Construction: return "construction";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : w_((n + 63) / 64, 0) {}
  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  std::size_t words() const { return w_.size(); }
  std::uint64_t* data() { return w_.data(); }
  const std::uint64_t* data() const { return w_.data(); }
  bool any() const {
    for (auto x : w_)
      if (x) return true;
    return false;
  }

 private:
  std::vector<std::uint64_t> w_;
};

// Candidate subgraph with local indices ordered by descending degree.
struct LocalGraph {
  std::size_t n = 0;
  std::vector<Bitset> adj;
};

template <class Adjacent>
LocalGraph make_local_graph(std::size_t n, Adjacent&& adjacent) {
  LocalGraph g;
  g.n = n;
  g.adj.assign(n, Bitset(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (adjacent(i, j)) {
        g.adj[i].set(j);
        g.adj[j].set(i);
      }
  return g;
}

struct SharedState {
  std::atomic<std::size_t> bar{0};  // cliques must exceed this size
  std::mutex mu;
  std::vector<std::uint32_t> best;
  bool found = false;
  std::optional<Clock::time_point> deadline;
  std::atomic<bool> timed_out{false};

  void offer(const std::vector<std::uint32_t>& c) {
    if (c.size() <= bar.load()) return;
    std::lock_guard lock(mu);
    if (c.size() <= bar.load()) return;
    best = c;
    found = true;
    bar.store(c.size());
  }
};

// Serial depth-first search with a greedy colouring bound (BBMC style).
class Expander {
 public:
  Expander(const LocalGraph& g, SharedState& shared, std::size_t fixed_bar, bool first_only)
      : g_(g), shared_(shared), fixed_bar_(fixed_bar), first_only_(first_only) {}

  void run(std::vector<std::uint32_t>& c, Bitset p) {
    if (!p.any()) {
      offer(c);
      return;
    }
    expand(c, p);
  }
  bool found() const { return !local_best_.empty(); }
  const std::vector<std::uint32_t>& local_best() const { return local_best_; }
  bool stopped() const { return stop_; }

 private:
  std::size_t bar() const {
    if (first_only_) return fixed_bar_;
    return shared_.bar.load(std::memory_order_relaxed);
  }

  void offer(const std::vector<std::uint32_t>& c) {
    if (first_only_) {
      if (c.size() > fixed_bar_) {
        local_best_ = c;
        stop_ = true;
      }
      return;
    }
    shared_.offer(c);
  }

  bool check_time() {
    if (++nodes_ % 4096 != 0 || !shared_.deadline) return shared_.timed_out.load();
    if (Clock::now() > *shared_.deadline) shared_.timed_out.store(true);
    return shared_.timed_out.load();
  }

  void expand(std::vector<std::uint32_t>& c, Bitset& p) {
    if (check_time()) {
      stop_ = true;
      return;
    }
    const std::size_t words = p.words();
    std::vector<std::uint32_t> order;
    std::vector<std::uint32_t> colour;
    {
      Bitset u = p;
      Bitset qset(g_.n);
      std::uint32_t k = 0;
      bool left = u.any();
      while (left) {
        ++k;
        std::copy(u.data(), u.data() + words, qset.data());
        for (std::size_t w = 0; w < words; ++w) {
          while (qset.data()[w]) {
            const std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(qset.data()[w]));
            qset.reset(v);
            u.reset(v);
            const std::uint64_t* nv = g_.adj[v].data();
            for (std::size_t x = w; x < words; ++x) qset.data()[x] &= ~nv[x];
            order.push_back(static_cast<std::uint32_t>(v));
            colour.push_back(k);
          }
        }
        left = u.any();
      }
    }
    Bitset np(g_.n);
    for (std::size_t t = order.size(); t-- > 0;) {
      if (c.size() + colour[t] <= bar()) return;
      const std::uint32_t v = order[t];
      c.push_back(v);
      const std::uint64_t* nv = g_.adj[v].data();
      bool any = false;
      for (std::size_t x = 0; x < words; ++x) {
        np.data()[x] = p.data()[x] & nv[x];
        any |= np.data()[x] != 0;
      }
      if (!any) {
        offer(c);
      } else {
        expand(c, np);
      }
      c.pop_back();
      if (stop_) return;
      p.reset(v);
    }
  }

  const LocalGraph& g_;
  SharedState& shared_;
  std::size_t fixed_bar_;
  bool first_only_;
  bool stop_ = false;
  std::uint64_t nodes_ = 0;
  std::vector<std::uint32_t> local_best_;
};

struct LocalResult {
  std::vector<std::uint32_t> clique;  // empty if nothing beat the bar
  bool timed_out = false;
};

// Maximum clique of g exceeding `initial_bar`. Top-level branches follow the
// root colouring from the highest colour down and run in parallel.
LocalResult search_local(const LocalGraph& g, std::size_t initial_bar, const SearchConfig& config,
                         Clock::time_point start) {
  LocalResult out;
  if (g.n == 0 || g.n <= initial_bar) return out;
  SharedState shared;
  shared.bar.store(initial_bar);
  if (config.time_limit)
    shared.deadline = start + std::chrono::duration_cast<Clock::duration>(*config.time_limit);

  // Root colouring, identical to the one a serial search computes.
  std::vector<std::uint32_t> order, colour;
  {
    Bitset u(g.n);
    for (std::size_t i = 0; i < g.n; ++i) u.set(i);
    Bitset qset(g.n);
    std::uint32_t k = 0;
    while (u.any()) {
      ++k;
      qset = u;
      for (std::size_t w = 0; w < qset.words(); ++w)
        while (qset.data()[w]) {
          const std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(qset.data()[w]));
          qset.reset(v);
          u.reset(v);
          for (std::size_t x = w; x < qset.words(); ++x) qset.data()[x] &= ~g.adj[v].data()[x];
          order.push_back(static_cast<std::uint32_t>(v));
          colour.push_back(k);
        }
    }
  }
  const std::size_t branches = order.size();
  // Branch b takes vertex order[n-1-b] with the candidates before it.
  auto branch_set = [&](std::size_t b) {
    const std::size_t t = branches - 1 - b;
    Bitset p(g.n);
    const auto& nv = g.adj[order[t]];
    for (std::size_t s = 0; s < t; ++s)
      if (nv.test(order[s])) p.set(order[s]);
    return p;
  };

  parallel_for(branches, config.workers, [&](std::size_t b) {
    const std::size_t t = branches - 1 - b;
    if (shared.timed_out.load() || colour[t] <= shared.bar.load()) return;
    std::vector<std::uint32_t> c{order[t]};
    Expander ex(g, shared, 0, false);
    ex.run(c, branch_set(b));
  });
  out.timed_out = shared.timed_out.load();
  if (!shared.found) return out;
  out.clique = shared.best;
  if (!config.deterministic || config.workers <= 1 || out.timed_out) return out;

  // Replay: the first clique of the optimal size in serial branch order.
  const std::size_t target_bar = shared.best.size() - 1;
  std::atomic<std::size_t> first{branches};
  std::vector<std::vector<std::uint32_t>> hits(branches);
  SharedState unused;
  parallel_for(branches, config.workers, [&](std::size_t b) {
    const std::size_t t = branches - 1 - b;
    if (b > first.load() || colour[t] <= target_bar) return;
    std::vector<std::uint32_t> c{order[t]};
    Expander ex(g, unused, target_bar, true);
    ex.run(c, branch_set(b));
    if (ex.found()) {
      hits[b] = ex.local_best();
      std::size_t cur = first.load();
      while (b < cur && !first.compare_exchange_weak(cur, b)) {
      }
    }
  });
  if (first.load() < branches) out.clique = hits[first.load()];
  return out;
}

CliqueResult finish(const Field& f, PointSet base, const PointSet& candidates,
                    const LocalResult& local, std::uint64_t known_size, Clock::time_point start) {
  CliqueResult r;
  if (!local.clique.empty()) {
    for (auto v : local.clique) base.push_back(candidates[v]);
    r.size = base.size();
    r.witness = std::move(base);
  } else if (known_size > base.size()) {
    r.size = known_size;
  } else {
    r.size = base.size();
    r.witness = std::move(base);
  }
  std::sort(r.witness.begin(), r.witness.end(), [&](const Point& a, const Point& b) {
    return a.index(f) < b.index(f);
  });
  r.status = local.timed_out ? CliqueStatus::LowerBound : CliqueStatus::Optimal;
  r.elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

// Sorts candidate indices by descending degree inside the candidate set, ties
// by canonical index, and returns the induced local graph.
template <class Adjacent>
LocalGraph ordered_local_graph(std::vector<std::uint64_t>& ids, Adjacent&& adjacent) {
  LocalGraph raw = make_local_graph(ids.size(), [&](std::size_t i, std::size_t j) {
    return adjacent(ids[i], ids[j]);
  });
  std::vector<std::size_t> deg(ids.size(), 0), perm(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    perm[i] = i;
    for (std::size_t w = 0; w < raw.adj[i].words(); ++w)
      deg[i] += static_cast<std::size_t>(std::popcount(raw.adj[i].data()[w]));
  }
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    if (deg[a] != deg[b]) return deg[a] > deg[b];
    return ids[a] < ids[b];
  });
  std::vector<std::uint64_t> sorted(ids.size());
  std::vector<std::size_t> pos(ids.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    sorted[i] = ids[perm[i]];
    pos[perm[i]] = i;
  }
  LocalGraph g;
  g.n = ids.size();
  g.adj.assign(g.n, Bitset(g.n));
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = 0; j < ids.size(); ++j)
      if (raw.adj[i].test(j)) g.adj[pos[i]].set(pos[j]);
  ids = std::move(sorted);
  return g;
}

}  // namespace

CliqueResult max_clique(const IntegralityGraph& g, const SearchConfig& config,
                        std::uint64_t known_size) {
  const auto start = Clock::now();
  const Field& f = g.field();
  PointSet base = config.prescribed;
  if (base.empty()) base.push_back(Point::zero(g.dim()));
  std::vector<std::uint64_t> base_ids;
  for (const auto& p : base) {
    if (p.dim() != g.dim()) throw DimensionError("prescribed point has the wrong dimension");
    for (std::size_t i = 0; i < p.dim(); ++i)
      if (p[i] >= f.q()) throw std::invalid_argument("prescribed coordinate outside the field");
    base_ids.push_back(p.index(f));
  }
  for (std::size_t i = 0; i < base_ids.size(); ++i)
    for (std::size_t j = i + 1; j < base_ids.size(); ++j)
      if (!g.adjacent(base_ids[i], base_ids[j]))
        throw InfeasiblePrescription("prescribed points " + format_point(base[i]) + " and " +
                                     format_point(base[j]) + " are not at integral distance");

  std::vector<std::uint64_t> ids;
  for (std::uint64_t x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (auto b : base_ids)
      if (!g.adjacent(x, b)) {
        ok = false;
        break;
      }
    if (ok) ids.push_back(x);
  }
  const LocalGraph local =
      ordered_local_graph(ids, [&](std::uint64_t a, std::uint64_t b) { return g.adjacent(a, b); });
  PointSet candidates;
  candidates.reserve(ids.size());
  for (auto x : ids) candidates.push_back(Point::from_index(f, g.dim(), x));

  const std::size_t bar = known_size > base.size() ? known_size - base.size() : 0;
  const LocalResult res = search_local(local, bar, config, start);
  return finish(f, std::move(base), candidates, res, known_size, start);
}

CliqueResult max_clique_in_set(const Field& f, const PointSet& candidates,
                               const SearchConfig& config) {
  const auto start = Clock::now();
  std::vector<std::uint64_t> ids(candidates.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
  // Local ids here are positions; order ties by canonical index of the point.
  std::vector<std::size_t> by_index(candidates.size());
  for (std::size_t i = 0; i < by_index.size(); ++i) by_index[i] = i;
  std::sort(by_index.begin(), by_index.end(), [&](std::size_t a, std::size_t b) {
    return candidates[a].index(f) < candidates[b].index(f);
  });
  PointSet sorted;
  for (auto i : by_index) sorted.push_back(candidates[i]);
  const LocalGraph local = ordered_local_graph(ids, [&](std::uint64_t a, std::uint64_t b) {
    return is_integral(f, sorted[a], sorted[b]);
  });
  PointSet ordered;
  for (auto i : ids) ordered.push_back(sorted[i]);
  const LocalResult res = search_local(local, 0, config, start);
  return finish(f, {}, ordered, res, 0, start);
}

PointSetCheck verify_point_set(const Field& f, const PointSet& points) {
  PointSetCheck r;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (!is_integral(f, points[i], points[j])) {
        r.integral = false;
        r.violation = std::make_pair(i, j);
        return r;
      }
  return r;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string join_points(const PointSet& pts) {
  std::string s;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) s += ';';
    s += format_point(pts[i]);
  }
  return s;
}

}  // namespace

std::optional<ResultCache> ResultCache::from_environment() {
  const char* dir = std::getenv("QFINT_CACHE_DIR");
  if (!dir || !*dir) return std::nullopt;
  std::filesystem::create_directories(dir);
  return ResultCache((std::filesystem::path(dir) / "results.txt").string());
}

std::optional<CliqueResult> ResultCache::lookup(const Field& f, unsigned m, Reduction r) const {
  std::ifstream in(path_);
  if (!in) return std::nullopt;
  std::optional<CliqueResult> hit;
  std::string line;
  while (std::getline(in, line)) {
    const auto parts = split(line, '|');
    if (parts.size() != 6) continue;
    if (parts[0] != f.descriptor() || parts[1] != std::to_string(m) || parts[2] != to_string(r))
      continue;
    CliqueResult res;
    if (parts[4] == "optimal")
      res.status = CliqueStatus::Optimal;
    else if (parts[4] == "formula_certified")
      res.status = CliqueStatus::FormulaCertified;
    else
      continue;  // time-limited results are recomputed
    try {
      res.size = std::stoull(parts[3]);
      if (!parts[5].empty()) res.witness = parse_point_list(parts[5]);
    } catch (const std::exception&) {
      continue;
    }
    if (res.witness.size() != res.size || !verify_point_set(f, res.witness).integral) continue;
    res.reduction = r;
    hit = std::move(res);
  }
  return hit;
}

void ResultCache::store(const Field& f, unsigned m, const CliqueResult& result) const {
  std::ofstream out(path_, std::ios::app);
  if (!out) throw std::runtime_error("cannot append to cache file " + path_);
  out << f.descriptor() << '|' << m << '|' << to_string(result.reduction) << '|' << result.size
      << '|' << to_string(result.status) << '|' << join_points(result.witness) << '\n';
}

namespace {

// First isotropic point in canonical order; nullopt when there is none.
std::optional<Point> first_isotropic(const Field& f, unsigned m) {
  const std::uint64_t n = space_size(f, m);
  for (std::uint64_t i = 1; i < n; ++i) {
    Point x = Point::from_index(f, m, i);
    if (norm(f, x) == 0) return x;
  }
  return std::nullopt;
}

CliqueResult compute_I_uncached(const Field& f, unsigned m, const SearchConfig& config) {
  const auto start = Clock::now();
  const std::uint64_t q = f.q();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };
  CliqueResult r;
  if (m == 1 || m == 2) {
    // m = 1: the complete graph. m = 2: I(2,q) = q.
    r.witness = line(f, m);
    r.size = r.witness.size();
    r.status = CliqueStatus::FormulaCertified;
    r.reduction = Reduction::Construction;
    r.upper_bound_note = m == 1 ? "complete graph" : "I(2,q) = q";
    r.elapsed = elapsed();
    return r;
  }
  if (m == 3 && q % 4 == 1) {
    r.witness = hyperplane_q1mod4(f);
    std::sort(r.witness.begin(), r.witness.end(),
              [&](const Point& a, const Point& b) { return a.index(f) < b.index(f); });
    r.size = r.witness.size();
    r.status = CliqueStatus::FormulaCertified;
    r.reduction = Reduction::Construction;
    r.upper_bound_note = "I(3,q) <= q * I(2,q) = q^2";
    r.elapsed = elapsed();
    return r;
  }

  const IntegralityGraph g = build_graph(f, m);
  SearchConfig cfg = config;
  LowerBound lb;
  if (m == 3) {
    lb.value = q;
    lb.witness = line(f, 3);
  } else {
    lb = lower_bound(f, m);
  }
  // A clique through 0 of size >= 2 contains a point of P+ or P0. OZ fixes 0,
  // preserves integrality and is transitive on P+ and on P0, so the point can
  // be taken to be e1 or the first isotropic point. For m = 3, q = 3 mod 4,
  // the hyperplane argument reduces further to the pair {0, e1} alone.
  std::vector<Point> seconds{Point::unit(m, 0)};
  if (m != 3)
    if (auto iso = first_isotropic(f, m)) seconds.push_back(*iso);

  std::uint64_t best = lb.value;
  PointSet witness = lb.witness;
  bool timed_out = false;
  for (const auto& second : seconds) {
    cfg.prescribed = {Point::zero(m), second};
    if (config.time_limit) {
      const auto left = *config.time_limit - std::chrono::duration<double>(Clock::now() - start);
      cfg.time_limit = std::max(left, std::chrono::duration<double>(0));
    }
    const CliqueResult s = max_clique(g, cfg, best);
    timed_out |= s.status == CliqueStatus::LowerBound;
    if (!s.witness.empty() && s.size > best) {
      best = s.size;
      witness = s.witness;
    }
  }
  std::sort(witness.begin(), witness.end(),
            [&](const Point& a, const Point& b) { return a.index(f) < b.index(f); });
  r.size = best;
  r.witness = std::move(witness);
  r.status = timed_out ? CliqueStatus::LowerBound : CliqueStatus::Optimal;
  r.reduction = Reduction::PrescribedPair;
  r.elapsed = elapsed();
  return r;
}

Reduction planned_reduction(const Field& f, unsigned m) {
  if (m <= 2 || (m == 3 && f.q() % 4 == 1)) return Reduction::Construction;
  return Reduction::PrescribedPair;
}

}  // namespace

CliqueResult compute_I(const Field& f, unsigned m, const SearchConfig& config,
                       const ResultCache* cache) {
  if (m < 1) throw std::invalid_argument("compute_I needs m >= 1");
  if (!config.prescribed.empty())
    throw std::invalid_argument("compute_I chooses its own prescribed points");
  const auto start = Clock::now();
  if (cache) {
    if (auto hit = cache->lookup(f, m, planned_reduction(f, m))) {
      if (hit->status == CliqueStatus::FormulaCertified)
        hit->upper_bound_note = compute_I_uncached(f, m, {}).upper_bound_note;
      hit->elapsed = std::chrono::duration<double>(Clock::now() - start).count();
      return *hit;
    }
  }
  CliqueResult r = compute_I_uncached(f, m, config);
  const auto check = verify_point_set(f, r.witness);
  if (!check.integral || r.witness.size() != r.size)
    throw std::logic_error("compute_I produced an invalid witness");
  if (cache) cache->store(f, m, r);
  return r;
}

void export_dimacs(const IntegralityGraph& g, std::ostream& os) {
  const std::uint64_t n = g.order();
  std::vector<std::uint64_t> conn;
  conn.reserve(g.degree());
  for (std::uint64_t c = 1; c < n; ++c)
    if (g.in_connection(c)) conn.push_back(c);
  os << "p edge " << n << ' ' << n * g.degree() / 2 << '\n';
  std::vector<std::uint64_t> nbrs;
  for (std::uint64_t i = 0; i < n; ++i) {
    nbrs.clear();
    for (auto c : conn) {
      const std::uint64_t j = sum_index(g.field(), g.dim(), i, c);
      if (j > i) nbrs.push_back(j);
    }
    std::sort(nbrs.begin(), nbrs.end());
    for (auto j : nbrs) os << "e " << i + 1 << ' ' << j + 1 << '\n';
  }
  if (!os) throw std::runtime_error("DIMACS write failed");
}

DimacsGraph read_dimacs(std::istream& is) {
  DimacsGraph g;
  std::uint64_t declared = 0;
  bool header = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "p") {
      std::string kind;
      if (!(ls >> kind >> g.vertices >> declared) || header)
        throw std::runtime_error("bad DIMACS header at line " + std::to_string(lineno));
      header = true;
    } else if (tag == "e") {
      std::uint64_t a = 0, b = 0;
      if (!header || !(ls >> a >> b) || a < 1 || b < 1 || a > g.vertices || b > g.vertices)
        throw std::runtime_error("bad DIMACS edge at line " + std::to_string(lineno));
      g.edges.emplace_back(a, b);
    } else {
      throw std::runtime_error("unknown DIMACS line " + std::to_string(lineno));
    }
  }
  if (!header) throw std::runtime_error("DIMACS input has no header");
  if (g.edges.size() != declared)
    throw std::runtime_error("DIMACS edge count " + std::to_string(g.edges.size()) +
                             " differs from header " + std::to_string(declared));
  return g;
}

}  // namespace qfint
