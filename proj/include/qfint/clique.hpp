#pragma once

// The graph of integral distances on F_q^m as a Cayley graph, maximum-clique
// search, the value I(m,q), and DIMACS interchange.

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qfint/ffield.hpp"
#include "qfint/geometry.hpp"

namespace qfint {

// Adjacency of u and v is membership of u - v in the connection set C, kept
// as a bitset over canonical point indices.
class IntegralityGraph {
 public:
  IntegralityGraph(Field f, unsigned m, std::vector<std::uint64_t> connection,
                   std::uint64_t degree);

  const Field& field() const { return f_; }
  unsigned dim() const { return m_; }
  std::uint64_t order() const { return n_; }  // q^m
  std::uint64_t degree() const { return degree_; }  // |C|

  bool in_connection(std::uint64_t diff_index) const {
    return (conn_[diff_index >> 6] >> (diff_index & 63)) & 1u;
  }
  // Index of u - v computed digit-wise from canonical indices.
  std::uint64_t diff_index(std::uint64_t u, std::uint64_t v) const;
  bool adjacent(std::uint64_t u, std::uint64_t v) const {
    return u != v && in_connection(diff_index(u, v));
  }

 private:
  Field f_;
  unsigned m_;
  std::uint64_t n_;
  std::vector<std::uint64_t> conn_;
  std::uint64_t degree_;
};

inline constexpr std::uint64_t kGraphBudget = std::uint64_t{1} << 32;

// Throws BudgetExceeded if q^m > budget, std::logic_error if |C| disagrees
// with the closed-form degree.
IntegralityGraph build_graph(const Field& f, unsigned m, std::uint64_t budget = kGraphBudget);

enum class CliqueStatus { Optimal, LowerBound, FormulaCertified };
enum class Reduction { None, PrescribedPair, Construction };
const char* to_string(CliqueStatus s);
const char* to_string(Reduction r);

struct SearchConfig {
  PointSet prescribed;
  std::optional<std::chrono::duration<double>> time_limit;
  bool deterministic = false;
  unsigned workers = 1;
};

struct CliqueResult {
  std::uint64_t size = 0;
  PointSet witness;  // sorted by canonical index
  CliqueStatus status = CliqueStatus::Optimal;
  Reduction reduction = Reduction::None;
  double elapsed = 0.0;  // seconds
  std::string upper_bound_note;  // set for formula_certified results
};

class InfeasiblePrescription : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Maximum clique of the integrality graph. With no prescribed points, vertex 0
// is fixed (translation invariance). Cliques not larger than `known_size` are
// not reported; if nothing larger exists the result carries size
// `known_size` and an empty witness, to be filled in by the caller.
CliqueResult max_clique(const IntegralityGraph& g, const SearchConfig& config,
                        std::uint64_t known_size = 0);

// Maximum mutually integral subset of an explicit candidate list.
CliqueResult max_clique_in_set(const Field& f, const PointSet& candidates,
                               const SearchConfig& config = {});

struct PointSetCheck {
  bool integral = true;
  std::optional<std::pair<std::size_t, std::size_t>> violation;  // first failing pair
};

PointSetCheck verify_point_set(const Field& f, const PointSet& points);

// Append-only result store: one `fieldspec|m|reduction|size|status|witness`
// record per line, the witness as a ';'-separated point list.
class ResultCache {
 public:
  explicit ResultCache(std::string path) : path_(std::move(path)) {}
  // $QFINT_CACHE_DIR/results.txt, or nullopt when the variable is unset.
  static std::optional<ResultCache> from_environment();

  // Most recent exact record for the key.
  std::optional<CliqueResult> lookup(const Field& f, unsigned m, Reduction r) const;
  void store(const Field& f, unsigned m, const CliqueResult& result) const;
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// I(m,q) through the case dispatch: trivial, formula-certified, the pair
// reduction for m = 3, q = 3 mod 4, and otherwise a search seeded with the
// construction lower bound.
CliqueResult compute_I(const Field& f, unsigned m, const SearchConfig& config = {},
                       const ResultCache* cache = nullptr);

// `p edge n e` followed by `e i j` lines, i < j, ids = canonical index + 1.
void export_dimacs(const IntegralityGraph& g, std::ostream& os);

struct DimacsGraph {
  std::uint64_t vertices = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;  // 1-indexed, as read
};

DimacsGraph read_dimacs(std::istream& is);

}  // namespace qfint
