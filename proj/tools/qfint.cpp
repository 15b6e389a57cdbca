// Command-line front end: qfint <subcommand> [options]. See README.md.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "qfint/clique.hpp"
#include "qfint/constructions.hpp"
#include "qfint/counting.hpp"
#include "qfint/symmetry.hpp"

using namespace qfint;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "1.0.0";

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kBudget = 3 };

struct Globals {
  bool json = false;
  bool deterministic = false;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fixed(double x, int digits = 3) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

// One RunRecord per invocation in --json mode.
void emit_json(const Globals& g, const std::string& command, json parameters,
               const std::string& field, json result, Clock::time_point t0) {
  json rec;
  rec["command"] = command;
  rec["parameters"] = std::move(parameters);
  rec["field"] = field;
  rec["result"] = std::move(result);
  rec["wall_time"] = g.deterministic ? json(nullptr) : json(seconds_since(t0));
  rec["version"] = kVersion;
  std::cout << rec.dump(2) << "\n";
}

// "1-5", "3", "1,3-4".
std::vector<unsigned> parse_range(const std::string& text) {
  std::vector<unsigned> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto dash = tok.find('-');
    if (dash == std::string::npos) {
      out.push_back(static_cast<unsigned>(std::stoul(tok)));
    } else {
      const unsigned lo = std::stoul(tok.substr(0, dash)), hi = std::stoul(tok.substr(dash + 1));
      if (lo > hi) throw std::invalid_argument("empty range " + tok);
      for (unsigned m = lo; m <= hi; ++m) out.push_back(m);
    }
  }
  if (out.empty()) throw std::invalid_argument("empty list '" + text + "'");
  return out;
}

// Field specs separated by ','; when a spec carries an explicit modulus
// (which itself uses ','), separate entries with ';' instead.
std::vector<std::string> split_specs(const std::string& text) {
  const char sep = text.find(':') != std::string::npos ? ';' : ',';
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, sep))
    if (!tok.empty()) out.push_back(tok);
  if (out.empty()) throw std::invalid_argument("empty field list");
  return out;
}

// Counting accepts any prime power, including even ones.
std::uint64_t q_value(const std::string& spec) {
  if (spec.find_first_of("^:") != std::string::npos) return parse_field(spec).q();
  std::size_t used = 0;
  const std::uint64_t q = std::stoull(spec, &used);
  if (used != spec.size() || !prime_power(q)) throw std::invalid_argument("not a prime power: " + spec);
  return q;
}

std::chrono::duration<double> parse_duration(const std::string& text) {
  std::size_t used = 0;
  double v = std::stod(text, &used);
  const std::string unit = text.substr(used);
  if (unit == "h")
    v *= 3600;
  else if (unit == "m" || unit == "min")
    v *= 60;
  else if (!unit.empty() && unit != "s")
    throw std::invalid_argument("bad duration '" + text + "'");
  return std::chrono::duration<double>(v);
}

std::string quad_name(QuadClass c) { return to_string(c); }

json points_json(const PointSet& s) {
  json a = json::array();
  for (const auto& p : s) a.push_back(format_point(p));
  return a;
}

std::vector<std::uint32_t> odd_prime_powers(std::uint32_t qmax) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t q = 3; q <= qmax; q += 2)
    if (prime_power(q)) out.push_back(q);
  return out;
}

// PASS/FAIL lines shared by the verify subcommand.
class Report {
 public:
  explicit Report(const Globals& g) : g_(g) {}
  template <class F>
  void check(const std::string& name, F&& body) {
    const auto t0 = Clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = body(detail);
    } catch (const std::exception& e) {
      detail = e.what();
    }
    const double dt = seconds_since(t0);
    all_ok_ = all_ok_ && ok;
    json row{{"check", name}, {"pass", ok}, {"detail", detail}};
    row["seconds"] = g_.deterministic ? json(nullptr) : json(dt);
    rows_.push_back(row);
    if (!g_.json) {
      std::cout << (ok ? "PASS " : "FAIL ") << name;
      if (!detail.empty()) std::cout << "  " << detail;
      if (!g_.deterministic) std::cout << "  (" << fixed(dt) << " s)";
      std::cout << "\n" << std::flush;
    }
  }
  bool ok() const { return all_ok_; }
  const json& rows() const { return rows_; }

 private:
  const Globals& g_;
  bool all_ok_ = true;
  json rows_ = json::array();
};

void verify_groups(Report& r, const Globals& g) {
  for (auto [m, q] : std::vector<std::pair<unsigned, std::uint32_t>>{{2, 3}, {2, 5}, {2, 7}, {2, 9}, {3, 3}}) {
    r.check("O(" + std::to_string(m) + "," + std::to_string(q) + ") brute = formula", [&](std::string& d) {
      const auto n = enumerate_O_brute(parse_field(std::to_string(q)), m, g.workers);
      d = std::to_string(n) + " vs " + to_string(order_O(m, q));
      return BigInt(n) == order_O(m, q);
    });
  }
  for (auto [m, q, ratio] : std::vector<std::tuple<unsigned, std::uint32_t, unsigned>>{
           {2, 3, 1}, {2, 5, 2}, {2, 7, 1}, {2, 9, 3}, {3, 3, 1}}) {
    r.check("Aut(" + std::to_string(m) + "," + std::to_string(q) + ") = " + std::to_string(ratio) + " * |OZ|",
            [&, m = m, q = q, ratio = ratio](std::string& d) {
              const auto c = enumerate_aut_linear(parse_field(std::to_string(q)), m, g.workers);
              d = std::to_string(c.automorphisms) + " automorphisms, |OZ| = " + to_string(order_OZ(m, q));
              return BigInt(c.automorphisms) == order_OZ(m, q) * ratio && BigInt(c.in_oz) == order_OZ(m, q);
            });
  }
}

void verify_conjecture_range(Report& r, const Globals& g, unsigned m, std::uint64_t pmax, unsigned samples) {
  r.check("conjecture m=" + std::to_string(m) + " p<=" + std::to_string(pmax), [&](std::string& d) {
    const auto rep = verify_conjecture(m, pmax, samples, 1, g.workers);
    d = std::to_string(rep.primes.size()) + " primes, " + std::to_string(rep.checks.size()) + " checks";
    if (rep.counterexample) {
      const auto& c = *rep.counterexample;
      d += "; counterexample p=" + std::to_string(c.p) + " v=" + format_point(c.v) + " observed " +
           std::to_string(c.observed) + " predicted " + to_string(c.predicted);
    }
    return rep.agreement();
  });
}

void verify_constructions(Report& r, std::uint32_t qmax) {
  for (std::uint32_t q : odd_prime_powers(qmax)) {
    const Field f = parse_field(std::to_string(q));
    std::vector<std::string> names = {"line"};
    if (q % 4 == 1) names.push_back("hyperplane_q1mod4");
    if (q % 4 == 3) names.insert(names.end(), {"circle_plus_line", "nonintegral_plane"});
    names.push_back("isotropic_plane_4d");
    for (const auto& name : names)
      r.check(name + " q=" + std::to_string(q), [&](std::string& d) {
        const Construction c = build_construction(name, f);
        const bool ok = verify_construction(f, c, &d);
        if (ok) d = std::to_string(c.points.size()) + " points";
        if (auto it = c.parameters.find("warning"); it != c.parameters.end()) d += "; " + it->second;
        return ok;
      });
  }
  if (qmax >= 27)
    r.check("F_27 28-point example under " + std::string(kF27Modulus), [&](std::string& d) {
      const Field f = parse_field(kF27Modulus);
      const PointSet s = f27_example(f);
      const auto chk = verify_point_set(f, s);
      if (chk.violation)
        d = "non-square distance between " + format_point(s[chk.violation->first]) + " and " +
            format_point(s[chk.violation->second]);
      return chk.integral && s.size() == 28;
    });
}

std::string witness_text(const PointSet& w) {
  std::string s;
  for (const auto& p : w) s += " " + format_point(p);
  return s;
}

std::string clique_line(const Globals& g, unsigned m, const Field& f, const CliqueResult& r) {
  return std::to_string(m) + " " + f.descriptor() + " " + std::to_string(r.size) + " " + to_string(r.status) +
         " " + (g.deterministic ? std::string("-") : fixed(r.elapsed)) + witness_text(r.witness);
}

json clique_json(const Globals& g, const CliqueResult& r) {
  json j{{"size", r.size}, {"status", to_string(r.status)}, {"reduction", to_string(r.reduction)}};
  j["elapsed"] = g.deterministic ? json(nullptr) : json(r.elapsed);
  j["witness"] = points_json(r.witness);
  if (!r.upper_bound_note.empty()) j["upper_bound"] = r.upper_bound_note;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integral point sets over finite fields"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "Emit one JSON run record");
  app.add_flag("--deterministic", g.deterministic, "Byte-identical output; omits timings");
  app.add_option("--workers", g.workers, "Worker threads")->check(CLI::Range(1u, 1024u));
  app.set_version_flag("--version", kVersion);

  // field
  auto* field_cmd = app.add_subcommand("field", "Describe a finite field");
  std::string field_q;
  std::optional<std::string> field_elem;
  field_cmd->add_option("--q", field_q, "Field spec: q, p^r or p^r:c0,...,cr")->required();
  field_cmd->add_option("--element", field_elem, "Element in polynomial notation, e.g. 1+2w");

  // counts
  auto* counts_cmd = app.add_subcommand("counts", "S, Z, N, D counts for F_q^m");
  std::string counts_m, counts_q, counts_method = "closed";
  bool cross_check = false;
  counts_cmd->add_option("--m", counts_m, "Dimensions, e.g. 3 or 1-5")->required();
  counts_cmd->add_option("--q", counts_q, "Field orders, comma separated")->required();
  counts_cmd->add_option("--method", counts_method)->check(CLI::IsMember({"closed", "recursive", "brute"}));
  counts_cmd->add_flag("--cross-check", cross_check, "Compare all three methods");

  // srg
  auto* srg_cmd = app.add_subcommand("srg", "Strong regularity of the integral distance graph");
  std::string srg_m, srg_q;
  srg_cmd->add_option("--m", srg_m)->required();
  srg_cmd->add_option("--q", srg_q)->required();

  // neighbors
  auto* nb_cmd = app.add_subcommand("neighbors", "Common neighbours of two points");
  unsigned nb_m = 0;
  std::string nb_q, nb_u, nb_v;
  nb_cmd->add_option("--m", nb_m)->required();
  nb_cmd->add_option("--q", nb_q)->required();
  nb_cmd->add_option("--u", nb_u, "Default: origin");
  nb_cmd->add_option("--v", nb_v, "Default: e1");

  // witness
  auto* wit_cmd = app.add_subcommand("witness", "Orthogonal matrix mapping u to v");
  unsigned wit_m = 0;
  std::string wit_q, wit_u, wit_v;
  wit_cmd->add_option("--m", wit_m)->required();
  wit_cmd->add_option("--q", wit_q)->required();
  wit_cmd->add_option("--u", wit_u)->required();
  wit_cmd->add_option("--v", wit_v)->required();

  // verify
  auto* ver_cmd = app.add_subcommand("verify", "Run verification suites");
  std::string ver_what = "all";
  unsigned ver_m = 3, ver_samples = 5;
  std::uint64_t ver_pmax = 101;
  std::uint32_t ver_qmax = 27;
  ver_cmd->add_option("suite", ver_what)->check(CLI::IsMember({"all", "conjecture", "groups", "constructions"}));
  ver_cmd->add_option("--m", ver_m, "Dimension for the conjecture suite");
  ver_cmd->add_option("--pmax", ver_pmax, "Largest prime for the conjecture suite");
  ver_cmd->add_option("--samples", ver_samples, "Random vectors per class and prime");
  ver_cmd->add_option("--qmax", ver_qmax, "Largest q for the constructions suite");

  // clique
  auto* cl_cmd = app.add_subcommand("clique", "Maximum integral point set in F_q^m");
  unsigned cl_m = 0;
  std::string cl_q, cl_prescribe, cl_limit, cl_dimacs;
  cl_cmd->add_option("--m", cl_m)->required();
  cl_cmd->add_option("--q", cl_q)->required();
  cl_cmd->add_option("--prescribe", cl_prescribe, "Points forced into the set, ';' separated");
  cl_cmd->add_option("--time-limit", cl_limit, "e.g. 600s, 10m, 2h");
  cl_cmd->add_option("--export-dimacs", cl_dimacs, "Also write the graph in DIMACS format");

  // itable
  auto* it_cmd = app.add_subcommand("itable", "Table of I(m,q)");
  std::string it_m = "3", it_q = "3,5,7,11", it_limit;
  bool it_csv = false;
  it_cmd->add_option("--m", it_m);
  it_cmd->add_option("--q", it_q);
  it_cmd->add_option("--time-limit", it_limit, "Per entry");
  it_cmd->add_flag("--csv", it_csv, "CSV instead of an aligned table");

  // construct
  auto* con_cmd = app.add_subcommand("construct", "Build and verify a named construction");
  std::string con_name, con_q, con_out;
  unsigned con_m = 0;
  con_cmd->add_option("name", con_name)
      ->required()
      ->check(CLI::IsMember({"line", "hyperplane_q1mod4", "circle_plus_line", "isotropic_plane_4d", "product",
                             "nonintegral_plane"}));
  con_cmd->add_option("--q", con_q)->required();
  con_cmd->add_option("--m", con_m);
  con_cmd->add_option("--out", con_out, "Point-set file to write");

  // export-dimacs
  auto* dim_cmd = app.add_subcommand("export-dimacs", "Write the integral distance graph");
  unsigned dim_m = 0;
  std::string dim_q, dim_out;
  dim_cmd->add_option("--m", dim_m)->required();
  dim_cmd->add_option("--q", dim_q)->required();
  dim_cmd->add_option("--out", dim_out, "Default: stdout");

  // verify-pointset
  auto* vp_cmd = app.add_subcommand("verify-pointset", "Check a point-set file for integrality");
  std::string vp_file;
  bool vp_f27 = false;
  vp_cmd->add_option("file", vp_file, "Point-set file");
  vp_cmd->add_flag("--f27-example", vp_f27, "Check the built-in 28-point F_27 candidate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  const auto t0 = Clock::now();
  try {
    if (*field_cmd) {
      const Field f = parse_field(field_q);
      json r{{"p", f.p()}, {"r", f.r()}, {"q", f.q()}, {"modulus", f.modulus()},
             {"non_square", f.non_square()}, {"minus_one_is_square", f.minus_one_is_square()}};
      if (f.minus_one_is_square()) r["omega"] = f.omega();
      if (field_elem) {
        const Elem a = f.parse_poly(*field_elem);
        json e{{"encoding", a}, {"poly", f.to_poly_string(a)}, {"quad_class", quad_name(f.quad_class(a))}};
        if (auto s = f.sqrt(a)) e["sqrt"] = f.to_poly_string(*s);
        r["element"] = e;
      }
      if (g.json) {
        emit_json(g, "field", {{"q", field_q}}, f.descriptor(), r, t0);
      } else {
        std::cout << "field " << f.descriptor() << "\np " << f.p() << "\nr " << f.r() << "\nq " << f.q()
                  << "\nnon_square " << f.to_poly_string(f.non_square()) << "\nminus_one_is_square "
                  << (f.minus_one_is_square() ? "yes" : "no") << "\n";
        if (r.contains("omega")) std::cout << "omega " << f.to_poly_string(f.omega()) << "\n";
        if (r.contains("element"))
          std::cout << "element " << r["element"]["poly"].get<std::string>() << " encoding " << r["element"]["encoding"]
                    << " class " << r["element"]["quad_class"].get<std::string>() << "\n";
      }
      return kOk;
    }

    if (*counts_cmd) {
      const auto ms = parse_range(counts_m);
      const auto qs = split_specs(counts_q);
      json rows = json::array();
      bool agree = true;
      std::vector<std::string> mismatches;
      if (!g.json) std::cout << "m,q,S,Z,N,D,method\n";
      for (const auto& spec : qs)
        for (unsigned m : ms) {
          const std::uint64_t q = q_value(spec);
          CountRecord rec;
          if (counts_method == "brute" || (q % 2 == 1 && counts_method == "closed"))
            rec = counts_method == "brute" ? counts_brute(parse_field(spec), m, g.workers) : counts_closed(m, q);
          else
            rec = counts_recursive(m, q);
          if (cross_check && q % 2 == 1) {
            const bool ok = counts_closed(m, q).same_counts(counts_recursive(m, q)) &&
                            counts_closed(m, q).same_counts(counts_brute(parse_field(spec), m, g.workers));
            if (!ok) mismatches.push_back("m=" + std::to_string(m) + " q=" + spec);
            agree = agree && ok;
          }
          rows.push_back({{"m", m}, {"q", q}, {"S", to_string(rec.S)}, {"Z", to_string(rec.Z)},
                          {"N", to_string(rec.N)}, {"D", to_string(rec.D)}, {"method", to_string(rec.method)}});
          if (!g.json)
            std::cout << m << "," << q << "," << rec.S << "," << rec.Z << "," << rec.N << "," << rec.D << ","
                      << to_string(rec.method) << "\n";
        }
      if (g.json) {
        json res{{"rows", rows}};
        if (cross_check) res["cross_check"] = agree ? "PASS" : "FAIL";
        emit_json(g, "counts", {{"m", counts_m}, {"q", counts_q}, {"method", counts_method}, {"cross_check", cross_check}},
                  "", res, t0);
      } else if (cross_check) {
        std::cout << (agree ? "PASS" : "FAIL") << " cross-check closed = recursive = brute";
        for (const auto& s : mismatches) std::cout << " " << s;
        std::cout << "\n";
      }
      return agree ? kOk : kVerifyFailed;
    }

    if (*srg_cmd) {
      json rows = json::array();
      if (!g.json) std::cout << "m,q,v,k,lambda,mu_num,mu_den,mu_integral,is_srg\n";
      for (const auto& spec : split_specs(srg_q))
        for (unsigned m : parse_range(srg_m)) {
          const Field f = parse_field(spec);
          const auto r = srg_report(f, m, g.workers);
          const std::string srg = r.is_srg ? (*r.is_srg ? "true" : "false") : "unknown";
          const BigInt num = boost::multiprecision::numerator(r.mu), den = boost::multiprecision::denominator(r.mu);
          rows.push_back({{"m", m}, {"q", f.q()}, {"v", to_string(r.v)}, {"k", to_string(r.k)},
                          {"lambda", to_string(r.lambda)}, {"mu_num", to_string(num)}, {"mu_den", to_string(den)},
                          {"mu_integral", r.mu_integral}, {"is_srg", srg}, {"decided_by", r.decided_by}});
          if (!g.json)
            std::cout << m << "," << f.q() << "," << r.v << "," << r.k << "," << r.lambda << "," << num << "," << den
                      << "," << (r.mu_integral ? "true" : "false") << "," << srg << "\n";
        }
      if (g.json) emit_json(g, "srg", {{"m", srg_m}, {"q", srg_q}}, "", {{"rows", rows}}, t0);
      return kOk;
    }

    if (*nb_cmd) {
      const Field f = parse_field(nb_q);
      const Point u = nb_u.empty() ? Point::zero(nb_m) : parse_point(nb_u);
      const Point v = nb_v.empty() ? Point::unit(nb_m, 0) : parse_point(nb_v);
      if (u.dim() != nb_m || v.dim() != nb_m) throw DimensionError("points must have dimension m");
      const auto observed = common_neighbors_brute(f, u, v, g.workers);
      const NormClass cls = norm_class(f, sub(f, v, u));
      std::optional<BigInt> predicted;
      if (cls == NormClass::Plus) predicted = common_adjacent_closed(nb_m, f.q());
      if (cls == NormClass::Zero && nb_m >= 3) predicted = conjectured_B(nb_m, f.q());
      if (cls == NormClass::Minus && nb_m >= 3) predicted = implied_nonsquare_common(nb_m, f.q());
      const std::string pred = predicted ? to_string(*predicted) : "-";
      if (g.json) {
        json r{{"u", format_point(u)}, {"v", format_point(v)}, {"class", to_string(cls)}, {"observed", observed}};
        r["predicted"] = predicted ? json(pred) : json(nullptr);
        emit_json(g, "neighbors", {{"m", nb_m}, {"q", nb_q}}, f.descriptor(), r, t0);
      } else {
        std::cout << "m,q,u,v,class,observed,predicted\n"
                  << nb_m << "," << f.descriptor() << ",\"" << format_point(u) << "\",\"" << format_point(v) << "\","
                  << to_string(cls) << "," << observed << "," << pred << "\n";
      }
      return predicted && BigInt(observed) != *predicted ? kVerifyFailed : kOk;
    }

    if (*wit_cmd) {
      const Field f = parse_field(wit_q);
      const Point u = parse_point(wit_u), v = parse_point(wit_v);
      if (u.dim() != wit_m || v.dim() != wit_m) throw DimensionError("points must have dimension m");
      const SquareMatrix a = transitivity_witness(f, u, v);
      const bool ok = is_orthogonal(f, a) && apply(f, a, u) == v;
      if (g.json)
        emit_json(g, "witness", {{"m", wit_m}, {"q", wit_q}, {"u", wit_u}, {"v", wit_v}}, f.descriptor(),
                  {{"matrix", format_matrix(a)}, {"verified", ok}}, t0);
      else
        std::cout << format_matrix(a) << "\n" << (ok ? "VERIFIED" : "FAILED") << "\n";
      return ok ? kOk : kVerifyFailed;
    }

    if (*ver_cmd) {
      Report r(g);
      if (ver_what == "groups" || ver_what == "all") verify_groups(r, g);
      if (ver_what == "conjecture") verify_conjecture_range(r, g, ver_m, ver_pmax, ver_samples);
      if (ver_what == "all") {
        verify_conjecture_range(r, g, 3, 101, ver_samples);
        verify_conjecture_range(r, g, 4, 13, ver_samples);
      }
      if (ver_what == "constructions" || ver_what == "all") verify_constructions(r, ver_qmax);
      if (g.json)
        emit_json(g, "verify", {{"suite", ver_what}}, "", {{"checks", r.rows()}, {"pass", r.ok()}}, t0);
      else
        std::cout << (r.ok() ? "ALL PASS" : "SOME CHECKS FAILED") << "\n";
      return r.ok() ? kOk : kVerifyFailed;
    }

    if (*cl_cmd) {
      const Field f = parse_field(cl_q);
      SearchConfig cfg;
      cfg.deterministic = g.deterministic;
      cfg.workers = g.workers;
      if (!cl_limit.empty()) cfg.time_limit = parse_duration(cl_limit);
      std::optional<IntegralityGraph> graph;
      if (!cl_dimacs.empty()) {
        graph.emplace(build_graph(f, cl_m));
        std::ofstream os(cl_dimacs);
        if (!os) throw std::runtime_error("cannot write " + cl_dimacs);
        export_dimacs(*graph, os);
      }
      CliqueResult r;
      if (!cl_prescribe.empty()) {
        cfg.prescribed = parse_point_list(cl_prescribe);
        if (!graph) graph.emplace(build_graph(f, cl_m));
        r = max_clique(*graph, cfg);
        r.reduction = Reduction::PrescribedPair;
      } else {
        const auto cache = ResultCache::from_environment();
        r = compute_I(f, cl_m, cfg, cache ? &*cache : nullptr);
      }
      if (g.json)
        emit_json(g, "clique", {{"m", cl_m}, {"q", cl_q}, {"prescribe", cl_prescribe}, {"time_limit", cl_limit}},
                  f.descriptor(), clique_json(g, r), t0);
      else
        std::cout << clique_line(g, cl_m, f, r) << "\n";
      return r.status == CliqueStatus::LowerBound ? kBudget : kOk;
    }

    if (*it_cmd) {
      SearchConfig cfg;
      cfg.deterministic = g.deterministic;
      cfg.workers = g.workers;
      if (!it_limit.empty()) cfg.time_limit = parse_duration(it_limit);
      const auto cache = ResultCache::from_environment();
      struct Row {
        unsigned m;
        std::string q;
        CliqueResult r;
      };
      std::vector<Row> rows;
      for (unsigned m : parse_range(it_m))
        for (const auto& spec : split_specs(it_q)) {
          const Field f = parse_field(spec);
          rows.push_back({m, f.descriptor(), compute_I(f, m, cfg, cache ? &*cache : nullptr)});
        }
      bool partial = false;
      for (const auto& row : rows) partial = partial || row.r.status == CliqueStatus::LowerBound;
      if (g.json) {
        json out = json::array();
        for (const auto& row : rows) {
          json j = clique_json(g, row.r);
          j["m"] = row.m;
          j["q"] = row.q;
          out.push_back(j);
        }
        emit_json(g, "itable", {{"m", it_m}, {"q", it_q}, {"time_limit", it_limit}}, "", {{"rows", out}}, t0);
      } else if (it_csv) {
        std::cout << "m,q,I,status,reduction,elapsed\n";
        for (const auto& row : rows)
          std::cout << row.m << "," << row.q << "," << row.r.size << "," << to_string(row.r.status) << ","
                    << to_string(row.r.reduction) << "," << (g.deterministic ? "-" : fixed(row.r.elapsed)) << "\n";
      } else {
        std::cout << std::left << std::setw(4) << "m" << std::setw(16) << "q" << std::setw(8) << "I(m,q)"
                  << std::setw(19) << "status" << std::setw(17) << "reduction"
                  << "elapsed\n";
        for (const auto& row : rows)
          std::cout << std::setw(4) << row.m << std::setw(16) << row.q << std::setw(8) << row.r.size << std::setw(19)
                    << to_string(row.r.status) << std::setw(17) << to_string(row.r.reduction)
                    << (g.deterministic ? "-" : fixed(row.r.elapsed)) << "\n";
      }
      return partial ? kBudget : kOk;
    }

    if (*con_cmd) {
      const Field f = parse_field(con_q);
      const Construction c = build_construction(con_name, f, con_m);
      std::string why;
      const bool ok = verify_construction(f, c, &why);
      if (!con_out.empty()) {
        std::ofstream os(con_out);
        if (!os) throw std::runtime_error("cannot write " + con_out);
        write_point_set(os, f, c.dim, c.points);
      }
      if (g.json) {
        json params{{"name", con_name}, {"q", con_q}, {"m", con_m}, {"out", con_out}};
        json r{{"dim", c.dim}, {"size", c.points.size()}, {"claimed", c.claimed}, {"parameters", c.parameters},
               {"verified", ok}};
        if (!ok) r["failure"] = why;
        if (con_out.empty()) r["points"] = points_json(c.points);
        emit_json(g, "construct", params, f.descriptor(), r, t0);
      } else {
        std::cout << c.name << " q=" << f.descriptor() << " m=" << c.dim << " size=" << c.points.size();
        for (const auto& [k, v] : c.parameters)
          if (k != "q") std::cout << " " << k << "=" << v;
        std::cout << "\n";
        if (con_out.empty()) write_point_set(std::cout, f, c.dim, c.points);
        std::cout << (ok ? "VERIFIED" : "FAILED " + why) << "\n";
      }
      return ok ? kOk : kVerifyFailed;
    }

    if (*dim_cmd) {
      const Field f = parse_field(dim_q);
      const auto graph = build_graph(f, dim_m);
      if (dim_out.empty()) {
        export_dimacs(graph, std::cout);
      } else {
        std::ofstream os(dim_out);
        if (!os) throw std::runtime_error("cannot write " + dim_out);
        export_dimacs(graph, os);
        const std::uint64_t edges = graph.order() * graph.degree() / 2;
        if (g.json)
          emit_json(g, "export-dimacs", {{"m", dim_m}, {"q", dim_q}, {"out", dim_out}}, f.descriptor(),
                    {{"vertices", graph.order()}, {"edges", edges}}, t0);
        else
          std::cout << "wrote " << dim_out << ": " << graph.order() << " vertices, " << edges << " edges\n";
      }
      return kOk;
    }

    if (*vp_cmd) {
      if (vp_f27 == !vp_file.empty()) throw CLI::ValidationError("give either a file or --f27-example");
      PointSetFile in{parse_field("3"), 0, {}};
      if (vp_f27) {
        const Field f = parse_field(kF27Modulus);
        in = PointSetFile{f, 3, f27_example(f)};
      } else {
        std::ifstream is(vp_file);
        if (!is) throw std::runtime_error("cannot read " + vp_file);
        in = read_point_set(is);
      }
      const auto chk = verify_point_set(in.field, in.points);
      std::string violation;
      if (chk.violation)
        violation = format_point(in.points[chk.violation->first]) + " " + format_point(in.points[chk.violation->second]);
      if (g.json) {
        json r{{"size", in.points.size()}, {"dim", in.dim}, {"integral", chk.integral}};
        r["violation"] = chk.violation ? json(violation) : json(nullptr);
        emit_json(g, "verify-pointset", {{"file", vp_file}, {"f27_example", vp_f27}}, in.field.descriptor(), r, t0);
      } else {
        std::cout << in.points.size() << " points, q=" << in.field.descriptor() << " m=" << in.dim << ": "
                  << (chk.integral ? "INTEGRAL" : "NOT INTEGRAL, first violation " + violation) << "\n";
      }
      return chk.integral ? kOk : kVerifyFailed;
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerifyFailed;
  }
  return kUsage;
}
