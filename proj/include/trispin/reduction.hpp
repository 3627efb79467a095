#pragma once

// Compiling a positive NAE-3SAT formula into a closed triangulation T_phi and
// checking the counting identities.

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "trispin/assembler.hpp"
#include "trispin/error.hpp"
#include "trispin/formula.hpp"
#include "trispin/gadget.hpp"
#include "trispin/spin.hpp"

namespace trispin {

/// Contract-checked fixtures plus a cache of k-replicators.
class GadgetLibrary {
 public:
  GadgetTemplate choice, block, cap, clause;

  static GadgetLibrary load(const std::filesystem::path& dir) {
    GadgetLibrary lib;
    lib.choice = load_gadget((dir / "choice.rot").string(), GadgetKind::choice);
    lib.block = load_gadget((dir / "block_replicator.rot").string(), GadgetKind::block_replicator);
    lib.cap = load_gadget((dir / "cap.rot").string(), GadgetKind::cap);
    lib.clause = load_gadget((dir / "clause.rot").string(), GadgetKind::clause);
    for (const auto* g : {&lib.choice, &lib.block, &lib.cap, &lib.clause}) verify_contract(*g).enforce();
    return lib;
  }

  const GadgetTemplate& replicator(int k) {
    auto it = replicators_.find(k);
    if (it == replicators_.end()) it = replicators_.emplace(k, build_k_replicator(block, k)).first;
    return it->second;
  }

 private:
  std::map<int, GadgetTemplate> replicators_;
};

struct WiringEntry {
  int variable = 0;
  std::int64_t end_cycle = 0;
  int clause = 0;
  int position = 0;
};

/// Occurrence r of variable i (in clause-major order) takes end cycle r of
/// that variable's replicator.
inline std::vector<WiringEntry> clause_literal_wiring(const PnaeFormula& f, const ReductionPlan& plan) {
  if (plan.variables.size() != static_cast<std::size_t>(f.n)) throw Error(ErrorCode::ArityMismatch, "plan and formula disagree on n");
  std::vector<WiringEntry> out;
  std::int64_t total = 0;
  for (const auto& v : plan.variables) {
    if (static_cast<std::int64_t>(v.occurrences.size()) != v.t || v.t > (std::int64_t{1} << v.k))
      throw Error(ErrorCode::ArityMismatch, "variable " + std::to_string(v.variable) + " has inconsistent occurrence count");
    for (std::size_t r = 0; r < v.occurrences.size(); ++r) {
      const auto& o = v.occurrences[r];
      if (o.clause < 1 || static_cast<std::size_t>(o.clause) > f.m() || o.position < 1 || o.position > 3 ||
          f.clauses[static_cast<std::size_t>(o.clause - 1)][static_cast<std::size_t>(o.position - 1)] != v.variable)
        throw Error(ErrorCode::ArityMismatch, "occurrence of variable " + std::to_string(v.variable) + " does not match the formula");
      out.push_back({v.variable, static_cast<std::int64_t>(r), o.clause, o.position});
    }
    total += v.t;
  }
  if (total != static_cast<std::int64_t>(3 * f.m())) throw Error(ErrorCode::ArityMismatch, "occurrences do not cover 3m slots");
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return std::pair(a.clause, a.position) < std::pair(b.clause, b.position); });
  return out;
}

struct PieceCounts {
  std::int64_t choice = 0;
  std::int64_t blocks = 0;
  std::int64_t clauses = 0;
  std::int64_t caps = 0;

  std::int64_t chi_sum() const { return -choice - 9 * blocks - 3 * clauses + caps; }
};

struct CompiledTriangulation {
  RotationSystem surface;
  PnaeFormula formula;
  ReductionPlan plan;
  TopologySummary topo;
  PieceCounts pieces;
  std::vector<std::string> log;

  /// Gadget path a vertex came from, e.g. "R2/B3" or "C1".
  static std::string provenance(const std::string& vertex) {
    auto slash = vertex.rfind('/');
    return slash == std::string::npos ? std::string() : vertex.substr(0, slash);
  }
};

inline std::string literal_cycle(int position) { return "L" + std::to_string(position); }

inline CompiledTriangulation build(const PnaeFormula& f, GadgetLibrary& lib) {
  CompiledTriangulation out;
  out.formula = f;
  out.plan = replication_plan(f);
  auto wiring = clause_literal_wiring(f, out.plan);
  const auto& var = *lib.choice.cycles_with(HoleRole::variable).front();
  const auto& cap_outer = *lib.cap.cycles_with(HoleRole::outer).front();

  std::vector<RotationSystem> parts;
  for (const auto& v : out.plan.variables) {
    auto i = std::to_string(v.variable);
    parts.push_back(with_prefix(lib.choice.surface, "L" + i + "/"));
    parts.push_back(with_prefix(lib.replicator(v.k).surface, "R" + i + "/"));
    for (std::int64_t e = v.t; e < (std::int64_t{1} << v.k); ++e) parts.push_back(with_prefix(lib.cap.surface, "R" + i + "/cap" + std::to_string(e) + "/"));
    out.pieces.choice += 1;
    out.pieces.blocks += (std::int64_t{1} << v.k) - 1;
    out.pieces.caps += v.caps;
  }
  for (std::size_t j = 1; j <= f.m(); ++j) parts.push_back(with_prefix(lib.clause.surface, "C" + std::to_string(j) + "/"));
  out.pieces.clauses = static_cast<std::int64_t>(f.m());

  std::vector<const RotationSystem*> ptrs;
  for (const auto& p : parts) ptrs.push_back(&p);
  Assembly a{disjoint_union(ptrs, "T"), {}};

  for (const auto& v : out.plan.variables) {
    auto i = std::to_string(v.variable);
    a.apply({"L" + i + "/" + var.name, "L" + i + "/" + var.fund_name, "R" + i + "/B1/I", "R" + i + "/B1/vw"});
  }
  for (const auto& w : wiring) {
    auto k = out.plan.variables[static_cast<std::size_t>(w.variable - 1)].k;
    auto end = replicator_end(k, w.end_cycle, "R" + std::to_string(w.variable) + "/");
    const auto& lit = lib.clause.cycle(literal_cycle(w.position));
    auto c = "C" + std::to_string(w.clause) + "/";
    a.apply({end.hole, end.fund, c + lit.name, c + lit.fund_name});
  }
  for (const auto& v : out.plan.variables) {
    auto i = std::to_string(v.variable);
    for (std::int64_t e = v.t; e < (std::int64_t{1} << v.k); ++e) {
      auto end = replicator_end(v.k, e, "R" + i + "/");
      auto c = "R" + i + "/cap" + std::to_string(e) + "/";
      a.apply({end.hole, end.fund, c + cap_outer.name, c + cap_outer.fund_name});
    }
  }
  require_triangulation(a.surface);
  out.topo = topology(a.surface);
  if (out.topo.holes != 0) throw Error(ErrorCode::TopologyMismatch, "compiled surface still has holes");
  out.surface = std::move(a.surface);
  out.log = std::move(a.log);
  return out;
}

// ---------------------------------------------------------------------------
// Reports

struct StatsReport {
  TopologySummary topo;
  PieceCounts pieces;
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::int64_t predicted_genus = 0;  // m + n + 4 * sum(2^k_i - 1)

  bool genus_agrees() const { return predicted_genus == topo.genus; }
  bool chi_matches_pieces() const { return topo.euler_characteristic == pieces.chi_sum(); }
};

inline StatsReport stats(const CompiledTriangulation& t) {
  StatsReport r;
  r.topo = t.topo;
  r.pieces = t.pieces;
  r.n = t.formula.n;
  r.m = static_cast<std::int64_t>(t.formula.m());
  r.predicted_genus = r.m + r.n + 4 * t.plan.total_blocks();
  return r;
}

/// Same report recovered from vertex names of a compiled `.rot` file.
inline StatsReport stats(const RotationSystem& rs) {
  static const std::regex choice_re(R"(^L(\d+)/[^/]+$)"), block_re(R"(^R(\d+)/B(\d+)/)"), cap_re(R"(^R(\d+)/cap(\d+)/)"),
      clause_re(R"(^C(\d+)/)");
  std::set<std::string> choice, blocks, caps, clauses;
  std::smatch m;
  for (const auto& name : rs.vertex_names()) {
    if (std::regex_search(name, m, block_re)) blocks.insert(m[0]);
    else if (std::regex_search(name, m, cap_re)) caps.insert(m[0]);
    else if (std::regex_search(name, m, clause_re)) clauses.insert(m[0]);
    else if (std::regex_search(name, m, choice_re)) choice.insert(m[1]);
  }
  StatsReport r;
  r.topo = topology(rs);
  r.pieces = {static_cast<std::int64_t>(choice.size()), static_cast<std::int64_t>(blocks.size()), static_cast<std::int64_t>(clauses.size()),
              static_cast<std::int64_t>(caps.size())};
  r.n = r.pieces.choice;
  r.m = r.pieces.clauses;
  r.predicted_genus = r.m + r.n + 4 * r.pieces.blocks;
  return r;
}

inline std::string format_stats(const StatsReport& r) {
  std::ostringstream out;
  out << "vertices: " << r.topo.vertices << '\n'
      << "edges: " << r.topo.edges << '\n'
      << "faces: " << r.topo.faces << '\n'
      << "holes: " << r.topo.holes << '\n'
      << "euler_characteristic: " << r.topo.euler_characteristic << '\n'
      << "components: " << r.topo.components << '\n'
      << "genus: " << r.topo.genus << '\n'
      << "pieces: choice=" << r.pieces.choice << " block=" << r.pieces.blocks << " clause=" << r.pieces.clauses << " cap=" << r.pieces.caps << '\n'
      << "piece_chi_sum: " << r.pieces.chi_sum() << (r.chi_matches_pieces() ? "" : " (MISMATCH)") << '\n'
      << "predicted_genus: " << r.predicted_genus << '\n'
      << "genus_discrepancy: " << (r.genus_agrees() ? "none" : std::to_string(r.topo.genus - r.predicted_genus)) << '\n';
  return out.str();
}

struct VerifyReport {
  std::uint64_t witnesses = 0;
  bool connected = false;
  std::optional<std::uint64_t> direct;
  std::uint64_t connectified = 0;
  bool direct_ok = true;
  bool connectified_ok = false;
  double direct_seconds = 0;
  double connectified_seconds = 0;

  bool passed() const { return direct_ok && connectified_ok; }
};

inline VerifyReport verify(const PnaeFormula& f, GadgetLibrary& lib, unsigned threads = 1) {
  using clock = std::chrono::steady_clock;
  VerifyReport r;
  r.witnesses = count_nae_witnesses(f);
  r.connected = is_connected(f);
  if (r.connected) {
    auto t0 = clock::now();
    r.direct = count_satisfying(build(f, lib).surface, threads).satisfying_count;
    r.direct_seconds = std::chrono::duration<double>(clock::now() - t0).count();
    r.direct_ok = *r.direct == checked_mul(2, r.witnesses);
  }
  auto t0 = clock::now();
  r.connectified = count_satisfying(build(connectify(f), lib).surface, threads).satisfying_count;
  r.connectified_seconds = std::chrono::duration<double>(clock::now() - t0).count();
  r.connectified_ok = r.connectified == checked_mul(4, r.witnesses);
  return r;
}

inline std::string format_verify(const VerifyReport& r) {
  std::ostringstream out;
  out << "nae_witnesses: " << r.witnesses << '\n' << "connected: " << (r.connected ? "yes" : "no") << '\n';
  if (r.direct)
    out << "direct_count: " << *r.direct << " (expected " << 2 * r.witnesses << ", " << (r.direct_ok ? "ok" : "MISMATCH") << ")\n"
        << "direct_seconds: " << r.direct_seconds << '\n';
  else
    out << "direct_count: skipped (formula not connected)\n";
  out << "connectified_count: " << r.connectified << " (expected " << 4 * r.witnesses << ", " << (r.connectified_ok ? "ok" : "MISMATCH") << ")\n"
      << "connectified_seconds: " << r.connectified_seconds << '\n'
      << "result: " << (r.passed() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

}  // namespace trispin
