#pragma once

// Spin assignments on triangulations: energy, frustration, exact counting
// of satisfying assignments, groundstates, serious edges and the dual
// perfect-matching correspondence.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <queue>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "trispin/error.hpp"
#include "trispin/rot_format.hpp"
#include "trispin/rotation_system.hpp"

namespace trispin {

/// Spin per vertex id: +1, -1, or 0 for "not assigned".
using SpinAssignment = std::vector<std::int8_t>;

struct SpinCensus {
  std::uint64_t satisfying_count = 0;
  std::optional<std::int64_t> min_monochromatic_edges;
  std::optional<std::uint64_t> groundstate_degeneracy;
  std::vector<SpinAssignment> assignments;
};

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::CountOverflow, "count exceeds 64 bits");
  return r;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::CountOverflow, "count exceeds 64 bits");
  return r;
}

inline void require_total(const RotationSystem& rs, const SpinAssignment& s) {
  if (s.size() != rs.vertex_count()) throw Error(ErrorCode::MissingSpin, "assignment size differs from vertex count");
  for (std::size_t v = 0; v < s.size(); ++v)
    if (s[v] != 1 && s[v] != -1) throw Error(ErrorCode::MissingSpin, "no spin for vertex " + rs.vertex_name(static_cast<VertexId>(v)));
}

/// Sum over edges of s(u)s(v), i.e. #monochromatic - #non-monochromatic.
inline std::int64_t energy(const RotationSystem& rs, const SpinAssignment& s) {
  require_total(rs, s);
  std::int64_t e = 0;
  for (Dart d = 0; d < static_cast<Dart>(rs.dart_count()); d += 2)
    e += s[static_cast<std::size_t>(rs.origin(d))] * s[static_cast<std::size_t>(rs.head(d))];
  return e;
}

inline std::vector<EdgeId> monochromatic_edges(const RotationSystem& rs, const SpinAssignment& s) {
  require_total(rs, s);
  std::vector<EdgeId> out;
  for (Dart d = 0; d < static_cast<Dart>(rs.dart_count()); d += 2)
    if (s[static_cast<std::size_t>(rs.origin(d))] == s[static_cast<std::size_t>(rs.head(d))]) out.push_back(edge_of(d));
  return out;
}

struct SatisfactionReport {
  bool satisfying = false;
  std::vector<FaceId> monochromatic_faces;
};

/// Hole orbits are exempt.
inline SatisfactionReport is_satisfying(const RotationSystem& rs, const SpinAssignment& s) {
  require_total(rs, s);
  SatisfactionReport r;
  FaceTable table(rs);
  for (const auto& f : table.faces()) {
    if (f.is_hole) continue;
    auto first = s[static_cast<std::size_t>(rs.origin(f.darts.front()))];
    bool mono = true;
    for (Dart d : f.darts) mono = mono && s[static_cast<std::size_t>(rs.origin(d))] == first;
    if (mono) r.monochromatic_faces.push_back(f.id);
  }
  r.satisfying = r.monochromatic_faces.empty();
  return r;
}

/// `VID +1|-1` per line, `#` comments allowed. Every vertex must appear once.
inline SpinAssignment parse_spins(const RotationSystem& rs, std::string_view text) {
  SpinAssignment s(rs.vertex_count(), 0);
  std::size_t lineno = 0, pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++lineno;
    if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
    auto toks = detail::split_ws(detail::trim(line));
    if (toks.empty()) continue;
    if (toks.size() != 2) detail::fail_line(lineno, "expected VID +1|-1");
    auto v = rs.find_vertex(toks[0]);
    if (!v) detail::fail_line(lineno, "unknown vertex " + std::string(toks[0]));
    std::int8_t val = 0;
    if (toks[1] == "+1" || toks[1] == "1") val = 1;
    else if (toks[1] == "-1") val = -1;
    else detail::fail_line(lineno, "spin must be +1 or -1");
    auto& slot = s[static_cast<std::size_t>(*v)];
    if (slot != 0) detail::fail_line(lineno, "vertex " + std::string(toks[0]) + " assigned twice");
    slot = val;
  }
  require_total(rs, s);
  return s;
}

inline std::string format_spins(const RotationSystem& rs, const SpinAssignment& s) {
  std::string out;
  for (std::size_t v = 0; v < s.size(); ++v)
    out += rs.vertex_name(static_cast<VertexId>(v)) + (s[v] > 0 ? " +1\n" : " -1\n");
  return out;
}

// ---------------------------------------------------------------------------
// Propagating counter

struct CountOptions {
  std::vector<std::pair<VertexId, std::int8_t>> pins;
  unsigned threads = 1;
  bool fix_roots = true;  // halve per unpinned component by duality
};

namespace detail {

/// Backtracking over vertices with unit propagation on the constraint
/// "face not monochromatic". Copyable so each worker owns its state.
class SpinSearch {
 public:
  SpinSearch(const RotationSystem& rs, const std::vector<std::array<VertexId, 3>>& faces) : n_(rs.vertex_count()) {
    std::vector<std::uint32_t> deg(n_ + 1, 0);
    for (const auto& f : faces)
      for (VertexId v : f) ++deg[static_cast<std::size_t>(v)];
    off_.assign(n_ + 1, 0);
    for (std::size_t v = 0; v < n_; ++v) off_[v + 1] = off_[v] + deg[v];
    others_.resize(off_[n_]);
    std::vector<std::uint32_t> fill(off_.begin(), off_.end() - 1);
    for (const auto& f : faces) {
      for (int k = 0; k < 3; ++k) {
        auto v = static_cast<std::size_t>(f[static_cast<std::size_t>(k)]);
        others_[fill[v]++] = {f[static_cast<std::size_t>((k + 1) % 3)], f[static_cast<std::size_t>((k + 2) % 3)]};
      }
    }
    val_.assign(n_, 0);
    trail_.reserve(n_);
  }

  void set_order(std::vector<VertexId> order) { order_ = std::move(order); }
  const SpinAssignment& values() const { return val_; }
  std::size_t trail_size() const { return trail_.size(); }

  bool decide(VertexId v, std::int8_t s) {
    auto& cur = val_[static_cast<std::size_t>(v)];
    if (cur != 0) return cur == s;
    assign(v, s);
    return propagate();
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      val_[static_cast<std::size_t>(trail_.back())] = 0;
      trail_.pop_back();
    }
    head_ = mark;
  }

  template <class Leaf>
  std::uint64_t search(std::size_t from, Leaf& leaf) {
    while (from < order_.size() && val_[static_cast<std::size_t>(order_[from])] != 0) ++from;
    if (from == order_.size()) {
      leaf(val_);
      return 1;
    }
    VertexId v = order_[from];
    std::uint64_t total = 0;
    for (std::int8_t s : {std::int8_t{1}, std::int8_t{-1}}) {
      auto mark = trail_.size();
      assign(v, s);
      if (propagate()) total = checked_add(total, search(from + 1, leaf));
      undo(mark);
    }
    return total;
  }

  /// Partial assignments after the first `depth` branching decisions that
  /// survive propagation, in deterministic order.
  void split(std::size_t from, unsigned depth, std::vector<std::pair<VertexId, std::int8_t>>& path,
             std::vector<std::vector<std::pair<VertexId, std::int8_t>>>& cubes) {
    while (from < order_.size() && val_[static_cast<std::size_t>(order_[from])] != 0) ++from;
    if (depth == 0 || from == order_.size()) {
      cubes.push_back(path);
      return;
    }
    VertexId v = order_[from];
    for (std::int8_t s : {std::int8_t{1}, std::int8_t{-1}}) {
      auto mark = trail_.size();
      assign(v, s);
      if (propagate()) {
        path.emplace_back(v, s);
        split(from + 1, depth - 1, path, cubes);
        path.pop_back();
      }
      undo(mark);
    }
  }

 private:
  void assign(VertexId v, std::int8_t s) {
    val_[static_cast<std::size_t>(v)] = s;
    trail_.push_back(v);
  }

  bool propagate() {
    while (head_ < trail_.size()) {
      auto v = static_cast<std::size_t>(trail_[head_++]);
      auto s = val_[v];
      for (auto i = off_[v]; i < off_[v + 1]; ++i) {
        auto [a, b] = others_[i];
        auto va = val_[static_cast<std::size_t>(a)], vb = val_[static_cast<std::size_t>(b)];
        if (va == s) {
          if (vb == s) return false;
          if (vb == 0) assign(b, static_cast<std::int8_t>(-s));
        } else if (vb == s && va == 0) {
          assign(a, static_cast<std::int8_t>(-s));
        }
      }
    }
    return true;
  }

  std::size_t n_;
  std::vector<std::uint32_t> off_;
  std::vector<std::pair<VertexId, VertexId>> others_;
  SpinAssignment val_;
  std::vector<VertexId> trail_;
  std::size_t head_ = 0;
  std::vector<VertexId> order_;
};

inline std::vector<std::array<VertexId, 3>> constrained_faces(const RotationSystem& rs) {
  std::vector<std::array<VertexId, 3>> out;
  for (const auto& f : trace_faces(rs, FaceDemand::triangulation)) {
    if (f.is_hole) continue;
    out.push_back({rs.origin(f.darts[0]), rs.origin(f.darts[1]), rs.origin(f.darts[2])});
  }
  return out;
}

/// Breadth-first vertex order seeded by the pinned vertices, then by the
/// smallest vertex of each remaining component.
inline std::vector<VertexId> branch_order(const RotationSystem& rs, const std::vector<VertexId>& seeds,
                                          std::vector<VertexId>& roots) {
  std::vector<VertexId> order;
  std::vector<bool> seen(rs.vertex_count(), false);
  std::queue<VertexId> q;
  auto flood = [&](VertexId s) {
    if (seen[static_cast<std::size_t>(s)]) return false;
    seen[static_cast<std::size_t>(s)] = true;
    q.push(s);
    while (!q.empty()) {
      auto v = q.front();
      q.pop();
      order.push_back(v);
      for (Dart d : rs.rotation(v)) {
        auto w = rs.head(d);
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = true;
          q.push(w);
        }
      }
    }
    return true;
  };
  for (VertexId s : seeds) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    seen[static_cast<std::size_t>(s)] = true;
    q.push(s);
  }
  while (!q.empty()) {
    auto v = q.front();
    q.pop();
    order.push_back(v);
    for (Dart d : rs.rotation(v)) {
      auto w = rs.head(d);
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = true;
        q.push(w);
      }
    }
  }
  for (VertexId v = 0; v < static_cast<VertexId>(rs.vertex_count()); ++v)
    if (flood(v)) roots.push_back(v);
  return order;
}

struct NoLeaf {
  void operator()(const SpinAssignment&) const {}
};

}  // namespace detail

/// Runs the propagating search, calling `leaf` for every satisfying total
/// assignment reached (only root-normalised ones when fix_roots is set) and
/// returning the full count including the duality factor.
template <class Leaf = detail::NoLeaf>
std::uint64_t search_satisfying(const RotationSystem& rs, const CountOptions& opt, Leaf&& leaf = Leaf{}) {
  auto faces = detail::constrained_faces(rs);
  detail::SpinSearch base(rs, faces);

  std::vector<VertexId> seeds;
  for (auto [v, s] : opt.pins) {
    if (v < 0 || static_cast<std::size_t>(v) >= rs.vertex_count()) throw Error(ErrorCode::MissingSpin, "pinned vertex out of range");
    if (s != 1 && s != -1) throw Error(ErrorCode::MissingSpin, "pinned spin must be +1 or -1");
    seeds.push_back(v);
  }
  std::vector<VertexId> roots;
  base.set_order(detail::branch_order(rs, seeds, roots));

  for (auto [v, s] : opt.pins)
    if (!base.decide(v, s)) return 0;

  std::uint64_t factor = 1;
  if (opt.fix_roots) {
    for (VertexId r : roots) {
      if (base.values()[static_cast<std::size_t>(r)] != 0) continue;
      if (!base.decide(r, 1)) return 0;
      factor = checked_mul(factor, 2);
    }
  }

  std::uint64_t total = 0;
  if (opt.threads <= 1) {
    total = base.search(0, leaf);
  } else {
    std::vector<std::vector<std::pair<VertexId, std::int8_t>>> cubes;
    std::vector<std::pair<VertexId, std::int8_t>> path;
    unsigned depth = 0;
    while ((1u << depth) < 8u * opt.threads && depth < 16) ++depth;
    base.split(0, depth, path, cubes);
    std::vector<std::uint64_t> partial(cubes.size(), 0);
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(opt.threads);
    std::mutex leaf_mutex;
    auto worker = [&](unsigned id) {
      try {
        detail::SpinSearch local = base;
        auto guarded = [&](const SpinAssignment& s) {
          std::lock_guard<std::mutex> lock(leaf_mutex);
          leaf(s);
        };
        for (std::size_t i = next++; i < cubes.size(); i = next++) {
          auto mark = local.trail_size();
          bool ok = true;
          for (auto [v, s] : cubes[i]) ok = ok && local.decide(v, s);
          if (ok) partial[i] = local.search(0, guarded);
          local.undo(mark);
        }
      } catch (...) {
        errors[id] = std::current_exception();
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < opt.threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
    for (auto p : partial) total = checked_add(total, p);
  }
  return checked_mul(total, factor);
}

inline SpinCensus count_satisfying(const RotationSystem& rs, unsigned threads = 1) {
  CountOptions opt;
  opt.threads = threads;
  SpinCensus c;
  c.satisfying_count = search_satisfying(rs, opt);
  FaceTable table(rs);
  if (c.satisfying_count > 0 && table.hole_count() == 0) {
    // one monochromatic edge per face, each edge on two faces
    c.min_monochromatic_edges = static_cast<std::int64_t>(table.faces().size() / 2);
    c.groundstate_degeneracy = c.satisfying_count;
  }
  return c;
}

/// Every satisfying assignment, both members of each dual pair.
inline std::vector<SpinAssignment> enumerate_satisfying(const RotationSystem& rs, std::size_t limit = 1u << 20) {
  std::vector<SpinAssignment> out;
  CountOptions opt;
  opt.fix_roots = false;
  search_satisfying(rs, opt, [&](const SpinAssignment& s) {
    if (out.size() >= limit) throw Error(ErrorCode::TooLarge, "more than " + std::to_string(limit) + " satisfying assignments");
    out.push_back(s);
  });
  return out;
}

/// Exhaustive 2^V oracle.
inline std::uint64_t count_satisfying_naive(const RotationSystem& rs, std::size_t max_vertices = 24) {
  if (rs.vertex_count() > max_vertices)
    throw Error(ErrorCode::TooLarge, "naive enumeration limited to " + std::to_string(max_vertices) + " vertices");
  auto faces = detail::constrained_faces(rs);
  std::vector<std::uint32_t> masks;
  for (const auto& f : faces) masks.push_back((1u << f[0]) | (1u << f[1]) | (1u << f[2]));
  const std::uint64_t total = std::uint64_t{1} << rs.vertex_count();
  std::uint64_t count = 0;
  for (std::uint64_t a = 0; a < total; ++a) {
    auto bits = static_cast<std::uint32_t>(a);
    bool ok = true;
    for (auto m : masks) {
      auto on = bits & m;
      if (on == 0 || on == m) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
  }
  return count;
}

/// Minimum number of monochromatic edges over all assignments and the
/// number of assignments attaining it, by branch-and-bound.
inline SpinCensus groundstates(const RotationSystem& rs, std::size_t max_vertices = 40) {
  if (rs.vertex_count() > max_vertices) throw Error(ErrorCode::TooLarge, "groundstate search limited to " + std::to_string(max_vertices) + " vertices");
  const auto n = rs.vertex_count();
  std::vector<VertexId> roots;
  auto order = detail::branch_order(rs, {}, roots);
  std::vector<std::size_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[static_cast<std::size_t>(order[i])] = i;
  // edges to earlier vertices in the order, with multiplicity
  std::vector<std::vector<VertexId>> back(n);
  for (Dart d = 0; d < static_cast<Dart>(rs.dart_count()); d += 2) {
    auto a = rs.origin(d), b = rs.head(d);
    if (rank[static_cast<std::size_t>(a)] < rank[static_cast<std::size_t>(b)]) std::swap(a, b);
    back[static_cast<std::size_t>(a)].push_back(b);
  }
  SpinAssignment s(n, 0);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::uint64_t ties = 0;
  auto rec = [&](auto&& self, std::size_t i, std::int64_t mono) -> void {
    if (mono > best) return;
    if (i == n) {
      if (mono < best) {
        best = mono;
        ties = 0;
      }
      ++ties;
      return;
    }
    auto v = static_cast<std::size_t>(order[i]);
    for (std::int8_t sp : {std::int8_t{1}, std::int8_t{-1}}) {
      if (i == 0 && sp == -1) break;
      s[v] = sp;
      std::int64_t add = 0;
      for (VertexId w : back[v]) add += s[static_cast<std::size_t>(w)] == sp;
      self(self, i + 1, mono + add);
    }
    s[v] = 0;
  };
  rec(rec, 0, 0);
  SpinCensus c;
  c.min_monochromatic_edges = best;
  c.groundstate_degeneracy = checked_mul(ties, 2);
  c.satisfying_count = search_satisfying(rs, CountOptions{});
  return c;
}

/// Edges monochromatic under every satisfying assignment.
inline std::vector<EdgeId> serious_edges(const RotationSystem& rs, std::uint64_t* witnessed = nullptr) {
  std::vector<bool> always(rs.edge_count(), true);
  std::uint64_t seen = 0;
  // Root-normalised enumeration suffices: a component flip keeps every
  // edge's chromaticity.
  search_satisfying(rs, CountOptions{}, [&](const SpinAssignment& s) {
    ++seen;
    for (Dart d = 0; d < static_cast<Dart>(rs.dart_count()); d += 2)
      if (s[static_cast<std::size_t>(rs.origin(d))] != s[static_cast<std::size_t>(rs.head(d))]) always[static_cast<std::size_t>(edge_of(d))] = false;
  });
  if (seen == 0) throw Error(ErrorCode::NoSatisfyingAssignment, "serious edges are undefined without a satisfying assignment");
  if (witnessed) *witnessed = seen;
  std::vector<EdgeId> out;
  for (std::size_t e = 0; e < always.size(); ++e)
    if (always[e]) out.push_back(static_cast<EdgeId>(e));
  return out;
}

struct MatchingReport {
  std::vector<EdgeId> dual_edges;  // dual edge id = primal edge id
  bool perfect_matching = false;
};

inline MatchingReport matching_correspondence(const RotationSystem& rs, const SpinAssignment& s) {
  FaceTable table(rs);
  if (table.hole_count() != 0) throw Error(ErrorCode::HasHoles, "matching correspondence needs a closed surface");
  auto sat = is_satisfying(rs, s);
  if (!sat.satisfying) throw Error(ErrorCode::NotSatisfying, std::to_string(sat.monochromatic_faces.size()) + " monochromatic faces");
  MatchingReport r;
  r.dual_edges = monochromatic_edges(rs, s);
  std::vector<int> cover(table.faces().size(), 0);
  for (EdgeId e : r.dual_edges) {
    ++cover[static_cast<std::size_t>(table.face_of(2 * e))];
    ++cover[static_cast<std::size_t>(table.face_of(2 * e + 1))];
  }
  r.perfect_matching = std::all_of(cover.begin(), cover.end(), [](int c) { return c == 1; });
  return r;
}

}  // namespace trispin
