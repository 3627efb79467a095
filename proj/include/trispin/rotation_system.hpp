#pragma once

// Embedded graphs as rotation systems: darts, twin involution, clockwise
// per-vertex rotations, plus hole and fundamental-edge annotations used by
// the gadget machinery.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "trispin/error.hpp"

namespace trispin {

using Dart = std::int32_t;
using VertexId = std::int32_t;
using EdgeId = std::int32_t;
using FaceId = std::int32_t;

constexpr Dart twin(Dart d) noexcept { return d ^ 1; }
constexpr EdgeId edge_of(Dart d) noexcept { return d >> 1; }

enum class HoleRole { variable, incoming, outgoing, literal, outer, none };

constexpr std::string_view to_string(HoleRole role) {
  switch (role) {
    case HoleRole::variable: return "variable";
    case HoleRole::incoming: return "incoming";
    case HoleRole::outgoing: return "outgoing";
    case HoleRole::literal: return "literal";
    case HoleRole::outer: return "outer";
    case HoleRole::none: return "none";
  }
  return "none";
}

inline std::optional<HoleRole> parse_hole_role(std::string_view text) {
  for (HoleRole r : {HoleRole::variable, HoleRole::incoming, HoleRole::outgoing, HoleRole::literal,
                     HoleRole::outer, HoleRole::none}) {
    if (to_string(r) == text) return r;
  }
  return std::nullopt;
}

/// A face orbit flagged as a removed disk. `dart` is any dart of the orbit.
struct HoleMark {
  std::string name;
  HoleRole role = HoleRole::none;
  Dart dart = -1;
};

struct FundamentalEdge {
  std::string name;
  Dart dart = -1;
};

/// Unvalidated input. `twin` and `origin` may be left empty, in which case the
/// d XOR 1 pairing and the rotation membership are used.
struct RawRotationData {
  std::string name;
  std::size_t dart_count = 0;
  std::vector<Dart> twin;
  std::vector<VertexId> origin;
  std::vector<std::string> vertex_names;
  std::vector<std::vector<Dart>> rotations;
  std::vector<HoleMark> holes;
  std::vector<FundamentalEdge> fundamental_edges;
};

class RotationSystem {
 public:
  RotationSystem() = default;

  /// Checks every structural invariant and returns the immutable system.
  /// A raw twin table that is a valid involution but not the XOR pairing is
  /// accepted and the darts are renumbered so that twin(d) == d ^ 1.
  static RotationSystem validate(RawRotationData raw);

  const std::string& name() const noexcept { return name_; }
  std::size_t dart_count() const noexcept { return origin_.size(); }
  std::size_t edge_count() const noexcept { return origin_.size() / 2; }
  std::size_t vertex_count() const noexcept { return names_.size(); }

  VertexId origin(Dart d) const { return origin_[static_cast<std::size_t>(d)]; }
  VertexId head(Dart d) const { return origin(twin(d)); }
  std::span<const Dart> rotation(VertexId v) const {
    auto b = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(v)]);
    auto e = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(v) + 1]);
    return {darts_.data() + b, e - b};
  }
  std::size_t degree(VertexId v) const { return rotation(v).size(); }

  Dart rotation_next(Dart d) const {
    auto rot = rotation(origin(d));
    auto k = static_cast<std::size_t>(position_[static_cast<std::size_t>(d)]);
    return rot[(k + 1) % rot.size()];
  }
  Dart rotation_prev(Dart d) const {
    auto rot = rotation(origin(d));
    auto k = static_cast<std::size_t>(position_[static_cast<std::size_t>(d)]);
    return rot[(k + rot.size() - 1) % rot.size()];
  }
  /// Face-successor convention used throughout: the dart leaving the head of
  /// d that follows twin(d) in the head's rotation.
  Dart face_successor(Dart d) const { return rotation_next(twin(d)); }

  const std::string& vertex_name(VertexId v) const { return names_[static_cast<std::size_t>(v)]; }
  const std::vector<std::string>& vertex_names() const noexcept { return names_; }
  std::optional<VertexId> find_vertex(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const std::vector<HoleMark>& holes() const noexcept { return holes_; }
  const std::vector<FundamentalEdge>& fundamental_edges() const noexcept { return fund_; }
  const HoleMark* find_hole(std::string_view name) const {
    for (const auto& h : holes_)
      if (h.name == name) return &h;
    return nullptr;
  }
  const FundamentalEdge* find_fundamental(std::string_view name) const {
    for (const auto& f : fund_)
      if (f.name == name) return &f;
    return nullptr;
  }

  /// The three darts of the hole orbit starting at the mark dart.
  std::vector<Dart> orbit_of(Dart d) const {
    std::vector<Dart> out;
    Dart cur = d;
    do {
      out.push_back(cur);
      cur = face_successor(cur);
    } while (cur != d && out.size() <= dart_count());
    return out;
  }

  RawRotationData to_raw() const {
    RawRotationData raw;
    raw.name = name_;
    raw.dart_count = dart_count();
    raw.vertex_names = names_;
    for (VertexId v = 0; v < static_cast<VertexId>(vertex_count()); ++v) {
      auto rot = rotation(v);
      raw.rotations.emplace_back(rot.begin(), rot.end());
    }
    raw.holes = holes_;
    raw.fundamental_edges = fund_;
    return raw;
  }

  RotationSystem renamed(std::string name) const {
    RotationSystem copy = *this;
    copy.name_ = std::move(name);
    return copy;
  }

 private:
  std::string name_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexId> index_;
  std::vector<std::int32_t> offsets_;
  std::vector<Dart> darts_;
  std::vector<VertexId> origin_;
  std::vector<std::int32_t> position_;
  std::vector<HoleMark> holes_;
  std::vector<FundamentalEdge> fund_;
};

inline RotationSystem RotationSystem::validate(RawRotationData raw) {
  const std::size_t n = raw.dart_count;
  if (n % 2 != 0) throw Error(ErrorCode::OddDartCount, "dart count " + std::to_string(n) + " is odd");

  // Bring an explicit twin table to the XOR convention.
  std::vector<Dart> relabel(n);
  std::iota(relabel.begin(), relabel.end(), 0);
  if (!raw.twin.empty()) {
    if (raw.twin.size() != n) throw Error(ErrorCode::NotInvolution, "twin table size differs from dart count");
    for (std::size_t d = 0; d < n; ++d) {
      Dart t = raw.twin[d];
      if (t < 0 || static_cast<std::size_t>(t) >= n)
        throw Error(ErrorCode::NotInvolution, "twin of dart " + std::to_string(d) + " out of range");
      if (static_cast<std::size_t>(t) == d)
        throw Error(ErrorCode::NotInvolution, "dart " + std::to_string(d) + " is its own twin");
      if (raw.twin[static_cast<std::size_t>(t)] != static_cast<Dart>(d))
        throw Error(ErrorCode::NotInvolution, "twin is not self-inverse at dart " + std::to_string(d));
    }
    std::vector<bool> done(n, false);
    Dart next = 0;
    for (std::size_t d = 0; d < n; ++d) {
      if (done[d]) continue;
      auto t = static_cast<std::size_t>(raw.twin[d]);
      relabel[d] = next;
      relabel[t] = next + 1;
      next += 2;
      done[d] = done[t] = true;
    }
  }
  auto map_dart = [&](Dart d) {
    if (d < 0 || static_cast<std::size_t>(d) >= n)
      throw Error(ErrorCode::DanglingDart, "dart " + std::to_string(d) + " out of range");
    return relabel[static_cast<std::size_t>(d)];
  };

  if (raw.rotations.size() != raw.vertex_names.size())
    throw Error(ErrorCode::ParseError, "vertex name count differs from rotation count");

  RotationSystem rs;
  rs.name_ = std::move(raw.name);
  rs.names_ = std::move(raw.vertex_names);
  rs.origin_.assign(n, -1);
  rs.position_.assign(n, -1);
  rs.offsets_.push_back(0);
  for (std::size_t v = 0; v < rs.names_.size(); ++v) {
    const auto& name = rs.names_[v];
    if (name.empty()) throw Error(ErrorCode::ParseError, "empty vertex name");
    if (!rs.index_.emplace(name, static_cast<VertexId>(v)).second)
      throw Error(ErrorCode::ParseError, "duplicate vertex name " + name);
    const auto& rot = raw.rotations[v];
    if (rot.empty()) throw Error(ErrorCode::EmptyRotation, "vertex " + name + " has no darts");
    for (std::size_t k = 0; k < rot.size(); ++k) {
      Dart d = map_dart(rot[k]);
      auto ud = static_cast<std::size_t>(d);
      if (rs.origin_[ud] != -1) throw Error(ErrorCode::DuplicateDart, "dart " + std::to_string(rot[k]) + " listed twice");
      rs.origin_[ud] = static_cast<VertexId>(v);
      rs.position_[ud] = static_cast<std::int32_t>(k);
      rs.darts_.push_back(d);
    }
    rs.offsets_.push_back(static_cast<std::int32_t>(rs.darts_.size()));
  }
  for (std::size_t d = 0; d < n; ++d) {
    if (rs.origin_[d] == -1) throw Error(ErrorCode::DanglingDart, "dart missing from rotations");
  }
  if (!raw.origin.empty()) {
    if (raw.origin.size() != n) throw Error(ErrorCode::DanglingDart, "origin table size differs from dart count");
    for (std::size_t d = 0; d < n; ++d)
      if (rs.origin_[static_cast<std::size_t>(relabel[d])] != raw.origin[d])
        throw Error(ErrorCode::DanglingDart, "origin of dart " + std::to_string(d) + " disagrees with rotations");
  }
  for (std::size_t d = 0; d < n; d += 2) {
    if (rs.origin_[d] == rs.origin_[d + 1])
      throw Error(ErrorCode::LoopEdge, "edge " + std::to_string(d / 2) + " is a loop at " +
                                           rs.names_[static_cast<std::size_t>(rs.origin_[d])]);
  }

  for (auto& h : raw.holes) h.dart = map_dart(h.dart);
  for (auto& f : raw.fundamental_edges) f.dart = map_dart(f.dart);
  rs.holes_ = std::move(raw.holes);
  rs.fund_ = std::move(raw.fundamental_edges);

  // Two marks on one orbit would make the hole bookkeeping ambiguous.
  std::vector<std::int32_t> mark_of(n, -1);
  for (std::size_t i = 0; i < rs.holes_.size(); ++i) {
    for (Dart d : rs.orbit_of(rs.holes_[i].dart)) {
      auto& slot = mark_of[static_cast<std::size_t>(d)];
      if (slot != -1) throw Error(ErrorCode::AmbiguousHole, "holes " + rs.holes_[static_cast<std::size_t>(slot)].name + " and " + rs.holes_[i].name + " share a face orbit");
      slot = static_cast<std::int32_t>(i);
    }
  }
  return rs;
}

// ---------------------------------------------------------------------------
// Faces

struct FaceOrbit {
  FaceId id = -1;
  std::vector<Dart> darts;
  bool is_hole = false;
};

/// All face orbits of a rotation system, numbered in order of their smallest
/// dart, with the dart -> face lookup.
class FaceTable {
 public:
  explicit FaceTable(const RotationSystem& rs) : face_of_(rs.dart_count(), -1) {
    for (Dart d = 0; d < static_cast<Dart>(rs.dart_count()); ++d) {
      if (face_of_[static_cast<std::size_t>(d)] != -1) continue;
      FaceOrbit f;
      f.id = static_cast<FaceId>(faces_.size());
      Dart cur = d;
      do {
        face_of_[static_cast<std::size_t>(cur)] = f.id;
        f.darts.push_back(cur);
        cur = rs.face_successor(cur);
      } while (cur != d);
      faces_.push_back(std::move(f));
    }
    for (const auto& h : rs.holes()) faces_[static_cast<std::size_t>(face_of(h.dart))].is_hole = true;
  }

  const std::vector<FaceOrbit>& faces() const noexcept { return faces_; }
  FaceId face_of(Dart d) const { return face_of_[static_cast<std::size_t>(d)]; }
  std::size_t hole_count() const {
    return static_cast<std::size_t>(std::count_if(faces_.begin(), faces_.end(), [](const auto& f) { return f.is_hole; }));
  }
  std::size_t non_hole_count() const { return faces_.size() - hole_count(); }
  bool all_triangles() const {
    return std::all_of(faces_.begin(), faces_.end(), [](const auto& f) { return f.darts.size() == 3; });
  }

 private:
  std::vector<FaceOrbit> faces_;
  std::vector<FaceId> face_of_;
};

enum class FaceDemand { any, triangulation };

inline std::vector<FaceOrbit> trace_faces(const RotationSystem& rs, FaceDemand demand = FaceDemand::any) {
  FaceTable table(rs);
  if (demand == FaceDemand::triangulation) {
    for (const auto& f : table.faces()) {
      if (f.darts.size() != 3)
        throw Error(ErrorCode::NotATriangulation, "face " + std::to_string(f.id) + " has length " + std::to_string(f.darts.size()));
    }
  }
  return table.faces();
}

inline void require_triangulation(const RotationSystem& rs) { (void)trace_faces(rs, FaceDemand::triangulation); }

// ---------------------------------------------------------------------------
// Components and topology

struct ComponentLabeling {
  std::size_t count = 0;
  std::vector<std::int32_t> component_of;  // per vertex, numbered by smallest vertex
};

inline ComponentLabeling connected_components(const RotationSystem& rs) {
  const std::size_t nv = rs.vertex_count();
  std::vector<std::int32_t> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::int32_t x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (Dart d = 0; d < static_cast<Dart>(rs.dart_count()); d += 2) {
    auto a = find(rs.origin(d)), b = find(rs.head(d));
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  ComponentLabeling out;
  out.component_of.assign(nv, -1);
  std::vector<std::int32_t> label(nv, -1);
  for (std::size_t v = 0; v < nv; ++v) {
    auto r = static_cast<std::size_t>(find(static_cast<std::int32_t>(v)));
    if (label[r] == -1) label[r] = static_cast<std::int32_t>(out.count++);
    out.component_of[v] = label[r];
  }
  return out;
}

struct TopologySummary {
  std::int64_t vertices = 0;
  std::int64_t edges = 0;
  std::int64_t faces = 0;  // hole orbits excluded
  std::int64_t holes = 0;
  std::int64_t euler_characteristic = 0;
  std::int64_t components = 0;
  std::int64_t genus = 0;  // summed over components; holes accounted as boundary
  std::vector<std::int64_t> component_genus;
};

inline TopologySummary topology(const RotationSystem& rs) {
  FaceTable table(rs);
  auto comps = connected_components(rs);
  TopologySummary t;
  t.vertices = static_cast<std::int64_t>(rs.vertex_count());
  t.edges = static_cast<std::int64_t>(rs.edge_count());
  t.holes = static_cast<std::int64_t>(table.hole_count());
  t.faces = static_cast<std::int64_t>(table.faces().size()) - t.holes;
  t.euler_characteristic = t.vertices - t.edges + t.faces;
  t.components = static_cast<std::int64_t>(comps.count);

  // Per component: chi_c + h_c = 2 - 2 g_c.
  std::vector<std::int64_t> closed_chi(comps.count, 0);
  for (std::size_t v = 0; v < rs.vertex_count(); ++v) closed_chi[static_cast<std::size_t>(comps.component_of[v])] += 1;
  for (Dart d = 0; d < static_cast<Dart>(rs.dart_count()); d += 2)
    closed_chi[static_cast<std::size_t>(comps.component_of[static_cast<std::size_t>(rs.origin(d))])] -= 1;
  for (const auto& f : table.faces())
    closed_chi[static_cast<std::size_t>(comps.component_of[static_cast<std::size_t>(rs.origin(f.darts.front()))])] += 1;
  for (auto c : closed_chi) {
    if ((2 - c) % 2 != 0 || c > 2)
      throw Error(ErrorCode::NonIntegerGenus, "component Euler characteristic " + std::to_string(c) + " gives no integer genus");
    t.component_genus.push_back((2 - c) / 2);
    t.genus += (2 - c) / 2;
  }
  return t;
}

// ---------------------------------------------------------------------------
// Geometric dual

struct DualGraph {
  std::size_t vertex_count = 0;                        // one per face
  std::vector<std::pair<FaceId, FaceId>> edges;        // indexed by primal edge id
  bool cubic = false;
  std::vector<EdgeId> bridges;
  bool bridgeless() const { return bridges.empty(); }
};

inline DualGraph dual_graph(const RotationSystem& rs) {
  FaceTable table(rs);
  if (table.hole_count() != 0) throw Error(ErrorCode::HasHoles, "dual graph needs a closed surface");
  DualGraph g;
  g.vertex_count = table.faces().size();
  std::vector<std::vector<std::pair<FaceId, EdgeId>>> adj(g.vertex_count);
  for (Dart d = 0; d < static_cast<Dart>(rs.dart_count()); d += 2) {
    FaceId a = table.face_of(d), b = table.face_of(twin(d));
    g.edges.emplace_back(a, b);
    adj[static_cast<std::size_t>(a)].emplace_back(b, edge_of(d));
    adj[static_cast<std::size_t>(b)].emplace_back(a, edge_of(d));
  }
  g.cubic = std::all_of(adj.begin(), adj.end(), [](const auto& a) { return a.size() == 3; });

  // Iterative lowlink bridge search; parallel edges are told apart by id.
  std::vector<std::int32_t> disc(g.vertex_count, -1), low(g.vertex_count, 0);
  std::int32_t timer = 0;
  struct Frame { FaceId v; EdgeId via; std::size_t next; };
  for (std::size_t root = 0; root < g.vertex_count; ++root) {
    if (disc[root] != -1) continue;
    std::vector<Frame> stack{{static_cast<FaceId>(root), -1, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      auto& fr = stack.back();
      auto v = static_cast<std::size_t>(fr.v);
      if (fr.next < adj[v].size()) {
        auto [w, e] = adj[v][fr.next++];
        if (e == fr.via) continue;
        auto uw = static_cast<std::size_t>(w);
        if (disc[uw] == -1) {
          disc[uw] = low[uw] = timer++;
          stack.push_back({w, e, 0});
        } else {
          low[v] = std::min(low[v], disc[uw]);
        }
      } else {
        Frame done = fr;
        stack.pop_back();
        if (!stack.empty()) {
          auto p = static_cast<std::size_t>(stack.back().v);
          low[p] = std::min(low[p], low[static_cast<std::size_t>(done.v)]);
          if (low[static_cast<std::size_t>(done.v)] > disc[p]) g.bridges.push_back(done.via);
        }
      }
    }
  }
  std::sort(g.bridges.begin(), g.bridges.end());
  return g;
}

// ---------------------------------------------------------------------------
// Construction from oriented triangles

/// Builds a rotation system from consistently oriented faces given as vertex
/// name triples. Face (a, b, c) is traversed a -> b -> c under the global
/// face-successor convention. Parallel edges cannot be expressed this way, so
/// each directed edge must occur in exactly one face.
class TriangulationBuilder {
 public:
  explicit TriangulationBuilder(std::string name) : name_(std::move(name)) {}

  TriangulationBuilder& face(std::string_view a, std::string_view b, std::string_view c) {
    faces_.push_back({vertex(a), vertex(b), vertex(c)});
    return *this;
  }
  TriangulationBuilder& hole(std::string name, HoleRole role, std::string_view a, std::string_view b, std::string_view c) {
    face(a, b, c);
    hole_faces_.push_back({std::move(name), role, faces_.size() - 1});
    return *this;
  }
  TriangulationBuilder& fundamental(std::string name, std::string_view a, std::string_view b) {
    fund_.push_back({std::move(name), vertex(a), vertex(b)});
    return *this;
  }

  RotationSystem build() const {
    std::unordered_map<std::uint64_t, Dart> dart_of;
    auto key = [](VertexId a, VertexId b) { return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b); };
    Dart next = 0;
    std::vector<VertexId> origin;
    auto dart = [&](VertexId a, VertexId b) {
      auto it = dart_of.find(key(a, b));
      if (it != dart_of.end()) return it->second;
      dart_of[key(a, b)] = next;
      dart_of[key(b, a)] = next + 1;
      origin.push_back(a);
      origin.push_back(b);
      next += 2;
      return next - 2;
    };
    // successor of dart (v -> p) in v's rotation
    std::unordered_map<Dart, Dart> succ;
    for (const auto& f : faces_) {
      for (int k = 0; k < 3; ++k) {
        VertexId p = f[static_cast<std::size_t>(k)], v = f[static_cast<std::size_t>((k + 1) % 3)], q = f[static_cast<std::size_t>((k + 2) % 3)];
        if (p == v || v == q || p == q) throw Error(ErrorCode::LoopEdge, "degenerate face in " + name_);
        Dart from = dart(v, p);
        if (!succ.emplace(from, dart(v, q)).second)
          throw Error(ErrorCode::DuplicateDart, "directed edge " + names_[static_cast<std::size_t>(p)] + "->" +
                                                     names_[static_cast<std::size_t>(v)] + " used by two faces");
      }
    }
    RawRotationData raw;
    raw.name = name_;
    raw.dart_count = static_cast<std::size_t>(next);
    raw.vertex_names = names_;
    raw.rotations.resize(names_.size());
    std::vector<std::vector<Dart>> out(names_.size());
    for (Dart d = 0; d < next; ++d) out[static_cast<std::size_t>(origin[static_cast<std::size_t>(d)])].push_back(d);
    for (std::size_t v = 0; v < names_.size(); ++v) {
      if (out[v].empty()) continue;
      Dart start = *std::min_element(out[v].begin(), out[v].end());
      Dart cur = start;
      do {
        raw.rotations[v].push_back(cur);
        auto it = succ.find(cur);
        if (it == succ.end()) throw Error(ErrorCode::NotATriangulation, "open fan at vertex " + names_[v]);
        cur = it->second;
      } while (cur != start && raw.rotations[v].size() <= out[v].size());
      if (raw.rotations[v].size() != out[v].size())
        throw Error(ErrorCode::NotATriangulation, "vertex " + names_[v] + " has a pinched neighbourhood");
    }
    for (const auto& h : hole_faces_) {
      const auto& f = faces_[h.face];
      raw.holes.push_back({h.name, h.role, dart(f[0], f[1])});
    }
    for (const auto& fe : fund_) {
      auto it = dart_of.find(key(fe.a, fe.b));
      if (it == dart_of.end()) throw Error(ErrorCode::MissingFundamentalEdge, "no edge for fundamental " + fe.name);
      raw.fundamental_edges.push_back({fe.name, it->second});
    }
    return RotationSystem::validate(std::move(raw));
  }

 private:
  struct PendingHole {
    std::string name;
    HoleRole role;
    std::size_t face;
  };
  struct PendingFund {
    std::string name;
    VertexId a, b;
  };

  VertexId vertex(std::string_view name) {
    auto it = index_.find(std::string(name));
    if (it != index_.end()) return it->second;
    auto id = static_cast<VertexId>(names_.size());
    names_.emplace_back(name);
    index_.emplace(std::string(name), id);
    return id;
  }

  std::string name_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexId> index_;
  std::vector<std::array<VertexId, 3>> faces_;
  std::vector<PendingHole> hole_faces_;
  std::vector<PendingFund> fund_;
};

}  // namespace trispin
