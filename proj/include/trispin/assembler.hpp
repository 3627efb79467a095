#pragma once

// Gluing triangulations-with-holes along boundary 3-cycles, block and
// k-replicator assembly, and capping.

#include <algorithm>
#include <string>
#include <vector>

#include "trispin/error.hpp"
#include "trispin/gadget.hpp"
#include "trispin/rotation_system.hpp"

namespace trispin {

/// Copy with every vertex, hole and fundamental-edge name prefixed.
inline RotationSystem with_prefix(const RotationSystem& rs, const std::string& prefix) {
  RawRotationData raw = rs.to_raw();
  for (auto& n : raw.vertex_names) n = prefix + n;
  for (auto& h : raw.holes) h.name = prefix + h.name;
  for (auto& f : raw.fundamental_edges) f.name = prefix + f.name;
  return RotationSystem::validate(std::move(raw));
}

/// Darts of later parts are shifted past those of earlier parts.
inline RotationSystem disjoint_union(const std::vector<const RotationSystem*>& parts, std::string name) {
  RawRotationData raw;
  raw.name = std::move(name);
  Dart offset = 0;
  for (const auto* p : parts) {
    RawRotationData r = p->to_raw();
    for (auto& rot : r.rotations) {
      for (auto& d : rot) d += offset;
      raw.rotations.push_back(std::move(rot));
    }
    for (auto& n : r.vertex_names) raw.vertex_names.push_back(std::move(n));
    for (auto& h : r.holes) raw.holes.push_back({h.name, h.role, h.dart + offset});
    for (auto& f : r.fundamental_edges) raw.fundamental_edges.push_back({f.name, f.dart + offset});
    offset += static_cast<Dart>(p->dart_count());
  }
  raw.dart_count = static_cast<std::size_t>(offset);
  return RotationSystem::validate(std::move(raw));
}

inline RotationSystem disjoint_union(const RotationSystem& a, const RotationSystem& b, std::string name) {
  return disjoint_union({&a, &b}, std::move(name));
}

struct GlueSpec {
  std::string hole_a;
  std::string fund_a;
  std::string hole_b;
  std::string fund_b;
};

struct GlueResult {
  RotationSystem surface;
  std::string log;
};

namespace detail {

/// Dart of the named fundamental edge lying on the hole orbit.
inline Dart fund_on_hole(const RotationSystem& rs, const HoleMark& hole, const std::string& fund) {
  const auto* f = rs.find_fundamental(fund);
  if (!f) throw Error(ErrorCode::MissingFundamentalEdge, "no fundamental edge " + fund);
  auto orbit = rs.orbit_of(hole.dart);
  if (orbit.size() != 3) throw Error(ErrorCode::CycleLengthMismatch, "hole " + hole.name + " has length " + std::to_string(orbit.size()));
  for (Dart d : orbit)
    if (edge_of(d) == edge_of(f->dart)) return d;
  throw Error(ErrorCode::EdgeNotOnCycle, "fundamental edge " + fund + " is not on cycle " + hole.name);
}

}  // namespace detail

/// Identifies two hole boundaries of one surface (self-gluing or after a
/// disjoint union). The cycles are identified with opposite traversal so the
/// result stays orientable; with hole orbits (a0 a1 a2) and (b0 b1 b2) and
/// fundamental darts a0->a1 and b0->b1 the vertex map is a0->b1, a1->b0,
/// a2->b2. Merged vertices keep the lexicographically smaller name and the
/// smaller index.
inline GlueResult glue(const RotationSystem& rs, const GlueSpec& spec) {
  const auto* ha = rs.find_hole(spec.hole_a);
  const auto* hb = rs.find_hole(spec.hole_b);
  if (!ha) throw Error(ErrorCode::UnknownHole, "no hole " + spec.hole_a);
  if (!hb) throw Error(ErrorCode::UnknownHole, "no hole " + spec.hole_b);
  if (ha == hb) throw Error(ErrorCode::AmbiguousAlignment, "cannot glue hole " + spec.hole_a + " to itself");
  Dart fa = detail::fund_on_hole(rs, *ha, spec.fund_a);
  Dart fb = detail::fund_on_hole(rs, *hb, spec.fund_b);

  std::array<Dart, 3> A{fa, rs.face_successor(fa), rs.face_successor(rs.face_successor(fa))};
  std::array<Dart, 3> B{fb, rs.face_successor(fb), rs.face_successor(rs.face_successor(fb))};
  std::array<VertexId, 3> av{}, bv{};
  for (int k = 0; k < 3; ++k) {
    av[static_cast<std::size_t>(k)] = rs.origin(A[static_cast<std::size_t>(k)]);
    bv[static_cast<std::size_t>(k)] = rs.origin(B[static_cast<std::size_t>(k)]);
  }
  for (auto x : av)
    for (auto y : bv)
      if (x == y) throw Error(ErrorCode::AmbiguousAlignment, "cycles " + spec.hole_a + " and " + spec.hole_b + " share vertex " + rs.vertex_name(x));

  // A[r] (a_r -> a_{r+1}) pairs with B[-r] (b_{-r} -> b_{1-r}); a_r merges with b_{1-r}.
  auto bi = [](int r) { return static_cast<std::size_t>(((r % 3) + 3) % 3); };
  std::vector<Dart> partner(rs.dart_count(), -1);
  std::vector<VertexId> merge_into(rs.vertex_count(), -1);
  for (int r = 0; r < 3; ++r) {
    Dart a = A[static_cast<std::size_t>(r)], b = B[bi(-r)];
    partner[static_cast<std::size_t>(a)] = b;
    partner[static_cast<std::size_t>(b)] = a;
    merge_into[static_cast<std::size_t>(av[static_cast<std::size_t>(r)])] = bv[bi(1 - r)];
  }
  auto is_hole_dart = [&](Dart d) { return partner[static_cast<std::size_t>(d)] != -1; };

  // Fresh twin table: the surviving dart of each glued edge pairs with the
  // surviving dart of its partner edge.
  const auto n = rs.dart_count();
  std::vector<Dart> new_id(n, -1);
  Dart next = 0;
  for (Dart d = 0; d < static_cast<Dart>(n); ++d)
    if (!is_hole_dart(d)) new_id[static_cast<std::size_t>(d)] = next++;
  RawRotationData raw;
  raw.name = rs.name();
  raw.dart_count = static_cast<std::size_t>(next);
  raw.twin.assign(raw.dart_count, -1);
  for (Dart d = 0; d < static_cast<Dart>(n); ++d) {
    if (is_hole_dart(d)) continue;
    Dart t = twin(d);
    Dart mate = is_hole_dart(t) ? twin(partner[static_cast<std::size_t>(t)]) : t;
    raw.twin[static_cast<std::size_t>(new_id[static_cast<std::size_t>(d)])] = new_id[static_cast<std::size_t>(mate)];
  }

  // Rotation at a merged vertex: the A fan from twin(h_in) is replaced by
  // [twin(h_in), B fan after g_out, twin(g_in), A fan after h_out].
  auto fan_after = [&](Dart start) {
    std::vector<Dart> out;
    for (Dart d = rs.rotation_next(start); d != start; d = rs.rotation_next(d)) out.push_back(d);
    return out;
  };
  auto hole_out = [&](VertexId v, const std::array<Dart, 3>& orbit) {
    for (Dart d : orbit)
      if (rs.origin(d) == v) return d;
    return Dart{-1};
  };
  std::vector<VertexId> keep_index(rs.vertex_count());
  for (VertexId v = 0; v < static_cast<VertexId>(rs.vertex_count()); ++v) keep_index[static_cast<std::size_t>(v)] = v;
  std::vector<std::vector<Dart>> rotation(rs.vertex_count());
  std::vector<std::string> names = rs.vertex_names();
  std::vector<bool> dropped(rs.vertex_count(), false);
  for (VertexId v = 0; v < static_cast<VertexId>(rs.vertex_count()); ++v) {
    auto r = rs.rotation(v);
    rotation[static_cast<std::size_t>(v)].assign(r.begin(), r.end());
  }
  std::string mapping;
  for (int r = 0; r < 3; ++r) {
    VertexId a = av[static_cast<std::size_t>(r)], b = merge_into[static_cast<std::size_t>(a)];
    Dart h_out = hole_out(a, A), g_out = hole_out(b, B);
    Dart h_in_t = rs.rotation_prev(h_out), g_in_t = rs.rotation_prev(g_out);
    std::vector<Dart> merged{h_in_t};
    for (Dart d : fan_after(g_out))
      if (d != g_in_t) merged.push_back(d);
    merged.push_back(g_in_t);
    for (Dart d : fan_after(h_out))
      if (d != h_in_t) merged.push_back(d);
    VertexId keep = std::min(a, b), drop = std::max(a, b);
    rotation[static_cast<std::size_t>(keep)] = std::move(merged);
    rotation[static_cast<std::size_t>(drop)].clear();
    dropped[static_cast<std::size_t>(drop)] = true;
    names[static_cast<std::size_t>(keep)] = std::min(rs.vertex_name(a), rs.vertex_name(b));
    if (r) mapping += ",";
    mapping += rs.vertex_name(a) + "->" + rs.vertex_name(b);
  }
  for (VertexId v = 0; v < static_cast<VertexId>(rs.vertex_count()); ++v) {
    if (dropped[static_cast<std::size_t>(v)]) continue;
    std::vector<Dart> rot;
    for (Dart d : rotation[static_cast<std::size_t>(v)]) rot.push_back(new_id[static_cast<std::size_t>(d)]);
    raw.rotations.push_back(std::move(rot));
    raw.vertex_names.push_back(names[static_cast<std::size_t>(v)]);
  }
  for (const auto& h : rs.holes()) {
    if (&h == ha || &h == hb) continue;
    raw.holes.push_back({h.name, h.role, new_id[static_cast<std::size_t>(h.dart)]});
  }
  // A fundamental mark on a vanished hole dart moves to the partner edge's
  // surviving dart, which runs the same way.
  for (const auto& f : rs.fundamental_edges()) {
    Dart d = f.dart;
    if (is_hole_dart(d)) d = twin(partner[static_cast<std::size_t>(d)]);
    raw.fundamental_edges.push_back({f.name, new_id[static_cast<std::size_t>(d)]});
  }

  RotationSystem out;
  try {
    out = RotationSystem::validate(std::move(raw));
    require_triangulation(out);
  } catch (const Error& e) {
    throw Error(ErrorCode::AmbiguousAlignment, "gluing " + spec.hole_a + " to " + spec.hole_b + " is invalid: " + e.what());
  }
  auto before = topology(rs), after = topology(out);
  std::string log = "glue " + spec.hole_a + "[" + spec.fund_a + "] ~ " + spec.hole_b + "[" + spec.fund_b + "] map " + mapping +
                    " chi " + std::to_string(before.euler_characteristic) + " -> " + std::to_string(after.euler_characteristic) +
                    " holes " + std::to_string(before.holes) + " -> " + std::to_string(after.holes);
  return {std::move(out), std::move(log)};
}

/// Glue across two separate surfaces.
inline GlueResult glue(const RotationSystem& a, const RotationSystem& b, const GlueSpec& spec) {
  return glue(disjoint_union(a, b, a.name()), spec);
}

// ---------------------------------------------------------------------------
// Replicators and caps

struct Assembly {
  RotationSystem surface;
  std::vector<std::string> log;

  void apply(const GlueSpec& spec) {
    auto r = glue(surface, spec);
    surface = std::move(r.surface);
    log.push_back(std::move(r.log));
  }
};

/// Auxiliary choice gadgets glued onto the three role=none cycles of the
/// core. The prefixes sort after plain labels so core names survive merging.
struct AuxSlot {
  const char* hole;
  const char* fund;
  const char* prefix;
};
inline constexpr AuxSlot kAuxSlots[] = {{"hat", "u'x", "~hat/"}, {"bar", "xy", "~bar/"}, {"tilde", "zw'", "~tilde/"}};

inline Assembly assemble_block_replicator(const RotationSystem& core, const GadgetTemplate& choice) {
  const auto& var = *choice.cycles_with(HoleRole::variable).front();
  std::vector<RotationSystem> aux;
  for (const auto& slot : kAuxSlots) aux.push_back(with_prefix(choice.surface, slot.prefix));
  Assembly a{disjoint_union({&core, &aux[0], &aux[1], &aux[2]}, "block_replicator"), {}};
  for (const auto& slot : kAuxSlots)
    a.apply({slot.hole, slot.fund, std::string(slot.prefix) + var.name, std::string(slot.prefix) + var.fund_name});
  return a;
}

struct ReplicatorEnd {
  std::string hole;
  std::string fund;
};

/// End cycle e of a depth-k tree sits on leaf block 2^(k-1) + e/2, outgoing
/// cycle O1 for even e and O2 for odd e.
inline ReplicatorEnd replicator_end(int k, std::int64_t e, const std::string& prefix = "") {
  std::int64_t block = (std::int64_t{1} << (k - 1)) + e / 2;
  std::string b = prefix + "B" + std::to_string(block) + "/";
  return e % 2 == 0 ? ReplicatorEnd{b + "O1", b + "v'u'"} : ReplicatorEnd{b + "O2", b + "xy"};
}

inline GadgetTemplate build_k_replicator(const GadgetTemplate& block, int k, std::vector<std::string>* log = nullptr) {
  if (k < 1 || k > 20) throw Error(ErrorCode::TooLarge, "replicator depth must be in 1..20");
  const std::int64_t blocks = (std::int64_t{1} << k) - 1;
  std::vector<RotationSystem> copies;
  copies.reserve(static_cast<std::size_t>(blocks));
  for (std::int64_t j = 1; j <= blocks; ++j) copies.push_back(with_prefix(block.surface, "B" + std::to_string(j) + "/"));
  std::vector<const RotationSystem*> parts;
  for (const auto& c : copies) parts.push_back(&c);
  Assembly a{disjoint_union(parts, "replicator" + std::to_string(k)), {}};
  for (std::int64_t j = 1; j <= blocks / 2; ++j) {
    auto p = "B" + std::to_string(j) + "/";
    auto l = "B" + std::to_string(2 * j) + "/";
    auto r = "B" + std::to_string(2 * j + 1) + "/";
    a.apply({p + "O1", p + "v'u'", l + "I", l + "vw"});
    a.apply({p + "O2", p + "xy", r + "I", r + "vw"});
  }
  // Reorder holes: start cycle, then end cycles by leaf index.
  RawRotationData raw = a.surface.to_raw();
  std::vector<HoleMark> holes;
  auto take = [&](const std::string& name) {
    for (const auto& h : raw.holes)
      if (h.name == name) return h;
    throw Error(ErrorCode::UnknownHole, "replicator lost hole " + name);
  };
  holes.push_back(take("B1/I"));
  for (std::int64_t e = 0; e < (std::int64_t{1} << k); ++e) holes.push_back(take(replicator_end(k, e).hole));
  raw.holes = std::move(holes);
  if (log) *log = std::move(a.log);
  return make_gadget(RotationSystem::validate(std::move(raw)), GadgetKind::k_replicator, k);
}

/// Seals a hole with a fresh prefixed cap.
inline GlueResult cap_hole(const RotationSystem& rs, const std::string& hole, const std::string& fund, const GadgetTemplate& cap,
                           const std::string& prefix) {
  const auto& outer = *cap.cycles_with(HoleRole::outer).front();
  auto fresh = with_prefix(cap.surface, prefix);
  return glue(rs, fresh, {hole, fund, prefix + outer.name, prefix + outer.fund_name});
}

}  // namespace trispin
