#pragma once

// Gadget templates (triangulations with holes) and their extension-count
// contracts.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trispin/error.hpp"
#include "trispin/rot_format.hpp"
#include "trispin/rotation_system.hpp"
#include "trispin/spin.hpp"

namespace trispin {

enum class GadgetKind { choice, block_replicator_core, block_replicator, k_replicator, cap, clause };

constexpr std::string_view to_string(GadgetKind k) {
  switch (k) {
    case GadgetKind::choice: return "choice";
    case GadgetKind::block_replicator_core: return "block-replicator-core";
    case GadgetKind::block_replicator: return "block-replicator";
    case GadgetKind::k_replicator: return "k-replicator";
    case GadgetKind::cap: return "cap";
    case GadgetKind::clause: return "clause";
  }
  return "?";
}

/// A hole boundary in the traversal of its hole orbit. `fund` is the dart of
/// the cycle's fundamental edge that lies on the hole orbit; `vertices` lists
/// the fundamental edge's endpoints first (in hole traversal), then the third
/// vertex.
struct BoundaryCycle {
  std::string name;
  HoleRole role = HoleRole::none;
  Dart hole_dart = -1;
  Dart fund = -1;
  std::string fund_name;
  std::array<VertexId, 3> vertices{};
};

struct GadgetTemplate {
  GadgetKind kind = GadgetKind::choice;
  int depth = 0;  // k for k-replicators
  RotationSystem surface;
  std::vector<BoundaryCycle> cycles;
  TopologySummary topo;

  const BoundaryCycle& cycle(std::string_view name) const {
    for (const auto& c : cycles)
      if (c.name == name) return c;
    throw Error(ErrorCode::UnknownHole, "gadget has no cycle " + std::string(name));
  }
  std::vector<const BoundaryCycle*> cycles_with(HoleRole role) const {
    std::vector<const BoundaryCycle*> out;
    for (const auto& c : cycles)
      if (c.role == role) out.push_back(&c);
    return out;
  }
};

/// Binds every hole to its boundary cycle and fundamental edge. A cycle must
/// carry exactly one fundamental edge (several marks on the same edge count
/// once).
inline BoundaryCycle boundary_cycle(const RotationSystem& rs, const HoleMark& h) {
  BoundaryCycle c;
  c.name = h.name;
  c.role = h.role;
  c.hole_dart = h.dart;
  auto orbit = rs.orbit_of(h.dart);
  if (orbit.size() != 3) throw Error(ErrorCode::CycleLengthMismatch, "hole " + h.name + " has length " + std::to_string(orbit.size()));
  for (const auto& f : rs.fundamental_edges()) {
    for (Dart d : orbit) {
      if (edge_of(d) != edge_of(f.dart)) continue;
      if (c.fund != -1 && c.fund != d) throw Error(ErrorCode::MissingFundamentalEdge, "hole " + h.name + " carries two fundamental edges");
      if (c.fund == -1) c.fund_name = f.name;
      c.fund = d;
    }
  }
  if (c.fund == -1) throw Error(ErrorCode::MissingFundamentalEdge, "hole " + h.name + " has no fundamental edge");
  c.vertices = {rs.origin(c.fund), rs.head(c.fund), rs.head(rs.face_successor(c.fund))};
  return c;
}

inline bool share_vertex(const BoundaryCycle& a, const BoundaryCycle& b) {
  for (auto x : a.vertices)
    for (auto y : b.vertices)
      if (x == y) return true;
  return false;
}

struct KindShape {
  std::int64_t genus;
  std::int64_t holes;
  std::vector<std::pair<HoleRole, int>> roles;
};

inline KindShape expected_shape(GadgetKind kind, int depth = 0) {
  switch (kind) {
    case GadgetKind::choice: return {1, 1, {{HoleRole::variable, 1}}};
    case GadgetKind::block_replicator_core:
      return {1, 6, {{HoleRole::incoming, 1}, {HoleRole::outgoing, 2}, {HoleRole::none, 3}}};
    case GadgetKind::block_replicator: return {4, 3, {{HoleRole::incoming, 1}, {HoleRole::outgoing, 2}}};
    case GadgetKind::k_replicator: {
      std::int64_t leaves = std::int64_t{1} << depth;
      return {4 * (leaves - 1), leaves + 1, {{HoleRole::incoming, 1}, {HoleRole::outgoing, static_cast<int>(leaves)}}};
    }
    case GadgetKind::cap: return {0, 1, {{HoleRole::outer, 1}}};
    case GadgetKind::clause: return {1, 3, {{HoleRole::literal, 3}}};
  }
  return {};
}

inline GadgetTemplate make_gadget(RotationSystem rs, GadgetKind kind, int depth = 0) {
  require_triangulation(rs);
  GadgetTemplate g;
  g.kind = kind;
  g.depth = depth;
  g.topo = topology(rs);
  auto shape = expected_shape(kind, depth);
  if (g.topo.components != 1 || g.topo.genus != shape.genus || g.topo.holes != shape.holes)
    throw Error(ErrorCode::TopologyMismatch, std::string(to_string(kind)) + " needs genus " + std::to_string(shape.genus) + " with " +
                                                 std::to_string(shape.holes) + " holes, got genus " + std::to_string(g.topo.genus) + " with " +
                                                 std::to_string(g.topo.holes) + " holes in " + std::to_string(g.topo.components) + " components");
  for (const auto& h : rs.holes()) g.cycles.push_back(boundary_cycle(rs, h));
  for (auto [role, want] : shape.roles) {
    auto have = std::count_if(g.cycles.begin(), g.cycles.end(), [role = role](const auto& c) { return c.role == role; });
    if (have != want)
      throw Error(ErrorCode::BadBoundaryRole, std::string(to_string(kind)) + " needs " + std::to_string(want) + " " +
                                                  std::string(to_string(role)) + " cycles, found " + std::to_string(have));
  }
  if (kind == GadgetKind::block_replicator || kind == GadgetKind::k_replicator || kind == GadgetKind::block_replicator_core) {
    const auto& in = *g.cycles_with(HoleRole::incoming).front();
    for (const auto* out : g.cycles_with(HoleRole::outgoing))
      if (share_vertex(in, *out))
        throw Error(ErrorCode::TopologyMismatch, "incoming cycle " + in.name + " shares a vertex with outgoing cycle " + out->name);
  }
  g.surface = std::move(rs);
  return g;
}

inline GadgetTemplate load_gadget(const std::string& path, GadgetKind kind, int depth = 0) {
  return make_gadget(load_rot(path), kind, depth);
}

// ---------------------------------------------------------------------------
// Boundary conditions

using BoundaryCondition = std::vector<std::pair<VertexId, std::int8_t>>;

/// Spins for (fund tail, fund head, third) of a cycle.
inline void pin_cycle(BoundaryCondition& bc, const BoundaryCycle& c, std::array<std::int8_t, 3> spins) {
  for (int k = 0; k < 3; ++k) bc.emplace_back(c.vertices[static_cast<std::size_t>(k)], spins[static_cast<std::size_t>(k)]);
}

inline std::array<std::int8_t, 3> spins_from_mask(unsigned mask) {
  return {static_cast<std::int8_t>(mask & 1 ? -1 : 1), static_cast<std::int8_t>(mask & 2 ? -1 : 1), static_cast<std::int8_t>(mask & 4 ? -1 : 1)};
}

inline bool is_monochromatic(const BoundaryCycle& c, const SpinAssignment& s) {
  auto a = s[static_cast<std::size_t>(c.vertices[0])];
  return a == s[static_cast<std::size_t>(c.vertices[1])] && a == s[static_cast<std::size_t>(c.vertices[2])];
}

/// +1 when at least two vertices carry +1.
inline int sign_of(const BoundaryCycle& c, const SpinAssignment& s) {
  int plus = 0;
  for (auto v : c.vertices) plus += s[static_cast<std::size_t>(v)] > 0;
  return plus >= 2 ? 1 : -1;
}

inline bool fund_monochromatic(const RotationSystem& rs, const BoundaryCycle& c, const SpinAssignment& s) {
  return s[static_cast<std::size_t>(rs.origin(c.fund))] == s[static_cast<std::size_t>(rs.head(c.fund))];
}

inline std::string describe(const RotationSystem& rs, const BoundaryCondition& bc) {
  std::string out = "(";
  for (std::size_t i = 0; i < bc.size(); ++i) {
    if (i) out += ",";
    out += rs.vertex_name(bc[i].first) + (bc[i].second > 0 ? "=+" : "=-");
  }
  return out + ")";
}

/// Boundary conditions must cover whole boundary cycles.
inline void check_boundary_condition(const GadgetTemplate& g, const BoundaryCondition& bc) {
  std::vector<std::int8_t> seen(g.surface.vertex_count(), 0);
  for (auto [v, s] : bc) {
    if (v < 0 || static_cast<std::size_t>(v) >= seen.size()) throw Error(ErrorCode::PartialBoundary, "vertex out of range");
    auto& slot = seen[static_cast<std::size_t>(v)];
    if (slot != 0 && slot != s) throw Error(ErrorCode::PartialBoundary, "contradictory spins for " + g.surface.vertex_name(v));
    slot = s;
  }
  std::vector<bool> on_boundary(seen.size(), false);
  for (const auto& c : g.cycles) {
    int fixed = 0;
    for (auto v : c.vertices) {
      on_boundary[static_cast<std::size_t>(v)] = true;
      fixed += seen[static_cast<std::size_t>(v)] != 0;
    }
    if (fixed != 0 && fixed != 3) throw Error(ErrorCode::PartialBoundary, "cycle " + c.name + " only partly assigned");
  }
  for (auto [v, s] : bc)
    if (!on_boundary[static_cast<std::size_t>(v)]) throw Error(ErrorCode::PartialBoundary, g.surface.vertex_name(v) + " is not a boundary vertex");
}

inline std::uint64_t count_extensions(const GadgetTemplate& g, const BoundaryCondition& bc) {
  check_boundary_condition(g, bc);
  CountOptions opt;
  opt.pins = bc;
  return search_satisfying(g.surface, opt);
}

inline std::vector<SpinAssignment> extensions(const GadgetTemplate& g, const BoundaryCondition& bc, std::size_t limit = 64) {
  check_boundary_condition(g, bc);
  CountOptions opt;
  opt.pins = bc;
  std::vector<SpinAssignment> out;
  search_satisfying(g.surface, opt, [&](const SpinAssignment& s) {
    if (out.size() >= limit) throw Error(ErrorCode::TooLarge, "too many extensions");
    out.push_back(s);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Contracts

struct ContractReport {
  ContractReport() = default;
  explicit ContractReport(std::string name) : gadget(std::move(name)) {}

  std::string gadget;
  bool passed = true;
  std::vector<std::string> checks;  // one line per check, prefixed ok/FAIL
  std::string first_failure;

  void expect(bool ok, std::string what) {
    checks.push_back((ok ? "ok   " : "FAIL ") + what);
    if (!ok && passed) {
      passed = false;
      first_failure = std::move(what);
    }
  }
  void enforce() const {
    if (!passed) throw Error(ErrorCode::ContractViolation, gadget + ": " + first_failure);
  }
};

inline ContractReport verify_choice_contract(const GadgetTemplate& g) {
  ContractReport r{std::string(to_string(g.kind))};
  const auto& c = *g.cycles_with(HoleRole::variable).front();
  std::uint64_t sum = 0;
  for (unsigned mask = 0; mask < 8; ++mask) {
    auto sp = spins_from_mask(mask);
    BoundaryCondition bc;
    pin_cycle(bc, c, sp);
    auto n = count_extensions(g, bc);
    sum += n;
    std::uint64_t want = sp[0] == sp[1] ? 1 : 0;
    r.expect(n == want, "extensions" + describe(g.surface, bc) + " = " + std::to_string(n) + ", want " + std::to_string(want));
  }
  auto standalone = count_satisfying(g.surface).satisfying_count;
  r.expect(standalone == 4, "standalone count = " + std::to_string(standalone) + ", want 4");
  r.expect(standalone == sum, "standalone count equals sum over boundary conditions");
  return r;
}

/// Shared by block-replicators (depth 1) and k-replicators: a fixed start
/// cycle with monochromatic fundamental edge has exactly one extension, in
/// which every end cycle copies its chromaticity and carries the start sign
/// (even depth) or the opposite sign (odd depth).
inline ContractReport verify_replicator_contract(const GadgetTemplate& g, int depth) {
  ContractReport r{std::string(to_string(g.kind))};
  const auto& in = *g.cycles_with(HoleRole::incoming).front();
  auto outs = g.cycles_with(HoleRole::outgoing);
  r.expect(outs.size() == (std::size_t{1} << depth), "outgoing cycle count " + std::to_string(outs.size()));
  for (const auto* o : outs) r.expect(!share_vertex(in, *o), "incoming and " + o->name + " vertex-disjoint");
  for (unsigned mask = 0; mask < 8; ++mask) {
    auto sp = spins_from_mask(mask);
    BoundaryCondition bc;
    pin_cycle(bc, in, sp);
    auto ext = extensions(g, bc, 4);
    auto label = describe(g.surface, bc);
    if (sp[0] != sp[1]) {
      r.expect(ext.empty(), "extensions" + label + " = " + std::to_string(ext.size()) + ", want 0");
      continue;
    }
    r.expect(ext.size() == 1, "extensions" + label + " = " + std::to_string(ext.size()) + ", want 1");
    if (ext.size() != 1) continue;
    const auto& s = ext.front();
    bool mono = is_monochromatic(in, s);
    int want_sign = depth % 2 == 0 ? sign_of(in, s) : -sign_of(in, s);
    for (const auto* o : outs) {
      r.expect(is_monochromatic(*o, s) == mono, o->name + " chromaticity under " + label);
      r.expect(sign_of(*o, s) == want_sign, o->name + " sign under " + label);
      r.expect(fund_monochromatic(g.surface, *o, s), o->name + " fundamental edge monochromatic under " + label);
    }
  }
  return r;
}

inline ContractReport verify_block_replicator_contract(const GadgetTemplate& g) { return verify_replicator_contract(g, 1); }

inline ContractReport verify_cap_contract(const GadgetTemplate& g) {
  ContractReport r{std::string(to_string(g.kind))};
  const auto& c = *g.cycles_with(HoleRole::outer).front();
  for (unsigned mask = 0; mask < 8; ++mask) {
    BoundaryCondition bc;
    pin_cycle(bc, c, spins_from_mask(mask));
    auto n = count_extensions(g, bc);
    r.expect(n == 1, "extensions" + describe(g.surface, bc) + " = " + std::to_string(n) + ", want 1");
  }
  auto standalone = count_satisfying(g.surface).satisfying_count;
  r.expect(standalone == 8, "standalone count = " + std::to_string(standalone) + ", want 8");
  return r;
}

/// Only boundary conditions with every fundamental edge monochromatic.
inline ContractReport verify_clause_contract(const GadgetTemplate& g) {
  ContractReport r{std::string(to_string(g.kind))};
  auto lits = g.cycles_with(HoleRole::literal);
  std::vector<VertexId> verts;
  for (const auto* c : lits)
    for (auto v : c->vertices)
      if (std::find(verts.begin(), verts.end(), v) == verts.end()) verts.push_back(v);
  int tested = 0;
  for (unsigned mask = 0; mask < (1u << verts.size()); ++mask) {
    SpinAssignment s(g.surface.vertex_count(), 0);
    BoundaryCondition bc;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      auto sp = static_cast<std::int8_t>(mask >> i & 1 ? -1 : 1);
      s[static_cast<std::size_t>(verts[i])] = sp;
      bc.emplace_back(verts[i], sp);
    }
    bool funds_mono = true;
    int mono = 0;
    for (const auto* c : lits) {
      funds_mono = funds_mono && fund_monochromatic(g.surface, *c, s);
      mono += is_monochromatic(*c, s);
    }
    if (!funds_mono) continue;
    ++tested;
    auto n = count_extensions(g, bc);
    std::uint64_t want = (mono == 1 || mono == 2) ? 1 : 0;
    r.expect(n == want, std::to_string(mono) + " monochromatic literal cycles " + describe(g.surface, bc) + ": " + std::to_string(n) +
                            " extensions, want " + std::to_string(want));
    if (n > 0) {
      int sign = sign_of(*lits.front(), s);
      bool same = std::all_of(lits.begin(), lits.end(), [&](const auto* c) { return sign_of(*c, s) == sign; });
      r.expect(same, "literal cycles share a sign " + describe(g.surface, bc));
    }
  }
  r.expect(tested > 0, "some boundary condition has all fundamental edges monochromatic");
  return r;
}

inline ContractReport verify_contract(const GadgetTemplate& g) {
  switch (g.kind) {
    case GadgetKind::choice: return verify_choice_contract(g);
    case GadgetKind::block_replicator: return verify_block_replicator_contract(g);
    case GadgetKind::k_replicator: return verify_replicator_contract(g, g.depth);
    case GadgetKind::cap: return verify_cap_contract(g);
    case GadgetKind::clause: return verify_clause_contract(g);
    case GadgetKind::block_replicator_core: break;
  }
  ContractReport r{std::string(to_string(g.kind))};
  r.expect(true, "no standalone contract; checked after assembly");
  return r;
}

}  // namespace trispin
