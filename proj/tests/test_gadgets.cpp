#include <gtest/gtest.h>

#include "support.hpp"
#include "trispin/assembler.hpp"
#include "trispin/gadget.hpp"

using namespace trispin;
using namespace testing_support;

namespace {

GadgetTemplate gadget(const char* file, GadgetKind kind) { return load_gadget(source_path(std::string("gadgets/") + file), kind); }

BoundaryCondition named(const GadgetTemplate& g, std::initializer_list<std::pair<const char*, int>> spins) {
  BoundaryCondition bc;
  for (auto [name, s] : spins) bc.emplace_back(*g.surface.find_vertex(name), static_cast<std::int8_t>(s));
  return bc;
}

BoundaryCondition negate(BoundaryCondition bc) {
  for (auto& p : bc) p.second = static_cast<std::int8_t>(-p.second);
  return bc;
}

std::vector<VertexId> boundary_vertices(const GadgetTemplate& g) {
  std::vector<VertexId> out;
  for (const auto& c : g.cycles)
    for (auto v : c.vertices)
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  return out;
}

std::vector<std::array<std::string, 3>> face_names(const RotationSystem& rs, std::vector<std::array<std::string, 3>>* holes) {
  std::vector<std::array<std::string, 3>> out;
  for (const auto& f : trace_faces(rs)) {
    std::array<std::string, 3> t{rs.vertex_name(rs.origin(f.darts[0])), rs.vertex_name(rs.origin(f.darts[1])), rs.vertex_name(rs.origin(f.darts[2]))};
    (f.is_hole ? *holes : out).push_back(t);
  }
  return out;
}

}  // namespace

TEST(Load, ChoiceShape) {
  auto g = gadget("choice.rot", GadgetKind::choice);
  EXPECT_EQ(g.topo.genus, 1);
  EXPECT_EQ(g.topo.holes, 1);
  EXPECT_EQ(g.topo.euler_characteristic, -1);
  const auto& c = *g.cycles_with(HoleRole::variable).front();
  EXPECT_EQ(c.fund_name, "uw");
  auto faces = trace_faces(g.surface, FaceDemand::triangulation);
  EXPECT_EQ(std::count_if(faces.begin(), faces.end(), [](const auto& f) { return f.is_hole; }), 1);
}

TEST(Load, OtherShapes) {
  auto cl = gadget("clause.rot", GadgetKind::clause);
  EXPECT_EQ(cl.topo.genus, 1);
  EXPECT_EQ(cl.topo.holes, 3);
  EXPECT_EQ(cl.topo.euler_characteristic, -3);
  auto cap = gadget("cap.rot", GadgetKind::cap);
  EXPECT_EQ(cap.topo.genus, 0);
  EXPECT_EQ(cap.topo.euler_characteristic, 1);
  auto core = gadget("block_replicator_core.rot", GadgetKind::block_replicator_core);
  EXPECT_EQ(core.topo.euler_characteristic, -6);
  EXPECT_EQ(core.topo.holes, 6);
  auto block = gadget("block_replicator.rot", GadgetKind::block_replicator);
  EXPECT_EQ(block.topo.genus, 4);
  EXPECT_EQ(block.topo.holes, 3);
  EXPECT_EQ(block.topo.euler_characteristic, -9);
  EXPECT_EQ(block.cycle("I").fund_name, "vw");
  EXPECT_EQ(block.cycle("O1").fund_name, "v'u'");
  EXPECT_EQ(block.cycle("O2").fund_name, "xy");
}

TEST(Load, WrongKind) {
  try {
    gadget("choice.rot", GadgetKind::clause);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TopologyMismatch);
  }
}

TEST(Load, IncomingSharingVertexWithOutgoing) {
  auto block = gadget("block_replicator.rot", GadgetKind::block_replicator);
  auto raw = block.surface.to_raw();
  VertexId u = block.cycle("I").vertices[0];
  FaceTable table(block.surface);
  Dart pick = -1;
  auto carries_fund = [&](Dart d) {
    for (Dart x : block.surface.orbit_of(d)) {
      if (table.faces()[static_cast<std::size_t>(table.face_of(twin(x)))].is_hole) return true;
      for (const auto& f : block.surface.fundamental_edges())
        if (edge_of(f.dart) == edge_of(x)) return true;
    }
    return false;
  };
  for (Dart d : block.surface.rotation(u))
    if (!table.faces()[static_cast<std::size_t>(table.face_of(d))].is_hole && !carries_fund(d)) pick = d;
  ASSERT_NE(pick, -1);
  for (auto& h : raw.holes)
    if (h.name == "O1") h.dart = pick;
  raw.fundamental_edges.push_back({"extra", pick});
  try {
    make_gadget(RotationSystem::validate(raw), GadgetKind::block_replicator);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TopologyMismatch);
  }
}

TEST(Load, MissingFundamentalEdge) {
  auto raw = gadget("choice.rot", GadgetKind::choice).surface.to_raw();
  raw.fundamental_edges.clear();
  try {
    make_gadget(RotationSystem::validate(raw), GadgetKind::choice);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingFundamentalEdge);
  }
}

TEST(Load, BadRole) {
  auto raw = gadget("choice.rot", GadgetKind::choice).surface.to_raw();
  raw.holes[0].role = HoleRole::literal;
  try {
    make_gadget(RotationSystem::validate(raw), GadgetKind::choice);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadBoundaryRole);
  }
}

TEST(Extensions, ChoiceExamples) {
  auto g = gadget("choice.rot", GadgetKind::choice);
  EXPECT_EQ(count_extensions(g, named(g, {{"u", 1}, {"v", 1}, {"w", 1}})), 1u);
  EXPECT_EQ(count_extensions(g, named(g, {{"u", 1}, {"v", -1}, {"w", 1}})), 1u);
  EXPECT_EQ(count_extensions(g, named(g, {{"u", 1}, {"v", 1}, {"w", -1}})), 0u);
  EXPECT_EQ(count_extensions(g, named(g, {{"u", -1}, {"v", -1}, {"w", 1}})), 0u);
  EXPECT_EQ(count_extensions(g, {}), 4u);
}

TEST(Extensions, PartialBoundary) {
  auto g = gadget("choice.rot", GadgetKind::choice);
  try {
    count_extensions(g, named(g, {{"u", 1}, {"v", 1}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PartialBoundary);
  }
  EXPECT_THROW(count_extensions(g, named(g, {{"u", 1}, {"v", 1}, {"w", 1}, {"p1", 1}})), Error);
}

TEST(Extensions, DualityAndSumPerKind) {
  const std::pair<const char*, GadgetKind> kinds[] = {{"choice.rot", GadgetKind::choice},
                                                      {"cap.rot", GadgetKind::cap},
                                                      {"clause.rot", GadgetKind::clause},
                                                      {"block_replicator.rot", GadgetKind::block_replicator}};
  for (auto [file, kind] : kinds) {
    auto g = gadget(file, kind);
    auto verts = boundary_vertices(g);
    std::uint64_t sum = 0;
    for (unsigned mask = 0; mask < (1u << verts.size()); ++mask) {
      BoundaryCondition bc;
      for (std::size_t i = 0; i < verts.size(); ++i) bc.emplace_back(verts[i], static_cast<std::int8_t>(mask >> i & 1 ? -1 : 1));
      auto n = count_extensions(g, bc);
      EXPECT_EQ(n, count_extensions(g, negate(bc))) << file;
      sum += n;
    }
    EXPECT_EQ(sum, count_satisfying(g.surface).satisfying_count) << file;
  }
}

TEST(Contracts, AllFixturesPass) {
  for (auto [file, kind] : std::initializer_list<std::pair<const char*, GadgetKind>>{{"choice.rot", GadgetKind::choice},
                                                                                     {"cap.rot", GadgetKind::cap},
                                                                                     {"clause.rot", GadgetKind::clause},
                                                                                     {"block_replicator.rot", GadgetKind::block_replicator}}) {
    auto r = verify_contract(gadget(file, kind));
    EXPECT_TRUE(r.passed) << file << ": " << r.first_failure;
    EXPECT_NO_THROW(r.enforce());
  }
}

TEST(Contracts, ChoiceSerious) {
  auto g = gadget("choice.rot", GadgetKind::choice);
  auto serious = serious_edges(g.surface);
  EdgeId fund = edge_of(g.cycles.front().fund);
  EXPECT_NE(std::find(serious.begin(), serious.end(), fund), serious.end());
  EXPECT_EQ(count_satisfying(g.surface).satisfying_count, 4u);
}

TEST(Contracts, BlockSeriousAndSigns) {
  auto g = gadget("block_replicator.rot", GadgetKind::block_replicator);
  auto serious = serious_edges(g.surface);
  for (const char* c : {"I", "O1", "O2"}) {
    EdgeId e = edge_of(g.cycle(c).fund);
    EXPECT_NE(std::find(serious.begin(), serious.end(), e), serious.end()) << c;
  }
  auto ext = extensions(g, named(g, {{"u", 1}, {"v", 1}, {"w", 1}}));
  ASSERT_EQ(ext.size(), 1u);
  for (const char* c : {"O1", "O2"}) {
    EXPECT_TRUE(is_monochromatic(g.cycle(c), ext[0]));
    EXPECT_EQ(sign_of(g.cycle(c), ext[0]), -1);
  }
  ext = extensions(g, named(g, {{"u", -1}, {"v", 1}, {"w", 1}}));
  ASSERT_EQ(ext.size(), 1u);
  for (const char* c : {"O1", "O2"}) {
    EXPECT_FALSE(is_monochromatic(g.cycle(c), ext[0]));
    EXPECT_EQ(sign_of(g.cycle(c), ext[0]), -1);
  }
  EXPECT_EQ(count_extensions(g, named(g, {{"u", 1}, {"v", 1}, {"w", -1}})), 0u);
}

TEST(Contracts, ClauseExamples) {
  auto g = gadget("clause.rot", GadgetKind::clause);
  // u = w = v' carries the fundamental edges; v, u', w' are the third vertices
  auto bc = [&](int v, int up, int wp) { return named(g, {{"u", 1}, {"w", 1}, {"v'", 1}, {"v", v}, {"u'", up}, {"w'", wp}}); };
  EXPECT_EQ(count_extensions(g, bc(1, 1, 1)), 0u);
  EXPECT_EQ(count_extensions(g, bc(1, -1, -1)), 1u);
  EXPECT_EQ(count_extensions(g, bc(-1, -1, -1)), 0u);
  EXPECT_EQ(count_extensions(g, bc(1, 1, -1)), 1u);
}

TEST(Contracts, ChoiceFlipMutationsAreCaught) {
  auto g = gadget("choice.rot", GadgetKind::choice);
  std::vector<std::array<std::string, 3>> holes;
  auto faces = face_names(g.surface, &holes);
  int tried = 0, caught = 0;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    for (std::size_t j = i + 1; j < faces.size(); ++j) {
      for (int r = 0; r < 3; ++r) {
        for (int q = 0; q < 3; ++q) {
          auto a = faces[i][r], b = faces[i][(r + 1) % 3], c = faces[i][(r + 2) % 3];
          if (faces[j][q] != b || faces[j][(q + 1) % 3] != a) continue;
          auto d = faces[j][(q + 2) % 3];
          auto mutated = faces;
          mutated[i] = {a, d, c};
          mutated[j] = {b, c, d};
          TriangulationBuilder tb("mutant");
          tb.hole("X", HoleRole::variable, holes[0][0], holes[0][1], holes[0][2]);
          for (const auto& f : mutated) tb.face(f[0], f[1], f[2]);
          tb.fundamental("uw", "u", "w");
          try {
            auto m = make_gadget(tb.build(), GadgetKind::choice);
            ++tried;
            auto report = verify_choice_contract(m);
            if (!report.passed) {
              ++caught;
              try {
                report.enforce();
                ADD_FAILURE();
              } catch (const Error& e) {
                EXPECT_EQ(e.code(), ErrorCode::ContractViolation);
              }
            }
          } catch (const Error&) {
            // flip produced a parallel edge or loop; not a triangulation we can test
          }
        }
      }
    }
  }
  EXPECT_GT(tried, 0);
  EXPECT_GT(caught, 0);
}

TEST(Contracts, ChoiceTransposedRotationRejected) {
  auto raw = gadget("choice.rot", GadgetKind::choice).surface.to_raw();
  auto& rot = raw.rotations[static_cast<std::size_t>(std::distance(
      raw.vertex_names.begin(), std::find(raw.vertex_names.begin(), raw.vertex_names.end(), std::string("p4"))))];
  std::swap(rot[0], rot[1]);
  EXPECT_THROW(make_gadget(RotationSystem::validate(raw), GadgetKind::choice), Error);
}

TEST(Contracts, CapWithFaceRemoved) {
  auto cap = gadget("cap.rot", GadgetKind::cap);
  auto raw = cap.surface.to_raw();
  FaceTable table(cap.surface);
  for (const auto& f : table.faces())
    if (!f.is_hole) {
      raw.holes.push_back({"gone", HoleRole::none, f.darts[0]});
      break;
    }
  auto rs = RotationSystem::validate(raw);
  EXPECT_THROW(make_gadget(rs, GadgetKind::cap), Error);
  GadgetTemplate g;
  g.kind = GadgetKind::cap;
  g.surface = rs;
  g.cycles.push_back(boundary_cycle(rs, *rs.find_hole("outer")));
  auto report = verify_cap_contract(g);
  EXPECT_FALSE(report.passed);
  try {
    report.enforce();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ContractViolation);
  }
}

TEST(Fixtures, BlockReplicatorIsFrozenAssembly) {
  auto core = load_rot(source_path("gadgets/block_replicator_core.rot"));
  auto choice = gadget("choice.rot", GadgetKind::choice);
  auto assembled = assemble_block_replicator(core, choice);
  EXPECT_EQ(serialize_rot(assembled.surface), read_text_file(source_path("gadgets/block_replicator.rot")));
  EXPECT_EQ(assembled.log.size(), 3u);
}
