#include <gtest/gtest.h>

#include <filesystem>

#include "support.hpp"
#include "trispin/reduction.hpp"

using namespace trispin;
using namespace testing_support;

namespace {

GadgetLibrary& library() {
  static GadgetLibrary lib = GadgetLibrary::load(source_path("gadgets"));
  return lib;
}

PnaeFormula f(const char* text) { return parse_formula(text); }

}  // namespace

TEST(Build, OneClause) {
  auto t = build(f("p pnae3 3 1\n1 2 3\n"), library());
  EXPECT_EQ(t.topo.holes, 0);
  EXPECT_EQ(t.topo.euler_characteristic, -78);
  EXPECT_EQ(t.topo.genus, 40);
  EXPECT_EQ(t.topo.components, 1);
  EXPECT_EQ(t.pieces.choice, 3);
  EXPECT_EQ(t.pieces.blocks, 9);
  EXPECT_EQ(t.pieces.clauses, 1);
  EXPECT_EQ(t.pieces.caps, 9);
  EXPECT_EQ(t.pieces.chi_sum(), -78);
  EXPECT_EQ(count_satisfying(t.surface).satisfying_count, 12u);
  auto dual = dual_graph(t.surface);
  EXPECT_TRUE(dual.cubic);
}

TEST(Build, Unsatisfiable) {
  EXPECT_EQ(count_satisfying(build(f("p pnae3 1 1\n1 1 1\n"), library()).surface).satisfying_count, 0u);
}

TEST(Build, RepeatedVariablesInOneClause) {
  for (const char* text : {"p pnae3 2 1\n1 1 2\n", "p pnae3 2 1\n1 2 1\n", "p pnae3 2 1\n2 1 1\n"}) {
    auto g = f(text);
    auto t = build(g, library());
    EXPECT_EQ(count_satisfying(t.surface).satisfying_count, 2 * count_nae_witnesses(g)) << text;
  }
}

TEST(Build, ComponentsFollowFormula) {
  auto t = build(f("p pnae3 6 2\n1 2 3\n4 5 6\n"), library());
  EXPECT_EQ(t.topo.components, 2);
  auto one = count_satisfying(build(f("p pnae3 3 1\n1 2 3\n"), library()).surface).satisfying_count;
  EXPECT_EQ(count_satisfying(t.surface).satisfying_count, one * one);
}

TEST(Build, Deterministic) {
  auto g = f("p pnae3 5 2\n1 2 3\n3 4 5\n");
  EXPECT_EQ(serialize_rot(build(g, library()).surface), serialize_rot(build(g, library()).surface));
}

TEST(Build, Provenance) {
  EXPECT_EQ(CompiledTriangulation::provenance("R2/B3/p7"), "R2/B3");
  EXPECT_EQ(CompiledTriangulation::provenance("C1/p4"), "C1");
  EXPECT_EQ(CompiledTriangulation::provenance("x"), "");
}

TEST(Wiring, RepeatedVariable) {
  auto g = f("p pnae3 2 1\n1 1 2\n");
  auto w = clause_literal_wiring(g, replication_plan(g));
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w[0].variable, 1);
  EXPECT_EQ(w[0].end_cycle, 0);
  EXPECT_EQ(w[0].position, 1);
  EXPECT_EQ(w[1].variable, 1);
  EXPECT_EQ(w[1].end_cycle, 1);
  EXPECT_EQ(w[1].position, 2);
  EXPECT_EQ(w[2].variable, 2);
  EXPECT_EQ(w[2].end_cycle, 0);
}

TEST(Wiring, SlotsCoverClauses) {
  auto g = f("p pnae3 6 4\n1 2 3\n1 4 5\n2 4 6\n3 5 6\n");
  EXPECT_EQ(clause_literal_wiring(g, replication_plan(g)).size(), 12u);
  auto plan = replication_plan(g);
  plan.variables[0].occurrences.pop_back();
  EXPECT_THROW(clause_literal_wiring(g, plan), Error);
}

TEST(Stats, GenusDiscrepancy) {
  auto one = stats(build(f("p pnae3 3 1\n1 2 3\n"), library()));
  EXPECT_EQ(one.topo.genus, 40);
  EXPECT_EQ(one.predicted_genus, 40);
  EXPECT_TRUE(one.genus_agrees());
  auto t = build(connectify(f("p pnae3 3 1\n1 2 3\n")), library());
  auto conn = stats(t);
  EXPECT_EQ(conn.topo.genus, 73);
  EXPECT_EQ(conn.predicted_genus, 69);
  EXPECT_FALSE(conn.genus_agrees());
  EXPECT_TRUE(conn.chi_matches_pieces());
  auto from_file = stats(parse_rot(serialize_rot(t.surface)));
  EXPECT_EQ(from_file.predicted_genus, 69);
  EXPECT_EQ(from_file.pieces.blocks, conn.pieces.blocks);
  EXPECT_EQ(from_file.pieces.caps, conn.pieces.caps);
  EXPECT_NE(format_stats(conn).find("genus_discrepancy: 4"), std::string::npos);
}

TEST(Verify, Examples) {
  auto r = verify(f("p pnae3 3 1\n1 2 3\n"), library());
  EXPECT_EQ(r.witnesses, 6u);
  EXPECT_EQ(*r.direct, 12u);
  EXPECT_EQ(r.connectified, 24u);
  EXPECT_TRUE(r.passed());
  auto z = verify(f("p pnae3 1 1\n1 1 1\n"), library());
  EXPECT_EQ(*z.direct, 0u);
  EXPECT_EQ(z.connectified, 0u);
  EXPECT_TRUE(z.passed());
  auto d = verify(f("p pnae3 6 2\n1 2 3\n4 5 6\n"), library());
  EXPECT_FALSE(d.direct.has_value());
  EXPECT_EQ(d.connectified, 4 * 36u);
}

TEST(Serious, ClauseFundamentalEdgesInSmallestBuild) {
  auto t = build(f("p pnae3 3 1\n1 2 3\n"), library());
  std::uint64_t seen = 0;
  auto serious = serious_edges(t.surface, &seen);
  EXPECT_EQ(seen, 6u);
  for (const char* name : {"C1/uw", "C1/v'w", "C1/v'u"}) {
    const auto* fe = t.surface.find_fundamental(name);
    ASSERT_NE(fe, nullptr) << name;
    EXPECT_TRUE(std::binary_search(serious.begin(), serious.end(), edge_of(fe->dart))) << name;
  }
}

TEST(Stats, DiscrepancyIsIncidenceCycleRank) {
  for (const auto& entry : std::filesystem::directory_iterator(source_path("data/corpus"))) {
    auto g = load_formula(entry.path().string());
    for (const auto& h : {g, connectify(g)}) {
      if (!is_connected(h)) continue;
      auto s = stats(build(h, library()));
      auto m = static_cast<std::int64_t>(h.m());
      EXPECT_EQ(s.topo.genus - s.predicted_genus, 2 * m - h.n + 1) << entry.path();
    }
  }
}
