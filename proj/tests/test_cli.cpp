#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "cli_runner.hpp"
#include "support.hpp"
#include "trispin/rot_format.hpp"

using namespace testing_support;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  auto d = fs::temp_directory_path() / ("trispin_cli_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

std::string gadgets_flag() { return "--gadgets \"" + source_path("gadgets") + "\""; }

}  // namespace

TEST(Cli, ReduceThenCount) {
  auto out = scratch_dir() / "one.rot";
  auto r = run_cli("reduce -i \"" + source_path("data/corpus/one_clause.pnae") + "\" -o \"" + out.string() + "\" " + gadgets_flag());
  ASSERT_EQ(r.status, 0);
  auto c = run_cli("count-spins \"" + out.string() + "\"");
  EXPECT_EQ(c.status, 0);
  EXPECT_EQ(c.out, "12\n");
  auto s = run_cli("stats \"" + out.string() + "\"");
  EXPECT_NE(s.out.find("genus: 40\n"), std::string::npos);
  EXPECT_NE(s.out.find("holes: 0\n"), std::string::npos);
  fs::remove(out);
}

TEST(Cli, CountNaeAndVerify) {
  EXPECT_EQ(run_cli("count-nae \"" + source_path("data/corpus/chain.pnae") + "\"").out, "18\n");
  auto v = run_cli("verify \"" + source_path("data/corpus/all_same.pnae") + "\" " + gadgets_flag());
  EXPECT_EQ(v.status, 0);
  EXPECT_NE(v.out.find("result: PASS"), std::string::npos);
}

TEST(Cli, NaiveMatchesPropagation) {
  auto k7 = source_path("data/k7_torus.rot");
  EXPECT_EQ(run_cli("count-spins --naive \"" + k7 + "\"").out, run_cli("count-spins \"" + k7 + "\"").out);
}

TEST(Cli, InvalidInputExitsOne) {
  auto bad = scratch_dir() / "bad.pnae";
  std::ofstream(bad) << "p pnae3 3 1\n1 2\n";
  EXPECT_EQ(run_cli("count-nae \"" + bad.string() + "\"").status, 1);
  EXPECT_EQ(run_cli("count-spins /nonexistent.rot").status, 1);
  EXPECT_EQ(run_cli("no-such-command").status, 1);
  fs::remove(bad);
}

TEST(Cli, CorruptedGadgetExitsTwo) {
  auto dir = scratch_dir() / "gadgets";
  fs::create_directories(dir);
  for (const auto& e : fs::directory_iterator(source_path("gadgets"))) fs::copy_file(e.path(), dir / e.path().filename(), fs::copy_options::overwrite_existing);
  EXPECT_EQ(run_cli("validate-gadgets \"" + dir.string() + "\"").status, 0);
  // Drop one interior face of the choice gadget by turning it into an extra hole.
  auto text = trispin::read_text_file((dir / "choice.rot").string());
  auto rs = trispin::parse_rot(text);
  trispin::FaceTable table(rs);
  for (const auto& face : table.faces()) {
    if (face.is_hole) continue;
    auto raw = rs.to_raw();
    raw.holes.push_back({"extra", trispin::HoleRole::none, face.darts.front()});
    std::ofstream(dir / "choice.rot") << trispin::serialize_rot(trispin::RotationSystem::validate(raw));
    break;
  }
  EXPECT_EQ(run_cli("validate-gadgets \"" + dir.string() + "\"").status, 2);
  fs::remove_all(dir);
}

TEST(Cli, EnergyOfAllPlus) {
  auto spins = scratch_dir() / "plus.spins";
  {
    std::ofstream out(spins);
    for (int v = 0; v < 7; ++v) out << "v" << v << " +1\n";
  }
  EXPECT_EQ(run_cli("energy \"" + source_path("data/k7_torus.rot") + "\" \"" + spins.string() + "\"").out, "21\n");
  fs::remove(spins);
}
