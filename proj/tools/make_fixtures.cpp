// Regenerates the gadget fixtures under gadgets/ from their face lists and
// freezes the assembled block-replicator.

#include <filesystem>
#include <iostream>
#include <string>

#include "trispin/assembler.hpp"
#include "trispin/gadget.hpp"
#include "trispin/rot_format.hpp"

using trispin::HoleRole;
using trispin::TriangulationBuilder;

namespace {

TriangulationBuilder choice() {
  TriangulationBuilder b("choice");
  b.hole("X", HoleRole::variable, "u", "v", "w");
  for (auto [x, y, z] : {std::array<const char*, 3>{"u", "p1", "v"}, {"p1", "w", "p4"}, {"p1", "p4", "p7"}, {"p5", "p4", "v"},
                         {"w", "v", "p4"}, {"v", "p7", "p6"}, {"v", "p6", "p5"}, {"p4", "p5", "u"}, {"p4", "u", "p6"},
                         {"p5", "p6", "p1"}, {"p5", "p1", "u"}, {"p6", "u", "w"}, {"p6", "w", "p1"}, {"p4", "p6", "p7"},
                         {"v", "p1", "p7"}})
    b.face(x, y, z);
  b.fundamental("uw", "u", "w");
  return b;
}

// Stored with reversed orientation relative to the search output so that the
// literal cycles meet the replicator outgoing cycles without creating loops.
TriangulationBuilder clause() {
  TriangulationBuilder b("clause");
  b.hole("L1", HoleRole::literal, "v", "w", "u");
  b.hole("L2", HoleRole::literal, "v'", "u'", "w");
  b.hole("L3", HoleRole::literal, "u", "w'", "v'");
  for (auto [x, y, z] : {std::array<const char*, 3>{"p8", "p4", "w'"}, {"p4", "w", "v'"}, {"p1", "u", "p4"}, {"u'", "p1", "p10"},
                         {"p4", "v'", "p1"}, {"u", "v", "p11"}, {"v", "w'", "u'"}, {"u'", "w", "p1"}, {"u", "p1", "w"},
                         {"p4", "v", "w"}, {"w'", "v'", "p9"}, {"w'", "p4", "u"}, {"v'", "v", "p1"}, {"w'", "v", "p8"},
                         {"v'", "u'", "p9"}, {"u'", "w'", "p9"}, {"p1", "v", "p10"}, {"v", "u'", "p10"}, {"v", "p4", "p8"},
                         {"v", "v'", "p11"}, {"v'", "u", "p11"}})
    b.face(z, y, x);
  b.fundamental("uw", "u", "w");
  b.fundamental("v'w", "v'", "w");
  b.fundamental("v'u", "v'", "u");
  return b;
}

TriangulationBuilder core() {
  TriangulationBuilder b("block_replicator_core");
  b.hole("I", HoleRole::incoming, "u", "w", "v");
  b.hole("O1", HoleRole::outgoing, "u'", "w'", "v'");
  b.hole("O2", HoleRole::outgoing, "t", "x", "y");
  b.hole("hat", HoleRole::none, "u", "u'", "x");
  b.hole("bar", HoleRole::none, "y", "x", "w");
  b.hole("tilde", HoleRole::none, "w'", "v", "z");
  for (auto [x, y, z] : {std::array<const char*, 3>{"w", "u'", "v'"}, {"y", "p7", "t"}, {"t", "v'", "u"}, {"w'", "u'", "v"},
                         {"x", "t", "u"}, {"z", "u", "w'"}, {"u", "v", "u'"}, {"u", "z", "w"}, {"v'", "w'", "u"},
                         {"w", "v'", "v"}, {"p7", "y", "z"}, {"w", "z", "y"}, {"v'", "t", "v"}, {"x", "u'", "w"},
                         {"z", "v", "p7"}, {"p7", "v", "t"}})
    b.face(x, y, z);
  b.fundamental("vw", "v", "w");
  b.fundamental("v'u'", "v'", "u'");
  b.fundamental("xy", "x", "y");
  b.fundamental("u'x", "u'", "x");
  b.fundamental("zw'", "z", "w'");
  return b;
}

TriangulationBuilder cap() {
  TriangulationBuilder b("cap");
  b.hole("outer", HoleRole::outer, "a", "b", "c");
  b.face("a", "c", "d").face("a", "d", "b").face("b", "d", "c");
  b.fundamental("ab", "a", "b");
  return b;
}

}  // namespace

int main(int argc, char** argv) {
  namespace fs = std::filesystem;
  fs::path dir = argc > 1 ? argv[1] : "gadgets";
  try {
    auto ch = choice().build();
    auto cl = clause().build();
    auto co = core().build();
    auto ca = cap().build();
    trispin::save_rot(ch, (dir / "choice.rot").string());
    trispin::save_rot(cl, (dir / "clause.rot").string());
    trispin::save_rot(co, (dir / "block_replicator_core.rot").string());
    trispin::save_rot(ca, (dir / "cap.rot").string());
    auto block = trispin::assemble_block_replicator(co, trispin::make_gadget(ch, trispin::GadgetKind::choice));
    trispin::save_rot(block.surface, (dir / "block_replicator.rot").string());
    for (const auto& line : block.log) std::cout << line << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
