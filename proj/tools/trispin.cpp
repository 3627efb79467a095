// Command-line front end: reduce, count-spins, count-nae, verify, stats,
// validate-gadgets, dual, energy.
//
// Exit codes: 0 success, 1 invalid input, 2 gadget-contract violation,
// 3 verification mismatch.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "trispin/reduction.hpp"

#ifndef TRISPIN_GADGET_DIR
#define TRISPIN_GADGET_DIR "gadgets"
#endif

namespace {

using namespace trispin;

constexpr int kOk = 0;
constexpr int kInvalidInput = 1;
constexpr int kContract = 2;
constexpr int kMismatch = 3;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ContractViolation:
    case ErrorCode::TopologyMismatch:
    case ErrorCode::MissingFundamentalEdge:
    case ErrorCode::BadBoundaryRole:
      return kContract;
    default:
      return kInvalidInput;
  }
}

std::filesystem::path gadget_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (std::filesystem::exists("gadgets/choice.rot")) return "gadgets";
  return TRISPIN_GADGET_DIR;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
  out << text;
}

struct GadgetCheck {
  const char* file;
  GadgetKind kind;
};

int validate_gadgets(const std::filesystem::path& dir) {
  const GadgetCheck checks[] = {{"choice.rot", GadgetKind::choice},
                                {"block_replicator_core.rot", GadgetKind::block_replicator_core},
                                {"block_replicator.rot", GadgetKind::block_replicator},
                                {"cap.rot", GadgetKind::cap},
                                {"clause.rot", GadgetKind::clause}};
  int status = kOk;
  for (const auto& c : checks) {
    auto path = dir / c.file;
    if (!std::filesystem::exists(path)) {
      std::cerr << "error: missing fixture " << path.string() << '\n';
      status = std::max(status, kInvalidInput);
      continue;
    }
    try {
      auto g = load_gadget(path.string(), c.kind);
      auto report = verify_contract(g);
      std::cout << c.file << ": " << to_string(c.kind) << " V=" << g.topo.vertices << " E=" << g.topo.edges << " F=" << g.topo.faces
                << " holes=" << g.topo.holes << " genus=" << g.topo.genus << '\n';
      for (const auto& line : report.checks) std::cout << "  " << line << '\n';
      std::cout << "  " << (report.passed ? "PASS" : "FAIL") << '\n';
      if (!report.passed) {
        std::cerr << "error: ContractViolation: " << c.file << ": " << report.first_failure << '\n';
        status = kContract;
      }
    } catch (const Error& e) {
      std::cerr << "error: " << c.file << ": " << e.what() << '\n';
      status = kContract;
    }
  }
  if (status == kOk) {
    // The frozen block-replicator must be what the assembler produces.
    auto core = load_rot((dir / "block_replicator_core.rot").string());
    auto choice = load_gadget((dir / "choice.rot").string(), GadgetKind::choice);
    auto fresh = serialize_rot(assemble_block_replicator(core, choice).surface);
    bool same = fresh == read_text_file((dir / "block_replicator.rot").string());
    std::cout << "block_replicator.rot reassembles identically: " << (same ? "yes" : "no") << '\n';
    if (!same) {
      std::cerr << "error: ContractViolation: block_replicator.rot differs from the assembled core\n";
      status = kContract;
    }
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Positive NAE-3SAT to surface triangulations, with an exact satisfying spin-assignment counter"};
  app.require_subcommand(1);

  std::string input, output, gadgets, log_path, spins;
  unsigned threads = 1;
  bool naive = false;

  auto* reduce = app.add_subcommand("reduce", "compile a .pnae formula to a closed triangulation (.rot)");
  reduce->add_option("-i,--input,input", input, "formula file")->required();
  reduce->add_option("-o,--output", output, "output .rot (default stdout)");
  reduce->add_option("--gadgets", gadgets, "fixture directory");
  reduce->add_option("--log", log_path, "write the assembly log here");

  auto* count_spins = app.add_subcommand("count-spins", "count satisfying spin-assignments of a .rot");
  count_spins->add_option("input", input, ".rot file")->required();
  count_spins->add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 256u));
  count_spins->add_flag("--naive", naive, "exhaustive 2^V enumeration (V <= 24)");

  auto* count_nae = app.add_subcommand("count-nae", "count NAE witnesses of a .pnae formula by brute force");
  count_nae->add_option("input", input, "formula file")->required();

  auto* verify_cmd = app.add_subcommand("verify", "check the counting identities for a formula");
  verify_cmd->add_option("input", input, "formula file")->required();
  verify_cmd->add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 256u));
  verify_cmd->add_option("--gadgets", gadgets, "fixture directory");

  auto* stats_cmd = app.add_subcommand("stats", "topology report of a compiled .rot");
  stats_cmd->add_option("input", input, ".rot file")->required();

  auto* validate = app.add_subcommand("validate-gadgets", "check every fixture against its contract");
  validate->add_option("dir", gadgets, "fixture directory");

  auto* dual = app.add_subcommand("dual", "dual edge list of a closed .rot");
  dual->add_option("input", input, ".rot file")->required();

  auto* energy_cmd = app.add_subcommand("energy", "energy of a spin assignment");
  energy_cmd->add_option("input", input, ".rot file")->required();
  energy_cmd->add_option("spins", spins, "spin file (VID +1|-1 per line)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidInput;
  }

  try {
    if (*reduce) {
      auto lib = GadgetLibrary::load(gadget_dir(gadgets));
      auto t = build(load_formula(input), lib);
      write_output(output, serialize_rot(t.surface));
      if (!log_path.empty()) {
        std::string text;
        for (const auto& line : t.log) text += line + '\n';
        write_output(log_path, text);
      }
    } else if (*count_spins) {
      auto rs = load_rot(input);
      if (naive) {
        if (rs.vertex_count() > 24) throw Error(ErrorCode::TooLarge, "--naive needs at most 24 vertices, got " + std::to_string(rs.vertex_count()));
        std::cout << count_satisfying_naive(rs) << '\n';
      } else {
        std::cout << count_satisfying(rs, threads).satisfying_count << '\n';
      }
    } else if (*count_nae) {
      std::cout << count_nae_witnesses(load_formula(input)) << '\n';
    } else if (*verify_cmd) {
      auto lib = GadgetLibrary::load(gadget_dir(gadgets));
      auto r = verify(load_formula(input), lib, threads);
      std::cout << format_verify(r);
      if (!r.passed()) {
        std::cerr << "error: verification mismatch\n";
        return kMismatch;
      }
    } else if (*stats_cmd) {
      std::cout << format_stats(stats(load_rot(input)));
    } else if (*validate) {
      return validate_gadgets(gadget_dir(gadgets));
    } else if (*dual) {
      auto rs = load_rot(input);
      require_triangulation(rs);
      auto g = dual_graph(rs);
      std::cout << "dual_vertices: " << g.vertex_count << '\n'
                << "dual_edges: " << g.edges.size() << '\n'
                << "cubic: " << (g.cubic ? "yes" : "no") << '\n'
                << "bridgeless: " << (g.bridgeless() ? "yes" : "no") << '\n';
      for (std::size_t e = 0; e < g.edges.size(); ++e) std::cout << e << ' ' << g.edges[e].first << ' ' << g.edges[e].second << '\n';
    } else if (*energy_cmd) {
      auto rs = load_rot(input);
      std::cout << energy(rs, parse_spins(rs, read_text_file(spins))) << '\n';
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
  return kOk;
}
