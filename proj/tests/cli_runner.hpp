#pragma once

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace testing_support {

struct CliResult {
  int status = -1;
  std::string out;
};

// Runs the CLI through the shell; stderr is discarded.
inline CliResult run_cli(const std::string& args) {
  std::string cmd = std::string("\"") + TRISPIN_CLI + "\" " + args + " 2>/dev/null";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

}  // namespace testing_support
