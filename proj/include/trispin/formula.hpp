#pragma once

// Positive NAE-3SAT formulas: parsing, brute-force witness counting,
// connectedness, the connectify transformation and replication plans.

#include <array>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "trispin/error.hpp"
#include "trispin/rot_format.hpp"

namespace trispin {

struct PnaeFormula {
  int n = 0;
  std::vector<std::array<int, 3>> clauses;  // 1-based variables

  std::size_t m() const { return clauses.size(); }
};

inline void check_formula(const PnaeFormula& f) {
  if (f.n <= 0) throw Error(ErrorCode::BadHeader, "variable count must be positive");
  if (f.clauses.empty()) throw Error(ErrorCode::EmptyFormula, "formula has no clauses");
  std::vector<bool> used(static_cast<std::size_t>(f.n) + 1, false);
  for (std::size_t j = 0; j < f.clauses.size(); ++j)
    for (int x : f.clauses[j]) {
      if (x < 1 || x > f.n)
        throw Error(ErrorCode::VariableOutOfRange, "clause " + std::to_string(j + 1) + " uses variable " + std::to_string(x));
      used[static_cast<std::size_t>(x)] = true;
    }
  for (int i = 1; i <= f.n; ++i)
    if (!used[static_cast<std::size_t>(i)]) throw Error(ErrorCode::UnusedVariable, "variable " + std::to_string(i) + " occurs in no clause");
}

/// `p pnae3 n m` then m lines of three positive integers. Blank lines and
/// lines starting with `c` or `#` are ignored.
inline PnaeFormula parse_formula(std::string_view text) {
  PnaeFormula f;
  bool header = false;
  long long declared = 0;
  std::size_t lineno = 0, pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = detail::trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++lineno;
    if (line.empty() || line.front() == 'c' || line.front() == '#') continue;
    auto toks = detail::split_ws(line);
    auto where = "line " + std::to_string(lineno) + ": ";
    if (!header) {
      long long n = 0;
      if (toks.size() != 4 || toks[0] != "p" || toks[1] != "pnae3" || !detail::parse_int(toks[2], n) || !detail::parse_int(toks[3], declared) ||
          n <= 0 || declared < 0 || n > 1'000'000)
        throw Error(ErrorCode::BadHeader, where + "expected 'p pnae3 n m'");
      f.n = static_cast<int>(n);
      header = true;
      continue;
    }
    if (toks.size() != 3) throw Error(ErrorCode::WrongArity, where + "clause has " + std::to_string(toks.size()) + " literals");
    std::array<int, 3> c{};
    for (int k = 0; k < 3; ++k) {
      long long x = 0;
      if (!detail::parse_int(toks[static_cast<std::size_t>(k)], x)) throw Error(ErrorCode::ParseError, where + "bad literal");
      if (x < 1 || x > f.n) throw Error(ErrorCode::VariableOutOfRange, where + "variable " + std::to_string(x) + " outside 1.." + std::to_string(f.n));
      c[static_cast<std::size_t>(k)] = static_cast<int>(x);
    }
    f.clauses.push_back(c);
  }
  if (!header) throw Error(ErrorCode::BadHeader, "missing 'p pnae3 n m' header");
  if (static_cast<long long>(f.clauses.size()) != declared)
    throw Error(ErrorCode::BadHeader, "header declares " + std::to_string(declared) + " clauses, found " + std::to_string(f.clauses.size()));
  check_formula(f);
  return f;
}

inline std::string format_formula(const PnaeFormula& f) {
  std::ostringstream out;
  out << "p pnae3 " << f.n << ' ' << f.m() << '\n';
  for (const auto& c : f.clauses) out << c[0] << ' ' << c[1] << ' ' << c[2] << '\n';
  return out.str();
}

inline PnaeFormula load_formula(const std::string& path) { return parse_formula(read_text_file(path)); }

/// Assignments where no clause sees three equal values.
inline std::uint64_t count_nae_witnesses(const PnaeFormula& f) {
  if (f.n > 30) throw Error(ErrorCode::TooLarge, "witness oracle limited to 30 variables");
  std::vector<std::uint32_t> masks;
  for (const auto& c : f.clauses) masks.push_back((1u << (c[0] - 1)) | (1u << (c[1] - 1)) | (1u << (c[2] - 1)));
  std::uint64_t count = 0;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << f.n); ++a) {
    auto bits = static_cast<std::uint32_t>(a);
    bool ok = true;
    for (auto m : masks) {
      auto on = bits & m;
      if (on == 0 || on == m) {
        ok = false;
        break;
      }
    }
    count += ok;
  }
  return count;
}

/// Connected components of the clause-variable incidence graph, as a label
/// per variable (index 0 unused).
inline std::vector<int> variable_components(const PnaeFormula& f, int* count = nullptr) {
  std::vector<int> parent(static_cast<std::size_t>(f.n) + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (const auto& c : f.clauses)
    for (int k = 1; k < 3; ++k) {
      int a = find(c[0]), b = find(c[static_cast<std::size_t>(k)]);
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  std::vector<int> label(static_cast<std::size_t>(f.n) + 1, -1), out(static_cast<std::size_t>(f.n) + 1, -1);
  int next = 0;
  for (int i = 1; i <= f.n; ++i) {
    int r = find(i);
    if (label[static_cast<std::size_t>(r)] == -1) label[static_cast<std::size_t>(r)] = next++;
    out[static_cast<std::size_t>(i)] = label[static_cast<std::size_t>(r)];
  }
  if (count) *count = next;
  return out;
}

inline bool is_connected(const PnaeFormula& f) {
  int c = 0;
  variable_components(f, &c);
  return c == 1;
}

/// Adds y = n+1, z = n+2 and the clauses (i, y, z) for every i.
inline PnaeFormula connectify(const PnaeFormula& f) {
  PnaeFormula g = f;
  g.n = f.n + 2;
  for (int i = 1; i <= f.n; ++i) g.clauses.push_back({i, f.n + 1, f.n + 2});
  return g;
}

struct Occurrence {
  int clause = 0;    // 1-based
  int position = 0;  // 1..3
};

struct VariablePlan {
  int variable = 0;
  std::int64_t t = 0;
  int k = 0;
  std::int64_t caps = 0;
  std::vector<Occurrence> occurrences;  // ordered by (clause, position)
};

struct ReductionPlan {
  std::vector<VariablePlan> variables;  // index i-1 for variable i

  std::int64_t total_blocks() const {
    std::int64_t s = 0;
    for (const auto& v : variables) s += (std::int64_t{1} << v.k) - 1;
    return s;
  }
  std::int64_t total_caps() const {
    std::int64_t s = 0;
    for (const auto& v : variables) s += v.caps;
    return s;
  }
};

/// Smallest even k >= 2 with 2^k >= t.
inline int replication_depth(std::int64_t t) {
  int k = 2;
  while ((std::int64_t{1} << k) < t) k += 2;
  return k;
}

inline ReductionPlan replication_plan(const PnaeFormula& f) {
  check_formula(f);
  ReductionPlan p;
  p.variables.resize(static_cast<std::size_t>(f.n));
  for (int i = 1; i <= f.n; ++i) p.variables[static_cast<std::size_t>(i - 1)].variable = i;
  for (std::size_t j = 0; j < f.clauses.size(); ++j)
    for (int pos = 0; pos < 3; ++pos)
      p.variables[static_cast<std::size_t>(f.clauses[j][static_cast<std::size_t>(pos)] - 1)].occurrences.push_back(
          {static_cast<int>(j + 1), pos + 1});
  for (auto& v : p.variables) {
    v.t = static_cast<std::int64_t>(v.occurrences.size());
    v.k = replication_depth(v.t);
    v.caps = (std::int64_t{1} << v.k) - v.t;
  }
  return p;
}

}  // namespace trispin
