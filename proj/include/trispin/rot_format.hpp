#pragma once

// Line-oriented `.rot` text format.
//
//   surface NAME
//   darts 2E
//   vertex VID: d0 d1 d2 ...
//   hole HID role=ROLE verts=a,b,c
//   fund EDGE_ID = (dart)
//
// Twins are implicit (d ^ 1). `#` starts a comment.

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "trispin/error.hpp"
#include "trispin/rotation_system.hpp"

namespace trispin {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline bool parse_int(std::string_view s, long long& out) {
  if (s.empty()) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size();
}

[[noreturn]] inline void fail_line(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

inline bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c == ' ' || c == '\t' || c == ',' || c == ':' || c == '#' || c == '=') return false;
  return true;
}

}  // namespace detail

/// Finds the dart a->b whose face successor ends at c. Used to resolve the
/// `verts=a,b,c` form of a hole line.
inline Dart find_oriented_triangle(const RotationSystem& rs, VertexId a, VertexId b, VertexId c) {
  Dart found = -1;
  for (Dart d : rs.rotation(a)) {
    if (rs.head(d) != b) continue;
    Dart s = rs.face_successor(d);
    if (rs.head(s) != c || rs.face_successor(rs.face_successor(s)) != d) continue;
    if (found != -1) throw Error(ErrorCode::AmbiguousHole, "several faces traverse " + rs.vertex_name(a) + "," + rs.vertex_name(b) + "," + rs.vertex_name(c));
    found = d;
  }
  return found;
}

inline RotationSystem parse_rot(std::string_view text) {
  using namespace detail;
  RawRotationData raw;
  bool have_surface = false, have_darts = false;
  struct PendingHole {
    std::string name;
    HoleRole role;
    std::string verts[3];
    std::size_t line;
  };
  std::vector<PendingHole> holes;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++lineno;
    if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
    line = trim(line);
    if (line.empty()) {
      if (nl == text.size()) break;
      continue;
    }
    auto sp = line.find_first_of(" \t");
    std::string_view key = line.substr(0, sp);
    std::string_view rest = sp == std::string_view::npos ? std::string_view{} : trim(line.substr(sp));

    if (key == "surface") {
      if (have_surface) fail_line(lineno, "duplicate surface line");
      if (rest.empty() || split_ws(rest).size() != 1) fail_line(lineno, "surface needs one name");
      raw.name = std::string(rest);
      have_surface = true;
    } else if (key == "darts") {
      long long n = 0;
      if (have_darts) fail_line(lineno, "duplicate darts line");
      if (!parse_int(rest, n) || n < 0) fail_line(lineno, "bad dart count");
      if (n % 2 != 0) throw Error(ErrorCode::OddDartCount, "line " + std::to_string(lineno) + ": dart count " + std::to_string(n) + " is odd");
      raw.dart_count = static_cast<std::size_t>(n);
      have_darts = true;
    } else if (key == "vertex") {
      if (!have_darts) fail_line(lineno, "vertex before darts line");
      auto colon = rest.find(':');
      if (colon == std::string_view::npos) fail_line(lineno, "vertex line needs ':'");
      auto vname = trim(rest.substr(0, colon));
      if (!valid_name(vname)) fail_line(lineno, "bad vertex name");
      std::vector<Dart> rot;
      for (auto tok : split_ws(rest.substr(colon + 1))) {
        long long d = 0;
        if (!parse_int(tok, d)) fail_line(lineno, "bad dart '" + std::string(tok) + "'");
        if (d < 0 || static_cast<std::size_t>(d) >= raw.dart_count)
          throw Error(ErrorCode::DanglingDart, "line " + std::to_string(lineno) + ": dart " + std::to_string(d) + " out of range");
        rot.push_back(static_cast<Dart>(d));
      }
      raw.vertex_names.emplace_back(vname);
      raw.rotations.push_back(std::move(rot));
    } else if (key == "hole") {
      auto toks = split_ws(rest);
      if (toks.size() != 3) fail_line(lineno, "hole needs HID role=ROLE verts=a,b,c");
      PendingHole h;
      h.name = std::string(toks[0]);
      h.line = lineno;
      if (!valid_name(h.name)) fail_line(lineno, "bad hole name");
      if (toks[1].substr(0, 5) != "role=") fail_line(lineno, "expected role=");
      auto role = parse_hole_role(toks[1].substr(5));
      if (!role) throw Error(ErrorCode::BadBoundaryRole, "line " + std::to_string(lineno) + ": unknown role '" + std::string(toks[1].substr(5)) + "'");
      h.role = *role;
      if (toks[2].substr(0, 6) != "verts=") fail_line(lineno, "expected verts=");
      auto vs = toks[2].substr(6);
      for (int k = 0; k < 3; ++k) {
        auto comma = vs.find(',');
        if ((k < 2) != (comma != std::string_view::npos)) fail_line(lineno, "verts needs exactly three names");
        h.verts[k] = std::string(k < 2 ? vs.substr(0, comma) : vs);
        if (h.verts[k].empty()) fail_line(lineno, "empty vertex in verts");
        if (k < 2) vs = vs.substr(comma + 1);
      }
      holes.push_back(std::move(h));
    } else if (key == "fund") {
      auto eq = rest.find('=');
      if (eq == std::string_view::npos) fail_line(lineno, "fund needs '='");
      auto fname = trim(rest.substr(0, eq));
      auto val = trim(rest.substr(eq + 1));
      if (!valid_name(fname)) fail_line(lineno, "bad fundamental edge name");
      if (val.size() < 3 || val.front() != '(' || val.back() != ')') fail_line(lineno, "fund dart must be parenthesised");
      long long d = 0;
      if (!parse_int(trim(val.substr(1, val.size() - 2)), d)) fail_line(lineno, "bad fund dart");
      if (d < 0 || static_cast<std::size_t>(d) >= raw.dart_count)
        throw Error(ErrorCode::DanglingDart, "line " + std::to_string(lineno) + ": fund dart out of range");
      raw.fundamental_edges.push_back({std::string(fname), static_cast<Dart>(d)});
    } else {
      fail_line(lineno, "unknown key '" + std::string(key) + "'");
    }
    if (nl == text.size()) break;
  }
  if (!have_surface) throw Error(ErrorCode::ParseError, "missing surface line");
  if (!have_darts) throw Error(ErrorCode::ParseError, "missing darts line");

  auto rs = RotationSystem::validate(std::move(raw));
  if (holes.empty()) return rs;

  RawRotationData with_holes = rs.to_raw();
  for (const auto& h : holes) {
    VertexId ids[3];
    for (int k = 0; k < 3; ++k) {
      auto v = rs.find_vertex(h.verts[k]);
      if (!v) throw Error(ErrorCode::UnknownHole, "line " + std::to_string(h.line) + ": unknown vertex " + h.verts[k]);
      ids[k] = *v;
    }
    Dart d = find_oriented_triangle(rs, ids[0], ids[1], ids[2]);
    if (d < 0) throw Error(ErrorCode::UnknownHole, "line " + std::to_string(h.line) + ": no face " + h.verts[0] + "," + h.verts[1] + "," + h.verts[2]);
    with_holes.holes.push_back({h.name, h.role, d});
  }
  return RotationSystem::validate(std::move(with_holes));
}

inline std::string serialize_rot(const RotationSystem& rs) {
  std::ostringstream out;
  out << "surface " << (rs.name().empty() ? std::string("unnamed") : rs.name()) << '\n';
  out << "darts " << rs.dart_count() << '\n';
  for (VertexId v = 0; v < static_cast<VertexId>(rs.vertex_count()); ++v) {
    out << "vertex " << rs.vertex_name(v) << ':';
    for (Dart d : rs.rotation(v)) out << ' ' << d;
    out << '\n';
  }
  for (const auto& h : rs.holes()) {
    Dart d = h.dart;
    Dart s = rs.face_successor(d);
    out << "hole " << h.name << " role=" << to_string(h.role) << " verts=" << rs.vertex_name(rs.origin(d)) << ','
        << rs.vertex_name(rs.head(d)) << ',' << rs.vertex_name(rs.head(s)) << '\n';
  }
  for (const auto& f : rs.fundamental_edges()) out << "fund " << f.name << " = (" << f.dart << ")\n";
  return out.str();
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline RotationSystem load_rot(const std::string& path) { return parse_rot(read_text_file(path)); }

inline void save_rot(const RotationSystem& rs, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
  out << serialize_rot(rs);
}

/// Renumbers darts by walking vertices in order and rotations from their
/// stored start, so isomorphic inputs with the same vertex order and rotation
/// starts serialize identically.
inline RotationSystem canonicalize(const RotationSystem& rs) {
  std::vector<Dart> relabel(rs.dart_count(), -1);
  Dart next = 0;
  for (VertexId v = 0; v < static_cast<VertexId>(rs.vertex_count()); ++v) {
    for (Dart d : rs.rotation(v)) {
      if (relabel[static_cast<std::size_t>(d)] != -1) continue;
      relabel[static_cast<std::size_t>(d)] = next;
      relabel[static_cast<std::size_t>(twin(d))] = next + 1;
      next += 2;
    }
  }
  RawRotationData raw = rs.to_raw();
  for (auto& rot : raw.rotations)
    for (auto& d : rot) d = relabel[static_cast<std::size_t>(d)];
  for (auto& h : raw.holes) h.dart = relabel[static_cast<std::size_t>(h.dart)];
  for (auto& f : raw.fundamental_edges) f.dart = relabel[static_cast<std::size_t>(f.dart)];
  return RotationSystem::validate(std::move(raw));
}

}  // namespace trispin
