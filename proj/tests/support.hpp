#pragma once

#include <algorithm>
#include <array>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "trispin/rot_format.hpp"

#ifndef TRISPIN_SOURCE_DIR
#define TRISPIN_SOURCE_DIR "."
#endif

namespace testing_support {

using trispin::RotationSystem;
using trispin::TriangulationBuilder;
using Face = std::array<int, 3>;

inline std::string source_path(const std::string& rel) { return std::string(TRISPIN_SOURCE_DIR) + "/" + rel; }

inline RotationSystem from_faces(const std::string& name, const std::vector<Face>& faces, const std::set<std::size_t>& holes = {}) {
  TriangulationBuilder b(name);
  auto n = [](int v) { return "v" + std::to_string(v); };
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const auto& f = faces[i];
    if (holes.count(i)) b.hole("h" + std::to_string(i), trispin::HoleRole::none, n(f[0]), n(f[1]), n(f[2]));
    else b.face(n(f[0]), n(f[1]), n(f[2]));
  }
  return b.build();
}

inline std::vector<Face> tetrahedron_faces() { return {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}}; }

inline RotationSystem tetrahedron() { return from_faces("tetrahedron", tetrahedron_faces()); }

// Antipodal pairs (0,5), (1,3), (2,4).
inline std::vector<Face> octahedron_faces() {
  return {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1}, {5, 2, 1}, {5, 3, 2}, {5, 4, 3}, {5, 1, 4}};
}

inline RotationSystem octahedron() { return from_faces("octahedron", octahedron_faces()); }

inline std::vector<Face> k7_torus_faces() {
  std::vector<Face> f;
  for (int i = 0; i < 7; ++i) {
    f.push_back({i, (i + 1) % 7, (i + 3) % 7});
    f.push_back({i, (i + 3) % 7, (i + 2) % 7});
  }
  return f;
}

/// Random simple triangulation: start from the tetrahedron or the K7 torus,
/// split random faces up to `max_vertices`, then apply random edge flips.
inline std::vector<Face> random_triangulation(std::mt19937_64& rng, int max_vertices) {
  std::vector<Face> faces = rng() % 2 ? tetrahedron_faces() : k7_torus_faces();
  int n = faces.size() == 4 ? 4 : 7;
  int target = 4 + static_cast<int>(rng() % static_cast<unsigned>(max_vertices - 3));
  target = std::max(target, n);
  while (n < target) {
    auto i = rng() % faces.size();
    auto [a, b, c] = faces[i];
    faces[i] = {a, b, n};
    faces.push_back({b, c, n});
    faces.push_back({c, a, n});
    ++n;
  }
  auto has_edge = [&](int x, int y) {
    for (const auto& f : faces)
      for (int k = 0; k < 3; ++k)
        if ((f[k] == x && f[(k + 1) % 3] == y) || (f[k] == y && f[(k + 1) % 3] == x)) return true;
    return false;
  };
  auto degree = [&](int v) {
    int d = 0;
    for (const auto& f : faces) d += std::count(f.begin(), f.end(), v);
    return d;
  };
  for (int step = 0; step < 3 * n; ++step) {
    auto i = rng() % faces.size();
    int k = static_cast<int>(rng() % 3);
    int a = faces[i][k], b = faces[i][(k + 1) % 3], c = faces[i][(k + 2) % 3];
    for (std::size_t j = 0; j < faces.size(); ++j) {
      const auto& g = faces[j];
      for (int r = 0; r < 3; ++r) {
        if (g[r] != b || g[(r + 1) % 3] != a) continue;
        int d = g[(r + 2) % 3];
        if (c == d || has_edge(c, d) || degree(a) <= 3 || degree(b) <= 3) continue;
        faces[i] = {a, d, c};
        faces[j] = {b, c, d};
        goto next;
      }
    }
  next:;
  }
  return faces;
}

}  // namespace testing_support
