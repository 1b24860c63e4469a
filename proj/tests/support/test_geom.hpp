#pragma once

// Shared helpers for the test suites: analytic meshes, mesh topology checks,
// rank correlation, scratch directories.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "colosynth/geom.hpp"
#include "colosynth/mesh.hpp"

namespace test_support {

using namespace colosynth;

// Closed cylinder of exact radius/extent, triangulated finely, inward-facing,
// with tube UVs. The analytic surface every depth oracle compares against.
inline TriMesh make_tube_mesh(double radius, double z0, double z1, int segments = 256,
                              int rings = 64) {
  TriMesh m;
  auto add_vertex = [&](const Vec3& p, const Vec3& n, double u, double v) {
    m.vertices.push_back(p);
    m.normals.push_back(n);
    m.uvs.push_back({u, v});
    return int(m.vertices.size()) - 1;
  };

  // Lateral wall: rings x segments grid, normals pointing to the axis.
  std::vector<std::vector<int>> grid(size_t(rings) + 1);
  for (int r = 0; r <= rings; ++r) {
    double z = z0 + (z1 - z0) * double(r) / rings;
    for (int s = 0; s < segments; ++s) {
      double a = 2.0 * kPi * double(s) / segments;
      Vec3 p{radius * std::cos(a), radius * std::sin(a), z};
      Vec3 n{-std::cos(a), -std::sin(a), 0.0};
      grid[size_t(r)].push_back(
          add_vertex(p, n, double(s) / segments, double(r) / rings));
    }
  }
  for (int r = 0; r < rings; ++r)
    for (int s = 0; s < segments; ++s) {
      int s2 = (s + 1) % segments;
      int a = grid[size_t(r)][size_t(s)], b = grid[size_t(r)][size_t(s2)];
      int c = grid[size_t(r) + 1][size_t(s)], d = grid[size_t(r) + 1][size_t(s2)];
      // wound so normals face inward
      m.triangles.push_back({a, c, b});
      m.triangles.push_back({b, c, d});
    }

  // End caps: triangle fans, normals facing the interior.
  for (int cap = 0; cap < 2; ++cap) {
    double z = cap == 0 ? z0 : z1;
    Vec3 n{0.0, 0.0, cap == 0 ? 1.0 : -1.0};
    int center = add_vertex({0, 0, z}, n, 0.0, cap == 0 ? 0.0 : 1.0);
    std::vector<int> rim;
    for (int s = 0; s < segments; ++s) {
      double a = 2.0 * kPi * double(s) / segments;
      rim.push_back(add_vertex({radius * std::cos(a), radius * std::sin(a), z}, n,
                               double(s) / segments, cap == 0 ? 0.0 : 1.0));
    }
    for (int s = 0; s < segments; ++s) {
      int s2 = (s + 1) % segments;
      if (cap == 0)
        m.triangles.push_back({center, rim[size_t(s)], rim[size_t(s2)]});
      else
        m.triangles.push_back({center, rim[size_t(s2)], rim[size_t(s)]});
    }
  }
  return m;
}

// Ray vs closed solid cylinder (side r, caps z0/z1), nearest positive t.
inline double analytic_cylinder_hit(const Vec3& o, const Vec3& d, double radius, double z0,
                                    double z1) {
  double best = std::numeric_limits<double>::infinity();
  double a = d.x * d.x + d.y * d.y;
  if (a > 1e-15) {
    double b = 2.0 * (o.x * d.x + o.y * d.y);
    double c = o.x * o.x + o.y * o.y - radius * radius;
    double disc = b * b - 4 * a * c;
    if (disc >= 0.0) {
      double sq = std::sqrt(disc);
      for (double t : {(-b - sq) / (2 * a), (-b + sq) / (2 * a)}) {
        if (t > 1e-9) {
          double z = o.z + t * d.z;
          if (z >= z0 - 1e-12 && z <= z1 + 1e-12) best = std::min(best, t);
        }
      }
    }
  }
  for (double zc : {z0, z1}) {
    if (std::abs(d.z) > 1e-15) {
      double t = (zc - o.z) / d.z;
      if (t > 1e-9) {
        double x = o.x + t * d.x, y = o.y + t * d.y;
        if (x * x + y * y <= radius * radius + 1e-9) best = std::min(best, t);
      }
    }
  }
  return best;
}

struct MeshChecks {
  bool watertight = false;        // every undirected edge in exactly 2 triangles
  bool oriented = false;          // every directed edge used exactly once
  int64_t euler_characteristic = 0;
  int bad_edges = 0;
};

inline MeshChecks check_mesh(const TriMesh& m) {
  MeshChecks r;
  std::map<std::pair<int, int>, int> undirected, directed;
  for (const auto& tri : m.triangles)
    for (int e = 0; e < 3; ++e) {
      int a = tri[e], b = tri[(e + 1) % 3];
      undirected[{std::min(a, b), std::max(a, b)}]++;
      directed[{a, b}]++;
    }
  r.watertight = true;
  r.oriented = true;
  for (auto& [k, c] : undirected)
    if (c != 2) {
      r.watertight = false;
      r.bad_edges++;
    }
  for (auto& [k, c] : directed)
    if (c != 1) r.oriented = false;
  r.euler_characteristic =
      int64_t(m.vertices.size()) - int64_t(undirected.size()) + int64_t(m.triangles.size());
  return r;
}

inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), size_t{0});
    std::sort(idx.begin(), idx.end(), [&](size_t i, size_t j) { return v[i] < v[j]; });
    std::vector<double> r(v.size());
    size_t i = 0;
    while (i < idx.size()) {
      size_t j = i;
      while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
      double mean_rank = 0.5 * (double(i) + double(j));
      for (size_t k = i; k <= j; ++k) r[idx[k]] = mean_rank;
      i = j + 1;
    }
    return r;
  };
  std::vector<double> ra = ranks(a), rb = ranks(b);
  double ma = 0, mb = 0;
  for (size_t i = 0; i < ra.size(); ++i) {
    ma += ra[i];
    mb += rb[i];
  }
  ma /= double(ra.size());
  mb /= double(rb.size());
  double num = 0, da = 0, db = 0;
  for (size_t i = 0; i < ra.size(); ++i) {
    num += (ra[i] - ma) * (rb[i] - mb);
    da += (ra[i] - ma) * (ra[i] - ma);
    db += (rb[i] - mb) * (rb[i] - mb);
  }
  return num / std::sqrt(da * db);
}

// Fresh scratch directory under the system temp root.
inline std::string scratch_dir(const std::string& name) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / ("colosynth_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir.string();
}

inline std::vector<uint8_t> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::vector<uint8_t>((std::istreambuf_iterator<char>(in)),
                              std::istreambuf_iterator<char>());
}

}  // namespace test_support
