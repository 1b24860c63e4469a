#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "colosynth/distance_field.hpp"
#include "colosynth/errors.hpp"

using namespace colosynth;

namespace {

// O(n^2) oracle: nearest in-volume background voxel or the padding shell
// (which, for interior queries, is nearest at the face-aligned voxel).
double brute_force_dfb(const VoxelMask& m, int x, int y, int z) {
  if (m.data[size_t(m.linear(x, y, z))] == 0) return 0.0;
  double best_sq = std::numeric_limits<double>::infinity();
  for (int bz = 0; bz < m.nz; ++bz)
    for (int by = 0; by < m.ny; ++by)
      for (int bx = 0; bx < m.nx; ++bx) {
        if (m.data[size_t(m.linear(bx, by, bz))] != 0) continue;
        double dx = (x - bx) * m.sx, dy = (y - by) * m.sy, dz = (z - bz) * m.sz;
        best_sq = std::min(best_sq, dx * dx + dy * dy + dz * dz);
      }
  double best = std::sqrt(best_sq);
  best = std::min(best, (x + 1) * m.sx);
  best = std::min(best, (m.nx - x) * m.sx);
  best = std::min(best, (y + 1) * m.sy);
  best = std::min(best, (m.ny - y) * m.sy);
  best = std::min(best, (z + 1) * m.sz);
  best = std::min(best, (m.nz - z) * m.sz);
  return best;
}

VoxelMask random_mask(std::mt19937_64& rng, int max_dim, double p) {
  VoxelMask m;
  m.nx = 2 + int(rng() % uint64_t(max_dim - 1));
  m.ny = 2 + int(rng() % uint64_t(max_dim - 1));
  m.nz = 2 + int(rng() % uint64_t(max_dim - 1));
  m.sx = 0.3 + double(rng() % 1000) / 500.0;
  m.sy = 0.3 + double(rng() % 1000) / 500.0;
  m.sz = 0.3 + double(rng() % 1000) / 500.0;
  m.data.resize(size_t(m.voxel_count()));
  for (auto& b : m.data) b = (double(rng() % 1000) / 1000.0 < p) ? 1 : 0;
  return m;
}

}  // namespace

TEST_CASE("3x3x3 all-foreground distances follow the padding convention") {
  VoxelMask m;
  m.nx = m.ny = m.nz = 3;
  m.data.assign(27, 1);
  DistanceField df = compute_edt(m);
  CHECK(df.at(1, 1, 1) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(df.at(0, 1, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(df.at(1, 0, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(df.at(1, 1, 2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(df.max_dfb == doctest::Approx(2.0));
}

TEST_CASE("background voxels have zero distance") {
  VoxelMask m;
  m.nx = m.ny = m.nz = 4;
  m.data.assign(64, 1);
  m.data[size_t(m.linear(2, 1, 3))] = 0;
  DistanceField df = compute_edt(m);
  CHECK(df.at(2, 1, 3) == 0.0);
}

TEST_CASE("random 8x8x8 anisotropic mask matches the brute-force oracle") {
  std::mt19937_64 rng(42);
  VoxelMask m;
  m.nx = m.ny = m.nz = 8;
  m.sx = m.sy = 0.7;
  m.sz = 1.25;
  m.data.resize(512);
  bool any = false;
  for (auto& b : m.data) {
    b = uint8_t(rng() % 2);
    any |= b != 0;
  }
  REQUIRE(any);
  DistanceField df = compute_edt(m);
  for (int z = 0; z < 8; ++z)
    for (int y = 0; y < 8; ++y)
      for (int x = 0; x < 8; ++x)
        CHECK(std::abs(df.at(x, y, z) - brute_force_dfb(m, x, y, z)) < 1e-9);
}

TEST_CASE("exactness property over random masks and spacings") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    VoxelMask m = random_mask(rng, 10, 0.15 + 0.7 * double(trial) / 25.0);
    if (m.foreground_count() == 0) continue;
    DistanceField df = compute_edt(m);
    for (int z = 0; z < m.nz; ++z)
      for (int y = 0; y < m.ny; ++y)
        for (int x = 0; x < m.nx; ++x) {
          REQUIRE(std::abs(df.at(x, y, z) - brute_force_dfb(m, x, y, z)) < 1e-9);
        }
  }
}

TEST_CASE("adding a background voxel never increases any distance") {
  std::mt19937_64 rng(17);
  VoxelMask m = random_mask(rng, 8, 0.9);
  REQUIRE(m.foreground_count() > 1);
  DistanceField before = compute_edt(m);
  int64_t flip = -1;
  for (int64_t i = 0; i < m.voxel_count(); ++i)
    if (m.data[size_t(i)] != 0) {
      flip = i;
      break;
    }
  m.data[size_t(flip)] = 0;
  if (m.foreground_count() == 0) return;
  DistanceField after = compute_edt(m);
  for (size_t i = 0; i < before.dfb.size(); ++i) CHECK(after.dfb[i] <= before.dfb[i] + 1e-12);
}

TEST_CASE("1-Lipschitz in world distance") {
  std::mt19937_64 rng(31);
  VoxelMask m = random_mask(rng, 7, 0.6);
  if (m.foreground_count() == 0) return;
  DistanceField df = compute_edt(m);
  for (int z = 0; z < m.nz; ++z)
    for (int y = 0; y < m.ny; ++y)
      for (int x = 0; x < m.nx; ++x)
        for (int dz = -1; dz <= 1; ++dz)
          for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
              int nx = x + dx, ny = y + dy, nz = z + dz;
              if (!m.in_bounds(nx, ny, nz)) continue;
              double step = std::sqrt(dx * dx * m.sx * m.sx + dy * dy * m.sy * m.sy +
                                      dz * dz * m.sz * m.sz);
              CHECK(std::abs(df.at(x, y, z) - df.at(nx, ny, nz)) <= step + 1e-9);
            }
}

TEST_CASE("anisotropic rod takes its distance from the smaller lateral spacing") {
  VoxelMask m;
  m.nx = 5;
  m.ny = 5;
  m.nz = 9;
  m.sx = 0.8;
  m.sy = 1.1;
  m.sz = 2.0;
  m.data.assign(size_t(m.voxel_count()), 0);
  for (int z = 0; z < m.nz; ++z) m.data[size_t(m.linear(2, 2, z))] = 1;
  DistanceField df = compute_edt(m);
  for (int z = 0; z < m.nz; ++z) CHECK(df.at(2, 2, z) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("empty mask raises EmptyMask") {
  VoxelMask m;
  m.nx = m.ny = m.nz = 3;
  m.data.assign(27, 0);
  CHECK_THROWS_WITH_AS(compute_edt(m), doctest::Contains("EmptyMask"), Error);
}
