#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>

#include "colosynth/errors.hpp"
#include "colosynth/trajectory.hpp"
#include "colosynth/volume.hpp"
#include "test_geom.hpp"

using namespace colosynth;
using test_support::scratch_dir;

namespace {

void write_raw(const std::string& path, const std::vector<uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
}

void write_header(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  out << body;
}

}  // namespace

TEST_CASE("load_mask reads a 2x2x2 all-foreground volume") {
  std::string dir = scratch_dir("vol_basic");
  write_header(dir + "/m.mhdr", "dims = 2 2 2\nspacing = 1 1 1\ndata = m.raw\n");
  write_raw(dir + "/m.raw", std::vector<uint8_t>(8, 1));
  VoxelMask m = load_mask(dir + "/m.mhdr");
  CHECK(m.nx == 2);
  CHECK(m.foreground_count() == 8);
}

TEST_CASE("load_mask rejects payload size mismatches") {
  std::string dir = scratch_dir("vol_size");
  write_header(dir + "/m.mhdr", "dims = 4 4 4\nspacing = 1 1 1\ndata = m.raw\n");
  write_raw(dir + "/m.raw", std::vector<uint8_t>(60, 1));
  CHECK_THROWS_WITH_AS(load_mask(dir + "/m.mhdr"), doctest::Contains("SizeMismatch"), Error);
}

TEST_CASE("foreground count equals nonzero payload bytes") {
  std::string dir = scratch_dir("vol_count");
  std::mt19937_64 rng(7);
  std::vector<uint8_t> payload(5 * 6 * 7);
  int64_t expected = 0;  // independent count while writing the bytes
  for (auto& b : payload) {
    b = uint8_t(rng() % 2);
    expected += b != 0;
  }
  write_header(dir + "/m.mhdr", "dims = 5 6 7\nspacing = 0.7 0.7 1.25\ndata = m.raw\n");
  write_raw(dir + "/m.raw", payload);
  VoxelMask m = load_mask(dir + "/m.mhdr");
  CHECK(m.sx == doctest::Approx(0.7));
  CHECK(m.sz == doctest::Approx(1.25));
  CHECK(m.foreground_count() == expected);
}

TEST_CASE("label values above 1 count as foreground") {
  std::string dir = scratch_dir("vol_labels");
  write_header(dir + "/m.mhdr", "dims = 3 1 1\nspacing = 1 1 1\ndata = m.raw\n");
  write_raw(dir + "/m.raw", {0, 2, 255});
  VoxelMask m = load_mask(dir + "/m.mhdr");
  CHECK(m.foreground_count() == 2);
}

TEST_CASE("mask save/load round-trips bit-exactly") {
  std::string dir = scratch_dir("vol_roundtrip");
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 10; ++trial) {
    VoxelMask m;
    m.nx = 1 + int(rng() % 6);
    m.ny = 1 + int(rng() % 6);
    m.nz = 1 + int(rng() % 6);
    m.sx = 0.25 + double(rng() % 100) / 40.0;
    m.sy = 0.25 + double(rng() % 100) / 40.0;
    m.sz = 0.25 + double(rng() % 100) / 40.0;
    m.data.resize(size_t(m.voxel_count()));
    for (auto& b : m.data) b = uint8_t(rng() % 2);
    std::string path = dir + "/t" + std::to_string(trial) + ".mhdr";
    save_mask(m, path);
    VoxelMask r = load_mask(path);
    CHECK(r.nx == m.nx);
    CHECK(r.ny == m.ny);
    CHECK(r.nz == m.nz);
    CHECK(r.sx == m.sx);
    CHECK(r.sy == m.sy);
    CHECK(r.sz == m.sz);
    CHECK(r.data == m.data);
    CHECK(r.foreground_count() == m.foreground_count());
  }
}

TEST_CASE("NRRD uint8 volumes load") {
  std::string dir = scratch_dir("vol_nrrd");
  {
    std::ofstream out(dir + "/m.nrrd", std::ios::binary);
    out << "NRRD0004\n";
    out << "type: uchar\n";
    out << "dimension: 3\n";
    out << "sizes: 2 3 2\n";
    out << "spacings: 0.5 0.5 2\n";
    out << "encoding: raw\n";
    out << "\n";
    std::vector<uint8_t> payload(12, 1);
    payload[0] = 0;
    out.write(reinterpret_cast<const char*>(payload.data()), 12);
  }
  VoxelMask m = load_mask(dir + "/m.nrrd");
  CHECK(m.nx == 2);
  CHECK(m.ny == 3);
  CHECK(m.sz == doctest::Approx(2.0));
  CHECK(m.foreground_count() == 11);
}

TEST_CASE("missing and malformed inputs raise typed errors") {
  std::string dir = scratch_dir("vol_errors");
  CHECK_THROWS_WITH_AS(load_mask(dir + "/nope.mhdr"), doctest::Contains("MissingFile"), Error);
  write_header(dir + "/bad.mhdr", "dims = 0 4 4\nspacing = 1 1 1\ndata = bad.raw\n");
  write_raw(dir + "/bad.raw", {});
  CHECK_THROWS_WITH_AS(load_mask(dir + "/bad.mhdr"), doctest::Contains("MalformedHeader"), Error);
  write_header(dir + "/neg.mhdr", "dims = 2 2 2\nspacing = 1 -1 1\ndata = neg.raw\n");
  write_raw(dir + "/neg.raw", std::vector<uint8_t>(8, 1));
  CHECK_THROWS_AS(load_mask(dir + "/neg.mhdr"), Error);
}

TEST_CASE("pose log: identity pose writes one data row with unit quaternion") {
  std::string dir = scratch_dir("pose_identity");
  save_pose_log({Pose{}}, 30.0, dir + "/p.csv");
  auto rows = load_pose_log(dir + "/p.csv");
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].frame == 0);
  CHECK(rows[0].pose.orientation.w == 1.0);
  CHECK(rows[0].pose.orientation.x == 0.0);
  CHECK(rows[0].pose.orientation.y == 0.0);
  CHECK(rows[0].pose.orientation.z == 0.0);
}

TEST_CASE("pose log round-trips within 1e-9") {
  std::string dir = scratch_dir("pose_roundtrip");
  std::vector<Pose> poses(3);
  poses[0].position = {12.25, -3.5, 100.125};
  poses[1].position = {0.0078125, 64.5, -0.25};
  poses[1].orientation = normalized(Quat{0.5, 0.5, 0.5, 0.5});
  poses[2].position = {7.0, 8.0, 9.0};
  poses[2].orientation = normalized(Quat{1.0, 0.0, 1.0, 0.0});
  save_pose_log(poses, 10.0, dir + "/p.csv");
  auto rows = load_pose_log(dir + "/p.csv");
  REQUIRE(rows.size() == 3);
  for (size_t i = 0; i < 3; ++i) {
    CHECK(std::abs(rows[i].pose.position.x - poses[i].position.x) < 1e-9);
    CHECK(std::abs(rows[i].pose.position.y - poses[i].position.y) < 1e-9);
    CHECK(std::abs(rows[i].pose.position.z - poses[i].position.z) < 1e-9);
    CHECK(std::abs(rows[i].pose.orientation.w - poses[i].orientation.w) < 1e-9);
    CHECK(std::abs(rows[i].pose.orientation.x - poses[i].orientation.x) < 1e-9);
  }
}

TEST_CASE("pose log round-trips random poses to 9 significant digits") {
  std::string dir = scratch_dir("pose_sigdigits");
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> coord(-200.0, 200.0);
  std::vector<Pose> poses(20);
  for (auto& p : poses) {
    p.position = {coord(rng), coord(rng), coord(rng)};
    p.orientation = normalized(Quat{coord(rng), coord(rng), coord(rng), coord(rng)});
  }
  save_pose_log(poses, 30.0, dir + "/p.csv");
  auto rows = load_pose_log(dir + "/p.csv");
  REQUIRE(rows.size() == poses.size());
  for (size_t i = 0; i < poses.size(); ++i) {
    auto close = [](double a, double b) {
      return std::abs(a - b) <= 1e-8 * std::max(1.0, std::abs(b));
    };
    CHECK(close(rows[i].pose.position.x, poses[i].position.x));
    CHECK(close(rows[i].pose.position.y, poses[i].position.y));
    CHECK(close(rows[i].pose.position.z, poses[i].position.z));
    CHECK(close(rows[i].pose.orientation.w, poses[i].orientation.w));
  }
}

TEST_CASE("pose log: a 100 mm traversal at 10 mm/s and 10 FPS yields 101 rows") {
  std::string dir = scratch_dir("pose_101");
  WaypointPath wp;
  wp.waypoints = {{0, 0, 0}, {0, 0, 50}, {0, 0, 100}};
  wp.spacing_mm = 50.0;
  ContinuousPath path = build_spline(wp);
  TraversalTiming timing;
  timing.speed_mm_s = 10.0;
  timing.fps = 10.0;
  std::vector<Pose> poses = generate_poses(path, timing);
  save_pose_log(poses, timing.fps, dir + "/p.csv");
  auto rows = load_pose_log(dir + "/p.csv");
  CHECK(rows.size() == 101);
}

TEST_CASE("polyline CSV round-trips") {
  std::string dir = scratch_dir("polyline");
  std::vector<WorldPoint> pts = {{0, 0, 0}, {1.5, 2.25, 3.125}, {-4, 5, 6}};
  std::vector<double> arc = {0.0, 4.0, 9.5};
  save_polyline_csv(pts, arc, dir + "/c.csv");
  std::vector<WorldPoint> rp;
  std::vector<double> ra;
  load_polyline_csv(dir + "/c.csv", rp, ra);
  REQUIRE(rp.size() == 3);
  CHECK(rp[1].y == 2.25);
  CHECK(ra[2] == 9.5);
}

TEST_CASE("f32 debug dump writes header and payload") {
  std::string dir = scratch_dir("f32dump");
  save_f32_volume(dir + "/d.mhdr", 2, 1, 1, 1, 1, 1, {0.5, 2.0});
  std::ifstream raw(dir + "/d.raw", std::ios::binary);
  float vals[2];
  raw.read(reinterpret_cast<char*>(vals), 8);
  CHECK(vals[0] == 0.5f);
  CHECK(vals[1] == 2.0f);
}
