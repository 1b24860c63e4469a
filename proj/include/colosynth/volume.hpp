#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "colosynth/geom.hpp"

namespace colosynth {

using VoxelIndex = std::array<int, 3>;

// Binary occupancy grid with anisotropic spacing. Data is x-fastest, then y,
// then z. The world frame is index * spacing with its origin at the center of
// voxel (0,0,0), units mm.
struct VoxelMask {
  int nx = 0, ny = 0, nz = 0;
  double sx = 1.0, sy = 1.0, sz = 1.0;
  std::vector<uint8_t> data;

  int64_t voxel_count() const { return int64_t(nx) * ny * nz; }
  int64_t linear(int x, int y, int z) const { return (int64_t(z) * ny + y) * nx + x; }
  bool in_bounds(int x, int y, int z) const {
    return x >= 0 && x < nx && y >= 0 && y < ny && z >= 0 && z < nz;
  }
  bool foreground(int x, int y, int z) const { return data[linear(x, y, z)] != 0; }
  WorldPoint world(int x, int y, int z) const { return {x * sx, y * sy, z * sz}; }
  WorldPoint world(const VoxelIndex& v) const { return world(v[0], v[1], v[2]); }

  int64_t foreground_count() const;
};

// Validates dims/spacing/payload-length invariants, throws on violation.
void validate_mask(const VoxelMask& mask);

// Reads a mask from a .mhdr sidecar header (native format) or a .nrrd file
// with uint8 raw payload. Any voxel value > 0 is foreground.
VoxelMask load_mask(const std::string& path);

// Writes the native pair <stem>.mhdr + <stem>.raw. `path` names the header.
void save_mask(const VoxelMask& mask, const std::string& path);

// Debug dump of a float field with the same header style (dtype = f32),
// payload little-endian float32.
void save_f32_volume(const std::string& path, int nx, int ny, int nz, double sx, double sy,
                     double sz, const std::vector<double>& values);

// Pose log CSV: header `frame,t_sec,px,py,pz,qw,qx,qy,qz`, %.9g formatting.
void save_pose_log(const std::vector<Pose>& poses, double fps, const std::string& path);

struct TimedPose {
  int64_t frame = 0;
  double t_sec = 0.0;
  Pose pose;
};
std::vector<TimedPose> load_pose_log(const std::string& path);

// Polyline CSV: header `index,arclen_mm,x,y,z`.
void save_polyline_csv(const std::vector<WorldPoint>& points, const std::vector<double>& arclen,
                       const std::string& path);
void load_polyline_csv(const std::string& path, std::vector<WorldPoint>& points,
                       std::vector<double>& arclen);

// %.9g float formatting shared by every text format.
std::string format_g9(double v);

}  // namespace colosynth
