#pragma once

#include <vector>

#include "colosynth/volume.hpp"

namespace colosynth {

// Per-voxel Euclidean distance (mm) from each foreground voxel center to the
// nearest background voxel center. The volume is padded by a background layer,
// so voxels with any index -1 or n count as background. Background voxels hold
// exactly 0.
struct DistanceField {
  int nx = 0, ny = 0, nz = 0;
  double sx = 1.0, sy = 1.0, sz = 1.0;
  std::vector<double> dfb;
  double max_dfb = 0.0;

  int64_t linear(int x, int y, int z) const { return (int64_t(z) * ny + y) * nx + x; }
  double at(int x, int y, int z) const { return dfb[linear(x, y, z)]; }
  WorldPoint world(int x, int y, int z) const { return {x * sx, y * sy, z * sz}; }
};

// Exact separable EDT (three 1-D passes with parabola envelopes). Throws
// EmptyMask when the mask has no foreground voxel.
DistanceField compute_edt(const VoxelMask& mask);

}  // namespace colosynth
