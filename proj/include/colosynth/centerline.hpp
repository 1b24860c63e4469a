#pragma once

#include <vector>

#include "colosynth/distance_field.hpp"
#include "colosynth/volume.hpp"

namespace colosynth {

// Ordered world-space path through the colon interior. Consecutive entries
// are 26-neighbor voxels; arclength is cumulative geometric length in mm.
struct Centerline {
  std::vector<WorldPoint> points;
  std::vector<double> arclength;
  std::vector<VoxelIndex> voxels;
  double total_cost = 0.0;

  double total_length() const { return arclength.empty() ? 0.0 : arclength.back(); }
};

// Equidistant resampling of a centerline. All consecutive chords share the
// realized spacing; first and last waypoints equal the centerline endpoints.
struct WaypointPath {
  std::vector<WorldPoint> waypoints;
  double spacing_mm = 0.0;
};

// Minimum-cost 26-connected path from start to end under the wall-distance
// penalty w(a,b) = step_mm * (max_dfb / min(dfb(a), dfb(b)))^lambda.
// lambda = 0 degenerates to the plain geometric shortest path. Cost ties are
// broken toward the lexicographically smallest voxel index.
Centerline extract_centerline(const DistanceField& df, const VoxelIndex& start,
                              const VoxelIndex& end, double lambda);

// Double geodesic sweep (lambda = 0): from the deepest voxel, the farthest
// reachable foreground voxel is `start`; the farthest from `start` is `end`.
std::pair<VoxelIndex, VoxelIndex> auto_endpoints(const DistanceField& df);

WaypointPath resample_waypoints(const Centerline& centerline, double requested_spacing_mm);

}  // namespace colosynth
