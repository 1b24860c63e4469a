#pragma once

#include <vector>

#include "colosynth/centerline.hpp"
#include "colosynth/geom.hpp"

namespace colosynth {

// Arclength-parameterized centripetal Catmull-Rom spline through waypoints.
class ContinuousPath {
 public:
  double total_length() const { return total_length_; }
  size_t waypoint_count() const { return points_.size() - 2; }

  // Position at spline parameter (clamped to the valid range).
  Vec3 eval_param(double t) const;

  // Position at arclength s in [0, L]; s = 0 and s = L return the first and
  // last waypoints exactly.
  Vec3 eval_arclength(double s) const;

  // Cumulative spline arclength at waypoint i.
  double knot_arclength(size_t i) const;

 private:
  friend ContinuousPath build_spline(const WaypointPath& wp);

  std::vector<Vec3> points_;     // with duplicated phantom endpoints
  std::vector<double> knots_;    // centripetal parameter values
  std::vector<double> table_t_;  // parameter samples of the arclength table
  std::vector<double> table_s_;  // cumulative arclength at table_t_
  double total_length_ = 0.0;
};

struct TraversalTiming {
  double speed_mm_s = 10.0;
  double fps = 30.0;
  double lookahead_mm = 10.0;
};

// Builds the spline and its arclength table (adaptive subdivision, 0.01 mm
// tolerance). Throws TooFewWaypoints below 2 waypoints.
ContinuousPath build_spline(const WaypointPath& wp);

// Frame k sits at arclength min(speed * k / fps, L); orientation looks at the
// point lookahead_mm further along, with the up vector parallel-transported
// from frame to frame. Pose count is floor(L / (speed/fps)) + 1.
std::vector<Pose> generate_poses(const ContinuousPath& path, const TraversalTiming& timing);

}  // namespace colosynth
