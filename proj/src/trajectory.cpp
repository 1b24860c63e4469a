#include "colosynth/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "colosynth/errors.hpp"

namespace colosynth {

namespace {

// Interpolation step that tolerates duplicated knots: equal knots can only
// bracket equal points, whose blend is the point itself.
Vec3 lerp_knot(const Vec3& a, const Vec3& b, double ta, double tb, double t) {
  if (tb == ta) return a;
  double w = (t - ta) / (tb - ta);
  return a + (b - a) * w;
}

Vec3 barry_goldman(const Vec3* p, const double* k, double t) {
  Vec3 a1 = lerp_knot(p[0], p[1], k[0], k[1], t);
  Vec3 a2 = lerp_knot(p[1], p[2], k[1], k[2], t);
  Vec3 a3 = lerp_knot(p[2], p[3], k[2], k[3], t);
  Vec3 b1 = lerp_knot(a1, a2, k[0], k[2], t);
  Vec3 b2 = lerp_knot(a2, a3, k[1], k[3], t);
  return lerp_knot(b1, b2, k[1], k[2], t);
}

}  // namespace

Vec3 ContinuousPath::eval_param(double t) const {
  size_t segments = points_.size() - 3;  // interior segments
  t = std::clamp(t, knots_[1], knots_[points_.size() - 2]);
  // Find segment i with knots_[i+1] <= t <= knots_[i+2].
  size_t lo = 1, hi = points_.size() - 2;
  while (lo + 1 < hi) {
    size_t mid = (lo + hi) / 2;
    if (knots_[mid] <= t)
      lo = mid;
    else
      hi = mid;
  }
  size_t seg = std::min(lo - 1, segments - 1);
  return barry_goldman(&points_[seg], &knots_[seg], t);
}

double ContinuousPath::knot_arclength(size_t i) const {
  double t = knots_[i + 1];
  // Knots are always table breakpoints, so the first entry >= t is exact.
  auto it = std::lower_bound(table_t_.begin(), table_t_.end(), t);
  if (it == table_t_.end()) return total_length_;
  return table_s_[size_t(it - table_t_.begin())];
}

Vec3 ContinuousPath::eval_arclength(double s) const {
  if (s <= 0.0) return points_[1];
  if (s >= total_length_) return points_[points_.size() - 2];
  size_t lo = 0, hi = table_s_.size() - 1;
  while (lo + 1 < hi) {
    size_t mid = (lo + hi) / 2;
    if (table_s_[mid] <= s)
      lo = mid;
    else
      hi = mid;
  }
  // Bisect inside the bracket, accumulating chord length. The chord equals
  // the arc in the limit, so the inversion converges far below the table
  // resolution (and is exact on straight spans).
  double t0 = table_t_[lo], t1 = table_t_[lo + 1];
  double s0 = table_s_[lo];
  Vec3 p0 = eval_param(t0), p1 = eval_param(t1);
  for (int it = 0; it < 60 && t1 - t0 > 1e-14 * knots_.back(); ++it) {
    double tm = 0.5 * (t0 + t1);
    Vec3 pm = eval_param(tm);
    double sm = s0 + distance(p0, pm);
    if (sm <= s) {
      t0 = tm;
      p0 = pm;
      s0 = sm;
    } else {
      t1 = tm;
      p1 = pm;
    }
  }
  double span = distance(p0, p1);
  double w = span > 0.0 ? std::clamp((s - s0) / span, 0.0, 1.0) : 0.0;
  return lerp(p0, p1, w);
}

ContinuousPath build_spline(const WaypointPath& wp) {
  if (wp.waypoints.size() < 2) throw too_few_waypoints("spline needs >= 2 waypoints");

  ContinuousPath path;
  path.points_.reserve(wp.waypoints.size() + 2);
  path.points_.push_back(wp.waypoints.front());  // phantom duplicate
  path.points_.insert(path.points_.end(), wp.waypoints.begin(), wp.waypoints.end());
  path.points_.push_back(wp.waypoints.back());  // phantom duplicate

  path.knots_.resize(path.points_.size());
  path.knots_[0] = 0.0;
  for (size_t i = 1; i < path.points_.size(); ++i) {
    double d = distance(path.points_[i], path.points_[i - 1]);
    path.knots_[i] = path.knots_[i - 1] + std::sqrt(d);  // centripetal alpha = 0.5
  }

  // Arclength table by adaptive bisection per knot span, appended in order.
  // The flatness threshold sits far below the documented 0.01 mm length
  // tolerance so the arclength inversion stays consistent across breakpoints.
  const double tol = 2.5e-8;
  path.table_t_.push_back(path.knots_[1]);
  path.table_s_.push_back(0.0);
  double cum = 0.0;

  std::function<void(double, const Vec3&, double, const Vec3&, int)> refine =
      [&](double t0, const Vec3& p0, double t1, const Vec3& p1, int depth) {
        double tm = 0.5 * (t0 + t1);
        Vec3 pm = path.eval_param(tm);
        double chord = distance(p0, p1);
        double split = distance(p0, pm) + distance(pm, p1);
        if (depth >= 24 || split - chord < tol) {
          cum += distance(p0, pm);
          path.table_t_.push_back(tm);
          path.table_s_.push_back(cum);
          cum += distance(pm, p1);
          path.table_t_.push_back(t1);
          path.table_s_.push_back(cum);
          return;
        }
        refine(t0, p0, tm, pm, depth + 1);
        refine(tm, pm, t1, p1, depth + 1);
      };

  for (size_t seg = 1; seg + 2 < path.points_.size(); ++seg) {
    double t0 = path.knots_[seg], t1 = path.knots_[seg + 1];
    if (t1 <= t0) continue;
    refine(t0, path.eval_param(t0), t1, path.eval_param(t1), 0);
  }
  path.total_length_ = cum;
  return path;
}

std::vector<Pose> generate_poses(const ContinuousPath& path, const TraversalTiming& timing) {
  if (!(timing.speed_mm_s > 0.0) || !(timing.fps > 0.0) || !(timing.lookahead_mm > 0.0))
    throw invalid_spec("traversal timing values must be positive");

  const double L = path.total_length();
  const double step = timing.speed_mm_s / timing.fps;
  const int64_t count = int64_t(std::floor(L / step)) + 1;

  std::vector<Pose> poses;
  poses.reserve(size_t(count));

  Vec3 forward{0, 0, -1}, up{0, 1, 0};
  for (int64_t k = 0; k < count; ++k) {
    double s = std::min(timing.speed_mm_s * double(k) / timing.fps, L);
    Vec3 pos = path.eval_arclength(s);
    Vec3 target = path.eval_arclength(std::min(s + timing.lookahead_mm, L));
    Vec3 to_target = target - pos;
    Vec3 new_forward = length(to_target) > 1e-12 ? normalized(to_target) : forward;

    if (k == 0) {
      // Least-aligned world axis seeds the up vector.
      Vec3 axes[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
      Vec3 pick = axes[0];
      double best = std::abs(dot(axes[0], new_forward));
      for (int a = 1; a < 3; ++a) {
        double d = std::abs(dot(axes[a], new_forward));
        if (d < best) {
          best = d;
          pick = axes[a];
        }
      }
      up = normalized(pick - dot(pick, new_forward) * new_forward);
    } else {
      // Parallel transport: rotate up by the rotation taking the previous
      // forward onto the new one, then re-orthonormalize.
      Vec3 axis = cross(forward, new_forward);
      double sin_a = length(axis);
      double cos_a = std::clamp(dot(forward, new_forward), -1.0, 1.0);
      if (sin_a > 1e-14) {
        Vec3 a = axis / sin_a;
        up = up * cos_a + cross(a, up) * sin_a + a * dot(a, up) * (1.0 - cos_a);
      }
      up = normalized(up - dot(up, new_forward) * new_forward);
    }
    forward = new_forward;

    Vec3 right = normalized(cross(forward, up));
    up = normalized(cross(right, forward));

    Pose pose;
    pose.position = pos;
    pose.orientation = quat_from_basis(right, up, -forward);
    poses.push_back(pose);
  }
  return poses;
}

}  // namespace colosynth
