#include "colosynth/phantoms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "colosynth/errors.hpp"

namespace colosynth {

CylinderPhantom make_cylinder_phantom(int radius_vox, int length_vox, double spacing,
                                      int margin_vox) {
  if (radius_vox < 1 || length_vox < 1 || !(spacing > 0.0) || margin_vox < 1)
    throw invalid_spec("cylinder phantom parameters out of range");
  CylinderPhantom ph;
  int c = margin_vox + radius_vox;
  int lateral = 2 * (margin_vox + radius_vox) + 1;
  ph.mask.nx = lateral;
  ph.mask.ny = lateral;
  ph.mask.nz = length_vox + 2 * margin_vox;
  ph.mask.sx = ph.mask.sy = ph.mask.sz = spacing;
  ph.mask.data.assign(size_t(ph.mask.voxel_count()), 0);
  for (int z = margin_vox; z < margin_vox + length_vox; ++z)
    for (int y = 0; y < ph.mask.ny; ++y)
      for (int x = 0; x < ph.mask.nx; ++x) {
        int dx = x - c, dy = y - c;
        if (dx * dx + dy * dy <= radius_vox * radius_vox)
          ph.mask.data[size_t(ph.mask.linear(x, y, z))] = 1;
      }
  ph.axis_x_mm = c * spacing;
  ph.axis_y_mm = c * spacing;
  ph.z0_mm = margin_vox * spacing;
  ph.z1_mm = (margin_vox + length_vox - 1) * spacing;
  ph.radius_mm = radius_vox * spacing;
  return ph;
}

BallPhantom make_ball_phantom(int radius_vox, double spacing, int margin_vox) {
  if (radius_vox < 1 || !(spacing > 0.0) || margin_vox < 1)
    throw invalid_spec("ball phantom parameters out of range");
  BallPhantom ph;
  int c = margin_vox + radius_vox;
  int n = 2 * c + 1;
  ph.mask.nx = ph.mask.ny = ph.mask.nz = n;
  ph.mask.sx = ph.mask.sy = ph.mask.sz = spacing;
  ph.mask.data.assign(size_t(ph.mask.voxel_count()), 0);
  int r2 = radius_vox * radius_vox;
  for (int z = 0; z < n; ++z)
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x) {
        int dx = x - c, dy = y - c, dz = z - c;
        if (dx * dx + dy * dy + dz * dz <= r2)
          ph.mask.data[size_t(ph.mask.linear(x, y, z))] = 1;
      }
  ph.center_mm = {c * spacing, c * spacing, c * spacing};
  ph.radius_mm = radius_vox * spacing;
  return ph;
}

namespace {

double dist_to_segment(const Vec3& p, const Vec3& a, const Vec3& b) {
  Vec3 ab = b - a;
  double len2 = dot(ab, ab);
  if (len2 <= 0.0) return distance(p, a);
  double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + ab * t);
}

}  // namespace

TubePhantom make_tube_phantom(const std::vector<Vec3>& path_mm, double tube_radius_mm,
                              double spacing, double margin_mm) {
  if (path_mm.size() < 2 || !(tube_radius_mm > 0.0) || !(spacing > 0.0))
    throw invalid_spec("tube phantom parameters out of range");
  Vec3 lo = path_mm[0], hi = path_mm[0];
  for (const Vec3& p : path_mm) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  double pad = tube_radius_mm + margin_mm;
  lo -= Vec3{pad, pad, pad};
  hi += Vec3{pad, pad, pad};

  TubePhantom ph;
  ph.tube_radius_mm = tube_radius_mm;
  ph.mask.nx = int(std::ceil((hi.x - lo.x) / spacing)) + 1;
  ph.mask.ny = int(std::ceil((hi.y - lo.y) / spacing)) + 1;
  ph.mask.nz = int(std::ceil((hi.z - lo.z) / spacing)) + 1;
  ph.mask.sx = ph.mask.sy = ph.mask.sz = spacing;
  ph.mask.data.assign(size_t(ph.mask.voxel_count()), 0);

  // Shift the spine so voxel (0,0,0) sits at world origin.
  ph.path_mm.reserve(path_mm.size());
  for (const Vec3& p : path_mm) ph.path_mm.push_back(p - lo);

  for (int z = 0; z < ph.mask.nz; ++z)
    for (int y = 0; y < ph.mask.ny; ++y)
      for (int x = 0; x < ph.mask.nx; ++x) {
        Vec3 p{x * spacing, y * spacing, z * spacing};
        double best = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i + 1 < ph.path_mm.size(); ++i) {
          best = std::min(best, dist_to_segment(p, ph.path_mm[i], ph.path_mm[i + 1]));
          if (best <= tube_radius_mm) break;
        }
        if (best <= tube_radius_mm) ph.mask.data[size_t(ph.mask.linear(x, y, z))] = 1;
      }
  return ph;
}

TubePhantom make_lbend_phantom(double arm_mm, double tube_radius_mm, double spacing) {
  std::vector<Vec3> path = {{0, 0, 0}, {0, 0, arm_mm}, {arm_mm, 0, arm_mm}};
  return make_tube_phantom(path, tube_radius_mm, spacing);
}

TubePhantom make_utube_phantom(double leg_mm, double base_mm, double tube_radius_mm,
                               double spacing) {
  std::vector<Vec3> path = {{0, 0, leg_mm}, {0, 0, 0}, {base_mm, 0, 0}, {base_mm, 0, leg_mm}};
  return make_tube_phantom(path, tube_radius_mm, spacing);
}

TubePhantom make_helix_phantom(double major_radius_mm, double pitch_mm, double turns,
                               double tube_radius_mm, double spacing) {
  std::vector<Vec3> path;
  int steps = std::max(16, int(std::ceil(turns * 64)));
  for (int i = 0; i <= steps; ++i) {
    double t = turns * 2.0 * kPi * double(i) / double(steps);
    path.push_back({major_radius_mm * std::cos(t), major_radius_mm * std::sin(t),
                    pitch_mm * t / (2.0 * kPi)});
  }
  return make_tube_phantom(path, tube_radius_mm, spacing);
}

}  // namespace colosynth
