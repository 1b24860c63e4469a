#pragma once

#include <vector>

#include "colosynth/volume.hpp"

namespace colosynth {

// Analytic test solids voxelized onto isotropic grids. Each generator also
// reports the analytic geometry so tests can compare against ground truth.

struct CylinderPhantom {
  VoxelMask mask;
  double axis_x_mm = 0.0, axis_y_mm = 0.0;  // tube axis, parallel to z
  double z0_mm = 0.0, z1_mm = 0.0;          // voxel-center extent of the solid
  double radius_mm = 0.0;
};

// Flat-capped cylinder along z. The axis passes through voxel centers.
CylinderPhantom make_cylinder_phantom(int radius_vox = 5, int length_vox = 40,
                                      double spacing = 1.0, int margin_vox = 3);

struct BallPhantom {
  VoxelMask mask;
  Vec3 center_mm;
  double radius_mm = 0.0;
};

BallPhantom make_ball_phantom(int radius_vox = 8, double spacing = 1.0, int margin_vox = 3);

struct TubePhantom {
  VoxelMask mask;
  std::vector<Vec3> path_mm;  // the analytic spine
  double tube_radius_mm = 0.0;
};

// Solid capsule swept along a polyline (round joints by construction).
TubePhantom make_tube_phantom(const std::vector<Vec3>& path_mm, double tube_radius_mm,
                              double spacing = 1.0, double margin_mm = 3.0);

// L-shaped tube: one arm along +z, then a right-angle turn along +x.
TubePhantom make_lbend_phantom(double arm_mm = 30.0, double tube_radius_mm = 5.0,
                               double spacing = 1.0);

// U-shaped tube: down, across, and back up.
TubePhantom make_utube_phantom(double leg_mm = 24.0, double base_mm = 16.0,
                               double tube_radius_mm = 3.0, double spacing = 1.0);

// Helical tube around the z axis.
TubePhantom make_helix_phantom(double major_radius_mm = 10.0, double pitch_mm = 20.0,
                               double turns = 2.0, double tube_radius_mm = 3.0,
                               double spacing = 1.0);

}  // namespace colosynth
