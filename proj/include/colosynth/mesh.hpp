#pragma once

#include <array>
#include <string>
#include <vector>

#include "colosynth/centerline.hpp"
#include "colosynth/volume.hpp"

namespace colosynth {

// Triangulated surface in world mm. `uvs` is empty until unwrap_uv assigns
// texture coordinates (u circumferential in [0,1), v longitudinal in [0,1]).
struct TriMesh {
  std::vector<WorldPoint> vertices;
  std::vector<Vec3> normals;
  std::vector<std::array<double, 2>> uvs;
  std::vector<std::array<int, 3>> triangles;

  bool has_uvs() const { return !uvs.empty(); }
  size_t vertex_count() const { return vertices.size(); }
  size_t triangle_count() const { return triangles.size(); }
};

// Orthonormal moving frame along the centerline, built by parallel transport
// (double reflection) so the normal never flips across inflections.
struct CenterlineFrame {
  WorldPoint position;
  Vec3 tangent, normal, binormal;
  double arclength = 0.0;
};

struct CenterlineFrameField {
  std::vector<CenterlineFrame> frames;
  double total_arclength = 0.0;
};

// Closed isosurface of the binary field sampled 0/1 at voxel centers and
// padded by background. Cubes are split into six tetrahedra sharing the main
// diagonal; per-tet contouring has no ambiguous cases, so every edge of the
// output is shared by exactly two triangles on any input. Triangle winding is
// outward from the foreground; vertex normals are filled in.
TriMesh marching_cubes(const VoxelMask& mask, double iso = 0.5);

// Uniform-weight Laplacian smoothing: `iterations` passes, each vertex moved
// `step` of the way toward its 1-ring mean. Topology untouched.
TriMesh smooth_mesh(const TriMesh& mesh, int iterations, double step);

// Flips whole connected components (winding + normals) so vertex normals
// point toward the centerline, decided by per-component majority vote.
TriMesh orient_inward(const TriMesh& mesh, const Centerline& centerline);

CenterlineFrameField build_frames(const Centerline& centerline);

// Tube unwrap: v = normalized arclength of the nearest centerline sample,
// u = angle of the vertex offset in that sample's (normal, binormal) plane.
// Triangles crossing the u seam are clipped and their corners duplicated, so
// afterwards every triangle spans a u interval <= 0.5 with all u in [0,1).
TriMesh unwrap_uv(const TriMesh& mesh, const CenterlineFrameField& frames);

// Area-weighted vertex normals recomputed from triangle winding.
void compute_vertex_normals(TriMesh& mesh);

// Index of the exact nearest sample per query point, ties toward the smaller
// index (grid-accelerated; equivalent to a linear scan).
std::vector<int> nearest_sample_indices(const std::vector<WorldPoint>& samples,
                                        const std::vector<WorldPoint>& queries);

double mesh_surface_area(const TriMesh& mesh);
double mesh_signed_volume(const TriMesh& mesh);

// Wavefront OBJ with v/vt/vn records, %.9g floats, deterministic bytes.
void save_obj(const TriMesh& mesh, const std::string& path);
TriMesh load_obj(const std::string& path);

}  // namespace colosynth
