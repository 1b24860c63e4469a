#pragma once

#include <array>
#include <cstdint>
#include <memory>

#include "colosynth/geom.hpp"
#include "colosynth/image.hpp"
#include "colosynth/mesh.hpp"
#include "colosynth/texture.hpp"

namespace colosynth {

struct CameraIntrinsics {
  double fov_deg = 91.375;          // vertical field of view, drives projection
  double focal_length_mm = 159.45;  // recorded metadata, not used in projection
  int width = 256, height = 256;
  double iso = 200.0;
  double aperture_fnumber = 16.0;
};

struct MaterialParams {
  double metallic = 0.3;
  double smoothness = 0.7;
  double coat_mask = 0.435;
  double anisotropy = 1.0;
};

struct PostFxParams {
  double chromatic_aberration = 0.5;
  double lens_intensity = 0.1;  // vignette strength
  bool noise_enabled = false;
};

struct LightParams {
  double intensity = 1000.0;  // radiant intensity, linear units
  std::array<double, 3> color = {1.0, 1.0, 1.0};
};

// Full parameter snapshot for one rendered frame; the unit of randomization.
struct RenderConfig {
  TextureSpec texture;
  MaterialParams material;
  PostFxParams postfx;
  LightParams light;
  CameraIntrinsics camera;
};

struct FramePacket {
  ImageRGB rgb;
  ImageGray depth;  // Euclidean hit distance in mm, 0 where the ray misses
  Pose pose;
  int64_t frame_index = 0;
  RenderConfig config;
};

void validate_render_config(const RenderConfig& config);

// Headlight shading: point light at the camera, inverse-square falloff,
// Lambert diffuse plus anisotropic GGX specular and a fixed-roughness clear
// coat weighted by coat_mask. Returns linear radiance before exposure.
Vec3 shade(const Vec3& hit_point, const Vec3& shading_normal, const Vec3& view_dir, double u,
           double v, const TextureImage& texture, const MaterialParams& mat,
           const LightParams& light, const Vec3& camera_pos, const Vec3& tangent,
           const Vec3& bitangent);

// In order: chromatic aberration, vignette, seeded sensor noise, clamp.
void apply_postfx(ImageRGB& image, const PostFxParams& fx, const CameraIntrinsics& cam,
                  uint64_t seed);

// Holds the immutable BVH for a mesh so traversals can render many frames.
class Raytracer {
 public:
  explicit Raytracer(TriMesh mesh);
  ~Raytracer();
  Raytracer(Raytracer&&) noexcept;
  Raytracer& operator=(Raytracer&&) noexcept;

  FramePacket render(const TextureImage& texture, const Pose& pose, const CameraIntrinsics& cam,
                     const MaterialParams& mat, const PostFxParams& fx, const LightParams& light,
                     uint64_t seed, int64_t frame_index = 0) const;

  const TriMesh& mesh() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// One-shot render: builds the acceleration structure, renders one frame.
FramePacket render_frame(const TriMesh& mesh, const TextureImage& texture, const Pose& pose,
                         const CameraIntrinsics& cam, const MaterialParams& mat,
                         const PostFxParams& fx, const LightParams& light, uint64_t seed,
                         int64_t frame_index = 0);

}  // namespace colosynth
