#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "colosynth/geom.hpp"
#include "colosynth/image.hpp"

namespace colosynth {

enum class TextureMode { mucosa, noise, checker, stripes };

std::string to_string(TextureMode mode);
TextureMode texture_mode_from_string(const std::string& name);

// Seeded procedural texture description. Everything the generator does is a
// pure function of this struct. The generated field wraps exactly in u so the
// tube seam is invisible.
struct TextureSpec {
  TextureMode mode = TextureMode::mucosa;
  int width = 256, height = 256;                          // powers of two in [64, 4096]
  std::array<double, 3> base_color_a = {0.78, 0.42, 0.38};
  std::array<double, 3> base_color_b = {0.93, 0.62, 0.58};
  int noise_octaves = 4;                                  // 1..8
  double noise_scale = 8.0;                               // pattern periods across u
  double vessel_density = 12.0;                           // expected vessel walks (mucosa)
  uint64_t seed = 0;

  bool operator==(const TextureSpec&) const = default;
};

using TextureImage = ImageRGB;

void validate_texture_spec(const TextureSpec& spec);

TextureImage generate_texture(const TextureSpec& spec);

// Bilinear lookup; u wraps periodically, v clamps to [0,1].
Vec3 sample_texture(const TextureImage& tex, double u, double v);

}  // namespace colosynth
