#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "colosynth/render.hpp"

namespace colosynth {

// Range of one scalar/categorical configuration field.
struct ParamRange {
  enum class Kind { fixed, uniform, uniform_int, choice };
  Kind kind = Kind::fixed;
  double fixed_value = 0.0;
  double lo = 0.0, hi = 0.0;
  std::vector<std::pair<std::string, double>> choices;  // (name, weight)

  static ParamRange fixed(double v) { return {Kind::fixed, v, 0, 0, {}}; }
  static ParamRange uniform(double lo, double hi) { return {Kind::uniform, 0, lo, hi, {}}; }
  static ParamRange uniform_int(double lo, double hi) { return {Kind::uniform_int, 0, lo, hi, {}}; }
};

enum class RandomizationMode { per_frame, per_traversal };

std::string to_string(RandomizationMode mode);
RandomizationMode randomization_mode_from_string(const std::string& name);

// One ParamRange per RenderConfig field, keyed by a stable dotted tag. The
// sampled value of a field depends only on (master_seed, traversal, frame,
// tag), never on the other entries.
struct RandomizationSpec {
  RandomizationMode mode = RandomizationMode::per_frame;
  uint64_t master_seed = 1;
  std::map<std::string, ParamRange> ranges;
};

// Stock defaults: metallic 0.3, smoothness 0.7, lens intensity 0.1, chromatic
// aberration 0.5, coat mask 0.435, fov 91.375, focal length 159.45, ISO 200,
// aperture f/16, anisotropy 1. Texture defaults to the mucosa pattern; light
// intensity 1000.
RenderConfig default_config();

// Every field pinned to the base config (degenerate randomization).
RandomizationSpec fixed_randomization_spec(const RenderConfig& base);

// The shipped example ranges: material scalars +-0.2 around defaults clipped
// to [0,1], light intensity x[0.5, 2], texture mode 70% mucosa / 30% random
// patterns, per-frame texture seeds.
RandomizationSpec default_randomization_spec(const RenderConfig& base);

void validate_randomization_spec(const RandomizationSpec& spec);

// Deterministic sample: in per_frame mode a function of (master_seed,
// traversal_id, frame_index); in per_traversal mode frame_index is ignored.
RenderConfig sample_config(const RandomizationSpec& spec, int64_t traversal_id,
                           int64_t frame_index);

}  // namespace colosynth
