#include "colosynth/randomizer.hpp"

#include <algorithm>
#include <cmath>

#include "colosynth/errors.hpp"
#include "colosynth/hashing.hpp"

namespace colosynth {

std::string to_string(RandomizationMode mode) {
  return mode == RandomizationMode::per_frame ? "per_frame" : "per_traversal";
}

RandomizationMode randomization_mode_from_string(const std::string& name) {
  if (name == "per_frame") return RandomizationMode::per_frame;
  if (name == "per_traversal") return RandomizationMode::per_traversal;
  throw invalid_spec("unknown randomization mode `" + name + "`");
}

RenderConfig default_config() {
  return RenderConfig{};  // member initializers carry the stock defaults
}

namespace {

const char* const kScalarTags[] = {
    "material.metallic",       "material.smoothness",
    "material.coat_mask",      "material.anisotropy",
    "postfx.chromatic_aberration", "postfx.lens_intensity",
    "postfx.noise_enabled",
    "light.intensity",
    "light.color.r",           "light.color.g",           "light.color.b",
    "camera.fov_deg",          "camera.focal_length_mm",
    "camera.iso",              "camera.aperture_fnumber",
    "camera.width",            "camera.height",
    "texture.width",           "texture.height",
    "texture.base_color_a.r",  "texture.base_color_a.g",  "texture.base_color_a.b",
    "texture.base_color_b.r",  "texture.base_color_b.g",  "texture.base_color_b.b",
    "texture.noise_octaves",   "texture.noise_scale",
    "texture.vessel_density",  "texture.seed",
};

double base_value(const RenderConfig& c, const std::string& tag) {
  if (tag == "material.metallic") return c.material.metallic;
  if (tag == "material.smoothness") return c.material.smoothness;
  if (tag == "material.coat_mask") return c.material.coat_mask;
  if (tag == "material.anisotropy") return c.material.anisotropy;
  if (tag == "postfx.chromatic_aberration") return c.postfx.chromatic_aberration;
  if (tag == "postfx.lens_intensity") return c.postfx.lens_intensity;
  if (tag == "postfx.noise_enabled") return c.postfx.noise_enabled ? 1.0 : 0.0;
  if (tag == "light.intensity") return c.light.intensity;
  if (tag == "light.color.r") return c.light.color[0];
  if (tag == "light.color.g") return c.light.color[1];
  if (tag == "light.color.b") return c.light.color[2];
  if (tag == "camera.fov_deg") return c.camera.fov_deg;
  if (tag == "camera.focal_length_mm") return c.camera.focal_length_mm;
  if (tag == "camera.iso") return c.camera.iso;
  if (tag == "camera.aperture_fnumber") return c.camera.aperture_fnumber;
  if (tag == "camera.width") return c.camera.width;
  if (tag == "camera.height") return c.camera.height;
  if (tag == "texture.width") return c.texture.width;
  if (tag == "texture.height") return c.texture.height;
  if (tag == "texture.base_color_a.r") return c.texture.base_color_a[0];
  if (tag == "texture.base_color_a.g") return c.texture.base_color_a[1];
  if (tag == "texture.base_color_a.b") return c.texture.base_color_a[2];
  if (tag == "texture.base_color_b.r") return c.texture.base_color_b[0];
  if (tag == "texture.base_color_b.g") return c.texture.base_color_b[1];
  if (tag == "texture.base_color_b.b") return c.texture.base_color_b[2];
  if (tag == "texture.noise_octaves") return c.texture.noise_octaves;
  if (tag == "texture.noise_scale") return c.texture.noise_scale;
  if (tag == "texture.vessel_density") return c.texture.vessel_density;
  if (tag == "texture.seed") return double(c.texture.seed);
  throw invalid_spec("unknown configuration field `" + tag + "`");
}

uint64_t field_key(const RandomizationSpec& spec, const std::string& tag, int64_t traversal,
                   int64_t frame) {
  uint64_t frame_key =
      spec.mode == RandomizationMode::per_frame ? uint64_t(frame) : 0x7472617665727361ull;
  return hash_key(hash_combine(spec.master_seed, fnv1a64(tag)), uint64_t(traversal), frame_key);
}

double sample_scalar(const ParamRange& r, uint64_t key, const std::string& tag) {
  switch (r.kind) {
    case ParamRange::Kind::fixed:
      return r.fixed_value;
    case ParamRange::Kind::uniform:
      return uniform_range(key, r.lo, r.hi);
    case ParamRange::Kind::uniform_int: {
      uint64_t span = uint64_t(int64_t(r.hi) - int64_t(r.lo)) + 1;
      return double(int64_t(r.lo) + int64_t(key % span));
    }
    case ParamRange::Kind::choice:
      throw invalid_spec("field `" + tag + "` is scalar, got a categorical range");
  }
  return 0.0;
}

std::string sample_choice(const ParamRange& r, uint64_t key, const std::string& tag) {
  if (r.kind == ParamRange::Kind::fixed || r.kind == ParamRange::Kind::uniform ||
      r.kind == ParamRange::Kind::uniform_int)
    throw invalid_spec("field `" + tag + "` is categorical, got a scalar range");
  double total = 0.0;
  for (const auto& [name, w] : r.choices) total += w;
  double pick = uniform01(key) * total;
  double cum = 0.0;
  for (const auto& [name, w] : r.choices) {
    cum += w;
    if (pick < cum) return name;
  }
  return r.choices.back().first;
}

}  // namespace

RandomizationSpec fixed_randomization_spec(const RenderConfig& base) {
  RandomizationSpec spec;
  for (const char* tag : kScalarTags) spec.ranges[tag] = ParamRange::fixed(base_value(base, tag));
  ParamRange mode_range;
  mode_range.kind = ParamRange::Kind::choice;
  mode_range.choices = {{to_string(base.texture.mode), 1.0}};
  spec.ranges["texture.mode"] = mode_range;
  return spec;
}

RandomizationSpec default_randomization_spec(const RenderConfig& base) {
  RandomizationSpec spec = fixed_randomization_spec(base);
  auto around = [&](const std::string& tag, double radius, double lo, double hi) {
    double v = base_value(base, tag);
    spec.ranges[tag] = ParamRange::uniform(std::max(lo, v - radius), std::min(hi, v + radius));
  };
  around("material.metallic", 0.2, 0.0, 1.0);
  around("material.smoothness", 0.2, 0.0, 1.0);
  around("material.coat_mask", 0.2, 0.0, 1.0);
  around("material.anisotropy", 0.2, 0.0, 1.0);
  spec.ranges["light.intensity"] =
      ParamRange::uniform(base.light.intensity * 0.5, base.light.intensity * 2.0);
  for (const char* tag : {"texture.base_color_a.r", "texture.base_color_a.g",
                          "texture.base_color_a.b", "texture.base_color_b.r",
                          "texture.base_color_b.g", "texture.base_color_b.b"})
    around(tag, 0.08, 0.0, 1.0);
  spec.ranges["texture.noise_scale"] = ParamRange::uniform(4.0, 16.0);
  spec.ranges["texture.vessel_density"] = ParamRange::uniform(4.0, 24.0);
  spec.ranges["texture.seed"] = ParamRange::uniform_int(0, 4294967295.0);
  ParamRange mode_range;
  mode_range.kind = ParamRange::Kind::choice;
  mode_range.choices = {{"mucosa", 0.7}, {"noise", 0.1}, {"checker", 0.1}, {"stripes", 0.1}};
  spec.ranges["texture.mode"] = mode_range;
  return spec;
}

void validate_randomization_spec(const RandomizationSpec& spec) {
  for (const char* tag : kScalarTags)
    if (!spec.ranges.count(tag)) throw invalid_spec(std::string("missing range for `") + tag + "`");
  if (!spec.ranges.count("texture.mode")) throw invalid_spec("missing range for `texture.mode`");
  for (const auto& [tag, r] : spec.ranges) {
    bool known = tag == "texture.mode";
    for (const char* t : kScalarTags) known = known || tag == t;
    if (!known) throw invalid_spec("unknown configuration field `" + tag + "`");
    if (r.kind == ParamRange::Kind::uniform || r.kind == ParamRange::Kind::uniform_int) {
      if (!(r.lo <= r.hi)) throw invalid_spec("range lo > hi for `" + tag + "`");
    }
    if (r.kind == ParamRange::Kind::choice) {
      if (r.choices.empty()) throw invalid_spec("empty categorical list for `" + tag + "`");
      double total = 0.0;
      for (const auto& [name, w] : r.choices) {
        if (w < 0.0) throw invalid_spec("negative weight for `" + tag + "`");
        total += w;
      }
      if (!(total > 0.0)) throw invalid_spec("weights sum to zero for `" + tag + "`");
    }
  }
}

RenderConfig sample_config(const RandomizationSpec& spec, int64_t traversal_id,
                           int64_t frame_index) {
  validate_randomization_spec(spec);
  RenderConfig c;
  auto scalar = [&](const std::string& tag) {
    const ParamRange& r = spec.ranges.at(tag);
    return sample_scalar(r, field_key(spec, tag, traversal_id, frame_index), tag);
  };
  c.material.metallic = scalar("material.metallic");
  c.material.smoothness = scalar("material.smoothness");
  c.material.coat_mask = scalar("material.coat_mask");
  c.material.anisotropy = scalar("material.anisotropy");
  c.postfx.chromatic_aberration = scalar("postfx.chromatic_aberration");
  c.postfx.lens_intensity = scalar("postfx.lens_intensity");
  c.postfx.noise_enabled = scalar("postfx.noise_enabled") >= 0.5;
  c.light.intensity = scalar("light.intensity");
  c.light.color = {scalar("light.color.r"), scalar("light.color.g"), scalar("light.color.b")};
  c.camera.fov_deg = scalar("camera.fov_deg");
  c.camera.focal_length_mm = scalar("camera.focal_length_mm");
  c.camera.iso = scalar("camera.iso");
  c.camera.aperture_fnumber = scalar("camera.aperture_fnumber");
  c.camera.width = int(scalar("camera.width"));
  c.camera.height = int(scalar("camera.height"));
  c.texture.width = int(scalar("texture.width"));
  c.texture.height = int(scalar("texture.height"));
  c.texture.base_color_a = {scalar("texture.base_color_a.r"), scalar("texture.base_color_a.g"),
                            scalar("texture.base_color_a.b")};
  c.texture.base_color_b = {scalar("texture.base_color_b.r"), scalar("texture.base_color_b.g"),
                            scalar("texture.base_color_b.b")};
  c.texture.noise_octaves = int(scalar("texture.noise_octaves"));
  c.texture.noise_scale = scalar("texture.noise_scale");
  c.texture.vessel_density = scalar("texture.vessel_density");
  c.texture.seed = uint64_t(scalar("texture.seed"));
  c.texture.mode = texture_mode_from_string(
      sample_choice(spec.ranges.at("texture.mode"),
                    field_key(spec, "texture.mode", traversal_id, frame_index), "texture.mode"));
  validate_render_config(c);
  return c;
}

}  // namespace colosynth
