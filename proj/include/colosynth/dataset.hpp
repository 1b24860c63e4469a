#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "colosynth/image.hpp"
#include "colosynth/randomizer.hpp"
#include "colosynth/trajectory.hpp"
#include "colosynth/volume.hpp"

namespace colosynth {

struct MeshParams {
  double iso = 0.5;
  int smooth_iterations = 10;
  double smooth_step = 0.5;
};

// Aggregated pipeline parameters, parsed from a single JSON document. All
// defaults come from default_config() and the module defaults.
struct PipelineConfig {
  std::string mask_path;
  std::string output_dir = "out";
  bool endpoints_auto = true;
  VoxelIndex start{0, 0, 0}, end{0, 0, 0};
  double lambda = 2.0;
  double waypoint_spacing_mm = 5.0;
  MeshParams mesh;
  TraversalTiming timing;
  int image_width = 256, image_height = 256;
  int texture_width = 256, texture_height = 256;
  int traversals = 1;
  int64_t max_frames_per_traversal = 0;  // 0 = full traversal
  uint64_t master_seed = 1;
  RandomizationSpec randomization;
  nlohmann::json source_json;  // embedded verbatim in the manifest
};

PipelineConfig pipeline_config_from_json(const nlohmann::json& j);
PipelineConfig load_pipeline_config(const std::string& path);

nlohmann::json render_config_to_json(const RenderConfig& config);
RenderConfig render_config_from_json(const nlohmann::json& j);
nlohmann::json texture_spec_to_json(const TextureSpec& spec);
TextureSpec texture_spec_from_json(const nlohmann::json& j);
nlohmann::json randomization_spec_to_json(const RandomizationSpec& spec);

struct TraversalEntry {
  int64_t traversal_id = 0;
  int64_t frame_count = 0;
  std::string pose_log;
};

struct DatasetManifest {
  nlohmann::json config;
  std::string mask_sha256, centerline_sha256, mesh_sha256;
  std::vector<TraversalEntry> traversals;
  std::map<std::string, std::string> files;  // relative path -> sha256
  std::string created_at;                    // the single volatile field
};

nlohmann::json manifest_to_json(const DatasetManifest& m);

// Full pipeline: mask -> EDT -> centerline -> waypoints -> mesh -> spline ->
// poses -> one frame per pose per traversal. Geometry stages are cached by
// input hashes; reruns with matching keys reload the stage files instead of
// recomputing (and always produce the same downstream bytes, because fresh
// runs also round-trip each artifact through its file form).
DatasetManifest run_pipeline(const PipelineConfig& config);

// Renders n_variants frames at one traversal pose with per-frame sampled
// configs. The camera geometry is pinned across variants so depth maps are
// bit-identical; appearance parameters vary. Emits a contact sheet.
DatasetManifest run_same_pose_grid(const PipelineConfig& config, int64_t pose_index,
                                   int n_variants);

ImageRGB make_contact_sheet(const std::vector<ImageRGB>& images);

}  // namespace colosynth
