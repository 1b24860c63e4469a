#include "colosynth/dataset.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "colosynth/centerline.hpp"
#include "colosynth/distance_field.hpp"
#include "colosynth/errors.hpp"
#include "colosynth/hashing.hpp"
#include "colosynth/mesh.hpp"
#include "colosynth/sha256.hpp"
#include "colosynth/texture.hpp"

namespace colosynth {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

template <typename Fn>
auto run_stage(const char* stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.family(), e.code(), std::string(stage) + ": " + e.what());
  }
}

json param_range_to_json(const ParamRange& r) {
  json j;
  switch (r.kind) {
    case ParamRange::Kind::fixed:
      j["fixed"] = r.fixed_value;
      break;
    case ParamRange::Kind::uniform:
      j["uniform"] = {r.lo, r.hi};
      break;
    case ParamRange::Kind::uniform_int:
      j["uniform_int"] = {int64_t(r.lo), int64_t(r.hi)};
      break;
    case ParamRange::Kind::choice: {
      json c = json::object();
      for (const auto& [name, w] : r.choices) c[name] = w;
      j["choice"] = c;
      break;
    }
  }
  return j;
}

ParamRange param_range_from_json(const json& j, const std::string& tag) {
  if (!j.is_object() || j.size() != 1)
    throw invalid_spec("range for `" + tag + "` must be exactly one of fixed/uniform/uniform_int/choice");
  ParamRange r;
  if (j.contains("fixed")) {
    r.kind = ParamRange::Kind::fixed;
    r.fixed_value = j.at("fixed").get<double>();
  } else if (j.contains("uniform")) {
    r.kind = ParamRange::Kind::uniform;
    r.lo = j.at("uniform").at(0).get<double>();
    r.hi = j.at("uniform").at(1).get<double>();
  } else if (j.contains("uniform_int")) {
    r.kind = ParamRange::Kind::uniform_int;
    r.lo = double(j.at("uniform_int").at(0).get<int64_t>());
    r.hi = double(j.at("uniform_int").at(1).get<int64_t>());
  } else if (j.contains("choice")) {
    r.kind = ParamRange::Kind::choice;
    for (const auto& [name, w] : j.at("choice").items())
      r.choices.emplace_back(name, w.get<double>());
  } else {
    throw invalid_spec("unknown range kind for `" + tag + "`");
  }
  return r;
}

std::string iso_timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

}  // namespace

json texture_spec_to_json(const TextureSpec& spec) {
  return json{{"mode", to_string(spec.mode)},
              {"width", spec.width},
              {"height", spec.height},
              {"base_color_a", spec.base_color_a},
              {"base_color_b", spec.base_color_b},
              {"noise_octaves", spec.noise_octaves},
              {"noise_scale", spec.noise_scale},
              {"vessel_density", spec.vessel_density},
              {"seed", spec.seed}};
}

TextureSpec texture_spec_from_json(const json& j) {
  TextureSpec spec;
  if (j.contains("mode")) spec.mode = texture_mode_from_string(j.at("mode").get<std::string>());
  spec.width = j.value("width", spec.width);
  spec.height = j.value("height", spec.height);
  if (j.contains("base_color_a")) spec.base_color_a = j.at("base_color_a").get<std::array<double, 3>>();
  if (j.contains("base_color_b")) spec.base_color_b = j.at("base_color_b").get<std::array<double, 3>>();
  spec.noise_octaves = j.value("noise_octaves", spec.noise_octaves);
  spec.noise_scale = j.value("noise_scale", spec.noise_scale);
  spec.vessel_density = j.value("vessel_density", spec.vessel_density);
  spec.seed = j.value("seed", spec.seed);
  validate_texture_spec(spec);
  return spec;
}

json render_config_to_json(const RenderConfig& c) {
  return json{
      {"texture", texture_spec_to_json(c.texture)},
      {"material",
       {{"metallic", c.material.metallic},
        {"smoothness", c.material.smoothness},
        {"coat_mask", c.material.coat_mask},
        {"anisotropy", c.material.anisotropy}}},
      {"postfx",
       {{"chromatic_aberration", c.postfx.chromatic_aberration},
        {"lens_intensity", c.postfx.lens_intensity},
        {"noise_enabled", c.postfx.noise_enabled}}},
      {"light", {{"intensity", c.light.intensity}, {"color", c.light.color}}},
      {"camera",
       {{"fov_deg", c.camera.fov_deg},
        {"focal_length_mm", c.camera.focal_length_mm},
        {"width", c.camera.width},
        {"height", c.camera.height},
        {"iso", c.camera.iso},
        {"aperture_fnumber", c.camera.aperture_fnumber}}}};
}

RenderConfig render_config_from_json(const json& j) {
  RenderConfig c;
  if (j.contains("texture")) c.texture = texture_spec_from_json(j.at("texture"));
  if (j.contains("material")) {
    const json& m = j.at("material");
    c.material.metallic = m.value("metallic", c.material.metallic);
    c.material.smoothness = m.value("smoothness", c.material.smoothness);
    c.material.coat_mask = m.value("coat_mask", c.material.coat_mask);
    c.material.anisotropy = m.value("anisotropy", c.material.anisotropy);
  }
  if (j.contains("postfx")) {
    const json& p = j.at("postfx");
    c.postfx.chromatic_aberration = p.value("chromatic_aberration", c.postfx.chromatic_aberration);
    c.postfx.lens_intensity = p.value("lens_intensity", c.postfx.lens_intensity);
    c.postfx.noise_enabled = p.value("noise_enabled", c.postfx.noise_enabled);
  }
  if (j.contains("light")) {
    const json& l = j.at("light");
    c.light.intensity = l.value("intensity", c.light.intensity);
    if (l.contains("color")) c.light.color = l.at("color").get<std::array<double, 3>>();
  }
  if (j.contains("camera")) {
    const json& cam = j.at("camera");
    c.camera.fov_deg = cam.value("fov_deg", c.camera.fov_deg);
    c.camera.focal_length_mm = cam.value("focal_length_mm", c.camera.focal_length_mm);
    c.camera.width = cam.value("width", c.camera.width);
    c.camera.height = cam.value("height", c.camera.height);
    c.camera.iso = cam.value("iso", c.camera.iso);
    c.camera.aperture_fnumber = cam.value("aperture_fnumber", c.camera.aperture_fnumber);
  }
  validate_render_config(c);
  return c;
}

json randomization_spec_to_json(const RandomizationSpec& spec) {
  json ranges = json::object();
  for (const auto& [tag, r] : spec.ranges) ranges[tag] = param_range_to_json(r);
  return json{{"mode", to_string(spec.mode)}, {"ranges", ranges}};
}

PipelineConfig pipeline_config_from_json(const json& j) {
  PipelineConfig c;
  c.source_json = j;
  if (!j.contains("mask")) throw invalid_spec("config requires a `mask` path");
  c.mask_path = j.at("mask").get<std::string>();
  c.output_dir = j.value("output_dir", c.output_dir);

  if (j.contains("endpoints")) {
    const json& e = j.at("endpoints");
    if (e.is_string() && e.get<std::string>() == "auto") {
      c.endpoints_auto = true;
    } else if (e.is_object()) {
      c.endpoints_auto = false;
      auto s = e.at("start").get<std::array<int, 3>>();
      auto t = e.at("end").get<std::array<int, 3>>();
      c.start = {s[0], s[1], s[2]};
      c.end = {t[0], t[1], t[2]};
    } else {
      throw invalid_spec("`endpoints` must be \"auto\" or {start, end}");
    }
  }
  c.lambda = j.value("lambda", c.lambda);
  c.waypoint_spacing_mm = j.value("waypoint_spacing_mm", c.waypoint_spacing_mm);
  if (j.contains("mesh")) {
    const json& m = j.at("mesh");
    c.mesh.iso = m.value("iso", c.mesh.iso);
    c.mesh.smooth_iterations = m.value("smooth_iterations", c.mesh.smooth_iterations);
    c.mesh.smooth_step = m.value("smooth_step", c.mesh.smooth_step);
  }
  if (j.contains("timing")) {
    const json& t = j.at("timing");
    c.timing.speed_mm_s = t.value("speed_mm_s", c.timing.speed_mm_s);
    c.timing.fps = t.value("fps", c.timing.fps);
    c.timing.lookahead_mm = t.value("lookahead_mm", c.timing.lookahead_mm);
  }
  if (j.contains("image")) {
    c.image_width = j.at("image").value("width", c.image_width);
    c.image_height = j.at("image").value("height", c.image_height);
  }
  if (j.contains("texture")) {
    c.texture_width = j.at("texture").value("width", c.texture_width);
    c.texture_height = j.at("texture").value("height", c.texture_height);
  }
  c.traversals = j.value("traversals", c.traversals);
  c.max_frames_per_traversal = j.value("max_frames_per_traversal", c.max_frames_per_traversal);
  c.master_seed = j.value("master_seed", c.master_seed);

  if (c.traversals < 1) throw invalid_spec("traversals must be >= 1");
  if (c.max_frames_per_traversal < 0) throw invalid_spec("max_frames_per_traversal must be >= 0");
  if (!(c.lambda >= 0.0)) throw invalid_spec("lambda must be >= 0");

  RenderConfig base = default_config();
  base.camera.width = c.image_width;
  base.camera.height = c.image_height;
  base.texture.width = c.texture_width;
  base.texture.height = c.texture_height;

  std::string base_kind = "example";
  json overrides = json::object();
  if (j.contains("randomization")) {
    const json& r = j.at("randomization");
    c.randomization.mode =
        randomization_mode_from_string(r.value("mode", std::string("per_frame")));
    base_kind = r.value("base", base_kind);
    if (r.contains("ranges")) overrides = r.at("ranges");
  }
  RandomizationSpec spec = base_kind == "fixed" ? fixed_randomization_spec(base)
                                                : default_randomization_spec(base);
  spec.mode = c.randomization.mode;
  spec.master_seed = c.master_seed;
  for (const auto& [tag, rj] : overrides.items()) spec.ranges[tag] = param_range_from_json(rj, tag);
  validate_randomization_spec(spec);
  c.randomization = spec;
  return c;
}

PipelineConfig load_pipeline_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw missing_file(path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorFamily::config, "BadConfig", path + ": " + e.what());
  }
  try {
    return pipeline_config_from_json(j);
  } catch (const json::exception& e) {
    throw Error(ErrorFamily::config, "BadConfig", path + ": " + e.what());
  }
}

json manifest_to_json(const DatasetManifest& m) {
  json traversals = json::array();
  for (const auto& t : m.traversals)
    traversals.push_back({{"traversal_id", t.traversal_id},
                          {"frame_count", t.frame_count},
                          {"pose_log", t.pose_log}});
  return json{{"created_at", m.created_at},
              {"config", m.config},
              {"provenance",
               {{"mask_sha256", m.mask_sha256},
                {"centerline_sha256", m.centerline_sha256},
                {"mesh_sha256", m.mesh_sha256}}},
              {"traversals", traversals},
              {"files", m.files}};
}

namespace {

struct GeometryStage {
  Centerline centerline;
  WaypointPath waypoints;
  TriMesh mesh;
  std::string mask_sha, centerline_sha, mesh_sha;
  std::vector<std::string> files;  // relative artifact paths
};

std::string read_text_if_exists(const fs::path& p) {
  std::ifstream in(p);
  if (!in) return {};
  std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return s;
}

void write_text(const fs::path& p, const std::string& s) {
  std::ofstream out(p);
  if (!out) throw io_failure("cannot open " + p.string());
  out << s;
  if (!out) throw io_failure("write failed on " + p.string());
}

// Geometry stages with key-file caching. Fresh computations are written and
// reloaded so cold and warm runs feed identical bytes downstream.
GeometryStage run_geometry(const PipelineConfig& config) {
  GeometryStage stage;
  fs::create_directories(config.output_dir);
  const fs::path out_dir(config.output_dir);

  VoxelMask mask = run_stage("load_mask", [&] { return load_mask(config.mask_path); });
  stage.mask_sha = sha256_file_hex(config.mask_path);

  char key_buf[256];
  std::snprintf(key_buf, sizeof(key_buf), "mask=%s lambda=%.9g spacing=%.9g endpoints=%s %d,%d,%d %d,%d,%d",
                stage.mask_sha.c_str(), config.lambda, config.waypoint_spacing_mm,
                config.endpoints_auto ? "auto" : "manual", config.start[0], config.start[1],
                config.start[2], config.end[0], config.end[1], config.end[2]);
  const std::string centerline_key = key_buf;

  const fs::path cl_path = out_dir / "centerline.csv";
  const fs::path wp_path = out_dir / "waypoints.csv";
  const fs::path cl_key_path = out_dir / "centerline.key";

  bool cl_cached = read_text_if_exists(cl_key_path) == centerline_key && fs::exists(cl_path) &&
                   fs::exists(wp_path);
  if (!cl_cached) {
    DistanceField df = run_stage("distance_field", [&] { return compute_edt(mask); });
    Centerline cl = run_stage("centerline", [&] {
      VoxelIndex s = config.start, e = config.end;
      if (config.endpoints_auto) std::tie(s, e) = auto_endpoints(df);
      return extract_centerline(df, s, e, config.lambda);
    });
    WaypointPath wp =
        run_stage("waypoints", [&] { return resample_waypoints(cl, config.waypoint_spacing_mm); });
    save_polyline_csv(cl.points, cl.arclength, cl_path.string());
    std::vector<double> wp_arclen(wp.waypoints.size());
    for (size_t i = 0; i < wp.waypoints.size(); ++i) wp_arclen[i] = double(i) * wp.spacing_mm;
    save_polyline_csv(wp.waypoints, wp_arclen, wp_path.string());
    write_text(cl_key_path, centerline_key);
  }
  load_polyline_csv(cl_path.string(), stage.centerline.points, stage.centerline.arclength);
  {
    std::vector<double> arclen;
    load_polyline_csv(wp_path.string(), stage.waypoints.waypoints, arclen);
    stage.waypoints.spacing_mm = arclen.size() > 1 ? arclen[1] - arclen[0] : 0.0;
  }
  stage.centerline_sha = sha256_file_hex(cl_path.string());

  std::snprintf(key_buf, sizeof(key_buf), "mask=%s centerline=%s iso=%.9g smooth=%d,%.9g",
                stage.mask_sha.c_str(), stage.centerline_sha.c_str(), config.mesh.iso,
                config.mesh.smooth_iterations, config.mesh.smooth_step);
  const std::string mesh_key = key_buf;
  const fs::path mesh_path = out_dir / "mesh.obj";
  const fs::path mesh_key_path = out_dir / "mesh.key";

  bool mesh_cached = read_text_if_exists(mesh_key_path) == mesh_key && fs::exists(mesh_path);
  if (!mesh_cached) {
    TriMesh mesh = run_stage("mesh", [&] {
      TriMesh m = marching_cubes(mask, config.mesh.iso);
      m = smooth_mesh(m, config.mesh.smooth_iterations, config.mesh.smooth_step);
      m = orient_inward(m, stage.centerline);
      CenterlineFrameField frames = build_frames(stage.centerline);
      return unwrap_uv(m, frames);
    });
    save_obj(mesh, mesh_path.string());
    write_text(mesh_key_path, mesh_key);
  }
  stage.mesh = run_stage("mesh", [&] { return load_obj(mesh_path.string()); });
  stage.mesh_sha = sha256_file_hex(mesh_path.string());

  stage.files = {"centerline.csv", "centerline.key", "waypoints.csv", "mesh.obj", "mesh.key"};
  return stage;
}

void write_frame_outputs(const fs::path& dir, int64_t frame, const FramePacket& packet) {
  char name[32];
  std::snprintf(name, sizeof(name), "frame_%06lld.png", static_cast<long long>(frame));
  write_png(packet.rgb, (dir / name).string());
  std::snprintf(name, sizeof(name), "frame_%06lld.pfm", static_cast<long long>(frame));
  write_pfm(packet.depth, (dir / name).string());
}

void finish_manifest(DatasetManifest& manifest, const PipelineConfig& config,
                     const std::vector<std::string>& files) {
  manifest.created_at = iso_timestamp();
  for (const std::string& rel : files)
    manifest.files[rel] = sha256_file_hex((fs::path(config.output_dir) / rel).string());
  json j = manifest_to_json(manifest);
  write_text(fs::path(config.output_dir) / "manifest.json", j.dump(2) + "\n");
}

}  // namespace

DatasetManifest run_pipeline(const PipelineConfig& config) {
  GeometryStage geo = run_geometry(config);

  ContinuousPath path = run_stage("spline", [&] { return build_spline(geo.waypoints); });
  std::vector<Pose> poses =
      run_stage("trajectory", [&] { return generate_poses(path, config.timing); });
  if (config.max_frames_per_traversal > 0 &&
      int64_t(poses.size()) > config.max_frames_per_traversal)
    poses.resize(size_t(config.max_frames_per_traversal));

  Raytracer tracer = run_stage("render", [&] { return Raytracer(geo.mesh); });

  DatasetManifest manifest;
  manifest.config = config.source_json.is_null() ? json::object() : config.source_json;
  manifest.mask_sha256 = geo.mask_sha;
  manifest.centerline_sha256 = geo.centerline_sha;
  manifest.mesh_sha256 = geo.mesh_sha;

  std::vector<std::string> files = geo.files;
  for (int trav = 0; trav < config.traversals; ++trav) {
    char trav_name[32];
    std::snprintf(trav_name, sizeof(trav_name), "traversal_%d", trav);
    fs::path trav_dir = fs::path(config.output_dir) / trav_name;
    fs::create_directories(trav_dir);

    std::ofstream params(trav_dir / "params.jsonl");
    if (!params) throw io_failure("cannot open " + (trav_dir / "params.jsonl").string());

    TextureImage texture;
    TextureSpec texture_spec;
    bool have_texture = false;
    for (int64_t k = 0; k < int64_t(poses.size()); ++k) {
      RenderConfig rc = run_stage(
          "randomizer", [&] { return sample_config(config.randomization, trav, k); });
      if (!have_texture || !(rc.texture == texture_spec)) {
        texture = run_stage("texture", [&] { return generate_texture(rc.texture); });
        texture_spec = rc.texture;
        have_texture = true;
      }
      uint64_t frame_seed = hash_key(config.master_seed, uint64_t(trav), uint64_t(k));
      FramePacket packet = run_stage("render", [&] {
        return tracer.render(texture, poses[size_t(k)], rc.camera, rc.material, rc.postfx,
                             rc.light, frame_seed, k);
      });
      packet.config = rc;
      write_frame_outputs(trav_dir, k, packet);

      json line = {{"frame", k},
                   {"t_sec", double(k) / config.timing.fps},
                   {"pose",
                    {{"position", {poses[size_t(k)].position.x, poses[size_t(k)].position.y,
                                   poses[size_t(k)].position.z}},
                     {"quaternion", {poses[size_t(k)].orientation.w, poses[size_t(k)].orientation.x,
                                     poses[size_t(k)].orientation.y,
                                     poses[size_t(k)].orientation.z}}}},
                   {"config", render_config_to_json(rc)}};
      params << line.dump() << "\n";

      char name[32];
      std::snprintf(name, sizeof(name), "frame_%06lld.png", static_cast<long long>(k));
      files.push_back(std::string(trav_name) + "/" + name);
      std::snprintf(name, sizeof(name), "frame_%06lld.pfm", static_cast<long long>(k));
      files.push_back(std::string(trav_name) + "/" + name);
    }
    params.close();

    save_pose_log(poses, config.timing.fps, (trav_dir / "poses.csv").string());
    files.push_back(std::string(trav_name) + "/poses.csv");
    files.push_back(std::string(trav_name) + "/params.jsonl");
    manifest.traversals.push_back(
        {trav, int64_t(poses.size()), std::string(trav_name) + "/poses.csv"});
  }

  finish_manifest(manifest, config, files);
  return manifest;
}

DatasetManifest run_same_pose_grid(const PipelineConfig& config, int64_t pose_index,
                                   int n_variants) {
  if (n_variants < 2) throw invalid_spec("same-pose grid needs n_variants >= 2");

  GeometryStage geo = run_geometry(config);
  ContinuousPath path = run_stage("spline", [&] { return build_spline(geo.waypoints); });
  std::vector<Pose> poses =
      run_stage("trajectory", [&] { return generate_poses(path, config.timing); });
  if (pose_index < 0 || pose_index >= int64_t(poses.size()))
    throw pose_index_out_of_range("pose " + std::to_string(pose_index) + " of " +
                                  std::to_string(poses.size()));
  const Pose& pose = poses[size_t(pose_index)];

  Raytracer tracer = run_stage("render", [&] { return Raytracer(geo.mesh); });

  RandomizationSpec spec = config.randomization;
  spec.mode = RandomizationMode::per_frame;

  char dir_name[48];
  std::snprintf(dir_name, sizeof(dir_name), "same_pose_%06lld", static_cast<long long>(pose_index));
  fs::path grid_dir = fs::path(config.output_dir) / dir_name;
  fs::create_directories(grid_dir);

  DatasetManifest manifest;
  manifest.config = config.source_json.is_null() ? json::object() : config.source_json;
  manifest.mask_sha256 = geo.mask_sha;
  manifest.centerline_sha256 = geo.centerline_sha;
  manifest.mesh_sha256 = geo.mesh_sha;

  std::vector<std::string> files = geo.files;
  std::ofstream params(grid_dir / "params.jsonl");
  if (!params) throw io_failure("cannot open " + (grid_dir / "params.jsonl").string());

  std::vector<ImageRGB> rgbs;
  CameraIntrinsics pinned_camera;
  for (int k = 0; k < n_variants; ++k) {
    RenderConfig rc =
        run_stage("randomizer", [&] { return sample_config(spec, 0, pose_index * 65536 + k); });
    if (k == 0)
      pinned_camera = rc.camera;
    else
      rc.camera.fov_deg = pinned_camera.fov_deg;  // identical projection => identical depth
    rc.camera.width = pinned_camera.width;
    rc.camera.height = pinned_camera.height;

    TextureImage texture = run_stage("texture", [&] { return generate_texture(rc.texture); });
    uint64_t frame_seed = hash_key(config.master_seed, 0xf19b3ull, uint64_t(k));
    FramePacket packet = run_stage("render", [&] {
      return tracer.render(texture, pose, rc.camera, rc.material, rc.postfx, rc.light, frame_seed,
                           k);
    });

    char name[32];
    std::snprintf(name, sizeof(name), "variant_%03d.png", k);
    write_png(packet.rgb, (grid_dir / name).string());
    files.push_back(std::string(dir_name) + "/" + name);
    std::snprintf(name, sizeof(name), "variant_%03d.pfm", k);
    write_pfm(packet.depth, (grid_dir / name).string());
    files.push_back(std::string(dir_name) + "/" + name);

    json line = {{"variant", k}, {"pose_index", pose_index}, {"config", render_config_to_json(rc)}};
    params << line.dump() << "\n";
    rgbs.push_back(std::move(packet.rgb));
  }
  params.close();
  files.push_back(std::string(dir_name) + "/params.jsonl");

  ImageRGB sheet = make_contact_sheet(rgbs);
  write_png(sheet, (grid_dir / "contact_sheet.png").string());
  files.push_back(std::string(dir_name) + "/contact_sheet.png");

  manifest.traversals.push_back({0, n_variants, std::string(dir_name) + "/params.jsonl"});
  finish_manifest(manifest, config, files);
  return manifest;
}

ImageRGB make_contact_sheet(const std::vector<ImageRGB>& images) {
  if (images.empty()) throw invalid_spec("contact sheet needs at least one image");
  int w = images[0].width, h = images[0].height;
  for (const auto& img : images)
    if (img.width != w || img.height != h)
      throw invalid_spec("contact sheet images must share a resolution");
  const int gap = 2;
  ImageRGB sheet(int(images.size()) * (w + gap) - gap, h);
  for (size_t i = 0; i < images.size(); ++i) {
    int x0 = int(i) * (w + gap);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        const float* s = images[i].at(x, y);
        float* d = sheet.at(x0 + x, y);
        d[0] = s[0];
        d[1] = s[1];
        d[2] = s[2];
      }
  }
  return sheet;
}

}  // namespace colosynth
