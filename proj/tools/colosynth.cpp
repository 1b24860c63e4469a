// colosynth: synthetic colonoscopy dataset generator.
//
// Turns a binary colon segmentation into rendered fly-through frames with
// ground-truth poses and metric depth maps. Subcommands expose the pipeline
// stages individually; `run` executes everything from one JSON config.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "colosynth/centerline.hpp"
#include "colosynth/dataset.hpp"
#include "colosynth/distance_field.hpp"
#include "colosynth/errors.hpp"
#include "colosynth/image.hpp"
#include "colosynth/mesh.hpp"
#include "colosynth/phantoms.hpp"
#include "colosynth/texture.hpp"
#include "colosynth/volume.hpp"

namespace fs = std::filesystem;
using namespace colosynth;

namespace {

VoxelIndex parse_voxel(const std::string& text, const std::string& flag) {
  VoxelIndex v{};
  if (std::sscanf(text.c_str(), "%d,%d,%d", &v[0], &v[1], &v[2]) != 3)
    throw invalid_spec(flag + " expects x,y,z");
  return v;
}

int cmd_run(const std::string& config_path) {
  PipelineConfig config = load_pipeline_config(config_path);
  DatasetManifest manifest = run_pipeline(config);
  std::cout << "wrote " << manifest.files.size() << " files to " << config.output_dir << "\n";
  return 0;
}

int cmd_centerline(const std::string& mask_path, const std::string& start_text,
                   const std::string& end_text, bool auto_ends, double lambda, double spacing,
                   const std::string& out_dir, const std::string& dump_dfb) {
  VoxelMask mask = load_mask(mask_path);
  DistanceField df = compute_edt(mask);
  if (!dump_dfb.empty())
    save_f32_volume(dump_dfb, df.nx, df.ny, df.nz, df.sx, df.sy, df.sz, df.dfb);
  VoxelIndex start{}, end{};
  if (auto_ends) {
    std::tie(start, end) = auto_endpoints(df);
    std::cout << "auto endpoints: start " << start[0] << "," << start[1] << "," << start[2]
              << " end " << end[0] << "," << end[1] << "," << end[2] << "\n";
  } else {
    start = parse_voxel(start_text, "--start");
    end = parse_voxel(end_text, "--end");
  }
  Centerline cl = extract_centerline(df, start, end, lambda);
  WaypointPath wp = resample_waypoints(cl, spacing);

  fs::create_directories(out_dir);
  save_polyline_csv(cl.points, cl.arclength, (fs::path(out_dir) / "centerline.csv").string());
  std::vector<double> wp_arclen(wp.waypoints.size());
  for (size_t i = 0; i < wp.waypoints.size(); ++i) wp_arclen[i] = double(i) * wp.spacing_mm;
  save_polyline_csv(wp.waypoints, wp_arclen, (fs::path(out_dir) / "waypoints.csv").string());
  std::cout << "centerline: " << cl.points.size() << " points, " << cl.total_length()
            << " mm; waypoints: " << wp.waypoints.size() << " at " << wp.spacing_mm << " mm\n";
  return 0;
}

int cmd_unwrap(const std::string& mask_path, const std::string& centerline_path,
               const std::string& out_path, double iso, int smooth_iterations,
               double smooth_step) {
  VoxelMask mask = load_mask(mask_path);
  Centerline cl;
  load_polyline_csv(centerline_path, cl.points, cl.arclength);
  TriMesh mesh = marching_cubes(mask, iso);
  mesh = smooth_mesh(mesh, smooth_iterations, smooth_step);
  mesh = orient_inward(mesh, cl);
  mesh = unwrap_uv(mesh, build_frames(cl));
  save_obj(mesh, out_path);
  std::cout << "mesh: " << mesh.vertices.size() << " vertices, " << mesh.triangles.size()
            << " triangles -> " << out_path << "\n";
  return 0;
}

int cmd_texture(const std::string& spec_path, const std::string& out_path) {
  std::ifstream in(spec_path);
  if (!in) throw missing_file(spec_path);
  nlohmann::json j;
  in >> j;
  TextureSpec spec = texture_spec_from_json(j);
  TextureImage tex = generate_texture(spec);
  write_png(tex, out_path);
  std::cout << "texture " << tex.width << "x" << tex.height << " -> " << out_path << "\n";
  return 0;
}

int cmd_render_pose(const std::string& config_path, int64_t pose_index, int variants) {
  PipelineConfig config = load_pipeline_config(config_path);
  DatasetManifest manifest = run_same_pose_grid(config, pose_index, variants);
  std::cout << "wrote " << manifest.files.size() << " files to " << config.output_dir << "\n";
  return 0;
}

int cmd_phantom(const std::string& shape, const std::string& out_path, int radius, int length,
                double spacing, double tube_radius, double arm) {
  VoxelMask mask;
  if (shape == "cylinder") {
    mask = make_cylinder_phantom(radius, length, spacing).mask;
  } else if (shape == "sphere") {
    mask = make_ball_phantom(radius, spacing).mask;
  } else if (shape == "bend") {
    mask = make_lbend_phantom(arm, tube_radius, spacing).mask;
  } else if (shape == "helix") {
    mask = make_helix_phantom(10.0, 20.0, 2.0, tube_radius, spacing).mask;
  } else {
    throw invalid_spec("unknown phantom shape `" + shape + "`");
  }
  save_mask(mask, out_path);
  std::cout << "phantom " << shape << ": " << mask.nx << "x" << mask.ny << "x" << mask.nz << ", "
            << mask.foreground_count() << " foreground voxels -> " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"colosynth: synthetic colonoscopy dataset generator"};
  app.require_subcommand(1);

  std::string config_path, mask_path, centerline_path, out_path, spec_path, dump_dfb;
  std::string start_text, end_text, shape;
  bool auto_ends = false;
  double lambda = 2.0, spacing = 5.0, iso = 0.5, smooth_step = 0.5;
  double phantom_spacing = 1.0, tube_radius = 5.0, arm = 30.0;
  int smooth_iterations = 10, variants = 4, radius = 5, length = 40;
  int64_t pose_index = 0;

  CLI::App* run = app.add_subcommand("run", "run the full pipeline from a JSON config");
  run->add_option("config", config_path, "pipeline config JSON")->required();

  CLI::App* cl = app.add_subcommand("centerline", "extract centerline and waypoints");
  cl->add_option("--mask", mask_path, "input mask (.mhdr or .nrrd)")->required();
  cl->add_option("--start", start_text, "start voxel x,y,z");
  cl->add_option("--end", end_text, "end voxel x,y,z");
  cl->add_flag("--auto", auto_ends, "pick endpoints by geodesic sweep");
  cl->add_option("--lambda", lambda, "wall-distance penalty exponent");
  cl->add_option("--spacing", spacing, "waypoint spacing in mm");
  cl->add_option("--dump-dfb", dump_dfb, "write the distance field as an f32 volume");
  cl->add_option("-o,--out", out_path, "output directory")->required();

  CLI::App* unwrap = app.add_subcommand("unwrap", "build the unwrapped interior mesh");
  unwrap->add_option("--mask", mask_path, "input mask")->required();
  unwrap->add_option("--centerline", centerline_path, "centerline CSV")->required();
  unwrap->add_option("--iso", iso, "isosurface threshold");
  unwrap->add_option("--smooth-iterations", smooth_iterations, "Laplacian passes");
  unwrap->add_option("--smooth-step", smooth_step, "Laplacian step in (0,1)");
  unwrap->add_option("-o,--out", out_path, "output OBJ path")->required();

  CLI::App* tex = app.add_subcommand("texture", "generate a procedural texture");
  tex->add_option("--spec", spec_path, "texture spec JSON")->required();
  tex->add_option("-o,--out", out_path, "output PNG path")->required();

  CLI::App* rp = app.add_subcommand("render-pose", "same-pose variant grid");
  rp->add_option("--config", config_path, "pipeline config JSON")->required();
  rp->add_option("--pose-index", pose_index, "traversal pose index")->required();
  rp->add_option("--variants", variants, "number of variants (>= 2)");

  CLI::App* ph = app.add_subcommand("phantom", "write an analytic test mask");
  ph->add_option("shape", shape, "cylinder|sphere|bend|helix")->required();
  ph->add_option("--radius", radius, "radius in voxels (cylinder/sphere)");
  ph->add_option("--length", length, "length in voxels (cylinder)");
  ph->add_option("--tube-radius", tube_radius, "tube radius in mm (bend/helix)");
  ph->add_option("--arm", arm, "arm length in mm (bend)");
  ph->add_option("--spacing", phantom_spacing, "voxel spacing in mm");
  ph->add_option("-o,--out", out_path, "output .mhdr path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) return cmd_run(config_path);
    if (cl->parsed()) {
      if (!auto_ends && (start_text.empty() || end_text.empty()))
        throw invalid_spec("either --auto or both --start and --end are required");
      return cmd_centerline(mask_path, start_text, end_text, auto_ends, lambda, spacing,
                            out_path, dump_dfb);
    }
    if (unwrap->parsed())
      return cmd_unwrap(mask_path, centerline_path, out_path, iso, smooth_iterations, smooth_step);
    if (tex->parsed()) return cmd_texture(spec_path, out_path);
    if (rp->parsed()) return cmd_render_pose(config_path, pose_index, variants);
    if (ph->parsed())
      return cmd_phantom(shape, out_path, radius, length, phantom_spacing, tube_radius, arm);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
