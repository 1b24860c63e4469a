#include "colosynth/volume.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "colosynth/errors.hpp"

namespace colosynth {

namespace fs = std::filesystem;

std::string format_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

int64_t VoxelMask::foreground_count() const {
  int64_t n = 0;
  for (uint8_t v : data) n += v != 0;
  return n;
}

void validate_mask(const VoxelMask& mask) {
  if (mask.nx < 1 || mask.ny < 1 || mask.nz < 1)
    throw malformed_header("dims must be >= 1, got " + std::to_string(mask.nx) + " " +
                           std::to_string(mask.ny) + " " + std::to_string(mask.nz));
  if (!(mask.sx > 0.0) || !(mask.sy > 0.0) || !(mask.sz > 0.0))
    throw malformed_header("spacing must be positive");
  if (int64_t(mask.data.size()) != mask.voxel_count())
    throw size_mismatch("payload has " + std::to_string(mask.data.size()) + " bytes, expected " +
                        std::to_string(mask.voxel_count()));
}

namespace {

std::vector<uint8_t> read_all_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw missing_file(path);
  in.seekg(0, std::ios::end);
  std::streamoff size = in.tellg();
  in.seekg(0, std::ios::beg);
  std::vector<uint8_t> bytes(static_cast<size_t>(size), uint8_t{0});
  if (size > 0) in.read(reinterpret_cast<char*>(bytes.data()), size);
  if (!in) throw io_failure("short read on " + path);
  return bytes;
}

VoxelMask load_mhdr(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw missing_file(path);
  VoxelMask mask;
  std::string data_file;
  std::string line;
  bool have_dims = false, have_spacing = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key, eq;
    if (!(ls >> key)) continue;
    if (key[0] == '#') continue;
    if (!(ls >> eq) || eq != "=") throw malformed_header(path + ": expected `key = value`, got: " + line);
    if (key == "dims") {
      if (!(ls >> mask.nx >> mask.ny >> mask.nz)) throw malformed_header(path + ": bad dims line");
      have_dims = true;
    } else if (key == "spacing") {
      if (!(ls >> mask.sx >> mask.sy >> mask.sz)) throw malformed_header(path + ": bad spacing line");
      have_spacing = true;
    } else if (key == "data") {
      if (!(ls >> data_file)) throw malformed_header(path + ": bad data line");
    } else if (key == "dtype") {
      std::string dtype;
      ls >> dtype;
      if (dtype != "u8") throw malformed_header(path + ": mask payload must be u8, got " + dtype);
    }
  }
  if (!have_dims) throw malformed_header(path + ": missing dims");
  if (!have_spacing) throw malformed_header(path + ": missing spacing");
  if (data_file.empty()) throw malformed_header(path + ": missing data");
  fs::path raw_path = fs::path(path).parent_path() / data_file;
  mask.data = read_all_bytes(raw_path.string());
  validate_mask(mask);
  return mask;
}

VoxelMask load_nrrd(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw missing_file(path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("NRRD", 0) != 0)
    throw malformed_header(path + ": not a NRRD file");
  VoxelMask mask;
  bool have_sizes = false;
  int dimension = 0;
  std::string type, encoding = "raw";
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) break;  // header/data separator
    if (line[0] == '#') continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    std::string key = line.substr(0, colon);
    std::string value = line.substr(colon + 1);
    if (!value.empty() && value[0] == '=') value.erase(0, 1);  // key:= value (field vs keyword)
    std::istringstream vs(value);
    if (key == "type") {
      vs >> type;
    } else if (key == "dimension") {
      vs >> dimension;
    } else if (key == "sizes") {
      if (!(vs >> mask.nx >> mask.ny >> mask.nz)) throw malformed_header(path + ": bad sizes");
      have_sizes = true;
    } else if (key == "spacings") {
      if (!(vs >> mask.sx >> mask.sy >> mask.sz)) throw malformed_header(path + ": bad spacings");
    } else if (key == "space directions") {
      // Accept only axis-aligned diagonal directions.
      double m[3][3];
      char c;
      for (int i = 0; i < 3; ++i) {
        if (!(vs >> c) || c != '(') throw malformed_header(path + ": unsupported space directions");
        if (!(vs >> m[i][0] >> c >> m[i][1] >> c >> m[i][2] >> c))
          throw malformed_header(path + ": unsupported space directions");
      }
      if (m[0][1] != 0 || m[0][2] != 0 || m[1][0] != 0 || m[1][2] != 0 || m[2][0] != 0 || m[2][1] != 0)
        throw malformed_header(path + ": non-diagonal space directions are unsupported");
      mask.sx = std::abs(m[0][0]);
      mask.sy = std::abs(m[1][1]);
      mask.sz = std::abs(m[2][2]);
    } else if (key == "encoding") {
      vs >> encoding;
    }
  }
  if (dimension != 3) throw malformed_header(path + ": dimension must be 3");
  if (type != "uchar" && type != "uint8" && type != "uint8_t" && type != "unsigned char")
    throw malformed_header(path + ": payload type must be uint8, got `" + type + "`");
  if (encoding != "raw") throw malformed_header(path + ": only raw encoding is supported");
  if (!have_sizes) throw malformed_header(path + ": missing sizes");
  std::vector<char> rest((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  mask.data.assign(rest.begin(), rest.end());
  validate_mask(mask);
  return mask;
}

}  // namespace

VoxelMask load_mask(const std::string& path) {
  fs::path p(path);
  if (p.extension() == ".nrrd") return load_nrrd(path);
  return load_mhdr(path);
}

void save_mask(const VoxelMask& mask, const std::string& path) {
  validate_mask(mask);
  fs::path header_path(path);
  fs::path raw_path = header_path;
  raw_path.replace_extension(".raw");
  {
    std::ofstream out(header_path);
    if (!out) throw io_failure("cannot open " + path);
    out << "dims = " << mask.nx << " " << mask.ny << " " << mask.nz << "\n";
    out << "spacing = " << format_g9(mask.sx) << " " << format_g9(mask.sy) << " "
        << format_g9(mask.sz) << "\n";
    out << "dtype = u8\n";
    out << "data = " << raw_path.filename().string() << "\n";
    if (!out) throw io_failure("write failed on " + path);
  }
  std::ofstream raw(raw_path, std::ios::binary);
  if (!raw) throw io_failure("cannot open " + raw_path.string());
  raw.write(reinterpret_cast<const char*>(mask.data.data()), std::streamsize(mask.data.size()));
  if (!raw) throw io_failure("write failed on " + raw_path.string());
}

void save_f32_volume(const std::string& path, int nx, int ny, int nz, double sx, double sy,
                     double sz, const std::vector<double>& values) {
  if (int64_t(values.size()) != int64_t(nx) * ny * nz) throw size_mismatch("f32 dump size");
  fs::path header_path(path);
  fs::path raw_path = header_path;
  raw_path.replace_extension(".raw");
  {
    std::ofstream out(header_path);
    if (!out) throw io_failure("cannot open " + path);
    out << "dims = " << nx << " " << ny << " " << nz << "\n";
    out << "spacing = " << format_g9(sx) << " " << format_g9(sy) << " " << format_g9(sz) << "\n";
    out << "dtype = f32\n";
    out << "data = " << raw_path.filename().string() << "\n";
  }
  std::ofstream raw(raw_path, std::ios::binary);
  if (!raw) throw io_failure("cannot open " + raw_path.string());
  for (double v : values) {
    float f = float(v);
    static_assert(sizeof(float) == 4);
    raw.write(reinterpret_cast<const char*>(&f), 4);
  }
  if (!raw) throw io_failure("write failed on " + raw_path.string());
}

void save_pose_log(const std::vector<Pose>& poses, double fps, const std::string& path) {
  if (poses.empty()) throw invalid_spec("pose log requires at least one pose");
  if (!(fps > 0.0)) throw invalid_spec("fps must be positive");
  std::ofstream out(path);
  if (!out) throw io_failure("cannot open " + path);
  out << "frame,t_sec,px,py,pz,qw,qx,qy,qz\n";
  for (size_t k = 0; k < poses.size(); ++k) {
    const Pose& p = poses[k];
    out << k << "," << format_g9(double(k) / fps) << "," << format_g9(p.position.x) << ","
        << format_g9(p.position.y) << "," << format_g9(p.position.z) << ","
        << format_g9(p.orientation.w) << "," << format_g9(p.orientation.x) << ","
        << format_g9(p.orientation.y) << "," << format_g9(p.orientation.z) << "\n";
  }
  if (!out) throw io_failure("write failed on " + path);
}

std::vector<TimedPose> load_pose_log(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw missing_file(path);
  std::string line;
  if (!std::getline(in, line)) throw malformed_header(path + ": empty pose log");
  std::vector<TimedPose> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    for (char& c : line)
      if (c == ',') c = ' ';
    std::istringstream ls(line);
    TimedPose tp;
    if (!(ls >> tp.frame >> tp.t_sec >> tp.pose.position.x >> tp.pose.position.y >>
          tp.pose.position.z >> tp.pose.orientation.w >> tp.pose.orientation.x >>
          tp.pose.orientation.y >> tp.pose.orientation.z))
      throw malformed_header(path + ": bad pose row: " + line);
    out.push_back(tp);
  }
  return out;
}

void save_polyline_csv(const std::vector<WorldPoint>& points, const std::vector<double>& arclen,
                       const std::string& path) {
  if (points.size() != arclen.size()) throw size_mismatch("polyline points vs arclen");
  std::ofstream out(path);
  if (!out) throw io_failure("cannot open " + path);
  out << "index,arclen_mm,x,y,z\n";
  for (size_t i = 0; i < points.size(); ++i) {
    out << i << "," << format_g9(arclen[i]) << "," << format_g9(points[i].x) << ","
        << format_g9(points[i].y) << "," << format_g9(points[i].z) << "\n";
  }
  if (!out) throw io_failure("write failed on " + path);
}

void load_polyline_csv(const std::string& path, std::vector<WorldPoint>& points,
                       std::vector<double>& arclen) {
  std::ifstream in(path);
  if (!in) throw missing_file(path);
  points.clear();
  arclen.clear();
  std::string line;
  if (!std::getline(in, line)) throw malformed_header(path + ": empty polyline file");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    for (char& c : line)
      if (c == ',') c = ' ';
    std::istringstream ls(line);
    int64_t index;
    double s;
    WorldPoint p;
    if (!(ls >> index >> s >> p.x >> p.y >> p.z))
      throw malformed_header(path + ": bad polyline row: " + line);
    arclen.push_back(s);
    points.push_back(p);
  }
}

}  // namespace colosynth
