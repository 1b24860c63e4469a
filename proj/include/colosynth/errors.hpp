#pragma once

#include <stdexcept>
#include <string>

namespace colosynth {

// Error families map 1:1 to CLI exit codes.
enum class ErrorFamily : int {
  config = 2,
  io = 3,
  validation = 4,
  geometry = 5,
  render = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorFamily family, std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), family_(family), code_(std::move(code)) {}

  ErrorFamily family() const { return family_; }
  const std::string& code() const { return code_; }
  int exit_code() const { return static_cast<int>(family_); }

 private:
  ErrorFamily family_;
  std::string code_;
};

inline Error missing_file(const std::string& path) {
  return Error(ErrorFamily::io, "MissingFile", path);
}
inline Error io_failure(const std::string& what) {
  return Error(ErrorFamily::io, "IoFailure", what);
}
inline Error malformed_header(const std::string& what) {
  return Error(ErrorFamily::validation, "MalformedHeader", what);
}
inline Error size_mismatch(const std::string& what) {
  return Error(ErrorFamily::validation, "SizeMismatch", what);
}
inline Error invalid_spec(const std::string& what) {
  return Error(ErrorFamily::validation, "InvalidSpec", what);
}
inline Error empty_mask() {
  return Error(ErrorFamily::geometry, "EmptyMask", "mask has no foreground voxels");
}
inline Error endpoint_in_background(const std::string& which) {
  return Error(ErrorFamily::geometry, "EndpointInBackground", which);
}
inline Error disconnected(const std::string& what) {
  return Error(ErrorFamily::geometry, "Disconnected", what);
}
inline Error degenerate_centerline(const std::string& what) {
  return Error(ErrorFamily::geometry, "DegenerateCenterline", what);
}
inline Error too_few_waypoints(const std::string& what) {
  return Error(ErrorFamily::geometry, "TooFewWaypoints", what);
}
inline Error pose_index_out_of_range(const std::string& what) {
  return Error(ErrorFamily::geometry, "PoseIndexOutOfRange", what);
}
inline Error mesh_without_uvs() {
  return Error(ErrorFamily::render, "MeshWithoutUVs", "mesh has no texture coordinates");
}
inline Error non_finite_camera() {
  return Error(ErrorFamily::render, "NonFiniteCamera", "camera pose has non-finite components");
}

}  // namespace colosynth
