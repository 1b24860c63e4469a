#include "colosynth/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "colosynth/errors.hpp"
#include "colosynth/hashing.hpp"
#include "colosynth/parallel.hpp"

namespace colosynth {

namespace {

// Fixed once against the cylinder-interior calibration scene: stock defaults
// (ISO 200, f/16, intensity 1000) land at mean luminance 0.35 at 30 mm.
constexpr double kExposureConstant = 4.5;
constexpr double kAmbientFloor = 0.015;
constexpr double kCoatAlpha = 0.1;
constexpr double kCoatF0 = 0.04;
constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Aabb {
  Vec3 lo{kInfinity, kInfinity, kInfinity};
  Vec3 hi{-kInfinity, -kInfinity, -kInfinity};

  void grow(const Vec3& p) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
};

struct BvhNode {
  Aabb box;
  int left = -1, right = -1;  // internal children
  int first = 0, count = 0;   // leaf triangle range in tri_order
  bool leaf() const { return count > 0; }
};

struct Ray {
  Vec3 origin, dir, inv_dir;
};

double hit_aabb(const Ray& ray, const Aabb& box, double t_limit) {
  double tx1 = (box.lo.x - ray.origin.x) * ray.inv_dir.x;
  double tx2 = (box.hi.x - ray.origin.x) * ray.inv_dir.x;
  double tmin = std::min(tx1, tx2), tmax = std::max(tx1, tx2);
  double ty1 = (box.lo.y - ray.origin.y) * ray.inv_dir.y;
  double ty2 = (box.hi.y - ray.origin.y) * ray.inv_dir.y;
  tmin = std::max(tmin, std::min(ty1, ty2));
  tmax = std::min(tmax, std::max(ty1, ty2));
  double tz1 = (box.lo.z - ray.origin.z) * ray.inv_dir.z;
  double tz2 = (box.hi.z - ray.origin.z) * ray.inv_dir.z;
  tmin = std::max(tmin, std::min(tz1, tz2));
  tmax = std::min(tmax, std::max(tz1, tz2));
  if (tmax >= std::max(tmin, 0.0) && tmin < t_limit) return std::max(tmin, 0.0);
  return kInfinity;
}

struct Hit {
  double t = kInfinity;
  int tri = -1;
  double bu = 0.0, bv = 0.0;  // barycentrics of corners 1 and 2
};

}  // namespace

struct Raytracer::Impl {
  TriMesh mesh;
  std::vector<BvhNode> nodes;
  std::vector<int> tri_order;
  std::vector<Vec3> tangents;  // per triangle, along the u gradient

  void build();
  int build_node(int begin, int end, const std::vector<Vec3>& centroids);
  bool trace(const Ray& ray, Hit* hit) const;
  void intersect_tri(const Ray& ray, int tri, Hit* hit) const;
};

void Raytracer::Impl::intersect_tri(const Ray& ray, int tri_index, Hit* hit) const {
  const auto& tri = mesh.triangles[size_t(tri_index)];
  const Vec3& a = mesh.vertices[size_t(tri[0])];
  const Vec3& b = mesh.vertices[size_t(tri[1])];
  const Vec3& c = mesh.vertices[size_t(tri[2])];
  Vec3 e1 = b - a, e2 = c - a;
  Vec3 pvec = cross(ray.dir, e2);
  double det = dot(e1, pvec);
  if (std::abs(det) < 1e-14) return;
  double inv_det = 1.0 / det;
  Vec3 tvec = ray.origin - a;
  double u = dot(tvec, pvec) * inv_det;
  if (u < 0.0 || u > 1.0) return;
  Vec3 qvec = cross(tvec, e1);
  double v = dot(ray.dir, qvec) * inv_det;
  if (v < 0.0 || u + v > 1.0) return;
  double t = dot(e2, qvec) * inv_det;
  if (t > 1e-9 && t < hit->t) {
    hit->t = t;
    hit->tri = tri_index;
    hit->bu = u;
    hit->bv = v;
  }
}

int Raytracer::Impl::build_node(int begin, int end, const std::vector<Vec3>& centroids) {
  int index = int(nodes.size());
  nodes.emplace_back();
  Aabb box;
  for (int i = begin; i < end; ++i) {
    const auto& tri = mesh.triangles[size_t(tri_order[size_t(i)])];
    box.grow(mesh.vertices[size_t(tri[0])]);
    box.grow(mesh.vertices[size_t(tri[1])]);
    box.grow(mesh.vertices[size_t(tri[2])]);
  }
  nodes[size_t(index)].box = box;

  int count = end - begin;
  if (count <= 4) {
    nodes[size_t(index)].first = begin;
    nodes[size_t(index)].count = count;
    return index;
  }

  Vec3 extent = box.hi - box.lo;
  int axis = extent.y > extent.x ? 1 : 0;
  double widest = axis == 1 ? extent.y : extent.x;
  if (extent.z > widest) axis = 2;

  // Median split ordered by centroid then triangle index: deterministic.
  std::sort(tri_order.begin() + begin, tri_order.begin() + end, [&](int ta, int tb) {
    const Vec3 &pca = centroids[size_t(ta)], &pcb = centroids[size_t(tb)];
    double ca = axis == 0 ? pca.x : axis == 1 ? pca.y : pca.z;
    double cb = axis == 0 ? pcb.x : axis == 1 ? pcb.y : pcb.z;
    if (ca != cb) return ca < cb;
    return ta < tb;
  });
  int mid = begin + count / 2;
  int left = build_node(begin, mid, centroids);
  int right = build_node(mid, end, centroids);
  nodes[size_t(index)].left = left;
  nodes[size_t(index)].right = right;
  return index;
}

void Raytracer::Impl::build() {
  size_t n = mesh.triangles.size();
  if (n == 0) throw invalid_spec("cannot raytrace an empty mesh");
  tri_order.resize(n);
  for (size_t i = 0; i < n; ++i) tri_order[i] = int(i);

  std::vector<Vec3> centroids(n);
  for (size_t i = 0; i < n; ++i) {
    const auto& tri = mesh.triangles[i];
    centroids[i] = (mesh.vertices[size_t(tri[0])] + mesh.vertices[size_t(tri[1])] +
                    mesh.vertices[size_t(tri[2])]) /
                   3.0;
  }
  nodes.reserve(2 * n);
  build_node(0, int(n), centroids);

  tangents.resize(n);
  for (size_t i = 0; i < n; ++i) {
    const auto& tri = mesh.triangles[i];
    const Vec3& p0 = mesh.vertices[size_t(tri[0])];
    const Vec3& p1 = mesh.vertices[size_t(tri[1])];
    const Vec3& p2 = mesh.vertices[size_t(tri[2])];
    double du1 = mesh.uvs[size_t(tri[1])][0] - mesh.uvs[size_t(tri[0])][0];
    double dv1 = mesh.uvs[size_t(tri[1])][1] - mesh.uvs[size_t(tri[0])][1];
    double du2 = mesh.uvs[size_t(tri[2])][0] - mesh.uvs[size_t(tri[0])][0];
    double dv2 = mesh.uvs[size_t(tri[2])][1] - mesh.uvs[size_t(tri[0])][1];
    Vec3 e1 = p1 - p0, e2 = p2 - p0;
    double det = du1 * dv2 - du2 * dv1;
    Vec3 t = std::abs(det) > 1e-20 ? (e1 * dv2 - e2 * dv1) / det : e1;
    Vec3 tn = normalized(t);
    tangents[i] = length(tn) > 0.0 ? tn : Vec3{1, 0, 0};
  }
}

bool Raytracer::Impl::trace(const Ray& ray, Hit* hit) const {
  int stack[64];
  int sp = 0;
  stack[sp++] = 0;
  while (sp > 0) {
    const BvhNode& node = nodes[size_t(stack[--sp])];
    if (hit_aabb(ray, node.box, hit->t) == kInfinity) continue;
    if (node.leaf()) {
      for (int i = node.first; i < node.first + node.count; ++i)
        intersect_tri(ray, tri_order[size_t(i)], hit);
      continue;
    }
    double dl = hit_aabb(ray, nodes[size_t(node.left)].box, hit->t);
    double dr = hit_aabb(ray, nodes[size_t(node.right)].box, hit->t);
    if (dl <= dr) {
      if (dr != kInfinity && sp < 63) stack[sp++] = node.right;
      if (dl != kInfinity && sp < 63) stack[sp++] = node.left;
    } else {
      if (dl != kInfinity && sp < 63) stack[sp++] = node.left;
      if (dr != kInfinity && sp < 63) stack[sp++] = node.right;
    }
  }
  return hit->tri >= 0;
}

void validate_render_config(const RenderConfig& config) {
  validate_texture_spec(config.texture);
  const MaterialParams& m = config.material;
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!unit(m.metallic) || !unit(m.smoothness) || !unit(m.coat_mask) || !unit(m.anisotropy))
    throw invalid_spec("material parameters must lie in [0,1]");
  const PostFxParams& fx = config.postfx;
  if (!unit(fx.chromatic_aberration) || !unit(fx.lens_intensity))
    throw invalid_spec("post-fx parameters must lie in [0,1]");
  const LightParams& l = config.light;
  if (!(l.intensity >= 0.0)) throw invalid_spec("light intensity must be >= 0");
  for (double c : l.color)
    if (!(c >= 0.0)) throw invalid_spec("light color must be non-negative");
  const CameraIntrinsics& cam = config.camera;
  if (!(cam.fov_deg > 1.0 && cam.fov_deg < 179.0)) throw invalid_spec("fov_deg out of (1, 179)");
  if (!(cam.focal_length_mm > 0.0)) throw invalid_spec("focal length must be positive");
  if (cam.width < 1 || cam.height < 1) throw invalid_spec("image resolution must be >= 1");
  if (!(cam.iso > 0.0)) throw invalid_spec("iso must be positive");
  if (!(cam.aperture_fnumber > 0.0)) throw invalid_spec("aperture f-number must be positive");
}

namespace {

double ggx_aniso_d(const Vec3& h, const Vec3& n, const Vec3& t, const Vec3& b, double at,
                   double ab) {
  double hx = dot(h, t), hy = dot(h, b), hz = dot(h, n);
  if (hz <= 0.0) return 0.0;
  double d = hx * hx / (at * at) + hy * hy / (ab * ab) + hz * hz;
  return 1.0 / (kPi * at * ab * d * d);
}

double smith_lambda_aniso(const Vec3& v, const Vec3& n, const Vec3& t, const Vec3& b, double at,
                          double ab) {
  double vx = dot(v, t), vy = dot(v, b), vz = dot(v, n);
  if (vz <= 0.0) return 1e9;
  double a2 = (at * at * vx * vx + ab * ab * vy * vy) / (vz * vz);
  return 0.5 * (-1.0 + std::sqrt(1.0 + a2));
}

double ggx_iso_d(double nh, double alpha) {
  if (nh <= 0.0) return 0.0;
  double a2 = alpha * alpha;
  double d = nh * nh * (a2 - 1.0) + 1.0;
  return a2 / (kPi * d * d);
}

double smith_lambda_iso(double nv, double alpha) {
  if (nv <= 0.0) return 1e9;
  double a2 = alpha * alpha;
  double tan2 = (1.0 - nv * nv) / (nv * nv);
  return 0.5 * (-1.0 + std::sqrt(1.0 + a2 * tan2));
}

}  // namespace

Vec3 shade(const Vec3& hit_point, const Vec3& shading_normal, const Vec3& view_dir, double u,
           double v, const TextureImage& texture, const MaterialParams& mat,
           const LightParams& light, const Vec3& camera_pos, const Vec3& tangent,
           const Vec3& bitangent) {
  Vec3 to_light = camera_pos - hit_point;
  double d = length(to_light);
  if (d <= 0.0) return {0, 0, 0};
  Vec3 l = to_light / d;
  const Vec3& n = shading_normal;
  double nl = dot(n, l);
  if (nl <= 0.0) return {0, 0, 0};
  double nv = std::max(dot(n, view_dir), 1e-9);

  Vec3 albedo = sample_texture(texture, u, v);

  // Headlight: V == L, so the half vector is L as well.
  Vec3 h = normalized(l + view_dir);
  double lh = std::clamp(dot(l, h), 0.0, 1.0);
  double nh = dot(n, h);

  double alpha = std::max((1.0 - mat.smoothness) * (1.0 - mat.smoothness), 1e-4);
  double at = std::min(alpha * (1.0 + mat.anisotropy), 1.0);
  double ab = std::max(alpha / (1.0 + mat.anisotropy), 1e-5);

  Vec3 diffuse = (1.0 - mat.metallic) * albedo * (nl / kPi);

  Vec3 f0 = lerp(Vec3{0.04, 0.04, 0.04}, albedo, mat.metallic);
  double fres_w = std::pow(1.0 - lh, 5.0);
  Vec3 fresnel = f0 + (Vec3{1, 1, 1} - f0) * fres_w;
  double dist = ggx_aniso_d(h, n, tangent, bitangent, at, ab);
  double g = 1.0 / (1.0 + smith_lambda_aniso(view_dir, n, tangent, bitangent, at, ab) +
                    smith_lambda_aniso(l, n, tangent, bitangent, at, ab));
  Vec3 specular = fresnel * (dist * g / (4.0 * nv));

  double coat_f = kCoatF0 + (1.0 - kCoatF0) * fres_w;
  double coat_g = 1.0 / (1.0 + smith_lambda_iso(nv, kCoatAlpha) + smith_lambda_iso(nl, kCoatAlpha));
  double coat = mat.coat_mask * ggx_iso_d(nh, kCoatAlpha) * coat_f * coat_g / (4.0 * nv);

  Vec3 lobes = diffuse + specular + Vec3{coat, coat, coat};
  double falloff = light.intensity / (d * d);
  return Vec3{lobes.x * light.color[0], lobes.y * light.color[1], lobes.z * light.color[2]} *
         falloff;
}

void apply_postfx(ImageRGB& image, const PostFxParams& fx, const CameraIntrinsics& cam,
                  uint64_t seed) {
  const int W = image.width, H = image.height;
  const double cx = (W - 1) * 0.5, cy = (H - 1) * 0.5;
  const double r_corner = std::sqrt(cx * cx + cy * cy);

  if (fx.chromatic_aberration > 0.0) {
    ImageRGB src = image;
    auto sample_channel = [&](int channel, double x, double y) {
      x = std::clamp(x, 0.0, double(W - 1));
      y = std::clamp(y, 0.0, double(H - 1));
      int x0 = int(std::floor(x)), y0 = int(std::floor(y));
      int x1 = std::min(x0 + 1, W - 1), y1 = std::min(y0 + 1, H - 1);
      double tx = x - x0, ty = y - y0;
      double a = src.at(x0, y0)[channel] + (src.at(x1, y0)[channel] - src.at(x0, y0)[channel]) * tx;
      double b = src.at(x0, y1)[channel] + (src.at(x1, y1)[channel] - src.at(x0, y1)[channel]) * tx;
      return a + (b - a) * ty;
    };
    parallel_for(0, H, [&](int64_t yi) {
      int y = int(yi);
      for (int x = 0; x < W; ++x) {
        double dx = x - cx, dy = y - cy;
        double r = std::sqrt(dx * dx + dy * dy) / r_corner;
        double mag_r = 1.0 + 0.01 * fx.chromatic_aberration * r * r;
        double mag_b = 1.0 - 0.01 * fx.chromatic_aberration * r * r;
        float* px = image.at(x, y);
        px[0] = float(sample_channel(0, cx + dx / mag_r, cy + dy / mag_r));
        px[2] = float(sample_channel(2, cx + dx / mag_b, cy + dy / mag_b));
      }
    });
  }

  const double sigma = 0.002 * (cam.iso / 100.0);
  parallel_for(0, H, [&](int64_t yi) {
    int y = int(yi);
    for (int x = 0; x < W; ++x) {
      float* px = image.at(x, y);
      double dx = x - cx, dy = y - cy;
      double r2 = (dx * dx + dy * dy) / (r_corner * r_corner);
      double vignette = fx.lens_intensity > 0.0 ? 1.0 - fx.lens_intensity * r2 : 1.0;
      for (int c = 0; c < 3; ++c) {
        double value = double(px[c]) * vignette;
        if (fx.noise_enabled) {
          uint64_t key = hash_key(seed, uint64_t(int64_t(y) * W + x), uint64_t(c), 0x6e6f697365ull);
          value += sigma * gauss01(key);
        }
        px[c] = float(std::clamp(value, 0.0, 1.0));
      }
    }
  });
}

Raytracer::Raytracer(TriMesh mesh) : impl_(std::make_unique<Impl>()) {
  if (!mesh.has_uvs() || mesh.uvs.size() != mesh.vertices.size()) throw mesh_without_uvs();
  if (mesh.normals.size() != mesh.vertices.size()) compute_vertex_normals(mesh);
  impl_->mesh = std::move(mesh);
  impl_->build();
}

Raytracer::~Raytracer() = default;
Raytracer::Raytracer(Raytracer&&) noexcept = default;
Raytracer& Raytracer::operator=(Raytracer&&) noexcept = default;

const TriMesh& Raytracer::mesh() const { return impl_->mesh; }

FramePacket Raytracer::render(const TextureImage& texture, const Pose& pose,
                              const CameraIntrinsics& cam, const MaterialParams& mat,
                              const PostFxParams& fx, const LightParams& light, uint64_t seed,
                              int64_t frame_index) const {
  if (!is_finite(pose.position) ||
      !(std::isfinite(pose.orientation.w) && std::isfinite(pose.orientation.x) &&
        std::isfinite(pose.orientation.y) && std::isfinite(pose.orientation.z)))
    throw non_finite_camera();
  if (!(cam.fov_deg > 1.0 && cam.fov_deg < 179.0)) throw invalid_spec("fov_deg out of (1, 179)");

  const int W = cam.width, H = cam.height;
  FramePacket packet;
  packet.rgb = ImageRGB(W, H);
  packet.depth = ImageGray(W, H);
  packet.pose = pose;
  packet.frame_index = frame_index;

  const double tan_half = std::tan(cam.fov_deg * kPi / 360.0);
  const double aspect = double(W) / double(H);
  const double exposure =
      (cam.iso / 100.0) / (cam.aperture_fnumber * cam.aperture_fnumber) * kExposureConstant;
  const Vec3 origin = pose.position;
  const Quat q = pose.orientation;
  const Vec3 ambient_scale{kAmbientFloor * light.intensity * light.color[0],
                           kAmbientFloor * light.intensity * light.color[1],
                           kAmbientFloor * light.intensity * light.color[2]};

  const Impl& tracer = *impl_;
  parallel_for_chunked(0, H, [&](int64_t row0, int64_t row1) {
    for (int64_t yi = row0; yi < row1; ++yi) {
      int y = int(yi);
      for (int x = 0; x < W; ++x) {
        Vec3 dir_cam{(2.0 * (x + 0.5) / W - 1.0) * tan_half * aspect,
                     (1.0 - 2.0 * (y + 0.5) / H) * tan_half, -1.0};
        Vec3 dir = normalized(rotate(q, dir_cam));
        // Exactly-zero components would turn the slab test into 0 * inf = NaN
        // when the origin sits on a box plane; a denormal-scale floor keeps
        // the reciprocals finite without moving the ray.
        auto nonzero = [](double c) { return c == 0.0 ? 1e-300 : c; };
        dir = {nonzero(dir.x), nonzero(dir.y), nonzero(dir.z)};
        Ray ray{origin, dir, {1.0 / dir.x, 1.0 / dir.y, 1.0 / dir.z}};
        Hit hit;
        float* px = packet.rgb.at(x, y);
        if (!tracer.trace(ray, &hit)) {
          packet.depth.at(x, y) = 0.0f;
          px[0] = px[1] = px[2] = 0.0f;
          continue;
        }
        packet.depth.at(x, y) = float(hit.t);

        const auto& tri = tracer.mesh.triangles[size_t(hit.tri)];
        double w0 = 1.0 - hit.bu - hit.bv;
        Vec3 hit_point = origin + dir * hit.t;
        Vec3 n = normalized(tracer.mesh.normals[size_t(tri[0])] * w0 +
                            tracer.mesh.normals[size_t(tri[1])] * hit.bu +
                            tracer.mesh.normals[size_t(tri[2])] * hit.bv);
        double u = tracer.mesh.uvs[size_t(tri[0])][0] * w0 +
                   tracer.mesh.uvs[size_t(tri[1])][0] * hit.bu +
                   tracer.mesh.uvs[size_t(tri[2])][0] * hit.bv;
        double v = tracer.mesh.uvs[size_t(tri[0])][1] * w0 +
                   tracer.mesh.uvs[size_t(tri[1])][1] * hit.bu +
                   tracer.mesh.uvs[size_t(tri[2])][1] * hit.bv;

        Vec3 tangent = tracer.tangents[size_t(hit.tri)];
        tangent = tangent - n * dot(n, tangent);
        double tl = length(tangent);
        if (tl < 1e-9) {
          Vec3 fallback = std::abs(n.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
          tangent = fallback - n * dot(n, fallback);
          tl = length(tangent);
        }
        tangent = tangent / tl;
        Vec3 bitangent = cross(n, tangent);

        Vec3 view = -dir;
        Vec3 radiance = shade(hit_point, n, view, u, v, texture, mat, light, origin, tangent,
                              bitangent);
        Vec3 albedo = sample_texture(texture, u, v);
        Vec3 color = radiance + Vec3{albedo.x * ambient_scale.x, albedo.y * ambient_scale.y,
                                     albedo.z * ambient_scale.z};
        px[0] = float(color.x * exposure);
        px[1] = float(color.y * exposure);
        px[2] = float(color.z * exposure);
      }
    }
  });

  apply_postfx(packet.rgb, fx, cam, hash_key(seed, uint64_t(frame_index)));
  return packet;
}

FramePacket render_frame(const TriMesh& mesh, const TextureImage& texture, const Pose& pose,
                         const CameraIntrinsics& cam, const MaterialParams& mat,
                         const PostFxParams& fx, const LightParams& light, uint64_t seed,
                         int64_t frame_index) {
  Raytracer tracer(mesh);
  return tracer.render(texture, pose, cam, mat, fx, light, seed, frame_index);
}

}  // namespace colosynth
