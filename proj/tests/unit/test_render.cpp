#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "colosynth/errors.hpp"
#include "colosynth/render.hpp"
#include "test_geom.hpp"

using namespace colosynth;
using test_support::analytic_cylinder_hit;
using test_support::make_tube_mesh;

namespace {

TextureImage flat_texture(float r, float g, float b) {
  TextureImage tex(64, 64);
  for (int y = 0; y < 64; ++y)
    for (int x = 0; x < 64; ++x) {
      tex.at(x, y)[0] = r;
      tex.at(x, y)[1] = g;
      tex.at(x, y)[2] = b;
    }
  return tex;
}

// Scalar transcription of the shading model, kept independent of shade().
struct ShadeOracle {
  double metallic, smoothness, coat_mask, anisotropy;
  double intensity;
  double albedo;  // single channel
  double d;       // light distance
  double nl, nv, nh, lh;
  double ht, hb;  // half-vector tangent components
  double vt, vb, lt, lb;

  double alpha() const { return std::max((1.0 - smoothness) * (1.0 - smoothness), 1e-4); }
  double at() const { return std::min(alpha() * (1.0 + anisotropy), 1.0); }
  double ab() const { return std::max(alpha() / (1.0 + anisotropy), 1e-5); }

  double diffuse() const { return (1.0 - metallic) * albedo * nl / 3.14159265358979323846; }

  double d_aniso() const {
    double t = ht * ht / (at() * at()) + hb * hb / (ab() * ab()) + nh * nh;
    return 1.0 / (3.14159265358979323846 * at() * ab() * t * t);
  }
  double lambda(double vt_, double vb_, double vn_) const {
    double a2 = (at() * at() * vt_ * vt_ + ab() * ab() * vb_ * vb_) / (vn_ * vn_);
    return 0.5 * (-1.0 + std::sqrt(1.0 + a2));
  }
  double f0() const { return 0.04 * (1.0 - metallic) + albedo * metallic; }
  double specular() const {
    double fres = f0() + (1.0 - f0()) * std::pow(1.0 - lh, 5.0);
    double g = 1.0 / (1.0 + lambda(vt, vb, nv) + lambda(lt, lb, nl));
    return d_aniso() * fres * g / (4.0 * nv);
  }
  double coat() const {
    double a = 0.1;
    double dgg = (nh <= 0) ? 0.0
                           : a * a / (3.14159265358979323846 *
                                      std::pow(nh * nh * (a * a - 1.0) + 1.0, 2.0));
    double fres = 0.04 + 0.96 * std::pow(1.0 - lh, 5.0);
    auto lam = [&](double c) {
      double t2 = (1.0 - c * c) / (c * c);
      return 0.5 * (-1.0 + std::sqrt(1.0 + a * a * t2));
    };
    double g = 1.0 / (1.0 + lam(nv) + lam(nl));
    return coat_mask * dgg * fres * g / (4.0 * nv);
  }
  double total() const { return intensity / (d * d) * (diffuse() + specular() + coat()); }
};

}  // namespace

TEST_CASE("shade matches the scalar reference term by term") {
  TextureImage tex = flat_texture(0.6f, 0.6f, 0.6f);
  // Normal-incidence headlight at distance 1: N = V = L = +z.
  Vec3 hit{0, 0, 0}, n{0, 0, 1}, view{0, 0, 1}, cam{0, 0, 1};
  Vec3 tangent{1, 0, 0}, bitangent{0, 1, 0};
  LightParams light;
  light.intensity = 10.0;
  light.color = {1, 1, 1};

  const double albedo = double(0.6f);  // the texture stores float

  SUBCASE("rough dielectric: diffuse term is albedo * I / pi") {
    MaterialParams mat;
    mat.metallic = 0.0;
    mat.smoothness = 0.0;
    mat.coat_mask = 0.0;
    mat.anisotropy = 0.0;
    Vec3 rgb = shade(hit, n, view, 0.5, 0.5, tex, mat, light, cam, tangent, bitangent);

    ShadeOracle o{};
    o.metallic = 0;
    o.smoothness = 0;
    o.coat_mask = 0;
    o.anisotropy = 0;
    o.intensity = 10.0;
    o.albedo = albedo;
    o.d = 1.0;
    o.nl = o.nv = o.nh = o.lh = 1.0;
    o.ht = o.hb = o.vt = o.vb = o.lt = o.lb = 0.0;
    CHECK(rgb.x == doctest::Approx(o.total()).epsilon(1e-12));
    CHECK(o.diffuse() * o.intensity == doctest::Approx(albedo * 10.0 / kPi).epsilon(1e-12));
    // specular at full roughness still contributes per the formula
    CHECK(o.specular() > 0.0);
  }

  SUBCASE("default material at oblique incidence matches the oracle") {
    MaterialParams mat;  // defaults
    Vec3 n2 = normalized(Vec3{0.3, -0.2, 1.0});
    Vec3 t2 = normalized(tangent - n2 * dot(n2, tangent));
    Vec3 b2 = cross(n2, t2);
    Vec3 rgb = shade(hit, n2, view, 0.5, 0.5, tex, mat, light, cam, t2, b2);

    ShadeOracle o{};
    o.metallic = mat.metallic;
    o.smoothness = mat.smoothness;
    o.coat_mask = mat.coat_mask;
    o.anisotropy = mat.anisotropy;
    o.intensity = 10.0;
    o.albedo = albedo;
    o.d = 1.0;
    Vec3 l = view;  // headlight
    Vec3 h = l;
    o.nl = dot(n2, l);
    o.nv = std::max(dot(n2, view), 1e-9);
    o.nh = dot(n2, h);
    o.lh = 1.0;
    o.ht = dot(h, t2);
    o.hb = dot(h, b2);
    o.vt = dot(view, t2);
    o.vb = dot(view, b2);
    o.lt = o.vt;
    o.lb = o.vb;
    CHECK(rgb.x == doctest::Approx(o.total()).epsilon(1e-9));
  }

  SUBCASE("backfacing points are black") {
    MaterialParams mat;
    Vec3 rgb = shade(hit, Vec3{0, 0, -1}, view, 0.5, 0.5, tex, mat, light, cam, tangent, bitangent);
    CHECK(rgb.x == 0.0);
    CHECK(rgb.y == 0.0);
    CHECK(rgb.z == 0.0);
  }

  SUBCASE("full metallic kills the diffuse term") {
    MaterialParams lambert_probe;
    lambert_probe.metallic = 1.0;
    lambert_probe.smoothness = 0.0;
    lambert_probe.coat_mask = 0.0;
    lambert_probe.anisotropy = 0.0;
    Vec3 rgb = shade(hit, n, view, 0.5, 0.5, tex, lambert_probe, light, cam, tangent, bitangent);
    ShadeOracle o{};
    o.metallic = 1.0;
    o.smoothness = 0.0;
    o.coat_mask = 0.0;
    o.anisotropy = 0.0;
    o.intensity = 10.0;
    o.albedo = albedo;
    o.d = 1.0;
    o.nl = o.nv = o.nh = o.lh = 1.0;
    CHECK(o.diffuse() == 0.0);
    CHECK(rgb.x == doctest::Approx(o.specular() * o.intensity).epsilon(1e-12));
  }
}

TEST_CASE("principal-pixel depth of the analytic end-cap scene is 50 mm") {
  TriMesh tube = make_tube_mesh(5.0, 0.0, 80.0, 512, 128);
  Raytracer tracer{std::move(tube)};
  Pose pose;
  pose.position = {0, 0, 30.0};  // cap at z = 80 is 50 mm ahead
  pose.orientation = quat_from_basis({1, 0, 0}, {0, -1, 0}, {0, 0, -1});  // look along +z
  CameraIntrinsics cam;
  cam.width = cam.height = 257;  // odd: a pixel sits exactly on the axis
  MaterialParams mat;
  PostFxParams fx;
  fx.chromatic_aberration = 0.0;
  fx.lens_intensity = 0.0;
  fx.noise_enabled = false;
  LightParams light;
  FramePacket packet = tracer.render(flat_texture(0.5f, 0.5f, 0.5f), pose, cam, mat, fx, light, 1);

  double principal = packet.depth.at(128, 128);
  CHECK(std::abs(principal - 50.0) / 50.0 < 0.005);

  SUBCASE("99% of hit pixels match the analytic solid") {
    int hits = 0, good = 0;
    for (int y = 0; y < cam.height; ++y)
      for (int x = 0; x < cam.width; ++x) {
        float d = packet.depth.at(x, y);
        if (d <= 0.0f) continue;
        ++hits;
        double tan_half = std::tan(cam.fov_deg * kPi / 360.0);
        Vec3 dir_cam{(2.0 * (x + 0.5) / cam.width - 1.0) * tan_half,
                     (1.0 - 2.0 * (y + 0.5) / cam.height) * tan_half, -1.0};
        Vec3 dir = normalized(rotate(pose.orientation, dir_cam));
        double analytic = analytic_cylinder_hit(pose.position, dir, 5.0, 0.0, 80.0);
        if (std::isfinite(analytic) && std::abs(d - analytic) / analytic < 0.01) ++good;
      }
    REQUIRE(hits > 0);
    CHECK(double(good) / hits >= 0.99);
  }
}

TEST_CASE("zero light intensity renders exactly black") {
  TriMesh tube = make_tube_mesh(5.0, 0.0, 40.0, 64, 16);
  Pose pose;
  pose.position = {0, 0, 20.0};
  CameraIntrinsics cam;
  cam.width = cam.height = 32;
  MaterialParams mat;
  PostFxParams fx;
  fx.noise_enabled = false;
  LightParams dark;
  dark.intensity = 0.0;
  FramePacket packet =
      render_frame(tube, flat_texture(0.8f, 0.7f, 0.6f), pose, cam, mat, fx, dark, 3);
  for (float p : packet.rgb.pixels) CHECK(p == 0.0f);
}

TEST_CASE("identical renders are byte-identical across thread counts") {
  TriMesh tube = make_tube_mesh(5.0, 0.0, 40.0, 128, 32);
  Raytracer tracer{std::move(tube)};
  Pose pose;
  pose.position = {0.5, -0.25, 20.0};
  pose.orientation = quat_from_basis({1, 0, 0}, {0, -1, 0}, {0, 0, -1});
  CameraIntrinsics cam;
  cam.width = cam.height = 64;
  MaterialParams mat;
  PostFxParams fx;
  fx.noise_enabled = true;  // exercise the seeded noise path too
  LightParams light;
  TextureImage tex = flat_texture(0.7f, 0.5f, 0.45f);

  setenv("COLOSYNTH_THREADS", "1", 1);
  FramePacket a = tracer.render(tex, pose, cam, mat, fx, light, 42, 5);
  setenv("COLOSYNTH_THREADS", "8", 1);
  FramePacket b = tracer.render(tex, pose, cam, mat, fx, light, 42, 5);
  unsetenv("COLOSYNTH_THREADS");
  CHECK(a.rgb.pixels == b.rgb.pixels);
  CHECK(a.depth.pixels == b.depth.pixels);
}

TEST_CASE("same pose, different texture: identical depth, different RGB") {
  TriMesh tube = make_tube_mesh(5.0, 0.0, 40.0, 128, 32);
  Raytracer tracer{std::move(tube)};
  Pose pose;
  pose.position = {0, 0, 10.0};
  pose.orientation = quat_from_basis({1, 0, 0}, {0, -1, 0}, {0, 0, -1});
  CameraIntrinsics cam;
  cam.width = cam.height = 64;
  MaterialParams mat;
  PostFxParams fx;
  fx.noise_enabled = false;
  LightParams light;

  FramePacket a = tracer.render(flat_texture(0.8f, 0.4f, 0.35f), pose, cam, mat, fx, light, 1);
  FramePacket b = tracer.render(flat_texture(0.3f, 0.6f, 0.7f), pose, cam, mat, fx, light, 1);
  CHECK(a.depth.pixels == b.depth.pixels);
  double diff = 0.0;
  for (size_t i = 0; i < a.rgb.pixels.size(); ++i)
    diff += std::abs(double(a.rgb.pixels[i]) - b.rgb.pixels[i]);
  diff /= double(a.rgb.pixels.size());
  CHECK(diff > 0.005);
}

TEST_CASE("doubling ISO doubles pre-clamp linear values exactly") {
  TriMesh tube = make_tube_mesh(5.0, 0.0, 40.0, 64, 16);
  Raytracer tracer{std::move(tube)};
  Pose pose;
  pose.position = {0, 0, 20.0};
  CameraIntrinsics cam;
  cam.width = cam.height = 48;
  MaterialParams mat;
  PostFxParams fx;
  fx.noise_enabled = false;
  LightParams dim;
  dim.intensity = 2.0;  // keeps every pixel far below the clamp

  cam.iso = 100.0;
  FramePacket a = tracer.render(flat_texture(0.5f, 0.5f, 0.5f), pose, cam, mat, fx, dim, 1);
  cam.iso = 200.0;
  FramePacket b = tracer.render(flat_texture(0.5f, 0.5f, 0.5f), pose, cam, mat, fx, dim, 1);
  float max_a = 0.0f;
  for (float p : a.rgb.pixels) max_a = std::max(max_a, p);
  REQUIRE(max_a > 0.0f);
  REQUIRE(max_a < 0.4f);
  for (size_t i = 0; i < a.rgb.pixels.size(); ++i)
    CHECK(b.rgb.pixels[i] == 2.0f * a.rgb.pixels[i]);
}

TEST_CASE("headlight response stays below the light intensity in the tube scene") {
  TriMesh tube = make_tube_mesh(5.0, 0.0, 40.0, 128, 32);
  Raytracer tracer{std::move(tube)};
  Pose pose;
  pose.position = {0, 0, 20.0};
  CameraIntrinsics cam;
  cam.width = cam.height = 64;
  cam.iso = 100.0;
  cam.aperture_fnumber = 1.0;  // exposure = kExposureConstant exactly
  MaterialParams mat;
  PostFxParams fx;
  fx.chromatic_aberration = 0.0;
  fx.lens_intensity = 0.0;
  fx.noise_enabled = false;
  LightParams faint;
  faint.intensity = 1e-5;  // keeps post-exposure values below the clamp
  FramePacket packet = tracer.render(flat_texture(0.8f, 0.5f, 0.45f), pose, cam, mat, fx, faint, 1);
  const double exposure = 4.5;  // iso 100, f/1
  for (float p : packet.rgb.pixels) CHECK(double(p) <= faint.intensity * exposure * 1.0001);
}

TEST_CASE("post-fx at zero parameters is the identity") {
  ImageRGB img(33, 21);
  std::mt19937_64 rng(3);
  for (auto& p : img.pixels) p = float(double(rng() % 1000) / 999.0);
  ImageRGB before = img;
  PostFxParams fx;
  fx.chromatic_aberration = 0.0;
  fx.lens_intensity = 0.0;
  fx.noise_enabled = false;
  CameraIntrinsics cam;
  cam.width = img.width;
  cam.height = img.height;
  apply_postfx(img, fx, cam, 9);
  CHECK(img.pixels == before.pixels);
}

TEST_CASE("vignette: corners attenuate by exactly 0.9 at lens intensity 0.1") {
  ImageRGB img(65, 65);
  for (auto& p : img.pixels) p = 0.5f;
  PostFxParams fx;
  fx.chromatic_aberration = 0.0;
  fx.lens_intensity = 0.1;
  fx.noise_enabled = false;
  CameraIntrinsics cam;
  cam.width = cam.height = 65;
  apply_postfx(img, fx, cam, 0);
  CHECK(double(img.at(32, 32)[1]) == doctest::Approx(0.5).epsilon(1e-9));     // center untouched
  CHECK(double(img.at(0, 0)[1]) == doctest::Approx(0.45).epsilon(1e-6));      // exact corner
  CHECK(double(img.at(64, 64)[1]) == doctest::Approx(0.45).epsilon(1e-6));
}

TEST_CASE("chromatic aberration displaces the red rim outward and blue inward") {
  const int N = 257;
  ImageRGB img(N, N);
  const double cx = (N - 1) * 0.5;
  const double r_corner = std::sqrt(2.0) * cx;
  const double disc_radius = 0.92 * r_corner;
  for (int y = 0; y < N; ++y)
    for (int x = 0; x < N; ++x) {
      double r = std::hypot(x - cx, y - cx);
      float v = r <= disc_radius ? 1.0f : 0.0f;
      float* px = img.at(x, y);
      px[0] = px[1] = px[2] = v;
    }
  PostFxParams fx;
  fx.chromatic_aberration = 0.5;
  fx.lens_intensity = 0.0;
  fx.noise_enabled = false;
  CameraIntrinsics cam;
  cam.width = cam.height = N;
  apply_postfx(img, fx, cam, 0);

  // Scan along the diagonal; find the half-level crossing per channel.
  auto edge_radius = [&](int channel) {
    double prev_r = 0.0, prev_v = 1.0;
    for (double r = 0.0; r < r_corner; r += 0.25) {
      double x = cx + r / std::sqrt(2.0), y = cx + r / std::sqrt(2.0);
      int xi = int(std::floor(x)), yi = int(std::floor(y));
      double tx = x - xi, ty = y - yi;
      auto at = [&](int xx, int yy) {
        return double(img.at(std::min(xx, N - 1), std::min(yy, N - 1))[channel]);
      };
      double v = (at(xi, yi) * (1 - tx) + at(xi + 1, yi) * tx) * (1 - ty) +
                 (at(xi, yi + 1) * (1 - tx) + at(xi + 1, yi + 1) * tx) * ty;
      if (prev_v >= 0.5 && v < 0.5) {
        double t = (prev_v - 0.5) / (prev_v - v);
        return prev_r + t * (r - prev_r);
      }
      prev_r = r;
      prev_v = v;
    }
    return prev_r;
  };
  double red_edge = edge_radius(0);
  double green_edge = edge_radius(1);
  double blue_edge = edge_radius(2);

  // The formula's prediction: a feature at source radius E lands where the
  // warp maps back to E. Solve numerically per channel.
  auto predict = [&](double sign) {
    double lo = 0.0, hi = r_corner;
    for (int it = 0; it < 80; ++it) {
      double mid = 0.5 * (lo + hi);
      double rn = mid / r_corner;
      double mag = 1.0 + sign * 0.01 * fx.chromatic_aberration * rn * rn;
      if (mid / mag < disc_radius)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  };
  double red_predicted = predict(+1.0);
  double blue_predicted = predict(-1.0);

  CHECK(red_edge > green_edge);   // outward
  CHECK(blue_edge < green_edge);  // inward
  CHECK(std::abs(red_edge - red_predicted) < 1.0);
  CHECK(std::abs(blue_edge - blue_predicted) < 1.0);
  CHECK(std::abs(green_edge - disc_radius) < 1.0);
}

TEST_CASE("sensor noise is seeded and scales with ISO") {
  ImageRGB img(64, 64);
  for (auto& p : img.pixels) p = 0.5f;
  PostFxParams fx;
  fx.chromatic_aberration = 0.0;
  fx.lens_intensity = 0.0;
  fx.noise_enabled = true;
  CameraIntrinsics cam;
  cam.width = cam.height = 64;
  cam.iso = 200.0;

  ImageRGB a = img, b = img, c = img;
  apply_postfx(a, fx, cam, 7);
  apply_postfx(b, fx, cam, 7);
  apply_postfx(c, fx, cam, 8);
  CHECK(a.pixels == b.pixels);
  CHECK(a.pixels != c.pixels);

  auto stddev = [&](const ImageRGB& im) {
    double mean = 0.0;
    for (float p : im.pixels) mean += p;
    mean /= double(im.pixels.size());
    double var = 0.0;
    for (float p : im.pixels) var += (p - mean) * (p - mean);
    return std::sqrt(var / double(im.pixels.size()));
  };
  double sigma = stddev(a);
  CHECK(sigma == doctest::Approx(0.002 * 2.0).epsilon(0.15));

  cam.iso = 400.0;
  ImageRGB d = img;
  apply_postfx(d, fx, cam, 7);
  CHECK(stddev(d) == doctest::Approx(0.002 * 4.0).epsilon(0.15));
}

TEST_CASE("axis-aligned rays hit geometry whose bounds pass through the origin") {
  // A wall spanning x,y in [0,10] at z = 0; the camera origin lies exactly on
  // the x = 0 bounding plane and the principal ray points straight down -z.
  TriMesh wall;
  wall.vertices = {{0, 0, 0}, {10, 0, 0}, {10, 10, 0}, {0, 10, 0}};
  wall.normals = {{0, 0, 1}, {0, 0, 1}, {0, 0, 1}, {0, 0, 1}};
  wall.uvs = {{0.0, 0.0}, {0.9, 0.0}, {0.9, 1.0}, {0.0, 1.0}};
  wall.triangles = {{0, 1, 2}, {0, 2, 3}};
  Raytracer tracer{std::move(wall)};
  Pose pose;
  pose.position = {0.0, 5.0, 10.0};  // looks along -z by default
  CameraIntrinsics cam;
  cam.width = cam.height = 33;  // odd: the center pixel ray has zero x and y
  PostFxParams fx;
  fx.noise_enabled = false;
  FramePacket packet =
      tracer.render(flat_texture(0.5f, 0.5f, 0.5f), pose, cam, MaterialParams{}, fx,
                    LightParams{}, 0);
  CHECK(packet.depth.at(16, 16) == doctest::Approx(10.0).epsilon(1e-9));
}

TEST_CASE("renderer rejects meshes without UVs and non-finite cameras") {
  TriMesh bare = make_tube_mesh(5.0, 0.0, 10.0, 16, 4);
  bare.uvs.clear();
  CHECK_THROWS_WITH_AS(Raytracer{std::move(bare)}, doctest::Contains("MeshWithoutUVs"), Error);

  TriMesh tube = make_tube_mesh(5.0, 0.0, 10.0, 16, 4);
  Raytracer tracer{std::move(tube)};
  Pose bad;
  bad.position = {std::nan(""), 0, 0};
  CameraIntrinsics cam;
  cam.width = cam.height = 8;
  CHECK_THROWS_WITH_AS(tracer.render(flat_texture(1, 1, 1), bad, cam, MaterialParams{},
                                     PostFxParams{}, LightParams{}, 0),
                       doctest::Contains("NonFiniteCamera"), Error);
}
