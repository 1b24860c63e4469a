#include "colosynth/texture.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "colosynth/errors.hpp"
#include "colosynth/hashing.hpp"
#include "colosynth/parallel.hpp"

namespace colosynth {

std::string to_string(TextureMode mode) {
  switch (mode) {
    case TextureMode::mucosa: return "mucosa";
    case TextureMode::noise: return "noise";
    case TextureMode::checker: return "checker";
    case TextureMode::stripes: return "stripes";
  }
  return "mucosa";
}

TextureMode texture_mode_from_string(const std::string& name) {
  if (name == "mucosa") return TextureMode::mucosa;
  if (name == "noise") return TextureMode::noise;
  if (name == "checker") return TextureMode::checker;
  if (name == "stripes") return TextureMode::stripes;
  throw invalid_spec("unknown texture mode `" + name + "`");
}

void validate_texture_spec(const TextureSpec& spec) {
  auto pow2_in_range = [](int v) { return v >= 64 && v <= 4096 && (v & (v - 1)) == 0; };
  if (!pow2_in_range(spec.width) || !pow2_in_range(spec.height))
    throw invalid_spec("texture resolution must be a power of two in [64, 4096]");
  for (double c : spec.base_color_a)
    if (!(c >= 0.0 && c <= 1.0)) throw invalid_spec("base_color_a out of [0,1]");
  for (double c : spec.base_color_b)
    if (!(c >= 0.0 && c <= 1.0)) throw invalid_spec("base_color_b out of [0,1]");
  if (spec.noise_octaves < 1 || spec.noise_octaves > 8)
    throw invalid_spec("noise_octaves must be in 1..8");
  if (!(spec.noise_scale > 0.0)) throw invalid_spec("noise_scale must be positive");
  if (!(spec.vessel_density >= 0.0)) throw invalid_spec("vessel_density must be >= 0");
}

namespace {

constexpr uint64_t kLatticeTag = 0x746578206c617474ull;
constexpr uint64_t kVesselTag = 0x7665737373656cull;

double fade(double t) { return t * t * t * (t * (t * 6.0 - 15.0) + 10.0); }

// Value noise on an integer lattice, periodic in x with period `period_x`.
double value_noise(uint64_t seed, int octave, double x, double y, int period_x) {
  double xf = std::floor(x), yf = std::floor(y);
  int x0 = int(xf), y0 = int(yf);
  double tx = fade(x - xf), ty = fade(y - yf);
  auto lattice = [&](int xi, int yi) {
    int xm = ((xi % period_x) + period_x) % period_x;
    uint64_t h = hash_key(seed ^ kLatticeTag, uint64_t(octave), uint64_t(uint32_t(xm)),
                          uint64_t(uint32_t(yi)));
    return uniform01(h);
  };
  double v00 = lattice(x0, y0), v10 = lattice(x0 + 1, y0);
  double v01 = lattice(x0, y0 + 1), v11 = lattice(x0 + 1, y0 + 1);
  double a = v00 + (v10 - v00) * tx;
  double b = v01 + (v11 - v01) * tx;
  return a + (b - a) * ty;
}

// fBm with persistence 0.5, normalized to [0,1]. Periodic in u by integer
// lattice periods at every octave.
double fbm(const TextureSpec& spec, double u, double v) {
  int base_period = std::max(1, int(std::llround(spec.noise_scale)));
  double sum = 0.0, amp = 1.0, amp_sum = 0.0;
  for (int o = 0; o < spec.noise_octaves; ++o) {
    int period = base_period << o;
    sum += amp * value_noise(spec.seed, o, u * period, v * period, period);
    amp_sum += amp;
    amp *= 0.5;
  }
  return sum / amp_sum;
}

struct VesselSegment {
  double x0, y0, x1, y1;  // texel coordinates, x may exceed [0,W) before wrap
};

// Seeded random walks; counts drawn Poisson(vessel_density) via Knuth using
// the spec's hash stream.
std::vector<VesselSegment> build_vessels(const TextureSpec& spec) {
  std::vector<VesselSegment> segs;
  uint64_t stream = hash_key(spec.seed ^ kVesselTag, 0xc0ffee);
  auto next01 = [&stream]() {
    stream = splitmix64(stream);
    return uniform01(stream);
  };

  int count = 0;
  {
    double limit = std::exp(-spec.vessel_density);
    double p = 1.0;
    while (true) {
      p *= next01();
      if (p <= limit) break;
      ++count;
      if (count > 4096) break;
    }
  }

  const double step_len = 2.0;
  const double heading_sigma = 0.3;
  for (int k = 0; k < count; ++k) {
    double x = next01() * spec.width;
    double y = next01() * spec.height;
    double heading = next01() * 2.0 * kPi;
    for (int s = 0; s < 200; ++s) {
      double u1 = std::max(next01(), 1e-12);
      double u2 = next01();
      double gauss = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
      heading += heading_sigma * gauss;
      double nx = x + step_len * std::cos(heading);
      double ny = y + step_len * std::sin(heading);
      // Store with x0 wrapped into [0, W) so the per-pixel +-W probe finds it.
      double shift = std::floor(x / spec.width) * spec.width;
      segs.push_back({x - shift, y, nx - shift, ny});
      x = nx;
      y = ny;
      if (y < -2.0 * spec.height || y > 3.0 * spec.height) break;
    }
  }
  return segs;
}

double dist_point_segment_2d(double px, double py, const VesselSegment& s) {
  double dx = s.x1 - s.x0, dy = s.y1 - s.y0;
  double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((px - s.x0) * dx + (py - s.y0) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  double ex = px - (s.x0 + t * dx), ey = py - (s.y0 + t * dy);
  return std::sqrt(ex * ex + ey * ey);
}

}  // namespace

TextureImage generate_texture(const TextureSpec& spec) {
  validate_texture_spec(spec);
  const int W = spec.width, H = spec.height;
  TextureImage img(W, H);

  const Vec3 ca{spec.base_color_a[0], spec.base_color_a[1], spec.base_color_a[2]};
  const Vec3 cb{spec.base_color_b[0], spec.base_color_b[1], spec.base_color_b[2]};

  if (spec.mode == TextureMode::checker || spec.mode == TextureMode::stripes) {
    // Even pattern counts so parity is continuous across the u wrap.
    int count_u = 2 * std::max(1, int(std::llround(spec.noise_scale / 2.0)));
    int count_v = std::max(1, int(std::llround(double(count_u) * H / W)));
    parallel_for(0, H, [&](int64_t y) {
      for (int x = 0; x < W; ++x) {
        int iu = int(int64_t(x) * count_u / W);
        int iv = int(int64_t(y) * count_v / H);
        bool flip = spec.mode == TextureMode::checker ? ((iu + iv) & 1) : (iu & 1);
        const Vec3& c = flip ? cb : ca;
        float* px = img.at(x, int(y));
        px[0] = float(c.x);
        px[1] = float(c.y);
        px[2] = float(c.z);
      }
    });
    return img;
  }

  std::vector<VesselSegment> vessels;
  std::vector<std::vector<int>> row_bins;
  if (spec.mode == TextureMode::mucosa) {
    vessels = build_vessels(spec);
    row_bins.assign(size_t(H), {});
    const double reach = 2.5;
    for (size_t i = 0; i < vessels.size(); ++i) {
      int y0 = int(std::floor(std::min(vessels[i].y0, vessels[i].y1) - reach));
      int y1 = int(std::ceil(std::max(vessels[i].y0, vessels[i].y1) + reach));
      for (int y = std::max(0, y0); y <= std::min(H - 1, y1); ++y)
        row_bins[size_t(y)].push_back(int(i));
    }
  }

  parallel_for(0, H, [&](int64_t yi) {
    int y = int(yi);
    double v = (y + 0.5) / H;
    for (int x = 0; x < W; ++x) {
      double u = (x + 0.5) / W;
      double n = fbm(spec, u, v);
      Vec3 color;
      if (spec.mode == TextureMode::noise) {
        color = lerp(ca, cb, n);
      } else {  // mucosa
        double m = std::clamp(0.25 + 0.5 * v + 0.5 * (n - 0.5), 0.0, 1.0);
        color = lerp(ca, cb, m);
        // Vessels darken multiplicatively; u distances wrap around the tube.
        double darkness = 0.0;
        double px_x = x + 0.5, px_y = y + 0.5;
        for (int si : row_bins[size_t(y)]) {
          const VesselSegment& s = vessels[size_t(si)];
          for (int wrap = -1; wrap <= 1; ++wrap) {
            double d = dist_point_segment_2d(px_x + wrap * W, px_y, s);
            double cover = std::clamp(1.5 - d, 0.0, 1.0);
            darkness = std::max(darkness, cover);
          }
          if (darkness >= 1.0) break;
        }
        color *= 1.0 - 0.45 * darkness;
      }
      color.x = std::clamp(color.x, 0.0, 1.0);
      color.y = std::clamp(color.y, 0.0, 1.0);
      color.z = std::clamp(color.z, 0.0, 1.0);
      float* px = img.at(x, y);
      px[0] = float(color.x);
      px[1] = float(color.y);
      px[2] = float(color.z);
    }
  });
  return img;
}

Vec3 sample_texture(const TextureImage& tex, double u, double v) {
  const int W = tex.width, H = tex.height;
  u -= std::floor(u);  // periodic wrap
  double vc = std::clamp(v, 0.0, 1.0);

  double x = u * W - 0.5;
  double y = vc * H - 0.5;
  double xf = std::floor(x), yf = std::floor(y);
  double tx = x - xf, ty = y - yf;
  int x0 = int(xf);
  int x1 = x0 + 1;
  x0 = ((x0 % W) + W) % W;
  x1 = ((x1 % W) + W) % W;
  int y0 = std::clamp(int(yf), 0, H - 1);
  int y1 = std::clamp(int(yf) + 1, 0, H - 1);

  auto texel = [&](int xx, int yy) {
    const float* p = tex.at(xx, yy);
    return Vec3{p[0], p[1], p[2]};
  };
  Vec3 a = lerp(texel(x0, y0), texel(x1, y0), tx);
  Vec3 b = lerp(texel(x0, y1), texel(x1, y1), tx);
  return lerp(a, b, ty);
}

}  // namespace colosynth
