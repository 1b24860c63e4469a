#include "colosynth/distance_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "colosynth/errors.hpp"
#include "colosynth/parallel.hpp"

namespace colosynth {

namespace {

// Lower envelope of parabolas (pos[i], f[i]), pos strictly ascending, f finite.
// Evaluates the envelope at pos[1] .. pos[m-2] into out (the first and last
// parabolas are the virtual padding samples and are sources only).
struct EnvelopeScratch {
  std::vector<int> v;
  std::vector<double> z;
  std::vector<double> pos;
  std::vector<double> f;
};

void envelope_transform(EnvelopeScratch& s, int m, double* out) {
  const double* pos = s.pos.data();
  const double* f = s.f.data();
  s.v.resize(m);
  s.z.resize(m + 1);
  int* v = s.v.data();
  double* z = s.z.data();
  int k = 0;
  v[0] = 0;
  z[0] = -std::numeric_limits<double>::infinity();
  z[1] = std::numeric_limits<double>::infinity();
  for (int q = 1; q < m; ++q) {
    double inter;
    for (;;) {
      int p = v[k];
      inter = ((f[q] + pos[q] * pos[q]) - (f[p] + pos[p] * pos[p])) / (2.0 * (pos[q] - pos[p]));
      if (inter <= z[k]) {
        --k;
      } else {
        break;
      }
    }
    ++k;
    v[k] = q;
    z[k] = inter;
    z[k + 1] = std::numeric_limits<double>::infinity();
  }
  k = 0;
  for (int q = 1; q < m - 1; ++q) {
    double x = pos[q];
    while (z[k + 1] < x) ++k;
    double d = x - pos[v[k]];
    out[q - 1] = d * d + f[v[k]];
  }
}

}  // namespace

DistanceField compute_edt(const VoxelMask& mask) {
  validate_mask(mask);
  if (mask.foreground_count() == 0) throw empty_mask();

  DistanceField field;
  field.nx = mask.nx;
  field.ny = mask.ny;
  field.nz = mask.nz;
  field.sx = mask.sx;
  field.sy = mask.sy;
  field.sz = mask.sz;
  const int nx = mask.nx, ny = mask.ny, nz = mask.nz;
  field.dfb.assign(size_t(mask.voxel_count()), 0.0);
  std::vector<double>& d2 = field.dfb;  // squared distances until the final sqrt

  // Pass 1, along x: run-length sweeps give the exact 1-D distance, with
  // virtual background at x = -1 and x = nx.
  parallel_for(0, int64_t(nz) * ny, [&](int64_t row) {
    int z = int(row / ny);
    int y = int(row % ny);
    int64_t base = field.linear(0, y, z);
    int last_bg = -1;
    for (int x = 0; x < nx; ++x) {
      if (mask.data[base + x] == 0) {
        last_bg = x;
        d2[base + x] = 0.0;
      } else {
        double d = (x - last_bg) * mask.sx;
        d2[base + x] = d * d;
      }
    }
    int next_bg = nx;
    for (int x = nx - 1; x >= 0; --x) {
      if (mask.data[base + x] == 0) {
        next_bg = x;
      } else {
        double d = (next_bg - x) * mask.sx;
        d2[base + x] = std::min(d2[base + x], d * d);
      }
    }
  });

  // Pass 2, along y; pass 3, along z. Each line gains two virtual padding
  // parabolas with value 0 just outside the volume.
  parallel_for(0, nz, [&](int64_t zi) {
    int z = int(zi);
    EnvelopeScratch scratch;
    int m = ny + 2;
    scratch.pos.resize(m);
    scratch.f.resize(m);
    std::vector<double> out(ny);
    for (int j = 0; j < m; ++j) scratch.pos[j] = (j - 1) * mask.sy;
    for (int x = 0; x < nx; ++x) {
      scratch.f[0] = 0.0;
      scratch.f[m - 1] = 0.0;
      for (int y = 0; y < ny; ++y) scratch.f[y + 1] = d2[field.linear(x, y, z)];
      envelope_transform(scratch, m, out.data());
      for (int y = 0; y < ny; ++y) d2[field.linear(x, y, z)] = out[y];
    }
  });

  parallel_for(0, ny, [&](int64_t yi) {
    int y = int(yi);
    EnvelopeScratch scratch;
    int m = nz + 2;
    scratch.pos.resize(m);
    scratch.f.resize(m);
    std::vector<double> out(nz);
    for (int j = 0; j < m; ++j) scratch.pos[j] = (j - 1) * mask.sz;
    for (int x = 0; x < nx; ++x) {
      scratch.f[0] = 0.0;
      scratch.f[m - 1] = 0.0;
      for (int z = 0; z < nz; ++z) scratch.f[z + 1] = d2[field.linear(x, y, z)];
      envelope_transform(scratch, m, out.data());
      for (int z = 0; z < nz; ++z) d2[field.linear(x, y, z)] = out[z];
    }
  });

  double max_d = 0.0;
  for (double& v : field.dfb) {
    v = std::sqrt(v);
    max_d = std::max(max_d, v);
  }
  field.max_dfb = max_d;
  return field;
}

}  // namespace colosynth
