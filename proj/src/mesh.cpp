#include "colosynth/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>

#include "colosynth/errors.hpp"
#include "colosynth/parallel.hpp"

namespace colosynth {

namespace {

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  return 0.5 * length(cross(b - a, c - a));
}

#include "mc_tables.inc"

// Lorensen/Cline cube corner and edge numbering.
constexpr int kCubeCorner[8][3] = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                                   {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
constexpr int kCubeEdge[12][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}, {5, 6},
                                  {6, 7}, {7, 4}, {0, 4}, {1, 5}, {2, 6}, {3, 7}};

}  // namespace

void compute_vertex_normals(TriMesh& mesh) {
  mesh.normals.assign(mesh.vertices.size(), Vec3{});
  for (const auto& tri : mesh.triangles) {
    const Vec3& a = mesh.vertices[size_t(tri[0])];
    const Vec3& b = mesh.vertices[size_t(tri[1])];
    const Vec3& c = mesh.vertices[size_t(tri[2])];
    Vec3 fn = cross(b - a, c - a);  // area-weighted
    mesh.normals[size_t(tri[0])] += fn;
    mesh.normals[size_t(tri[1])] += fn;
    mesh.normals[size_t(tri[2])] += fn;
  }
  for (auto& n : mesh.normals) {
    double len = length(n);
    n = len > 0.0 ? n / len : Vec3{0.0, 0.0, 1.0};
  }
}

TriMesh marching_cubes(const VoxelMask& mask, double iso) {
  validate_mask(mask);
  if (!(iso > 0.0 && iso < 1.0)) throw invalid_spec("iso must lie in (0, 1)");
  if (mask.foreground_count() == 0) throw empty_mask();

  const int nx = mask.nx, ny = mask.ny, nz = mask.nz;
  const int sxn = nx + 2, syn = ny + 2;  // padded sample lattice dims
  auto sample_id = [&](int i, int j, int k) {
    return uint64_t(i + 1) + uint64_t(sxn) * (uint64_t(j + 1) + uint64_t(syn) * uint64_t(k + 1));
  };
  auto sample_value = [&](int i, int j, int k) -> double {
    if (i < 0 || i >= nx || j < 0 || j >= ny || k < 0 || k >= nz) return 0.0;
    return mask.data[size_t(mask.linear(i, j, k))] != 0 ? 1.0 : 0.0;
  };

  TriMesh mesh;
  std::unordered_map<uint64_t, int> weld;
  double f[8];
  Vec3 p[8];
  uint64_t sid[8];
  int edge_vertex[12];

  // Cells walk the padded lattice so the surface closes over the volume
  // border. Cut vertices are welded by lattice-edge key and interpolated from
  // the lower sample id, giving bit-identical positions in every cell.
  for (int cz = -1; cz < nz; ++cz) {
    for (int cy = -1; cy < ny; ++cy) {
      for (int cx = -1; cx < nx; ++cx) {
        int cubeindex = 0;
        for (int c = 0; c < 8; ++c) {
          int i = cx + kCubeCorner[c][0], j = cy + kCubeCorner[c][1], k = cz + kCubeCorner[c][2];
          f[c] = sample_value(i, j, k);
          p[c] = {i * mask.sx, j * mask.sy, k * mask.sz};
          sid[c] = sample_id(i, j, k);
          if (f[c] < iso) cubeindex |= 1 << c;
        }
        int emask = kEdgeTable[cubeindex];
        if (emask == 0) continue;

        for (int e = 0; e < 12; ++e) {
          if (!(emask & (1 << e))) {
            edge_vertex[e] = -1;
            continue;
          }
          int a = kCubeEdge[e][0], b = kCubeEdge[e][1];
          uint64_t lo = std::min(sid[a], sid[b]), hi = std::max(sid[a], sid[b]);
          uint64_t key = (lo << 32) | hi;
          auto it = weld.find(key);
          if (it != weld.end()) {
            edge_vertex[e] = it->second;
            continue;
          }
          double f0 = sid[a] < sid[b] ? f[a] : f[b];
          double f1 = sid[a] < sid[b] ? f[b] : f[a];
          const Vec3& p0 = sid[a] < sid[b] ? p[a] : p[b];
          const Vec3& p1 = sid[a] < sid[b] ? p[b] : p[a];
          double t = (iso - f0) / (f1 - f0);
          edge_vertex[e] = int(mesh.vertices.size());
          mesh.vertices.push_back(lerp(p0, p1, t));
          weld.emplace(key, edge_vertex[e]);
        }

        const int* tris = kTriTable[cubeindex];
        for (int t = 0; tris[t] != -1; t += 3) {
          std::array<int, 3> tri = {edge_vertex[tris[t]], edge_vertex[tris[t + 1]],
                                    edge_vertex[tris[t + 2]]};
          const Vec3& a = mesh.vertices[size_t(tri[0])];
          const Vec3& b = mesh.vertices[size_t(tri[1])];
          const Vec3& c = mesh.vertices[size_t(tri[2])];
          if (triangle_area(a, b, c) >= 1e-12) mesh.triangles.push_back(tri);
        }
      }
    }
  }

  compute_vertex_normals(mesh);
  return mesh;
}

TriMesh smooth_mesh(const TriMesh& mesh, int iterations, double step) {
  if (iterations < 0) throw invalid_spec("smoothing iterations must be >= 0");
  if (iterations > 0 && !(step > 0.0 && step < 1.0))
    throw invalid_spec("smoothing step must lie in (0, 1)");
  TriMesh out = mesh;
  if (iterations == 0 || mesh.vertices.empty()) return out;

  // 1-ring adjacency over unique undirected edges.
  std::vector<std::vector<int>> ring(mesh.vertices.size());
  {
    std::vector<std::pair<int, int>> edges;
    edges.reserve(mesh.triangles.size() * 3);
    for (const auto& tri : mesh.triangles) {
      for (int e = 0; e < 3; ++e) {
        int a = tri[e], b = tri[(e + 1) % 3];
        edges.emplace_back(std::min(a, b), std::max(a, b));
      }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (auto [a, b] : edges) {
      ring[size_t(a)].push_back(b);
      ring[size_t(b)].push_back(a);
    }
  }

  std::vector<WorldPoint> next(out.vertices.size());
  for (int it = 0; it < iterations; ++it) {
    for (size_t v = 0; v < out.vertices.size(); ++v) {
      if (ring[v].empty()) {
        next[v] = out.vertices[v];
        continue;
      }
      Vec3 mean{};
      for (int nb : ring[v]) mean += out.vertices[size_t(nb)];
      mean = mean / double(ring[v].size());
      next[v] = lerp(out.vertices[v], mean, step);
    }
    out.vertices.swap(next);
  }
  if (!out.normals.empty()) compute_vertex_normals(out);
  return out;
}

namespace {

struct DisjointSet {
  std::vector<int> parent;
  explicit DisjointSet(size_t n) : parent(n) {
    for (size_t i = 0; i < n; ++i) parent[i] = int(i);
  }
  int find(int a) {
    while (parent[size_t(a)] != a) {
      parent[size_t(a)] = parent[size_t(parent[size_t(a)])];
      a = parent[size_t(a)];
    }
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[size_t(std::max(a, b))] = std::min(a, b);
  }
};

// Uniform-grid accelerator over the centerline samples. Queries return the
// exact nearest sample with ties broken toward the smaller index, matching a
// plain linear scan bit for bit.
class SampleGrid {
 public:
  explicit SampleGrid(const std::vector<WorldPoint>& samples) : samples_(samples) {
    lo_ = hi_ = samples.front();
    for (const auto& p : samples) {
      lo_ = {std::min(lo_.x, p.x), std::min(lo_.y, p.y), std::min(lo_.z, p.z)};
      hi_ = {std::max(hi_.x, p.x), std::max(hi_.y, p.y), std::max(hi_.z, p.z)};
    }
    double diag = length(hi_ - lo_);
    double resolution = std::clamp(4.0 * std::cbrt(double(samples.size())), 4.0, 64.0);
    cell_ = std::max(diag / resolution, 1e-9);
    nx_ = int((hi_.x - lo_.x) / cell_) + 1;
    ny_ = int((hi_.y - lo_.y) / cell_) + 1;
    nz_ = int((hi_.z - lo_.z) / cell_) + 1;
    cells_.resize(size_t(nx_) * ny_ * nz_);
    for (size_t i = 0; i < samples.size(); ++i)
      cells_[cell_index(coord(samples[i]))].push_back(int(i));
  }

  int nearest(const WorldPoint& p) const {
    std::array<int, 3> qc = coord(p);
    double best = std::numeric_limits<double>::infinity();
    int best_i = 0;
    // Any sample in a cell at Chebyshev ring k lies at least (k-1)*cell away,
    // so scanning stops once that floor exceeds the best hit. Rings from the
    // clamped query cell cover the whole grid, guaranteeing termination.
    int max_ring = std::max({nx_, ny_, nz_});
    for (int ring = 0; ring <= max_ring; ++ring) {
      double ring_floor = double(ring - 1) * cell_;
      if (ring > 0 && ring_floor * ring_floor > best) break;
      for (int dz = -ring; dz <= ring; ++dz)
        for (int dy = -ring; dy <= ring; ++dy)
          for (int dx = -ring; dx <= ring; ++dx) {
            if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) != ring) continue;
            int cx = qc[0] + dx, cy = qc[1] + dy, cz = qc[2] + dz;
            if (cx < 0 || cx >= nx_ || cy < 0 || cy >= ny_ || cz < 0 || cz >= nz_) continue;
            for (int si : cells_[(size_t(cz) * ny_ + cy) * nx_ + cx]) {
              double d = length_sq(p - samples_[size_t(si)]);
              if (d < best || (d == best && si < best_i)) {
                best = d;
                best_i = si;
              }
            }
          }
    }
    return best_i;
  }

 private:
  std::array<int, 3> coord(const WorldPoint& p) const {
    auto axis = [&](double v, double lo, int n) {
      return std::clamp(int((v - lo) / cell_), 0, n - 1);
    };
    return {axis(p.x, lo_.x, nx_), axis(p.y, lo_.y, ny_), axis(p.z, lo_.z, nz_)};
  }
  size_t cell_index(const std::array<int, 3>& c) const {
    return (size_t(c[2]) * ny_ + c[1]) * nx_ + c[0];
  }

  const std::vector<WorldPoint>& samples_;
  Vec3 lo_, hi_;
  double cell_ = 1.0;
  int nx_ = 1, ny_ = 1, nz_ = 1;
  std::vector<std::vector<int>> cells_;
};

}  // namespace

std::vector<int> nearest_sample_indices(const std::vector<WorldPoint>& samples,
                                        const std::vector<WorldPoint>& queries) {
  std::vector<int> nearest(queries.size(), 0);
  if (samples.empty()) return nearest;
  SampleGrid grid(samples);
  parallel_for(0, int64_t(queries.size()),
               [&](int64_t q) { nearest[size_t(q)] = grid.nearest(queries[size_t(q)]); });
  return nearest;
}

namespace {

std::vector<int> nearest_sample_per_vertex(const TriMesh& mesh,
                                           const std::vector<WorldPoint>& samples) {
  return nearest_sample_indices(samples, mesh.vertices);
}

}  // namespace

TriMesh orient_inward(const TriMesh& mesh, const Centerline& centerline) {
  if (centerline.points.size() < 2)
    throw degenerate_centerline("orientation requires a centerline with >= 2 points");
  TriMesh out = mesh;
  if (out.triangles.empty()) return out;
  if (out.normals.size() != out.vertices.size()) compute_vertex_normals(out);

  // Connect triangles across shared edges.
  DisjointSet ds(out.triangles.size());
  {
    std::unordered_map<uint64_t, int> first_tri;
    first_tri.reserve(out.triangles.size() * 2);
    for (size_t t = 0; t < out.triangles.size(); ++t) {
      for (int e = 0; e < 3; ++e) {
        int a = out.triangles[t][e], b = out.triangles[t][(e + 1) % 3];
        uint64_t key = (uint64_t(std::min(a, b)) << 32) | uint64_t(std::max(a, b));
        auto [it, inserted] = first_tri.emplace(key, int(t));
        if (!inserted) ds.unite(it->second, int(t));
      }
    }
  }

  std::vector<int> nearest = nearest_sample_per_vertex(out, centerline.points);

  // One vote per vertex per component it appears in.
  std::unordered_map<int, std::pair<int64_t, int64_t>> votes;  // root -> (ok, flipped)
  {
    std::unordered_map<uint64_t, bool> seen;  // (root, vertex)
    for (size_t t = 0; t < out.triangles.size(); ++t) {
      int root = ds.find(int(t));
      for (int corner : out.triangles[t]) {
        uint64_t key = (uint64_t(root) << 32) | uint64_t(corner);
        if (!seen.emplace(key, true).second) continue;
        Vec3 dir = centerline.points[size_t(nearest[size_t(corner)])] - out.vertices[size_t(corner)];
        if (dot(out.normals[size_t(corner)], dir) >= 0.0)
          votes[root].first++;
        else
          votes[root].second++;
      }
    }
  }

  bool any_flip = false;
  for (size_t t = 0; t < out.triangles.size(); ++t) {
    auto& v = votes[ds.find(int(t))];
    if (v.second > v.first) {
      std::swap(out.triangles[t][1], out.triangles[t][2]);
      any_flip = true;
    }
  }
  if (any_flip) compute_vertex_normals(out);
  return out;
}

CenterlineFrameField build_frames(const Centerline& centerline) {
  if (centerline.points.size() < 2)
    throw degenerate_centerline("frame field requires >= 2 centerline points");
  const auto& pts = centerline.points;
  size_t n = pts.size();

  CenterlineFrameField field;
  field.frames.resize(n);
  field.total_arclength = centerline.total_length();

  std::vector<Vec3> tangents(n);
  for (size_t i = 0; i < n; ++i) {
    Vec3 t;
    if (i == 0)
      t = pts[1] - pts[0];
    else if (i == n - 1)
      t = pts[n - 1] - pts[n - 2];
    else
      t = pts[i + 1] - pts[i - 1];
    Vec3 tn = normalized(t);
    tangents[i] = length(tn) > 0.0 ? tn : (i > 0 ? tangents[i - 1] : Vec3{0, 0, 1});
  }

  // Initial normal from the world axis least aligned with the first tangent.
  Vec3 t0 = tangents[0];
  Vec3 axes[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  Vec3 pick = axes[0];
  double best = std::abs(dot(axes[0], t0));
  for (int a = 1; a < 3; ++a) {
    double d = std::abs(dot(axes[a], t0));
    if (d < best) {
      best = d;
      pick = axes[a];
    }
  }
  Vec3 r = normalized(pick - dot(pick, t0) * t0);

  for (size_t i = 0; i < n; ++i) {
    if (i > 0) {
      // Double reflection transport of the previous normal.
      Vec3 v1 = pts[i] - pts[i - 1];
      double c1 = dot(v1, v1);
      if (c1 > 0.0) {
        Vec3 rl = r - (2.0 / c1) * dot(v1, r) * v1;
        Vec3 tl = tangents[i - 1] - (2.0 / c1) * dot(v1, tangents[i - 1]) * v1;
        Vec3 v2 = tangents[i] - tl;
        double c2 = dot(v2, v2);
        if (c2 > 0.0) r = rl - (2.0 / c2) * dot(v2, rl) * v2;
        else r = rl;
      }
      r = normalized(r - dot(r, tangents[i]) * tangents[i]);
    }
    CenterlineFrame& fr = field.frames[i];
    fr.position = pts[i];
    fr.tangent = tangents[i];
    fr.normal = r;
    fr.binormal = cross(tangents[i], r);
    fr.arclength = centerline.arclength[i];
  }
  return field;
}

namespace {

struct UnwrapCorner {
  Vec3 pos;
  Vec3 nrm;
  double v = 0.0;
  double lu = 0.0;  // lifted u, may wander outside [0,1)
  int orig = -1;    // original vertex id, -1 for clip cuts
};

UnwrapCorner cut_corner(const UnwrapCorner& a, const UnwrapCorner& b, double plane) {
  double t = (plane - a.lu) / (b.lu - a.lu);
  UnwrapCorner c;
  c.pos = lerp(a.pos, b.pos, t);
  c.nrm = normalized(lerp(a.nrm, b.nrm, t));
  c.v = a.v + (b.v - a.v) * t;
  c.lu = plane;
  c.orig = -1;
  return c;
}

void split_polygon(const std::vector<UnwrapCorner>& poly, double plane,
                   std::vector<UnwrapCorner>& below, std::vector<UnwrapCorner>& above) {
  below.clear();
  above.clear();
  size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const UnwrapCorner& cur = poly[i];
    const UnwrapCorner& nxt = poly[(i + 1) % n];
    bool cur_below = cur.lu <= plane;
    bool nxt_below = nxt.lu <= plane;
    if (cur_below) below.push_back(cur);
    if (!cur_below || cur.lu == plane) above.push_back(cur);
    if (cur_below != nxt_below && cur.lu != plane && nxt.lu != plane) {
      UnwrapCorner c = cut_corner(cur, nxt, plane);
      below.push_back(c);
      above.push_back(c);
    }
  }
}

}  // namespace

TriMesh unwrap_uv(const TriMesh& mesh, const CenterlineFrameField& frames) {
  if (frames.frames.size() < 2) throw degenerate_centerline("frame field has < 2 samples");
  if (!(frames.total_arclength > 0.0)) throw degenerate_centerline("frame field has zero length");

  TriMesh out = mesh;
  if (out.normals.size() != out.vertices.size()) compute_vertex_normals(out);

  std::vector<WorldPoint> sample_pos(frames.frames.size());
  for (size_t i = 0; i < frames.frames.size(); ++i) sample_pos[i] = frames.frames[i].position;
  std::vector<int> nearest = nearest_sample_per_vertex(out, sample_pos);

  size_t base_count = out.vertices.size();
  out.uvs.assign(base_count, {0.0, 0.0});
  std::vector<double> base_u(base_count), base_v(base_count);
  for (size_t i = 0; i < base_count; ++i) {
    const CenterlineFrame& fr = frames.frames[size_t(nearest[i])];
    Vec3 offset = out.vertices[i] - fr.position;
    double u = std::atan2(dot(offset, fr.binormal), dot(offset, fr.normal)) / (2.0 * kPi);
    if (u < 0.0) u += 1.0;
    if (u >= 1.0) u = 0.0;
    double v = fr.arclength / frames.total_arclength;
    base_u[i] = u;
    base_v[i] = v;
    out.uvs[i] = {u, v};
  }

  const double kOneMinus = std::nextafter(1.0, 0.0);
  std::map<std::pair<int, uint64_t>, int> dup;  // (orig vertex, u bits) -> duplicated id

  auto emit_corner = [&](const UnwrapCorner& c, double shift) -> int {
    double u = c.lu - shift;
    if (u >= 1.0) u = kOneMinus;
    if (u < 0.0) u = 0.0;
    if (c.orig >= 0 && u == base_u[size_t(c.orig)]) return c.orig;
    if (c.orig >= 0) {
      uint64_t bits;
      std::memcpy(&bits, &u, sizeof(bits));
      auto [it, inserted] = dup.try_emplace({c.orig, bits}, int(out.vertices.size()));
      if (!inserted) return it->second;
    }
    int idx = int(out.vertices.size());
    out.vertices.push_back(c.pos);
    out.normals.push_back(c.nrm);
    out.uvs.push_back({u, c.v});
    return idx;
  };

  std::vector<std::array<int, 3>> new_tris;
  new_tris.reserve(mesh.triangles.size());

  std::vector<UnwrapCorner> poly, below, above;
  for (const auto& tri : mesh.triangles) {
    double u0 = base_u[size_t(tri[0])];
    double lifted[3];
    lifted[0] = u0;
    bool wrapped = false;  // any corner lifted across the seam
    for (int c = 1; c < 3; ++c) {
      double d = base_u[size_t(tri[c])] - u0;
      double turns = std::round(d);
      if (turns != 0.0) wrapped = true;
      lifted[c] = u0 + (d - turns);
    }
    double lo = std::min({lifted[0], lifted[1], lifted[2]});
    double hi = std::max({lifted[0], lifted[1], lifted[2]});

    std::vector<double> planes;
    for (double plane = std::floor(lo) + 1.0; plane < hi; plane += 1.0)
      if (plane > lo) planes.push_back(plane);
    if (hi - lo > 0.5) {
      for (double plane = std::floor(lo * 2.0) * 0.5 + 0.5; plane < hi; plane += 0.5)
        if (plane > lo && std::find(planes.begin(), planes.end(), plane) == planes.end())
          planes.push_back(plane);
      std::sort(planes.begin(), planes.end());
    }

    if (planes.empty() && !wrapped) {
      new_tris.push_back(tri);
      continue;
    }

    poly.clear();
    for (int c = 0; c < 3; ++c) {
      UnwrapCorner uc;
      uc.pos = out.vertices[size_t(tri[c])];
      uc.nrm = out.normals[size_t(tri[c])];
      uc.v = base_v[size_t(tri[c])];
      uc.lu = lifted[c];
      uc.orig = tri[c];
      poly.push_back(uc);
    }

    std::vector<std::vector<UnwrapCorner>> pieces;
    std::vector<UnwrapCorner> rest = poly;
    for (double plane : planes) {
      split_polygon(rest, plane, below, above);
      if (below.size() >= 3) pieces.push_back(below);
      rest = above;
    }
    if (rest.size() >= 3) pieces.push_back(rest);

    for (const auto& piece : pieces) {
      double pmin = piece[0].lu, pmax = piece[0].lu;
      for (const auto& c : piece) {
        pmin = std::min(pmin, c.lu);
        pmax = std::max(pmax, c.lu);
      }
      double shift = std::floor((pmin + pmax) * 0.5);
      for (size_t k = 1; k + 1 < piece.size(); ++k) {
        int ia = emit_corner(piece[0], shift);
        int ib = emit_corner(piece[k], shift);
        int ic = emit_corner(piece[k + 1], shift);
        const Vec3 &a = out.vertices[size_t(ia)], &b = out.vertices[size_t(ib)],
                   &c = out.vertices[size_t(ic)];
        if (triangle_area(a, b, c) >= 1e-12) new_tris.push_back({ia, ib, ic});
      }
    }
  }

  out.triangles = std::move(new_tris);
  return out;
}

double mesh_surface_area(const TriMesh& mesh) {
  double area = 0.0;
  for (const auto& tri : mesh.triangles)
    area += triangle_area(mesh.vertices[size_t(tri[0])], mesh.vertices[size_t(tri[1])],
                          mesh.vertices[size_t(tri[2])]);
  return area;
}

double mesh_signed_volume(const TriMesh& mesh) {
  double vol = 0.0;
  for (const auto& tri : mesh.triangles) {
    const Vec3& a = mesh.vertices[size_t(tri[0])];
    const Vec3& b = mesh.vertices[size_t(tri[1])];
    const Vec3& c = mesh.vertices[size_t(tri[2])];
    vol += dot(a, cross(b, c)) / 6.0;
  }
  return vol;
}

void save_obj(const TriMesh& mesh, const std::string& path) {
  std::ofstream outf(path);
  if (!outf) throw io_failure("cannot open " + path);
  std::string buf;
  buf.reserve(mesh.vertices.size() * 48);
  char line[160];
  for (const auto& p : mesh.vertices) {
    std::snprintf(line, sizeof(line), "v %.9g %.9g %.9g\n", p.x, p.y, p.z);
    buf += line;
  }
  if (mesh.has_uvs()) {
    for (const auto& uv : mesh.uvs) {
      std::snprintf(line, sizeof(line), "vt %.9g %.9g\n", uv[0], uv[1]);
      buf += line;
    }
  }
  for (const auto& n : mesh.normals) {
    std::snprintf(line, sizeof(line), "vn %.9g %.9g %.9g\n", n.x, n.y, n.z);
    buf += line;
  }
  for (const auto& tri : mesh.triangles) {
    if (mesh.has_uvs())
      std::snprintf(line, sizeof(line), "f %d/%d/%d %d/%d/%d %d/%d/%d\n", tri[0] + 1, tri[0] + 1,
                    tri[0] + 1, tri[1] + 1, tri[1] + 1, tri[1] + 1, tri[2] + 1, tri[2] + 1,
                    tri[2] + 1);
    else
      std::snprintf(line, sizeof(line), "f %d//%d %d//%d %d//%d\n", tri[0] + 1, tri[0] + 1,
                    tri[1] + 1, tri[1] + 1, tri[2] + 1, tri[2] + 1);
    buf += line;
  }
  outf << buf;
  if (!outf) throw io_failure("write failed on " + path);
}

TriMesh load_obj(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw missing_file(path);
  TriMesh mesh;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("v ", 0) == 0) {
      Vec3 p;
      if (std::sscanf(line.c_str(), "v %lf %lf %lf", &p.x, &p.y, &p.z) != 3)
        throw malformed_header(path + ": bad vertex: " + line);
      mesh.vertices.push_back(p);
    } else if (line.rfind("vt ", 0) == 0) {
      double u, v;
      if (std::sscanf(line.c_str(), "vt %lf %lf", &u, &v) != 2)
        throw malformed_header(path + ": bad texcoord: " + line);
      mesh.uvs.push_back({u, v});
    } else if (line.rfind("vn ", 0) == 0) {
      Vec3 n;
      if (std::sscanf(line.c_str(), "vn %lf %lf %lf", &n.x, &n.y, &n.z) != 3)
        throw malformed_header(path + ": bad normal: " + line);
      mesh.normals.push_back(n);
    } else if (line.rfind("f ", 0) == 0) {
      int v[3], t[3], n[3];
      if (std::sscanf(line.c_str(), "f %d/%d/%d %d/%d/%d %d/%d/%d", &v[0], &t[0], &n[0], &v[1],
                      &t[1], &n[1], &v[2], &t[2], &n[2]) == 9) {
        for (int c = 0; c < 3; ++c)
          if (v[c] != t[c] || v[c] != n[c])
            throw malformed_header(path + ": only unified v/vt/vn indexing is supported");
      } else if (std::sscanf(line.c_str(), "f %d//%d %d//%d %d//%d", &v[0], &n[0], &v[1], &n[1],
                             &v[2], &n[2]) == 6) {
        for (int c = 0; c < 3; ++c)
          if (v[c] != n[c]) throw malformed_header(path + ": only unified v//vn indexing is supported");
      } else {
        throw malformed_header(path + ": bad face: " + line);
      }
      mesh.triangles.push_back({v[0] - 1, v[1] - 1, v[2] - 1});
    }
  }
  return mesh;
}

}  // namespace colosynth
