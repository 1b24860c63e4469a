#include "colosynth/centerline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "colosynth/errors.hpp"

namespace colosynth {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct NeighborTable {
  int offsets[26][3];
  double step_mm[26];
};

NeighborTable build_neighbors(double sx, double sy, double sz) {
  NeighborTable t{};
  int n = 0;
  for (int dz = -1; dz <= 1; ++dz)
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0 && dz == 0) continue;
        t.offsets[n][0] = dx;
        t.offsets[n][1] = dy;
        t.offsets[n][2] = dz;
        t.step_mm[n] = std::sqrt(dx * dx * sx * sx + dy * dy * sy * sy + dz * dz * sz * sz);
        ++n;
      }
  return t;
}

struct SearchResult {
  std::vector<double> cost;
  std::vector<int64_t> pred;
};

// Dijkstra over foreground voxels. `penalty` holds the per-voxel factor
// (max_dfb / dfb)^lambda; an edge pays step_mm * max(penalty_a, penalty_b).
// Pops and equal-cost predecessor updates are ordered by linear voxel index.
SearchResult dijkstra(const DistanceField& df, int64_t source, const std::vector<double>& penalty,
                      int64_t target /* -1 = full sweep */) {
  const int64_t count = int64_t(df.nx) * df.ny * df.nz;
  SearchResult r;
  r.cost.assign(size_t(count), kInf);
  r.pred.assign(size_t(count), -1);
  std::vector<uint8_t> done(size_t(count), 0);
  NeighborTable nt = build_neighbors(df.sx, df.sy, df.sz);

  using Entry = std::pair<double, int64_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
  r.cost[size_t(source)] = 0.0;
  heap.push({0.0, source});

  const int64_t stride_y = df.nx;
  const int64_t stride_z = int64_t(df.nx) * df.ny;

  while (!heap.empty()) {
    auto [c, u] = heap.top();
    heap.pop();
    if (done[size_t(u)]) continue;
    done[size_t(u)] = 1;
    if (u == target) break;

    int ux = int(u % df.nx);
    int uy = int((u / df.nx) % df.ny);
    int uz = int(u / stride_z);
    double pu = penalty[size_t(u)];

    for (int k = 0; k < 26; ++k) {
      int vx = ux + nt.offsets[k][0];
      int vy = uy + nt.offsets[k][1];
      int vz = uz + nt.offsets[k][2];
      if (vx < 0 || vx >= df.nx || vy < 0 || vy >= df.ny || vz < 0 || vz >= df.nz) continue;
      int64_t v = u + nt.offsets[k][0] + nt.offsets[k][1] * stride_y + nt.offsets[k][2] * stride_z;
      if (done[size_t(v)]) continue;
      if (df.dfb[size_t(v)] <= 0.0) continue;
      double w = nt.step_mm[k] * std::max(pu, penalty[size_t(v)]);
      double candidate = c + w;
      if (candidate < r.cost[size_t(v)]) {
        r.cost[size_t(v)] = candidate;
        r.pred[size_t(v)] = u;
        heap.push({candidate, v});
      } else if (candidate == r.cost[size_t(v)] && u < r.pred[size_t(v)]) {
        r.pred[size_t(v)] = u;
      }
    }
  }
  return r;
}

std::vector<double> penalty_field(const DistanceField& df, double lambda) {
  std::vector<double> penalty(df.dfb.size(), 1.0);
  if (lambda != 0.0) {
    for (size_t i = 0; i < df.dfb.size(); ++i)
      penalty[i] = df.dfb[i] > 0.0 ? std::pow(df.max_dfb / df.dfb[i], lambda) : kInf;
  }
  return penalty;
}

// The 26-connected metric inflates path lengths by up to ~12% depending on
// direction, which drags the raw cost argmax toward lattice-diagonal rim
// voxels. Among near-maximal voxels (within the metric slack) the true
// Euclidean distance from the source breaks the tie.
int64_t farthest_reached(const SearchResult& r, const DistanceField& df, int64_t source) {
  double best_cost = -1.0;
  for (int64_t i = 0; i < int64_t(r.cost.size()); ++i) {
    double c = r.cost[size_t(i)];
    if (c != kInf && c > best_cost) best_cost = c;
  }
  if (best_cost < 0.0) return -1;
  double diag = std::sqrt(df.sx * df.sx + df.sy * df.sy + df.sz * df.sz);
  double band = best_cost - (2.0 * diag + 0.12 * df.max_dfb);

  VoxelIndex s{int(source % df.nx), int((source / df.nx) % df.ny),
               int(source / (int64_t(df.nx) * df.ny))};
  Vec3 src = df.world(s[0], s[1], s[2]);
  int64_t best = -1;
  double best_euclid = -1.0;
  for (int64_t i = 0; i < int64_t(r.cost.size()); ++i) {
    double c = r.cost[size_t(i)];
    if (c == kInf || c < band) continue;
    VoxelIndex v{int(i % df.nx), int((i / df.nx) % df.ny), int(i / (int64_t(df.nx) * df.ny))};
    double e = length_sq(df.world(v[0], v[1], v[2]) - src);
    if (e > best_euclid) {
      best_euclid = e;
      best = i;
    }
  }
  return best;
}

VoxelIndex unpack(const DistanceField& df, int64_t linear) {
  return {int(linear % df.nx), int((linear / df.nx) % df.ny),
          int(linear / (int64_t(df.nx) * df.ny))};
}

}  // namespace

Centerline extract_centerline(const DistanceField& df, const VoxelIndex& start,
                              const VoxelIndex& end, double lambda) {
  if (lambda < 0.0) throw invalid_spec("lambda must be >= 0");
  auto check = [&](const VoxelIndex& v, const char* name) {
    if (v[0] < 0 || v[0] >= df.nx || v[1] < 0 || v[1] >= df.ny || v[2] < 0 || v[2] >= df.nz)
      throw endpoint_in_background(std::string(name) + " voxel is outside the volume");
    if (df.at(v[0], v[1], v[2]) <= 0.0)
      throw endpoint_in_background(std::string(name) + " voxel is background");
  };
  check(start, "start");
  check(end, "end");

  Centerline cl;
  int64_t s = df.linear(start[0], start[1], start[2]);
  int64_t e = df.linear(end[0], end[1], end[2]);
  if (s == e) {
    cl.points.push_back(df.world(start[0], start[1], start[2]));
    cl.arclength.push_back(0.0);
    cl.voxels.push_back(start);
    return cl;
  }

  std::vector<double> penalty = penalty_field(df, lambda);
  SearchResult r = dijkstra(df, s, penalty, e);
  if (r.cost[size_t(e)] == kInf)
    throw disconnected("no 26-connected foreground path between the endpoints");

  std::vector<int64_t> chain;
  for (int64_t v = e; v != -1; v = r.pred[size_t(v)]) chain.push_back(v);
  std::reverse(chain.begin(), chain.end());

  cl.total_cost = r.cost[size_t(e)];
  cl.points.reserve(chain.size());
  cl.voxels.reserve(chain.size());
  cl.arclength.reserve(chain.size());
  double s_mm = 0.0;
  for (size_t i = 0; i < chain.size(); ++i) {
    VoxelIndex v = unpack(df, chain[i]);
    WorldPoint p = df.world(v[0], v[1], v[2]);
    if (i > 0) s_mm += distance(p, cl.points.back());
    cl.voxels.push_back(v);
    cl.points.push_back(p);
    cl.arclength.push_back(s_mm);
  }
  return cl;
}

std::pair<VoxelIndex, VoxelIndex> auto_endpoints(const DistanceField& df) {
  int64_t deepest = -1;
  double best = 0.0;
  for (int64_t i = 0; i < int64_t(df.dfb.size()); ++i) {
    if (df.dfb[size_t(i)] > best) {
      best = df.dfb[size_t(i)];
      deepest = i;
    }
  }
  if (deepest < 0) throw empty_mask();

  std::vector<double> penalty(df.dfb.size(), 1.0);
  SearchResult sweep1 = dijkstra(df, deepest, penalty, -1);
  int64_t start = farthest_reached(sweep1, df, deepest);
  SearchResult sweep2 = dijkstra(df, start, penalty, -1);
  int64_t end = farthest_reached(sweep2, df, start);
  return {unpack(df, start), unpack(df, end)};
}

WaypointPath resample_waypoints(const Centerline& centerline, double requested_spacing_mm) {
  if (centerline.points.size() < 2)
    throw degenerate_centerline("resampling requires at least 2 centerline points");
  if (!(requested_spacing_mm > 0.0)) throw invalid_spec("waypoint spacing must be positive");
  double total = centerline.total_length();
  if (!(total > 0.0)) throw degenerate_centerline("centerline has zero length");

  int64_t segments = std::max<int64_t>(1, int64_t(std::llround(total / requested_spacing_mm)));
  WaypointPath path;
  path.spacing_mm = total / double(segments);
  path.waypoints.reserve(size_t(segments) + 1);

  const auto& pts = centerline.points;
  const auto& arc = centerline.arclength;
  size_t cursor = 0;
  for (int64_t k = 0; k <= segments; ++k) {
    if (k == 0) {
      path.waypoints.push_back(pts.front());
      continue;
    }
    if (k == segments) {
      path.waypoints.push_back(pts.back());
      continue;
    }
    double target = double(k) * total / double(segments);
    while (cursor + 1 < arc.size() && arc[cursor + 1] < target) ++cursor;
    double seg_len = arc[cursor + 1] - arc[cursor];
    double t = seg_len > 0.0 ? (target - arc[cursor]) / seg_len : 0.0;
    path.waypoints.push_back(lerp(pts[cursor], pts[cursor + 1], t));
  }
  return path;
}

}  // namespace colosynth
