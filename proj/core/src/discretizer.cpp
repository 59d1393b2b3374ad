#include "dfab/discretizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "dfab/error.hpp"

namespace dfab {

Aabb GridSpec::cell_box(const CellIndex& c) const {
  const Vec3 lo = origin + Vec3{c.i * cell_size, c.j * cell_size, c.k * cell_size};
  return {lo, lo + Vec3{cell_size, cell_size, cell_size}};
}

Vec3 GridSpec::cell_center(const CellIndex& c) const {
  return origin + Vec3{(c.i + 0.5) * cell_size, (c.j + 0.5) * cell_size, (c.k + 0.5) * cell_size};
}

bool GridSpec::in_bounds(const CellIndex& c) const {
  return c.i >= 0 && c.j >= 0 && c.k >= 0 && c.i < dims[0] && c.j < dims[1] && c.k < dims[2];
}

std::size_t GridSpec::cell_count() const {
  return static_cast<std::size_t>(dims[0]) * static_cast<std::size_t>(dims[1]) *
         static_cast<std::size_t>(dims[2]);
}

void OccupancyGrid::insert(const CellIndex& c) {
  if (!spec_.in_bounds(c)) {
    throw std::out_of_range("cell (" + std::to_string(c.i) + ", " + std::to_string(c.j) + ", " +
                            std::to_string(c.k) + ") outside grid dims");
  }
  cells_.insert(c);
}

FitResult fit_to_workspace(const TriangleMesh& mesh, const Workspace& workspace,
                           const FitOptions& options) {
  const Aabb box = bounding_box(mesh);
  const Vec3 size = box.extent();
  double factor = options.max_scale;
  for (int a = 0; a < 3; ++a) {
    if (workspace.extent[a] <= 0.0) {
      throw Error(ErrorCode::config_violation, "workspace extents must be positive");
    }
    if (size[a] > 0.0) factor = std::min(factor, workspace.extent[a] / size[a]);
  }
  FitResult result{mesh, factor};
  for (auto& v : result.mesh.vertices) v = (v - box.min) * factor;
  return result;
}

GridSpec build_grid(const Aabb& box, double cell_size) {
  if (!(cell_size > 0.0)) throw Error(ErrorCode::config_violation, "cell size must be positive");
  GridSpec spec;
  spec.origin = box.min;
  spec.cell_size = cell_size;
  const Vec3 size = box.extent();
  for (int a = 0; a < 3; ++a) {
    // Snap ratios within 1e-9 of an integer so rescaled meshes do not grow a sliver layer.
    const double cells = std::ceil(size[a] / cell_size - 1e-9);
    spec.dims[static_cast<std::size_t>(a)] = std::max(1, static_cast<int>(cells));
  }
  return spec;
}

bool triangle_overlaps_box(const Vec3& a, const Vec3& b, const Vec3& c, const Aabb& box,
                           double epsilon) {
  const Vec3 center = (box.min + box.max) * 0.5;
  const Vec3 half = (box.max - box.min) * 0.5;
  const std::array<Vec3, 3> v{a - center, b - center, c - center};

  // Intervals that overlap by no more than epsilon are treated as separated.
  auto separated = [&](const Vec3& axis) {
    const double p0 = dot(v[0], axis);
    const double p1 = dot(v[1], axis);
    const double p2 = dot(v[2], axis);
    const double lo = std::min({p0, p1, p2});
    const double hi = std::max({p0, p1, p2});
    const double r = half.x * std::abs(axis.x) + half.y * std::abs(axis.y) + half.z * std::abs(axis.z);
    return lo >= r - epsilon || hi <= -r + epsilon;
  };

  static constexpr std::array<Vec3, 3> box_axes{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  for (const auto& axis : box_axes) {
    if (separated(axis)) return false;
  }

  const std::array<Vec3, 3> edges{v[1] - v[0], v[2] - v[1], v[0] - v[2]};
  const Vec3 n = cross(edges[0], edges[1]);
  if (const double len = norm(n); len > 1e-15) {
    if (separated(n * (1.0 / len))) return false;
  }

  for (const auto& e : edges) {
    for (const auto& u : box_axes) {
      const Vec3 axis = cross(u, e);
      const double len = norm(axis);
      if (len <= 1e-12) continue;
      if (separated(axis * (1.0 / len))) return false;
    }
  }
  return true;
}

namespace {

// Moller-Trumbore; counts hits strictly in front of the origin.
bool ray_hits_triangle(const Vec3& origin, const Vec3& dir, const Vec3& a, const Vec3& b,
                       const Vec3& c) {
  constexpr double kEps = 1e-12;
  const Vec3 e1 = b - a;
  const Vec3 e2 = c - a;
  const Vec3 p = cross(dir, e2);
  const double det = dot(e1, p);
  if (std::abs(det) < kEps) return false;
  const double inv = 1.0 / det;
  const Vec3 s = origin - a;
  const double u = dot(s, p) * inv;
  if (u < 0.0 || u > 1.0) return false;
  const Vec3 q = cross(s, e1);
  const double w = dot(dir, q) * inv;
  if (w < 0.0 || u + w > 1.0) return false;
  return dot(e2, q) * inv > kEps;
}

}  // namespace

namespace {

// Irrational-looking directions keep rays away from lattice-aligned edges.
const std::array<Vec3, 3>& probe_rays() {
  static const std::array<Vec3, 3> rays = [] {
    std::array<Vec3, 3> r{{{0.5377, 0.3193, 0.7803}, {-0.4111, 0.8462, 0.3390}, {0.2419, -0.6143, 0.7510}}};
    for (auto& d : r) d = d * (1.0 / norm(d));
    return r;
  }();
  return rays;
}

// Majority of three parity votes; `hits(dir)` counts crossings along one ray.
template <class CountHits>
bool majority_inside(CountHits&& hits) {
  int votes = 0;
  for (const auto& dir : probe_rays()) votes += hits(dir) % 2;
  return votes >= 2;
}

Aabb triangle_box(const TriangleMesh& mesh, std::size_t t) {
  Aabb b{mesh.corner(t, 0), mesh.corner(t, 0)};
  for (int v = 1; v < 3; ++v) {
    const Vec3 p = mesh.corner(t, v);
    for (int a = 0; a < 3; ++a) {
      b.min[a] = std::min(b.min[a], p[a]);
      b.max[a] = std::max(b.max[a], p[a]);
    }
  }
  return b;
}

// Median-split bounding volume hierarchy over triangle boxes. Node boxes are
// padded slightly so that traversal never drops a triangle the exact tests
// would accept.
class TriangleTree {
 public:
  explicit TriangleTree(const std::vector<Aabb>& boxes) : boxes_(boxes) {
    order_.resize(boxes.size());
    for (std::uint32_t t = 0; t < order_.size(); ++t) order_[t] = t;
    if (!order_.empty()) build(0, static_cast<std::uint32_t>(order_.size()));
  }

  // Calls f(t) for every triangle whose padded box the ray from `origin` meets.
  template <class F>
  void visit_ray(const Vec3& origin, const Vec3& dir, F&& f) const {
    if (nodes_.empty()) return;
    const Vec3 inv{1.0 / dir.x, 1.0 / dir.y, 1.0 / dir.z};
    walk(0, [&](const Aabb& b) { return ray_meets(origin, inv, b); }, f);
  }

  // Calls f(t) for every triangle whose box has a positive-volume overlap with q.
  template <class F>
  void visit_box(const Aabb& q, F&& f) const {
    if (nodes_.empty()) return;
    walk(0, [&](const Aabb& b) { return open_overlap(b, q); }, [&](std::uint32_t t) {
      if (open_overlap(boxes_[t], q)) f(t);
    });
  }

 private:
  struct Node {
    Aabb box;
    std::int32_t left = -1, right = -1;
    std::uint32_t begin = 0, end = 0;
  };
  static constexpr std::uint32_t kLeafSize = 8;

  static bool open_overlap(const Aabb& a, const Aabb& b) {
    return a.max.x > b.min.x && a.min.x < b.max.x && a.max.y > b.min.y && a.min.y < b.max.y &&
           a.max.z > b.min.z && a.min.z < b.max.z;
  }

  static bool ray_meets(const Vec3& o, const Vec3& inv, const Aabb& b) {
    double t0 = 0.0, t1 = INFINITY;
    for (int a = 0; a < 3; ++a) {
      double near = (b.min[a] - o[a]) * inv[a];
      double far = (b.max[a] - o[a]) * inv[a];
      if (near > far) std::swap(near, far);
      t0 = std::max(t0, near);
      t1 = std::min(t1, far);
      if (t0 > t1) return false;
    }
    return true;
  }

  std::int32_t build(std::uint32_t begin, std::uint32_t end) {
    Node node;
    node.begin = begin;
    node.end = end;
    node.box = boxes_[order_[begin]];
    for (std::uint32_t n = begin + 1; n < end; ++n) {
      const Aabb& b = boxes_[order_[n]];
      for (int a = 0; a < 3; ++a) {
        node.box.min[a] = std::min(node.box.min[a], b.min[a]);
        node.box.max[a] = std::max(node.box.max[a], b.max[a]);
      }
    }
    for (int a = 0; a < 3; ++a) {
      const double pad = 1e-9 * (1.0 + std::max(std::abs(node.box.min[a]), std::abs(node.box.max[a])));
      node.box.min[a] -= pad;
      node.box.max[a] += pad;
    }
    const auto id = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back(node);
    if (end - begin <= kLeafSize) return id;

    const Vec3 e = node.box.extent();
    const int axis = e.x >= e.y && e.x >= e.z ? 0 : (e.y >= e.z ? 1 : 2);
    const std::uint32_t mid = begin + (end - begin) / 2;
    auto centroid = [&](std::uint32_t t) { return boxes_[t].min[axis] + boxes_[t].max[axis]; };
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](std::uint32_t a, std::uint32_t b) {
                       return centroid(a) < centroid(b) || (centroid(a) == centroid(b) && a < b);
                     });
    const std::int32_t left = build(begin, mid);
    const std::int32_t right = build(mid, end);
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
  }

  template <class Accept, class F>
  void walk(std::int32_t id, const Accept& accept, F&& f) const {
    const Node& node = nodes_[id];
    if (!accept(node.box)) return;
    if (node.left < 0) {
      for (std::uint32_t n = node.begin; n < node.end; ++n) f(order_[n]);
      return;
    }
    walk(node.left, accept, f);
    walk(node.right, accept, f);
  }

  const std::vector<Aabb>& boxes_;
  std::vector<std::uint32_t> order_;
  std::vector<Node> nodes_;
};

}  // namespace

bool point_inside_mesh(const TriangleMesh& mesh, const Vec3& point) {
  return majority_inside([&](const Vec3& dir) {
    int hits = 0;
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
      hits += ray_hits_triangle(point, dir, mesh.corner(t, 0), mesh.corner(t, 1), mesh.corner(t, 2));
    }
    return hits;
  });
}

OccupancyGrid voxelize(const TriangleMesh& mesh, const GridSpec& spec, const VoxelizeOptions& options) {
  if (!(spec.cell_size > 0.0) || spec.dims[0] < 1 || spec.dims[1] < 1 || spec.dims[2] < 1) {
    throw Error(ErrorCode::config_violation, "invalid grid spec");
  }
  const bool fill_interior =
      options.interior == InteriorMode::always ||
      (options.interior == InteriorMode::automatic && is_watertight(mesh));

  std::vector<Aabb> tri_boxes;
  tri_boxes.reserve(mesh.triangles.size());
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) tri_boxes.push_back(triangle_box(mesh, t));
  const TriangleTree tree(tri_boxes);
  auto inside = [&](const Vec3& p) {
    return majority_inside([&](const Vec3& dir) {
      int hits = 0;
      tree.visit_ray(p, dir, [&](std::uint32_t t) {
        hits += ray_hits_triangle(p, dir, mesh.corner(t, 0), mesh.corner(t, 1), mesh.corner(t, 2));
      });
      return hits;
    });
  };

  const auto [nx, ny, nz] = spec.dims;
  const std::size_t total = spec.cell_count();
  auto index_of = [&](std::size_t n) {
    const int i = static_cast<int>(n / (static_cast<std::size_t>(ny) * nz));
    const int j = static_cast<int>((n / nz) % ny);
    const int k = static_cast<int>(n % nz);
    return CellIndex{i, j, k};
  };

  std::vector<char> occupied(total, 0);
  auto evaluate = [&](std::size_t begin, std::size_t end) {
    for (std::size_t n = begin; n < end; ++n) {
      const CellIndex cell = index_of(n);
      const Aabb box = spec.cell_box(cell);
      bool hit = false;
      tree.visit_box(box, [&](std::uint32_t t) {
        hit = hit || triangle_overlaps_box(mesh.corner(t, 0), mesh.corner(t, 1), mesh.corner(t, 2), box);
      });
      if (!hit && fill_interior) hit = inside(spec.cell_center(cell));
      occupied[n] = hit ? 1 : 0;
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(total)));
  if (workers == 1) {
    evaluate(0, total);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(total, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(evaluate, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  OccupancyGrid grid(spec);
  for (std::size_t n = 0; n < total; ++n) {
    if (occupied[n]) grid.insert(index_of(n));
  }
  return grid;
}

}  // namespace dfab
