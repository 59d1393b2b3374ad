#include "dfab/shapes.hpp"

#include <map>
#include <numbers>

namespace dfab::shapes {

TriangleMesh box(const Vec3& min, const Vec3& max) {
  TriangleMesh mesh;
  mesh.vertices = {
      {min.x, min.y, min.z}, {max.x, min.y, min.z}, {max.x, max.y, min.z}, {min.x, max.y, min.z},
      {min.x, min.y, max.z}, {max.x, min.y, max.z}, {max.x, max.y, max.z}, {min.x, max.y, max.z},
  };
  mesh.triangles = {
      {0, 2, 1}, {0, 3, 2},  // bottom (-z)
      {4, 5, 6}, {4, 6, 7},  // top (+z)
      {0, 1, 5}, {0, 5, 4},  // front (-y)
      {3, 7, 6}, {3, 6, 2},  // back (+y)
      {0, 4, 7}, {0, 7, 3},  // left (-x)
      {1, 2, 6}, {1, 6, 5},  // right (+x)
  };
  return mesh;
}

TriangleMesh uv_sphere(const Vec3& center, double radius, int slices, int stacks) {
  TriangleMesh mesh;
  const auto s = static_cast<std::uint32_t>(slices);
  mesh.vertices.push_back(center + Vec3{0.0, 0.0, radius});
  for (int st = 1; st < stacks; ++st) {
    const double phi = std::numbers::pi * st / stacks;
    for (int sl = 0; sl < slices; ++sl) {
      const double theta = 2.0 * std::numbers::pi * sl / slices;
      mesh.vertices.push_back(center + Vec3{radius * std::sin(phi) * std::cos(theta),
                                            radius * std::sin(phi) * std::sin(theta),
                                            radius * std::cos(phi)});
    }
  }
  const auto south = static_cast<std::uint32_t>(mesh.vertices.size());
  mesh.vertices.push_back(center - Vec3{0.0, 0.0, radius});

  auto ring = [&](int st, std::uint32_t sl) { return 1 + static_cast<std::uint32_t>(st - 1) * s + sl % s; };
  for (std::uint32_t sl = 0; sl < s; ++sl) {
    mesh.triangles.push_back({0, ring(1, sl), ring(1, sl + 1)});
  }
  for (int st = 1; st + 1 < stacks; ++st) {
    for (std::uint32_t sl = 0; sl < s; ++sl) {
      const auto a = ring(st, sl);
      const auto b = ring(st, sl + 1);
      const auto c = ring(st + 1, sl);
      const auto d = ring(st + 1, sl + 1);
      mesh.triangles.push_back({a, c, d});
      mesh.triangles.push_back({a, d, b});
    }
  }
  for (std::uint32_t sl = 0; sl < s; ++sl) {
    mesh.triangles.push_back({south, ring(stacks - 1, sl + 1), ring(stacks - 1, sl)});
  }
  return mesh;
}

TriangleMesh voxel_surface(const std::set<CellIndex>& cells, double cell_size, const Vec3& origin) {
  TriangleMesh mesh;
  std::map<CellIndex, std::uint32_t> lattice;  // lattice point -> vertex index
  auto vertex = [&](int i, int j, int k) {
    const CellIndex key{i, j, k};
    const auto [it, inserted] = lattice.emplace(key, static_cast<std::uint32_t>(mesh.vertices.size()));
    if (inserted) {
      mesh.vertices.push_back(origin + Vec3{i * cell_size, j * cell_size, k * cell_size});
    }
    return it->second;
  };
  // Quad corners listed counter-clockwise seen from outside, per face direction.
  struct Face {
    CellIndex normal;
    std::array<CellIndex, 4> corners;
  };
  static constexpr std::array<Face, 6> faces{{
      {{-1, 0, 0}, {{{0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {0, 1, 0}}}},
      {{1, 0, 0}, {{{1, 0, 0}, {1, 1, 0}, {1, 1, 1}, {1, 0, 1}}}},
      {{0, -1, 0}, {{{0, 0, 0}, {1, 0, 0}, {1, 0, 1}, {0, 0, 1}}}},
      {{0, 1, 0}, {{{0, 1, 0}, {0, 1, 1}, {1, 1, 1}, {1, 1, 0}}}},
      {{0, 0, -1}, {{{0, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, 0, 0}}}},
      {{0, 0, 1}, {{{0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}}}},
  }};
  for (const auto& c : cells) {
    for (const auto& f : faces) {
      if (cells.contains(c + f.normal)) continue;
      std::array<std::uint32_t, 4> q{};
      for (std::size_t n = 0; n < 4; ++n) {
        const auto p = c + f.corners[n];
        q[n] = vertex(p.i, p.j, p.k);
      }
      mesh.triangles.push_back({q[0], q[1], q[2]});
      mesh.triangles.push_back({q[0], q[2], q[3]});
    }
  }
  return mesh;
}

TriangleMesh merge(const TriangleMesh& a, const TriangleMesh& b) {
  TriangleMesh out = a;
  const auto offset = static_cast<std::uint32_t>(a.vertices.size());
  out.vertices.insert(out.vertices.end(), b.vertices.begin(), b.vertices.end());
  for (const auto& t : b.triangles) {
    out.triangles.push_back({t[0] + offset, t[1] + offset, t[2] + offset});
  }
  return out;
}

}  // namespace dfab::shapes
