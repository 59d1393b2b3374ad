#pragma once

#include <set>

#include "dfab/geometry.hpp"
#include "dfab/mesh_io.hpp"

namespace dfab::shapes {

/// Closed, outward-oriented box with 8 vertices and 12 triangles.
TriangleMesh box(const Vec3& min, const Vec3& max);

/// Closed UV sphere; `slices` around the axis, `stacks` pole to pole.
TriangleMesh uv_sphere(const Vec3& center, double radius, int slices = 64, int stacks = 32);

/// Boundary surface of a union of lattice cubes of edge `cell_size` whose
/// minimum corner is `origin`. Only exposed faces are emitted, each as two
/// triangles, with vertices shared on the lattice.
TriangleMesh voxel_surface(const std::set<CellIndex>& cells, double cell_size, const Vec3& origin = {});

/// Concatenate meshes without welding.
TriangleMesh merge(const TriangleMesh& a, const TriangleMesh& b);

}  // namespace dfab::shapes
