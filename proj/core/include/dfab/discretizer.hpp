#pragma once

#include <array>
#include <cstddef>
#include <set>

#include "dfab/geometry.hpp"
#include "dfab/mesh_io.hpp"

namespace dfab {

inline constexpr double kDefaultCellSize = 10.0;  // cm, one prefabricated component

/// Uniform lattice of cubic cells. Cell (i, j, k) spans
/// origin + [i, i+1) * cell_size along x, and likewise for y and z.
struct GridSpec {
  Vec3 origin;
  double cell_size = kDefaultCellSize;
  std::array<int, 3> dims{1, 1, 1};

  Aabb cell_box(const CellIndex& c) const;
  Vec3 cell_center(const CellIndex& c) const;
  bool in_bounds(const CellIndex& c) const;
  std::size_t cell_count() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Assembly volume reachable by the robot, in centimeters.
struct Workspace {
  Vec3 extent{60.0, 50.0, 60.0};
};

/// Occupied cells of a GridSpec. Iteration order is lexicographic (i, j, k).
class OccupancyGrid {
 public:
  OccupancyGrid() = default;
  explicit OccupancyGrid(GridSpec spec) : spec_(spec) {}

  const GridSpec& spec() const { return spec_; }
  const std::set<CellIndex>& cells() const { return cells_; }

  bool contains(const CellIndex& c) const { return cells_.contains(c); }
  /// Throws std::out_of_range when c lies outside spec().dims.
  void insert(const CellIndex& c);
  bool erase(const CellIndex& c) { return cells_.erase(c) > 0; }

  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  auto begin() const { return cells_.begin(); }
  auto end() const { return cells_.end(); }

  friend bool operator==(const OccupancyGrid&, const OccupancyGrid&) = default;

 private:
  GridSpec spec_;
  std::set<CellIndex> cells_;
};

struct FitOptions {
  /// Upper bound on the fit factor; 1.0 means meshes are only ever shrunk.
  double max_scale = 1.0;
};

struct FitResult {
  TriangleMesh mesh;
  double scale_factor = 1.0;
};

/// Uniformly scales the mesh by min_axis(extent / bbox), capped at
/// options.max_scale, and moves its bounding-box minimum to the origin.
/// Axes with zero extent do not constrain the factor. Throws Error{empty_mesh}.
FitResult fit_to_workspace(const TriangleMesh& mesh, const Workspace& workspace,
                           const FitOptions& options = {});

/// Smallest grid anchored at box.min whose cells cover the box:
/// dims = max(1, ceil(extent / cell_size)).
GridSpec build_grid(const Aabb& box, double cell_size = kDefaultCellSize);

enum class InteriorMode {
  automatic,  ///< fill interior cells only when the mesh is watertight
  always,
  never,
};

struct VoxelizeOptions {
  InteriorMode interior = InteriorMode::automatic;
  /// Worker threads; results are identical for every value.
  unsigned threads = 1;
};

/// A cell is occupied when some triangle overlaps the open cell box with
/// positive measure (separating-axis test, 1e-9 cm tolerance, contact along a
/// shared face, edge or corner does not count), or when the cell center lies
/// inside the solid by ray parity.
OccupancyGrid voxelize(const TriangleMesh& mesh, const GridSpec& spec,
                       const VoxelizeOptions& options = {});

inline std::size_t component_count(const OccupancyGrid& grid) { return grid.size(); }

/// Triangle versus open axis-aligned box. Returns false when the two only touch.
bool triangle_overlaps_box(const Vec3& a, const Vec3& b, const Vec3& c, const Aabb& box,
                           double epsilon = 1e-9);

/// Ray parity inside test (majority over three fixed, non axis-aligned rays).
bool point_inside_mesh(const TriangleMesh& mesh, const Vec3& point);

}  // namespace dfab
