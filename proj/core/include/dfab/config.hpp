#pragma once

#include <cstddef>
#include <optional>

#include "dfab/discretizer.hpp"
#include "dfab/geometry.hpp"

namespace dfab {

/// Physical components on hand.
struct Inventory {
  std::size_t available_components = 40;
};

struct FeasibilityLimits {
  /// Longest tolerated in-layer distance from an unsupported cell to support.
  int max_unsupported = 3;
  /// Longest tolerated free-standing vertical run.
  int max_stack = 4;
};

/// Everything the planner needs to know about the physical cell.
struct AssemblyConfig {
  Workspace workspace;
  double cell_size = kDefaultCellSize;
  Inventory inventory;
  FeasibilityLimits limits;
  /// Tool point at which components are picked (cm).
  Vec3 source{75.0, 25.0, 10.0};
  /// Safe travel height of the tool point (cm).
  double movement_plane_z = 72.0;
  double clearance = 2.0;
  /// Height of the tool point above a component's base while gripped. Unset
  /// means top grip, i.e. one cell size.
  std::optional<double> grip_offset;

  double effective_grip_offset() const { return grip_offset.value_or(cell_size); }
};

/// Throws Error{config_violation} naming the first broken invariant.
void validate(const AssemblyConfig& config);

/// Additionally requires the source to sit outside the grid's xy footprint.
void validate(const AssemblyConfig& config, const GridSpec& grid);

}  // namespace dfab
