#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dfab/config.hpp"
#include "dfab/discretizer.hpp"
#include "dfab/feasibility.hpp"
#include "dfab/sequencer.hpp"
#include "dfab/toolpath.hpp"

namespace dfab {

struct PlacementStep {
  CellIndex cell;
  bool supported = false;       ///< on the ground or face-adjacent to a placed cell
  bool corridor_clear = false;  ///< nothing placed above the target below the plane
  bool plane_clear = false;     ///< plane clears the tallest placed component

  bool ok() const { return supported && corridor_clear && plane_clear; }
};

struct SimulationReport {
  bool ok = true;
  std::vector<PlacementStep> steps;
  std::optional<std::size_t> first_failure;
};

/// Replays the placements in order against a growing placed set.
/// Throws Error{sequence_grid_mismatch}.
SimulationReport simulate_assembly(const AssemblySequence& seq, const OccupancyGrid& grid,
                                   const AssemblyConfig& config);

/// Recomputes every check on `grid` and confirms they pass and agree with the
/// report's final statuses and component count.
bool verify_report_consistency(const FeasibilityReport& report, const OccupancyGrid& grid,
                               const AssemblyConfig& config);

/// First violation of the pick-and-place grammar, if any: command count,
/// vertical approach and retreat, plane-height travel, and grip or release
/// only at the bottom of a descent onto the source or a placement point.
std::optional<std::string> verify_toolpath(const Toolpath& path, const AssemblySequence& seq,
                                           const OccupancyGrid& grid, const AssemblyConfig& config);

}  // namespace dfab
