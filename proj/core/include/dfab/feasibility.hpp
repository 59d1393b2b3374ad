#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "dfab/check_result.hpp"
#include "dfab/config.hpp"
#include "dfab/discretizer.hpp"
#include "dfab/mesh_io.hpp"
#include "dfab/sequencer.hpp"

namespace dfab {

/// Passes iff 0 < |occupied| <= available. Throws Error{empty_assembly} on an empty grid.
CheckResult check_component_count(const OccupancyGrid& grid, const Inventory& inventory);

/// A cell is supported when it sits on the ground layer or on an occupied cell.
/// Every unsupported cell is measured by its shortest in-layer face-adjacent
/// path to a supported cell of the same layer (infinite when none exists);
/// cells farther than max_unsupported fail the check and are listed.
CheckResult check_overhang(const OccupancyGrid& grid, int max_unsupported = 3);

/// Removes overhanging cells, repeating until check_overhang passes.
OccupancyGrid remove_overhangs(const OccupancyGrid& grid, int max_unsupported = 3);

/// A free-standing run is a maximal vertical run of cells at one (i, j) none
/// of which has a horizontal face neighbor. Runs longer than max_stack fail;
/// the listed cells are those above the max_stack-th from each run's bottom.
CheckResult check_vertical_stack(const OccupancyGrid& grid, int max_stack = 4);

/// Cuts every offending run down to its bottom max_stack cells and sweeps the
/// overhangs this exposes, to a fixpoint where both checks pass.
OccupancyGrid truncate_stacks(const OccupancyGrid& grid, int max_stack = 4, int max_unsupported = 3);

struct RescaleResult {
  OccupancyGrid grid;
  TriangleMesh mesh;        ///< the mesh that produced `grid`
  double final_scale = 1.0;  ///< cumulative, relative to the input mesh
  int iterations = 0;
};

/// Fits the mesh to the workspace (shrink only), then repeatedly shrinks it
/// uniformly by (L - cell_size) / L, L being the current longest bounding-box
/// edge, re-voxelizing each time, until the count fits the inventory. Throws
/// Error{cannot_fit} when L would drop below one cell with too many components.
RescaleResult rescale_until_fits(const TriangleMesh& mesh, const Inventory& inventory,
                                 double cell_size, const Workspace& workspace,
                                 const VoxelizeOptions& voxelize_options = {});

/// One entry of the failure-handling log.
struct Modification {
  enum class Kind { rescale, remove_overhang, truncate_stack, connectivity_sort };
  Kind kind = Kind::rescale;
  int iteration = 0;                ///< rescale: 1-based iteration
  double factor = 1.0;              ///< rescale: factor applied this iteration
  double longest_edge = 0.0;        ///< rescale: longest edge after scaling (cm)
  std::size_t component_count = 0;  ///< component count after this step
  std::vector<CellIndex> cells;     ///< removals: cells removed

  friend bool operator==(const Modification&, const Modification&) = default;
};

std::string_view to_string(Modification::Kind kind);

struct FeasibilityReport {
  /// Statuses of the first-pass grid, before any failure handling.
  std::array<CheckResult, 4> results;
  /// Statuses of the returned grid and sequence.
  std::array<CheckResult, 4> final_results;
  std::vector<Modification> modifications;
  std::size_t final_component_count = 0;
  bool failure_handling = true;
  SequencingMethod sequencing = SequencingMethod::naive;
  /// Fit factor and cumulative scale; absent when started from a grid.
  std::optional<double> fit_scale;
  std::optional<double> final_scale;
  std::optional<RepairSummary> repair;

  const CheckResult& result(CheckKind kind) const { return results[static_cast<std::size_t>(kind)]; }
  const CheckResult& final_result(CheckKind kind) const {
    return final_results[static_cast<std::size_t>(kind)];
  }
};

struct FeasibilityOptions {
  bool failure_handling = true;
  FitOptions fit;
  VoxelizeOptions voxelize;
};

struct FeasibilityOutcome {
  OccupancyGrid grid;
  FeasibilityReport report;
  AssemblySequence sequence;
};

/// First-pass discretization of a (repaired) mesh: fit, grid, voxelize.
OccupancyGrid discretize(const TriangleMesh& mesh, const AssemblyConfig& config,
                         const FeasibilityOptions& options = {}, double* fit_scale = nullptr);

/// Runs the four checks on the first-pass grid, then (when enabled) rescales,
/// removes overhangs, truncates stacks and reorders the sequence until every
/// check passes. Throws Error{cannot_fit}, Error{empty_assembly},
/// Error{empty_after_modification} or Error{unsequenceable}.
FeasibilityOutcome run_feasibility(const TriangleMesh& mesh, const AssemblyConfig& config,
                                   const FeasibilityOptions& options = {});

/// Same as run_feasibility but starting from an existing first-pass grid.
/// `fitted_mesh` is the workspace-fitted mesh behind `grid`; without it a
/// failing component count cannot be repaired and raises Error{cannot_fit}.
FeasibilityOutcome run_feasibility(const OccupancyGrid& grid, const TriangleMesh* fitted_mesh,
                                   const AssemblyConfig& config,
                                   const FeasibilityOptions& options = {});

/// All four checks on a grid and a given sequence.
std::array<CheckResult, 4> run_checks(const OccupancyGrid& grid, const AssemblySequence& seq,
                                      const AssemblyConfig& config);

}  // namespace dfab
