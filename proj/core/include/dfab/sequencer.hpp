#pragma once

#include <string_view>
#include <vector>

#include "dfab/check_result.hpp"
#include "dfab/discretizer.hpp"

namespace dfab {

/// Cells in placement order.
struct AssemblySequence {
  std::vector<CellIndex> cells;

  friend bool operator==(const AssemblySequence&, const AssemblySequence&) = default;
};

/// Layer by layer (k), then x (i), then y (j). No connectivity guarantee.
AssemblySequence naive_sort(const OccupancyGrid& grid);

/// Passes when every cell above the ground layer touches, by a face, a cell
/// placed earlier. Throws Error{sequence_grid_mismatch} when the sequence is
/// not a permutation of the grid's cells.
CheckResult check_sequence_connectivity(const AssemblySequence& seq, const OccupancyGrid& grid);

/// Bottom-up, one layer at a time. Inside a layer the next cell is the one
/// closest (Manhattan distance in cell indices) to anything already placed,
/// among cells that sit on the ground or share a face with a placed cell;
/// ties go to the smallest (i, j). Throws Error{unsequenceable} when a layer
/// holds a cell that cannot be reached that way.
AssemblySequence connectivity_sort(const OccupancyGrid& grid);

enum class SequencingMethod { naive, connectivity };

std::string_view to_string(SequencingMethod method);

struct SequencePlan {
  AssemblySequence sequence;
  SequencingMethod method = SequencingMethod::naive;
};

/// The naive order when it already passes the connectivity check (or when
/// reordering is disallowed), connectivity_sort otherwise.
SequencePlan plan_sequence(const OccupancyGrid& grid, bool allow_reorder = true);

/// Throws Error{sequence_grid_mismatch} unless seq is a permutation of the grid's cells.
void require_covers(const AssemblySequence& seq, const OccupancyGrid& grid);

}  // namespace dfab
