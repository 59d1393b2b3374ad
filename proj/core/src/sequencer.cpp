#include "dfab/sequencer.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <set>
#include <string>
#include <tuple>

#include "dfab/error.hpp"

namespace dfab {

std::string_view to_string(CheckKind kind) {
  switch (kind) {
    case CheckKind::component_count:
      return "component_count";
    case CheckKind::overhang:
      return "overhang";
    case CheckKind::vertical_stack:
      return "vertical_stack";
    case CheckKind::connectivity:
      return "connectivity";
  }
  return "unknown";
}

std::string_view to_string(CheckStatus status) {
  return status == CheckStatus::passed ? "passed" : "failed";
}

namespace {

std::string describe(const CellIndex& c) {
  return "(" + std::to_string(c.i) + ", " + std::to_string(c.j) + ", " + std::to_string(c.k) + ")";
}

bool layer_order(const CellIndex& a, const CellIndex& b) {
  return std::tie(a.k, a.i, a.j) < std::tie(b.k, b.i, b.j);
}

}  // namespace

AssemblySequence naive_sort(const OccupancyGrid& grid) {
  AssemblySequence seq{{grid.begin(), grid.end()}};
  std::sort(seq.cells.begin(), seq.cells.end(), layer_order);
  return seq;
}

void require_covers(const AssemblySequence& seq, const OccupancyGrid& grid) {
  std::set<CellIndex> seen;
  for (const auto& c : seq.cells) {
    if (!seen.insert(c).second) {
      throw Error(ErrorCode::sequence_grid_mismatch, "cell " + describe(c) + " appears twice");
    }
    if (!grid.contains(c)) {
      throw Error(ErrorCode::sequence_grid_mismatch, "cell " + describe(c) + " is not occupied");
    }
  }
  if (seen.size() != grid.size()) {
    throw Error(ErrorCode::sequence_grid_mismatch,
                "sequence has " + std::to_string(seen.size()) + " cells, grid has " +
                    std::to_string(grid.size()));
  }
}

CheckResult check_sequence_connectivity(const AssemblySequence& seq, const OccupancyGrid& grid) {
  require_covers(seq, grid);
  CheckResult result{CheckKind::connectivity, CheckStatus::passed, {}, seq.cells.size()};
  std::set<CellIndex> placed;
  for (const auto& c : seq.cells) {
    const bool attached =
        c.k == 0 || std::any_of(kFaceNeighbors.begin(), kFaceNeighbors.end(),
                                [&](const CellIndex& d) { return placed.contains(c + d); });
    if (!attached) {
      result.status = CheckStatus::failed;
      result.cells = {c};
      return result;
    }
    placed.insert(c);
  }
  return result;
}

AssemblySequence connectivity_sort(const OccupancyGrid& grid) {
  std::map<int, std::vector<CellIndex>> layers;
  for (const auto& c : grid) layers[c.k].push_back(c);  // (i, j) order within a layer

  AssemblySequence seq;
  seq.cells.reserve(grid.size());
  std::set<CellIndex> placed;

  for (auto& [k, cells] : layers) {
    // Distance from each layer cell to its nearest placed cell, kept current
    // incrementally as cells are placed.
    std::vector<int> nearest(cells.size(), INT_MAX);
    for (std::size_t n = 0; n < cells.size(); ++n) {
      for (const auto& p : placed) nearest[n] = std::min(nearest[n], manhattan(cells[n], p));
    }
    std::vector<bool> done(cells.size(), false);
    for (std::size_t step = 0; step < cells.size(); ++step) {
      std::size_t best = cells.size();
      for (std::size_t n = 0; n < cells.size(); ++n) {
        if (done[n]) continue;
        const auto& c = cells[n];
        const bool reachable =
            k == 0 || std::any_of(kFaceNeighbors.begin(), kFaceNeighbors.end(),
                                  [&](const CellIndex& d) { return placed.contains(c + d); });
        if (!reachable) continue;
        // Strict comparison keeps the first, i.e. smallest (i, j), on ties.
        if (best == cells.size() || nearest[n] < nearest[best]) best = n;
      }
      if (best == cells.size()) {
        const auto it = std::find(done.begin(), done.end(), false);
        const auto& stuck = cells[static_cast<std::size_t>(it - done.begin())];
        throw Error(ErrorCode::unsequenceable,
                    "cell " + describe(stuck) + " has no placed face neighbor in layer order");
      }
      done[best] = true;
      const CellIndex chosen = cells[best];
      placed.insert(chosen);
      seq.cells.push_back(chosen);
      for (std::size_t n = 0; n < cells.size(); ++n) {
        if (!done[n]) nearest[n] = std::min(nearest[n], manhattan(cells[n], chosen));
      }
    }
  }
  return seq;
}

std::string_view to_string(SequencingMethod method) {
  return method == SequencingMethod::naive ? "naive" : "connectivity";
}

SequencePlan plan_sequence(const OccupancyGrid& grid, bool allow_reorder) {
  SequencePlan plan{naive_sort(grid), SequencingMethod::naive};
  if (allow_reorder && !check_sequence_connectivity(plan.sequence, grid).passed()) {
    plan = {connectivity_sort(grid), SequencingMethod::connectivity};
  }
  return plan;
}

}  // namespace dfab
