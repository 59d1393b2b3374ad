#include "dfab/feasibility.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <map>
#include <string>

#include "dfab/error.hpp"

namespace dfab {

std::string_view to_string(Modification::Kind kind) {
  switch (kind) {
    case Modification::Kind::rescale:
      return "rescale";
    case Modification::Kind::remove_overhang:
      return "remove_overhang";
    case Modification::Kind::truncate_stack:
      return "truncate_stack";
    case Modification::Kind::connectivity_sort:
      return "connectivity_sort";
  }
  return "unknown";
}

CheckResult check_component_count(const OccupancyGrid& grid, const Inventory& inventory) {
  if (grid.empty()) throw Error(ErrorCode::empty_assembly, "assembly has no components");
  const auto n = component_count(grid);
  return {CheckKind::component_count,
          n <= inventory.available_components ? CheckStatus::passed : CheckStatus::failed,
          {},
          n};
}

CheckResult check_overhang(const OccupancyGrid& grid, int max_unsupported) {
  std::map<int, std::vector<CellIndex>> layers;
  for (const auto& c : grid) layers[c.k].push_back(c);

  CheckResult result{CheckKind::overhang, CheckStatus::passed, {}, 0};
  for (const auto& [k, cells] : layers) {
    if (k == 0) continue;  // ground supports the whole layer
    std::map<CellIndex, int> dist;
    std::deque<CellIndex> frontier;
    for (const auto& c : cells) {
      if (grid.contains({c.i, c.j, c.k - 1})) {
        dist[c] = 0;
        frontier.push_back(c);
      }
    }
    while (!frontier.empty()) {
      const auto c = frontier.front();
      frontier.pop_front();
      for (const auto& d : kHorizontalNeighbors) {
        const auto n = c + d;
        if (grid.contains(n) && !dist.contains(n)) {
          dist[n] = dist[c] + 1;
          frontier.push_back(n);
        }
      }
    }
    for (const auto& c : cells) {
      const auto it = dist.find(c);
      if (it == dist.end() || it->second > max_unsupported) result.cells.push_back(c);
    }
  }
  std::sort(result.cells.begin(), result.cells.end());
  result.count = result.cells.size();
  if (!result.cells.empty()) result.status = CheckStatus::failed;
  return result;
}

CheckResult check_vertical_stack(const OccupancyGrid& grid, int max_stack) {
  auto braced = [&](const CellIndex& c) {
    return std::any_of(kHorizontalNeighbors.begin(), kHorizontalNeighbors.end(),
                       [&](const CellIndex& d) { return grid.contains(c + d); });
  };
  CheckResult result{CheckKind::vertical_stack, CheckStatus::passed, {}, 0};
  // Grid order is (i, j, k), so each column arrives bottom to top.
  std::vector<CellIndex> run;
  auto close_run = [&] {
    if (static_cast<int>(run.size()) > max_stack) {
      result.cells.insert(result.cells.end(), run.begin() + max_stack, run.end());
    }
    run.clear();
  };
  for (const auto& c : grid) {
    const bool continues = !run.empty() && run.back().i == c.i && run.back().j == c.j &&
                           run.back().k + 1 == c.k;
    if (!continues) close_run();
    if (braced(c)) {
      close_run();
    } else {
      run.push_back(c);
    }
  }
  close_run();
  result.count = result.cells.size();
  if (!result.cells.empty()) result.status = CheckStatus::failed;
  return result;
}

namespace {

OccupancyGrid without(const OccupancyGrid& grid, const std::vector<CellIndex>& cells) {
  OccupancyGrid out = grid;
  for (const auto& c : cells) out.erase(c);
  return out;
}

// Alternates overhang removal and stack truncation until both pass. Each
// removal is appended to `log` when given.
OccupancyGrid stabilize(OccupancyGrid grid, const FeasibilityLimits& limits, bool truncate,
                        std::vector<Modification>* log) {
  for (;;) {
    const auto overhang = check_overhang(grid, limits.max_unsupported);
    if (!overhang.passed()) {
      grid = without(grid, overhang.cells);
      if (log) {
        log->push_back({Modification::Kind::remove_overhang, 0, 1.0, 0.0, grid.size(), overhang.cells});
      }
      continue;
    }
    if (!truncate) return grid;
    const auto stack = check_vertical_stack(grid, limits.max_stack);
    if (!stack.passed()) {
      grid = without(grid, stack.cells);
      if (log) {
        log->push_back({Modification::Kind::truncate_stack, 0, 1.0, 0.0, grid.size(), stack.cells});
      }
      continue;
    }
    return grid;
  }
}

struct RescaleLoopResult {
  OccupancyGrid grid;
  TriangleMesh mesh;
  double scale = 1.0;
  int iterations = 0;
};

RescaleLoopResult rescale_loop(OccupancyGrid grid, TriangleMesh mesh, const Inventory& inventory,
                               double cell_size, const VoxelizeOptions& voxelize_options,
                               std::vector<Modification>* log) {
  RescaleLoopResult r{std::move(grid), std::move(mesh), 1.0, 0};
  while (component_count(r.grid) > inventory.available_components) {
    const Aabb box = bounding_box(r.mesh);
    const double longest = box.longest_edge();
    const double target = longest - cell_size;
    if (target < cell_size * (1.0 - 1e-9)) {
      throw Error(ErrorCode::cannot_fit,
                  std::to_string(component_count(r.grid)) + " components exceed the inventory of " +
                      std::to_string(inventory.available_components) +
                      " and the longest edge cannot shrink below one cell");
    }
    const double factor = target / longest;
    r.mesh = scaled(r.mesh, factor, box.min);
    r.scale *= factor;
    ++r.iterations;
    r.grid = voxelize(r.mesh, build_grid(bounding_box(r.mesh), cell_size), voxelize_options);
    if (log) {
      log->push_back({Modification::Kind::rescale, r.iterations, factor, target,
                      component_count(r.grid), {}});
    }
  }
  return r;
}

}  // namespace

OccupancyGrid remove_overhangs(const OccupancyGrid& grid, int max_unsupported) {
  return stabilize(grid, {max_unsupported, INT_MAX}, false, nullptr);
}

OccupancyGrid truncate_stacks(const OccupancyGrid& grid, int max_stack, int max_unsupported) {
  return stabilize(grid, {max_unsupported, max_stack}, true, nullptr);
}

RescaleResult rescale_until_fits(const TriangleMesh& mesh, const Inventory& inventory,
                                 double cell_size, const Workspace& workspace,
                                 const VoxelizeOptions& voxelize_options) {
  auto fit = fit_to_workspace(mesh, workspace);
  auto grid = voxelize(fit.mesh, build_grid(bounding_box(fit.mesh), cell_size), voxelize_options);
  auto r = rescale_loop(std::move(grid), std::move(fit.mesh), inventory, cell_size, voxelize_options,
                        nullptr);
  return {std::move(r.grid), std::move(r.mesh), fit.scale_factor * r.scale, r.iterations};
}

std::array<CheckResult, 4> run_checks(const OccupancyGrid& grid, const AssemblySequence& seq,
                                      const AssemblyConfig& config) {
  return {check_component_count(grid, config.inventory),
          check_overhang(grid, config.limits.max_unsupported),
          check_vertical_stack(grid, config.limits.max_stack),
          check_sequence_connectivity(seq, grid)};
}

OccupancyGrid discretize(const TriangleMesh& mesh, const AssemblyConfig& config,
                         const FeasibilityOptions& options, double* fit_scale) {
  const auto fit = fit_to_workspace(mesh, config.workspace, options.fit);
  if (fit_scale) *fit_scale = fit.scale_factor;
  return voxelize(fit.mesh, build_grid(bounding_box(fit.mesh), config.cell_size), options.voxelize);
}

FeasibilityOutcome run_feasibility(const TriangleMesh& mesh, const AssemblyConfig& config,
                                   const FeasibilityOptions& options) {
  validate(config);
  const auto fit = fit_to_workspace(mesh, config.workspace, options.fit);
  const auto grid =
      voxelize(fit.mesh, build_grid(bounding_box(fit.mesh), config.cell_size), options.voxelize);
  auto outcome = run_feasibility(grid, &fit.mesh, config, options);
  outcome.report.fit_scale = fit.scale_factor;
  outcome.report.final_scale = fit.scale_factor * outcome.report.final_scale.value_or(1.0);
  return outcome;
}

FeasibilityOutcome run_feasibility(const OccupancyGrid& first_pass, const TriangleMesh* fitted_mesh,
                                   const AssemblyConfig& config, const FeasibilityOptions& options) {
  FeasibilityReport report;
  report.failure_handling = options.failure_handling;
  report.results = run_checks(first_pass, naive_sort(first_pass), config);

  if (!options.failure_handling) {
    report.final_results = report.results;
    report.final_component_count = first_pass.size();
    report.sequencing = SequencingMethod::naive;
    if (fitted_mesh) report.final_scale = 1.0;
    return {first_pass, std::move(report), naive_sort(first_pass)};
  }

  OccupancyGrid grid = first_pass;
  if (!report.result(CheckKind::component_count).passed()) {
    if (!fitted_mesh) {
      throw Error(ErrorCode::cannot_fit,
                  "component count exceeds the inventory and no mesh is available to rescale");
    }
    auto r = rescale_loop(grid, *fitted_mesh, config.inventory, config.cell_size, options.voxelize,
                          &report.modifications);
    grid = std::move(r.grid);
    report.final_scale = r.scale;
  } else if (fitted_mesh) {
    report.final_scale = 1.0;
  }

  grid = stabilize(std::move(grid), config.limits, true, &report.modifications);
  if (grid.empty()) {
    throw Error(ErrorCode::empty_after_modification, "failure handling removed every component");
  }

  auto plan = plan_sequence(grid, true);
  if (plan.method == SequencingMethod::connectivity) {
    report.modifications.push_back(
        {Modification::Kind::connectivity_sort, 0, 1.0, 0.0, grid.size(), {}});
  }
  report.sequencing = plan.method;
  report.final_results = run_checks(grid, plan.sequence, config);
  report.final_component_count = grid.size();
  return {std::move(grid), std::move(report), std::move(plan.sequence)};
}

}  // namespace dfab
