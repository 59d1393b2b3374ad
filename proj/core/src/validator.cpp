#include "dfab/validator.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "dfab/error.hpp"

namespace dfab {

SimulationReport simulate_assembly(const AssemblySequence& seq, const OccupancyGrid& grid,
                                   const AssemblyConfig& config) {
  require_covers(seq, grid);
  const GridSpec& spec = grid.spec();
  SimulationReport report;
  std::set<CellIndex> placed;
  double tallest = -INFINITY;
  for (const auto& cell : seq.cells) {
    PlacementStep step{cell};
    step.supported =
        cell.k == 0 || std::any_of(kFaceNeighbors.begin(), kFaceNeighbors.end(),
                                   [&](const CellIndex& d) { return placed.contains(cell + d); });
    step.corridor_clear = std::none_of(placed.begin(), placed.end(), [&](const CellIndex& p) {
      return p.i == cell.i && p.j == cell.j && p.k > cell.k &&
             spec.cell_box(p).min.z < config.movement_plane_z;
    });
    tallest = std::max(tallest, spec.cell_box(cell).max.z);
    step.plane_clear = config.movement_plane_z >= tallest + config.clearance;
    if (!step.ok() && !report.first_failure) report.first_failure = report.steps.size();
    report.steps.push_back(step);
    placed.insert(cell);
  }
  report.ok = !report.first_failure.has_value();
  return report;
}

bool verify_report_consistency(const FeasibilityReport& report, const OccupancyGrid& grid,
                               const AssemblyConfig& config) {
  if (report.final_component_count != grid.size()) return false;
  if (!std::all_of(report.final_results.begin(), report.final_results.end(),
                   [](const CheckResult& r) { return r.passed(); })) {
    return false;
  }
  try {
    const auto plan = plan_sequence(grid, true);
    const auto recomputed = run_checks(grid, plan.sequence, config);
    return std::all_of(recomputed.begin(), recomputed.end(),
                       [](const CheckResult& r) { return r.passed(); });
  } catch (const Error&) {
    return false;
  }
}

std::optional<std::string> verify_toolpath(const Toolpath& path, const AssemblySequence& seq,
                                           const OccupancyGrid& grid, const AssemblyConfig& config) {
  using Op = ToolCommand::Op;
  const auto& cmds = path.commands;
  if (cmds.size() != 1 + 8 * seq.cells.size()) {
    return "expected " + std::to_string(1 + 8 * seq.cells.size()) + " commands, got " +
           std::to_string(cmds.size());
  }
  constexpr double kTol = 1e-9;
  auto same = [](double a, double b) { return std::abs(a - b) <= kTol * std::max(1.0, std::abs(a)); };
  const double plane = config.movement_plane_z * 10.0;
  auto at_plane = [&](const ToolCommand& c) { return c.op == Op::move && same(c.xyz_mm.z, plane); };
  auto above = [&](const ToolCommand& hi, const ToolCommand& lo) {
    return same(hi.xyz_mm.x, lo.xyz_mm.x) && same(hi.xyz_mm.y, lo.xyz_mm.y);
  };
  if (!at_plane(cmds[0])) return std::string("first command must rise to the movement plane");

  const Vec3 source = config.source * 10.0;
  for (std::size_t n = 0; n < seq.cells.size(); ++n) {
    const auto* c = &cmds[1 + 8 * n];
    const std::string where = "component " + std::to_string(n) + ": ";
    const Vec3 target = placement_point(grid.spec(), seq.cells[n], config) * 10.0;
    if (!at_plane(c[0]) || !same(c[0].xyz_mm.x, source.x) || !same(c[0].xyz_mm.y, source.y)) {
      return where + "does not travel to the source at plane height";
    }
    if (c[1].op != Op::move || !above(c[0], c[1]) || !same(c[1].xyz_mm.z, source.z)) {
      return where + "does not descend vertically to the source";
    }
    if (c[2].op != Op::grip) return where + "grip does not follow the descent to the source";
    if (!at_plane(c[3]) || !above(c[3], c[1])) return where + "does not retreat vertically after grip";
    if (!at_plane(c[4]) || !same(c[4].xyz_mm.x, target.x) || !same(c[4].xyz_mm.y, target.y)) {
      return where + "does not travel to the target at plane height";
    }
    if (c[5].op != Op::move || !above(c[4], c[5]) || !same(c[5].xyz_mm.z, target.z)) {
      return where + "does not descend vertically to the placement point";
    }
    if (c[6].op != Op::release) return where + "release does not follow the descent to the target";
    if (!at_plane(c[7]) || !above(c[7], c[5])) return where + "does not retreat vertically after release";
  }
  return std::nullopt;
}

}  // namespace dfab
