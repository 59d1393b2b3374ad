#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "dfab/error.hpp"
#include "dfab/toolpath.hpp"
#include "dfab/validator.hpp"
#include "test_support.hpp"

namespace dfab {
namespace {

using Op = ToolCommand::Op;
using testing::workspace_grid;

std::set<CellIndex> first_n(std::size_t n) {
  std::set<CellIndex> out;
  for (int k = 0; k < 6 && out.size() < n; ++k)
    for (int i = 0; i < 6 && out.size() < n; ++i)
      for (int j = 0; j < 5 && out.size() < n; ++j) out.insert({i, j, k});
  return out;
}

Toolpath plan_for(const std::set<CellIndex>& cells, const AssemblyConfig& config = {}) {
  const auto grid = workspace_grid(cells);
  return plan_toolpath(naive_sort(grid), grid, config, MotionParams{});
}

TEST(PlanToolpath, SingleCellCycle) {
  const auto path = plan_for({{0, 0, 0}});
  ASSERT_EQ(path.commands.size(), 9u);
  for (std::size_t n = 0; n < 9; ++n) {
    const Op expected = n == 3 ? Op::grip : n == 7 ? Op::release : Op::move;
    EXPECT_EQ(path.commands[n].op, expected) << n;
  }
  // Descents land on the source and on the top-grip placement point.
  EXPECT_EQ(path.commands[2].xyz_mm, (Vec3{750, 250, 100}));
  EXPECT_EQ(path.commands[6].xyz_mm, (Vec3{50, 50, 100}));
  EXPECT_EQ(path.commands[0].xyz_mm.z, 720.0);
}

TEST(PlanToolpath, CommandCountLaw) {
  for (std::size_t n : {1u, 5u, 40u}) {
    EXPECT_EQ(plan_for(first_n(n)).commands.size(), 1 + 8 * n);
  }
  EXPECT_EQ(plan_for(first_n(40)).commands.size(), 321u);
}

TEST(PlanToolpath, EmptySequenceRejected) {
  OccupancyGrid empty(GridSpec{{0, 0, 0}, 10.0, {6, 5, 6}});
  try {
    plan_toolpath({}, empty, AssemblyConfig{}, MotionParams{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::empty_assembly);
  }
}

TEST(PlanToolpath, PlacementHeightUsesGripOffset) {
  AssemblyConfig config;
  EXPECT_EQ(placement_point(workspace_grid({}).spec(), {1, 2, 3}, config), (Vec3{15, 25, 40}));
  config.grip_offset = 0.0;
  EXPECT_EQ(placement_point(workspace_grid({}).spec(), {1, 2, 3}, config), (Vec3{15, 25, 30}));
}

TEST(PlanToolpath, ConfigViolations) {
  auto code = [](AssemblyConfig config) {
    try {
      plan_for({{0, 0, 0}}, config);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::schema_mismatch;
  };
  AssemblyConfig low;
  low.movement_plane_z = 61.0;
  EXPECT_EQ(code(low), ErrorCode::config_violation);
  AssemblyConfig inside;
  inside.source = {30, 25, 10};
  EXPECT_EQ(code(inside), ErrorCode::config_violation);
  EXPECT_THROW(plan_toolpath(naive_sort(workspace_grid({{0, 0, 0}})), workspace_grid({{0, 0, 0}}),
                             AssemblyConfig{}, MotionParams{2.0, 1.5, AccelRatio::two_to_one}),
               Error);
}

TEST(PlanToolpath, GripAndReleaseFollowDescents) {
  const auto grid = workspace_grid(first_n(17));
  const auto seq = naive_sort(grid);
  const AssemblyConfig config;
  const auto path = plan_toolpath(seq, grid, config, MotionParams{});
  std::size_t placed = 0;
  for (std::size_t n = 0; n < path.commands.size(); ++n) {
    const auto& c = path.commands[n];
    if (c.op == Op::move) continue;
    ASSERT_GE(n, 2u);
    const auto& before = path.commands[n - 1];
    const auto& from = path.commands[n - 2];
    ASSERT_EQ(before.op, Op::move);
    EXPECT_EQ(before.xyz_mm.x, from.xyz_mm.x);
    EXPECT_EQ(before.xyz_mm.y, from.xyz_mm.y);
    EXPECT_GT(from.xyz_mm.z, before.xyz_mm.z);
    if (c.op == Op::grip) {
      EXPECT_EQ(before.xyz_mm.z, config.source.z * 10.0);
    } else {
      const auto& cell = seq.cells[placed++];
      EXPECT_DOUBLE_EQ(before.xyz_mm.z, (cell.k * 10.0 + 10.0) * 10.0);
    }
  }
  EXPECT_EQ(placed, seq.cells.size());
  EXPECT_FALSE(verify_toolpath(path, seq, grid, config).has_value());
}

TEST(SegmentDuration, ClosedForms) {
  EXPECT_NEAR(segment_duration(10.0, 1.0, 1.0), 11.0, 1e-12);
  EXPECT_NEAR(segment_duration(0.5, 1.0, 1.0), 2.0 * std::sqrt(0.5), 1e-12);
  EXPECT_EQ(segment_duration(0.0, 1.0, 1.0), 0.0);
  // The two profiles meet at d = v^2 / a.
  EXPECT_NEAR(segment_duration(4.0, 2.0, 1.0), 4.0, 1e-12);
  EXPECT_NEAR(segment_duration(4.0 - 1e-12, 2.0, 1.0), 4.0, 1e-9);
}

TEST(EstimateDuration, SumsSegmentsAndDwells) {
  Toolpath path;
  path.params = {1.0, 1.0, AccelRatio::one_to_one};
  path.commands = {{Op::move, {0, 0, 0}}, {Op::move, {10, 0, 0}}, {Op::grip, {}},
                   {Op::move, {10, 0.5, 0}}, {Op::release, {}}};
  EXPECT_NEAR(estimate_duration(path, 0.25), 11.0 + 2.0 * std::sqrt(0.5) + 0.5, 1e-12);
}

TEST(EstimateDuration, FasterIsShorter) {
  auto path = plan_for(first_n(10));
  double previous = INFINITY;
  for (double v : {1.0, 1.5, 2.0, 2.5}) {
    path.params = {v, 1.0, AccelRatio::one_to_one};
    const double t = estimate_duration(path);
    EXPECT_LT(t, previous);
    previous = t;
  }
}

TEST(CalibrationSchedule, Defaults) {
  const auto s = calibration_schedule();
  ASSERT_EQ(s.size(), 8u);
  const double v[] = {1, 1, 1.5, 1.5, 2, 2, 2.5, 2.5};
  const double a[] = {1, 0.5, 1.5, 0.75, 2, 1, 2.5, 1.25};
  for (std::size_t n = 0; n < 8; ++n) {
    EXPECT_EQ(s[n].velocity, v[n]);
    EXPECT_EQ(s[n].acceleration, a[n]);
  }
  EXPECT_NE(std::find(s.begin(), s.end(), MotionParams{2.0, 1.0, AccelRatio::two_to_one}), s.end());
  EXPECT_EQ(MotionParams{}, (MotionParams{2.0, 1.0, AccelRatio::two_to_one}));
}

TEST(CalibrationSchedule, SingleVelocity) { EXPECT_EQ(calibration_schedule(1.0, 0.5, 1.0).size(), 2u); }

TEST(EmitToolpath, RobotScriptGrammar) {
  const auto script = emit_toolpath(plan_for({{0, 0, 0}}), ToolpathFormat::robot_script);
  std::istringstream in(script);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  ASSERT_EQ(lines.size(), 9u);
  EXPECT_EQ(lines[3], "GRIP");
  EXPECT_EQ(lines[7], "RELEASE");
  EXPECT_EQ(lines[2], "MOVE 750.000 250.000 100.000 2.000 1.000");
}

TEST(EmitToolpath, JsonRoundTrip) {
  auto path = plan_for(first_n(23));
  path.commands[5].xyz_mm.x += 1.0 / 3.0;  // not representable in decimal
  const auto text = emit_toolpath(path, ToolpathFormat::json);
  EXPECT_EQ(parse_toolpath_json(text), path);
  EXPECT_EQ(emit_toolpath(parse_toolpath_json(text), ToolpathFormat::json), text);
}

TEST(ParseToolpathJson, SchemaErrors) {
  auto code = [](const std::string& text) {
    try {
      parse_toolpath_json(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::config_violation;
  };
  EXPECT_EQ(code("{}"), ErrorCode::schema_mismatch);
  EXPECT_EQ(code(R"({"params":{"velocity":2,"acceleration":1},"commands":[{"op":"jump"}]})"),
            ErrorCode::schema_mismatch);
  EXPECT_EQ(code(R"({"params":{"velocity":2,"acceleration":1},"commands":[{"op":"move","xyz_mm":[1,2]}]})"),
            ErrorCode::schema_mismatch);
  EXPECT_EQ(code(R"({"params":{"velocity":2,"acceleration":0.3},"commands":[]})"),
            ErrorCode::schema_mismatch);
  EXPECT_EQ(code("not json"), ErrorCode::schema_mismatch);
}

TEST(VerifyToolpath, DetectsTampering) {
  const auto grid = workspace_grid(first_n(3));
  const auto seq = naive_sort(grid);
  const auto good = plan_toolpath(seq, grid, AssemblyConfig{}, MotionParams{});
  ASSERT_FALSE(verify_toolpath(good, seq, grid, AssemblyConfig{}));

  auto swapped = good;
  std::swap(swapped.commands[3], swapped.commands[7]);
  EXPECT_TRUE(verify_toolpath(swapped, seq, grid, AssemblyConfig{}));

  auto low = good;
  low.commands[5].xyz_mm.z -= 100.0;
  EXPECT_TRUE(verify_toolpath(low, seq, grid, AssemblyConfig{}));

  auto short_path = good;
  short_path.commands.pop_back();
  EXPECT_TRUE(verify_toolpath(short_path, seq, grid, AssemblyConfig{}));
}

}  // namespace
}  // namespace dfab
