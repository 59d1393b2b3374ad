#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dfab/config.hpp"
#include "dfab/discretizer.hpp"
#include "dfab/sequencer.hpp"

namespace dfab {

enum class AccelRatio { one_to_one, two_to_one };

std::string_view to_string(AccelRatio ratio);

/// Tool speed limits. Units are whatever the robot driver expects; the
/// calibration values are mm/s and mm/s^2.
struct MotionParams {
  double velocity = 2.0;
  double acceleration = 1.0;
  AccelRatio ratio = AccelRatio::two_to_one;

  friend bool operator==(const MotionParams&, const MotionParams&) = default;
};

/// Builds params with acceleration derived from the ratio.
MotionParams make_motion(double velocity, AccelRatio ratio);

/// Throws Error{config_violation} when velocity or acceleration is not
/// positive or the acceleration disagrees with the ratio.
void validate(const MotionParams& params);

/// Ratio implied by a velocity/acceleration pair, or Error{schema_mismatch}.
AccelRatio infer_ratio(double velocity, double acceleration);

struct ToolCommand {
  enum class Op { move, grip, release };
  Op op = Op::move;
  Vec3 xyz_mm;  ///< move target in millimeters; unused for grip/release

  friend bool operator==(const ToolCommand&, const ToolCommand&) = default;
};

struct Toolpath {
  std::vector<ToolCommand> commands;
  MotionParams params;

  friend bool operator==(const Toolpath&, const Toolpath&) = default;
};

/// World-space tool point (cm) at which a cell's component is released:
/// cell center in x and y, cell bottom plus the grip offset in z.
Vec3 placement_point(const GridSpec& spec, const CellIndex& cell, const AssemblyConfig& config);

/// One move up to the movement plane, then eight commands per component:
/// over the source, down, grip, up, over the target, down, release, up.
/// Throws Error{config_violation} and Error{sequence_grid_mismatch}.
Toolpath plan_toolpath(const AssemblySequence& seq, const OccupancyGrid& grid,
                       const AssemblyConfig& config, const MotionParams& params);

inline constexpr double kDefaultActuationDwell = 0.5;  // s

/// Rest-to-rest time for a straight move of length `distance`.
double segment_duration(double distance, double velocity, double acceleration);

/// Sum of segment times between consecutive moves plus a fixed dwell per
/// grip and release.
double estimate_duration(const Toolpath& path, double actuation_dwell = kDefaultActuationDwell);

/// Velocities start, start+increment, ... up to max_velocity, each with the
/// 1:1 and the 2:1 acceleration.
std::vector<MotionParams> calibration_schedule(double start_velocity = 1.0, double increment = 0.5,
                                               double max_velocity = 2.5);

enum class ToolpathFormat { json, robot_script };

std::string emit_toolpath(const Toolpath& path, ToolpathFormat format);

/// Inverse of emit_toolpath(path, json).
Toolpath parse_toolpath_json(std::string_view text);

}  // namespace dfab
