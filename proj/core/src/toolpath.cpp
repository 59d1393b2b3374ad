#include "dfab/toolpath.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "dfab/error.hpp"
#include "json.hpp"

namespace dfab {

using ordered_json = nlohmann::ordered_json;

std::string_view to_string(AccelRatio ratio) {
  return ratio == AccelRatio::one_to_one ? "1:1" : "2:1";
}

MotionParams make_motion(double velocity, AccelRatio ratio) {
  return {velocity, ratio == AccelRatio::one_to_one ? velocity : velocity / 2.0, ratio};
}

namespace {

bool nearly(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); }

constexpr double kMmPerCm = 10.0;

}  // namespace

AccelRatio infer_ratio(double velocity, double acceleration) {
  if (nearly(acceleration, velocity)) return AccelRatio::one_to_one;
  if (nearly(acceleration, velocity / 2.0)) return AccelRatio::two_to_one;
  throw Error(ErrorCode::schema_mismatch, "acceleration is neither velocity nor velocity / 2");
}

void validate(const MotionParams& params) {
  if (!(params.velocity > 0.0) || !(params.acceleration > 0.0)) {
    throw Error(ErrorCode::config_violation, "velocity and acceleration must be positive");
  }
  const double expected =
      params.ratio == AccelRatio::one_to_one ? params.velocity : params.velocity / 2.0;
  if (!nearly(params.acceleration, expected)) {
    throw Error(ErrorCode::config_violation,
                "acceleration does not match the " + std::string(to_string(params.ratio)) + " ratio");
  }
}

Vec3 placement_point(const GridSpec& spec, const CellIndex& cell, const AssemblyConfig& config) {
  const Vec3 center = spec.cell_center(cell);
  return {center.x, center.y, spec.cell_box(cell).min.z + config.effective_grip_offset()};
}

Toolpath plan_toolpath(const AssemblySequence& seq, const OccupancyGrid& grid,
                       const AssemblyConfig& config, const MotionParams& params) {
  validate(config, grid.spec());
  validate(params);
  if (seq.cells.empty()) throw Error(ErrorCode::empty_assembly, "nothing to place");
  require_covers(seq, grid);

  Toolpath path;
  path.params = params;
  path.commands.reserve(1 + 8 * seq.cells.size());
  const double plane = config.movement_plane_z;
  const Vec3& src = config.source;
  auto move = [&](double x, double y, double z) {
    path.commands.push_back({ToolCommand::Op::move, Vec3{x, y, z} * kMmPerCm});
  };
  auto act = [&](ToolCommand::Op op) { path.commands.push_back({op, {}}); };

  // The rest pose belongs to the driver; rise to the plane above the source.
  move(src.x, src.y, plane);
  for (const auto& cell : seq.cells) {
    const Vec3 target = placement_point(grid.spec(), cell, config);
    move(src.x, src.y, plane);
    move(src.x, src.y, src.z);
    act(ToolCommand::Op::grip);
    move(src.x, src.y, plane);
    move(target.x, target.y, plane);
    move(target.x, target.y, target.z);
    act(ToolCommand::Op::release);
    move(target.x, target.y, plane);
  }
  return path;
}

double segment_duration(double distance, double velocity, double acceleration) {
  if (distance <= 0.0) return 0.0;
  if (distance >= velocity * velocity / acceleration) {
    return distance / velocity + velocity / acceleration;  // trapezoid
  }
  return 2.0 * std::sqrt(distance / acceleration);  // triangle, peak below velocity
}

double estimate_duration(const Toolpath& path, double actuation_dwell) {
  double total = 0.0;
  const Vec3* previous = nullptr;
  for (const auto& cmd : path.commands) {
    if (cmd.op == ToolCommand::Op::move) {
      if (previous) {
        total += segment_duration(distance(*previous, cmd.xyz_mm), path.params.velocity,
                                  path.params.acceleration);
      }
      previous = &cmd.xyz_mm;
    } else {
      total += actuation_dwell;
    }
  }
  return total;
}

std::vector<MotionParams> calibration_schedule(double start_velocity, double increment,
                                               double max_velocity) {
  if (!(increment > 0.0) || !(start_velocity > 0.0) || start_velocity > max_velocity) {
    throw Error(ErrorCode::config_violation, "calibration needs 0 < start <= max and increment > 0");
  }
  const auto steps = static_cast<int>(std::floor((max_velocity - start_velocity) / increment + 1e-9));
  std::vector<MotionParams> schedule;
  for (int n = 0; n <= steps; ++n) {
    const double v = start_velocity + n * increment;
    schedule.push_back(make_motion(v, AccelRatio::one_to_one));
    schedule.push_back(make_motion(v, AccelRatio::two_to_one));
  }
  return schedule;
}

std::string emit_toolpath(const Toolpath& path, ToolpathFormat format) {
  if (format == ToolpathFormat::json) {
    ordered_json doc;
    doc["params"] = {{"velocity", path.params.velocity}, {"acceleration", path.params.acceleration}};
    auto& commands = doc["commands"] = ordered_json::array();
    for (const auto& cmd : path.commands) {
      switch (cmd.op) {
        case ToolCommand::Op::move:
          commands.push_back({{"op", "move"}, {"xyz_mm", {cmd.xyz_mm.x, cmd.xyz_mm.y, cmd.xyz_mm.z}}});
          break;
        case ToolCommand::Op::grip:
          commands.push_back({{"op", "grip"}});
          break;
        case ToolCommand::Op::release:
          commands.push_back({{"op", "release"}});
          break;
      }
    }
    return doc.dump(2) + "\n";
  }

  std::string out;
  char line[160];
  for (const auto& cmd : path.commands) {
    switch (cmd.op) {
      case ToolCommand::Op::move:
        std::snprintf(line, sizeof line, "MOVE %.3f %.3f %.3f %.3f %.3f\n", cmd.xyz_mm.x,
                      cmd.xyz_mm.y, cmd.xyz_mm.z, path.params.velocity, path.params.acceleration);
        out += line;
        break;
      case ToolCommand::Op::grip:
        out += "GRIP\n";
        break;
      case ToolCommand::Op::release:
        out += "RELEASE\n";
        break;
    }
  }
  return out;
}

Toolpath parse_toolpath_json(std::string_view text) {
  try {
    const auto doc = ordered_json::parse(text);
    Toolpath path;
    const double v = doc.at("params").at("velocity").get<double>();
    const double a = doc.at("params").at("acceleration").get<double>();
    path.params = {v, a, infer_ratio(v, a)};
    for (const auto& cmd : doc.at("commands")) {
      const auto op = cmd.at("op").get<std::string>();
      if (op == "move") {
        const auto& xyz = cmd.at("xyz_mm");
        if (!xyz.is_array() || xyz.size() != 3) {
          throw Error(ErrorCode::schema_mismatch, "xyz_mm must hold three numbers");
        }
        path.commands.push_back(
            {ToolCommand::Op::move, {xyz[0].get<double>(), xyz[1].get<double>(), xyz[2].get<double>()}});
      } else if (op == "grip") {
        path.commands.push_back({ToolCommand::Op::grip, {}});
      } else if (op == "release") {
        path.commands.push_back({ToolCommand::Op::release, {}});
      } else {
        throw Error(ErrorCode::schema_mismatch, "unknown toolpath op '" + op + "'");
      }
    }
    return path;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::schema_mismatch, std::string("toolpath JSON: ") + e.what());
  }
}

}  // namespace dfab
