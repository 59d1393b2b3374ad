#include "dfab/config.hpp"

#include <string>

#include "dfab/error.hpp"

namespace dfab {

namespace {

[[noreturn]] void violation(const std::string& what) { throw Error(ErrorCode::config_violation, what); }

bool inside_footprint(const Vec3& p, const Vec3& lo, const Vec3& hi) {
  return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
}

}  // namespace

void validate(const AssemblyConfig& config) {
  if (!(config.cell_size > 0.0)) violation("cell_size must be positive");
  for (int a = 0; a < 3; ++a) {
    if (config.workspace.extent[a] < config.cell_size) {
      violation("every workspace extent must be at least one cell_size");
    }
  }
  if (config.inventory.available_components < 1) violation("inventory must hold at least one component");
  if (config.limits.max_unsupported < 0) violation("max_unsupported must be non-negative");
  if (config.limits.max_stack < 1) violation("max_stack must be at least 1");
  if (config.clearance < 0.0) violation("clearance must be non-negative");
  if (config.movement_plane_z < config.workspace.extent.z + config.clearance) {
    violation("movement plane z " + std::to_string(config.movement_plane_z) +
              " cm is below workspace height plus clearance (" +
              std::to_string(config.workspace.extent.z + config.clearance) + " cm)");
  }
  if (config.source.z > config.movement_plane_z) violation("source lies above the movement plane");
  if (inside_footprint(config.source, {}, config.workspace.extent)) {
    violation("source coordinate lies inside the assembly footprint");
  }
  if (config.grip_offset && *config.grip_offset < 0.0) violation("grip_offset must be non-negative");
}

void validate(const AssemblyConfig& config, const GridSpec& grid) {
  validate(config);
  const Vec3 hi = grid.origin + Vec3{grid.dims[0] * grid.cell_size, grid.dims[1] * grid.cell_size,
                                     grid.dims[2] * grid.cell_size};
  if (inside_footprint(config.source, grid.origin, hi)) {
    violation("source coordinate lies inside the grid footprint");
  }
  if (config.movement_plane_z < hi.z + config.clearance) {
    violation("movement plane is below the grid top plus clearance");
  }
}

}  // namespace dfab
