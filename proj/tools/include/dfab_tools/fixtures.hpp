#pragma once

#include <array>
#include <set>
#include <string>
#include <vector>

#include "dfab/check_result.hpp"
#include "dfab/mesh_io.hpp"

namespace dfab::fixtures {

/// A procedurally built test object on the 10 cm lattice, sized to the
/// default 60 x 50 x 60 cm workspace so fitting leaves it unscaled.
struct Fixture {
  std::string name;
  std::set<CellIndex> cells;
  /// Check outcomes without failure handling, ordered as kAllChecks.
  std::array<CheckStatus, 4> expected_raw;
};

Fixture stool();     // 124 cells: four 2x2 legs under a two-layer seat
Fixture shelf();     // 108 cells: back panel with three 4-deep boards
Fixture letter_t();  // 8 cells: inverted T, bar on the ground, 5-cell stem
Fixture table();     // 37 cells: slab on four lone 3-cell legs

std::vector<Fixture> all();

/// Boundary surface of the fixture's cells, in centimeters.
TriangleMesh mesh(const Fixture& fixture);

}  // namespace dfab::fixtures
