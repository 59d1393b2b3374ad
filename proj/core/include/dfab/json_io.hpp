#pragma once

#include <string>
#include <string_view>

#include "dfab/discretizer.hpp"
#include "dfab/feasibility.hpp"
#include "dfab/sequencer.hpp"
#include "dfab/validator.hpp"

// Canonical JSON artifacts. Writers are deterministic (fixed key order,
// two-space indent, trailing newline); readers throw Error{schema_mismatch}.
namespace dfab {

/// {"cell_size_cm", "origin_cm": [x,y,z], "dims": [nx,ny,nz], "occupied": [[i,j,k], ...]}
std::string grid_to_json(const OccupancyGrid& grid);
OccupancyGrid grid_from_json(std::string_view text);

/// {"cells": [[i,j,k], ...]} in assembly order.
std::string sequence_to_json(const AssemblySequence& seq);
AssemblySequence sequence_from_json(std::string_view text);

std::string report_to_json(const FeasibilityReport& report);
FeasibilityReport report_from_json(std::string_view text);

std::string simulation_to_json(const SimulationReport& report);

}  // namespace dfab
