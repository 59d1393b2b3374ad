#pragma once

#include <functional>
#include <map>

#include "dfab/discretizer.hpp"

namespace dfab::testing {

/// Inside fraction of every cell under a 4 x 4 x 4 point lattice spanning the
/// closed cell, coordinates {0, 1/3, 2/3, 1} of the cell edge per axis.
/// `inside` must be strict so that contact alone scores zero.
inline std::map<CellIndex, double> sample_fractions(const GridSpec& spec,
                                                    const std::function<bool(const Vec3&)>& inside) {
  std::map<CellIndex, double> out;
  for (int i = 0; i < spec.dims[0]; ++i)
    for (int j = 0; j < spec.dims[1]; ++j)
      for (int k = 0; k < spec.dims[2]; ++k) {
        const Vec3 lo = spec.origin + Vec3{double(i), double(j), double(k)} * spec.cell_size;
        int hits = 0;
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c) {
              const Vec3 p = lo + Vec3{a / 3.0, b / 3.0, c / 3.0} * spec.cell_size;
              hits += inside(p) ? 1 : 0;
            }
        out[{i, j, k}] = hits / 64.0;
      }
  return out;
}

struct OracleComparison {
  int mismatched_empty = 0;     ///< fraction 0 but occupied
  int mismatched_occupied = 0;  ///< fraction >= 0.05 but empty
  int grazing_empty = 0;        ///< fraction in (0, 0.05) and empty
  int grazing = 0;
};

inline OracleComparison compare_to_oracle(const OccupancyGrid& grid,
                                          const std::map<CellIndex, double>& fractions) {
  OracleComparison r;
  for (const auto& [cell, f] : fractions) {
    const bool occ = grid.contains(cell);
    if (f == 0.0) {
      r.mismatched_empty += occ ? 1 : 0;
    } else if (f >= 0.05) {
      r.mismatched_occupied += occ ? 0 : 1;
    } else {
      ++r.grazing;
      r.grazing_empty += occ ? 0 : 1;
    }
  }
  return r;
}

}  // namespace dfab::testing
