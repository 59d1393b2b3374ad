#pragma once

#include <filesystem>
#include <random>
#include <set>
#include <string>

#include "dfab/discretizer.hpp"
#include "dfab/geometry.hpp"

namespace dfab::testing {

inline std::filesystem::path fixture_dir() { return DFAB_FIXTURE_DIR; }

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

/// Grid over the default 6 x 5 x 6 workspace lattice.
OccupancyGrid workspace_grid(const std::set<CellIndex>& cells);

/// Random structure grown from a ground cell by attaching cells at +-i, +-j
/// or +k of an existing cell, so every cell is reachable layer by layer.
std::set<CellIndex> grow_buildable(std::mt19937& rng, std::size_t target,
                                   std::array<int, 3> dims = {6, 5, 6});

/// Independent support replay: each placement must touch the ground or a
/// previously placed cell across a face.
bool brute_force_buildable(const std::vector<CellIndex>& order);

}  // namespace dfab::testing
