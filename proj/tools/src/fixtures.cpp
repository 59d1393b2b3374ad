#include "dfab_tools/fixtures.hpp"

#include "dfab/discretizer.hpp"
#include "dfab/shapes.hpp"

namespace dfab::fixtures {

namespace {

constexpr auto P = CheckStatus::passed;
constexpr auto F = CheckStatus::failed;

void fill(std::set<CellIndex>& cells, CellIndex lo, CellIndex hi) {
  for (int i = lo.i; i <= hi.i; ++i)
    for (int j = lo.j; j <= hi.j; ++j)
      for (int k = lo.k; k <= hi.k; ++k) cells.insert({i, j, k});
}

}  // namespace

Fixture stool() {
  Fixture f{"stool", {}, {F, P, P, P}};
  for (int i : {0, 4})
    for (int j : {0, 3}) fill(f.cells, {i, j, 0}, {i + 1, j + 1, 3});
  fill(f.cells, {0, 0, 4}, {5, 4, 5});
  return f;
}

Fixture shelf() {
  Fixture f{"shelf", {}, {F, F, P, P}};
  fill(f.cells, {0, 0, 0}, {5, 0, 5});
  for (int k : {0, 3, 5}) fill(f.cells, {0, 1, k}, {5, 4, k});
  return f;
}

Fixture letter_t() {
  Fixture f{"letter_t", {}, {P, P, F, P}};
  fill(f.cells, {0, 0, 0}, {2, 0, 0});
  fill(f.cells, {1, 0, 1}, {1, 0, 5});
  return f;
}

Fixture table() {
  Fixture f{"table", {}, {P, P, P, F}};
  fill(f.cells, {0, 0, 3}, {4, 4, 3});
  for (int i : {1, 3})
    for (int j : {1, 3}) fill(f.cells, {i, j, 0}, {i, j, 2});
  return f;
}

std::vector<Fixture> all() { return {stool(), shelf(), letter_t(), table()}; }

TriangleMesh mesh(const Fixture& fixture) {
  return shapes::voxel_surface(fixture.cells, kDefaultCellSize);
}

}  // namespace dfab::fixtures
