#include <gtest/gtest.h>

#include <random>

#include "dfab/error.hpp"
#include "dfab/sequencer.hpp"
#include "dfab/validator.hpp"
#include "dfab_tools/fixtures.hpp"
#include "test_support.hpp"

namespace dfab {
namespace {

using testing::workspace_grid;
using Cells = std::vector<CellIndex>;

TEST(NaiveSort, LayerThenRowOrder) {
  EXPECT_EQ(naive_sort(workspace_grid({{0, 0, 0}, {1, 0, 0}, {0, 0, 1}})).cells,
            (Cells{{0, 0, 0}, {1, 0, 0}, {0, 0, 1}}));
  EXPECT_EQ(naive_sort(workspace_grid({{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {1, 1, 0}})).cells,
            (Cells{{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {1, 1, 0}}));
}

TEST(NaiveSort, TableFailsConnectivity) {
  const auto grid = workspace_grid(fixtures::table().cells);
  const auto r = check_sequence_connectivity(naive_sort(grid), grid);
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.cells, (Cells{{0, 0, 3}}));
}

TEST(Connectivity, SimpleSequences) {
  EXPECT_TRUE(check_sequence_connectivity({{{0, 0, 0}}}, workspace_grid({{0, 0, 0}})).passed());
  EXPECT_TRUE(check_sequence_connectivity({{{0, 0, 0}, {0, 0, 1}}},
                                          workspace_grid({{0, 0, 0}, {0, 0, 1}}))
                  .passed());
  EXPECT_FALSE(check_sequence_connectivity({{{0, 0, 1}, {0, 0, 0}}},
                                           workspace_grid({{0, 0, 0}, {0, 0, 1}}))
                   .passed());
}

TEST(Connectivity, SequenceMustCoverGrid) {
  const auto grid = workspace_grid({{0, 0, 0}, {1, 0, 0}});
  auto code = [&](const Cells& cells) {
    try {
      check_sequence_connectivity({cells}, grid);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::schema_mismatch;
  };
  EXPECT_EQ(code({{0, 0, 0}}), ErrorCode::sequence_grid_mismatch);
  EXPECT_EQ(code({{0, 0, 0}, {0, 0, 0}}), ErrorCode::sequence_grid_mismatch);
  EXPECT_EQ(code({{0, 0, 0}, {2, 0, 0}}), ErrorCode::sequence_grid_mismatch);
}

TEST(ConnectivitySort, LShapedGroundLayer) {
  EXPECT_EQ(connectivity_sort(workspace_grid({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}})).cells,
            (Cells{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}}));
}

TEST(ConnectivitySort, ColumnBottomToTop) {
  EXPECT_EQ(connectivity_sort(workspace_grid({{2, 2, 2}, {2, 2, 0}, {2, 2, 1}})).cells,
            (Cells{{2, 2, 0}, {2, 2, 1}, {2, 2, 2}}));
}

TEST(ConnectivitySort, TableBecomesBuildable) {
  const auto grid = workspace_grid(fixtures::table().cells);
  const auto seq = connectivity_sort(grid);
  EXPECT_TRUE(check_sequence_connectivity(seq, grid).passed());
  // The slab starts from a leg top.
  EXPECT_EQ(seq.cells[12], (CellIndex{1, 1, 3}));
}

TEST(ConnectivitySort, PrefersNearestToPlacedStructure) {
  // (0,4,0) precedes (1,0,0) lexicographically but lies farther from (0,0,0).
  EXPECT_EQ(connectivity_sort(workspace_grid({{0, 0, 0}, {0, 4, 0}, {1, 0, 0}})).cells,
            (Cells{{0, 0, 0}, {1, 0, 0}, {0, 4, 0}}));
}

TEST(ConnectivitySort, TiesBreakByRowOrder) {
  std::set<CellIndex> cells;
  for (int i = 0; i < 5; ++i) cells.insert({i, 0, 0});
  cells.insert({4, 0, 1});
  cells.insert({0, 0, 1});
  cells.insert({1, 0, 1});
  const auto seq = connectivity_sort(workspace_grid(cells));
  EXPECT_EQ(Cells(seq.cells.begin() + 5, seq.cells.end()), (Cells{{0, 0, 1}, {1, 0, 1}, {4, 0, 1}}));
}

TEST(ConnectivitySort, FloatingCellIsUnsequenceable) {
  try {
    connectivity_sort(workspace_grid({{0, 0, 0}, {3, 3, 2}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::unsequenceable);
  }
}

TEST(PlanSequence, KeepsNaiveWhenItWorks) {
  const auto grid = workspace_grid(fixtures::letter_t().cells);
  const auto plan = plan_sequence(grid);
  EXPECT_EQ(plan.method, SequencingMethod::naive);
  EXPECT_EQ(plan.sequence, naive_sort(grid));
  EXPECT_EQ(plan_sequence(workspace_grid(fixtures::table().cells)).method,
            SequencingMethod::connectivity);
}

TEST(ConnectivitySort, RandomBuildableGrids) {
  std::mt19937 rng(99);
  for (int round = 0; round < 200; ++round) {
    const auto cells = testing::grow_buildable(rng, 1 + rng() % 40);
    const auto grid = workspace_grid(cells);
    const auto seq = connectivity_sort(grid);
    ASSERT_EQ(seq.cells.size(), cells.size());
    EXPECT_EQ(std::set<CellIndex>(seq.cells.begin(), seq.cells.end()), cells);
    EXPECT_TRUE(testing::brute_force_buildable(seq.cells));
    EXPECT_TRUE(check_sequence_connectivity(seq, grid).passed());
    // Layers never go down.
    for (std::size_t n = 1; n < seq.cells.size(); ++n) EXPECT_LE(seq.cells[n - 1].k, seq.cells[n].k);
    EXPECT_EQ(connectivity_sort(grid), seq);
  }
}

}  // namespace
}  // namespace dfab
