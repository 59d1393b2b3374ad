#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "dfab/geometry.hpp"

namespace dfab {

enum class CheckKind { component_count, overhang, vertical_stack, connectivity };
enum class CheckStatus { passed, failed };

inline constexpr std::array<CheckKind, 4> kAllChecks{
    CheckKind::component_count, CheckKind::overhang, CheckKind::vertical_stack,
    CheckKind::connectivity};

std::string_view to_string(CheckKind kind);
std::string_view to_string(CheckStatus status);

/// Outcome of one fabricability check. Geometric checks list offending cells
/// (connectivity lists only the first unplaceable one); the count check
/// reports the component count in `count`.
struct CheckResult {
  CheckKind check = CheckKind::component_count;
  CheckStatus status = CheckStatus::passed;
  std::vector<CellIndex> cells;
  std::size_t count = 0;

  bool passed() const { return status == CheckStatus::passed; }

  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

}  // namespace dfab
