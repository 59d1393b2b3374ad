#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dfab {

enum class ErrorCode {
  malformed_file,
  unsupported_format,
  empty_mesh,
  cannot_fit,
  empty_assembly,
  empty_after_modification,
  sequence_grid_mismatch,
  unsequenceable,
  config_violation,
  client_unavailable,
  schema_mismatch,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so callers
/// (the CLI in particular) can map it to a distinct exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dfab
