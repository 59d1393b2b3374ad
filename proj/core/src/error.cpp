#include "dfab/error.hpp"

namespace dfab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::malformed_file:
      return "MalformedFile";
    case ErrorCode::unsupported_format:
      return "UnsupportedFormat";
    case ErrorCode::empty_mesh:
      return "EmptyMesh";
    case ErrorCode::cannot_fit:
      return "CannotFit";
    case ErrorCode::empty_assembly:
      return "EmptyAssembly";
    case ErrorCode::empty_after_modification:
      return "EmptyAfterModification";
    case ErrorCode::sequence_grid_mismatch:
      return "SequenceGridMismatch";
    case ErrorCode::unsequenceable:
      return "Unsequenceable";
    case ErrorCode::config_violation:
      return "ConfigViolation";
    case ErrorCode::client_unavailable:
      return "ClientUnavailable";
    case ErrorCode::schema_mismatch:
      return "SchemaMismatch";
  }
  return "Unknown";
}

}  // namespace dfab
