#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dfab/error.hpp"

namespace dfab::cli {

/// Process exit statuses. Every library error code has its own value.
enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kRejected = 3,
  kClientUnavailable = 4,
  kMalformedFile = 5,
  kUnsupportedFormat = 6,
  kEmptyMesh = 7,
  kCannotFit = 8,
  kEmptyAssembly = 9,
  kEmptyAfterModification = 10,
  kUnsequenceable = 11,
  kSequenceGridMismatch = 12,
  kConfigViolation = 13,
  kSchemaMismatch = 14,
  kValidationFailed = 15,
  kIoError = 16,
  kChecksFailed = 17,  // check stage: some final check still fails
};

int exit_code_for(ErrorCode code);

/// Runs the command line; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload taking the arguments after the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dfab::cli
