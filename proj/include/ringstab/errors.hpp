#pragma once

#include <stdexcept>
#include <string>

namespace ringstab {

enum class ErrorCode {
  SpecMismatch,
  DivisionByZero,
  UnsupportedRing,
  DimensionMismatch,
  NonSquare,
  SingularMatrix,
  SingularDenominator,
  SingularSelection,
  SingularLoop,
  ZeroMinor,
  CausalityIdealMissing,
  ImproperCausalityIdeal,
  DivisibilityBoundExceeded,
  NoValidMinor,
  RepairFailed,
  NotStabilizable,
  SizeLimit,
  ParseError,
  Internal,
};

const char* error_code_name(ErrorCode code);

/// All library failures are thrown as Error; the CLI maps codes to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace ringstab
