#pragma once

#include <stdexcept>
#include <string>

namespace corrsep {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  Domain,
  NumericalFailure,
  Unsupported,
  Parse,
  NotConverged,
  RankDeficient,
};

/// Exception type thrown by every corrsep routine. The code is what the C
/// API reports back as its status value.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace corrsep
