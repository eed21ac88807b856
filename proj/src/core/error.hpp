#pragma once

#include <stdexcept>
#include <string>

namespace lspine {

enum class ErrorCode {
  LaneOverflow,
  LengthMismatch,
  ModeMismatch,
  MaskLengthMismatch,
  ShiftOutOfRange,
  FanInMismatch,
  DimensionMismatch,
  ShapeMismatch,
  InputOutOfRange,
  EmptyCounts,
  InvalidBits,
  InvalidConfig,
  DatasetTooSmall,
  Parse,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lspine
