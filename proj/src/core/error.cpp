#include "error.hpp"

namespace lspine {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::LaneOverflow: return "LaneOverflow";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ModeMismatch: return "ModeMismatch";
    case ErrorCode::MaskLengthMismatch: return "MaskLengthMismatch";
    case ErrorCode::ShiftOutOfRange: return "ShiftOutOfRange";
    case ErrorCode::FanInMismatch: return "FanInMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::InputOutOfRange: return "InputOutOfRange";
    case ErrorCode::EmptyCounts: return "EmptyCounts";
    case ErrorCode::InvalidBits: return "InvalidBits";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::DatasetTooSmall: return "DatasetTooSmall";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace lspine
