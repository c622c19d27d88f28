#include "pfake/errors.hpp"

namespace pfake {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MissingFrames: return "MissingFrames";
    case ErrorCode::CountMismatch: return "CountMismatch";
    case ErrorCode::DecodeError: return "DecodeError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::DegenerateHull: return "DegenerateHull";
    case ErrorCode::DegenerateTriangulation: return "DegenerateTriangulation";
    case ErrorCode::EmptyMask: return "EmptyMask";
    case ErrorCode::ColumnOutOfRange: return "ColumnOutOfRange";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::FrameFailure: return "FrameFailure";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

FrameFailure::FrameFailure(std::size_t frame_index, ErrorCode cause, const std::string& message)
    : Error(ErrorCode::FrameFailure, "frame " + std::to_string(frame_index) + ": " + message),
      frame_index_(frame_index),
      cause_(cause) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace pfake
