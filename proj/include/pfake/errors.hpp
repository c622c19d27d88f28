#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pfake {

enum class ErrorCode {
  InvalidArgument,
  MissingFrames,
  CountMismatch,
  DecodeError,
  DimensionMismatch,
  IoError,
  ParseError,
  TooFewPoints,
  DegenerateHull,
  DegenerateTriangulation,
  EmptyMask,
  ColumnOutOfRange,
  ShapeMismatch,
  TooSmall,
  FrameFailure,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every failure raised by the library. The code lets
/// callers branch on the failure category without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by the pipeline when processing a single frame fails.
class FrameFailure : public Error {
 public:
  FrameFailure(std::size_t frame_index, ErrorCode cause, const std::string& message);

  std::size_t frame_index() const noexcept { return frame_index_; }
  ErrorCode cause() const noexcept { return cause_; }

 private:
  std::size_t frame_index_;
  ErrorCode cause_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace pfake
