#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pfake/image.hpp"

namespace pfake {

/// gray(frame) - GaussianBlur5x5(gray(frame)); a zero-centered high-pass map.
FloatImage noise_residual(const Frame& frame);

/// H x L image whose column t is column `column` of gray(frames[t]).
/// Throws ColumnOutOfRange.
GrayImage temporal_slice(std::span<const Frame> frames, int column);

/// Mean absolute difference between horizontally adjacent slice samples.
double slice_energy(const GrayImage& slice);

/// `count` evenly spaced columns: floor((k + 0.5) * width / count).
std::vector<int> sample_columns(int width, int count);

struct ResidualStats {
  double mean_abs = 0.0;   // mean |residual|
  double stddev = 0.0;
  double hf_energy = 0.0;  // mean |Laplacian(residual)|

  bool operator==(const ResidualStats&) const = default;
};

struct RegularityReport {
  ResidualStats residual;                        // whole frame
  std::optional<ResidualStats> residual_inside;  // mask_hint > 0
  std::optional<ResidualStats> residual_outside;
  double temporal_slice_energy = 0.0;
  std::vector<double> per_frame_delta;         // L - 1 values, whole frame
  std::vector<double> per_frame_delta_masked;  // L - 1 values, mask_hint > 0

  double mean_frame_delta() const;
  double mean_masked_delta() const;
};

RegularityReport analyze(std::span<const Frame> frames, const Mask* mask_hint = nullptr, int columns = 8);

/// Reports of both clips plus signed deltas (candidate - real).
struct RegularityComparison {
  RegularityReport real;
  RegularityReport candidate;
  ResidualStats residual_delta;
  std::optional<ResidualStats> residual_inside_delta;
  std::optional<ResidualStats> residual_outside_delta;
  double temporal_slice_energy_delta = 0.0;
  std::vector<double> per_frame_delta_delta;
  std::vector<double> per_frame_delta_masked_delta;
};

/// Throws DimensionMismatch unless both clips have equal length and size.
RegularityComparison compare(std::span<const Frame> real, std::span<const Frame> candidate,
                             const Mask* mask_hint = nullptr, int columns = 8);

inline constexpr const char* kReportSchema = "pfake-regularity/1";

std::string to_json(const RegularityComparison& comparison, int columns = 8);

}  // namespace pfake
