#include "pfake/analysis.hpp"

#include <cmath>
#include <json.hpp>
#include <numeric>

#include "pfake/filters.hpp"
#include "pfake/media.hpp"

namespace pfake {

using nlohmann::json;

namespace {

enum class Region { All, Inside, Outside };

bool in_region(Region region, const Mask* hint, std::size_t i) {
  switch (region) {
    case Region::All: return true;
    case Region::Inside: return hint->data()[i] > 0.0;
    case Region::Outside: return hint->data()[i] <= 0.0;
  }
  return false;
}

// |4-neighbour Laplacian|, zero on the border.
FloatImage abs_laplacian(const FloatImage& img) {
  const int h = img.height();
  const int w = img.width();
  FloatImage out(h, w, 0.0);
  for (int y = 1; y < h - 1; ++y)
    for (int x = 1; x < w - 1; ++x)
      out(y, x) = std::abs(img(y - 1, x) + img(y + 1, x) + img(y, x - 1) + img(y, x + 1) - 4.0 * img(y, x));
  return out;
}

std::optional<ResidualStats> residual_stats(const std::vector<FloatImage>& residuals,
                                            const std::vector<FloatImage>& laplacians, const Mask* hint,
                                            Region region) {
  double sum = 0.0, sum_abs = 0.0, sum_sq = 0.0, sum_hf = 0.0;
  std::size_t n = 0, n_hf = 0;
  for (std::size_t f = 0; f < residuals.size(); ++f) {
    const int h = residuals[f].height();
    const int w = residuals[f].width();
    auto r = residuals[f].data();
    auto lap = laplacians[f].data();
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (!in_region(region, hint, i)) continue;
      sum += r[i];
      sum_abs += std::abs(r[i]);
      sum_sq += r[i] * r[i];
      ++n;
      const int y = static_cast<int>(i / w);
      const int x = static_cast<int>(i % w);
      if (y > 0 && x > 0 && y < h - 1 && x < w - 1) {
        sum_hf += lap[i];
        ++n_hf;
      }
    }
  }
  if (n == 0) return std::nullopt;
  ResidualStats s;
  const double mean = sum / n;
  s.mean_abs = sum_abs / n;
  s.stddev = std::sqrt(std::max(0.0, sum_sq / n - mean * mean));
  s.hf_energy = n_hf ? sum_hf / n_hf : 0.0;
  return s;
}

double mean_abs_difference(const Frame& a, const Frame& b, const Mask* hint) {
  auto pa = a.data();
  auto pb = b.data();
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.pixel_count(); ++i) {
    if (hint && !(hint->data()[i] > 0.0)) continue;
    for (int c = 0; c < 3; ++c) sum += std::abs(static_cast<int>(pa[3 * i + c]) - static_cast<int>(pb[3 * i + c]));
    n += 3;
  }
  return n ? sum / n : 0.0;
}

double mean_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / v.size();
}

ResidualStats minus(const ResidualStats& a, const ResidualStats& b) {
  return {a.mean_abs - b.mean_abs, a.stddev - b.stddev, a.hf_energy - b.hf_energy};
}

std::vector<double> minus(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

json stats_json(const std::optional<ResidualStats>& s) {
  if (!s) return nullptr;
  return {{"mean_abs", s->mean_abs}, {"std", s->stddev}, {"hf_energy", s->hf_energy}};
}

json report_json(const RegularityReport& r) {
  return {{"noise_residual_stats",
           {{"all", stats_json(r.residual)},
            {"inside", stats_json(r.residual_inside)},
            {"outside", stats_json(r.residual_outside)}}},
          {"temporal_slice_energy", r.temporal_slice_energy},
          {"per_frame_delta", r.per_frame_delta},
          {"per_frame_delta_masked", r.per_frame_delta_masked},
          {"mean_frame_delta", r.mean_frame_delta()},
          {"mean_masked_delta", r.mean_masked_delta()}};
}

}  // namespace

FloatImage noise_residual(const Frame& frame) {
  const FloatImage gray = to_float(rgb_to_gray(frame));
  const FloatImage blurred = gaussian_blur_ksize(gray, 5);
  FloatImage out(gray.height(), gray.width());
  for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] = gray.data()[i] - blurred.data()[i];
  return out;
}

GrayImage temporal_slice(std::span<const Frame> frames, int column) {
  if (frames.empty()) fail(ErrorCode::MissingFrames, "no frames to slice");
  const int h = frames.front().height();
  if (column < 0 || column >= frames.front().width()) {
    fail(ErrorCode::ColumnOutOfRange, "column " + std::to_string(column) + " outside [0, " +
                                          std::to_string(frames.front().width()) + ")");
  }
  GrayImage slice(h, static_cast<int>(frames.size()));
  for (std::size_t t = 0; t < frames.size(); ++t) {
    const Frame& f = frames[t];
    for (int y = 0; y < h; ++y) {
      slice(y, static_cast<int>(t)) =
          round_to_byte(0.299 * f(y, column, 0) + 0.587 * f(y, column, 1) + 0.114 * f(y, column, 2));
    }
  }
  return slice;
}

double slice_energy(const GrayImage& slice) {
  if (slice.width() < 2) return 0.0;
  double sum = 0.0;
  for (int y = 0; y < slice.height(); ++y)
    for (int t = 0; t + 1 < slice.width(); ++t) sum += std::abs(int(slice(y, t + 1)) - int(slice(y, t)));
  return sum / (static_cast<double>(slice.height()) * (slice.width() - 1));
}

std::vector<int> sample_columns(int width, int count) {
  if (count < 1) fail(ErrorCode::InvalidArgument, "column count must be positive");
  std::vector<int> cols;
  for (int k = 0; k < count; ++k) {
    const int c = static_cast<int>(std::floor((k + 0.5) * width / count));
    if (cols.empty() || cols.back() != c) cols.push_back(c);
  }
  return cols;
}

double RegularityReport::mean_frame_delta() const { return mean_of(per_frame_delta); }
double RegularityReport::mean_masked_delta() const { return mean_of(per_frame_delta_masked); }

RegularityReport analyze(std::span<const Frame> frames, const Mask* mask_hint, int columns) {
  if (frames.empty()) fail(ErrorCode::MissingFrames, "no frames to analyze");
  for (const auto& f : frames) {
    if (!f.same_shape(frames.front())) fail(ErrorCode::DimensionMismatch, "frames differ in size");
  }
  if (mask_hint && !mask_hint->same_shape(frames.front())) {
    fail(ErrorCode::DimensionMismatch, "mask hint does not match frame size");
  }
  std::vector<FloatImage> residuals;
  std::vector<FloatImage> laplacians;
  for (const auto& f : frames) {
    residuals.push_back(noise_residual(f));
    laplacians.push_back(abs_laplacian(residuals.back()));
  }
  RegularityReport report;
  report.residual = *residual_stats(residuals, laplacians, nullptr, Region::All);
  if (mask_hint) {
    report.residual_inside = residual_stats(residuals, laplacians, mask_hint, Region::Inside);
    report.residual_outside = residual_stats(residuals, laplacians, mask_hint, Region::Outside);
  }
  double energy = 0.0;
  const auto cols = sample_columns(frames.front().width(), columns);
  for (int c : cols) energy += slice_energy(temporal_slice(frames, c));
  report.temporal_slice_energy = energy / cols.size();
  for (std::size_t t = 0; t + 1 < frames.size(); ++t) {
    report.per_frame_delta.push_back(mean_abs_difference(frames[t], frames[t + 1], nullptr));
    if (mask_hint) report.per_frame_delta_masked.push_back(mean_abs_difference(frames[t], frames[t + 1], mask_hint));
  }
  return report;
}

RegularityComparison compare(std::span<const Frame> real, std::span<const Frame> candidate, const Mask* mask_hint,
                             int columns) {
  if (real.size() != candidate.size() || real.empty() || !real.front().same_shape(candidate.front())) {
    fail(ErrorCode::DimensionMismatch, "clips differ in length or frame size");
  }
  RegularityComparison c;
  c.real = analyze(real, mask_hint, columns);
  c.candidate = analyze(candidate, mask_hint, columns);
  c.residual_delta = minus(c.candidate.residual, c.real.residual);
  if (c.real.residual_inside && c.candidate.residual_inside)
    c.residual_inside_delta = minus(*c.candidate.residual_inside, *c.real.residual_inside);
  if (c.real.residual_outside && c.candidate.residual_outside)
    c.residual_outside_delta = minus(*c.candidate.residual_outside, *c.real.residual_outside);
  c.temporal_slice_energy_delta = c.candidate.temporal_slice_energy - c.real.temporal_slice_energy;
  c.per_frame_delta_delta = minus(c.candidate.per_frame_delta, c.real.per_frame_delta);
  c.per_frame_delta_masked_delta = minus(c.candidate.per_frame_delta_masked, c.real.per_frame_delta_masked);
  return c;
}

std::string to_json(const RegularityComparison& c, int columns) {
  json j;
  j["schema"] = kReportSchema;
  j["columns"] = columns;
  j["real"] = report_json(c.real);
  j["candidate"] = report_json(c.candidate);
  j["delta"] = {{"noise_residual_stats",
                 {{"all", stats_json(c.residual_delta)},
                  {"inside", stats_json(c.residual_inside_delta)},
                  {"outside", stats_json(c.residual_outside_delta)}}},
                {"temporal_slice_energy", c.temporal_slice_energy_delta},
                {"per_frame_delta", c.per_frame_delta_delta},
                {"per_frame_delta_masked", c.per_frame_delta_masked_delta}};
  return j.dump(2);
}

}  // namespace pfake
