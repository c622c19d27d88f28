#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pfake {

/// Dense C x L x H x W real tensor, row-major.
class Tensor4 {
 public:
  Tensor4() = default;
  Tensor4(int channels, int length, int height, int width, double fill = 0.0);
  Tensor4(int channels, int length, int height, int width, std::vector<double> data);

  int channels() const noexcept { return c_; }
  int length() const noexcept { return l_; }
  int height() const noexcept { return h_; }
  int width() const noexcept { return w_; }
  bool same_shape(const Tensor4& o) const noexcept {
    return c_ == o.c_ && l_ == o.l_ && h_ == o.h_ && w_ == o.w_;
  }

  double& operator()(int c, int t, int y, int x) noexcept { return data_[index(c, t, y, x)]; }
  const double& operator()(int c, int t, int y, int x) const noexcept { return data_[index(c, t, y, x)]; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  bool operator==(const Tensor4&) const = default;

 private:
  std::size_t index(int c, int t, int y, int x) const noexcept {
    return ((static_cast<std::size_t>(c) * l_ + t) * h_ + y) * w_ + x;
  }

  int c_ = 0, l_ = 0, h_ = 0, w_ = 0;
  std::vector<double> data_;
};

/// Row-major rows x cols matrix; token matrices are p x dim.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c, double fill = 0.0) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, fill) {}

  double& operator()(int r, int c) noexcept { return data[static_cast<std::size_t>(r) * cols + c]; }
  double operator()(int r, int c) const noexcept { return data[static_cast<std::size_t>(r) * cols + c]; }
};

inline constexpr int kPatchSize = 7;

struct SteConfig {
  int channels = 16;
  int reduction = 8;
  int heads = 4;
  int head_dim = 0;  // 0 = channels / reduction

  int squeezed() const noexcept { return channels / reduction; }
  int resolved_head_dim() const noexcept { return head_dim > 0 ? head_dim : squeezed(); }
  int inner() const noexcept { return heads * resolved_head_dim(); }
};

/// Parameters of the spatio-temporal enhancement block.
struct SteWeights {
  SteConfig config;
  std::vector<std::array<double, 3>> temporal;  // per channel, taps for t-1, t, t+1
  std::vector<double> squeeze_w;                // [C/r][C][7][7]
  std::vector<double> squeeze_b;                // [C/r]
  std::vector<double> q_w, k_w, v_w;            // [inner][C/r]
  std::vector<double> q_b, k_b, v_b;            // [inner]
  std::vector<double> o_w;                      // [C/r][inner]
  std::vector<double> o_b;                      // [C/r]
  std::vector<double> point_w;                  // [C][C/r]
  std::vector<double> point_b;                  // [C]

  /// Throws ShapeMismatch on inconsistent sizes or non-finite values.
  void validate() const;
};

/// Deterministic pseudo-random weights, uniform in +-1/sqrt(fan_in);
/// temporal taps are drawn around the identity kernel (0, 1, 0).
SteWeights random_ste_weights(const SteConfig& config, std::uint64_t seed);

/// Weight fixture: JSON object of flat arrays, each with a shape header.
std::string serialize_weights(const SteWeights& weights);
SteWeights parse_weights(std::string_view document);

/// out[c, t] = sum_i K[c][i] * f[c, t + i - 1], zero-padded in time.
Tensor4 temporal_conv(const Tensor4& f, std::span<const std::array<double, 3>> kernels);

/// 7x7 stride-7 patch convolution of time step t: p = floor(H/7) * floor(W/7)
/// tokens of dimension C/r, in row-major patch order.
Matrix patch_squeeze(const Tensor4& f, int t, const SteWeights& weights);

/// Multi-head scaled dot-product self-attention without positions. When
/// `attention` is given it receives one p x p row-stochastic matrix per head.
Matrix self_att(const Matrix& tokens, const SteWeights& weights, std::vector<Matrix>* attention = nullptr);

/// 1x1 convolution C/r -> C applied per token.
Matrix point_conv(const Matrix& tokens, const SteWeights& weights);

/// Sigmoid gate for every element of f_hat: sigmoid(bilinear upsampling of
/// the point_conv tokens laid out on the floor(H/7) x floor(W/7) grid).
Tensor4 ste_gate(const Tensor4& f_hat, const SteWeights& weights);

/// temporal_conv followed by elementwise gating with ste_gate.
Tensor4 ste_forward(const Tensor4& f, const SteWeights& weights);

inline constexpr double kBceEpsilon = 1e-7;

/// Binary cross-entropy with y_pred clamped to [eps, 1 - eps].
double bce_loss(double y_pred, int y_gt);

}  // namespace pfake
