#include "pfake/ste.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "pfake/errors.hpp"
#include "pfake/filters.hpp"
#include "pfake/random.hpp"

namespace pfake {

using nlohmann::json;

namespace {

double sigmoid(double x) noexcept { return 1.0 / (1.0 + std::exp(-x)); }

void expect_size(const std::vector<double>& v, std::size_t n, const char* name) {
  if (v.size() != n) {
    fail(ErrorCode::ShapeMismatch, std::string(name) + " holds " + std::to_string(v.size()) +
                                       " values, expected " + std::to_string(n));
  }
  for (double x : v)
    if (!std::isfinite(x)) fail(ErrorCode::ShapeMismatch, std::string(name) + " has non-finite values");
}

// out[r] = b[r] + sum_k w[r][k] * in[k]
void affine(std::span<const double> w, std::span<const double> b, std::span<const double> in,
            std::span<double> out) {
  const std::size_t n_in = in.size();
  for (std::size_t r = 0; r < out.size(); ++r) {
    double acc = b[r];
    for (std::size_t k = 0; k < n_in; ++k) acc += w[r * n_in + k] * in[k];
    out[r] = acc;
  }
}

Matrix project(const Matrix& x, const std::vector<double>& w, const std::vector<double>& b, int out_dim) {
  Matrix y(x.rows, out_dim);
  for (int r = 0; r < x.rows; ++r) {
    affine(w, b, std::span<const double>(x.data).subspan(static_cast<std::size_t>(r) * x.cols, x.cols),
           std::span<double>(y.data).subspan(static_cast<std::size_t>(r) * out_dim, out_dim));
  }
  return y;
}

void fill_uniform(std::vector<double>& v, std::size_t n, double bound, RandomStream& rng) {
  v.resize(n);
  for (double& x : v) x = rng.uniform(-bound, bound);
}

json array_json(const std::vector<double>& v, std::vector<int> shape) {
  return {{"shape", shape}, {"data", v}};
}

std::vector<double> array_from_json(const json& j, const char* name, const std::vector<int>& shape) {
  const auto got = j.at(name).at("shape").get<std::vector<int>>();
  if (got != shape) fail(ErrorCode::ShapeMismatch, std::string(name) + " has an unexpected shape");
  return j.at(name).at("data").get<std::vector<double>>();
}

}  // namespace

Tensor4::Tensor4(int channels, int length, int height, int width, double fill)
    : c_(channels), l_(length), h_(height), w_(width) {
  if (channels <= 0 || length <= 0 || height <= 0 || width <= 0) {
    fail(ErrorCode::ShapeMismatch, "tensor dimensions must be positive");
  }
  data_.assign(static_cast<std::size_t>(c_) * l_ * h_ * w_, fill);
}

Tensor4::Tensor4(int channels, int length, int height, int width, std::vector<double> data)
    : Tensor4(channels, length, height, width) {
  if (data.size() != data_.size()) fail(ErrorCode::ShapeMismatch, "tensor data length mismatch");
  for (double x : data)
    if (!std::isfinite(x)) fail(ErrorCode::ShapeMismatch, "tensor data must be finite");
  data_ = std::move(data);
}

void SteWeights::validate() const {
  const SteConfig& c = config;
  if (c.channels <= 0 || c.reduction <= 0 || c.channels % c.reduction != 0) {
    fail(ErrorCode::ShapeMismatch, "reduction must divide the channel count");
  }
  if (c.heads <= 0 || c.resolved_head_dim() <= 0) fail(ErrorCode::ShapeMismatch, "invalid attention heads");
  const std::size_t C = c.channels, S = c.squeezed(), I = c.inner(), P = kPatchSize * kPatchSize;
  if (temporal.size() != C) fail(ErrorCode::ShapeMismatch, "one temporal kernel per channel required");
  for (const auto& k : temporal)
    for (double x : k)
      if (!std::isfinite(x)) fail(ErrorCode::ShapeMismatch, "temporal kernel has non-finite values");
  expect_size(squeeze_w, S * C * P, "squeeze_w");
  expect_size(squeeze_b, S, "squeeze_b");
  expect_size(q_w, I * S, "q_w");
  expect_size(k_w, I * S, "k_w");
  expect_size(v_w, I * S, "v_w");
  expect_size(q_b, I, "q_b");
  expect_size(k_b, I, "k_b");
  expect_size(v_b, I, "v_b");
  expect_size(o_w, S * I, "o_w");
  expect_size(o_b, S, "o_b");
  expect_size(point_w, C * S, "point_w");
  expect_size(point_b, C, "point_b");
}

SteWeights random_ste_weights(const SteConfig& config, std::uint64_t seed) {
  SteWeights w;
  w.config = config;
  if (config.channels <= 0 || config.reduction <= 0 || config.channels % config.reduction != 0) {
    fail(ErrorCode::ShapeMismatch, "reduction must divide the channel count");
  }
  RandomStream rng(seed);
  const std::size_t C = config.channels, S = config.squeezed(), I = config.inner(),
                    P = kPatchSize * kPatchSize;
  w.temporal.resize(C);
  for (auto& k : w.temporal) k = {rng.uniform(-0.25, 0.25), 1.0 + rng.uniform(-0.25, 0.25), rng.uniform(-0.25, 0.25)};
  const double b_sq = 1.0 / std::sqrt(static_cast<double>(C * P));
  const double b_s = 1.0 / std::sqrt(static_cast<double>(S));
  const double b_i = 1.0 / std::sqrt(static_cast<double>(I));
  fill_uniform(w.squeeze_w, S * C * P, b_sq, rng);
  fill_uniform(w.squeeze_b, S, b_sq, rng);
  fill_uniform(w.q_w, I * S, b_s, rng);
  fill_uniform(w.k_w, I * S, b_s, rng);
  fill_uniform(w.v_w, I * S, b_s, rng);
  fill_uniform(w.q_b, I, b_s, rng);
  fill_uniform(w.k_b, I, b_s, rng);
  fill_uniform(w.v_b, I, b_s, rng);
  fill_uniform(w.o_w, S * I, b_i, rng);
  fill_uniform(w.o_b, S, b_i, rng);
  fill_uniform(w.point_w, C * S, b_s, rng);
  fill_uniform(w.point_b, C, b_s, rng);
  return w;
}

std::string serialize_weights(const SteWeights& w) {
  w.validate();
  const SteConfig& c = w.config;
  const int C = c.channels, S = c.squeezed(), I = c.inner();
  std::vector<double> temporal;
  for (const auto& k : w.temporal) temporal.insert(temporal.end(), k.begin(), k.end());
  json j = {
      {"format", "ste-weights/1"},
      {"channels", c.channels},
      {"reduction", c.reduction},
      {"heads", c.heads},
      {"head_dim", c.resolved_head_dim()},
      {"temporal", array_json(temporal, {C, 3})},
      {"squeeze_w", array_json(w.squeeze_w, {S, C, kPatchSize, kPatchSize})},
      {"squeeze_b", array_json(w.squeeze_b, {S})},
      {"q_w", array_json(w.q_w, {I, S})},
      {"k_w", array_json(w.k_w, {I, S})},
      {"v_w", array_json(w.v_w, {I, S})},
      {"q_b", array_json(w.q_b, {I})},
      {"k_b", array_json(w.k_b, {I})},
      {"v_b", array_json(w.v_b, {I})},
      {"o_w", array_json(w.o_w, {S, I})},
      {"o_b", array_json(w.o_b, {S})},
      {"point_w", array_json(w.point_w, {C, S})},
      {"point_b", array_json(w.point_b, {C})},
  };
  return j.dump();
}

SteWeights parse_weights(std::string_view document) {
  try {
    const json j = json::parse(document);
    if (j.at("format").get<std::string>() != "ste-weights/1") fail(ErrorCode::ParseError, "unknown weight format");
    SteWeights w;
    w.config.channels = j.at("channels").get<int>();
    w.config.reduction = j.at("reduction").get<int>();
    w.config.heads = j.at("heads").get<int>();
    w.config.head_dim = j.at("head_dim").get<int>();
    if (w.config.reduction <= 0 || w.config.channels % w.config.reduction != 0) {
      fail(ErrorCode::ShapeMismatch, "reduction must divide the channel count");
    }
    const int C = w.config.channels, S = w.config.squeezed(), I = w.config.inner();
    const auto temporal = array_from_json(j, "temporal", {C, 3});
    if (temporal.size() != static_cast<std::size_t>(C) * 3) fail(ErrorCode::ShapeMismatch, "temporal size");
    w.temporal.resize(C);
    for (int c = 0; c < C; ++c) w.temporal[c] = {temporal[3 * c], temporal[3 * c + 1], temporal[3 * c + 2]};
    w.squeeze_w = array_from_json(j, "squeeze_w", {S, C, kPatchSize, kPatchSize});
    w.squeeze_b = array_from_json(j, "squeeze_b", {S});
    w.q_w = array_from_json(j, "q_w", {I, S});
    w.k_w = array_from_json(j, "k_w", {I, S});
    w.v_w = array_from_json(j, "v_w", {I, S});
    w.q_b = array_from_json(j, "q_b", {I});
    w.k_b = array_from_json(j, "k_b", {I});
    w.v_b = array_from_json(j, "v_b", {I});
    w.o_w = array_from_json(j, "o_w", {S, I});
    w.o_b = array_from_json(j, "o_b", {S});
    w.point_w = array_from_json(j, "point_w", {C, S});
    w.point_b = array_from_json(j, "point_b", {C});
    w.validate();
    return w;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("weights: ") + e.what());
  }
}

Tensor4 temporal_conv(const Tensor4& f, std::span<const std::array<double, 3>> kernels) {
  if (kernels.size() != static_cast<std::size_t>(f.channels())) {
    fail(ErrorCode::ShapeMismatch, "temporal_conv needs one kernel per channel");
  }
  Tensor4 out(f.channels(), f.length(), f.height(), f.width());
  const std::size_t plane = static_cast<std::size_t>(f.height()) * f.width();
  for (int c = 0; c < f.channels(); ++c) {
    for (int t = 0; t < f.length(); ++t) {
      double* dst = &out(c, t, 0, 0);
      for (int i = -1; i <= 1; ++i) {
        const int s = t + i;
        if (s < 0 || s >= f.length()) continue;
        const double k = kernels[c][i + 1];
        const double* src = &f(c, s, 0, 0);
        for (std::size_t p = 0; p < plane; ++p) dst[p] += k * src[p];
      }
    }
  }
  return out;
}

Matrix patch_squeeze(const Tensor4& f, int t, const SteWeights& w) {
  const SteConfig& cfg = w.config;
  if (f.channels() != cfg.channels) fail(ErrorCode::ShapeMismatch, "channel count differs from weights");
  if (f.height() < kPatchSize || f.width() < kPatchSize) {
    fail(ErrorCode::TooSmall, "patch squeeze needs H >= 7 and W >= 7");
  }
  const int gh = f.height() / kPatchSize;
  const int gw = f.width() / kPatchSize;
  const int S = cfg.squeezed();
  const int C = cfg.channels;
  Matrix tokens(gh * gw, S);
  for (int py = 0; py < gh; ++py) {
    for (int px = 0; px < gw; ++px) {
      const int token = py * gw + px;
      for (int s = 0; s < S; ++s) {
        double acc = w.squeeze_b[s];
        for (int c = 0; c < C; ++c) {
          const double* k = &w.squeeze_w[(static_cast<std::size_t>(s) * C + c) * kPatchSize * kPatchSize];
          for (int dy = 0; dy < kPatchSize; ++dy)
            for (int dx = 0; dx < kPatchSize; ++dx)
              acc += k[dy * kPatchSize + dx] * f(c, t, py * kPatchSize + dy, px * kPatchSize + dx);
        }
        tokens(token, s) = acc;
      }
    }
  }
  return tokens;
}

Matrix self_att(const Matrix& x, const SteWeights& w, std::vector<Matrix>* attention) {
  const SteConfig& cfg = w.config;
  if (x.cols != cfg.squeezed() || x.rows < 1) fail(ErrorCode::ShapeMismatch, "token matrix shape mismatch");
  const int p = x.rows;
  const int d = cfg.resolved_head_dim();
  const int inner = cfg.inner();
  const Matrix q = project(x, w.q_w, w.q_b, inner);
  const Matrix k = project(x, w.k_w, w.k_b, inner);
  const Matrix v = project(x, w.v_w, w.v_b, inner);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));

  Matrix heads(p, inner);
  if (attention) attention->assign(cfg.heads, Matrix(p, p));
  std::vector<double> row(p);
  for (int h = 0; h < cfg.heads; ++h) {
    const int off = h * d;
    for (int i = 0; i < p; ++i) {
      double max_logit = -HUGE_VAL;
      for (int j = 0; j < p; ++j) {
        double dot = 0.0;
        for (int e = 0; e < d; ++e) dot += q(i, off + e) * k(j, off + e);
        row[j] = dot * scale;
        max_logit = std::max(max_logit, row[j]);
      }
      double denom = 0.0;
      for (int j = 0; j < p; ++j) {
        row[j] = std::exp(row[j] - max_logit);
        denom += row[j];
      }
      for (int j = 0; j < p; ++j) {
        const double a = row[j] / denom;
        if (attention) (*attention)[h](i, j) = a;
        for (int e = 0; e < d; ++e) heads(i, off + e) += a * v(j, off + e);
      }
    }
  }
  return project(heads, w.o_w, w.o_b, cfg.squeezed());
}

Matrix point_conv(const Matrix& tokens, const SteWeights& w) {
  if (tokens.cols != w.config.squeezed()) fail(ErrorCode::ShapeMismatch, "point_conv input width mismatch");
  return project(tokens, w.point_w, w.point_b, w.config.channels);
}

Tensor4 ste_gate(const Tensor4& f_hat, const SteWeights& w) {
  w.validate();
  const int C = f_hat.channels();
  const int H = f_hat.height();
  const int W = f_hat.width();
  if (C != w.config.channels) fail(ErrorCode::ShapeMismatch, "channel count differs from weights");
  const int gh = H / kPatchSize;
  const int gw = W / kPatchSize;
  Tensor4 gate(C, f_hat.length(), H, W);
  for (int t = 0; t < f_hat.length(); ++t) {
    const Matrix excited = point_conv(self_att(patch_squeeze(f_hat, t, w), w), w);
    for (int c = 0; c < C; ++c) {
      FloatImage grid(gh, gw);
      for (int py = 0; py < gh; ++py)
        for (int px = 0; px < gw; ++px) grid(py, px) = excited(py * gw + px, c);
      const FloatImage up = resize_bilinear(grid, H, W);
      for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x) gate(c, t, y, x) = sigmoid(up(y, x));
    }
  }
  return gate;
}

Tensor4 ste_forward(const Tensor4& f, const SteWeights& w) {
  w.validate();
  Tensor4 f_hat = temporal_conv(f, w.temporal);
  const Tensor4 gate = ste_gate(f_hat, w);
  auto out = f_hat.data();
  auto g = gate.data();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= g[i];
  return f_hat;
}

double bce_loss(double y_pred, int y_gt) {
  if (y_gt != 0 && y_gt != 1) fail(ErrorCode::InvalidArgument, "label must be 0 or 1");
  const double p = std::clamp(y_pred, kBceEpsilon, 1.0 - kBceEpsilon);
  return y_gt == 1 ? -std::log(p) : -std::log(1.0 - p);
}

}  // namespace pfake
