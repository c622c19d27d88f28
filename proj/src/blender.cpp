#include "pfake/blender.hpp"

#include <cmath>

#include "pfake/filters.hpp"

namespace pfake {

std::pair<Frame, Frame> soften_side(const Frame& real, const Frame& edited, SoftenSide side) {
  if (!real.same_shape(edited)) fail(ErrorCode::DimensionMismatch, "real and edited frames differ in size");
  switch (side) {
    case SoftenSide::Background:
      return {gaussian_blur_ksize(real, kSoftenKernelSize), edited};
    case SoftenSide::Foreground:
      return {real, gaussian_blur_ksize(edited, kSoftenKernelSize)};
    case SoftenSide::None:
      break;
  }
  return {real, edited};
}

Mask effective_matte(const Mask& mask, const BlendParams& params) {
  Mask m = mask;
  switch (params.method) {
    case BlendMethod::Alpha:
      break;
    case BlendMethod::ScaledAlpha:
      for (double& v : m.data()) v *= params.alpha_scale;
      break;
    case BlendMethod::Hard:
      for (double& v : m.data()) v = v >= 0.5 ? 1.0 : 0.0;
      break;
  }
  return m;
}

Frame blend(const Frame& real, const Frame& edited, const Mask& mask, const BlendParams& params) {
  if (!real.same_shape(edited) || !real.same_shape(mask)) {
    fail(ErrorCode::DimensionMismatch, "blend inputs differ in size");
  }
  const Mask matte = effective_matte(mask, params);
  Frame out(real.height(), real.width());
  auto r = real.data();
  auto e = edited.data();
  auto m = matte.data();
  auto o = out.data();
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double w = m[i];
    for (int c = 0; c < 3; ++c) {
      const std::size_t k = 3 * i + c;
      o[k] = w == 0.0 ? r[k] : round_to_byte(r[k] * (1.0 - w) + e[k] * w);
    }
  }
  return out;
}

}  // namespace pfake
