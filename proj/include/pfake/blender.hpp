#pragma once

#include <utility>

#include "pfake/image.hpp"
#include "pfake/rpg.hpp"

namespace pfake {

inline constexpr int kSoftenKernelSize = 3;

/// Background blurs the real frame, Foreground blurs the edited frame
/// (3x3 Gaussian); None leaves both untouched. Returns (real, edited).
std::pair<Frame, Frame> soften_side(const Frame& real, const Frame& edited, SoftenSide side);

/// Matte actually used for compositing: the mask itself (Alpha), scaled by
/// alpha_scale (ScaledAlpha), or 1[mask >= 0.5] (Hard).
Mask effective_matte(const Mask& mask, const BlendParams& params);

/// round(real * (1 - m) + edited * m) with m = effective_matte(mask).
/// Throws DimensionMismatch.
Frame blend(const Frame& real, const Frame& edited, const Mask& mask, const BlendParams& params);

}  // namespace pfake
