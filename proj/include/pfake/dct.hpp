#pragma once

#include "pfake/image.hpp"

namespace pfake {

/// Orthonormal 2-D DCT-II over the whole image.
FloatImage dct2(const FloatImage& image);

/// Orthonormal 2-D DCT-III, the exact inverse of dct2.
FloatImage idct2(const FloatImage& coefficients);

}  // namespace pfake
