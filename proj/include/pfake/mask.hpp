#pragma once

#include <span>

#include "pfake/geometry.hpp"
#include "pfake/image.hpp"
#include "pfake/rpg.hpp"

namespace pfake {

/// Shape constants for the mask families.
struct MaskGeometry {
  double narrow_factor = 0.9;    // NarrowedFace hull scale toward its centroid
  double forehead_factor = 1.5;  // brow lift, in units of the brow-to-eye distance
  double organ_dilation = 4.0;   // pixels, MouthRegion and FacialOrgans
};

/// Binary mask of the closed polygon under the even-odd rule. A pixel is set
/// when its center (x = column, y = row) lies inside or on the boundary.
/// Throws TooFewPoints for fewer than 3 vertices.
Mask rasterize_polygon(std::span<const Point2> polygon, int height, int width);

/// Pixels whose center is inside `polygon` or within `radius` of its
/// boundary. Polygons with 1 or 2 vertices dilate the point or segment.
Mask rasterize_dilated(std::span<const Point2> polygon, double radius, int height, int width);

/// Landmark points lifted above the brows to cover the forehead.
std::vector<Point2> forehead_points(const Landmarks& landmarks, double factor);

/// Binary mask of one family. Throws DegenerateHull for collinear landmarks
/// and EmptyMask when the region misses the frame entirely.
Mask build_mask(const Landmarks& landmarks, MaskKind kind, int height, int width,
                const MaskGeometry& geometry = {});

/// Elastic deformation by params.deform, then Gaussian softening with
/// kernel size params.theta_k; values clamped to [0, 1].
Mask finalize_mask(const Mask& mask, const MaskParams& params);

bool is_empty(const Mask& mask) noexcept;
/// Number of pixels with value > threshold.
std::size_t mask_area(const Mask& mask, double threshold = 0.0) noexcept;

}  // namespace pfake
