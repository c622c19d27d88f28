#include "pfake/mask.hpp"

#include <algorithm>
#include <cmath>

#include "pfake/editor.hpp"
#include "pfake/filters.hpp"

namespace pfake {

namespace {

struct Box {
  int x_lo, x_hi, y_lo, y_hi;
};

Box clipped_bounds(std::span<const Point2> pts, double pad, int height, int width) {
  double x0 = pts[0].x, x1 = pts[0].x, y0 = pts[0].y, y1 = pts[0].y;
  for (const auto& p : pts) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  auto clip = [](double v, int hi) { return static_cast<int>(std::clamp(v, -1.0, static_cast<double>(hi))); };
  return {std::max(0, clip(std::floor(x0 - pad), width)), std::min(width - 1, clip(std::ceil(x1 + pad), width)),
          std::max(0, clip(std::floor(y0 - pad), height)), std::min(height - 1, clip(std::ceil(y1 + pad), height))};
}

Polygon hull_or_throw(std::span<const Point2> pts, const char* what) {
  Polygon hull = convex_hull(pts);
  if (hull.size() < 3 || std::abs(signed_area(hull)) < 1e-9) {
    fail(ErrorCode::DegenerateHull, std::string(what) + " landmarks are collinear");
  }
  return hull;
}

void union_into(Mask& dst, const Mask& src) {
  auto d = dst.data();
  auto s = src.data();
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::max(d[i], s[i]);
}

}  // namespace

Mask rasterize_polygon(std::span<const Point2> polygon, int height, int width) {
  if (polygon.size() < 3) fail(ErrorCode::TooFewPoints, "a polygon needs at least 3 points");
  Mask mask(height, width, 0.0);
  const Box box = clipped_bounds(polygon, 0.0, height, width);
  for (int y = box.y_lo; y <= box.y_hi; ++y)
    for (int x = box.x_lo; x <= box.x_hi; ++x)
      if (point_in_polygon(polygon, {static_cast<double>(x), static_cast<double>(y)})) mask(y, x) = 1.0;
  return mask;
}

Mask rasterize_dilated(std::span<const Point2> polygon, double radius, int height, int width) {
  if (polygon.empty()) fail(ErrorCode::TooFewPoints, "nothing to dilate");
  Mask mask(height, width, 0.0);
  const Box box = clipped_bounds(polygon, radius, height, width);
  for (int y = box.y_lo; y <= box.y_hi; ++y) {
    for (int x = box.x_lo; x <= box.x_hi; ++x) {
      const Point2 p{static_cast<double>(x), static_cast<double>(y)};
      bool inside;
      if (polygon.size() == 1) {
        inside = std::hypot(p.x - polygon[0].x, p.y - polygon[0].y) <= radius;
      } else if (polygon.size() == 2) {
        inside = distance_to_segment(p, polygon[0], polygon[1]) <= radius;
      } else {
        inside = point_in_polygon(polygon, p) || distance_to_boundary(polygon, p) <= radius;
      }
      if (inside) mask(y, x) = 1.0;
    }
  }
  return mask;
}

std::vector<Point2> forehead_points(const Landmarks& lm, double factor) {
  const auto brows = lm.range(17, 26);
  const auto eyes = lm.range(36, 47);
  Point2 brow_c{}, eye_c{};
  for (const auto& p : brows) {
    brow_c.x += p.x / brows.size();
    brow_c.y += p.y / brows.size();
  }
  for (const auto& p : eyes) {
    eye_c.x += p.x / eyes.size();
    eye_c.y += p.y / eyes.size();
  }
  // Lift along the eye-to-brow direction so tilted faces extend correctly.
  const double dx = brow_c.x - eye_c.x;
  const double dy = brow_c.y - eye_c.y;
  std::vector<Point2> out;
  out.reserve(brows.size());
  for (const auto& b : brows) out.push_back({b.x + factor * dx, b.y + factor * dy});
  return out;
}

Mask build_mask(const Landmarks& lm, MaskKind kind, int height, int width, const MaskGeometry& g) {
  const auto& all = lm.points();
  Mask mask;
  switch (kind) {
    case MaskKind::WholeFace:
      mask = rasterize_polygon(hull_or_throw(all, "face"), height, width);
      break;
    case MaskKind::NarrowedFace: {
      const Polygon hull = hull_or_throw(all, "face");
      mask = rasterize_polygon(scale_polygon(hull, polygon_centroid(hull), g.narrow_factor), height, width);
      break;
    }
    case MaskKind::FaceWithForehead: {
      std::vector<Point2> pts(all.begin(), all.end());
      const auto lifted = forehead_points(lm, g.forehead_factor);
      pts.insert(pts.end(), lifted.begin(), lifted.end());
      mask = rasterize_polygon(hull_or_throw(pts, "face"), height, width);
      break;
    }
    case MaskKind::FaceBoundary: {
      const Polygon hull = hull_or_throw(all, "face");
      mask = rasterize_polygon(hull, height, width);
      const Mask inner =
          rasterize_polygon(scale_polygon(hull, polygon_centroid(hull), g.narrow_factor), height, width);
      auto m = mask.data();
      auto n = inner.data();
      for (std::size_t i = 0; i < m.size(); ++i)
        if (n[i] > 0.0) m[i] = 0.0;
      break;
    }
    case MaskKind::MouthRegion:
      mask = rasterize_dilated(hull_or_throw(lm.range(48, 67), "mouth"), g.organ_dilation, height, width);
      break;
    case MaskKind::FacialOrgans: {
      hull_or_throw(all, "face");
      mask = Mask(height, width, 0.0);
      constexpr std::pair<std::size_t, std::size_t> kOrgans[] = {{36, 41}, {42, 47}, {27, 35}, {48, 67}};
      for (const auto& [first, last] : kOrgans) {
        const auto pts = lm.range(first, last);
        union_into(mask, rasterize_dilated(convex_hull(pts), g.organ_dilation, height, width));
      }
      break;
    }
  }
  if (is_empty(mask)) {
    fail(ErrorCode::EmptyMask, std::string(to_string(kind)) + " mask does not intersect the frame");
  }
  return mask;
}

Mask finalize_mask(const Mask& mask, const MaskParams& params) {
  Mask out = elastic_transform(mask, params.deform.theta_sigma, params.deform.theta_alpha,
                               params.deform.noise_seed);
  out = gaussian_blur_ksize(out, params.theta_k);
  for (double& v : out.data()) v = std::clamp(v, 0.0, 1.0);
  return out;
}

bool is_empty(const Mask& mask) noexcept {
  return std::none_of(mask.data().begin(), mask.data().end(), [](double v) { return v > 0.0; });
}

std::size_t mask_area(const Mask& mask, double threshold) noexcept {
  return static_cast<std::size_t>(
      std::count_if(mask.data().begin(), mask.data().end(), [&](double v) { return v > threshold; }));
}

}  // namespace pfake
