#include <gtest/gtest.h>

#include <cmath>

#include "pfake/geometry.hpp"
#include "pfake/mask.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace pfake {
namespace {

constexpr int kSize = 128;
const MaskKind kAllKinds[] = {MaskKind::WholeFace,    MaskKind::NarrowedFace, MaskKind::FaceWithForehead,
                              MaskKind::FaceBoundary, MaskKind::MouthRegion,  MaskKind::FacialOrgans};

Landmarks face() { return testing::synthetic_landmarks(64, 70, 38, 44); }

// --- geometry -------------------------------------------------------------

TEST(ConvexHull, SquareWithInteriorAndCollinearPoints) {
  const std::vector<Point2> pts{{0, 0}, {2, 0}, {4, 0}, {4, 4}, {0, 4}, {1, 1}, {2, 3}};
  const Polygon hull = convex_hull(pts);
  EXPECT_EQ(hull.size(), 4u);
  EXPECT_NEAR(std::abs(signed_area(hull)), 16.0, 1e-12);
  EXPECT_GT(signed_area(hull), 0.0);
  EXPECT_NEAR(polygon_perimeter(hull), 16.0, 1e-12);
  const Point2 c = polygon_centroid(hull);
  EXPECT_NEAR(c.x, 2.0, 1e-12);
  EXPECT_NEAR(c.y, 2.0, 1e-12);
}

TEST(ConvexHull, ContainsEveryInputPoint) {
  const auto& pts = face().points();
  const Polygon hull = convex_hull(pts);
  for (const auto& p : pts) EXPECT_TRUE(point_in_polygon(hull, p));
}

TEST(PointInPolygon, AgreesWithWindingOracle) {
  const std::vector<Point2> concave{{1, 1}, {9, 1}, {9, 9}, {5, 4}, {1, 9}};
  for (double y = 0; y <= 10; y += 0.5)
    for (double x = 0; x <= 10; x += 0.5) EXPECT_EQ(point_in_polygon(concave, {x, y}), oracle::inside_polygon(concave, x, y)) << x << "," << y;
}

TEST(Delaunay, SquareAndEmptyCircumcircles) {
  const std::vector<Point2> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  EXPECT_EQ(delaunay_triangulate(sq).size(), 2u);
  const auto& pts = face().points();
  const auto tris = delaunay_triangulate(pts);
  // Euler: a triangulation of n points with h on the hull has 2n - 2 - h triangles.
  const std::size_t h = convex_hull(pts).size();
  EXPECT_EQ(tris.size(), 2 * pts.size() - 2 - h);
  for (const auto& t : tris) {
    const Point2 a = pts[t[0]], b = pts[t[1]], c = pts[t[2]];
    const double d = 2 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    const double ux = ((a.x * a.x + a.y * a.y) * (b.y - c.y) + (b.x * b.x + b.y * b.y) * (c.y - a.y) +
                       (c.x * c.x + c.y * c.y) * (a.y - b.y)) / d;
    const double uy = ((a.x * a.x + a.y * a.y) * (c.x - b.x) + (b.x * b.x + b.y * b.y) * (a.x - c.x) +
                       (c.x * c.x + c.y * c.y) * (b.x - a.x)) / d;
    const double r = std::hypot(a.x - ux, a.y - uy);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (static_cast<int>(i) == t[0] || static_cast<int>(i) == t[1] || static_cast<int>(i) == t[2]) continue;
      EXPECT_GE(std::hypot(pts[i].x - ux, pts[i].y - uy), r - 1e-6);
    }
  }
}

TEST(Delaunay, CollinearRejected) {
  const std::vector<Point2> line{{0, 0}, {1, 1}, {2, 2}, {3, 3}};
  try {
    delaunay_triangulate(line);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateTriangulation);
  }
}

// --- rasterization --------------------------------------------------------

TEST(Rasterize, SquareMatchesBruteForce) {
  const std::vector<Point2> sq{{2, 2}, {6, 2}, {6, 6}, {2, 6}};
  const Mask m = rasterize_polygon(sq, 10, 10);
  int brute = 0;
  for (int y = 0; y < 10; ++y)
    for (int x = 0; x < 10; ++x) {
      const bool in = oracle::inside_polygon(sq, x, y);
      brute += in;
      EXPECT_EQ(m(y, x), in ? 1.0 : 0.0);
    }
  EXPECT_EQ(brute, 25);
  EXPECT_EQ(mask_area(m), 25u);
}

TEST(Rasterize, OutsideTriangleGivesEmptyMask) {
  const std::vector<Point2> tri{{-30, -30}, {-10, -30}, {-20, -5}};
  EXPECT_TRUE(is_empty(rasterize_polygon(tri, 10, 10)));
  const std::vector<Point2> far{{50, 50}, {60, 50}, {55, 60}};
  EXPECT_TRUE(is_empty(rasterize_polygon(far, 10, 10)));
}

TEST(Rasterize, TooFewPoints) {
  const std::vector<Point2> two{{1, 1}, {5, 5}};
  try {
    rasterize_polygon(two, 10, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooFewPoints);
  }
}

TEST(Rasterize, HullCoversLandmarkPixels) {
  const Landmarks lm = face();
  const Mask m = rasterize_polygon(convex_hull(lm.points()), kSize, kSize);
  for (const auto& p : lm.points()) {
    // The landmark's own location is inside; its rounded pixel may sit just
    // outside a hull edge by under half a pixel, so test the exact point.
    EXPECT_TRUE(point_in_polygon(convex_hull(lm.points()), p));
    const int x = static_cast<int>(std::lround(p.x)), y = static_cast<int>(std::lround(p.y));
    bool near = false;
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) near |= m(y + dy, x + dx) == 1.0;
    EXPECT_TRUE(near);
  }
}

// --- mask families --------------------------------------------------------

TEST(BuildMask, EveryKindIsBinaryNonEmptyAndDeterministic) {
  const Landmarks lm = face();
  for (MaskKind k : kAllKinds) {
    const Mask m = build_mask(lm, k, kSize, kSize);
    EXPECT_FALSE(is_empty(m)) << to_string(k);
    for (double v : m.data()) EXPECT_TRUE(v == 0.0 || v == 1.0);
    EXPECT_EQ(m, build_mask(lm, k, kSize, kSize));
  }
}

TEST(BuildMask, NarrowedInsideWhole) {
  const Mask whole = build_mask(face(), MaskKind::WholeFace, kSize, kSize);
  const Mask narrow = build_mask(face(), MaskKind::NarrowedFace, kSize, kSize);
  for (std::size_t i = 0; i < whole.data().size(); ++i) EXPECT_LE(narrow.data()[i], whole.data()[i]);
  EXPECT_LT(mask_area(narrow), mask_area(whole));
}

TEST(BuildMask, BoundaryIsRing) {
  const Mask ring = build_mask(face(), MaskKind::FaceBoundary, kSize, kSize);
  const Mask narrow = build_mask(face(), MaskKind::NarrowedFace, kSize, kSize);
  const Mask whole = build_mask(face(), MaskKind::WholeFace, kSize, kSize);
  for (std::size_t i = 0; i < ring.data().size(); ++i) {
    EXPECT_EQ(ring.data()[i] * narrow.data()[i], 0.0);
    EXPECT_EQ(ring.data()[i] + narrow.data()[i], whole.data()[i]);
  }
  EXPECT_EQ(ring(70, 64), 0.0);  // face centre
}

TEST(BuildMask, ForeheadExtendsAboveBrows) {
  const Landmarks lm = face();
  const Mask whole = build_mask(lm, MaskKind::WholeFace, kSize, kSize);
  const Mask fore = build_mask(lm, MaskKind::FaceWithForehead, kSize, kSize);
  for (std::size_t i = 0; i < whole.data().size(); ++i) EXPECT_GE(fore.data()[i], whole.data()[i]);
  auto top_row = [](const Mask& m) {
    for (int y = 0; y < m.height(); ++y)
      for (int x = 0; x < m.width(); ++x)
        if (m(y, x) > 0) return y;
    return m.height();
  };
  double brow_top = 1e9;
  for (const auto& p : lm.range(17, 26)) brow_top = std::min(brow_top, p.y);
  EXPECT_LT(top_row(fore), top_row(whole));
  EXPECT_LT(top_row(fore), brow_top - 5);
  // Lift equals factor times the brow-to-eye offset.
  const auto lifted = forehead_points(lm, 1.5);
  double brow_y = 0, eye_y = 0;
  for (const auto& p : lm.range(17, 26)) brow_y += p.y / 10;
  for (const auto& p : lm.range(36, 47)) eye_y += p.y / 12;
  EXPECT_NEAR(lifted[0].y - lm[17].y, 1.5 * (brow_y - eye_y), 1e-9);
}

TEST(BuildMask, MouthAreaWithinDilationBound) {
  const Landmarks lm = face();
  const Polygon hull = convex_hull(lm.range(48, 67));
  const double a = std::abs(signed_area(hull));
  const double p = polygon_perimeter(hull);
  const Mask m = build_mask(lm, MaskKind::MouthRegion, kSize, kSize);
  // Brute-force dilation: every pixel within 4 px of the hull or inside it.
  std::size_t brute = 0;
  for (int y = 0; y < kSize; ++y)
    for (int x = 0; x < kSize; ++x) {
      double dmin = 1e9;
      for (std::size_t i = 0; i < hull.size(); ++i) {
        const Point2 u = hull[i], v = hull[(i + 1) % hull.size()];
        const double len2 = (v.x - u.x) * (v.x - u.x) + (v.y - u.y) * (v.y - u.y);
        const double t = std::clamp(((x - u.x) * (v.x - u.x) + (y - u.y) * (v.y - u.y)) / len2, 0.0, 1.0);
        dmin = std::min(dmin, std::hypot(x - u.x - t * (v.x - u.x), y - u.y - t * (v.y - u.y)));
      }
      const bool in = oracle::inside_polygon(hull, x, y) || dmin <= 4.0;
      brute += in;
      EXPECT_EQ(m(y, x), in ? 1.0 : 0.0);
    }
  EXPECT_EQ(mask_area(m), brute);
  EXPECT_GE(static_cast<double>(brute), a);
  EXPECT_LE(static_cast<double>(brute), a + p * 4 + 60);
}

TEST(BuildMask, OrgansCoverEyesNoseMouthOnly) {
  const Landmarks lm = face();
  const Mask m = build_mask(lm, MaskKind::FacialOrgans, kSize, kSize);
  for (std::size_t i = 27; i < 68; ++i) {
    const int x = static_cast<int>(std::lround(lm[i].x)), y = static_cast<int>(std::lround(lm[i].y));
    EXPECT_EQ(m(y, x), 1.0) << i;
  }
  // Cheek between the eye and the jaw is not part of any organ.
  const int cx = static_cast<int>(lm[36].x), cy = static_cast<int>((lm[41].y + lm[4].y) / 2);
  EXPECT_EQ(m(cy, cx), 0.0);
}

TEST(BuildMask, FaceMasksStayInsideExtendedBox) {
  const Landmarks lm = face();
  double x0 = 1e9, x1 = -1e9, y0 = 1e9, y1 = -1e9;
  for (const auto& p : lm.points()) {
    x0 = std::min(x0, p.x), x1 = std::max(x1, p.x), y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
  }
  for (const auto& p : forehead_points(lm, 1.5)) y0 = std::min(y0, p.y);
  for (MaskKind k : {MaskKind::WholeFace, MaskKind::NarrowedFace, MaskKind::FaceWithForehead}) {
    MaskParams mp;
    mp.theta_k = 11;
    const Mask m = finalize_mask(build_mask(lm, k, kSize, kSize), mp);
    for (int y = 0; y < kSize; ++y)
      for (int x = 0; x < kSize; ++x)
        if (m(y, x) > 0) {
          EXPECT_GE(x, x0 - 5);
          EXPECT_LE(x, x1 + 5);
          EXPECT_GE(y, y0 - 5);
          EXPECT_LE(y, y1 + 5);
        }
  }
}

TEST(BuildMask, Errors) {
  std::vector<Point2> line;
  for (int i = 0; i < 68; ++i) line.push_back({10.0 + i, 20.0});
  try {
    build_mask(Landmarks(line), MaskKind::WholeFace, 64, 128);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateHull);
  }
  const Landmarks off = testing::synthetic_landmarks(-200, -200, 30, 30);
  try {
    build_mask(off, MaskKind::WholeFace, 64, 64);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyMask);
  }
}

// --- finalize -------------------------------------------------------------

Mask square_mask() {
  const std::vector<Point2> sq{{10, 10}, {50, 10}, {50, 50}, {10, 50}};
  return rasterize_polygon(sq, 64, 64);
}

TEST(FinalizeMask, InteriorStaysOneWithoutDeformation) {
  MaskParams p;
  p.theta_k = 3;
  const Mask m = finalize_mask(square_mask(), p);
  for (int y = 15; y <= 45; ++y)
    for (int x = 15; x <= 45; ++x) EXPECT_DOUBLE_EQ(m(y, x), 1.0);
  EXPECT_DOUBLE_EQ(m(0, 0), 0.0);
}

TEST(FinalizeMask, ValuesInUnitInterval) {
  for (int k : kMaskKernelSizes) {
    MaskParams p;
    p.theta_k = k;
    p.deform = {5.0, 30.0, static_cast<std::uint64_t>(k)};
    const Mask m = finalize_mask(build_mask(face(), MaskKind::FaceBoundary, kSize, kSize), p);
    for (double v : m.data()) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(FinalizeMask, LargerKernelWidensTransition) {
  auto band = [](const Mask& m) {
    std::size_t n = 0;
    for (double v : m.data()) n += v > 0.05 && v < 0.95;
    return n;
  };
  MaskParams small, large;
  small.theta_k = 3;
  large.theta_k = 11;
  EXPECT_GT(band(finalize_mask(square_mask(), large)), band(finalize_mask(square_mask(), small)));
}

TEST(FinalizeMask, DeformationMovesEdges) {
  MaskParams p;
  p.deform = {4.0, 30.0, 9};
  const Mask m = finalize_mask(square_mask(), p);
  MaskParams q;
  EXPECT_NE(m, finalize_mask(square_mask(), q));
  EXPECT_EQ(m, finalize_mask(square_mask(), p));
}

}  // namespace
}  // namespace pfake
