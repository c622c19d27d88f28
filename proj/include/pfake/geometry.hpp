#pragma once

#include <array>
#include <span>
#include <vector>

#include "pfake/image.hpp"

namespace pfake {

using Polygon = std::vector<Point2>;

/// Convex hull in counter-clockwise order (y-down image coordinates are
/// treated like any Cartesian plane), collinear points dropped.
Polygon convex_hull(std::span<const Point2> points);

/// Signed shoelace area; positive for counter-clockwise order.
double signed_area(std::span<const Point2> polygon) noexcept;
/// Area centroid of a simple polygon; falls back to the vertex mean when
/// the area vanishes.
Point2 polygon_centroid(std::span<const Point2> polygon) noexcept;
double polygon_perimeter(std::span<const Point2> polygon) noexcept;

/// Scales every vertex toward `center` by `factor`.
Polygon scale_polygon(std::span<const Point2> polygon, Point2 center, double factor);

/// Even-odd containment test; points on an edge count as inside.
bool point_in_polygon(std::span<const Point2> polygon, Point2 p) noexcept;
double distance_to_segment(Point2 p, Point2 a, Point2 b) noexcept;
double distance_to_boundary(std::span<const Point2> polygon, Point2 p) noexcept;

/// Vertex indices of one triangle, counter-clockwise.
using Triangle = std::array<int, 3>;

/// Delaunay triangulation (Bowyer-Watson). Coincident points are kept only
/// once. Throws DegenerateTriangulation when all points are collinear.
std::vector<Triangle> delaunay_triangulate(std::span<const Point2> points);

}  // namespace pfake
