#include "pfake/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pfake {

namespace {

double cross(Point2 o, Point2 a, Point2 b) noexcept {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

struct Circle {
  Point2 center;
  double radius_sq;
};

Circle circumcircle(Point2 a, Point2 b, Point2 c) noexcept {
  const double d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
  const double a2 = a.x * a.x + a.y * a.y;
  const double b2 = b.x * b.x + b.y * b.y;
  const double c2 = c.x * c.x + c.y * c.y;
  const Point2 center{(a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d,
                      (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d};
  const double dx = a.x - center.x;
  const double dy = a.y - center.y;
  return {center, dx * dx + dy * dy};
}

}  // namespace

Polygon convex_hull(std::span<const Point2> points) {
  Polygon pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;

  Polygon hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double signed_area(std::span<const Point2> polygon) noexcept {
  double sum = 0.0;
  for (std::size_t i = 0, n = polygon.size(); i < n; ++i) {
    const Point2& a = polygon[i];
    const Point2& b = polygon[(i + 1) % n];
    sum += a.x * b.y - b.x * a.y;
  }
  return 0.5 * sum;
}

Point2 polygon_centroid(std::span<const Point2> polygon) noexcept {
  const double area = signed_area(polygon);
  if (std::abs(area) < 1e-12) {
    Point2 mean{};
    for (const auto& p : polygon) {
      mean.x += p.x;
      mean.y += p.y;
    }
    const double n = polygon.empty() ? 1.0 : static_cast<double>(polygon.size());
    return {mean.x / n, mean.y / n};
  }
  double cx = 0.0;
  double cy = 0.0;
  for (std::size_t i = 0, n = polygon.size(); i < n; ++i) {
    const Point2& a = polygon[i];
    const Point2& b = polygon[(i + 1) % n];
    const double f = a.x * b.y - b.x * a.y;
    cx += (a.x + b.x) * f;
    cy += (a.y + b.y) * f;
  }
  return {cx / (6.0 * area), cy / (6.0 * area)};
}

double polygon_perimeter(std::span<const Point2> polygon) noexcept {
  double sum = 0.0;
  for (std::size_t i = 0, n = polygon.size(); i < n; ++i) {
    const Point2& a = polygon[i];
    const Point2& b = polygon[(i + 1) % n];
    sum += std::hypot(b.x - a.x, b.y - a.y);
  }
  return sum;
}

Polygon scale_polygon(std::span<const Point2> polygon, Point2 center, double factor) {
  Polygon out;
  out.reserve(polygon.size());
  for (const auto& p : polygon) {
    out.push_back({center.x + (p.x - center.x) * factor, center.y + (p.y - center.y) * factor});
  }
  return out;
}

double distance_to_segment(Point2 p, Point2 a, Point2 b) noexcept {
  const double vx = b.x - a.x;
  const double vy = b.y - a.y;
  const double len_sq = vx * vx + vy * vy;
  double t = len_sq > 0.0 ? ((p.x - a.x) * vx + (p.y - a.y) * vy) / len_sq : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * vx), p.y - (a.y + t * vy));
}

double distance_to_boundary(std::span<const Point2> polygon, Point2 p) noexcept {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0, n = polygon.size(); i < n; ++i) {
    best = std::min(best, distance_to_segment(p, polygon[i], polygon[(i + 1) % n]));
  }
  return best;
}

bool point_in_polygon(std::span<const Point2> polygon, Point2 p) noexcept {
  constexpr double kEdgeTolerance = 1e-9;
  bool inside = false;
  for (std::size_t i = 0, n = polygon.size(), j = n - 1; i < n; j = i++) {
    const Point2& a = polygon[i];
    const Point2& b = polygon[j];
    if (distance_to_segment(p, a, b) <= kEdgeTolerance) return true;
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

std::vector<Triangle> delaunay_triangulate(std::span<const Point2> input) {
  // Keep the first of any coincident points.
  std::vector<int> order;
  for (int i = 0; i < static_cast<int>(input.size()); ++i) {
    const bool dup = std::any_of(order.begin(), order.end(), [&](int j) {
      return std::abs(input[i].x - input[j].x) < 1e-9 && std::abs(input[i].y - input[j].y) < 1e-9;
    });
    if (!dup) order.push_back(i);
  }
  if (order.size() < 3) fail(ErrorCode::DegenerateTriangulation, "fewer than 3 distinct points");

  double min_x = input[order[0]].x, max_x = min_x, min_y = input[order[0]].y, max_y = min_y;
  for (int i : order) {
    min_x = std::min(min_x, input[i].x);
    max_x = std::max(max_x, input[i].x);
    min_y = std::min(min_y, input[i].y);
    max_y = std::max(max_y, input[i].y);
  }
  const double span = std::max({max_x - min_x, max_y - min_y, 1.0});
  const double mid_x = 0.5 * (min_x + max_x);
  const double mid_y = 0.5 * (min_y + max_y);

  std::vector<Point2> pts(input.begin(), input.end());
  const int n = static_cast<int>(pts.size());
  pts.push_back({mid_x - 20.0 * span, mid_y - span});
  pts.push_back({mid_x, mid_y + 20.0 * span});
  pts.push_back({mid_x + 20.0 * span, mid_y - span});

  struct Tri {
    Triangle v;
    Circle circle;
  };
  auto make_tri = [&](int a, int b, int c) {
    if (cross(pts[a], pts[b], pts[c]) < 0) std::swap(b, c);
    return Tri{{a, b, c}, circumcircle(pts[a], pts[b], pts[c])};
  };

  std::vector<Tri> tris{make_tri(n, n + 1, n + 2)};
  for (int idx : order) {
    const Point2 p = pts[idx];
    std::vector<std::array<int, 2>> edges;
    std::vector<Tri> keep;
    keep.reserve(tris.size());
    for (const auto& t : tris) {
      const double dx = p.x - t.circle.center.x;
      const double dy = p.y - t.circle.center.y;
      if (dx * dx + dy * dy < t.circle.radius_sq * (1.0 + 1e-12)) {
        for (int e = 0; e < 3; ++e) edges.push_back({t.v[e], t.v[(e + 1) % 3]});
      } else {
        keep.push_back(t);
      }
    }
    // Boundary edges of the cavity appear exactly once.
    for (std::size_t i = 0; i < edges.size(); ++i) {
      bool shared = false;
      for (std::size_t j = 0; j < edges.size(); ++j) {
        if (i != j && edges[i][0] == edges[j][1] && edges[i][1] == edges[j][0]) {
          shared = true;
          break;
        }
      }
      if (!shared && cross(pts[edges[i][0]], pts[edges[i][1]], p) != 0.0) {
        keep.push_back(make_tri(edges[i][0], edges[i][1], idx));
      }
    }
    tris = std::move(keep);
  }

  std::vector<Triangle> out;
  for (const auto& t : tris) {
    if (t.v[0] < n && t.v[1] < n && t.v[2] < n) out.push_back(t.v);
  }
  if (out.empty()) fail(ErrorCode::DegenerateTriangulation, "points are collinear");
  return out;
}

}  // namespace pfake
