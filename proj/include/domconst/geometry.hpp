// SPDX-License-Identifier: Apache-2.0
//
// Planar domains (polygon / disc / ellipse), boundary distance and its
// gradient, directional ray distance and the angular mean distance.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "domconst/errors.hpp"

namespace domconst {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline bool finite(Point2 a) { return std::isfinite(a.x) && std::isfinite(a.y); }

struct Polygon {
  std::vector<Point2> vertices; // simple, counter-clockwise, >= 3 vertices
};

struct Disc {
  Point2 center;
  double radius = 1.0;
};

struct Ellipse {
  Point2 center;
  double a = 1.0; // semi-major, a >= b
  double b = 1.0; // semi-minor, b > 0
};

struct BoundingBox {
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
};

/// Distance to the boundary together with its gradient.
/// `gradient` points from the nearest boundary point toward the query point
/// and has unit length. On the medial axis (two equidistant boundary
/// features within 1e-12) the gradient of the lowest-indexed feature is kept.
struct DistanceEval {
  double value = 0.0;
  Point2 gradient{1.0, 0.0};
  bool on_medial_axis = false;
};

/// Exterior cone semi-angle, in (0, pi/2].
struct ConeAngle {
  double theta = std::numbers::pi / 2;
};

namespace geom_detail {

constexpr double kMedialTieTol = 1e-12;

inline double signed_area(const std::vector<Point2>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2& p = v[i];
    const Point2& q = v[(i + 1) % v.size()];
    s += cross(p, q);
  }
  return 0.5 * s;
}

inline Point2 polygon_centroid(const std::vector<Point2>& v) {
  double a = 0.0, cx = 0.0, cy = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2& p = v[i];
    const Point2& q = v[(i + 1) % v.size()];
    const double w = cross(p, q);
    a += w;
    cx += (p.x + q.x) * w;
    cy += (p.y + q.y) * w;
  }
  return {cx / (3.0 * a), cy / (3.0 * a)};
}

// Proper or touching intersection of segments [a,b] and [c,d].
inline bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d) {
  const double d1 = cross(b - a, c - a);
  const double d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c);
  const double d4 = cross(d - c, b - c);
  if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0))) return true;
  auto on_segment = [](Point2 p, Point2 q, Point2 r) {
    return cross(q - p, r - p) == 0.0 &&
           std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) &&
           std::min(p.y, q.y) <= r.y && r.y <= std::max(p.y, q.y);
  };
  if (on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) ||
      on_segment(c, d, b))
    return true;
  return false;
}

inline void validate_polygon(const std::vector<Point2>& v) {
  if (v.size() < 3) throw GeometryError("polygon needs at least 3 vertices");
  for (const Point2& p : v)
    if (!finite(p)) throw GeometryError("polygon has non-finite vertex");
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i)
    if (distance(v[i], v[(i + 1) % n]) == 0.0)
      throw GeometryError("polygon has a zero-length edge");
  if (signed_area(v) <= 0.0)
    throw GeometryError("polygon must be counter-clockwise with positive area");
  // Non-adjacent edges must not intersect or touch.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue; // adjacent
      if (segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]))
        throw GeometryError("polygon is not simple (self-intersection)");
    }
  }
}

inline bool polygon_contains(const std::vector<Point2>& v, Point2 p) {
  bool inside = false;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = v[i];
    const Point2& b = v[(i + 1) % n];
    // exactly on the edge counts as outside (strict interior test)
    const Point2 e = b - a;
    if (cross(e, p - a) == 0.0) {
      const double t = dot(p - a, e);
      if (t >= 0.0 && t <= dot(e, e)) return false;
    }
    if ((a.y > p.y) != (b.y > p.y)) {
      const double xint = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (p.x < xint) inside = !inside;
    }
  }
  return inside;
}

struct SegmentHit {
  double dist = std::numeric_limits<double>::infinity();
  Point2 closest;
};

inline SegmentHit closest_on_segment(Point2 a, Point2 b, Point2 p) {
  const Point2 e = b - a;
  const double len2 = dot(e, e);
  double t = len2 > 0.0 ? dot(p - a, e) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const Point2 c = a + t * e;
  return {distance(p, c), c};
}

} // namespace geom_detail

enum class DomainKind { polygon, disc, ellipse };

/// A bounded planar domain: simple CCW polygon, disc or axis-aligned ellipse.
class PlanarDomain {
public:
  static PlanarDomain polygon(std::vector<Point2> vertices) {
    geom_detail::validate_polygon(vertices);
    return PlanarDomain(Polygon{std::move(vertices)});
  }

  static PlanarDomain disc(Point2 center, double radius) {
    if (!finite(center) || !(radius > 0.0) || !std::isfinite(radius))
      throw GeometryError("disc needs finite center and radius > 0");
    return PlanarDomain(Disc{center, radius});
  }

  static PlanarDomain ellipse(Point2 center, double a, double b) {
    if (!finite(center) || !(b > 0.0) || !(a >= b) || !std::isfinite(a))
      throw GeometryError("ellipse needs a >= b > 0");
    return PlanarDomain(Ellipse{center, a, b});
  }

  DomainKind kind() const {
    if (std::holds_alternative<Polygon>(shape_)) return DomainKind::polygon;
    if (std::holds_alternative<Disc>(shape_)) return DomainKind::disc;
    return DomainKind::ellipse;
  }

  bool is_polygon() const { return kind() == DomainKind::polygon; }
  bool is_curved() const { return kind() != DomainKind::polygon; }

  const Polygon& as_polygon() const { return std::get<Polygon>(shape_); }
  const Disc& as_disc() const { return std::get<Disc>(shape_); }
  const Ellipse& as_ellipse() const { return std::get<Ellipse>(shape_); }

  double area() const {
    switch (kind()) {
    case DomainKind::polygon:
      return geom_detail::signed_area(as_polygon().vertices);
    case DomainKind::disc: {
      const double r = as_disc().radius;
      return std::numbers::pi * r * r;
    }
    case DomainKind::ellipse:
      return std::numbers::pi * as_ellipse().a * as_ellipse().b;
    }
    return 0.0;
  }

  Point2 centroid() const {
    switch (kind()) {
    case DomainKind::polygon:
      return geom_detail::polygon_centroid(as_polygon().vertices);
    case DomainKind::disc:
      return as_disc().center;
    case DomainKind::ellipse:
      return as_ellipse().center;
    }
    return {};
  }

  BoundingBox bounding_box() const {
    switch (kind()) {
    case DomainKind::polygon: {
      BoundingBox bb{std::numeric_limits<double>::infinity(),
                     -std::numeric_limits<double>::infinity(),
                     std::numeric_limits<double>::infinity(),
                     -std::numeric_limits<double>::infinity()};
      for (const Point2& p : as_polygon().vertices) {
        bb.xmin = std::min(bb.xmin, p.x);
        bb.xmax = std::max(bb.xmax, p.x);
        bb.ymin = std::min(bb.ymin, p.y);
        bb.ymax = std::max(bb.ymax, p.y);
      }
      return bb;
    }
    case DomainKind::disc: {
      const Disc& d = as_disc();
      return {d.center.x - d.radius, d.center.x + d.radius,
              d.center.y - d.radius, d.center.y + d.radius};
    }
    case DomainKind::ellipse: {
      const Ellipse& e = as_ellipse();
      return {e.center.x - e.a, e.center.x + e.a, e.center.y - e.b,
              e.center.y + e.b};
    }
    }
    return {};
  }

  /// Strict interior test (boundary points count as outside).
  bool contains(Point2 p) const {
    switch (kind()) {
    case DomainKind::polygon:
      return geom_detail::polygon_contains(as_polygon().vertices, p);
    case DomainKind::disc: {
      const Disc& d = as_disc();
      return distance(p, d.center) < d.radius;
    }
    case DomainKind::ellipse: {
      const Ellipse& e = as_ellipse();
      const double u = (p.x - e.center.x) / e.a;
      const double v = (p.y - e.center.y) / e.b;
      return u * u + v * v < 1.0;
    }
    }
    return false;
  }

private:
  explicit PlanarDomain(std::variant<Polygon, Disc, Ellipse> s)
      : shape_(std::move(s)) {}
  std::variant<Polygon, Disc, Ellipse> shape_;
};

namespace geom_detail {

inline void require_interior(const PlanarDomain& domain, Point2 p,
                             const char* who) {
  if (!finite(p))
    throw DomainMembershipError(std::string(who) + ": non-finite point");
  if (!domain.contains(p))
    throw DomainMembershipError(std::string(who) +
                                ": point is outside the domain or on its boundary");
}

// Local minima of the squared distance from p (relative to the ellipse
// center) to the boundary point (a cos t, b sin t). Coarse scan plus
// safeguarded Newton on the stationarity condition; 60 iterations,
// parameter tolerance 1e-13.
struct EllipseFoot {
  double t;
  Point2 closest; // center-relative
  double dist;
};

inline std::vector<EllipseFoot> ellipse_feet(const Ellipse& e, Point2 rel) {
  const double a = e.a, b = e.b;
  auto boundary = [&](double t) -> Point2 { return {a * std::cos(t), b * std::sin(t)}; };
  auto g = [&](double t) {
    const Point2 d = boundary(t) - rel;
    return dot(d, d);
  };
  auto f = [&](double t) { // g'(t)/2
    const double c = std::cos(t), s = std::sin(t);
    return (b * b - a * a) * s * c + a * rel.x * s - b * rel.y * c;
  };
  auto fp = [&](double t) {
    const double c = std::cos(t), s = std::sin(t);
    return (b * b - a * a) * (c * c - s * s) + a * rel.x * c + b * rel.y * s;
  };

  constexpr int kScan = 128;
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  std::array<double, kScan> gv{};
  for (int i = 0; i < kScan; ++i) gv[i] = g(i * kTwoPi / kScan);

  // Seed list: every discrete local minimum plus the angular parameter of
  // the query point.
  std::vector<std::pair<double, double>> brackets; // (lo, hi) around a min
  for (int i = 0; i < kScan; ++i) {
    const double prev = gv[(i + kScan - 1) % kScan];
    const double next = gv[(i + 1) % kScan];
    if (gv[i] <= prev && gv[i] <= next)
      brackets.emplace_back((i - 1) * kTwoPi / kScan, (i + 1) * kTwoPi / kScan);
  }
  const double tseed = std::atan2(rel.y / b, rel.x / a);
  brackets.emplace_back(tseed - kTwoPi / kScan, tseed + kTwoPi / kScan);

  std::vector<EllipseFoot> feet;
  for (auto [lo, hi] : brackets) {
    // At a minimum f goes from negative to positive; enforce a sign change
    // bracket when possible, otherwise just polish from the midpoint.
    double t = 0.5 * (lo + hi);
    double flo = f(lo), fhi = f(hi);
    const bool bracketed = flo <= 0.0 && fhi >= 0.0;
    for (int it = 0; it < 60; ++it) {
      const double ft = f(t);
      if (bracketed) {
        if (ft > 0.0) hi = t; else lo = t;
      }
      const double d1 = fp(t);
      double step = d1 != 0.0 ? -ft / d1 : 0.0;
      double tn = t + step;
      if (bracketed && (tn <= lo || tn >= hi || step == 0.0))
        tn = 0.5 * (lo + hi); // bisection fallback
      if (std::abs(tn - t) < 1e-13) { t = tn; break; }
      t = tn;
    }
    const Point2 c = boundary(t);
    feet.push_back({t, c, distance(c, rel)});
  }

  // Keep genuine minima only, deduplicated by the foot position.
  std::vector<EllipseFoot> unique;
  for (const EllipseFoot& ft : feet) {
    const double eps = 1e-7 * (a + b);
    if (g(ft.t) > std::min(g(ft.t + 1e-6), g(ft.t - 1e-6)) + eps * eps) continue;
    bool dup = false;
    for (const EllipseFoot& u : unique)
      if (distance(u.closest, ft.closest) < 1e-9 * (a + b)) { dup = true; break; }
    if (!dup) unique.push_back(ft);
  }
  std::sort(unique.begin(), unique.end(), [](const EllipseFoot& l, const EllipseFoot& r) {
    auto wrap = [](double t) {
      const double two_pi = 2.0 * std::numbers::pi;
      double w = std::fmod(t, two_pi);
      return w < 0.0 ? w + two_pi : w;
    };
    return wrap(l.t) < wrap(r.t);
  });
  return unique;
}

} // namespace geom_detail

/// Euclidean distance from an interior point to the boundary, with the
/// (a.e. defined) unit gradient of the distance function.
inline DistanceEval boundary_distance(const PlanarDomain& domain, Point2 p) {
  using namespace geom_detail;
  require_interior(domain, p, "boundary_distance");

  switch (domain.kind()) {
  case DomainKind::polygon: {
    const auto& v = domain.as_polygon().vertices;
    const std::size_t n = v.size();
    std::vector<SegmentHit> hits(n);
    double dmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      hits[i] = closest_on_segment(v[i], v[(i + 1) % n], p);
      dmin = std::min(dmin, hits[i].dist);
    }
    DistanceEval out;
    out.value = dmin;
    bool have_grad = false;
    Point2 first_closest{};
    for (std::size_t i = 0; i < n; ++i) {
      if (hits[i].dist > dmin + kMedialTieTol) continue;
      if (!have_grad) {
        out.gradient = (1.0 / dmin) * (p - hits[i].closest);
        first_closest = hits[i].closest;
        have_grad = true;
      } else if (distance(hits[i].closest, first_closest) > 1e-9) {
        out.on_medial_axis = true;
      }
    }
    return out;
  }
  case DomainKind::disc: {
    const Disc& d = domain.as_disc();
    const double rc = distance(p, d.center);
    DistanceEval out;
    out.value = d.radius - rc;
    if (rc == 0.0) {
      // Center: every boundary point is nearest; keep the angle-0 feature.
      out.gradient = {-1.0, 0.0};
      out.on_medial_axis = true;
    } else {
      out.gradient = (-1.0 / rc) * (p - d.center);
    }
    return out;
  }
  case DomainKind::ellipse: {
    const Ellipse& e = domain.as_ellipse();
    const Point2 rel = p - e.center;
    const auto feet = ellipse_feet(e, rel);
    double dmin = std::numeric_limits<double>::infinity();
    for (const auto& ft : feet) dmin = std::min(dmin, ft.dist);
    DistanceEval out;
    out.value = dmin;
    bool have_grad = false;
    Point2 first_closest{};
    for (const auto& ft : feet) {
      if (ft.dist > dmin + kMedialTieTol) continue;
      if (!have_grad) {
        out.gradient = (1.0 / dmin) * (rel - ft.closest);
        first_closest = ft.closest;
        have_grad = true;
      } else if (distance(ft.closest, first_closest) > 1e-9 * (e.a + e.b)) {
        out.on_medial_axis = true;
      }
    }
    return out;
  }
  }
  return {};
}

/// Smallest |t| over both signs such that p + t*dir lies on the boundary.
inline double directional_boundary_distance(const PlanarDomain& domain,
                                            Point2 p, Point2 dir) {
  using namespace geom_detail;
  const double len = norm(dir);
  if (!(len > 0.0) || !finite(dir))
    throw ArgumentError("directional_boundary_distance: zero direction");
  require_interior(domain, p, "directional_boundary_distance");
  const Point2 d = (1.0 / len) * dir;

  switch (domain.kind()) {
  case DomainKind::polygon: {
    const auto& v = domain.as_polygon().vertices;
    const std::size_t n = v.size();
    double tpos = std::numeric_limits<double>::infinity();
    double tneg = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      const Point2 a = v[i];
      const Point2 e = v[(i + 1) % n] - a;
      const double denom = cross(e, d);
      if (denom == 0.0) continue; // parallel: endpoints show up on neighbors
      const Point2 w = p - a;
      const double s = cross(w, d) / denom;
      if (s < -1e-12 || s > 1.0 + 1e-12) continue;
      const double t = cross(w, e) / denom;
      if (t > 0.0) tpos = std::min(tpos, t);
      if (t < 0.0) tneg = std::min(tneg, -t);
    }
    const double res = std::min(tpos, tneg);
    if (!std::isfinite(res))
      throw GeometryError("directional_boundary_distance: ray missed the boundary");
    return res;
  }
  case DomainKind::disc: {
    const Disc& dc = domain.as_disc();
    const Point2 w = p - dc.center;
    const double bq = dot(w, d);
    const double cq = dot(w, w) - dc.radius * dc.radius; // < 0 inside
    const double disc = std::sqrt(bq * bq - cq);
    return std::min(disc - bq, disc + bq);
  }
  case DomainKind::ellipse: {
    const Ellipse& el = domain.as_ellipse();
    const Point2 w = p - el.center;
    const double ax = w.x / el.a, ay = w.y / el.b;
    const double dx = d.x / el.a, dy = d.y / el.b;
    const double A = dx * dx + dy * dy;
    const double B = ax * dx + ay * dy;
    const double C = ax * ax + ay * ay - 1.0; // < 0 inside
    const double disc = std::sqrt(B * B - A * C);
    return std::min((disc - B) / A, (disc + B) / A);
  }
  }
  return 0.0;
}

/// Davies mean distance: angular harmonic mean of the squared two-sided ray
/// distance, via M equispaced angles in [0, pi). Always >= boundary distance.
inline double mean_distance(const PlanarDomain& domain, Point2 p,
                            int angular_nodes) {
  if (angular_nodes < 8)
    throw ArgumentError("mean_distance: need at least 8 angular nodes");
  geom_detail::require_interior(domain, p, "mean_distance");
  double sum = 0.0;
  for (int j = 0; j < angular_nodes; ++j) {
    const double th = std::numbers::pi * j / angular_nodes;
    const double dj =
        directional_boundary_distance(domain, p, {std::cos(th), std::sin(th)});
    sum += 1.0 / (dj * dj);
  }
  return std::sqrt(static_cast<double>(angular_nodes) / sum);
}

/// True iff all consecutive-edge cross products share one sign
/// (zeros allowed for collinear vertices).
inline bool convexity_check(const Polygon& poly) {
  const auto& v = poly.vertices;
  const std::size_t n = v.size();
  bool has_pos = false, has_neg = false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 e0 = v[(i + 1) % n] - v[i];
    const Point2 e1 = v[(i + 2) % n] - v[(i + 1) % n];
    const double c = cross(e0, e1);
    if (c > 0.0) has_pos = true;
    if (c < 0.0) has_neg = true;
  }
  return !(has_pos && has_neg);
}

/// Largest semi-angle theta such that every boundary point is the apex of an
/// infinite cone of semi-angle theta contained in the complement. For a
/// polygon the minimum is attained at a vertex: half the exterior angle,
/// capped at pi/2. Convex polygons return exactly pi/2.
inline ConeAngle exterior_cone_angle(const Polygon& poly) {
  if (convexity_check(poly)) return {std::numbers::pi / 2};
  const auto& v = poly.vertices;
  const std::size_t n = v.size();
  double theta = std::numbers::pi / 2;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 e0 = v[i] - v[(i + n - 1) % n];
    const Point2 e1 = v[(i + 1) % n] - v[i];
    const double turn = std::atan2(cross(e0, e1), dot(e0, e1));
    const double half_exterior = 0.5 * (std::numbers::pi + turn);
    theta = std::min(theta, half_exterior);
  }
  if (!(theta > 0.0))
    throw GeometryError("exterior_cone_angle: degenerate reflex vertex");
  return {theta};
}

} // namespace domconst
