// SPDX-License-Identifier: Apache-2.0
//
// Polygon kernel (intersection of inward edge half-planes) and the
// star-shape eccentricity eta = R/r: the smallest ratio over kernel centers
// of the circumscribed vertex radius to the inscribed kernel-disc radius.
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "domconst/geometry.hpp"

namespace domconst {

/// Star-shape parameters of a polygon: the disc B(center, inner_radius) lies
/// in the kernel, B(center, outer_radius) contains every vertex, and
/// eccentricity = outer_radius / inner_radius is (locally) minimal.
struct StarShapeData {
  Point2 center;
  double inner_radius = 0.0;
  double outer_radius = 0.0;
  double eccentricity = 1.0;
};

/// Kernel of a simple CCW polygon as a convex polygon (possibly empty),
/// computed by clipping the bounding box against every inward half-plane.
inline std::vector<Point2> polygon_kernel(const Polygon& poly) {
  const auto& v = poly.vertices;
  const BoundingBox bb = [&] {
    BoundingBox r{v[0].x, v[0].x, v[0].y, v[0].y};
    for (const Point2& p : v) {
      r.xmin = std::min(r.xmin, p.x);
      r.xmax = std::max(r.xmax, p.x);
      r.ymin = std::min(r.ymin, p.y);
      r.ymax = std::max(r.ymax, p.y);
    }
    return r;
  }();
  std::vector<Point2> cell{{bb.xmin, bb.ymin}, {bb.xmax, bb.ymin},
                           {bb.xmax, bb.ymax}, {bb.xmin, bb.ymax}};
  for (std::size_t i = 0; i < v.size() && !cell.empty(); ++i) {
    const Point2 a = v[i];
    const Point2 e = v[(i + 1) % v.size()] - a;
    // Inside (left of the CCW edge): cross(e, p - a) >= 0.
    std::vector<Point2> next;
    next.reserve(cell.size() + 1);
    for (std::size_t j = 0; j < cell.size(); ++j) {
      const Point2 p = cell[j];
      const Point2 q = cell[(j + 1) % cell.size()];
      const double sp = cross(e, p - a);
      const double sq = cross(e, q - a);
      if (sp >= 0.0) next.push_back(p);
      if ((sp > 0.0 && sq < 0.0) || (sp < 0.0 && sq > 0.0)) {
        const double t = sp / (sp - sq);
        next.push_back(p + t * (q - p));
      }
    }
    cell = std::move(next);
  }
  return cell;
}

namespace star_detail {

// Distance from an interior point of a convex polygon to its boundary:
// the minimum inward line distance over the edges (negative outside).
inline double inward_distance(const std::vector<Point2>& kernel, Point2 c) {
  double r = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    const Point2 a = kernel[i];
    const Point2 e = kernel[(i + 1) % kernel.size()] - a;
    const double len = norm(e);
    if (len == 0.0) continue;
    r = std::min(r, cross(e, c - a) / len);
  }
  return r;
}

inline double vertex_radius(const std::vector<Point2>& verts, Point2 c) {
  double r = 0.0;
  for (const Point2& p : verts) r = std::max(r, distance(p, c));
  return r;
}

} // namespace star_detail

/// Minimal eccentricity star-shape data of a polygon: grid search over the
/// kernel (pitch = kernel diameter / 200) followed by coordinate descent
/// refined to pitch 1e-9. Throws StarShapeError when the kernel is empty.
inline StarShapeData star_shape_analysis(const Polygon& poly) {
  const std::vector<Point2> kernel = polygon_kernel(poly);
  if (kernel.size() < 3 || geom_detail::signed_area(kernel) <= 0.0)
    throw StarShapeError("polygon is not star-shaped (empty kernel)");

  double diam = 0.0;
  for (std::size_t i = 0; i < kernel.size(); ++i)
    for (std::size_t j = i + 1; j < kernel.size(); ++j)
      diam = std::max(diam, distance(kernel[i], kernel[j]));
  if (!(diam > 0.0))
    throw StarShapeError("polygon kernel is degenerate");

  const auto& verts = poly.vertices;
  auto eta_at = [&](Point2 c) {
    const double r = star_detail::inward_distance(kernel, c);
    if (!(r > 0.0)) return std::numeric_limits<double>::infinity();
    return star_detail::vertex_radius(verts, c) / r;
  };

  BoundingBox bb{kernel[0].x, kernel[0].x, kernel[0].y, kernel[0].y};
  for (const Point2& p : kernel) {
    bb.xmin = std::min(bb.xmin, p.x);
    bb.xmax = std::max(bb.xmax, p.x);
    bb.ymin = std::min(bb.ymin, p.y);
    bb.ymax = std::max(bb.ymax, p.y);
  }
  const double pitch = diam / 200.0;
  Point2 best = geom_detail::polygon_centroid(kernel);
  double best_eta = eta_at(best);
  const int nx = static_cast<int>(std::floor((bb.xmax - bb.xmin) / pitch)) + 1;
  const int ny = static_cast<int>(std::floor((bb.ymax - bb.ymin) / pitch)) + 1;
  for (int iy = 0; iy <= ny; ++iy) {
    for (int ix = 0; ix <= nx; ++ix) {
      const Point2 c{bb.xmin + ix * pitch, bb.ymin + iy * pitch};
      const double e = eta_at(c);
      if (e < best_eta) {
        best_eta = e;
        best = c;
      }
    }
  }
  if (!std::isfinite(best_eta))
    throw StarShapeError("polygon kernel is degenerate");

  // Coordinate descent, halving the step until below 1e-9.
  double step = pitch;
  while (step > 1e-9) {
    bool moved = false;
    const Point2 moves[4] = {{step, 0.0}, {-step, 0.0}, {0.0, step}, {0.0, -step}};
    for (const Point2& m : moves) {
      const Point2 c = best + m;
      const double e = eta_at(c);
      if (e < best_eta) {
        best_eta = e;
        best = c;
        moved = true;
      }
    }
    if (!moved) step *= 0.5;
  }

  StarShapeData out;
  out.center = best;
  out.inner_radius = star_detail::inward_distance(kernel, best);
  out.outer_radius = star_detail::vertex_radius(verts, best);
  out.eccentricity = out.outer_radius / out.inner_radius;
  return out;
}

} // namespace domconst
