// SPDX-License-Identifier: Apache-2.0
//
// Quadrature over planar domains. Polygons are ear-clipped (fanned when
// convex), every triangle carries a fully symmetric positive-weight rule
// built as the S3 average of the Gauss-Legendre x Gauss-Jacobi conical
// product. Discs and ellipses are meshed by mapped polar cells so the
// boundary distance stays smooth per cell.
#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "domconst/geometry.hpp"
#include "domconst/linalg.hpp"

namespace domconst {

struct QuadratureRule {
  std::vector<Point2> nodes;
  std::vector<double> weights; // all positive, sum = |domain|
  int declared_order = 0;

  double total_weight() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
  }
};

namespace quad_detail {

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Golub-Welsch: nodes are eigenvalues of the symmetric tridiagonal recurrence
// matrix, weights mu0 * (first eigenvector component)^2.
inline Rule1D golub_welsch(const std::vector<double>& diag,
                           const std::vector<double>& offdiag, double mu0) {
  const int n = static_cast<int>(diag.size());
  SymmetricMatrix j(n);
  for (int i = 0; i < n; ++i) j.set(i, i, diag[i]);
  for (int i = 0; i + 1 < n; ++i) j.set(i, i + 1, offdiag[i]);
  const EigenDecomposition ed = cyclic_jacobi(j);
  Rule1D r;
  r.nodes = ed.values;
  r.weights.resize(n);
  for (int k = 0; k < n; ++k) {
    const double v0 = ed.vectors[static_cast<std::size_t>(k)];
    r.weights[k] = mu0 * v0 * v0;
  }
  return r;
}

/// n-point Gauss-Legendre rule on [0,1]; exact for degree <= 2n-1.
inline Rule1D gauss_legendre_01(int n) {
  std::vector<double> diag(n, 0.0), off(n > 1 ? n - 1 : 0);
  for (int k = 1; k < n; ++k)
    off[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
  Rule1D r = golub_welsch(diag, off, 2.0);
  for (double& x : r.nodes) x = 0.5 * (x + 1.0);
  for (double& w : r.weights) w *= 0.5;
  return r;
}

/// n-point Gauss-Jacobi rule on [0,1] with weight (1-t); exact for
/// degree <= 2n-1 against that weight. Total weight 1/2.
inline Rule1D gauss_jacobi10_01(int n) {
  std::vector<double> diag(n), off(n > 1 ? n - 1 : 0);
  for (int k = 0; k < n; ++k)
    diag[k] = -1.0 / ((2.0 * k + 1.0) * (2.0 * k + 3.0));
  for (int k = 1; k < n; ++k)
    off[k - 1] = std::sqrt(k * (k + 1.0)) / (2.0 * k + 1.0);
  Rule1D r = golub_welsch(diag, off, 2.0);
  for (double& x : r.nodes) x = 0.5 * (x + 1.0);
  for (double& w : r.weights) w *= 0.25;
  return r;
}

struct RefTriangleRule {
  std::vector<Point2> nodes;   // reference coordinates, strictly interior
  std::vector<double> weights; // sum = 1/2 (reference area)
};

/// Symmetric rule on the reference triangle exact for total degree <= order.
inline RefTriangleRule triangle_rule(int order) {
  const int k = (order + 2) / 2; // 2k-1 >= order
  const Rule1D gl = gauss_legendre_01(k);
  const Rule1D gj = gauss_jacobi10_01(k);
  RefTriangleRule r;
  r.nodes.reserve(static_cast<std::size_t>(6) * k * k);
  r.weights.reserve(r.nodes.capacity());
  constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                               {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const double x = gl.nodes[i] * (1.0 - gj.nodes[j]);
      const double y = gj.nodes[j];
      const double w = gl.weights[i] * gj.weights[j] / 6.0;
      const double lam[3] = {1.0 - x - y, x, y};
      for (const auto& p : perms) {
        r.nodes.push_back({lam[p[1]], lam[p[2]]});
        r.weights.push_back(w);
      }
    }
  }
  return r;
}

struct Triangle {
  Point2 a, b, c;
};

inline double triangle_area(const Triangle& t) {
  return 0.5 * cross(t.b - t.a, t.c - t.a);
}

inline bool point_in_triangle_closed(Point2 p, Point2 a, Point2 b, Point2 c) {
  const double d1 = cross(b - a, p - a);
  const double d2 = cross(c - b, p - b);
  const double d3 = cross(a - c, p - c);
  return d1 >= 0.0 && d2 >= 0.0 && d3 >= 0.0;
}

/// Ear clipping of a simple CCW polygon; convex polygons are fanned.
inline std::vector<Triangle> triangulate(const Polygon& poly) {
  const auto& v = poly.vertices;
  std::vector<Triangle> tris;
  if (convexity_check(poly)) {
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
      Triangle t{v[0], v[i], v[i + 1]};
      if (triangle_area(t) > 0.0) tris.push_back(t);
    }
    return tris;
  }
  std::vector<std::size_t> idx(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) idx[i] = i;
  const double scale2 = [&] {
    double m = 0.0;
    for (const Point2& p : v) m = std::max({m, std::abs(p.x), std::abs(p.y)});
    return m * m;
  }();
  while (idx.size() > 3) {
    bool clipped = false;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      const std::size_t kp = (k + idx.size() - 1) % idx.size();
      const std::size_t kn = (k + 1) % idx.size();
      const Point2 a = v[idx[kp]], b = v[idx[k]], c = v[idx[kn]];
      const double area2 = cross(b - a, c - a);
      if (area2 < 0.0) continue; // reflex corner, not an ear
      if (area2 <= 1e-14 * scale2) {
        // Collinear vertex: dropping it leaves the polygon unchanged.
        idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(k));
        clipped = true;
        break;
      }
      bool blocked = false;
      for (std::size_t m = 0; m < idx.size(); ++m) {
        if (m == k || m == kp || m == kn) continue;
        if (point_in_triangle_closed(v[idx[m]], a, b, c)) {
          blocked = true;
          break;
        }
      }
      if (blocked) continue;
      tris.push_back({a, b, c});
      idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(k));
      clipped = true;
      break;
    }
    if (!clipped) throw GeometryError("triangulation failed: no ear found");
  }
  Triangle last{v[idx[0]], v[idx[1]], v[idx[2]]};
  if (triangle_area(last) > 0.0) tris.push_back(last);
  return tris;
}

inline void subdivide(std::vector<Triangle>& tris, int levels) {
  for (int l = 0; l < levels; ++l) {
    std::vector<Triangle> next;
    next.reserve(tris.size() * 4);
    for (const Triangle& t : tris) {
      const Point2 ab = 0.5 * (t.a + t.b);
      const Point2 bc = 0.5 * (t.b + t.c);
      const Point2 ca = 0.5 * (t.c + t.a);
      next.push_back({t.a, ab, ca});
      next.push_back({ab, t.b, bc});
      next.push_back({ca, bc, t.c});
      next.push_back({ab, bc, ca});
    }
    tris = std::move(next);
  }
}

} // namespace quad_detail

/// Quadrature rule integrating over the domain, exact for polynomials of
/// total degree <= order on polygons. `refinement` subdivides every triangle
/// (or polar cell grid) that many times.
inline QuadratureRule build_quadrature(const PlanarDomain& domain, int order,
                                       int refinement) {
  if (order < 1 || order > 52)
    throw ArgumentError("build_quadrature: order must be in [1, 52]");
  if (refinement < 0 || refinement > 10)
    throw ArgumentError("build_quadrature: refinement must be in [0, 10]");

  QuadratureRule rule;
  rule.declared_order = order;

  if (domain.is_polygon()) {
    std::vector<quad_detail::Triangle> tris =
        quad_detail::triangulate(domain.as_polygon());
    quad_detail::subdivide(tris, refinement);
    const quad_detail::RefTriangleRule ref = quad_detail::triangle_rule(order);
    rule.nodes.reserve(tris.size() * ref.nodes.size());
    rule.weights.reserve(rule.nodes.capacity());
    for (const quad_detail::Triangle& t : tris) {
      const double jac = 2.0 * quad_detail::triangle_area(t);
      for (std::size_t q = 0; q < ref.nodes.size(); ++q) {
        const Point2 r = ref.nodes[q];
        rule.nodes.push_back(t.a + r.x * (t.b - t.a) + r.y * (t.c - t.a));
        rule.weights.push_back(ref.weights[q] * jac);
      }
    }
    return rule;
  }

  // Curved domains: tensor Gauss rule per polar cell, Jacobian a*b*rho.
  Point2 center;
  double a = 0.0, b = 0.0;
  if (domain.kind() == DomainKind::disc) {
    center = domain.as_disc().center;
    a = b = domain.as_disc().radius;
  } else {
    center = domain.as_ellipse().center;
    a = domain.as_ellipse().a;
    b = domain.as_ellipse().b;
  }
  const int nr = 1 << refinement;
  const int nphi = 4 * nr;
  const int k = (order + 3) / 2; // covers the extra degree from the Jacobian
  const quad_detail::Rule1D gl = quad_detail::gauss_legendre_01(k);
  const double dr = 1.0 / nr;
  const double dphi = 2.0 * std::numbers::pi / nphi;
  rule.nodes.reserve(static_cast<std::size_t>(nr) * nphi * k * k);
  rule.weights.reserve(rule.nodes.capacity());
  for (int ir = 0; ir < nr; ++ir) {
    for (int ip = 0; ip < nphi; ++ip) {
      for (int i = 0; i < k; ++i) {
        const double rho = (ir + gl.nodes[i]) * dr;
        const double wr = gl.weights[i] * dr;
        for (int j = 0; j < k; ++j) {
          const double phi = (ip + gl.nodes[j]) * dphi;
          const double wphi = gl.weights[j] * dphi;
          rule.nodes.push_back(
              {center.x + a * rho * std::cos(phi), center.y + b * rho * std::sin(phi)});
          rule.weights.push_back(a * b * rho * wr * wphi);
        }
      }
    }
  }
  return rule;
}

} // namespace domconst
