// SPDX-License-Identifier: Apache-2.0
//
// Trial-space bases for the Rayleigh quotient estimators. All families are
// centered and rescaled before assembly; the conjugate-harmonic family uses
// one uniform scale so the Cauchy-Riemann pairing survives the rescaling.
#pragma once

#include <complex>
#include <span>
#include <vector>

#include "domconst/geometry.hpp"

namespace domconst {

enum class BasisFamily {
  conjugate_harmonic_pairs,     // (u, v) components of (z - z0)^k and i(z - z0)^k
  centered_polynomials,         // x^i y^j, 1 <= i+j <= N
  distance_weighted_polynomials // d * x^i y^j, 0 <= i+j <= N
};

struct BasisSpec {
  BasisFamily family = BasisFamily::centered_polynomials;
  int degree = 1;
  Point2 center{};
};

inline void validate_basis(const BasisSpec& spec) {
  const int lo = spec.family == BasisFamily::distance_weighted_polynomials ? 0 : 1;
  if (spec.degree < lo || spec.degree > 24)
    throw ArgumentError("basis degree out of range [" + std::to_string(lo) + ", 24]");
  if (!finite(spec.center)) throw ArgumentError("basis center must be finite");
}

inline int basis_dimension(const BasisSpec& spec) {
  const int n = spec.degree;
  switch (spec.family) {
  case BasisFamily::conjugate_harmonic_pairs:
    return 2 * n;
  case BasisFamily::centered_polynomials:
    return n * (n + 3) / 2;
  case BasisFamily::distance_weighted_polynomials:
    return (n + 1) * (n + 2) / 2;
  }
  return 0;
}

/// Basis spec centered at the domain centroid.
inline BasisSpec make_basis(const PlanarDomain& domain, BasisFamily family,
                            int degree) {
  BasisSpec spec{family, degree, domain.centroid()};
  validate_basis(spec);
  return spec;
}

/// Affine normalization frame: coordinates are shifted to the basis center
/// and scaled per coordinate to unit bounding half-width (uniformly for the
/// conjugate-harmonic family). The normalization changes conditioning only,
/// not the spanned trial space.
struct BasisFrame {
  Point2 center{};
  double sx = 1.0, sy = 1.0;
  double uniform = 1.0;
};

inline BasisFrame make_frame(const PlanarDomain& domain, const BasisSpec& spec) {
  const BoundingBox bb = domain.bounding_box();
  BasisFrame f;
  f.center = spec.center;
  f.sx = std::max(bb.xmax - f.center.x, f.center.x - bb.xmin);
  f.sy = std::max(bb.ymax - f.center.y, f.center.y - bb.ymin);
  if (!(f.sx > 0.0)) f.sx = 1.0;
  if (!(f.sy > 0.0)) f.sy = 1.0;
  f.uniform = std::max(f.sx, f.sy);
  return f;
}

namespace basis_detail {

/// u and v component values of the conjugate-harmonic pair family at p:
/// pair 2(k-1) comes from w^k, pair 2k-1 from i*w^k, w the rescaled point.
inline void eval_pairs(int degree, const BasisFrame& f, Point2 p,
                       std::span<double> u_out, std::span<double> v_out) {
  const std::complex<double> z((p.x - f.center.x) / f.uniform,
                               (p.y - f.center.y) / f.uniform);
  std::complex<double> w = 1.0;
  for (int k = 1; k <= degree; ++k) {
    w *= z;
    const int j = 2 * (k - 1);
    u_out[j] = w.real();
    v_out[j] = w.imag();
    u_out[j + 1] = -w.imag();
    v_out[j + 1] = w.real();
  }
}

/// Monomials x^i y^j ordered by total degree (i descending within a degree),
/// with values and, when requested, gradients in unscaled coordinates.
/// include_constant selects whether total degree 0 is part of the basis.
inline void eval_monomials(int degree, bool include_constant,
                           const BasisFrame& f, Point2 p,
                           std::span<double> val, std::span<double> gx,
                           std::span<double> gy) {
  const double x = (p.x - f.center.x) / f.sx;
  const double y = (p.y - f.center.y) / f.sy;
  double px[26], py[26];
  px[0] = py[0] = 1.0;
  for (int i = 1; i <= degree; ++i) {
    px[i] = px[i - 1] * x;
    py[i] = py[i - 1] * y;
  }
  std::size_t idx = 0;
  const bool want_grad = !gx.empty();
  for (int tau = include_constant ? 0 : 1; tau <= degree; ++tau) {
    for (int i = tau; i >= 0; --i) {
      const int j = tau - i;
      val[idx] = px[i] * py[j];
      if (want_grad) {
        gx[idx] = i > 0 ? i * px[i - 1] * py[j] / f.sx : 0.0;
        gy[idx] = j > 0 ? j * px[i] * py[j - 1] / f.sy : 0.0;
      }
      ++idx;
    }
  }
}

} // namespace basis_detail

} // namespace domconst
