// SPDX-License-Identifier: Apache-2.0
//
// Certified-from-below estimates of the Friedrichs-Velte, improved Poincare
// and Hardy constants: Gram matrices of the defining quadratic forms over
// explicit trial spaces, then the largest eigenvalue of the resulting
// symmetric-definite pencil.
#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "domconst/basis.hpp"
#include "domconst/geometry.hpp"
#include "domconst/linalg.hpp"
#include "domconst/quadrature.hpp"

namespace domconst {

enum class GramForm {
  l2_centered,         // (f_i - mean)(f_j - mean)
  l2_plain,            // f_i f_j
  weighted_gradient_d2, // d^2 grad f_i . grad f_j
  gradient,            // grad f_i . grad f_j
  inverse_d2           // f_i f_j / d^2 (= q_i q_j for f = d q)
};

enum class PairComponent { u, v };

enum class ConstantName { gamma, poincare, hardy };

inline const char* to_string(ConstantName c) {
  switch (c) {
  case ConstantName::gamma: return "gamma";
  case ConstantName::poincare: return "poincare";
  case ConstantName::hardy: return "hardy";
  }
  return "?";
}

/// A lower bound (up to quadrature error) for one constant, with the
/// degree-indexed history of the convergence study that produced it.
struct RayleighEstimate {
  ConstantName constant_name = ConstantName::gamma;
  double value = 0.0;
  int degree = 0;
  int quadrature_order = 0;
  std::vector<std::pair<int, double>> history; // (degree, value), nondecreasing
};

namespace est_detail {

constexpr std::size_t kAssemblyBlock = 4096;

struct NodeScratch {
  std::vector<double> val, gx, gy, qval, qgx, qgy;
};

// Fills per-basis values/gradients of the family functions at p.
// For inverse_d2 the "values" are the polynomial factors q of f = d q.
inline void eval_node(const PlanarDomain& domain, const BasisSpec& spec,
                      const BasisFrame& frame, GramForm form,
                      PairComponent component, Point2 p, bool want_values,
                      bool want_grads, NodeScratch& s, double& d_out) {
  const int dim = basis_dimension(spec);
  switch (spec.family) {
  case BasisFamily::conjugate_harmonic_pairs: {
    basis_detail::eval_pairs(spec.degree, frame, p,
                             component == PairComponent::u
                                 ? std::span<double>(s.val)
                                 : std::span<double>(s.qval),
                             component == PairComponent::u
                                 ? std::span<double>(s.qval)
                                 : std::span<double>(s.val));
    d_out = 0.0;
    return;
  }
  case BasisFamily::centered_polynomials: {
    basis_detail::eval_monomials(spec.degree, false, frame, p, s.val,
                                 want_grads ? std::span<double>(s.gx)
                                            : std::span<double>(),
                                 want_grads ? std::span<double>(s.gy)
                                            : std::span<double>());
    if (form == GramForm::weighted_gradient_d2)
      d_out = boundary_distance(domain, p).value;
    else
      d_out = 0.0;
    return;
  }
  case BasisFamily::distance_weighted_polynomials: {
    const DistanceEval de = boundary_distance(domain, p);
    d_out = de.value;
    basis_detail::eval_monomials(spec.degree, true, frame, p, s.qval,
                                 want_grads ? std::span<double>(s.qgx)
                                            : std::span<double>(),
                                 want_grads ? std::span<double>(s.qgy)
                                            : std::span<double>());
    if (form == GramForm::inverse_d2) {
      for (int i = 0; i < dim; ++i) s.val[i] = s.qval[i];
      return;
    }
    if (want_values)
      for (int i = 0; i < dim; ++i) s.val[i] = de.value * s.qval[i];
    if (want_grads) {
      for (int i = 0; i < dim; ++i) {
        s.gx[i] = s.qval[i] * de.gradient.x + de.value * s.qgx[i];
        s.gy[i] = s.qval[i] * de.gradient.y + de.value * s.qgy[i];
      }
    }
    return;
  }
  }
}

} // namespace est_detail

/// Gram matrix of the requested bilinear form over the basis family,
/// evaluated with the given quadrature rule. Summation is blocked in fixed
/// order, so repeated assemblies are bit-identical.
inline SymmetricMatrix assemble_gram(const PlanarDomain& domain,
                                     const BasisSpec& spec, GramForm form,
                                     const QuadratureRule& quad,
                                     PairComponent component = PairComponent::u) {
  validate_basis(spec);
  if (quad.declared_order < 2 * spec.degree + 2)
    throw ArgumentError("assemble_gram: quadrature order must be >= 2*degree + 2");
  if (form == GramForm::inverse_d2 &&
      spec.family != BasisFamily::distance_weighted_polynomials)
    throw FormError("inverse_d2 requires the distance_weighted family "
                    "(the integrand u^2/d^2 must stay bounded)");
  if ((form == GramForm::gradient || form == GramForm::weighted_gradient_d2) &&
      spec.family == BasisFamily::conjugate_harmonic_pairs)
    throw FormError("gradient forms are not defined for the conjugate-pair family");

  const int dim = basis_dimension(spec);
  const std::size_t nq = quad.nodes.size();
  const bool want_grads =
      form == GramForm::gradient || form == GramForm::weighted_gradient_d2;
  const bool want_values = !want_grads;

  est_detail::NodeScratch s;
  s.val.resize(dim);
  s.gx.resize(dim);
  s.gy.resize(dim);
  s.qval.resize(dim);
  s.qgx.resize(dim);
  s.qgy.resize(dim);

  const BasisFrame frame = make_frame(domain, spec);

  // Pass 1 (l2_centered only): quadrature means of the basis values.
  std::vector<double> mean(dim, 0.0);
  if (form == GramForm::l2_centered) {
    std::vector<double> acc(dim, 0.0);
    double wsum = 0.0;
    for (std::size_t start = 0; start < nq; start += est_detail::kAssemblyBlock) {
      const std::size_t stop = std::min(nq, start + est_detail::kAssemblyBlock);
      std::vector<double> blk(dim, 0.0);
      double wblk = 0.0;
      for (std::size_t q = start; q < stop; ++q) {
        double d = 0.0;
        est_detail::eval_node(domain, spec, frame, form, component,
                              quad.nodes[q], true, false, s, d);
        const double w = quad.weights[q];
        wblk += w;
        for (int i = 0; i < dim; ++i) blk[i] += w * s.val[i];
      }
      wsum += wblk;
      for (int i = 0; i < dim; ++i) acc[i] += blk[i];
    }
    for (int i = 0; i < dim; ++i) mean[i] = acc[i] / wsum;
  }
  std::vector<double> gram(static_cast<std::size_t>(dim) * dim, 0.0);
  std::vector<double> blk(static_cast<std::size_t>(dim) * dim, 0.0);
  for (std::size_t start = 0; start < nq; start += est_detail::kAssemblyBlock) {
    const std::size_t stop = std::min(nq, start + est_detail::kAssemblyBlock);
    std::fill(blk.begin(), blk.end(), 0.0);
    for (std::size_t q = start; q < stop; ++q) {
      double d = 0.0;
      est_detail::eval_node(domain, spec, frame, form, component,
                            quad.nodes[q], want_values, want_grads, s, d);
      const double w = quad.weights[q];
      if (form == GramForm::l2_centered)
        for (int i = 0; i < dim; ++i) s.val[i] -= mean[i];
      switch (form) {
      case GramForm::l2_centered:
      case GramForm::l2_plain:
      case GramForm::inverse_d2:
        for (int i = 0; i < dim; ++i) {
          const double wi = w * s.val[i];
          for (int j = i; j < dim; ++j)
            blk[static_cast<std::size_t>(i) * dim + j] += wi * s.val[j];
        }
        break;
      case GramForm::weighted_gradient_d2: {
        const double wd2 = w * d * d;
        for (int i = 0; i < dim; ++i)
          for (int j = i; j < dim; ++j)
            blk[static_cast<std::size_t>(i) * dim + j] +=
                wd2 * (s.gx[i] * s.gx[j] + s.gy[i] * s.gy[j]);
        break;
      }
      case GramForm::gradient:
        for (int i = 0; i < dim; ++i)
          for (int j = i; j < dim; ++j)
            blk[static_cast<std::size_t>(i) * dim + j] +=
                w * (s.gx[i] * s.gx[j] + s.gy[i] * s.gy[j]);
        break;
      }
    }
    for (std::size_t k = 0; k < gram.size(); ++k) gram[k] += blk[k];
  }

  SymmetricMatrix out(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j)
      out.set(i, j, gram[static_cast<std::size_t>(i) * dim + j]);
  return out;
}

namespace est_detail {

[[noreturn]] inline void rethrow_conditioning(const IllConditionedBasisError& e,
                                              ConstantName which) {
  throw IllConditionedBasisError(
      std::string(e.what()) + " while estimating " + to_string(which) +
          "; try a lower degree or re-centering the basis",
      e.pivot_index);
}

} // namespace est_detail

/// Lower bound for the Friedrichs-Velte constant: maximize the centered
/// quotient ||u - u_mean||^2 / ||v - v_mean||^2 over conjugate pairs built
/// from powers of (z - z0). Subtracting the v mean never shrinks the
/// supremum because v is determined only up to a constant.
inline RayleighEstimate friedrichs_velte_estimate(const PlanarDomain& domain,
                                                  int degree,
                                                  const QuadratureRule& quad) {
  const BasisSpec spec = make_basis(domain, BasisFamily::conjugate_harmonic_pairs, degree);
  const SymmetricMatrix a =
      assemble_gram(domain, spec, GramForm::l2_centered, quad, PairComponent::u);
  const SymmetricMatrix b =
      assemble_gram(domain, spec, GramForm::l2_centered, quad, PairComponent::v);
  try {
    const GeneralizedEigenMax ge = sym_generalized_eigen_max(a, b);
    return {ConstantName::gamma, ge.value, degree, quad.declared_order,
            {{degree, ge.value}}};
  } catch (const IllConditionedBasisError& e) {
    est_detail::rethrow_conditioning(e, ConstantName::gamma);
  }
}

/// Lower bound for the improved Poincare constant:
/// maximize ||u - u_mean||^2 / ||d grad u||^2 over polynomials without
/// constant term.
inline RayleighEstimate improved_poincare_estimate(const PlanarDomain& domain,
                                                   int degree,
                                                   const QuadratureRule& quad) {
  const BasisSpec spec = make_basis(domain, BasisFamily::centered_polynomials, degree);
  const SymmetricMatrix a = assemble_gram(domain, spec, GramForm::l2_centered, quad);
  const SymmetricMatrix b =
      assemble_gram(domain, spec, GramForm::weighted_gradient_d2, quad);
  try {
    const GeneralizedEigenMax ge = sym_generalized_eigen_max(a, b);
    return {ConstantName::poincare, ge.value, degree, quad.declared_order,
            {{degree, ge.value}}};
  } catch (const IllConditionedBasisError& e) {
    est_detail::rethrow_conditioning(e, ConstantName::poincare);
  }
}

/// Lower bound for the Hardy constant: trial functions u = d q keep the
/// integrand u^2/d^2 = q^2 bounded; grad u = q grad d + d grad q a.e.
inline RayleighEstimate hardy_estimate(const PlanarDomain& domain, int degree,
                                       const QuadratureRule& quad) {
  const BasisSpec spec =
      make_basis(domain, BasisFamily::distance_weighted_polynomials, degree);
  const SymmetricMatrix a = assemble_gram(domain, spec, GramForm::inverse_d2, quad);
  const SymmetricMatrix b = assemble_gram(domain, spec, GramForm::gradient, quad);
  try {
    const GeneralizedEigenMax ge = sym_generalized_eigen_max(a, b);
    return {ConstantName::hardy, ge.value, degree, quad.declared_order,
            {{degree, ge.value}}};
  } catch (const IllConditionedBasisError& e) {
    est_detail::rethrow_conditioning(e, ConstantName::hardy);
  }
}

struct QuadraturePolicy {
  int refinement_polygon = 2;
  int refinement_curved = 4;
  int order_override = 0;      // 0 = derive from the largest degree
  int refinement_override = -1; // -1 = per-kind default
};

/// Runs one estimator over a degree range on a single shared quadrature rule
/// (order 2*N_max + 4, which satisfies the per-degree precondition for every
/// degree in the range). Sharing the rule makes the trial spaces exactly
/// nested under identical discrete forms, so the history is nondecreasing up
/// to eigensolver roundoff.
inline RayleighEstimate convergence_study(ConstantName constant,
                                          const PlanarDomain& domain, int n_min,
                                          int n_max,
                                          const QuadraturePolicy& policy = {}) {
  const int lo = constant == ConstantName::hardy ? 0 : 1;
  if (n_min < lo || n_min > n_max || n_max > 24)
    throw ArgumentError("convergence_study: invalid degree range");
  const int order = policy.order_override > 0
                        ? std::max(policy.order_override, 2 * n_max + 2)
                        : 2 * n_max + 4;
  const int refinement =
      policy.refinement_override >= 0
          ? policy.refinement_override
          : (domain.is_curved() ? policy.refinement_curved : policy.refinement_polygon);
  const QuadratureRule rule = build_quadrature(domain, order, refinement);

  RayleighEstimate out;
  out.constant_name = constant;
  out.quadrature_order = order;
  for (int n = n_min; n <= n_max; ++n) {
    RayleighEstimate step;
    try {
      switch (constant) {
      case ConstantName::gamma:
        step = friedrichs_velte_estimate(domain, n, rule);
        break;
      case ConstantName::poincare:
        step = improved_poincare_estimate(domain, n, rule);
        break;
      case ConstantName::hardy:
        step = hardy_estimate(domain, n, rule);
        break;
      }
    } catch (const IllConditionedBasisError& e) {
      if (out.history.empty()) throw;
      throw IllConditionedBasisError(std::string(e.what()) +
                                         "; last successful degree " +
                                         std::to_string(out.degree),
                                     e.pivot_index);
    }
    out.history.emplace_back(n, step.value);
    if (step.value >= out.value || out.history.size() == 1) {
      out.value = step.value;
      out.degree = n;
    }
  }
  return out;
}

} // namespace domconst
