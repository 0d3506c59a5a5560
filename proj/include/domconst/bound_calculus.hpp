// SPDX-License-Identifier: Apache-2.0
//
// Closed-form upper/lower bounds for the constants and the propagation of
// the inequality system between them to an interval fixpoint.
#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "domconst/geometry.hpp"
#include "domconst/intervals.hpp"
#include "domconst/starshape.hpp"

namespace domconst {

/// omega(alpha) of the exterior-cone estimate: arcsin(alpha)/pi in the
/// plane, (1 - sqrt(1 - alpha^2))/2 in space (alpha = 1 allowed there by
/// continuity).
inline double omega(double alpha, int dimension) {
  if (dimension != 2 && dimension != 3)
    throw ArgumentError("omega: dimension must be 2 or 3");
  const bool ok = dimension == 3 ? (alpha > 0.0 && alpha <= 1.0)
                                 : (alpha > 0.0 && alpha < 1.0);
  if (!ok) throw ArgumentError("omega: alpha out of range");
  if (dimension == 2) return std::asin(alpha) / std::numbers::pi;
  return (1.0 - std::sqrt(1.0 - alpha * alpha)) / 2.0;
}

/// Hardy upper bound 16 / (n * omega(sin(theta)/2)) for domains satisfying
/// the exterior theta-cone condition.
inline double cone_hardy_bound(double theta, int dimension) {
  if (!(theta > 0.0 && theta <= std::numbers::pi / 2))
    throw ArgumentError("cone_hardy_bound: theta must be in (0, pi/2]");
  return 16.0 / (dimension * omega(std::sin(theta) / 2.0, dimension));
}

struct StarPoincareBound {
  double tight = 0.0; // 16 (eta + sqrt(eta^2 - 1))^2
  double loose = 0.0; // 64 eta^2, always >= tight
};

inline StarPoincareBound star_poincare_bound(double eta) {
  if (!(eta >= 1.0) || !std::isfinite(eta))
    throw ArgumentError("star_poincare_bound: eta must be >= 1");
  const double s = eta + std::sqrt(eta * eta - 1.0);
  return {16.0 * s * s, 64.0 * eta * eta};
}

enum class AvkhadievMode {
  as_printed, // Gamma(1/4)^(1/4), as the bound is printed
  corrected   // Gamma(1/4)^4, consistent with the surrounding remarks
};

/// Two-sided Hardy bounds from the maximal modulus M0 of boundary-centered
/// annuli separating the domain: [M0, 4 (pi M0 + Gamma(1/4)^e / (4 pi^2))^2].
inline Interval avkhadiev_hardy_bounds(double m0, AvkhadievMode mode) {
  if (!(m0 >= 0.0) || !std::isfinite(m0))
    throw ArgumentError("avkhadiev_hardy_bounds: M0 must be >= 0");
  const double g = std::tgamma(0.25);
  const double ge = mode == AvkhadievMode::corrected ? g * g * g * g
                                                     : std::pow(g, 0.25);
  const double t = std::numbers::pi * m0 +
                   ge / (4.0 * std::numbers::pi * std::numbers::pi);
  return {m0, 4.0 * t * t};
}

/// Geometric predicates and parameters feeding the propagation rules.
/// The `user` flags mark values that came from a user override rather than
/// from geometry; rules fed by them carry a "[user]" marker in the trace.
struct DomainFacts {
  int dimension = 2;
  bool convex = false;
  bool convex_polygon = false;
  bool simply_connected = false;
  std::optional<double> star_eccentricity; // eta >= 1
  std::optional<double> cone_angle;        // theta in (0, pi/2]
  std::optional<double> modulus_m0;        // M0 >= 0
  std::optional<double> capacity_ratio;    // c > 0

  struct UserFlags {
    bool convex = false, simply_connected = false, eta = false, theta = false,
         m0 = false, capacity_ratio = false;
  } user;
};

inline void validate_facts(const DomainFacts& f) {
  if (f.dimension != 2 && f.dimension != 3)
    throw ArgumentError("facts: dimension must be 2 or 3");
  if (f.convex_polygon && !f.convex)
    throw ArgumentError("facts: convex_polygon requires convex");
  if (f.star_eccentricity && !(*f.star_eccentricity >= 1.0))
    throw ArgumentError("facts: eta must be >= 1");
  if (f.cone_angle &&
      !(*f.cone_angle > 0.0 && *f.cone_angle <= std::numbers::pi / 2))
    throw ArgumentError("facts: theta must be in (0, pi/2]");
  if (f.modulus_m0 && !(*f.modulus_m0 >= 0.0))
    throw ArgumentError("facts: M0 must be >= 0");
  if (f.capacity_ratio && !(*f.capacity_ratio > 0.0))
    throw ArgumentError("facts: capacity ratio must be > 0");
}

struct TraceStep {
  std::string rule;
  ConstantId constant;
  Interval before;
  Interval after;
};

using PropagationTrace = std::vector<TraceStep>;

struct PropagationResult {
  ConstantSet set;
  PropagationTrace trace;
};

struct PropagationOptions {
  bool use_cited_star_gamma_bound = true;
  AvkhadievMode avkhadiev_mode = AvkhadievMode::corrected;
};

namespace prop_detail {

constexpr double kChangeThreshold = 1e-12;
constexpr double kContradictionTol = 1e-9;

struct Narrower {
  ConstantSet* set;
  PropagationTrace* trace;
  bool changed = false;

  // exact = identity rules, applied without the change threshold so the
  // algebraic identities hold bit-exactly at the fixpoint.
  void lower(ConstantId id, double cand, const std::string& rule, bool exact) {
    if (std::isnan(cand) || std::isinf(cand)) return;
    Interval& iv = get(*set, id);
    if (!(cand > iv.lo)) return;
    if (!exact && cand - iv.lo <= kChangeThreshold) return;
    if (cand > iv.hi + kContradictionTol)
      throw ContradictionError("rule '" + rule + "' forces " +
                                   std::string(to_string(id)) + ".lo = " +
                                   std::to_string(cand) + " above hi = " +
                                   std::to_string(iv.hi),
                               rule, to_string(id));
    const Interval before = iv;
    iv.lo = std::min(cand, iv.hi);
    trace->push_back({rule, id, before, iv});
    changed = true;
  }

  void upper(ConstantId id, double cand, const std::string& rule, bool exact) {
    if (std::isnan(cand)) return;
    Interval& iv = get(*set, id);
    if (!(cand < iv.hi)) return;
    if (!exact && iv.hi - cand <= kChangeThreshold) return;
    if (cand < iv.lo - kContradictionTol)
      throw ContradictionError("rule '" + rule + "' forces " +
                                   std::string(to_string(id)) + ".hi = " +
                                   std::to_string(cand) + " below lo = " +
                                   std::to_string(iv.lo),
                               rule, to_string(id));
    const Interval before = iv;
    iv.hi = std::max(cand, iv.lo);
    trace->push_back({rule, id, before, iv});
    changed = true;
  }
};

struct Rule {
  std::string name;
  std::function<void(Narrower&)> apply;
};

inline std::string mark(const std::string& base, bool user) {
  return user ? base + " [user]" : base;
}

// The identity C = 1 + Gamma in both directions, for one (C, Gamma) pair.
inline void apply_identity(Narrower& nw, ConstantId c, ConstantId g,
                           const std::string& rule) {
  const Interval gi = get(*nw.set, g);
  nw.lower(c, 1.0 + gi.lo, rule, true);
  nw.upper(c, 1.0 + gi.hi, rule, true);
  const Interval ci = get(*nw.set, c);
  nw.lower(g, ci.lo - 1.0, rule, true);
  if (ci.bounded()) nw.upper(g, ci.hi - 1.0, rule, true);
}

// Gamma <= 4 P in both directions, for one (Gamma, P) pair.
inline void apply_quarter(Narrower& nw, ConstantId g, ConstantId p,
                          const std::string& rule) {
  const Interval pi = get(*nw.set, p);
  if (pi.bounded()) nw.upper(g, 4.0 * pi.hi, rule, false);
  nw.lower(p, get(*nw.set, g).lo / 4.0, rule, false);
}

// P <= H (1 + Gamma) forward plus the two algebraic inversions.
inline void apply_hardy_product(Narrower& nw, ConstantId p, ConstantId h,
                                ConstantId g, const std::string& rule) {
  const Interval hi = get(*nw.set, h);
  const Interval gi = get(*nw.set, g);
  if (hi.bounded() && gi.bounded())
    nw.upper(p, hi.hi * (1.0 + gi.hi), rule, false);
  const Interval pi = get(*nw.set, p);
  if (gi.bounded() && 1.0 + gi.hi > 0.0)
    nw.lower(h, pi.lo / (1.0 + gi.hi), rule, false);
  if (hi.bounded() && hi.hi > 0.0)
    nw.lower(g, pi.lo / hi.hi - 1.0, rule, false);
}

// Equality of two constants (the planar gamma/gamma_rot identification),
// applied exactly so both intervals coincide bit-wise at the fixpoint.
inline void apply_equal(Narrower& nw, ConstantId a, ConstantId b,
                        const std::string& rule) {
  const Interval ai = get(*nw.set, a);
  nw.lower(b, ai.lo, rule, true);
  if (ai.bounded()) nw.upper(b, ai.hi, rule, true);
  const Interval bi = get(*nw.set, b);
  nw.lower(a, bi.lo, rule, true);
  if (bi.bounded()) nw.upper(a, bi.hi, rule, true);
}

inline std::vector<Rule> build_rules(const DomainFacts& facts,
                                     const PropagationOptions& options) {
  std::vector<Rule> rules;
  rules.push_back({"c_div = 1 + gamma", [](Narrower& nw) {
                     apply_identity(nw, ConstantId::c_div, ConstantId::gamma,
                                    "c_div = 1 + gamma");
                   }});
  rules.push_back({"c_rot = 1 + gamma_rot", [](Narrower& nw) {
                     apply_identity(nw, ConstantId::c_rot, ConstantId::gamma_rot,
                                    "c_rot = 1 + gamma_rot");
                   }});
  rules.push_back({"gamma <= 4 poincare", [](Narrower& nw) {
                     apply_quarter(nw, ConstantId::gamma, ConstantId::poincare,
                                   "gamma <= 4 poincare");
                   }});
  rules.push_back(
      {"gamma_rot <= 4 poincare_rot", [](Narrower& nw) {
         apply_quarter(nw, ConstantId::gamma_rot, ConstantId::poincare_rot,
                       "gamma_rot <= 4 poincare_rot");
       }});
  rules.push_back({"poincare <= hardy (1 + gamma)", [](Narrower& nw) {
                     apply_hardy_product(nw, ConstantId::poincare,
                                         ConstantId::hardy, ConstantId::gamma,
                                         "poincare <= hardy (1 + gamma)");
                   }});
  rules.push_back(
      {"poincare_rot <= hardy (1 + gamma_rot)", [](Narrower& nw) {
         apply_hardy_product(nw, ConstantId::poincare_rot, ConstantId::hardy,
                             ConstantId::gamma_rot,
                             "poincare_rot <= hardy (1 + gamma_rot)");
       }});

  if (facts.convex_polygon) {
    rules.push_back({"convex polygon: gamma <= poincare", [](Narrower& nw) {
                       const Interval pi = get(*nw.set, ConstantId::poincare);
                       if (pi.bounded())
                         nw.upper(ConstantId::gamma, pi.hi,
                                  "convex polygon: gamma <= poincare", false);
                       nw.lower(ConstantId::poincare,
                                get(*nw.set, ConstantId::gamma).lo,
                                "convex polygon: gamma <= poincare", false);
                     }});
  }
  if (facts.convex) {
    const std::string name = mark("convex: hardy = 4", facts.user.convex);
    rules.push_back({name, [name](Narrower& nw) {
                       nw.lower(ConstantId::hardy, 4.0, name, false);
                       nw.upper(ConstantId::hardy, 4.0, name, false);
                     }});
  }
  if (facts.simply_connected && facts.dimension == 2) {
    const std::string name =
        mark("simply connected planar: hardy <= 16", facts.user.simply_connected);
    rules.push_back({name, [name](Narrower& nw) {
                       nw.upper(ConstantId::hardy, 16.0, name, false);
                     }});
  }
  if (facts.dimension == 2) {
    rules.push_back({"planar: gamma_rot = gamma", [](Narrower& nw) {
                       apply_equal(nw, ConstantId::gamma, ConstantId::gamma_rot,
                                   "planar: gamma_rot = gamma");
                     }});
    rules.push_back(
        {"planar: poincare_rot = poincare", [](Narrower& nw) {
           apply_equal(nw, ConstantId::poincare, ConstantId::poincare_rot,
                       "planar: poincare_rot = poincare");
         }});
  }
  if (facts.star_eccentricity && facts.dimension == 2) {
    const double eta = *facts.star_eccentricity;
    const StarPoincareBound sb = star_poincare_bound(eta);
    {
      const std::string name = mark(
          "star-shaped: poincare <= 16 (eta + sqrt(eta^2-1))^2", facts.user.eta);
      rules.push_back({name, [name, sb](Narrower& nw) {
                         nw.upper(ConstantId::poincare, sb.tight, name, false);
                       }});
    }
    if (options.use_cited_star_gamma_bound) {
      const double ghi = sb.tight / 16.0;
      const std::string name = mark(
          "star-shaped: gamma <= (eta + sqrt(eta^2-1))^2", facts.user.eta);
      rules.push_back({name, [name, ghi](Narrower& nw) {
                         nw.upper(ConstantId::gamma, ghi, name, false);
                       }});
    }
  }
  if (facts.cone_angle) {
    const double bound = cone_hardy_bound(*facts.cone_angle, facts.dimension);
    const std::string name =
        mark("exterior cone: hardy <= 16/(n omega(sin theta / 2))", facts.user.theta);
    rules.push_back({name, [name, bound](Narrower& nw) {
                       nw.upper(ConstantId::hardy, bound, name, false);
                     }});
  }
  if (facts.modulus_m0) {
    const Interval av =
        avkhadiev_hardy_bounds(*facts.modulus_m0, options.avkhadiev_mode);
    const std::string name = mark("annulus modulus: hardy bounds", facts.user.m0);
    rules.push_back({name, [name, av](Narrower& nw) {
                       nw.lower(ConstantId::hardy, av.lo, name, false);
                       nw.upper(ConstantId::hardy, av.hi, name, false);
                     }});
  }
  if (facts.capacity_ratio) {
    const double c = *facts.capacity_ratio;
    const std::string name =
        mark("capacity ratio: c <= hardy <= 16 c", facts.user.capacity_ratio);
    rules.push_back({name, [name, c](Narrower& nw) {
                       nw.lower(ConstantId::hardy, c, name, false);
                       nw.upper(ConstantId::hardy, 16.0 * c, name, false);
                     }});
  }
  return rules;
}

} // namespace prop_detail

/// Applies the rule set to a fixpoint in the given rule order.
/// Throws ContradictionError when a rule empties an interval by more
/// than 1e-9; sub-tolerance inversions are clamped to a point interval.
inline PropagationResult propagate_ordered(const DomainFacts& facts,
                                           const ConstantSet& seed,
                                           const PropagationOptions& options,
                                           const std::vector<std::size_t>& order) {
  validate_facts(facts);
  for (int i = 0; i < kConstantCount; ++i)
    validate_interval(get(seed, static_cast<ConstantId>(i)),
                      to_string(static_cast<ConstantId>(i)));

  const std::vector<prop_detail::Rule> rules =
      prop_detail::build_rules(facts, options);
  PropagationResult result{seed, {}};
  prop_detail::Narrower nw{&result.set, &result.trace};
  constexpr std::size_t kStepCap = 10000;
  for (;;) {
    nw.changed = false;
    for (std::size_t k : order) {
      if (k < rules.size()) rules[k].apply(nw);
      if (result.trace.size() >= kStepCap) return result;
    }
    if (!nw.changed) break;
  }
  return result;
}

/// Canonical-order propagation to the fixpoint.
inline PropagationResult propagate(const DomainFacts& facts,
                                   const ConstantSet& seed,
                                   const PropagationOptions& options = {}) {
  std::vector<std::size_t> order(
      prop_detail::build_rules(facts, options).size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  return propagate_ordered(facts, seed, options, order);
}

/// Facts derived from the geometry of a planar domain: convexity, simple
/// connectivity (all v1 domains), eccentricity when star-shaped, and the
/// exterior cone semi-angle. M0 and the capacity ratio stay unset.
inline DomainFacts facts_from_geometry(const PlanarDomain& domain) {
  DomainFacts f;
  f.dimension = 2;
  f.simply_connected = true;
  switch (domain.kind()) {
  case DomainKind::polygon: {
    const Polygon& poly = domain.as_polygon();
    f.convex = convexity_check(poly);
    f.convex_polygon = f.convex;
    f.cone_angle = exterior_cone_angle(poly).theta;
    try {
      f.star_eccentricity = star_shape_analysis(poly).eccentricity;
    } catch (const StarShapeError&) {
      // not star-shaped: no eta
    }
    break;
  }
  case DomainKind::disc:
    f.convex = true;
    f.star_eccentricity = 1.0;
    f.cone_angle = std::numbers::pi / 2;
    break;
  case DomainKind::ellipse: {
    const Ellipse& e = domain.as_ellipse();
    f.convex = true;
    f.star_eccentricity = e.a / e.b;
    f.cone_angle = std::numbers::pi / 2;
    break;
  }
  }
  return f;
}

} // namespace domconst
