// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "domconst/errors.hpp"

namespace domconst {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Closed interval [lo, hi] with finite lo >= 0; hi may be +infinity.
struct Interval {
  double lo = 0.0;
  double hi = kInf;

  bool valid() const {
    return std::isfinite(lo) && lo >= 0.0 && lo <= hi && !std::isnan(hi);
  }
  bool bounded() const { return std::isfinite(hi); }
  bool contains(double x) const { return lo <= x && x <= hi; }

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
};

inline void validate_interval(const Interval& iv, const char* name) {
  if (!iv.valid())
    throw ArgumentError(std::string("invalid interval for ") + name);
}

/// The seven constants of one domain.
struct ConstantSet {
  Interval gamma;        // Friedrichs-Velte, divergence form
  Interval c_div;        // Babuska-Aziz for the divergence = 1 + gamma
  Interval poincare;     // improved Poincare for the gradient
  Interval hardy;        // Hardy with boundary-distance weight
  Interval gamma_rot;    // Friedrichs-Velte, rotation form
  Interval c_rot;        // Babuska-Aziz for the rotation = 1 + gamma_rot
  Interval poincare_rot; // improved Poincare for the rotation

  friend bool operator==(const ConstantSet& a, const ConstantSet& b) {
    return a.gamma == b.gamma && a.c_div == b.c_div && a.poincare == b.poincare &&
           a.hardy == b.hardy && a.gamma_rot == b.gamma_rot &&
           a.c_rot == b.c_rot && a.poincare_rot == b.poincare_rot;
  }
};

enum class ConstantId {
  gamma,
  c_div,
  poincare,
  hardy,
  gamma_rot,
  c_rot,
  poincare_rot
};

constexpr int kConstantCount = 7;

inline const char* to_string(ConstantId id) {
  switch (id) {
  case ConstantId::gamma: return "gamma";
  case ConstantId::c_div: return "c_div";
  case ConstantId::poincare: return "poincare";
  case ConstantId::hardy: return "hardy";
  case ConstantId::gamma_rot: return "gamma_rot";
  case ConstantId::c_rot: return "c_rot";
  case ConstantId::poincare_rot: return "poincare_rot";
  }
  return "?";
}

inline Interval& get(ConstantSet& s, ConstantId id) {
  switch (id) {
  case ConstantId::gamma: return s.gamma;
  case ConstantId::c_div: return s.c_div;
  case ConstantId::poincare: return s.poincare;
  case ConstantId::hardy: return s.hardy;
  case ConstantId::gamma_rot: return s.gamma_rot;
  case ConstantId::c_rot: return s.c_rot;
  case ConstantId::poincare_rot: return s.poincare_rot;
  }
  return s.gamma;
}

inline const Interval& get(const ConstantSet& s, ConstantId id) {
  return get(const_cast<ConstantSet&>(s), id);
}

} // namespace domconst
