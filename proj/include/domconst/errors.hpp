// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace domconst {

/// Base class of all errors thrown by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A query point lies outside the domain or on its boundary.
class DomainMembershipError : public Error {
public:
  using Error::Error;
};

/// An argument violates a documented precondition (range, zero vector, ...).
class ArgumentError : public Error {
public:
  using Error::Error;
};

/// Invalid geometry: non-simple polygon, wrong orientation, bad radii.
class GeometryError : public Error {
public:
  using Error::Error;
};

/// The polygon has an empty kernel, i.e. it is not star-shaped.
class StarShapeError : public Error {
public:
  using Error::Error;
};

/// A bilinear form was requested for an incompatible basis family.
class FormError : public Error {
public:
  using Error::Error;
};

/// Gram matrix factorization failed or its condition estimate overflowed.
class IllConditionedBasisError : public Error {
public:
  IllConditionedBasisError(const std::string& what, int pivot)
      : Error(what), pivot_index(pivot) {}
  int pivot_index;
};

/// Interval propagation produced an empty interval.
class ContradictionError : public Error {
public:
  ContradictionError(const std::string& what, std::string rule,
                     std::string constant)
      : Error(what), rule_name(std::move(rule)),
        constant_name(std::move(constant)) {}
  std::string rule_name;
  std::string constant_name;
};

/// File could not be read, written or parsed.
class FileError : public Error {
public:
  using Error::Error;
};

} // namespace domconst
