#ifndef GEOMQ_ERRORS_HPP
#define GEOMQ_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace geomq {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Expression text failed to parse; `position` is the 0-based offset into
/// the input at which the problem was detected.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Division by zero, log of a non-positive value, or a non-finite result
/// while evaluating an expression.
class EvalDomainError : public Error {
 public:
  using Error::Error;
};

/// A point violates the manifold's domain constraints (including A > B > 0).
class DomainViolation : public Error {
 public:
  using Error::Error;
};

/// Angle requested for the zero tangent vector.
class ZeroVector : public Error {
 public:
  using Error::Error;
};

/// The orthonormal q-base solve did not converge. Should not happen for a
/// valid metric; treated as a bug signal.
class SolveFailure : public Error {
 public:
  using Error::Error;
};

/// Sectional curvature of a (near-)degenerate 2-section.
class DegenerateSection : public Error {
 public:
  using Error::Error;
};

/// Theorem check requested at a point whose V2 residual exceeds tolerance.
class NotInV2 : public Error {
 public:
  using Error::Error;
};

/// Vector fails the q-independence criterion.
class DependentVector : public Error {
 public:
  using Error::Error;
};

/// 1 + cos(phi) too close to zero (phi at the 2*pi/3 boundary).
class DegenerateAngle : public Error {
 public:
  using Error::Error;
};

/// Region sampler produced no point satisfying the domain constraints.
class EmptySample : public Error {
 public:
  using Error::Error;
};

}  // namespace geomq

#endif  // GEOMQ_ERRORS_HPP
