#ifndef GEOMQ_METRIC_HPP
#define GEOMQ_METRIC_HPP

#include <cstdint>
#include <vector>

#include "geomq/expr.hpp"
#include "geomq/types.hpp"

namespace geomq {

/// Metric data evaluated at one point: a = A(p), b = B(p) and the
/// determinant factor d = (a-b)(a+2b) of the inverse.
struct MetricAtPoint {
  double a = 0.0;
  double b = 0.0;
  double d = 0.0;

  /// Circulant matrix with diagonal a, off-diagonal b.
  Mat3 matrix() const;
  /// Closed-form inverse (1/d) * circulant(a+b, -b, -b).
  Mat3 inverse() const;
};

/// A 3-dimensional manifold of the circulant class: g has diagonal A and
/// off-diagonal B, both smooth scalar fields with A > B > 0 on the domain.
/// First and second partials of A and B are differentiated once at
/// construction and cached.
class CirculantMetric {
 public:
  CirculantMetric(Expr A, Expr B, std::vector<Expr> domain_constraints = {});

  const Expr& A() const { return A_; }
  const Expr& B() const { return B_; }
  const std::vector<Expr>& constraints() const { return constraints_; }

  /// Cached exact partials; axes are 1-based.
  const Expr& dA(int i) const { return dA_[i - 1]; }
  const Expr& dB(int i) const { return dB_[i - 1]; }
  const Expr& d2A(int i, int j) const { return d2A_[i - 1][j - 1]; }
  const Expr& d2B(int i, int j) const { return d2B_[i - 1][j - 1]; }

  /// True iff every constraint expression exceeds `margin` and A > B > 0.
  bool in_domain(const Point& p, double margin = 0.0) const;

  /// Throws DomainViolation naming the failed condition.
  void require_in_domain(const Point& p) const;

  /// metric_at: evaluates (a, b, d); throws DomainViolation outside the
  /// domain (constraint failed, or a <= b, or b <= 0).
  MetricAtPoint at(const Point& p) const;

 private:
  Expr A_;
  Expr B_;
  std::vector<Expr> constraints_;
  Expr dA_[3];
  Expr dB_[3];
  Expr d2A_[3][3];
  Expr d2B_[3][3];
};

/// The affinor q of the class: qx = (x3, x1, x2); q e1 = e2, q e2 = e3,
/// q e3 = e1, and q^3 = identity exactly.
Vec3 apply_q(const Vec3& x);

/// Image of the 1-based basis index under q (1->2->3->1).
int q_basis_image(int i);

/// Matrix of q as integers (row = input index, column = output index).
extern const int kAffinorMatrix[3][3];

/// Inner product g(u, v) = a * sum u^i v^i + b * sum_{i != j} u^i v^j.
double inner(const MetricAtPoint& g, const Vec3& u, const Vec3& v);

/// lema-style independence of {x, qx, q^2 x}:
/// true iff 3 x1 x2 x3 != x1^3 + x2^3 + x3^3 up to relative tolerance.
bool q_independent(const Vec3& x, double rel_tol = 1e-12);

struct QAngle {
  double phi = 0.0;      // angle between x and qx, radians
  double cos_phi = 0.0;  // g(x,qx)/g(x,x)
  bool within_range = false;  // phi in the open interval (0, 2*pi/3)
};

/// Angle between x and qx. Uses g(qx,qx) = g(x,x), so
/// cos(phi) = g(x,qx)/g(x,x). Throws ZeroVector for x = 0. The returned
/// within_range flag is the empirical check that phi lies in (0, 2*pi/3);
/// callers treat false as a warning, not an error.
QAngle angle_with_q(const MetricAtPoint& g, const Vec3& x);

/// Finds x with g(x,x) = 1 and g(x,qx) = 0, so {x, qx, q^2 x} is an
/// orthonormal q-base. Damped Newton on the two constraints from random
/// starts (up to 16 retries); throws SolveFailure if none converges.
Vec3 orthonormal_q_base(const MetricAtPoint& g, std::uint64_t seed = 0x9e3779b9u);

}  // namespace geomq

#endif  // GEOMQ_METRIC_HPP
