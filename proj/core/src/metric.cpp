#include "geomq/metric.hpp"

#include <cassert>
#include <cmath>
#include <sstream>
#include <utility>

#include "geomq/errors.hpp"
#include "geomq/rng.hpp"

namespace geomq {

Mat3 MetricAtPoint::matrix() const {
  Mat3 g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = (i == j) ? a : b;
  return g;
}

Mat3 MetricAtPoint::inverse() const {
  Mat3 gi;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) gi(i, j) = ((i == j) ? (a + b) : -b) / d;
  return gi;
}

CirculantMetric::CirculantMetric(Expr A, Expr B, std::vector<Expr> domain_constraints)
    : A_(std::move(A)), B_(std::move(B)), constraints_(std::move(domain_constraints)) {
  for (int i = 1; i <= 3; ++i) {
    dA_[i - 1] = A_.diff(i);
    dB_[i - 1] = B_.diff(i);
  }
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      d2A_[i - 1][j - 1] = dA_[i - 1].diff(j);
      d2B_[i - 1][j - 1] = dB_[i - 1].diff(j);
    }
}

bool CirculantMetric::in_domain(const Point& p, double margin) const {
  if (!p.finite()) return false;
  try {
    for (const Expr& c : constraints_) {
      if (c.eval(p) <= margin) return false;
    }
    double a = A_.eval(p);
    double b = B_.eval(p);
    return a > b + margin && b > margin;
  } catch (const EvalDomainError&) {
    // a constraint or field that cannot even be evaluated fails the point
    return false;
  }
}

void CirculantMetric::require_in_domain(const Point& p) const {
  std::ostringstream where;
  where << "(" << p.x1 << ", " << p.x2 << ", " << p.x3 << ")";
  if (!p.finite()) throw DomainViolation("non-finite point " + where.str());
  for (std::size_t k = 0; k < constraints_.size(); ++k) {
    double v;
    try {
      v = constraints_[k].eval(p);
    } catch (const EvalDomainError& e) {
      throw DomainViolation("constraint #" + std::to_string(k + 1) +
                            " not evaluable at " + where.str() + ": " + e.what());
    }
    if (v <= 0.0)
      throw DomainViolation("constraint #" + std::to_string(k + 1) +
                            " violated at " + where.str());
  }
  double a, b;
  try {
    a = A_.eval(p);
    b = B_.eval(p);
  } catch (const EvalDomainError& e) {
    throw DomainViolation(std::string("metric field not evaluable at ") +
                          where.str() + ": " + e.what());
  }
  if (!(b > 0.0)) throw DomainViolation("B <= 0 at " + where.str());
  if (!(a > b)) throw DomainViolation("A <= B at " + where.str());
}

MetricAtPoint CirculantMetric::at(const Point& p) const {
  require_in_domain(p);
  MetricAtPoint m;
  m.a = A_.eval(p);
  m.b = B_.eval(p);
  m.d = (m.a - m.b) * (m.a + 2.0 * m.b);
  return m;
}

const int kAffinorMatrix[3][3] = {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};

Vec3 apply_q(const Vec3& x) { return {x[2], x[0], x[1]}; }

int q_basis_image(int i) { return i == 3 ? 1 : i + 1; }

double inner(const MetricAtPoint& g, const Vec3& u, const Vec3& v) {
  double dot = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
  double cross = (u[0] + u[1] + u[2]) * (v[0] + v[1] + v[2]) - dot;
  return g.a * dot + g.b * cross;
}

bool q_independent(const Vec3& x, double rel_tol) {
  double triple = 3.0 * x[0] * x[1] * x[2];
  double cubes = x[0] * x[0] * x[0] + x[1] * x[1] * x[1] + x[2] * x[2] * x[2];
  double scale = std::max(std::fabs(triple), std::fabs(cubes));
  return std::fabs(triple - cubes) > rel_tol * scale;
}

QAngle angle_with_q(const MetricAtPoint& g, const Vec3& x) {
  double gxx = inner(g, x, x);
  if (!(gxx > 0.0)) throw ZeroVector("angle_with_q of the zero vector");
  double gxqx = inner(g, x, apply_q(x));
#ifndef NDEBUG
  // g(qx,qx) = g(x,x) by the q-invariance of g; check the symmetric
  // normalization agrees with the one actually used.
  {
    double gq = inner(g, apply_q(x), apply_q(x));
    assert(std::fabs(gq - gxx) <= 1e-12 * std::fabs(gxx));
  }
#endif
  QAngle r;
  r.cos_phi = gxqx / gxx;
  double c = std::min(1.0, std::max(-1.0, r.cos_phi));
  r.phi = std::acos(c);
  r.within_range = r.phi > 0.0 && r.phi < 2.0 * std::acos(-1.0) / 3.0;
  return r;
}

namespace {

// Residual of the two orthonormal q-base constraints at x.
void qbase_residual(const MetricAtPoint& g, const Vec3& x, double out[2]) {
  out[0] = inner(g, x, x) - 1.0;
  out[1] = inner(g, x, apply_q(x));
}

}  // namespace

Vec3 orthonormal_q_base(const MetricAtPoint& g, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const Mat3 G = g.matrix();

  for (int attempt = 0; attempt < 16; ++attempt) {
    // Start near the right magnitude: g(x,x) ~ a |x|^2.
    Vec3 x{rng.normal(), rng.normal(), rng.normal()};
    double norm0 = std::sqrt(std::max(inner(g, x, x), 1e-30));
    x = (1.0 / norm0) * x;

    double f[2];
    qbase_residual(g, x, f);
    bool converged = false;
    for (int iter = 0; iter < 100; ++iter) {
      double fn = std::max(std::fabs(f[0]), std::fabs(f[1]));
      if (fn < 1e-13) {
        converged = true;
        break;
      }
      // Jacobian rows: d g(x,x)/dx = 2 G x;  d g(x,qx)/dx = (GQ + (GQ)^T) x.
      Vec3 gx = G.apply(x);
      Vec3 gqx = G.apply(apply_q(x));        // G Q x
      Vec3 qtgx = apply_q(apply_q(G.apply(x)));  // Q^T G x = q^2 (G x)
      double J[2][3];
      for (int c = 0; c < 3; ++c) {
        J[0][c] = 2.0 * gx[c];
        J[1][c] = gqx[c] + qtgx[c];
      }
      // Least-norm step: delta = J^T (J J^T)^{-1} (-f).
      double a11 = 0, a12 = 0, a22 = 0;
      for (int c = 0; c < 3; ++c) {
        a11 += J[0][c] * J[0][c];
        a12 += J[0][c] * J[1][c];
        a22 += J[1][c] * J[1][c];
      }
      double det = a11 * a22 - a12 * a12;
      if (std::fabs(det) < 1e-14) break;  // degenerate Jacobian; restart
      double l0 = (-f[0] * a22 + f[1] * a12) / det;
      double l1 = (-f[1] * a11 + f[0] * a12) / det;
      Vec3 delta{J[0][0] * l0 + J[1][0] * l1, J[0][1] * l0 + J[1][1] * l1,
                 J[0][2] * l0 + J[1][2] * l1};
      // Backtracking damping on the residual norm.
      double t = 1.0;
      for (;;) {
        Vec3 cand = x + t * delta;
        double fc[2];
        qbase_residual(g, cand, fc);
        double fcn = std::max(std::fabs(fc[0]), std::fabs(fc[1]));
        if (fcn < fn || t < 1e-4) {
          x = cand;
          f[0] = fc[0];
          f[1] = fc[1];
          break;
        }
        t *= 0.5;
      }
    }
    if (converged && q_independent(x)) return x;
  }
  throw SolveFailure("orthonormal q-base solve did not converge in 16 starts");
}

}  // namespace geomq
