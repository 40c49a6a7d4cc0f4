#ifndef GEOMQ_SECTIONAL_HPP
#define GEOMQ_SECTIONAL_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "geomq/classify.hpp"
#include "geomq/curvature.hpp"
#include "geomq/metric.hpp"

namespace geomq {

/// Sectional curvature of the 2-section {x, y}:
/// mu(x,y) = R(x,y,x,y) / (g(x,x) g(y,y) - g(x,y)^2).
/// Throws DegenerateSection when the denominator is not safely positive
/// (dependent vectors).
double sectional_curvature(const Curv4& R, const MetricAtPoint& g, const Vec3& x,
                           const Vec3& y);

/// Report of the three q-section curvatures at (p, x) plus the curvature
/// equalities behind them.
struct QSectionReport {
  Point point;
  Vec3 x;
  double phi = 0.0;  // angle between x and qx

  double mu_x_qx = 0.0;
  double mu_qx_q2x = 0.0;
  double mu_q2x_x = 0.0;
  double mu_spread = 0.0;  // (max - min) / (1 + max |mu|)

  double mixed = 0.0;          // R(x, qx, x, q^2 x)
  double dopl_residual = 0.0;  // R(x,qx,x,qx) = R(x,q2x,x,q2x) = R(qx,q2x,qx,q2x)
  double dop2_residual = 0.0;  // R(x,qx,q2x,x) = R(qx,q2x,x,qx) = R(q2x,x,qx,q2x)

  double v2_residual = 0.0;  // from the precondition check
  double tol = 0.0;
  bool pass = false;
};

/// Verifies the equal-sectional-curvature property of q-sections at a V2
/// point. Throws NotInV2 when the point's V2 residual exceeds tolerance and
/// DependentVector when x fails q-independence.
QSectionReport theorem1_check(const CirculantMetric& m, const Point& p, const Vec3& x,
                              double tol = 1e-8, const ClassTolerances& class_tol = {});

/// Stage-by-stage report for the angle formula
/// mu(u,qu) = (1-2cos phi)/(1+cos phi) mu(x,qx) + 3cos phi/(1+cos phi) mu(y,qy).
struct Theorem2Report {
  Point point;
  std::array<double, 3> coeffs{};  // (alpha, beta, gamma) as given
  double phi = 0.0;
  double cos_phi = 0.0;

  Vec3 x;  // orthonormal q-base generator
  Vec3 u;  // alpha x + beta qx + gamma q^2 x

  double res_qu_expansion = 0.0;  // qu = gamma x + alpha qx + beta q^2 x
  double res_inner = 0.0;         // g(u,u), g(u,qu) coefficient formulas
  double res_coeff_sq = 0.0;      // sum (alpha^2-beta gamma)^2 = 1 - cos^2
  double res_coeff_cross = 0.0;   // cross sum = cos^2 - cos
  double res_cor = 0.0;           // multilinear expansion of R(u,qu,u,qu)
  double res_mu_r = 0.0;          // mu(u,qu) = mu(x,qx) + 2c/(1+c) R(x,qx,x,q2x)
  double res_mu_r2 = 0.0;         // the two-term angle formula

  double mu_u = 0.0;
  double mu_x = 0.0;
  double mu_y = 0.0;
  double mixed = 0.0;  // R(x, qx, x, q^2 x)

  double v2_residual = 0.0;
  double tol = 0.0;
  bool pass = false;

  // The expansion of R(u,qu,u,qu) uses R(x,qx,q2x,x); the angle formula
  // uses R(x,qx,x,q2x) = -R(x,qx,q2x,x) (one last-pair swap).
  const char* sign_note = "R(x,qx,x,q2x) = -R(x,qx,q2x,x)";
};

/// Runs every derivation stage of the angle formula at (p, coeffs).
/// Throws NotInV2, DependentVector, or DegenerateAngle (1 + cos phi below
/// 1e-9, the 2*pi/3 boundary).
Theorem2Report theorem2_check(const CirculantMetric& m, const Point& p,
                              const std::array<double, 3>& coeffs, double tol = 1e-6,
                              const ClassTolerances& class_tol = {},
                              std::uint64_t qbase_seed = 0x9e3779b9u);

/// Normalized q-base coefficient triple (alpha, beta, gamma) with
/// alpha beta + beta gamma + gamma alpha = c; theta parametrizes the circle
/// of solutions. Valid for c in (-1/2, 1).
std::array<double, 3> q_base_coeffs_for_cos(double c, double theta);

struct MonotonicityRow {
  double phi = 0.0;
  double mu = 0.0;
};

struct MonotonicityReport {
  std::vector<MonotonicityRow> rows;  // sorted by phi
  std::vector<double> bin_phi;        // mean phi of non-empty bins
  std::vector<double> bin_mu;         // mean mu of non-empty bins
  int requested_bins = 50;

  double equal_angle_max_dev = 0.0;  // same-angle pairs, scaled deviation
  bool equal_angle_ok = false;

  bool monotone = false;
  int direction = 0;    // +1 increasing with phi, -1 decreasing, 0 constant
  double mixed = 0.0;   // R(x,qx,x,q^2x); its sign sets the direction
  double tol = 0.0;
};

/// Samples u over the coefficient sphere of an orthonormal q-base, records
/// (phi, mu(u,qu)), checks equal angle => equal curvature and binned
/// monotonicity. Throws NotInV2 outside V2.
MonotonicityReport monotonicity_scan(const CirculantMetric& m, const Point& p,
                                     int samples = 500, std::uint64_t seed = 1,
                                     double tol = 1e-6,
                                     const ClassTolerances& class_tol = {});

}  // namespace geomq

#endif  // GEOMQ_SECTIONAL_HPP
