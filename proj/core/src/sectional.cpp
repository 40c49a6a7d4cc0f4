#include "geomq/sectional.hpp"

#include <algorithm>
#include <cmath>

#include "geomq/errors.hpp"
#include "geomq/rng.hpp"

namespace geomq {

double sectional_curvature(const Curv4& R, const MetricAtPoint& g, const Vec3& x,
                           const Vec3& y) {
  double gxx = inner(g, x, x);
  double gyy = inner(g, y, y);
  double gxy = inner(g, x, y);
  double den = gxx * gyy - gxy * gxy;
  if (!(den > 1e-12 * gxx * gyy))
    throw DegenerateSection("2-section {x, y} is (near-)degenerate");
  return R.evaluate(x, y, x, y) / den;
}

namespace {

double scaled(double diff, double scale) { return std::fabs(diff) / (1.0 + std::fabs(scale)); }

void require_v2(const CirculantMetric& m, const Point& p, const ClassTolerances& class_tol,
                double* v2_residual_out) {
  ClassReport cls = class_check(m, p, class_tol);
  if (v2_residual_out) *v2_residual_out = cls.v2_residual;
  if (!cls.v2)
    throw NotInV2("point is not in V2: residual " + std::to_string(cls.v2_residual) +
                  " exceeds " + std::to_string(cls.class_tol_abs));
}

}  // namespace

QSectionReport theorem1_check(const CirculantMetric& m, const Point& p, const Vec3& x,
                              double tol, const ClassTolerances& class_tol) {
  QSectionReport rep;
  rep.point = p;
  rep.x = x;
  rep.tol = tol;
  require_v2(m, p, class_tol, &rep.v2_residual);
  if (!q_independent(x))
    throw DependentVector("x, qx, q^2 x are linearly dependent");

  MetricAtPoint g = m.at(p);
  Curv4 R = curvature_at(m, p).curv4;
  Vec3 qx = apply_q(x);
  Vec3 q2x = apply_q(qx);

  rep.phi = angle_with_q(g, x).phi;
  rep.mu_x_qx = sectional_curvature(R, g, x, qx);
  rep.mu_qx_q2x = sectional_curvature(R, g, qx, q2x);
  rep.mu_q2x_x = sectional_curvature(R, g, q2x, x);

  double mu_max = std::max({rep.mu_x_qx, rep.mu_qx_q2x, rep.mu_q2x_x});
  double mu_min = std::min({rep.mu_x_qx, rep.mu_qx_q2x, rep.mu_q2x_x});
  double mu_abs = std::max({std::fabs(mu_max), std::fabs(mu_min)});
  rep.mu_spread = (mu_max - mu_min) / (1.0 + mu_abs);

  double k1 = R.evaluate(x, qx, x, qx);
  double d1 = R.evaluate(x, q2x, x, q2x);
  double d2 = R.evaluate(qx, q2x, qx, q2x);
  double kscale = std::max({std::fabs(k1), std::fabs(d1), std::fabs(d2)});
  rep.dopl_residual = std::max(scaled(k1 - d1, kscale), scaled(k1 - d2, kscale));

  double m1 = R.evaluate(x, qx, q2x, x);
  double m2 = R.evaluate(qx, q2x, x, qx);
  double m3 = R.evaluate(q2x, x, qx, q2x);
  double mscale = std::max({std::fabs(m1), std::fabs(m2), std::fabs(m3)});
  rep.dop2_residual = std::max(scaled(m1 - m2, mscale), scaled(m1 - m3, mscale));

  rep.mixed = R.evaluate(x, qx, x, q2x);
  rep.pass = rep.mu_spread <= tol && rep.dopl_residual <= tol && rep.dop2_residual <= tol;
  return rep;
}

Theorem2Report theorem2_check(const CirculantMetric& m, const Point& p,
                              const std::array<double, 3>& coeffs, double tol,
                              const ClassTolerances& class_tol, std::uint64_t qbase_seed) {
  Theorem2Report rep;
  rep.point = p;
  rep.coeffs = coeffs;
  rep.tol = tol;
  require_v2(m, p, class_tol, &rep.v2_residual);

  MetricAtPoint g = m.at(p);
  Curv4 R = curvature_at(m, p).curv4;

  rep.x = orthonormal_q_base(g, qbase_seed);
  Vec3 x = rep.x;
  Vec3 qx = apply_q(x);
  Vec3 q2x = apply_q(qx);

  const double al = coeffs[0], be = coeffs[1], ga = coeffs[2];
  Vec3 u = al * x + be * qx + ga * q2x;
  rep.u = u;
  if (!q_independent(u))
    throw DependentVector("u, qu, q^2 u are linearly dependent");

  QAngle ang = angle_with_q(g, u);
  rep.phi = ang.phi;
  rep.cos_phi = ang.cos_phi;
  if (1.0 + ang.cos_phi < 1e-9)
    throw DegenerateAngle("angle(u, qu) at the 2*pi/3 boundary");

  // (i) q permutes the q-base coefficients: qu = gamma x + alpha qx + beta q2x.
  Vec3 qu = apply_q(u);
  Vec3 qu_coef = ga * x + al * qx + be * q2x;
  rep.res_qu_expansion = (qu - qu_coef).max_abs() / (1.0 + qu.max_abs());

  // (ii) inner products in q-base coefficients.
  double nsq = al * al + be * be + ga * ga;
  double cross = al * be + be * ga + ga * al;
  rep.res_inner = std::max(scaled(inner(g, u, u) - nsq, nsq),
                           scaled(inner(g, u, qu) - cross, cross));

  // (iii) the two coefficient identities under normalization.
  double norm = std::sqrt(nsq);
  double a_ = al / norm, b_ = be / norm, g_ = ga / norm;
  double c = a_ * b_ + b_ * g_ + g_ * a_;  // cos phi
  double P = a_ * a_ - b_ * g_;
  double Q = g_ * g_ - a_ * b_;
  double S = b_ * b_ - a_ * g_;
  rep.res_coeff_sq = std::fabs(P * P + Q * Q + S * S - (1.0 - c * c));
  rep.res_coeff_cross = std::fabs(P * Q + Q * S + P * S - (c * c - c));

  // (iv) multilinear expansion of R(u,qu,u,qu); homogeneous, so raw
  // coefficients work.
  double Pr = al * al - be * ga;
  double Qr = ga * ga - al * be;
  double Sr = be * be - al * ga;
  double k1 = R.evaluate(x, qx, x, qx);
  double k2 = R.evaluate(x, qx, q2x, x);
  double cor_lhs = R.evaluate(u, qu, u, qu);
  double cor_rhs = (Pr * Pr + Qr * Qr + Sr * Sr) * k1 +
                   2.0 * (Pr * Qr + Qr * Sr + Pr * Sr) * k2;
  rep.res_cor = scaled(cor_lhs - cor_rhs, cor_lhs);

  // (v) mu(u,qu) = mu(x,qx) + 2c/(1+c) R(x,qx,x,q2x).
  rep.mixed = R.evaluate(x, qx, x, q2x);  // = -k2
  rep.mu_u = sectional_curvature(R, g, u, qu);
  rep.mu_x = sectional_curvature(R, g, x, qx);
  double mu_r_rhs = rep.mu_x + 2.0 * c / (1.0 + c) * rep.mixed;
  rep.res_mu_r = scaled(rep.mu_u - mu_r_rhs, rep.mu_u);

  // (vi) the angle formula against the pi/3 reference vector
  // y = (x + qx)/sqrt(2), cos angle(y,qy) = 1/2.
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Vec3 y = inv_sqrt2 * (x + qx);
  rep.mu_y = sectional_curvature(R, g, y, apply_q(y));
  double mu_r2_rhs =
      (1.0 - 2.0 * c) / (1.0 + c) * rep.mu_x + 3.0 * c / (1.0 + c) * rep.mu_y;
  rep.res_mu_r2 = scaled(rep.mu_u - mu_r2_rhs, rep.mu_u);

  rep.pass = rep.res_qu_expansion <= tol && rep.res_inner <= tol &&
             rep.res_coeff_sq <= tol && rep.res_coeff_cross <= tol &&
             rep.res_cor <= tol && rep.res_mu_r <= tol && rep.res_mu_r2 <= tol;
  return rep;
}

// Decompose along (1,1,1)/sqrt(3) and its orthogonal complement, where the
// cross form alpha beta + beta gamma + gamma alpha has eigenvalues 1 and
// -1/2: the sphere slice at a fixed c is a circle parametrized by theta.
std::array<double, 3> q_base_coeffs_for_cos(double c, double theta) {
  double T = std::sqrt((1.0 + 2.0 * c) / 3.0);
  double r = std::sqrt(2.0 * (1.0 - c) / 3.0);
  double p = r * std::cos(theta);
  double q = r * std::sin(theta);
  const double s3 = 1.0 / std::sqrt(3.0);
  const double s2 = 1.0 / std::sqrt(2.0);
  const double s6 = 1.0 / std::sqrt(6.0);
  return {T * s3 + p * s2 + q * s6, T * s3 - p * s2 + q * s6, T * s3 - 2.0 * q * s6};
}

MonotonicityReport monotonicity_scan(const CirculantMetric& m, const Point& p,
                                     int samples, std::uint64_t seed, double tol,
                                     const ClassTolerances& class_tol) {
  MonotonicityReport rep;
  rep.tol = tol;
  require_v2(m, p, class_tol, nullptr);

  MetricAtPoint g = m.at(p);
  Curv4 R = curvature_at(m, p).curv4;
  Vec3 x = orthonormal_q_base(g, seed);
  Vec3 qx = apply_q(x);
  Vec3 q2x = apply_q(qx);
  rep.mixed = R.evaluate(x, qx, x, q2x);

  SplitMix64 rng(seed);
  auto make_u = [&x, &qx, &q2x](const std::array<double, 3>& co) {
    return co[0] * x + co[1] * qx + co[2] * q2x;
  };

  while (static_cast<int>(rep.rows.size()) < samples) {
    std::array<double, 3> co{rng.normal(), rng.normal(), rng.normal()};
    double n = std::sqrt(co[0] * co[0] + co[1] * co[1] + co[2] * co[2]);
    if (n < 1e-6) continue;
    for (double& v : co) v /= n;
    // skip near-degenerate triples (lema-style cubic close to zero)
    double cubic = co[0] * co[0] * co[0] + co[1] * co[1] * co[1] +
                   co[2] * co[2] * co[2] - 3.0 * co[0] * co[1] * co[2];
    if (std::fabs(cubic) < 1e-4) continue;
    Vec3 u = make_u(co);
    MonotonicityRow row;
    row.phi = angle_with_q(g, u).phi;
    row.mu = sectional_curvature(R, g, u, apply_q(u));
    rep.rows.push_back(row);
  }
  std::sort(rep.rows.begin(), rep.rows.end(),
            [](const MonotonicityRow& a, const MonotonicityRow& b) { return a.phi < b.phi; });

  // equal angle => equal curvature, on explicit same-angle pairs
  rep.equal_angle_max_dev = 0.0;
  int pairs = std::max(10, samples / 10);
  for (int k = 0; k < pairs; ++k) {
    double c = rng.uniform(-0.45, 0.95);
    double th1 = rng.uniform(0.0, 6.283185307179586);
    double th2 = rng.uniform(0.0, 6.283185307179586);
    Vec3 u1 = make_u(q_base_coeffs_for_cos(c, th1));
    Vec3 u2 = make_u(q_base_coeffs_for_cos(c, th2));
    double mu1 = sectional_curvature(R, g, u1, apply_q(u1));
    double mu2 = sectional_curvature(R, g, u2, apply_q(u2));
    rep.equal_angle_max_dev =
        std::max(rep.equal_angle_max_dev, scaled(mu1 - mu2, mu1));
  }
  rep.equal_angle_ok = rep.equal_angle_max_dev <= tol;

  // binned means over the observed phi range
  double lo = rep.rows.front().phi, hi = rep.rows.back().phi;
  double width = (hi - lo) / rep.requested_bins;
  if (width <= 0.0) width = 1.0;
  std::vector<double> sum_phi(rep.requested_bins, 0.0), sum_mu(rep.requested_bins, 0.0);
  std::vector<int> count(rep.requested_bins, 0);
  for (const auto& row : rep.rows) {
    int b = std::min(rep.requested_bins - 1,
                     static_cast<int>((row.phi - lo) / width));
    sum_phi[b] += row.phi;
    sum_mu[b] += row.mu;
    count[b] += 1;
  }
  for (int b = 0; b < rep.requested_bins; ++b) {
    if (count[b] == 0) continue;
    rep.bin_phi.push_back(sum_phi[b] / count[b]);
    rep.bin_mu.push_back(sum_mu[b] / count[b]);
  }

  double mu_scale = 0.0;
  for (double v : rep.bin_mu) mu_scale = std::max(mu_scale, std::fabs(v));
  double slack = tol * (1.0 + mu_scale);
  // direction follows the sign of the mixed term: mu(phi) = mu_x + h(cos phi) * mixed
  // with h increasing in cos phi, i.e. decreasing in phi.
  rep.direction = rep.mixed < -slack ? +1 : rep.mixed > slack ? -1 : 0;
  rep.monotone = true;
  for (std::size_t i = 1; i < rep.bin_mu.size(); ++i) {
    double step = rep.bin_mu[i] - rep.bin_mu[i - 1];
    if (rep.direction >= 0 && step < -slack) rep.monotone = false;
    if (rep.direction <= 0 && step > slack) rep.monotone = false;
  }
  return rep;
}

}  // namespace geomq
