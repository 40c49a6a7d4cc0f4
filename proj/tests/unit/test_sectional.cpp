#include <doctest.h>

#include <cmath>

#include "geomq/errors.hpp"
#include "geomq/manifold_spec.hpp"
#include "geomq/sectional.hpp"
#include "test_helpers.hpp"

using namespace geomq;
using namespace geomq_test;

TEST_CASE("sectional curvature basics") {
  // flat: zero for any independent pair
  CirculantMetric flat = constant_manifold();
  Point p{1.0, 2.0, 3.0};
  MetricAtPoint g = flat.at(p);
  Curv4 R = curvature_at(flat, p).curv4;
  CHECK(sectional_curvature(R, g, Vec3{1, 0, 0}, Vec3{0, 1, 0}) == 0.0);

  // example manifold, x = e1, y = e2: mu = (-1/9)/(4 - 1/4) = -4/135
  CirculantMetric ex = paper_example_spec().build();
  Point p0{1.0, -1.0, -0.5};
  MetricAtPoint g0 = ex.at(p0);
  Curv4 R0 = curvature_at(ex, p0).curv4;
  CHECK(sectional_curvature(R0, g0, Vec3{1, 0, 0}, Vec3{0, 1, 0}) ==
        doctest::Approx(-4.0 / 135.0).epsilon(1e-12));

  // degenerate section
  CHECK_THROWS_AS(sectional_curvature(R0, g0, Vec3{1, 2, 3}, Vec3{1, 2, 3}),
                  DegenerateSection);
  CHECK_THROWS_AS(sectional_curvature(R0, g0, Vec3{1, 2, 3}, Vec3{2, 4, 6}),
                  DegenerateSection);

  // scaling invariance: mu(c x, y) = mu(x, y) and mu(c u, c qu) = mu(u, qu)
  SplitMix64 rng(161);
  for (int t = 0; t < 50; ++t) {
    Vec3 x = random_vector(rng), y = random_vector(rng);
    double c = rng.uniform(0.1, 5.0) * (rng.next_double() < 0.5 ? -1.0 : 1.0);
    double base, scaled_mu;
    try {
      base = sectional_curvature(R0, g0, x, y);
      scaled_mu = sectional_curvature(R0, g0, c * x, y);
    } catch (const DegenerateSection&) {
      continue;
    }
    CHECK(std::fabs(base - scaled_mu) <= 1e-12 * (1.0 + std::fabs(base)));
    Vec3 u = random_q_independent(rng);
    double mu_u = sectional_curvature(R0, g0, u, apply_q(u));
    double mu_cu = sectional_curvature(R0, g0, c * u, c * apply_q(u));
    CHECK(std::fabs(mu_u - mu_cu) <= 1e-12 * (1.0 + std::fabs(mu_u)));
  }
}

TEST_CASE("the example manifold is rejected by theorem checks (not V2)") {
  CirculantMetric ex = paper_example_spec().build();
  Point p{1.0, -1.0, -0.5};
  CHECK_THROWS_AS(theorem1_check(ex, p, Vec3{1, 0, 0}), NotInV2);
  CHECK_THROWS_AS(theorem2_check(ex, p, {0.6, 0.48, 0.64}), NotInV2);
  CHECK_THROWS_AS(monotonicity_scan(ex, p), NotInV2);

  // for x = e1 specifically the three q-section curvatures do coincide
  // (the diagonal components are equal); check by direct evaluation
  MetricAtPoint g = ex.at(p);
  Curv4 R = curvature_at(ex, p).curv4;
  Vec3 e1{1, 0, 0};
  double m1 = sectional_curvature(R, g, e1, apply_q(e1));
  double m2 = sectional_curvature(R, g, apply_q(e1), apply_q(apply_q(e1)));
  double m3 = sectional_curvature(R, g, apply_q(apply_q(e1)), e1);
  CHECK(m1 == doctest::Approx(-4.0 / 135.0).epsilon(1e-12));
  CHECK(m2 == doctest::Approx(m1).epsilon(1e-12));
  CHECK(m3 == doctest::Approx(m1).epsilon(1e-12));

  // ... but a generic vector separates the three sections
  Vec3 generic{1.0, 2.0, 0.0};
  double s1 = sectional_curvature(R, g, generic, apply_q(generic));
  double s2 = sectional_curvature(R, g, apply_q(generic), apply_q(apply_q(generic)));
  CHECK(std::fabs(s1 - s2) > 1e-3);
}

TEST_CASE("theorem 1 on genuine V2 manifolds") {
  CirculantMetric m = symmetric_v2_manifold();
  SplitMix64 rng(171);
  for (int t = 0; t < 100; ++t) {
    Point p = random_point_in(rng, symmetric_v2_box());
    Vec3 x = random_q_independent(rng);
    QSectionReport rep = theorem1_check(m, p, x, 1e-8);
    CHECK(rep.pass);
    CHECK(rep.mu_spread <= 1e-8);
    CHECK(rep.dopl_residual <= 1e-9);
    CHECK(rep.dop2_residual <= 1e-9);
    CHECK(rep.phi > 0.0);
    CHECK(rep.phi < 2.0 * std::acos(-1.0) / 3.0);
  }

  // flat manifold: all three curvatures are zero
  CirculantMetric flat = constant_manifold();
  QSectionReport rep = theorem1_check(flat, Point{0, 0, 0}, Vec3{1, 2, 0});
  CHECK(rep.pass);
  CHECK(rep.mu_x_qx == 0.0);
  CHECK(rep.mu_qx_q2x == 0.0);
  CHECK(rep.mu_q2x_x == 0.0);

  // dependent vector precondition
  CHECK_THROWS_AS(theorem1_check(flat, Point{0, 0, 0}, Vec3{1, 1, 1}), DependentVector);
}

TEST_CASE("V2 tensor identity: q-shift invariance on all basis tuples") {
  CirculantMetric m = symmetric_v2_manifold();
  SplitMix64 rng(181);
  for (int t = 0; t < 5; ++t) {
    Point p = random_point_in(rng, symmetric_v2_box());
    Curv4 R = curvature_at(m, p).curv4;
    double scale = 1.0 + R.max_abs();
    auto sig = [](int i) { return i == 2 ? 0 : i + 1; };
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int u = 0; u < 3; ++u) {
            double base = R(i, j, k, u);
            double once = R(sig(i), sig(j), sig(k), sig(u));
            double twice = R(sig(sig(i)), sig(sig(j)), sig(sig(k)), sig(sig(u)));
            CHECK(std::fabs(once - base) <= 1e-9 * scale);
            CHECK(std::fabs(twice - base) <= 1e-9 * scale);
            // applying q twice is the same as applying q^{-1} once: the
            // double shift equals the inverse shift exactly
            auto siginv = [](int a) { return a == 0 ? 2 : a - 1; };
            CHECK(twice == R(siginv(i), siginv(j), siginv(k), siginv(u)));
          }
  }
}

TEST_CASE("theorem 2 stages on genuine V2 manifolds") {
  CirculantMetric m = symmetric_v2_manifold();
  SplitMix64 rng(191);
  for (int t = 0; t < 60; ++t) {
    Point p = random_point_in(rng, symmetric_v2_box());
    std::array<double, 3> co{rng.normal(), rng.normal(), rng.normal()};
    double n = std::sqrt(co[0] * co[0] + co[1] * co[1] + co[2] * co[2]);
    if (n < 1e-3) continue;
    for (double& v : co) v /= n;
    double cubic = co[0] * co[0] * co[0] + co[1] * co[1] * co[1] +
                   co[2] * co[2] * co[2] - 3.0 * co[0] * co[1] * co[2];
    if (std::fabs(cubic) < 1e-3) continue;
    Theorem2Report rep = theorem2_check(m, p, co, 1e-6);
    CHECK(rep.pass);
    CHECK(rep.res_qu_expansion <= 1e-12);
    CHECK(rep.res_inner <= 1e-12);
    CHECK(rep.res_coeff_sq <= 1e-12);
    CHECK(rep.res_coeff_cross <= 1e-12);
    CHECK(rep.res_cor <= 1e-9);
    CHECK(rep.res_mu_r <= 1e-9);
    CHECK(rep.res_mu_r2 <= 1e-9);
    // scale invariance of the whole report: doubled coefficients give the
    // same mu values
    std::array<double, 3> co2{2.0 * co[0], 2.0 * co[1], 2.0 * co[2]};
    Theorem2Report rep2 = theorem2_check(m, p, co2, 1e-6);
    CHECK(rep2.mu_u == doctest::Approx(rep.mu_u).epsilon(1e-10));
    CHECK(rep2.cos_phi == doctest::Approx(rep.cos_phi).epsilon(1e-12));
  }

  // dependent coefficient triples are rejected: alpha = beta = gamma means
  // qu = u, and a zero-sum triple kills x + qx + q2x
  Point p = random_point_in(rng, symmetric_v2_box());
  CHECK_THROWS_AS(theorem2_check(m, p, {1.0, 1.0, 1.0}), DependentVector);
  CHECK_THROWS_AS(theorem2_check(m, p, {1.0, -0.5, -0.5}), DependentVector);
}

TEST_CASE("theorem 2 special angles reduce to the reference curvatures") {
  CirculantMetric m = symmetric_v2_manifold();
  SplitMix64 rng(201);
  Point p = random_point_in(rng, symmetric_v2_box());
  MetricAtPoint g = m.at(p);
  Curv4 R = curvature_at(m, p).curv4;
  Vec3 x = orthonormal_q_base(g);
  Vec3 qx = apply_q(x);
  Vec3 q2x = apply_q(qx);
  double mu_x = sectional_curvature(R, g, x, qx);
  Vec3 y = (1.0 / std::sqrt(2.0)) * (x + qx);
  double mu_y = sectional_curvature(R, g, y, apply_q(y));

  for (int t = 0; t < 25; ++t) {
    double theta = rng.uniform(0.0, 6.28318530717958647692);
    // cos phi = 0: mu(u,qu) = mu(x,qx)
    auto c0 = q_base_coeffs_for_cos(0.0, theta);
    Vec3 u0 = c0[0] * x + c0[1] * qx + c0[2] * q2x;
    CHECK(std::fabs(inner(g, u0, apply_q(u0))) <= 1e-12);
    double mu0 = sectional_curvature(R, g, u0, apply_q(u0));
    CHECK(std::fabs(mu0 - mu_x) <= 1e-8 * (1.0 + std::fabs(mu_x)));
    // cos phi = 1/2: mu(u,qu) = mu(y,qy)
    auto ch = q_base_coeffs_for_cos(0.5, theta);
    Vec3 uh = ch[0] * x + ch[1] * qx + ch[2] * q2x;
    CHECK(inner(g, uh, apply_q(uh)) == doctest::Approx(0.5).epsilon(1e-12));
    double muh = sectional_curvature(R, g, uh, apply_q(uh));
    CHECK(std::fabs(muh - mu_y) <= 1e-8 * (1.0 + std::fabs(mu_y)));
  }

  // the formula coefficients at the special angles
  auto coeff1 = [](double c) { return (1.0 - 2.0 * c) / (1.0 + c); };
  auto coeff2 = [](double c) { return 3.0 * c / (1.0 + c); };
  CHECK(coeff1(0.5) == doctest::Approx(0.0));
  CHECK(coeff2(0.5) == doctest::Approx(1.0));
  CHECK(coeff1(0.0) == doctest::Approx(1.0));
  CHECK(coeff2(0.0) == doctest::Approx(0.0));
}

TEST_CASE("coefficient identities hold for 1000 random normalized triples") {
  SplitMix64 rng(211);
  for (int t = 0; t < 1000; ++t) {
    double a = rng.normal(), b = rng.normal(), c_ = rng.normal();
    double n = std::sqrt(a * a + b * b + c_ * c_);
    if (n < 1e-9) continue;
    a /= n;
    b /= n;
    c_ /= n;
    double cosphi = a * b + b * c_ + c_ * a;
    double P = a * a - b * c_, Q = c_ * c_ - a * b, S = b * b - a * c_;
    CHECK(std::fabs(P * P + Q * Q + S * S - (1.0 - cosphi * cosphi)) <= 1e-12);
    CHECK(std::fabs(P * Q + Q * S + P * S - (cosphi * cosphi - cosphi)) <= 1e-12);
  }
}

TEST_CASE("multilinear expansion of R(u,qu,u,qu) matches direct evaluation") {
  CirculantMetric m = symmetric_v2_manifold();
  SplitMix64 rng(221);
  Point p = random_point_in(rng, symmetric_v2_box());
  MetricAtPoint g = m.at(p);
  Curv4 R = curvature_at(m, p).curv4;
  Vec3 x = orthonormal_q_base(g);
  Vec3 qx = apply_q(x);
  Vec3 q2x = apply_q(qx);
  double k1 = R.evaluate(x, qx, x, qx);
  double k2 = R.evaluate(x, qx, q2x, x);
  for (int t = 0; t < 100; ++t) {
    double a = rng.normal(), b = rng.normal(), c_ = rng.normal();
    Vec3 u = a * x + b * qx + c_ * q2x;
    double P = a * a - b * c_, Q = c_ * c_ - a * b, S = b * b - a * c_;
    double direct = R.evaluate(u, apply_q(u), u, apply_q(u));
    double expanded = (P * P + Q * Q + S * S) * k1 + 2.0 * (P * Q + Q * S + P * S) * k2;
    CHECK(std::fabs(direct - expanded) <= 1e-9 * (1.0 + std::fabs(direct)));
  }
}

TEST_CASE("monotonicity scan on a genuine V2 manifold") {
  CirculantMetric m = symmetric_v2_manifold();
  Point p{0.7, 0.9, 1.1};
  MonotonicityReport rep = monotonicity_scan(m, p, 600, 5);
  CHECK(rep.rows.size() == 600);
  CHECK(rep.equal_angle_ok);
  CHECK(rep.equal_angle_max_dev <= 1e-6);
  CHECK(rep.monotone);
  CHECK(rep.mixed != 0.0);
  CHECK(rep.direction == (rep.mixed < 0.0 ? 1 : -1));
  CHECK(rep.bin_mu.size() >= 10);

  // flat: constant zero curve, direction 0
  CirculantMetric flat = constant_manifold();
  MonotonicityReport fr = monotonicity_scan(flat, Point{0, 0, 0}, 200, 5);
  CHECK(fr.monotone);
  CHECK(fr.direction == 0);
  CHECK(fr.equal_angle_ok);
  for (const auto& row : fr.rows) CHECK(row.mu == 0.0);
}

TEST_CASE("equal angles give equal curvature across distinct generators") {
  // same phi from structurally different coefficient triples, including the
  // reflected triple (alpha, gamma, beta)
  CirculantMetric m = symmetric_v2_manifold();
  SplitMix64 rng(231);
  Point p = random_point_in(rng, symmetric_v2_box());
  MetricAtPoint g = m.at(p);
  Curv4 R = curvature_at(m, p).curv4;
  Vec3 x = orthonormal_q_base(g);
  Vec3 qx = apply_q(x);
  Vec3 q2x = apply_q(qx);
  for (int t = 0; t < 50; ++t) {
    double a = rng.normal(), b = rng.normal(), c_ = rng.normal();
    double n = std::sqrt(a * a + b * b + c_ * c_);
    if (n < 1e-3) continue;
    a /= n;
    b /= n;
    c_ /= n;
    if (std::fabs(a * a * a + b * b * b + c_ * c_ * c_ - 3 * a * b * c_) < 1e-3) continue;
    Vec3 u = a * x + b * qx + c_ * q2x;
    Vec3 w = a * x + c_ * qx + b * q2x;  // reflected: same cos phi
    double mu_u = sectional_curvature(R, g, u, apply_q(u));
    double mu_w = sectional_curvature(R, g, w, apply_q(w));
    CHECK(std::fabs(inner(g, u, apply_q(u)) - inner(g, w, apply_q(w))) <= 1e-12);
    CHECK(std::fabs(mu_u - mu_w) <= 1e-6 * (1.0 + std::fabs(mu_u)));
  }
}
