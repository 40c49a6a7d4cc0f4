#include <doctest.h>

#include <cmath>

#include "geomq/errors.hpp"
#include "geomq/manifold_spec.hpp"
#include "geomq/metric.hpp"
#include "test_helpers.hpp"

using namespace geomq;
using namespace geomq_test;

namespace {
const double kTwoPiThirds = 2.0 * std::acos(-1.0) / 3.0;
}

TEST_CASE("metric_at on the example manifold") {
  CirculantMetric m = paper_example_spec().build();
  MetricAtPoint g = m.at(Point{1.0, -1.0, -0.5});
  CHECK(g.a == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(g.b == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(g.d == doctest::Approx(4.5).epsilon(1e-15));

  Mat3 prod = g.matrix() * g.inverse();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::fabs(prod(i, j) - (i == j ? 1.0 : 0.0)) < 1e-15);
}

TEST_CASE("metric_at constants and domain violations") {
  CirculantMetric constant = constant_manifold(2.0, 1.0);
  MetricAtPoint g = constant.at(Point{5.0, -3.0, 100.0});
  CHECK(g.a == 2.0);
  CHECK(g.b == 1.0);
  CHECK(g.d == 4.0);

  CirculantMetric example = paper_example_spec().build();
  CHECK_THROWS_AS(example.at(Point{1.0, 1.0, 1.0}), DomainViolation);  // X2+X3 > 0

  // constraints pass but A <= B
  CirculantMetric swapped(cst(1.0), cst(2.0));
  CHECK_THROWS_AS(swapped.at(Point{0, 0, 0}), DomainViolation);
  CirculantMetric negative(cst(1.0), cst(-1.0));
  CHECK_THROWS_AS(negative.at(Point{0, 0, 0}), DomainViolation);

  // a constraint that cannot be evaluated fails the point instead of
  // leaking an evaluation error out of sampling
  CirculantMetric logc(cst(2.0), cst(1.0), {geomq::Expr::parse("log(X1)")});
  CHECK_FALSE(logc.in_domain(Point{-1.0, 0, 0}));
  CHECK(logc.in_domain(Point{2.0, 0, 0}));
  CHECK_THROWS_AS(logc.at(Point{-1.0, 0, 0}), DomainViolation);
  CHECK(logc.at(Point{2.0, 0, 0}).a == 2.0);
}

TEST_CASE("the affinor permutes components cyclically and q^3 = E") {
  CHECK(apply_q(Vec3{1, 0, 0})[0] == 0.0);
  CHECK(apply_q(Vec3{1, 0, 0})[1] == 1.0);
  CHECK(apply_q(Vec3{1, 0, 0})[2] == 0.0);
  Vec3 v = apply_q(Vec3{1, 2, 3});
  CHECK(v[0] == 3.0);
  CHECK(v[1] == 1.0);
  CHECK(v[2] == 2.0);

  Vec3 w{0.3, -1.2, 5.0};
  Vec3 w3 = apply_q(apply_q(apply_q(w)));
  CHECK(w3[0] == w[0]);  // exact component equality
  CHECK(w3[1] == w[1]);
  CHECK(w3[2] == w[2]);

  SplitMix64 rng(11);
  for (int t = 0; t < 1000; ++t) {
    Vec3 x = random_vector(rng);
    Vec3 x3 = apply_q(apply_q(apply_q(x)));
    CHECK(x3[0] == x[0]);
    CHECK(x3[1] == x[1]);
    CHECK(x3[2] == x[2]);
  }

  // the matrix view agrees with apply_q: (qx)^j = sum_i x^i q_i^j
  SplitMix64 rng2(12);
  for (int t = 0; t < 10; ++t) {
    Vec3 x = random_vector(rng2);
    Vec3 qx = apply_q(x);
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int i = 0; i < 3; ++i) s += x[i] * kAffinorMatrix[i][j];
      CHECK(s == qx[j]);
    }
  }
}

TEST_CASE("inner product values and q-invariance") {
  MetricAtPoint g{2.0, 0.5, 4.5};
  CHECK(inner(g, Vec3{1, 2, 3}, Vec3{0, 1, 0}) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(inner(g, apply_q(Vec3{1, 2, 3}), apply_q(Vec3{0, 1, 0})) ==
        doctest::Approx(6.0).epsilon(1e-15));
  CHECK(inner(g, Vec3{0, 0, 0}, Vec3{4, 5, 6}) == 0.0);

  SplitMix64 rng(21);
  for (int t = 0; t < 1000; ++t) {
    MetricAtPoint gg = random_metric_values(rng);
    Vec3 u = random_vector(rng);
    Vec3 v = random_vector(rng);
    double base = inner(gg, u, v);
    double shifted = inner(gg, apply_q(u), apply_q(v));
    CHECK(std::fabs(base - shifted) <= 1e-12 * (1.0 + std::fabs(base)));
    // positive definiteness
    double uu = inner(gg, u, u);
    if (u.max_abs() > 1e-8) CHECK(uu > 0.0);
    // bilinearity and symmetry
    CHECK(inner(gg, u, v) == doctest::Approx(inner(gg, v, u)).epsilon(1e-14));
  }
}

TEST_CASE("closed-form inverse at random metric values") {
  SplitMix64 rng(31);
  for (int t = 0; t < 200; ++t) {
    MetricAtPoint g = random_metric_values(rng);
    Mat3 prod = g.matrix() * g.inverse();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(std::fabs(prod(i, j) - (i == j ? 1.0 : 0.0)) <= 1e-12);
  }
}

TEST_CASE("angle with qx") {
  MetricAtPoint g{2.0, 0.5, 4.5};
  QAngle a = angle_with_q(g, Vec3{1, 0, 0});
  CHECK(a.cos_phi == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(a.phi == doctest::Approx(1.3181160716528177).epsilon(1e-12));
  CHECK(a.within_range);

  // q-fixed direction: phi = 0 and the range flag warns
  QAngle fixed = angle_with_q(g, Vec3{1, 1, 1});
  CHECK(fixed.phi == doctest::Approx(0.0));
  CHECK_FALSE(fixed.within_range);

  CHECK_THROWS_AS(angle_with_q(g, Vec3{0, 0, 0}), ZeroVector);
}

TEST_CASE("empirical range: phi in (0, 2pi/3) for q-independent vectors") {
  SplitMix64 rng(41);
  for (int t = 0; t < 1000; ++t) {
    MetricAtPoint g = random_metric_values(rng);
    Vec3 x = random_q_independent(rng);
    QAngle a = angle_with_q(g, x);
    CHECK(a.phi > 0.0);
    CHECK(a.phi < kTwoPiThirds);
    CHECK(a.within_range);
  }
}

TEST_CASE("q-independence criterion") {
  CHECK(q_independent(Vec3{1, 0, 0}));
  CHECK_FALSE(q_independent(Vec3{1, 1, 1}));
  CHECK(q_independent(Vec3{2, 1, 1}));
  CHECK_FALSE(q_independent(Vec3{1, -1, 0}));  // components sum to zero
  CHECK_FALSE(q_independent(Vec3{0, 0, 0}));
  CHECK_FALSE(q_independent(Vec3{-3, -3, -3}));
}

TEST_CASE("orthonormal q-base solve") {
  MetricAtPoint g{2.0, 0.5, 4.5};
  Vec3 x = orthonormal_q_base(g);
  CHECK(std::fabs(inner(g, x, x) - 1.0) <= 1e-10);
  CHECK(std::fabs(inner(g, x, apply_q(x))) <= 1e-10);
  CHECK(q_independent(x));

  // the two remaining base pairs are orthonormal automatically
  Vec3 qx = apply_q(x);
  Vec3 q2x = apply_q(qx);
  CHECK(std::fabs(inner(g, qx, qx) - 1.0) <= 1e-10);
  CHECK(std::fabs(inner(g, q2x, q2x) - 1.0) <= 1e-10);
  CHECK(std::fabs(inner(g, qx, q2x)) <= 1e-10);
  CHECK(std::fabs(inner(g, q2x, x)) <= 1e-10);

  // third base vector makes angle pi/2 with its own q-image
  QAngle third = angle_with_q(g, q2x);
  CHECK(third.phi == doctest::Approx(std::acos(0.0)).epsilon(1e-9));

  // independent construction: solve the 2x2 linear system for
  // s = sum x_i^2 and sigma = sum_{i<j} x_i x_j, then x = (u, v, 0)
  double s = (g.a + g.b) / g.d;
  double sigma = -g.b / g.d;
  CHECK(g.a * s + 2.0 * g.b * sigma == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(g.a * sigma + g.b * (s + sigma) == doctest::Approx(0.0).epsilon(1e-14));
  double u = (std::sqrt(s + 2.0 * sigma) + std::sqrt(s - 2.0 * sigma)) / 2.0;
  double v = (std::sqrt(s + 2.0 * sigma) - std::sqrt(s - 2.0 * sigma)) / 2.0;
  Vec3 closed{u, v, 0.0};
  CHECK(std::fabs(inner(g, closed, closed) - 1.0) <= 1e-12);
  CHECK(std::fabs(inner(g, closed, apply_q(closed))) <= 1e-12);

  // hard corners: a barely above b, and b nearly zero
  MetricAtPoint tight{1.0 + 1e-6, 1.0, 0.0};
  tight.d = (tight.a - tight.b) * (tight.a + 2.0 * tight.b);
  Vec3 xt = orthonormal_q_base(tight);
  CHECK(std::fabs(inner(tight, xt, xt) - 1.0) <= 1e-10);
  CHECK(std::fabs(inner(tight, xt, apply_q(xt))) <= 1e-10);
  MetricAtPoint tiny_b{1.0 + 1e-6, 1e-6, 0.0};
  tiny_b.d = (tiny_b.a - tiny_b.b) * (tiny_b.a + 2.0 * tiny_b.b);
  Vec3 xs = orthonormal_q_base(tiny_b);
  CHECK(std::fabs(inner(tiny_b, xs, xs) - 1.0) <= 1e-10);
  CHECK(std::fabs(inner(tiny_b, xs, apply_q(xs))) <= 1e-10);

  SplitMix64 rng(51);
  for (int t = 0; t < 100; ++t) {
    MetricAtPoint gg = random_metric_values(rng);
    Vec3 xx = orthonormal_q_base(gg, rng.next_u64());
    CHECK(std::fabs(inner(gg, xx, xx) - 1.0) <= 1e-10);
    CHECK(std::fabs(inner(gg, xx, apply_q(xx))) <= 1e-10);
    CHECK(q_independent(xx));
  }
}
