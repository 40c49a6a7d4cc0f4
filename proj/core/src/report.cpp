#include "geomq/report.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "geomq/curvature.hpp"
#include "geomq/errors.hpp"
#include "geomq/rng.hpp"
#include "geomq/sectional.hpp"

namespace geomq {
namespace {

using nlohmann::json;

json point_json(const Point& p) { return json::array({p.x1, p.x2, p.x3}); }
json vec_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

json mat_json(const Mat3& m) {
  json rows = json::array();
  for (int i = 0; i < 3; ++i)
    rows.push_back(json::array({m(i, 0), m(i, 1), m(i, 2)}));
  return rows;
}

json envelope(const std::string& command, const ManifoldSpec* spec) {
  json j;
  j["schema"] = 1;
  j["tool"] = "geomq";
  j["rng"] = SplitMix64::algorithm();
  j["command"] = command;
  if (spec) {
    j["spec"] = spec->to_json();
    j["spec_hash"] = spec_hash(*spec);
  }
  return j;
}

json check(const std::string& name, double value, double tolerance, bool pass) {
  json c;
  c["name"] = name;
  c["value"] = value;
  c["tolerance"] = tolerance;
  c["pass"] = pass;
  return c;
}

json check_leq(const std::string& name, double value, double tolerance) {
  return check(name, value, tolerance, value <= tolerance);
}

RunOutput seal(json report, json checks) {
  bool pass = true;
  for (const auto& c : checks) pass = pass && c.at("pass").get<bool>();
  report["checks"] = std::move(checks);
  report["pass"] = pass;
  return RunOutput{std::move(report), pass ? 0 : 1};
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  SplitMix64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (salt + 1)));
  return rng.next_u64();
}

json class_report_json(const ClassReport& r) {
  json j;
  j["point"] = point_json(r.point);
  j["parallel"] = r.parallel;
  j["v1"] = r.v1;
  j["v2"] = r.v2;
  j["flat"] = r.flat;
  j["parallel_residual"] = r.parallel_residual;
  j["v1_residual"] = r.v1_residual;
  j["v2_residual"] = r.v2_residual;
  j["r_system_residual"] = r.r_system_residual;
  j["r_max"] = r.r_max;
  j["class_tolerance_abs"] = r.class_tol_abs;
  j["parallel_tolerance_abs"] = r.parallel_tol_abs;
  j["flat_tolerance_abs"] = r.flat_tol_abs;
  return j;
}

// Direct q-section computation, no V2 precondition: used by the sectional
// command and as the diagnostic fallback when theorem ops reject a point.
struct DirectQSection {
  double phi = 0.0;
  double mu[3] = {};
  double spread = 0.0;
  double dopl = 0.0;
  double dop2 = 0.0;
};

DirectQSection direct_q_section(const CirculantMetric& m, const Point& p, const Vec3& x) {
  MetricAtPoint g = m.at(p);
  Curv4 R = curvature_at(m, p).curv4;
  Vec3 qx = apply_q(x);
  Vec3 q2x = apply_q(qx);
  DirectQSection out;
  out.phi = angle_with_q(g, x).phi;
  out.mu[0] = sectional_curvature(R, g, x, qx);
  out.mu[1] = sectional_curvature(R, g, qx, q2x);
  out.mu[2] = sectional_curvature(R, g, q2x, x);
  double mx = std::max({out.mu[0], out.mu[1], out.mu[2]});
  double mn = std::min({out.mu[0], out.mu[1], out.mu[2]});
  out.spread = (mx - mn) / (1.0 + std::max(std::fabs(mx), std::fabs(mn)));
  double k1 = R.evaluate(x, qx, x, qx);
  double d1 = R.evaluate(x, q2x, x, q2x);
  double d2 = R.evaluate(qx, q2x, qx, q2x);
  double ks = std::max({std::fabs(k1), std::fabs(d1), std::fabs(d2)});
  out.dopl = std::max(std::fabs(k1 - d1), std::fabs(k1 - d2)) / (1.0 + ks);
  double m1 = R.evaluate(x, qx, q2x, x);
  double m2 = R.evaluate(qx, q2x, x, qx);
  double m3 = R.evaluate(q2x, x, qx, q2x);
  double ms = std::max({std::fabs(m1), std::fabs(m2), std::fabs(m3)});
  out.dop2 = std::max(std::fabs(m1 - m2), std::fabs(m1 - m3)) / (1.0 + ms);
  return out;
}

Vec3 random_q_independent_vector(SplitMix64& rng) {
  for (;;) {
    Vec3 x{rng.normal(), rng.normal(), rng.normal()};
    double cubic = x[0] * x[0] * x[0] + x[1] * x[1] * x[1] + x[2] * x[2] * x[2] -
                   3.0 * x[0] * x[1] * x[2];
    if (std::fabs(cubic) > 1e-3 && q_independent(x)) return x;
  }
}

std::array<double, 3> random_coeff_triple(SplitMix64& rng) {
  for (;;) {
    std::array<double, 3> co{rng.normal(), rng.normal(), rng.normal()};
    double n = std::sqrt(co[0] * co[0] + co[1] * co[1] + co[2] * co[2]);
    if (n < 1e-6) continue;
    for (double& v : co) v /= n;
    double cubic = co[0] * co[0] * co[0] + co[1] * co[1] * co[1] +
                   co[2] * co[2] * co[2] - 3.0 * co[0] * co[1] * co[2];
    double c = co[0] * co[1] + co[1] * co[2] + co[2] * co[0];
    if (std::fabs(cubic) > 1e-4 && 1.0 + c > 1e-6) return co;
  }
}

}  // namespace

RunOutput run_eval(const ManifoldSpec& spec, const Point& p, const std::string& what) {
  if (what != "g" && what != "gamma" && what != "riemann" && what != "all")
    throw Error("--what must be one of g, gamma, riemann, all");
  CirculantMetric m = spec.build();
  json report = envelope("eval", &spec);
  json results;
  results["point"] = point_json(p);
  results["what"] = what;
  json checks = json::array();

  MetricAtPoint g = m.at(p);
  if (what == "g" || what == "all") {
    json gj;
    gj["a"] = g.a;
    gj["b"] = g.b;
    gj["d"] = g.d;
    gj["g"] = mat_json(g.matrix());
    gj["g_inv"] = mat_json(g.inverse());
    results["metric"] = gj;
    Mat3 prod = g.matrix() * g.inverse();
    double dev = 0.0;
    Mat3 eye = Mat3::identity();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) dev = std::max(dev, std::fabs(prod(i, j) - eye(i, j)));
    checks.push_back(check_leq("metric_inverse_identity", dev, 1e-12));
  }
  if (what == "gamma" || what == "all") {
    Christoffel gam = christoffel_at(m, p);
    json rows = json::array();
    for (int h = 0; h < 3; ++h) {
      json plane = json::array();
      for (int i = 0; i < 3; ++i)
        plane.push_back(json::array({gam.g[h][i][0], gam.g[h][i][1], gam.g[h][i][2]}));
      rows.push_back(plane);
    }
    results["christoffel"] = rows;
  }
  if (what == "riemann" || what == "all") {
    Curv4 R = curvature_at(m, p).curv4;
    SixComponents six = R.components();
    json rj;
    auto arr = six.as_array();
    for (int k = 0; k < 6; ++k) rj[SixComponents::name(k)] = arr[k];
    rj["max_abs"] = R.max_abs();
    results["riemann"] = rj;
  }
  report["results"] = std::move(results);
  return seal(std::move(report), std::move(checks));
}

RunOutput run_classify(const ManifoldSpec& spec, const SamplerSpec& sampler,
                       const ClassTolerances& tol) {
  CirculantMetric m = spec.build();
  json report = envelope("classify", &spec);
  json options;
  options["sampler"] = sampler.kind == SamplerKind::kGrid ? "grid" : "random";
  if (sampler.kind == SamplerKind::kGrid)
    options["grid"] = json::array({sampler.grid[0], sampler.grid[1], sampler.grid[2]});
  else
    options["samples"] = sampler.count;
  options["seed"] = sampler.seed;
  options["margin"] = sampler.margin;
  options["tolerance_rel"] = tol.rel;
  report["options"] = std::move(options);
  report["seed"] = sampler.seed;

  RegionReport region = classify_region(m, spec.sample_box, sampler, tol);
  json results;
  int n = static_cast<int>(region.points.size());
  results["n_points"] = n;
  results["count_parallel"] = region.count_parallel;
  results["count_v1"] = region.count_v1;
  results["count_v2"] = region.count_v2;
  results["count_flat"] = region.count_flat;
  results["worst_parallel_residual"] = region.worst_parallel_residual;
  results["worst_v1_residual"] = region.worst_v1_residual;
  results["worst_v2_residual"] = region.worst_v2_residual;
  json pts = json::array();
  for (const auto& r : region.points) pts.push_back(class_report_json(r));
  results["points"] = std::move(pts);
  report["results"] = std::move(results);

  json checks = json::array();
  double worst_rmax = 0.0;
  int chain_violations = 0;
  for (const auto& r : region.points) {
    worst_rmax = std::max(worst_rmax, r.r_max);
    if (r.v1 && !r.v2) ++chain_violations;
  }
  checks.push_back(check_leq("v2_equals_explicit_system_gap", region.worst_system_gap,
                             1e-12 * (1.0 + worst_rmax)));
  checks.push_back(check("v1_implies_v2_violations", chain_violations, 0.0,
                         chain_violations == 0));
  return seal(std::move(report), std::move(checks));
}

RunOutput run_sectional(const ManifoldSpec& spec, const Point& p, const Vec3& x,
                        double tol) {
  CirculantMetric m = spec.build();
  if (!q_independent(x))
    throw DomainViolation("vector fails the q-independence criterion");
  json report = envelope("sectional", &spec);
  json options;
  options["point"] = point_json(p);
  options["vector"] = vec_json(x);
  options["tolerance"] = tol;
  report["options"] = std::move(options);

  ClassReport cls = class_check(m, p);
  DirectQSection s = direct_q_section(m, p, x);
  json results;
  results["phi"] = s.phi;
  results["mu_x_qx"] = s.mu[0];
  results["mu_qx_q2x"] = s.mu[1];
  results["mu_q2x_x"] = s.mu[2];
  results["v2"] = cls.v2;
  results["v2_residual"] = cls.v2_residual;
  report["results"] = std::move(results);

  json checks = json::array();
  checks.push_back(check_leq("q_section_curvatures_equal", s.spread, tol));
  checks.push_back(check_leq("dopl_equalities", s.dopl, 1e-9));
  checks.push_back(check_leq("dop2_equalities", s.dop2, 1e-9));
  return seal(std::move(report), std::move(checks));
}

RunOutput run_verify_example() {
  ManifoldSpec spec = paper_example_spec();
  CirculantMetric m = spec.build();
  json report = envelope("verify-example", &spec);
  const std::uint64_t seed = 20240901;
  report["seed"] = seed;

  const Point p0{1.0, -1.0, -0.5};
  MetricAtPoint g = m.at(p0);
  json results;
  results["point"] = point_json(p0);
  results["a"] = g.a;
  results["b"] = g.b;
  results["d"] = g.d;

  json checks = json::array();
  double metric_dev =
      std::max({std::fabs(g.a - 2.0), std::fabs(g.b - 0.5), std::fabs(g.d - 4.5)});
  checks.push_back(check_leq("metric_values", metric_dev, 1e-12));

  Curv4 R0 = curvature_at(m, p0).curv4;
  double r1212 = R0.components().r1212;
  results["r1212"] = r1212;
  checks.push_back(check_leq("r1212_value", std::fabs(r1212 + 1.0 / 9.0), 1e-10));

  const Point p1{2.0, -0.5, -0.5};
  double r1212_b = curvature_at(m, p1).curv4.components().r1212;
  results["r1212_second_point"] = r1212_b;
  checks.push_back(check_leq("r1212_second_point", std::fabs(r1212_b + 0.3), 1e-10));

  // closed-form ratio at sampled points:
  // R1212 * (X2+X3) * (6 X1 + 2 X2 + 2 X3) = 2 X1 + X2 + X3
  SamplerSpec sampler;
  sampler.count = 200;
  sampler.seed = seed;
  double worst_ratio = 0.0;
  double min_abs_r1212 = 1e300;
  for (const Point& p : sample_points(m, spec.sample_box, sampler)) {
    double r = curvature_at(m, p).curv4.components().r1212;
    double den = (p.x2 + p.x3) * (6.0 * p.x1 + 2.0 * p.x2 + 2.0 * p.x3);
    double num = 2.0 * p.x1 + p.x2 + p.x3;
    worst_ratio = std::max(worst_ratio, std::fabs(r * den - num) / (1.0 + std::fabs(num)));
    min_abs_r1212 = std::min(min_abs_r1212, std::fabs(r));
  }
  results["sampled_points"] = 200;
  results["min_abs_r1212"] = min_abs_r1212;
  checks.push_back(check_leq("r1212_closed_form_ratio", worst_ratio, 1e-8));
  checks.push_back(
      check("r1212_above_flat_threshold", min_abs_r1212, 1e-3, min_abs_r1212 > 1e-3));

  ClassReport cls = class_check(m, p0);
  results["class"] = class_report_json(cls);
  checks.push_back(check("v2_true", cls.v2_residual, cls.class_tol_abs, cls.v2));
  checks.push_back(check("parallel_false", cls.parallel_residual, cls.parallel_tol_abs,
                         !cls.parallel));
  checks.push_back(check("flat_false", cls.r_max, cls.flat_tol_abs, !cls.flat));

  ClosedFormReport cf = closed_form_components(m, p0);
  json cfj;
  auto pr = cf.printed.as_array();
  auto pl = cf.pipeline.as_array();
  for (int k = 0; k < 6; ++k) {
    json c;
    c["printed"] = pr[k];
    c["pipeline"] = pl[k];
    c["deviation"] = cf.deviation[k];
    c["flagged"] = cf.flagged[k];
    cfj[SixComponents::name(k)] = c;
  }
  cfj["tolerance"] = cf.tolerance;
  results["closed_form"] = std::move(cfj);

  report["results"] = std::move(results);
  return seal(std::move(report), std::move(checks));
}

RunOutput run_theorems(const ManifoldSpec& spec, const TheoremOptions& opt) {
  CirculantMetric m = spec.build();
  json report = envelope("theorems", &spec);
  report["seed"] = opt.seed;
  json options;
  options["trials"] = opt.trials;
  options["seed"] = opt.seed;
  options["theorem1_tol"] = opt.theorem1_tol;
  options["identity_tol"] = opt.identity_tol;
  options["theorem2_tol"] = opt.theorem2_tol;
  options["algebra_tol"] = opt.algebra_tol;
  report["options"] = std::move(options);

  json results;
  json checks = json::array();

  // ---- theorem 1: equal q-section curvatures at random (point, vector) ----
  SamplerSpec sampler;
  sampler.count = std::max(1, opt.trials / 4);
  sampler.seed = derive_seed(opt.seed, 1);
  std::vector<Point> pts = sample_points(m, spec.sample_box, sampler);
  SplitMix64 vec_rng(derive_seed(opt.seed, 2));
  int not_in_v2 = 0;
  double worst_v2_residual = 0.0;
  double max_spread = 0.0, max_dopl = 0.0, max_dop2 = 0.0;
  for (int t = 0; t < opt.trials; ++t) {
    const Point& p = pts[t % pts.size()];
    Vec3 x = random_q_independent_vector(vec_rng);
    try {
      QSectionReport r = theorem1_check(m, p, x, opt.theorem1_tol);
      max_spread = std::max(max_spread, r.mu_spread);
      max_dopl = std::max(max_dopl, r.dopl_residual);
      max_dop2 = std::max(max_dop2, r.dop2_residual);
    } catch (const NotInV2&) {
      ++not_in_v2;
      ClassReport cls = class_check(m, p);
      worst_v2_residual = std::max(worst_v2_residual, cls.v2_residual);
      DirectQSection s = direct_q_section(m, p, x);
      max_spread = std::max(max_spread, s.spread);
      max_dopl = std::max(max_dopl, s.dopl);
      max_dop2 = std::max(max_dop2, s.dop2);
    }
  }
  json t1;
  t1["trials"] = opt.trials;
  t1["points"] = static_cast<int>(pts.size());
  t1["not_in_v2_trials"] = not_in_v2;
  t1["worst_v2_residual"] = worst_v2_residual;
  t1["max_mu_spread"] = max_spread;
  t1["max_dopl_residual"] = max_dopl;
  t1["max_dop2_residual"] = max_dop2;
  results["theorem1"] = std::move(t1);
  checks.push_back(check("theorem1_v2_precondition", not_in_v2, 0.0, not_in_v2 == 0));
  checks.push_back(check_leq("theorem1_mu_agreement", max_spread, opt.theorem1_tol));
  checks.push_back(check_leq("theorem1_dopl", max_dopl, opt.identity_tol));
  checks.push_back(check_leq("theorem1_dop2", max_dop2, opt.identity_tol));

  // ---- theorem 2: the angle formula, stage by stage ----
  SamplerSpec sampler2;
  sampler2.count = opt.theorem2_points;
  sampler2.seed = derive_seed(opt.seed, 3);
  std::vector<Point> pts2 = sample_points(m, spec.sample_box, sampler2);
  SplitMix64 coeff_rng(derive_seed(opt.seed, 4));
  int not_in_v2_t2 = 0;
  double max_qu = 0.0, max_inner = 0.0, max_coeff = 0.0, max_cor = 0.0;
  double max_mu_r = 0.0, max_mu_r2 = 0.0;
  for (int t = 0; t < opt.trials; ++t) {
    const Point& p = pts2[t % pts2.size()];
    std::array<double, 3> co = random_coeff_triple(coeff_rng);
    try {
      Theorem2Report r =
          theorem2_check(m, p, co, opt.theorem2_tol, {}, derive_seed(opt.seed, 100 + t));
      max_qu = std::max(max_qu, r.res_qu_expansion);
      max_inner = std::max(max_inner, r.res_inner);
      max_coeff = std::max(max_coeff, std::max(r.res_coeff_sq, r.res_coeff_cross));
      max_cor = std::max(max_cor, r.res_cor);
      max_mu_r = std::max(max_mu_r, r.res_mu_r);
      max_mu_r2 = std::max(max_mu_r2, r.res_mu_r2);
    } catch (const NotInV2&) {
      ++not_in_v2_t2;
    }
  }
  // special cases cos = 0 -> mu(x,qx) and cos = 1/2 -> mu(y,qy)
  double max_cos0 = 0.0, max_cos_half = 0.0;
  int special_failures = 0;
  for (int t = 0; t < 20; ++t) {
    const Point& p = pts2[t % pts2.size()];
    double theta = coeff_rng.uniform(0.0, 6.283185307179586);
    try {
      MetricAtPoint g = m.at(p);
      Curv4 R = curvature_at(m, p).curv4;
      Vec3 x = orthonormal_q_base(g, derive_seed(opt.seed, 200 + t));
      Vec3 qx = apply_q(x);
      Vec3 y = (1.0 / std::sqrt(2.0)) * (x + qx);
      double mu_x = sectional_curvature(R, g, x, qx);
      double mu_y = sectional_curvature(R, g, y, apply_q(y));
      auto co0 = q_base_coeffs_for_cos(0.0, theta);
      Vec3 u0 = co0[0] * x + co0[1] * qx + co0[2] * apply_q(qx);
      double mu_u0 = sectional_curvature(R, g, u0, apply_q(u0));
      max_cos0 = std::max(max_cos0,
                          std::fabs(mu_u0 - mu_x) / (1.0 + std::fabs(mu_x)));
      auto coh = q_base_coeffs_for_cos(0.5, theta);
      Vec3 uh = coh[0] * x + coh[1] * qx + coh[2] * apply_q(qx);
      double mu_uh = sectional_curvature(R, g, uh, apply_q(uh));
      max_cos_half = std::max(max_cos_half,
                              std::fabs(mu_uh - mu_y) / (1.0 + std::fabs(mu_y)));
    } catch (const Error&) {
      ++special_failures;
    }
  }
  json t2;
  t2["trials"] = opt.trials;
  t2["points"] = static_cast<int>(pts2.size());
  t2["not_in_v2_trials"] = not_in_v2_t2;
  t2["max_qu_expansion_residual"] = max_qu;
  t2["max_inner_residual"] = max_inner;
  t2["max_coeff_identity_residual"] = max_coeff;
  t2["max_cor_residual"] = max_cor;
  t2["max_mu_r_residual"] = max_mu_r;
  t2["max_mu_r2_residual"] = max_mu_r2;
  t2["max_special_cos_zero"] = max_cos0;
  t2["max_special_cos_half"] = max_cos_half;
  results["theorem2"] = std::move(t2);
  checks.push_back(check("theorem2_v2_precondition", not_in_v2_t2, 0.0, not_in_v2_t2 == 0));
  checks.push_back(check_leq("theorem2_qu_expansion", max_qu, opt.identity_tol));
  checks.push_back(check_leq("theorem2_inner_products", max_inner, opt.identity_tol));
  checks.push_back(check_leq("theorem2_coeff_identities", max_coeff, opt.algebra_tol));
  checks.push_back(check_leq("theorem2_cor_expansion", max_cor, opt.theorem2_tol));
  checks.push_back(check_leq("theorem2_mu_r", max_mu_r, opt.theorem2_tol));
  checks.push_back(check_leq("theorem2_mu_r2", max_mu_r2, opt.theorem2_tol));
  checks.push_back(check_leq("theorem2_special_cos_zero", max_cos0, 1e-8));
  checks.push_back(check_leq("theorem2_special_cos_half", max_cos_half, 1e-8));
  checks.push_back(
      check("theorem2_special_case_errors", special_failures, 0.0, special_failures == 0));

  // ---- metric-free coefficient algebra ----
  SplitMix64 alg_rng(derive_seed(opt.seed, 5));
  double max_alg = 0.0;
  for (int t = 0; t < 1000; ++t) {
    std::array<double, 3> co{alg_rng.normal(), alg_rng.normal(), alg_rng.normal()};
    double n = std::sqrt(co[0] * co[0] + co[1] * co[1] + co[2] * co[2]);
    if (n < 1e-9) continue;
    double a = co[0] / n, b = co[1] / n, g_ = co[2] / n;
    double c = a * b + b * g_ + g_ * a;
    double P = a * a - b * g_, Q = g_ * g_ - a * b, S = b * b - a * g_;
    max_alg = std::max(max_alg, std::fabs(P * P + Q * Q + S * S - (1.0 - c * c)));
    max_alg = std::max(max_alg, std::fabs(P * Q + Q * S + P * S - (c * c - c)));
  }
  results["coefficient_algebra_max_residual"] = max_alg;
  checks.push_back(check_leq("coefficient_algebra", max_alg, opt.algebra_tol));

  // ---- monotonicity of mu(phi) ----
  json mono;
  try {
    MonotonicityReport mr =
        monotonicity_scan(m, pts2.front(), 500, derive_seed(opt.seed, 6), 1e-6);
    mono["samples"] = static_cast<int>(mr.rows.size());
    mono["bins"] = static_cast<int>(mr.bin_mu.size());
    mono["equal_angle_max_dev"] = mr.equal_angle_max_dev;
    mono["monotone"] = mr.monotone;
    mono["direction"] = mr.direction;
    mono["mixed_term"] = mr.mixed;
    checks.push_back(check_leq("monotonicity_equal_angle", mr.equal_angle_max_dev, 1e-6));
    checks.push_back(check("monotonicity_binned", mr.monotone ? 0.0 : 1.0, 0.0, mr.monotone));
  } catch (const NotInV2& e) {
    mono["error"] = std::string("NotInV2: ") + e.what();
    checks.push_back(check("monotonicity_v2_precondition", 1.0, 0.0, false));
  }
  results["monotonicity"] = std::move(mono);

  report["results"] = std::move(results);
  return seal(std::move(report), std::move(checks));
}

std::string render_report(const nlohmann::json& report) { return report.dump(2) + "\n"; }

}  // namespace geomq
