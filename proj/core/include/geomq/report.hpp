#ifndef GEOMQ_REPORT_HPP
#define GEOMQ_REPORT_HPP

#include <cstdint>
#include <string>

#include <json.hpp>

#include "geomq/classify.hpp"
#include "geomq/manifold_spec.hpp"
#include "geomq/types.hpp"

namespace geomq {

/// A machine-readable run report plus the process exit code the CLI should
/// return: 0 all checks passed, 1 a mathematical check failed. (Usage and
/// domain errors never produce a report; they surface as exceptions and
/// exit code 2.)
struct RunOutput {
  nlohmann::json report;
  int exit_code = 0;
};

/// Options shared by the report builders. Reports are deterministic:
/// identical spec + command + options (including seed) give byte-identical
/// JSON.
struct TheoremOptions {
  int trials = 100;
  std::uint64_t seed = 1;
  double theorem1_tol = 1e-8;
  double identity_tol = 1e-9;   // dopl/dop2 equalities
  double theorem2_tol = 1e-6;
  double algebra_tol = 1e-12;   // metric-free coefficient identities
  int theorem2_points = 10;
};

/// `eval` command: metric, Christoffel symbols and curvature at one point.
/// what is one of "g", "gamma", "riemann", "all".
RunOutput run_eval(const ManifoldSpec& spec, const Point& p, const std::string& what);

/// `classify` command over the spec's sample box.
RunOutput run_classify(const ManifoldSpec& spec, const SamplerSpec& sampler,
                       const ClassTolerances& tol = {});

/// `sectional` command: the three q-section curvatures and the curvature
/// equalities at (p, x), judged without requiring the V2 precondition (the
/// report carries the V2 residual instead).
RunOutput run_sectional(const ManifoldSpec& spec, const Point& p, const Vec3& x,
                        double tol = 1e-8);

/// `verify-example` command: the built-in example regression.
RunOutput run_verify_example();

/// `theorems` command: Monte Carlo verification of the two sectional
/// curvature theorems plus the metric-free coefficient identities.
RunOutput run_theorems(const ManifoldSpec& spec, const TheoremOptions& opt = {});

/// Serializes a report the way every command does: 2-space indent,
/// sorted keys, trailing newline.
std::string render_report(const nlohmann::json& report);

}  // namespace geomq

#endif  // GEOMQ_REPORT_HPP
