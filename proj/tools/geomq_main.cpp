// geomq: circulant-metric manifold toolkit.
//
// Subcommands evaluate the metric/connection/curvature at points, classify
// sampled regions into the parallel/V1/V2/flat classes, and verify the
// q-section curvature theorems. Every command emits one JSON report
// (stdout, or --out FILE) and exits 0 when all checks pass, 1 when a
// mathematical check fails, 2 on usage or domain errors.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "geomq/errors.hpp"
#include "geomq/report.hpp"

namespace {

geomq::Point parse_point(const std::string& text) {
  std::array<double, 3> v{};
  std::stringstream ss(text);
  std::string item;
  for (int i = 0; i < 3; ++i) {
    if (!std::getline(ss, item, ','))
      throw geomq::Error("expected three comma-separated coordinates, got '" + text + "'");
    try {
      v[i] = std::stod(item);
    } catch (const std::exception&) {
      throw geomq::Error("bad coordinate '" + item + "' in '" + text + "'");
    }
  }
  if (std::getline(ss, item, ','))
    throw geomq::Error("expected exactly three coordinates in '" + text + "'");
  return geomq::Point{v[0], v[1], v[2]};
}

geomq::Vec3 parse_vector(const std::string& text) {
  geomq::Point p = parse_point(text);
  return geomq::Vec3{p.x1, p.x2, p.x3};
}

std::array<int, 3> parse_grid(const std::string& text) {
  std::array<int, 3> g{};
  std::stringstream ss(text);
  std::string item;
  for (int i = 0; i < 3; ++i) {
    if (!std::getline(ss, item, 'x'))
      throw geomq::Error("expected n1xn2xn3 grid, got '" + text + "'");
    try {
      g[i] = std::stoi(item);
    } catch (const std::exception&) {
      throw geomq::Error("bad grid dimension '" + item + "'");
    }
    if (g[i] <= 0) throw geomq::Error("grid dimensions must be positive");
  }
  return g;
}

void emit(const geomq::RunOutput& out, const std::string& out_path) {
  std::string text = geomq::render_report(out.report);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw geomq::Error("cannot open output file " + out_path);
    f << text;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"circulant-metric manifold toolkit"};
  app.require_subcommand(1);

  std::string spec_name = "paper-example";
  std::string out_path;
  std::string point_text;
  std::string vector_text;
  std::string what = "all";
  std::string grid_text;
  int samples = 100;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  int trials = 100;

  auto* eval_cmd = app.add_subcommand("eval", "metric, Christoffel and curvature at a point");
  eval_cmd->add_option("--spec", spec_name, "spec file or built-in name");
  eval_cmd->add_option("--point", point_text, "point as x1,x2,x3")->required();
  eval_cmd->add_option("--what", what, "g|gamma|riemann|all");
  eval_cmd->add_option("--out", out_path, "write the JSON report here");

  auto* classify_cmd = app.add_subcommand("classify", "classify sampled points of the box");
  classify_cmd->add_option("--spec", spec_name, "spec file or built-in name");
  classify_cmd->add_option("--samples", samples, "random sample count");
  classify_cmd->add_option("--grid", grid_text, "grid sampler, n1xn2xn3");
  classify_cmd->add_option("--seed", seed, "sampler seed");
  classify_cmd->add_option("--tol", tol, "classification tolerance (relative)");
  classify_cmd->add_option("--out", out_path, "write the JSON report here");

  auto* sectional_cmd =
      app.add_subcommand("sectional", "q-section curvatures at a point and vector");
  sectional_cmd->add_option("--spec", spec_name, "spec file or built-in name");
  sectional_cmd->add_option("--point", point_text, "point as x1,x2,x3")->required();
  sectional_cmd->add_option("--vector", vector_text, "tangent vector as v1,v2,v3")->required();
  sectional_cmd->add_option("--tol", tol, "agreement tolerance");
  sectional_cmd->add_option("--out", out_path, "write the JSON report here");

  auto* verify_cmd = app.add_subcommand("verify-example", "built-in example regression");
  verify_cmd->add_option("--out", out_path, "write the JSON report here");

  auto* theorems_cmd =
      app.add_subcommand("theorems", "Monte Carlo verification of the curvature theorems");
  theorems_cmd->add_option("--spec", spec_name, "spec file or built-in name");
  theorems_cmd->add_option("--trials", trials, "number of random trials");
  theorems_cmd->add_option("--seed", seed, "random seed");
  theorems_cmd->add_option("--out", out_path, "write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    geomq::RunOutput out;
    if (eval_cmd->parsed()) {
      out = geomq::run_eval(geomq::load_spec(spec_name), parse_point(point_text), what);
    } else if (classify_cmd->parsed()) {
      geomq::SamplerSpec sampler;
      if (!grid_text.empty()) {
        sampler.kind = geomq::SamplerKind::kGrid;
        sampler.grid = parse_grid(grid_text);
      } else {
        sampler.kind = geomq::SamplerKind::kRandom;
        sampler.count = samples;
      }
      sampler.seed = seed;
      geomq::ClassTolerances ct;
      ct.rel = tol;
      out = geomq::run_classify(geomq::load_spec(spec_name), sampler, ct);
    } else if (sectional_cmd->parsed()) {
      out = geomq::run_sectional(geomq::load_spec(spec_name), parse_point(point_text),
                                 parse_vector(vector_text), tol);
    } else if (verify_cmd->parsed()) {
      out = geomq::run_verify_example();
    } else if (theorems_cmd->parsed()) {
      geomq::TheoremOptions opt;
      opt.trials = trials;
      opt.seed = seed;
      out = geomq::run_theorems(geomq::load_spec(spec_name), opt);
    } else {
      std::cerr << "no subcommand given\n";
      return 2;
    }
    emit(out, out_path);
    return out.exit_code;
  } catch (const geomq::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
