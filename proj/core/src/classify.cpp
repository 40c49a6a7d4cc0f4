#include "geomq/classify.hpp"

#include <cmath>

#include "geomq/errors.hpp"
#include "geomq/rng.hpp"

namespace geomq {

const int kParallelS[3][3] = {{-1, 1, 1}, {1, -1, 1}, {1, 1, -1}};

ParallelResult parallel_check(const CirculantMetric& m, const Point& p, double tol) {
  m.require_in_domain(p);
  ParallelResult r;
  Vec3 grad_b;
  for (int i = 1; i <= 3; ++i) {
    r.grad_a[i - 1] = m.dA(i).eval(p);
    grad_b[i - 1] = m.dB(i).eval(p);
  }
  for (int j = 0; j < 3; ++j) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i) s += grad_b[i] * kParallelS[i][j];
    r.grad_b_s[j] = s;
  }
  r.residual = (r.grad_a - r.grad_b_s).max_abs();
  r.holds = r.residual <= tol * (1.0 + r.grad_a.max_abs());
  return r;
}

namespace {

// q maps basis index i to sigma(i) (0-based: 0->1->2->0).
inline int sigma(int i) { return i == 2 ? 0 : i + 1; }

}  // namespace

ClassReport class_check(const CirculantMetric& m, const Point& p,
                        const ClassTolerances& tol) {
  ClassReport rep;
  rep.point = p;

  ParallelResult par = parallel_check(m, p, tol.rel);
  rep.parallel = par.holds;
  rep.parallel_residual = par.residual;
  rep.parallel_tol_abs = tol.rel * (1.0 + par.grad_a.max_abs());

  MetricAtPoint g = m.at(p);
  Curv4 R = curvature_at(m, p).curv4;
  rep.r_max = R.max_abs();

  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int u = 0; u < 3; ++u) {
          double v1d = std::fabs(R(i, j, sigma(k), sigma(u)) - R(i, j, k, u));
          double v2d = std::fabs(R(sigma(i), sigma(j), sigma(k), sigma(u)) - R(i, j, k, u));
          rep.v1_residual = std::max(rep.v1_residual, v1d);
          rep.v2_residual = std::max(rep.v2_residual, v2d);
        }

  SixComponents six = R.components();
  double sys = 0.0;
  sys = std::max(sys, std::fabs(six.r1212 - six.r1313));
  sys = std::max(sys, std::fabs(six.r1313 - six.r2323));
  sys = std::max(sys, std::fabs(six.r1212 - six.r2323));
  sys = std::max(sys, std::fabs(six.r1213 - six.r1323));
  sys = std::max(sys, std::fabs(six.r1213 + six.r1223));
  sys = std::max(sys, std::fabs(six.r1323 + six.r1223));
  rep.r_system_residual = sys;

  rep.class_tol_abs = std::max(tol.rel * rep.r_max, tol.abs_floor);
  rep.v1 = rep.v1_residual <= rep.class_tol_abs;
  rep.v2 = rep.v2_residual <= rep.class_tol_abs;

  rep.flat_tol_abs = tol.flat * (1.0 + std::fabs(g.a) + std::fabs(g.b));
  rep.flat = rep.r_max <= rep.flat_tol_abs;
  return rep;
}

std::vector<Point> sample_points(const CirculantMetric& m, const Box& box,
                                 const SamplerSpec& sampler) {
  std::vector<Point> pts;
  if (sampler.kind == SamplerKind::kGrid) {
    const auto& n = sampler.grid;
    for (int i = 0; i < n[0]; ++i)
      for (int j = 0; j < n[1]; ++j)
        for (int k = 0; k < n[2]; ++k) {
          // cell centers keep grid points off the box faces
          Point p{box.lo[0] + (i + 0.5) * (box.hi[0] - box.lo[0]) / n[0],
                  box.lo[1] + (j + 0.5) * (box.hi[1] - box.lo[1]) / n[1],
                  box.lo[2] + (k + 0.5) * (box.hi[2] - box.lo[2]) / n[2]};
          if (m.in_domain(p, sampler.margin)) pts.push_back(p);
        }
  } else {
    SplitMix64 rng(sampler.seed);
    const long max_attempts = 1000L * std::max(sampler.count, 1);
    long attempts = 0;
    while (static_cast<int>(pts.size()) < sampler.count && attempts < max_attempts) {
      ++attempts;
      Point p{rng.uniform(box.lo[0], box.hi[0]), rng.uniform(box.lo[1], box.hi[1]),
              rng.uniform(box.lo[2], box.hi[2])};
      if (m.in_domain(p, sampler.margin)) pts.push_back(p);
    }
  }
  if (pts.empty())
    throw EmptySample("no sampled point satisfies the domain constraints");
  return pts;
}

RegionReport classify_region(const CirculantMetric& m, const Box& box,
                             const SamplerSpec& sampler, const ClassTolerances& tol) {
  RegionReport region;
  for (const Point& p : sample_points(m, box, sampler)) {
    ClassReport rep = class_check(m, p, tol);
    region.count_parallel += rep.parallel ? 1 : 0;
    region.count_v1 += rep.v1 ? 1 : 0;
    region.count_v2 += rep.v2 ? 1 : 0;
    region.count_flat += rep.flat ? 1 : 0;
    region.worst_parallel_residual =
        std::max(region.worst_parallel_residual, rep.parallel_residual);
    region.worst_v1_residual = std::max(region.worst_v1_residual, rep.v1_residual);
    region.worst_v2_residual = std::max(region.worst_v2_residual, rep.v2_residual);
    region.worst_system_gap = std::max(
        region.worst_system_gap, std::fabs(rep.v2_residual - rep.r_system_residual));
    region.points.push_back(rep);
  }
  return region;
}

}  // namespace geomq
