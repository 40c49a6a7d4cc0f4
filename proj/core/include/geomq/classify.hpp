#ifndef GEOMQ_CLASSIFY_HPP
#define GEOMQ_CLASSIFY_HPP

#include <cstdint>
#include <vector>

#include "geomq/curvature.hpp"
#include "geomq/metric.hpp"
#include "geomq/types.hpp"

namespace geomq {

/// The constant matrix S of the parallel-structure criterion
/// grad A = grad B . S (row vector times matrix).
extern const int kParallelS[3][3];

struct ClassTolerances {
  double rel = 1e-8;        // residual scaled by max |R| at the point
  double abs_floor = 1e-12; // absolute floor for near-flat points
  double flat = 1e-10;      // flat iff max|R| <= flat * (1 + |a| + |b|)
};

/// Pointwise class verdicts with the residual behind every flag.
/// A flag is true iff its residual is within tolerance.
struct ClassReport {
  Point point;

  bool parallel = false;
  bool v1 = false;
  bool v2 = false;
  bool flat = false;

  double parallel_residual = 0.0;  // max component |gradA - gradB.S|
  double v1_residual = 0.0;        // max |R_{ij,qk,qu} - R_{ijku}|
  double v2_residual = 0.0;        // max |R_{qi,qj,qk,qu} - R_{ijku}|
  double r_system_residual = 0.0;  // explicit six-component system
  double r_max = 0.0;              // max |R_{ijku}|

  double class_tol_abs = 0.0;      // the absolute threshold v1/v2 were judged at
  double parallel_tol_abs = 0.0;
  double flat_tol_abs = 0.0;
};

/// grad A = grad B . S componentwise; true iff the max deviation is within
/// tol * (1 + |gradA|_inf).
struct ParallelResult {
  bool holds = false;
  double residual = 0.0;
  Vec3 grad_a;
  Vec3 grad_b_s;
};
ParallelResult parallel_check(const CirculantMetric& m, const Point& p,
                              double tol = 1e-8);

/// Full pointwise classification. The V1 residual contracts q into the last
/// two slots, the V2 residual into all four (equivalently the cyclic index
/// shift); the explicit system R1212=R1313=R2323, R1213=R1323=-R1223 is
/// evaluated as a cross-check and equals the V2 residual.
ClassReport class_check(const CirculantMetric& m, const Point& p,
                        const ClassTolerances& tol = {});

enum class SamplerKind { kRandom, kGrid };

struct SamplerSpec {
  SamplerKind kind = SamplerKind::kRandom;
  int count = 100;                      // random draws requested
  std::array<int, 3> grid{4, 4, 4};     // grid dimensions
  std::uint64_t seed = 1;
  double margin = 1e-9;                 // strict-inequality margin
};

/// Sample points of `box` satisfying the domain constraints (with the
/// sampler margin). Deterministic for a fixed seed. Throws EmptySample if
/// nothing qualifies.
std::vector<Point> sample_points(const CirculantMetric& m, const Box& box,
                                 const SamplerSpec& sampler);

struct RegionReport {
  std::vector<ClassReport> points;
  int count_parallel = 0;
  int count_v1 = 0;
  int count_v2 = 0;
  int count_flat = 0;
  double worst_parallel_residual = 0.0;
  double worst_v1_residual = 0.0;
  double worst_v2_residual = 0.0;
  double worst_system_gap = 0.0;  // max |v2_residual - r_system_residual|
};

RegionReport classify_region(const CirculantMetric& m, const Box& box,
                             const SamplerSpec& sampler,
                             const ClassTolerances& tol = {});

}  // namespace geomq

#endif  // GEOMQ_CLASSIFY_HPP
