#include "geomq/curvature.hpp"

#include <cmath>

#include "geomq/errors.hpp"

namespace geomq {

double Christoffel::max_abs() const {
  double m = 0.0;
  for (int h = 0; h < 3; ++h)
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) m = std::max(m, std::fabs(g[h][i][k]));
  return m;
}

double Christoffel::max_abs_diff(const Christoffel& other) const {
  double m = 0.0;
  for (int h = 0; h < 3; ++h)
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k)
        m = std::max(m, std::fabs(g[h][i][k] - other.g[h][i][k]));
  return m;
}

const char* SixComponents::name(int k) {
  static const char* names[6] = {"R1212", "R1313", "R2323",
                                 "R1213", "R1223", "R1323"};
  return names[k];
}

double Curv4::evaluate(const Vec3& x, const Vec3& y, const Vec3& z,
                       const Vec3& u) const {
  double s = 0.0;
  for (int i = 0; i < 3; ++i) {
    if (x[i] == 0.0) continue;
    for (int j = 0; j < 3; ++j) {
      if (y[j] == 0.0) continue;
      for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 3; ++l) s += r_[i][j][k][l] * x[i] * y[j] * z[k] * u[l];
      }
    }
  }
  return s;
}

SixComponents Curv4::components() const {
  SixComponents c;
  c.r1212 = r_[0][1][0][1];
  c.r1313 = r_[0][2][0][2];
  c.r2323 = r_[1][2][1][2];
  c.r1213 = r_[0][1][0][2];
  c.r1223 = r_[0][1][1][2];
  c.r1323 = r_[0][2][1][2];
  return c;
}

namespace {

// Pair index for (i,j), i != j: (0,1)->0, (0,2)->1, (1,2)->2.
int pair_index(int i, int j) {
  int a = std::min(i, j), b = std::max(i, j);
  if (a == 0 && b == 1) return 0;
  if (a == 0 && b == 2) return 1;
  return 2;
}

}  // namespace

Curv4 Curv4::from_components(const SixComponents& six) {
  double M[3][3];
  M[0][0] = six.r1212;
  M[1][1] = six.r1313;
  M[2][2] = six.r2323;
  M[0][1] = M[1][0] = six.r1213;
  M[0][2] = M[2][0] = six.r1223;
  M[1][2] = M[2][1] = six.r1323;
  Curv4 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      double si = (i < j) ? 1.0 : -1.0;
      for (int k = 0; k < 3; ++k)
        for (int u = 0; u < 3; ++u) {
          if (k == u) continue;
          double su = (k < u) ? 1.0 : -1.0;
          t.at(i, j, k, u) = si * su * M[pair_index(i, j)][pair_index(k, u)];
        }
    }
  return t;
}

double Curv4::max_abs() const {
  double m = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int u = 0; u < 3; ++u) m = std::max(m, std::fabs(r_[i][j][k][u]));
  return m;
}

double Curv4::max_abs_diff(const Curv4& other) const {
  double m = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int u = 0; u < 3; ++u)
          m = std::max(m, std::fabs(r_[i][j][k][u] - other.r_[i][j][k][u]));
  return m;
}

namespace {

// Values of A, B and their partials at one point. First index 0-based.
struct Jet {
  double a = 0.0, b = 0.0, d = 0.0;
  double a1[3] = {}, b1[3] = {};
  double a2[3][3] = {}, b2[3][3] = {};
};

Jet jet_at(const CirculantMetric& m, const Point& p, bool second_order) {
  m.require_in_domain(p);
  Jet j;
  j.a = m.A().eval(p);
  j.b = m.B().eval(p);
  j.d = (j.a - j.b) * (j.a + 2.0 * j.b);
  for (int i = 1; i <= 3; ++i) {
    j.a1[i - 1] = m.dA(i).eval(p);
    j.b1[i - 1] = m.dB(i).eval(p);
  }
  if (second_order) {
    for (int i = 1; i <= 3; ++i)
      for (int k = 1; k <= 3; ++k) {
        j.a2[i - 1][k - 1] = m.d2A(i, k).eval(p);
        j.b2[i - 1][k - 1] = m.d2B(i, k).eval(p);
      }
  }
  return j;
}

// d_i g_{ak}: A_i on the diagonal, B_i off it.
inline double dg(const Jet& j, int i, int a, int k) {
  return (a == k) ? j.a1[i] : j.b1[i];
}

// d_i d_j g_{ak}.
inline double d2g(const Jet& j, int i, int jj, int a, int k) {
  return (a == k) ? j.a2[i][jj] : j.b2[i][jj];
}

// Inverse metric entry and its partial, from the closed form
// g^{ha} = N_{ha}/D, N diagonal a+b, off-diagonal -b, D = (a-b)(a+2b).
inline double ginv(const Jet& j, int h, int a) {
  return ((h == a) ? (j.a + j.b) : -j.b) / j.d;
}

inline double dginv(const Jet& j, int i, int h, int a) {
  double n = (h == a) ? (j.a + j.b) : -j.b;
  double dn = (h == a) ? (j.a1[i] + j.b1[i]) : -j.b1[i];
  double dd = (j.a1[i] - j.b1[i]) * (j.a + 2.0 * j.b) +
              (j.a - j.b) * (j.a1[i] + 2.0 * j.b1[i]);
  return (dn * j.d - n * dd) / (j.d * j.d);
}

Christoffel christoffel_from_jet(const Jet& j) {
  Christoffel c;
  for (int h = 0; h < 3; ++h)
    for (int i = 0; i < 3; ++i)
      for (int k = i; k < 3; ++k) {
        double s = 0.0;
        for (int a = 0; a < 3; ++a)
          s += ginv(j, h, a) * (dg(j, i, a, k) + dg(j, k, a, i) - dg(j, a, i, k));
        c.g[h][i][k] = 0.5 * s;
        c.g[h][k][i] = c.g[h][i][k];
      }
  return c;
}

Curv4 lower(const Curv13& r13, double a, double b) {
  // R(x,y,z,u) = g(R(x,y)z, u) with R(d_i, d_j) d_k = R^h_{kij} d_h.
  Curv4 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int u = 0; u < 3; ++u) {
          double s = 0.0;
          for (int h = 0; h < 3; ++h)
            s += r13.r[h][k][i][j] * ((h == u) ? a : b);
          t.at(i, j, k, u) = s;
        }
  return t;
}

}  // namespace

Christoffel christoffel_at(const CirculantMetric& m, const Point& p) {
  return christoffel_from_jet(jet_at(m, p, /*second_order=*/false));
}

CurvaturePair curvature_at(const CirculantMetric& m, const Point& p) {
  Jet j = jet_at(m, p, /*second_order=*/true);
  Christoffel gam = christoffel_from_jet(j);

  // dgam[l][h][i][k] = d_l Gamma^h_{ik}, from the product rule on
  // Gamma^h_{ik} = (1/2) g^{ha} (d_i g_{ak} + d_k g_{ai} - d_a g_{ik}).
  double dgam[3][3][3][3];
  for (int l = 0; l < 3; ++l)
    for (int h = 0; h < 3; ++h)
      for (int i = 0; i < 3; ++i)
        for (int k = i; k < 3; ++k) {
          double s = 0.0;
          for (int a = 0; a < 3; ++a) {
            double t = dg(j, i, a, k) + dg(j, k, a, i) - dg(j, a, i, k);
            double dt = d2g(j, i, l, a, k) + d2g(j, k, l, a, i) - d2g(j, a, l, i, k);
            s += dginv(j, l, h, a) * t + ginv(j, h, a) * dt;
          }
          dgam[l][h][i][k] = 0.5 * s;
          dgam[l][h][k][i] = dgam[l][h][i][k];
        }

  CurvaturePair out;
  for (int h = 0; h < 3; ++h)
    for (int i = 0; i < 3; ++i)
      for (int jj = 0; jj < 3; ++jj)
        for (int k = 0; k < 3; ++k) {
          double s = dgam[jj][h][i][k] - dgam[k][h][i][jj];
          for (int t = 0; t < 3; ++t)
            s += gam.g[t][i][k] * gam.g[h][t][jj] - gam.g[t][i][jj] * gam.g[h][t][k];
          out.curv13.r[h][i][jj][k] = s;
        }
  out.curv4 = lower(out.curv13, j.a, j.b);
  return out;
}

Christoffel fd_christoffel(const CirculantMetric& m, const Point& p, double h) {
  m.require_in_domain(p);
  Jet j;
  j.a = m.A().eval(p);
  j.b = m.B().eval(p);
  j.d = (j.a - j.b) * (j.a + 2.0 * j.b);
  for (int i = 1; i <= 3; ++i) {
    j.a1[i - 1] = (m.A().eval(p.shifted(i, h)) - m.A().eval(p.shifted(i, -h))) / (2.0 * h);
    j.b1[i - 1] = (m.B().eval(p.shifted(i, h)) - m.B().eval(p.shifted(i, -h))) / (2.0 * h);
  }
  return christoffel_from_jet(j);
}

Curv4 fd_curvature_oracle(const CirculantMetric& m, const Point& p, double h) {
  // Derivative terms: central differences of christoffel_at.
  Christoffel dgam[3];
  for (int l = 1; l <= 3; ++l) {
    Christoffel plus = christoffel_at(m, p.shifted(l, h));
    Christoffel minus = christoffel_at(m, p.shifted(l, -h));
    for (int hh = 0; hh < 3; ++hh)
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
          dgam[l - 1].g[hh][i][k] = (plus.g[hh][i][k] - minus.g[hh][i][k]) / (2.0 * h);
  }
  // Product terms: Christoffel symbols from FD partials of g.
  Christoffel gam = fd_christoffel(m, p, 0.1 * h);

  Curv13 r13;
  for (int hh = 0; hh < 3; ++hh)
    for (int i = 0; i < 3; ++i)
      for (int jj = 0; jj < 3; ++jj)
        for (int k = 0; k < 3; ++k) {
          double s = dgam[jj].g[hh][i][k] - dgam[k].g[hh][i][jj];
          for (int t = 0; t < 3; ++t)
            s += gam.g[t][i][k] * gam.g[hh][t][jj] - gam.g[t][i][jj] * gam.g[hh][t][k];
          r13.r[hh][i][jj][k] = s;
        }
  MetricAtPoint g = m.at(p);
  return lower(r13, g.a, g.b);
}

ClosedFormReport closed_form_components(const CirculantMetric& m, const Point& p,
                                        double tolerance) {
  Jet j = jet_at(m, p, /*second_order=*/true);
  const double A = j.a, B = j.b, D = j.d;
  const double A1 = j.a1[0], A2 = j.a1[1], A3 = j.a1[2];
  const double B1 = j.b1[0], B2 = j.b1[1], B3 = j.b1[2];
  const double A11 = j.a2[0][0], A22 = j.a2[1][1], A33 = j.a2[2][2];
  const double A12 = j.a2[0][1], A13 = j.a2[0][2], A23 = j.a2[1][2];
  const double B11 = j.b2[0][0], B22 = j.b2[1][1], B33 = j.b2[2][2];
  const double B12 = j.b2[0][1], B13 = j.b2[0][2], B23 = j.b2[1][2];
  const double B21 = B12, B31 = B13;

  ClosedFormReport rep;
  rep.tolerance = tolerance;
  rep.printed.r1212 =
      0.5 * (2.0 * B21 - A11 - A22) +
      (A + B) / (4.0 * D) *
          (2.0 * A3 * B2 - A3 * A3 + (B1 - B2 - B3) * (B1 + B2 - B3)) -
      B / (4.0 * D) *
          (2.0 * A1 * (B1 + B2 - B3) - 2.0 * B2 * (B1 + B2 - B3) -
           2.0 * A1 * A3 + 2.0 * A3 * B2);
  rep.printed.r1313 =
      0.5 * (2.0 * B31 - A11 - A33) +
      (A + B) / (4.0 * D) *
          (2.0 * A2 * B3 - A2 * A2 + (-B1 + B2 + B3) * (-B1 + B2 - B3)) -
      B / (4.0 * D) *
          (2.0 * A1 * (B1 - B2 + B3) - 2.0 * B3 * (B1 - B2 + B3) -
           2.0 * A1 * A2 + 2.0 * A2 * B3);
  rep.printed.r2323 =
      0.5 * (2.0 * B23 - A22 - A33) +
      (A + B) / (4.0 * D) *
          (2.0 * B3 * A1 - A1 * A1 + (B1 - B2 + B3) * (B1 - B2 - B3)) -
      B / (4.0 * D) *
          (2.0 * A2 * (-B1 + B2 + B3) - 2.0 * B3 * (-B1 + B2 + B3) -
           2.0 * A1 * A2 + 2.0 * A1 * B3);
  rep.printed.r1213 =
      0.5 * (B21 + B31 - B11 - A23) +
      (A + B) / (4.0 * D) *
          (A1 * (B2 - B3 + B1) + 2.0 * B3 * (-B1 - B2 + B3) + A2 * A3) -
      B / (4.0 * D) *
          (A1 * A1 + A2 * A2 + A3 * A3 + 2.0 * A1 * (A2 - B3) - 2.0 * A2 * B3 -
           2.0 * A3 * (B1 - B3) + (B1 - B2 - B3) * (B1 + B2 - B3));
  rep.printed.r1223 =
      0.5 * (B22 - B12 - B23 + A13) +
      (A + B) / (4.0 * D) *
          (A2 * (B2 + B3 - B1) - (2.0 * B3 - A1) * (2.0 * B2 - A3)) -
      B / (4.0 * D) *
          (-A1 * A1 + A2 * A2 + A3 * A3 + 2.0 * A1 * (B2 + B3) +
           2.0 * A2 * (B2 - B3) + 2.0 * A3 * (B3 - B1) - 4.0 * B2 * B3 +
           (B1 + B2 - B3) * (B1 - B2 - B3));
  rep.printed.r1323 =
      0.5 * (B23 - B33 + B13 - A12) +
      (A + B) / (4.0 * D) *
          ((2.0 * B2 - A1) * (2.0 * B3 - A2) - A3 * (-B1 + B2 + B3)) -
      B / (4.0 * D) *
          (A1 * A1 - A2 * A2 - A3 * A3 - 2.0 * A1 * (B2 + B3) +
           2.0 * A2 * (B1 - B2) + 2.0 * A3 * (B2 - B3) + 4.0 * B2 * B3 +
           (-B1 + B2 + B3) * (B1 - B2 + B3));

  rep.pipeline = curvature_at(m, p).curv4.components();
  auto pr = rep.printed.as_array();
  auto pl = rep.pipeline.as_array();
  for (int k = 0; k < 6; ++k) {
    rep.deviation[k] = std::fabs(pr[k] - pl[k]) / (1.0 + std::fabs(pl[k]));
    rep.flagged[k] = rep.deviation[k] > tolerance;
    rep.max_deviation = std::max(rep.max_deviation, rep.deviation[k]);
  }
  return rep;
}

}  // namespace geomq
