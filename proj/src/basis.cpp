#include "stressdg/basis.hpp"

#include <cmath>

#include "stressdg/errors.hpp"

namespace stressdg {

namespace {

constexpr int kMaxDegree = 4;

// Scaled Legendre L_m(x, s) = s^m P_m(2x/s - 1), a polynomial in (x, s);
// removes the collapsed-coordinate singularity of the Dubiner construction.
// d-arrays receive d/dx and d/ds.
void scaled_legendre(int kmax, double x, double s, double* L, double* Lx, double* Ls) {
  L[0] = 1.0;
  Lx[0] = 0.0;
  Ls[0] = 0.0;
  if (kmax == 0) return;
  const double t = 2.0 * x - s;
  L[1] = t;
  Lx[1] = 2.0;
  Ls[1] = -1.0;
  for (int m = 1; m + 1 <= kmax; ++m) {
    const double c1 = (2.0 * m + 1.0) / (m + 1.0);
    const double c2 = static_cast<double>(m) / (m + 1.0);
    L[m + 1] = c1 * t * L[m] - c2 * s * s * L[m - 1];
    Lx[m + 1] = c1 * (2.0 * L[m] + t * Lx[m]) - c2 * s * s * Lx[m - 1];
    Ls[m + 1] = c1 * (-L[m] + t * Ls[m]) - c2 * (2.0 * s * L[m - 1] + s * s * Ls[m - 1]);
  }
}

// Jacobi polynomials P_n^{(alpha,0)}(b) and derivatives for n = 0..nmax.
void jacobi_alpha0(int nmax, int alpha, double b, double* P, double* dP) {
  P[0] = 1.0;
  dP[0] = 0.0;
  if (nmax == 0) return;
  P[1] = 0.5 * ((alpha + 2.0) * b + alpha);
  dP[1] = 0.5 * (alpha + 2.0);
  for (int n = 2; n <= nmax; ++n) {
    const double a1 = 2.0 * n * (n + alpha) * (2.0 * n + alpha - 2.0);
    const double a2 = (2.0 * n + alpha - 1.0) * alpha * alpha;
    const double a3 = (2.0 * n + alpha - 1.0) * (2.0 * n + alpha) * (2.0 * n + alpha - 2.0);
    const double a4 = 2.0 * (n + alpha - 1.0) * (n - 1.0) * (2.0 * n + alpha);
    P[n] = ((a2 + a3 * b) * P[n - 1] - a4 * P[n - 2]) / a1;
    dP[n] = ((a2 + a3 * b) * dP[n - 1] + a3 * P[n - 1] - a4 * dP[n - 2]) / a1;
  }
}

}  // namespace

ScalarBasis::ScalarBasis(int degree) : degree_(degree), dim_(dimension_of(degree)) {
  if (degree < 1 || degree > kMaxDegree)
    throw ConfigError("ScalarBasis: degree must be in [1," + std::to_string(kMaxDegree) +
                      "], got " + std::to_string(degree));
}

void ScalarBasis::evaluate(const Eigen::Vector2d& p, Eigen::VectorXd& values) const {
  Eigen::Matrix2Xd grads;  // computed and discarded; evaluation cost is recurrence-bound
  evaluate_with_gradients(p, values, grads);
}

void ScalarBasis::evaluate_with_gradients(const Eigen::Vector2d& p, Eigen::VectorXd& values,
                                          Eigen::Matrix2Xd& grads) const {
  const int k = degree_;
  values.resize(dim_);
  grads.resize(2, dim_);

  const double x = p.x(), y = p.y();
  const double s = 1.0 - y;  // collapsed-direction scale
  const double b = 2.0 * y - 1.0;

  double L[kMaxDegree + 1], Lx[kMaxDegree + 1], Ls[kMaxDegree + 1];
  scaled_legendre(k, x, s, L, Lx, Ls);

  double P[kMaxDegree + 1], dP[kMaxDegree + 1];
  int idx = 0;
  // degree-graded order: total degree d, then m = 0..d with n = d - m
  for (int d = 0; d <= k; ++d) {
    for (int m = 0; m <= d; ++m) {
      const int n = d - m;
      jacobi_alpha0(n, 2 * m + 1, b, P, dP);
      const double c = std::sqrt((2.0 * m + 1.0) * (m + n + 1.0));
      values[idx] = c * L[m] * P[n];
      grads(0, idx) = c * Lx[m] * P[n];
      // d/dy = -d/ds on L, +2 d/db on P
      grads(1, idx) = c * (-Ls[m] * P[n] + 2.0 * L[m] * dP[n]);
      ++idx;
    }
  }
}

Eigen::Matrix2d SymTensorBasis::component_tensor(int c) {
  Eigen::Matrix2d e = Eigen::Matrix2d::Zero();
  switch (c) {
    case 0: e(0, 0) = 1.0; break;
    case 1: e(0, 1) = e(1, 0) = 1.0; break;
    default: e(1, 1) = 1.0; break;
  }
  return e;
}

}  // namespace stressdg
