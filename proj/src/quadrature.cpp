#include "stressdg/quadrature.hpp"

#include <cmath>

#include "stressdg/errors.hpp"

namespace stressdg {

namespace {

// Gauss-Legendre nodes/weights on [-1,1] via Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p0 = 0.0, p1 = 0.0;
    for (int it = 0; it < 100; ++it) {
      // evaluate P_n(t) and P_{n-1}(t)
      p0 = 1.0;
      p1 = t;
      for (int m = 2; m <= n; ++m) {
        const double p2 = ((2 * m - 1) * t * p1 - (m - 1) * p0) / m;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) {
        // one clean-up pass after convergence
        p0 = 1.0;
        p1 = t;
        for (int m = 2; m <= n; ++m) {
          const double p2 = ((2 * m - 1) * t * p1 - (m - 1) * p0) / m;
          p0 = p1;
          p1 = p2;
        }
        break;
      }
    }
    const double dp = n * (t * p1 - p0) / (t * t - 1.0);
    x[i] = -t;
    x[n - 1 - i] = t;
    w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    w[n - 1 - i] = w[i];
  }
}

void add_orbit3(QuadratureRule& r, double a, double w) {
  r.points.emplace_back(a, a);
  r.points.emplace_back(1.0 - 2.0 * a, a);
  r.points.emplace_back(a, 1.0 - 2.0 * a);
  r.weights.insert(r.weights.end(), 3, w);
}

// Collapsed Gauss-Legendre product rule; all weights positive.
QuadratureRule collapsed_rule(int degree) {
  QuadratureRule r;
  r.degree = degree;
  const int n = (degree + 3) / 2;  // 2n-1 >= degree+1 covers the Jacobian
  std::vector<double> gx, gw;
  gauss_legendre(n, gx, gw);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double a = gx[i], b = gx[j];
      r.points.emplace_back((1.0 + a) * (1.0 - b) / 4.0, (1.0 + b) / 2.0);
      r.weights.push_back(gw[i] * gw[j] * (1.0 - b) / 8.0);
    }
  }
  return r;
}

}  // namespace

QuadratureRule triangle_rule(int degree) {
  if (degree < 0 || degree > 20)
    throw ConfigError("triangle_rule: unsupported exactness degree " + std::to_string(degree));
  QuadratureRule r;
  r.degree = degree;
  switch (degree) {
    case 0:
    case 1:
      r.points.emplace_back(1.0 / 3.0, 1.0 / 3.0);
      r.weights.push_back(0.5);
      return r;
    case 2:
      add_orbit3(r, 1.0 / 6.0, 1.0 / 6.0);
      return r;
    case 3:
    case 4:
      // 6-point degree-4 rule (two symmetric orbits, positive weights)
      add_orbit3(r, 0.445948490915965, 0.223381589678011 / 2.0);
      add_orbit3(r, 0.091576213509771, 0.109951743655322 / 2.0);
      return r;
    case 5:
      r.points.emplace_back(1.0 / 3.0, 1.0 / 3.0);
      r.weights.push_back(9.0 / 80.0);
      add_orbit3(r, (6.0 + std::sqrt(15.0)) / 21.0, (155.0 + std::sqrt(15.0)) / 2400.0);
      add_orbit3(r, (6.0 - std::sqrt(15.0)) / 21.0, (155.0 - std::sqrt(15.0)) / 2400.0);
      return r;
    default:
      return collapsed_rule(degree);
  }
}

EdgeRule edge_rule(int degree) {
  if (degree < 0 || degree > 20)
    throw ConfigError("edge_rule: unsupported exactness degree " + std::to_string(degree));
  const int n = degree / 2 + 1;  // 2n-1 >= degree
  std::vector<double> gx, gw;
  gauss_legendre(n, gx, gw);
  EdgeRule r;
  r.degree = degree;
  for (int i = 0; i < n; ++i) {
    r.points.push_back(0.5 * (1.0 + gx[i]));
    r.weights.push_back(0.5 * gw[i]);
  }
  return r;
}

double reference_triangle_monomial(int p, int q) {
  // p! q! / (p+q+2)! evaluated without overflow
  double v = 1.0;
  // v = q! * p! / (p+q+2)! = 1 / [ (p+1)(p+2)...(p+q+2) / q! ... ]; do it directly
  for (int i = 1; i <= q; ++i) v *= i;
  for (int i = p + 1; i <= p + q + 2; ++i) v /= i;
  return v;
}

}  // namespace stressdg
