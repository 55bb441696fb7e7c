// Quadrature rules on the reference triangle {x,y >= 0, x+y <= 1} and the
// reference edge [0,1], with a declared polynomial exactness degree.
#pragma once

#include <vector>

#include <Eigen/Dense>

namespace stressdg {

struct QuadratureRule {
  std::vector<Eigen::Vector2d> points;  // reference-triangle coordinates
  std::vector<double> weights;          // sum to 1/2 (reference area)
  int degree = 0;                       // declared exactness

  int size() const { return static_cast<int>(points.size()); }
};

struct EdgeRule {
  std::vector<double> points;   // parameters in [0,1]
  std::vector<double> weights;  // sum to 1
  int degree = 0;

  int size() const { return static_cast<int>(points.size()); }
};

// Rule integrating all polynomials of total degree <= `degree` exactly.
// Supported range: 0 <= degree <= 20. Low orders use the classical symmetric
// positive-weight rules; higher orders a collapsed Gauss-Legendre product.
QuadratureRule triangle_rule(int degree);

// Gauss-Legendre rule on [0,1], exact for degree <= `degree`, degree <= 20.
EdgeRule edge_rule(int degree);

// Exact value of the monomial integral \int_T x^p y^q over the reference
// triangle: p! q! / (p+q+2)!.  Test oracle for exactness checks.
double reference_triangle_monomial(int p, int q);

}  // namespace stressdg
