// Orthonormal scalar polynomial bases on the reference triangle and their
// symmetric-tensor extension for the discontinuous stress space.
#pragma once

#include <vector>

#include <Eigen/Dense>

namespace stressdg {

// Dubiner-type basis of P_k on the reference triangle, L2-orthonormal there:
// \int_T phi_i phi_j = delta_ij.  Functions are ordered by total degree, so
// the first dim(P_{m}) entries span P_m for every m <= k.  Degree 0 is
// admitted for the auxiliary projection/multiplier spaces.
class ScalarBasis {
 public:
  explicit ScalarBasis(int degree);

  int degree() const { return degree_; }
  int dimension() const { return dim_; }

  // values[i] = phi_i(p)
  void evaluate(const Eigen::Vector2d& p, Eigen::VectorXd& values) const;
  // grads.col(i) = grad phi_i(p) in reference coordinates
  void evaluate_with_gradients(const Eigen::Vector2d& p, Eigen::VectorXd& values,
                               Eigen::Matrix2Xd& grads) const;

  static int dimension_of(int degree) { return (degree + 1) * (degree + 2) / 2; }

 private:
  int degree_;
  int dim_;
};

// Stress-space scalar factory: the admissible polynomial degrees are [1,4].
ScalarBasis scalar_basis(int degree);

// Constant symmetric 2x2 "directions" spanning S: xx, xy (symmetrized), yy.
// The tensor basis of P_k(S) on an element is E_c * phi_i with the component
// block c outermost (all xx, then xy, then yy), matching the global DoF order.
struct SymTensorBasis {
  explicit SymTensorBasis(int degree) : scalar(scalar_basis(degree)) {}

  int degree() const { return scalar.degree(); }
  int dimension() const { return 3 * scalar.dimension(); }

  static Eigen::Matrix2d component_tensor(int c);

  // tensor value of local function (c, i) at scalar value v
  static Eigen::Matrix2d value(int c, double v) { return component_tensor(c) * v; }
  // row-wise divergence given the scalar gradient g: div(E_c * phi) = E_c g
  static Eigen::Vector2d divergence(int c, const Eigen::Vector2d& g) {
    return component_tensor(c) * g;
  }
  static double trace(int c, double v) { return (c == 1) ? 0.0 : v; }

  ScalarBasis scalar;
};

// tau - (tr tau / 2) I
inline Eigen::Matrix2d deviatoric(const Eigen::Matrix2d& t) {
  Eigen::Matrix2d d = t;
  const double half_tr = 0.5 * t.trace();
  d(0, 0) -= half_tr;
  d(1, 1) -= half_tr;
  return d;
}

}  // namespace stressdg
