// Assembly of the interior-penalty stress system: volume terms, face
// coupling/penalty over F*, the pure-Dirichlet rank-one trace augmentation,
// and the non-homogeneous boundary data terms on the right-hand side.
#pragma once

#include <functional>
#include <optional>

#include "stressdg/dg_space.hpp"
#include "stressdg/linalg.hpp"

namespace stressdg {

struct ProblemData {
  double mu = 1e-3;           // dynamic viscosity, > 0
  double penalty_base = 10.0; // a*, full penalty a = a* k^2

  // Body force F(x) on element `elem` (element index carries the subdomain
  // branch for piecewise-defined data).
  std::function<Eigen::Vector2d(const Eigen::Vector2d&, int elem)> body_force;
  // Velocity data on the Dirichlet boundary.
  std::function<Eigen::Vector2d(const Eigen::Vector2d&)> dirichlet_velocity;
  // Traction data on the Neumann boundary; receives the outward normal.
  std::function<Eigen::Vector2d(const Eigen::Vector2d&, const Eigen::Vector2d&)> neumann_traction;

  // Exactness degree for data/error integrals; < 0 means the 2k+6 default.
  int data_quad_degree = -1;

  static ProblemData zero();  // F = G_D = G_N = 0

  double penalty(int degree) const { return penalty_base * degree * degree; }
  int data_degree(int degree) const {
    return data_quad_degree >= 0 ? data_quad_degree : 2 * degree + 6;
  }
};

struct LinearSystem {
  BlockSparseMatrix A;          // symmetric block matrix, rank-one excluded
  Eigen::VectorXd rhs;
  Eigen::VectorXd trace_vector; // t_i = \int tr(phi_i); empty when theta = 0
  int theta = 0;
  double penalty = 0.0;

  AugmentedOperator op() const { return AugmentedOperator{&A, trace_vector}; }
};

// Assembles the full system on the classified, permeability-equipped mesh of
// `space`. Fails if the penalty is not positive.
LinearSystem assemble(const StressSpace& space, const ProblemData& data);

// Exact stress closures used by the quadrature-level consistency check.
struct ExactStress {
  std::function<Eigen::Matrix2d(const Eigen::Vector2d&)> sigma;
  std::function<Eigen::Vector2d(const Eigen::Vector2d&)> div_sigma;
};

// max over basis test functions tau of |lhs(sigma_exact, tau) - rhs(tau)|,
// all integrals at the data quadrature degree. Quadrature-level small for
// smooth manufactured solutions, exact (to rounding) for polynomial data.
double consistency_residual(const StressSpace& space, const ProblemData& data,
                            const ExactStress& exact);

}  // namespace stressdg
