// Global layout of the discontinuous symmetric-stress space, piecewise
// polynomial field containers, element-wise L2 projections, and the face
// jump/average operators.
#pragma once

#include <functional>
#include <memory>

#include <Eigen/Dense>

#include "stressdg/basis.hpp"
#include "stressdg/mesh.hpp"
#include "stressdg/quadrature.hpp"

namespace stressdg {

// Reference basis values/gradients tabulated at a fixed point set.
struct BasisTable {
  Eigen::MatrixXd values;  // dim x npts
  Eigen::MatrixXd gx, gy;  // dim x npts, reference gradients

  BasisTable() = default;
  BasisTable(const ScalarBasis& basis, const std::vector<Eigen::Vector2d>& points);
};

// P_k(T_h, S) with element-major blocks; within an element the component
// blocks (xx, xy, yy) are contiguous, each of scalar dimension.
class StressSpace {
 public:
  StressSpace(const Mesh& mesh, int degree);

  const Mesh& mesh() const { return *mesh_; }
  int degree() const { return degree_; }
  const SymTensorBasis& basis() const { return basis_; }
  int scalar_dim() const { return basis_.scalar.dimension(); }
  int dofs_per_element() const { return 3 * scalar_dim(); }
  int num_dofs() const { return mesh_->num_elements() * dofs_per_element(); }
  int element_offset(int e) const { return e * dofs_per_element(); }
  int local_index(int component, int i) const { return component * scalar_dim() + i; }

 private:
  const Mesh* mesh_;
  int degree_;
  SymTensorBasis basis_;
};

class StressField {
 public:
  explicit StressField(const StressSpace& space)
      : space_(&space), coeffs(Eigen::VectorXd::Zero(space.num_dofs())) {}

  const StressSpace& space() const { return *space_; }

  Eigen::Matrix2d value(int e, const Eigen::Vector2d& ref) const;
  // row-wise divergence; Jinv_T = J^{-T} of the element map
  Eigen::Vector2d divergence(int e, const Eigen::Vector2d& ref,
                             const Eigen::Matrix2d& Jinv_T) const;

  Eigen::VectorXd coeffs;

 private:
  const StressSpace* space_;
};

// Element-wise vector field in P_degree(T_h, R^2); per-element layout is
// [x-component scalar coefficients, y-component scalar coefficients].
class PiecewiseVectorField {
 public:
  PiecewiseVectorField(const Mesh& mesh, int degree);

  const Mesh& mesh() const { return *mesh_; }
  int degree() const { return degree_; }
  int scalar_dim() const { return basis_->dimension(); }
  int dofs_per_element() const { return 2 * scalar_dim(); }
  int element_offset(int e) const { return e * dofs_per_element(); }
  const ScalarBasis& scalar_basis() const { return *basis_; }

  Eigen::Vector2d value(int e, const Eigen::Vector2d& ref) const;

  Eigen::VectorXd coeffs;

 private:
  const Mesh* mesh_;
  int degree_;
  std::shared_ptr<ScalarBasis> basis_;
};

class PiecewiseScalarField {
 public:
  PiecewiseScalarField(const Mesh& mesh, int degree);

  const Mesh& mesh() const { return *mesh_; }
  int degree() const { return degree_; }
  int scalar_dim() const { return basis_->dimension(); }
  int element_offset(int e) const { return e * scalar_dim(); }
  const ScalarBasis& scalar_basis() const { return *basis_; }

  double value(int e, const Eigen::Vector2d& ref) const;

  Eigen::VectorXd coeffs;

 private:
  const Mesh* mesh_;
  int degree_;
  std::shared_ptr<ScalarBasis> basis_;
};

// Element-wise L2-orthogonal projection onto P_degree(T_h, R^2); exact (and
// idempotent) on piecewise polynomials up to the quadrature exactness.
PiecewiseVectorField l2_project_vector(
    const std::function<Eigen::Vector2d(const Eigen::Vector2d&, int elem)>& f, int degree,
    const Mesh& mesh, int quad_degree);

PiecewiseScalarField l2_project_scalar(
    const std::function<double(const Eigen::Vector2d&, int elem)>& f, int degree,
    const Mesh& mesh, int quad_degree);

// Jump [[tau]] = tau_K n_K + tau_K' n_K' on interior faces, tau_K n_K on
// Neumann faces; rejects Dirichlet faces. `x` is a physical point on the face.
Eigen::Vector2d face_jump(const StressField& field, int face, const Eigen::Vector2d& x);

// Average {kappa div tau}: mean of the two one-sided values on interior
// faces, one-sided on Neumann faces; rejects Dirichlet faces.
Eigen::Vector2d face_average_kdiv(const StressField& field, int face, const Eigen::Vector2d& x);

}  // namespace stressdg
