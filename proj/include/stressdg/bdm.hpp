// Brezzi-Douglas-Marini H(div) space of order m on a triangle mesh: full
// vector P_m per element, edge-normal moment dofs shared through the global
// face orientation, interior moment dofs for m >= 2.
#pragma once

#include <memory>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "stressdg/dg_space.hpp"
#include "stressdg/mesh.hpp"

namespace stressdg {

class BdmSpace {
 public:
  BdmSpace(const Mesh& mesh, int order);

  const Mesh& mesh() const { return *mesh_; }
  int order() const { return order_; }
  int local_dim() const { return (order_ + 1) * (order_ + 2); }
  int dofs_per_edge() const { return order_ + 1; }
  int interior_dofs_per_element() const { return (order_ + 1) * (order_ - 1); }
  int num_dofs() const {
    return dofs_per_edge() * mesh_->num_faces() +
           interior_dofs_per_element() * mesh_->num_elements();
  }
  int global_dof(int e, int local) const;

  // Coefficients of the nodal basis in the component representation
  // [x-block; y-block] over the scalar basis: column l = nodal function of
  // local dof l. Also exposed: the max condition number seen on inversion.
  const Eigen::MatrixXd& nodal_coeffs(int e) const { return nodal_[e]; }
  double max_vandermonde_condition() const { return max_cond_; }

  const ScalarBasis& scalar_basis() const { return *scalar_; }

 private:
  const Mesh* mesh_;
  int order_;
  std::shared_ptr<ScalarBasis> scalar_;
  std::vector<Eigen::MatrixXd> nodal_;
  double max_cond_ = 0.0;
};

// Coefficient vector over a shared BdmSpace.
class BdmField {
 public:
  explicit BdmField(std::shared_ptr<const BdmSpace> space)
      : space_(std::move(space)), coeffs(Eigen::VectorXd::Zero(space_->num_dofs())) {}

  const BdmSpace& space() const { return *space_; }
  std::shared_ptr<const BdmSpace> space_ptr() const { return space_; }

  Eigen::Vector2d value(int e, const Eigen::Vector2d& ref) const;
  double divergence(int e, const Eigen::Vector2d& ref) const;

  Eigen::VectorXd coeffs;

 private:
  std::shared_ptr<const BdmSpace> space_;
};

// Canonical interpolant of a smooth vector field: all dof functionals
// evaluated by quadrature of the given exactness (< 0 picks 2m+6).
BdmField bdm_interpolate(const std::function<Eigen::Vector2d(const Eigen::Vector2d&)>& v,
                         std::shared_ptr<const BdmSpace> space, int quad_degree = -1);

// Global sparse mass matrix <u, v> on the BDM space.
Eigen::SparseMatrix<double> bdm_mass_matrix(const BdmSpace& space);

// Divergence coupling <div v, eta> against P_{m-1}(T_h) multipliers
// (rows = multiplier dofs, element-major).
Eigen::SparseMatrix<double> bdm_divergence_matrix(const BdmSpace& space);

// Moment vector f_j = <w, N_j> for a piecewise polynomial vector field w.
Eigen::VectorXd bdm_moment_vector(const BdmSpace& space, const PiecewiseVectorField& w);

}  // namespace stressdg
