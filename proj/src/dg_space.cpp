#include "stressdg/dg_space.hpp"

#include "stressdg/errors.hpp"

namespace stressdg {

BasisTable::BasisTable(const ScalarBasis& basis, const std::vector<Eigen::Vector2d>& points) {
  const int n = basis.dimension();
  const int q = static_cast<int>(points.size());
  values.resize(n, q);
  gx.resize(n, q);
  gy.resize(n, q);
  Eigen::VectorXd v;
  Eigen::Matrix2Xd g;
  for (int j = 0; j < q; ++j) {
    basis.evaluate_with_gradients(points[j], v, g);
    values.col(j) = v;
    gx.col(j) = g.row(0).transpose();
    gy.col(j) = g.row(1).transpose();
  }
}

StressSpace::StressSpace(const Mesh& mesh, int degree)
    : mesh_(&mesh), degree_(degree), basis_(degree) {}

Eigen::Matrix2d StressField::value(int e, const Eigen::Vector2d& ref) const {
  const auto& sb = space_->basis().scalar;
  Eigen::VectorXd v;
  sb.evaluate(ref, v);
  const int ns = sb.dimension();
  const int off = space_->element_offset(e);
  Eigen::Matrix2d out = Eigen::Matrix2d::Zero();
  for (int c = 0; c < 3; ++c) {
    double s = 0.0;
    for (int i = 0; i < ns; ++i) s += coeffs[off + c * ns + i] * v[i];
    out += SymTensorBasis::value(c, s);
  }
  return out;
}

Eigen::Vector2d StressField::divergence(int e, const Eigen::Vector2d& ref,
                                        const Eigen::Matrix2d& Jinv_T) const {
  const auto& sb = space_->basis().scalar;
  Eigen::VectorXd v;
  Eigen::Matrix2Xd g;
  sb.evaluate_with_gradients(ref, v, g);
  const int ns = sb.dimension();
  const int off = space_->element_offset(e);
  Eigen::Vector2d out = Eigen::Vector2d::Zero();
  for (int c = 0; c < 3; ++c) {
    Eigen::Vector2d gsum = Eigen::Vector2d::Zero();
    for (int i = 0; i < ns; ++i) gsum += coeffs[off + c * ns + i] * g.col(i);
    out += SymTensorBasis::divergence(c, Jinv_T * gsum);
  }
  return out;
}

PiecewiseVectorField::PiecewiseVectorField(const Mesh& mesh, int degree)
    : mesh_(&mesh), degree_(degree), basis_(std::make_shared<ScalarBasis>(degree)) {
  coeffs = Eigen::VectorXd::Zero(mesh.num_elements() * dofs_per_element());
}

Eigen::Vector2d PiecewiseVectorField::value(int e, const Eigen::Vector2d& ref) const {
  Eigen::VectorXd v;
  basis_->evaluate(ref, v);
  const int ns = basis_->dimension();
  const int off = element_offset(e);
  Eigen::Vector2d out = Eigen::Vector2d::Zero();
  for (int i = 0; i < ns; ++i) {
    out.x() += coeffs[off + i] * v[i];
    out.y() += coeffs[off + ns + i] * v[i];
  }
  return out;
}

PiecewiseScalarField::PiecewiseScalarField(const Mesh& mesh, int degree)
    : mesh_(&mesh), degree_(degree), basis_(std::make_shared<ScalarBasis>(degree)) {
  coeffs = Eigen::VectorXd::Zero(mesh.num_elements() * scalar_dim());
}

double PiecewiseScalarField::value(int e, const Eigen::Vector2d& ref) const {
  Eigen::VectorXd v;
  basis_->evaluate(ref, v);
  return coeffs.segment(element_offset(e), scalar_dim()).dot(v);
}

PiecewiseVectorField l2_project_vector(
    const std::function<Eigen::Vector2d(const Eigen::Vector2d&, int)>& f, int degree,
    const Mesh& mesh, int quad_degree) {
  PiecewiseVectorField out(mesh, degree);
  const QuadratureRule rule = triangle_rule(quad_degree);
  const BasisTable tab(out.scalar_basis(), rule.points);
  const int ns = out.scalar_dim();
  // reference-orthonormal basis: element mass = |detJ| * I, so the projection
  // coefficients are plain reference-domain moments of f
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const ElementGeometry g = mesh.geometry(e);
    const int off = out.element_offset(e);
    for (int q = 0; q < rule.size(); ++q) {
      const Eigen::Vector2d fx = f(g.to_physical(rule.points[q]), e);
      const double w = rule.weights[q];
      for (int i = 0; i < ns; ++i) {
        out.coeffs[off + i] += w * fx.x() * tab.values(i, q);
        out.coeffs[off + ns + i] += w * fx.y() * tab.values(i, q);
      }
    }
  }
  return out;
}

PiecewiseScalarField l2_project_scalar(
    const std::function<double(const Eigen::Vector2d&, int)>& f, int degree, const Mesh& mesh,
    int quad_degree) {
  PiecewiseScalarField out(mesh, degree);
  const QuadratureRule rule = triangle_rule(quad_degree);
  const BasisTable tab(out.scalar_basis(), rule.points);
  const int ns = out.scalar_dim();
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const ElementGeometry g = mesh.geometry(e);
    const int off = out.element_offset(e);
    for (int q = 0; q < rule.size(); ++q) {
      const double fx = f(g.to_physical(rule.points[q]), e);
      for (int i = 0; i < ns; ++i) out.coeffs[off + i] += rule.weights[q] * fx * tab.values(i, q);
    }
  }
  return out;
}

Eigen::Vector2d face_jump(const StressField& field, int face, const Eigen::Vector2d& x) {
  const Mesh& mesh = field.space().mesh();
  const Face& f = mesh.face(face);
  if (f.type == FaceType::Dirichlet)
    throw MeshError("face_jump: Dirichlet faces are excluded from F*");
  const ElementGeometry gk = mesh.geometry(f.elem[0]);
  Eigen::Vector2d jump = field.value(f.elem[0], gk.to_reference(x)) * f.normal;
  if (!f.is_boundary()) {
    const ElementGeometry gk2 = mesh.geometry(f.elem[1]);
    jump -= field.value(f.elem[1], gk2.to_reference(x)) * f.normal;
  }
  return jump;
}

Eigen::Vector2d face_average_kdiv(const StressField& field, int face, const Eigen::Vector2d& x) {
  const Mesh& mesh = field.space().mesh();
  const Face& f = mesh.face(face);
  if (f.type == FaceType::Dirichlet)
    throw MeshError("face_average_kdiv: Dirichlet faces are excluded from F*");
  const ElementGeometry gk = mesh.geometry(f.elem[0]);
  Eigen::Vector2d avg =
      mesh.kappa(f.elem[0]) *
      field.divergence(f.elem[0], gk.to_reference(x), gk.Jinv.transpose());
  if (f.is_boundary()) return avg;
  const ElementGeometry gk2 = mesh.geometry(f.elem[1]);
  avg += mesh.kappa(f.elem[1]) *
         field.divergence(f.elem[1], gk2.to_reference(x), gk2.Jinv.transpose());
  return 0.5 * avg;
}

}  // namespace stressdg
