#include "stressdg/bdm.hpp"

#include <cmath>

#include "stressdg/errors.hpp"
#include "stressdg/quadrature.hpp"

namespace stressdg {

namespace {

// shifted Legendre P_j(2s-1) on [0,1], the edge moment weights
double shifted_legendre(int j, double s) {
  const double t = 2.0 * s - 1.0;
  double p0 = 1.0, p1 = t;
  if (j == 0) return p0;
  for (int m = 2; m <= j; ++m) {
    const double p2 = ((2 * m - 1) * t * p1 - (m - 1) * p0) / m;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

// Interior moment weights: gradients of the degree-(m-1) scalar modes above
// the constant, then curls of bubble * degree-(m-2) modes. All evaluated in
// reference coordinates; physical gradients need J^{-T}.
struct InteriorWeights {
  // returns the physical vector weights g_l(xhat) for all interior dofs
  static void evaluate(int order, const ScalarBasis* grad_basis, const ScalarBasis* curl_basis,
                       const Eigen::Vector2d& ref, const Eigen::Matrix2d& JinvT,
                       std::vector<Eigen::Vector2d>& out) {
    out.clear();
    if (order < 2) return;
    Eigen::VectorXd v;
    Eigen::Matrix2Xd g;
    grad_basis->evaluate_with_gradients(ref, v, g);
    for (int i = 1; i < grad_basis->dimension(); ++i) out.push_back(JinvT * g.col(i));
    // bubble = l0 l1 l2 with reference barycentrics; grad via product rule
    const double x = ref.x(), y = ref.y();
    const double l0 = 1.0 - x - y;
    const double bub = l0 * x * y;
    const Eigen::Vector2d grad_bub(y * (l0 - x), x * (l0 - y));
    if (order >= 2) {
      if (curl_basis) {
        Eigen::VectorXd qv;
        Eigen::Matrix2Xd qg;
        curl_basis->evaluate_with_gradients(ref, qv, qg);
        for (int i = 0; i < curl_basis->dimension(); ++i) {
          const Eigen::Vector2d grad_bq_ref = grad_bub * qv[i] + bub * qg.col(i);
          const Eigen::Vector2d gp = JinvT * grad_bq_ref;
          out.emplace_back(gp.y(), -gp.x());  // curl of the scalar weight
        }
      } else {
        const Eigen::Vector2d gp = JinvT * grad_bub;
        out.emplace_back(gp.y(), -gp.x());
      }
    }
  }
};

}  // namespace

BdmSpace::BdmSpace(const Mesh& mesh, int order) : mesh_(&mesh), order_(order) {
  if (order < 1 || order > 3) throw ConfigError("BdmSpace: order must be in [1,3]");
  scalar_ = std::make_shared<ScalarBasis>(order);
  // weight bases for the interior moments
  std::shared_ptr<ScalarBasis> grad_basis, curl_basis;
  if (order >= 2) grad_basis = std::make_shared<ScalarBasis>(order - 1);
  if (order >= 3) curl_basis = std::make_shared<ScalarBasis>(order - 2);

  const int D = local_dim();
  const int ns = scalar_->dimension();
  const int me = dofs_per_edge();
  const EdgeRule erule = edge_rule(2 * order + 2);
  const QuadratureRule vrule = triangle_rule(2 * order + 2);

  nodal_.resize(mesh.num_elements());
  Eigen::VectorXd vals;
  Eigen::Matrix2Xd grads;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const ElementGeometry g = mesh.geometry(e);
    const Eigen::Matrix2d JinvT = g.Jinv.transpose();
    Eigen::MatrixXd V = Eigen::MatrixXd::Zero(D, D);

    // edge rows: \int_F (v . n_F) P_j(2s-1), in the face's stored orientation
    for (int le = 0; le < 3; ++le) {
      const Face& f = mesh.face(mesh.element_faces(e)[le]);
      const Eigen::Vector2d a = mesh.vertex(f.v[0]);
      const Eigen::Vector2d b = mesh.vertex(f.v[1]);
      for (int q = 0; q < erule.size(); ++q) {
        const double s = erule.points[q];
        const Eigen::Vector2d x = a + s * (b - a);
        const Eigen::Vector2d ref = g.to_reference(x);
        scalar_->evaluate(ref, vals);
        for (int j = 0; j < me; ++j) {
          const double w = erule.weights[q] * f.length * shifted_legendre(j, s);
          for (int i = 0; i < ns; ++i) {
            V(le * me + j, i) += w * f.normal.x() * vals[i];
            V(le * me + j, ns + i) += w * f.normal.y() * vals[i];
          }
        }
      }
    }
    // interior rows
    if (order >= 2) {
      std::vector<Eigen::Vector2d> weights;
      for (int q = 0; q < vrule.size(); ++q) {
        const double w = vrule.weights[q] * g.detJ;
        scalar_->evaluate(vrule.points[q], vals);
        InteriorWeights::evaluate(order, grad_basis.get(), curl_basis.get(), vrule.points[q],
                                  JinvT, weights);
        for (size_t l = 0; l < weights.size(); ++l) {
          for (int i = 0; i < ns; ++i) {
            V(3 * me + static_cast<int>(l), i) += w * weights[l].x() * vals[i];
            V(3 * me + static_cast<int>(l), ns + i) += w * weights[l].y() * vals[i];
          }
        }
      }
    }

    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(V);
    const double cond = svd.singularValues()(0) / svd.singularValues().tail(1)(0);
    max_cond_ = std::max(max_cond_, cond);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(V);
    if (!lu.isInvertible())
      throw SolverError("BdmSpace: dof functionals not unisolvent on element " +
                        std::to_string(e));
    nodal_[e] = lu.inverse();
  }
}

int BdmSpace::global_dof(int e, int local) const {
  const int me = dofs_per_edge();
  if (local < 3 * me) {
    const int le = local / me;
    const int j = local % me;
    return mesh_->element_faces(e)[le] * me + j;
  }
  return mesh_->num_faces() * me + e * interior_dofs_per_element() + (local - 3 * me);
}

Eigen::Vector2d BdmField::value(int e, const Eigen::Vector2d& ref) const {
  const BdmSpace& sp = *space_;
  const int D = sp.local_dim();
  const int ns = sp.scalar_basis().dimension();
  Eigen::VectorXd local(D);
  for (int l = 0; l < D; ++l) local[l] = coeffs[sp.global_dof(e, l)];
  const Eigen::VectorXd rep = sp.nodal_coeffs(e) * local;
  Eigen::VectorXd v;
  sp.scalar_basis().evaluate(ref, v);
  return {rep.head(ns).dot(v), rep.tail(ns).dot(v)};
}

double BdmField::divergence(int e, const Eigen::Vector2d& ref) const {
  const BdmSpace& sp = *space_;
  const int D = sp.local_dim();
  const int ns = sp.scalar_basis().dimension();
  Eigen::VectorXd local(D);
  for (int l = 0; l < D; ++l) local[l] = coeffs[sp.global_dof(e, l)];
  const Eigen::VectorXd rep = sp.nodal_coeffs(e) * local;
  Eigen::VectorXd v;
  Eigen::Matrix2Xd g;
  sp.scalar_basis().evaluate_with_gradients(ref, v, g);
  const Eigen::Matrix2d JinvT = sp.mesh().geometry(e).Jinv.transpose();
  const Eigen::Matrix2Xd gp = JinvT * g;
  return rep.head(ns).dot(gp.row(0).transpose()) + rep.tail(ns).dot(gp.row(1).transpose());
}

BdmField bdm_interpolate(const std::function<Eigen::Vector2d(const Eigen::Vector2d&)>& v,
                         std::shared_ptr<const BdmSpace> space, int quad_degree) {
  const BdmSpace& sp = *space;
  const Mesh& mesh = sp.mesh();
  const int m = sp.order();
  const int dq = quad_degree >= 0 ? quad_degree : 2 * m + 6;
  const int me = sp.dofs_per_edge();
  BdmField out(std::move(space));

  const EdgeRule erule = edge_rule(dq);
  for (int fid = 0; fid < mesh.num_faces(); ++fid) {
    const Face& f = mesh.face(fid);
    const Eigen::Vector2d a = mesh.vertex(f.v[0]);
    const Eigen::Vector2d b = mesh.vertex(f.v[1]);
    for (int q = 0; q < erule.size(); ++q) {
      const double s = erule.points[q];
      const double vn = v(a + s * (b - a)).dot(f.normal);
      for (int j = 0; j < me; ++j)
        out.coeffs[fid * me + j] += erule.weights[q] * f.length * shifted_legendre(j, s) * vn;
    }
  }
  if (m >= 2) {
    const ScalarBasis grad_basis(m - 1);
    std::shared_ptr<ScalarBasis> curl_basis;
    if (m >= 3) curl_basis = std::make_shared<ScalarBasis>(m - 2);
    const QuadratureRule vrule = triangle_rule(dq);
    const int base = mesh.num_faces() * me;
    const int nint = sp.interior_dofs_per_element();
    std::vector<Eigen::Vector2d> weights;
    for (int e = 0; e < mesh.num_elements(); ++e) {
      const ElementGeometry g = mesh.geometry(e);
      const Eigen::Matrix2d JinvT = g.Jinv.transpose();
      for (int q = 0; q < vrule.size(); ++q) {
        const double w = vrule.weights[q] * g.detJ;
        const Eigen::Vector2d vx = v(g.to_physical(vrule.points[q]));
        InteriorWeights::evaluate(m, &grad_basis, curl_basis.get(), vrule.points[q], JinvT,
                                  weights);
        for (int l = 0; l < nint; ++l) out.coeffs[base + e * nint + l] += w * vx.dot(weights[l]);
      }
    }
  }
  return out;
}

Eigen::SparseMatrix<double> bdm_mass_matrix(const BdmSpace& sp) {
  const Mesh& mesh = sp.mesh();
  const int D = sp.local_dim();
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(mesh.num_elements() * D * D);
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const double detJ = mesh.geometry(e).detJ;
    const Eigen::MatrixXd& C = sp.nodal_coeffs(e);
    // component representation is reference-orthonormal: local mass = detJ C^T C
    const Eigen::MatrixXd local = detJ * C.transpose() * C;
    for (int a = 0; a < D; ++a)
      for (int b = 0; b < D; ++b)
        trips.emplace_back(sp.global_dof(e, a), sp.global_dof(e, b), local(a, b));
  }
  Eigen::SparseMatrix<double> M(sp.num_dofs(), sp.num_dofs());
  M.setFromTriplets(trips.begin(), trips.end());
  return M;
}

Eigen::SparseMatrix<double> bdm_divergence_matrix(const BdmSpace& sp) {
  const Mesh& mesh = sp.mesh();
  const int m = sp.order();
  const int D = sp.local_dim();
  const int ns = sp.scalar_basis().dimension();
  const ScalarBasis multiplier(m == 1 ? 1 : m - 1);  // P_{m-1}; P_0 handled below
  const bool p0_multiplier = (m == 1);
  const int nm = p0_multiplier ? 1 : multiplier.dimension();

  const QuadratureRule rule = triangle_rule(2 * m);
  const BasisTable tab(sp.scalar_basis(), rule.points);
  const BasisTable mtab(multiplier, rule.points);
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(mesh.num_elements() * nm * D);
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const ElementGeometry g = mesh.geometry(e);
    const Eigen::Matrix2d JinvT = g.Jinv.transpose();
    const Eigen::MatrixXd& C = sp.nodal_coeffs(e);
    Eigen::MatrixXd local = Eigen::MatrixXd::Zero(nm, D);
    for (int q = 0; q < rule.size(); ++q) {
      const double w = rule.weights[q] * g.detJ;
      Eigen::Matrix2Xd gp(2, ns);
      gp.row(0) = tab.gx.col(q).transpose();
      gp.row(1) = tab.gy.col(q).transpose();
      gp = JinvT * gp;
      Eigen::VectorXd div_rep(D);  // divergence of each representation member
      div_rep.head(ns) = gp.row(0).transpose();
      div_rep.tail(ns) = gp.row(1).transpose();
      const Eigen::VectorXd div_nodal = C.transpose() * div_rep;
      for (int a = 0; a < nm; ++a) {
        const double eta = p0_multiplier ? (q == 0 ? 0.0 : 0.0) + mtab.values(0, q) * 0.0 + std::sqrt(2.0) : mtab.values(a, q);
        local.row(a) += (w * eta) * div_nodal.transpose();
      }
    }
    for (int a = 0; a < nm; ++a)
      for (int l = 0; l < D; ++l)
        trips.emplace_back(e * nm + a, sp.global_dof(e, l), local(a, l));
  }
  Eigen::SparseMatrix<double> B(mesh.num_elements() * nm, sp.num_dofs());
  B.setFromTriplets(trips.begin(), trips.end());
  return B;
}

Eigen::VectorXd bdm_moment_vector(const BdmSpace& sp, const PiecewiseVectorField& w) {
  const Mesh& mesh = sp.mesh();
  const int D = sp.local_dim();
  const int ns = sp.scalar_basis().dimension();
  const QuadratureRule rule = triangle_rule(sp.order() + w.degree() + 2);
  const BasisTable tab(sp.scalar_basis(), rule.points);
  Eigen::VectorXd f = Eigen::VectorXd::Zero(sp.num_dofs());
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const ElementGeometry g = mesh.geometry(e);
    const Eigen::MatrixXd& C = sp.nodal_coeffs(e);
    Eigen::VectorXd local = Eigen::VectorXd::Zero(D);
    for (int q = 0; q < rule.size(); ++q) {
      const double wq = rule.weights[q] * g.detJ;
      const Eigen::Vector2d wx = w.value(e, rule.points[q]);
      Eigen::VectorXd rep(D);
      rep.head(ns) = wx.x() * tab.values.col(q);
      rep.tail(ns) = wx.y() * tab.values.col(q);
      local += wq * (C.transpose() * rep);
    }
    for (int l = 0; l < D; ++l) f[sp.global_dof(e, l)] += local[l];
  }
  return f;
}

}  // namespace stressdg
