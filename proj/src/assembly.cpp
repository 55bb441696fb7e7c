#include "stressdg/assembly.hpp"

#include <array>
#include <cmath>

namespace stressdg {

namespace {

Eigen::Vector2d zero_vec2(const Eigen::Vector2d&, int) { return Eigen::Vector2d::Zero(); }

// 1/2 E_c^D : E_{c'}^D, the constant deviatoric pairing of component tensors
Eigen::Matrix3d deviatoric_pairing() {
  Eigen::Matrix3d m;
  for (int a = 0; a < 3; ++a) {
    const Eigen::Matrix2d da = deviatoric(SymTensorBasis::component_tensor(a));
    for (int b = 0; b < 3; ++b) {
      const Eigen::Matrix2d db = deviatoric(SymTensorBasis::component_tensor(b));
      m(a, b) = 0.5 * (da.array() * db.array()).sum();
    }
  }
  return m;
}

// Per-side trace tables on one face: basis values and physical gradients at
// the pulled-back quadrature points.
struct SideTrace {
  int elem = -1;
  double sign = 1.0;     // orientation of the stored face normal for this side
  double avg_weight = 1.0;
  double kappa = 1.0;
  Eigen::MatrixXd values;      // Ns x Q
  Eigen::MatrixXd gpx, gpy;    // Ns x Q physical gradients
};

SideTrace make_side(const Mesh& mesh, const ScalarBasis& basis, int elem, double sign,
                    double avg_weight, const std::vector<Eigen::Vector2d>& phys_pts) {
  SideTrace s;
  s.elem = elem;
  s.sign = sign;
  s.avg_weight = avg_weight;
  s.kappa = mesh.kappa(elem);
  const ElementGeometry g = mesh.geometry(elem);
  const Eigen::Matrix2d JinvT = g.Jinv.transpose();
  const int ns = basis.dimension();
  const int q = static_cast<int>(phys_pts.size());
  s.values.resize(ns, q);
  s.gpx.resize(ns, q);
  s.gpy.resize(ns, q);
  Eigen::VectorXd v;
  Eigen::Matrix2Xd gr;
  for (int j = 0; j < q; ++j) {
    basis.evaluate_with_gradients(g.to_reference(phys_pts[j]), v, gr);
    s.values.col(j) = v;
    const Eigen::Matrix2Xd gp = JinvT * gr;
    s.gpx.col(j) = gp.row(0).transpose();
    s.gpy.col(j) = gp.row(1).transpose();
  }
  return s;
}

// Columns: jump and {kappa div} contributions of every local dof of a side
// at one quadrature point (2 x 3Ns each).
void side_vectors(const SideTrace& s, int q, const Eigen::Vector2d& normal,
                  Eigen::MatrixXd& jmp, Eigen::MatrixXd& avg) {
  const int ns = static_cast<int>(s.values.rows());
  jmp.resize(2, 3 * ns);
  avg.resize(2, 3 * ns);
  for (int c = 0; c < 3; ++c) {
    const Eigen::Matrix2d E = SymTensorBasis::component_tensor(c);
    const Eigen::Vector2d En = E * normal;
    for (int i = 0; i < ns; ++i) {
      jmp.col(c * ns + i) = s.sign * s.values(i, q) * En;
      avg.col(c * ns + i) =
          s.avg_weight * s.kappa * (E * Eigen::Vector2d(s.gpx(i, q), s.gpy(i, q)));
    }
  }
}

std::vector<Eigen::Vector2d> face_points(const Mesh& mesh, const Face& f, const EdgeRule& rule) {
  const Eigen::Vector2d a = mesh.vertex(f.v[0]);
  const Eigen::Vector2d b = mesh.vertex(f.v[1]);
  std::vector<Eigen::Vector2d> pts(rule.size());
  for (int q = 0; q < rule.size(); ++q) pts[q] = a + rule.points[q] * (b - a);
  return pts;
}

std::vector<std::vector<int>> element_adjacency(const Mesh& mesh) {
  std::vector<std::vector<int>> adj(mesh.num_elements());
  for (int e = 0; e < mesh.num_elements(); ++e) adj[e].push_back(e);
  for (int f = 0; f < mesh.num_faces(); ++f) {
    const Face& fc = mesh.face(f);
    if (fc.type != FaceType::Interior) continue;
    adj[fc.elem[0]].push_back(fc.elem[1]);
    adj[fc.elem[1]].push_back(fc.elem[0]);
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

}  // namespace

ProblemData ProblemData::zero() {
  ProblemData d;
  d.body_force = zero_vec2;
  d.dirichlet_velocity = [](const Eigen::Vector2d&) { return Eigen::Vector2d::Zero(); };
  d.neumann_traction = [](const Eigen::Vector2d&, const Eigen::Vector2d&) {
    return Eigen::Vector2d::Zero();
  };
  return d;
}

LinearSystem assemble(const StressSpace& space, const ProblemData& data) {
  const Mesh& mesh = space.mesh();
  const int k = space.degree();
  const double pen = data.penalty(k);
  if (!(pen > 0.0)) throw ConfigError("assemble: penalty must be positive");
  if (!(data.mu > 0.0)) throw ConfigError("assemble: viscosity must be positive");

  const ScalarBasis& sb = space.basis().scalar;
  const int ns = sb.dimension();
  const int bs = 3 * ns;
  const int theta = mesh.theta();
  const Eigen::Matrix3d dev = deviatoric_pairing();

  LinearSystem sys{BlockSparseMatrix(bs, element_adjacency(mesh)),
                   Eigen::VectorXd::Zero(space.num_dofs()), Eigen::VectorXd(), theta, pen};

  // --- volume terms (bilinear rule, exact for the polynomial integrands)
  const QuadratureRule vol = triangle_rule(2 * k + 2);
  const BasisTable tab(sb, vol.points);
  Eigen::VectorXd trace_vec = Eigen::VectorXd::Zero(space.num_dofs());
  Eigen::MatrixXd local(bs, bs);
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const ElementGeometry g = mesh.geometry(e);
    const Eigen::Matrix2d JinvT = g.Jinv.transpose();
    const double kap = mesh.kappa(e);
    local.setZero();
    Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(ns, ns);
    for (int q = 0; q < vol.size(); ++q) {
      const double w = vol.weights[q] * g.detJ;
      const Eigen::VectorXd phi = tab.values.col(q);
      mass.noalias() += w * phi * phi.transpose();
      // physical gradients at this point
      Eigen::Matrix2Xd gp(2, ns);
      gp.row(0) = tab.gx.col(q).transpose();
      gp.row(1) = tab.gy.col(q).transpose();
      gp = JinvT * gp;
      std::array<Eigen::Matrix2Xd, 3> div;  // div contributions per component
      for (int c = 0; c < 3; ++c) div[c] = SymTensorBasis::component_tensor(c) * gp;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          local.block(a * ns, b * ns, ns, ns).noalias() +=
              (w * kap) * div[a].transpose() * div[b];
    }
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        if (dev(a, b) != 0.0) local.block(a * ns, b * ns, ns, ns) += dev(a, b) * mass;
    sys.A.add_block(e, e, local);

    if (theta == 1) {
      // t_i = \int tr(phi_i): only the xx and yy blocks carry trace
      const int off = space.element_offset(e);
      for (int q = 0; q < vol.size(); ++q) {
        const double w = vol.weights[q] * g.detJ;
        for (int i = 0; i < ns; ++i) {
          trace_vec[off + i] += w * tab.values(i, q);
          trace_vec[off + 2 * ns + i] += w * tab.values(i, q);
        }
      }
    }
  }
  if (theta == 1) sys.trace_vector = std::move(trace_vec);

  // --- face coupling and penalty over F* (matrix part)
  const EdgeRule edge = edge_rule(2 * k + 2);
  Eigen::MatrixXd jmp[2], avg[2];
  for (int fid : mesh.star_faces()) {
    const Face& f = mesh.face(fid);
    const int nsides = f.is_boundary() ? 1 : 2;
    const double avg_w = f.is_boundary() ? 1.0 : 0.5;
    const auto pts = face_points(mesh, f, edge);
    std::array<SideTrace, 2> side;
    side[0] = make_side(mesh, sb, f.elem[0], +1.0, avg_w, pts);
    if (nsides == 2) side[1] = make_side(mesh, sb, f.elem[1], -1.0, avg_w, pts);
    const double pen_coef = pen / (mesh.gamma(fid) * f.length);

    std::array<std::array<Eigen::MatrixXd, 2>, 2> blocks;
    for (int s = 0; s < nsides; ++s)
      for (int t = 0; t < nsides; ++t) blocks[s][t] = Eigen::MatrixXd::Zero(bs, bs);

    for (int q = 0; q < edge.size(); ++q) {
      const double w = edge.weights[q] * f.length;
      for (int s = 0; s < nsides; ++s) side_vectors(side[s], q, f.normal, jmp[s], avg[s]);
      for (int s = 0; s < nsides; ++s)
        for (int t = 0; t < nsides; ++t)
          blocks[s][t].noalias() +=
              w * (-jmp[s].transpose() * avg[t] - avg[s].transpose() * jmp[t] +
                   pen_coef * jmp[s].transpose() * jmp[t]);
    }
    for (int s = 0; s < nsides; ++s)
      for (int t = 0; t < nsides; ++t) sys.A.add_block(side[s].elem, side[t].elem, blocks[s][t]);
  }

  // --- right-hand side (data rule)
  const int dq = data.data_degree(k);
  const QuadratureRule vdata = triangle_rule(dq);
  const BasisTable dtab(sb, vdata.points);
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const ElementGeometry g = mesh.geometry(e);
    const Eigen::Matrix2d JinvT = g.Jinv.transpose();
    const double kap = mesh.kappa(e);
    const int off = space.element_offset(e);
    for (int q = 0; q < vdata.size(); ++q) {
      const double w = vdata.weights[q] * g.detJ;
      const Eigen::Vector2d F = data.body_force(g.to_physical(vdata.points[q]), e);
      Eigen::Matrix2Xd gp(2, ns);
      gp.row(0) = dtab.gx.col(q).transpose();
      gp.row(1) = dtab.gy.col(q).transpose();
      gp = JinvT * gp;
      for (int c = 0; c < 3; ++c) {
        const Eigen::Matrix2Xd div_c = SymTensorBasis::component_tensor(c) * gp;
        for (int i = 0; i < ns; ++i)
          sys.rhs[off + c * ns + i] -= w * kap * F.dot(div_c.col(i));
      }
    }
  }

  const EdgeRule dedge = edge_rule(dq);
  for (int fid = 0; fid < mesh.num_faces(); ++fid) {
    const Face& f = mesh.face(fid);
    const auto pts = face_points(mesh, f, dedge);

    if (f.type == FaceType::Dirichlet) {
      // <mu G_D, tau n> with the outward normal of the single neighbor
      const SideTrace s = make_side(mesh, sb, f.elem[0], +1.0, 1.0, pts);
      const int off = space.element_offset(f.elem[0]);
      for (int q = 0; q < dedge.size(); ++q) {
        const double w = dedge.weights[q] * f.length;
        const Eigen::Vector2d gd = data.dirichlet_velocity(pts[q]);
        for (int c = 0; c < 3; ++c) {
          const Eigen::Vector2d En = SymTensorBasis::component_tensor(c) * f.normal;
          const double gd_En = data.mu * gd.dot(En);
          for (int i = 0; i < ns; ++i) sys.rhs[off + c * ns + i] += w * gd_En * s.values(i, q);
        }
      }
      continue;
    }

    const int nsides = f.is_boundary() ? 1 : 2;
    const double avg_w = f.is_boundary() ? 1.0 : 0.5;
    std::array<SideTrace, 2> side;
    side[0] = make_side(mesh, sb, f.elem[0], +1.0, avg_w, pts);
    if (nsides == 2) side[1] = make_side(mesh, sb, f.elem[1], -1.0, avg_w, pts);
    const double pen_coef = pen / (mesh.gamma(fid) * f.length);

    for (int q = 0; q < dedge.size(); ++q) {
      const double w = dedge.weights[q] * f.length;
      // {kappa F}: per-side data branch, averaged on interior faces
      Eigen::Vector2d kF = side[0].kappa * data.body_force(pts[q], side[0].elem) * avg_w;
      if (nsides == 2) kF += side[1].kappa * data.body_force(pts[q], side[1].elem) * avg_w;
      for (int s = 0; s < nsides; ++s) {
        side_vectors(side[s], q, f.normal, jmp[0], avg[0]);
        const int off = space.element_offset(side[s].elem);
        for (int d = 0; d < bs; ++d) sys.rhs[off + d] += w * kF.dot(jmp[0].col(d));
        if (f.type == FaceType::Neumann) {
          const Eigen::Vector2d gn = data.neumann_traction(pts[q], f.normal);
          for (int d = 0; d < bs; ++d)
            sys.rhs[off + d] +=
                w * (-gn.dot(avg[0].col(d)) + pen_coef * gn.dot(jmp[0].col(d)));
        }
      }
    }
  }

  return sys;
}

double consistency_residual(const StressSpace& space, const ProblemData& data,
                            const ExactStress& exact) {
  const Mesh& mesh = space.mesh();
  const int k = space.degree();
  const double pen = data.penalty(k);
  const ScalarBasis& sb = space.basis().scalar;
  const int ns = sb.dimension();
  const int bs = 3 * ns;
  const int dq = data.data_degree(k);
  const int theta = mesh.theta();

  const LinearSystem sys = assemble(space, data);
  Eigen::VectorXd lhs = Eigen::VectorXd::Zero(space.num_dofs());

  // volume: 1/2 (sigma^D, tau^D) + (kappa div sigma, div tau), and the theta
  // pairing (tr sigma, 1)(tr tau, 1)
  const QuadratureRule vol = triangle_rule(dq);
  const BasisTable tab(sb, vol.points);
  double trace_integral = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const ElementGeometry g = mesh.geometry(e);
    const Eigen::Matrix2d JinvT = g.Jinv.transpose();
    const double kap = mesh.kappa(e);
    const int off = space.element_offset(e);
    for (int q = 0; q < vol.size(); ++q) {
      const double w = vol.weights[q] * g.detJ;
      const Eigen::Vector2d x = g.to_physical(vol.points[q]);
      const Eigen::Matrix2d sD = deviatoric(exact.sigma(x));
      const Eigen::Vector2d ds = exact.div_sigma(x);
      trace_integral += w * exact.sigma(x).trace();
      Eigen::Matrix2Xd gp(2, ns);
      gp.row(0) = tab.gx.col(q).transpose();
      gp.row(1) = tab.gy.col(q).transpose();
      gp = JinvT * gp;
      for (int c = 0; c < 3; ++c) {
        const Eigen::Matrix2d E = SymTensorBasis::component_tensor(c);
        const double sD_E = 0.5 * (sD.array() * E.array()).sum();
        const Eigen::Matrix2Xd div_c = E * gp;
        for (int i = 0; i < ns; ++i)
          lhs[off + c * ns + i] +=
              w * (sD_E * tab.values(i, q) + kap * ds.dot(div_c.col(i)));
      }
    }
  }
  if (theta == 1) lhs += trace_integral * sys.trace_vector;

  // faces of F*: -<{kappa div sigma}, [[tau]]> - <{kappa div tau}, [[sigma]]>
  //              + a <gamma^-1 h^-1 [[sigma]], [[tau]]>
  const EdgeRule edge = edge_rule(dq);
  Eigen::MatrixXd jmp, avg;
  for (int fid : mesh.star_faces()) {
    const Face& f = mesh.face(fid);
    const int nsides = f.is_boundary() ? 1 : 2;
    const double avg_w = f.is_boundary() ? 1.0 : 0.5;
    const auto pts = face_points(mesh, f, edge);
    std::array<SideTrace, 2> side;
    side[0] = make_side(mesh, sb, f.elem[0], +1.0, avg_w, pts);
    if (nsides == 2) side[1] = make_side(mesh, sb, f.elem[1], -1.0, avg_w, pts);
    const double pen_coef = pen / (mesh.gamma(fid) * f.length);
    for (int q = 0; q < edge.size(); ++q) {
      const double w = edge.weights[q] * f.length;
      const Eigen::Matrix2d sig = exact.sigma(pts[q]);
      // one-sided jumps cancel exactly on interior faces
      Eigen::Vector2d jump_sigma = sig * f.normal;
      if (nsides == 2) jump_sigma -= sig * f.normal;
      Eigen::Vector2d avg_kdiv = side[0].kappa * avg_w * exact.div_sigma(pts[q]);
      if (nsides == 2) avg_kdiv += side[1].kappa * avg_w * exact.div_sigma(pts[q]);
      for (int s = 0; s < nsides; ++s) {
        side_vectors(side[s], q, f.normal, jmp, avg);
        const int off = space.element_offset(side[s].elem);
        for (int d = 0; d < bs; ++d)
          lhs[off + d] += w * (-avg_kdiv.dot(jmp.col(d)) - jump_sigma.dot(avg.col(d)) +
                               pen_coef * jump_sigma.dot(jmp.col(d)));
      }
    }
  }

  return (lhs - sys.rhs).cwiseAbs().maxCoeff();
}

}  // namespace stressdg
