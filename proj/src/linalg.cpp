#include "stressdg/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace stressdg {

BlockSparseMatrix::BlockSparseMatrix(int block_size,
                                     const std::vector<std::vector<int>>& adjacency)
    : bs_(block_size) {
  const int n = static_cast<int>(adjacency.size());
  row_ptr_.assign(n + 1, 0);
  cols_of_row_ = adjacency;
  for (int r = 0; r < n; ++r) {
    if (!std::is_sorted(adjacency[r].begin(), adjacency[r].end()))
      throw ConfigError("BlockSparseMatrix: adjacency rows must be sorted");
    row_ptr_[r + 1] = row_ptr_[r] + static_cast<int>(adjacency[r].size());
  }
  col_idx_.reserve(row_ptr_[n]);
  for (const auto& row : adjacency)
    col_idx_.insert(col_idx_.end(), row.begin(), row.end());
  blocks_.assign(row_ptr_[n], Eigen::MatrixXd::Zero(bs_, bs_));
}

int BlockSparseMatrix::find_block(int r, int c) const {
  const auto begin = col_idx_.begin() + row_ptr_[r];
  const auto end = col_idx_.begin() + row_ptr_[r + 1];
  const auto it = std::lower_bound(begin, end, c);
  if (it == end || *it != c)
    throw ConfigError("BlockSparseMatrix: block (" + std::to_string(r) + "," + std::to_string(c) +
                      ") not in pattern");
  return static_cast<int>(it - col_idx_.begin());
}

void BlockSparseMatrix::add_block(int r, int c, const Eigen::MatrixXd& local) {
  blocks_[find_block(r, c)] += local;
}

Eigen::MatrixXd& BlockSparseMatrix::block(int r, int c) { return blocks_[find_block(r, c)]; }
const Eigen::MatrixXd& BlockSparseMatrix::block(int r, int c) const {
  return blocks_[find_block(r, c)];
}

void BlockSparseMatrix::multiply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
  y.setZero(dim());
  const int n = num_block_rows();
  for (int r = 0; r < n; ++r) {
    auto yr = y.segment(r * bs_, bs_);
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
      yr.noalias() += blocks_[k] * x.segment(col_idx_[k] * bs_, bs_);
  }
}

Eigen::MatrixXd BlockSparseMatrix::densify() const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(dim(), dim());
  for (int r = 0; r < num_block_rows(); ++r)
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
      d.block(r * bs_, col_idx_[k] * bs_, bs_, bs_) = blocks_[k];
  return d;
}

double BlockSparseMatrix::symmetry_defect() const {
  double max_abs = 0.0, max_asym = 0.0;
  for (int r = 0; r < num_block_rows(); ++r) {
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      const int c = col_idx_[k];
      max_abs = std::max(max_abs, blocks_[k].cwiseAbs().maxCoeff());
      const Eigen::MatrixXd diff = blocks_[k] - block(c, r).transpose();
      max_asym = std::max(max_asym, diff.cwiseAbs().maxCoeff());
    }
  }
  return max_abs > 0.0 ? max_asym / max_abs : 0.0;
}

BlockJacobiPreconditioner::BlockJacobiPreconditioner(const BlockSparseMatrix& A)
    : bs_(A.block_size()) {
  factors_.reserve(A.num_block_rows());
  for (int r = 0; r < A.num_block_rows(); ++r) factors_.emplace_back(A.block(r, r));
}

void BlockJacobiPreconditioner::apply(const Eigen::VectorXd& r, Eigen::VectorXd& z) const {
  z.resize(r.size());
  for (size_t i = 0; i < factors_.size(); ++i)
    z.segment(i * bs_, bs_) = factors_[i].solve(r.segment(i * bs_, bs_));
}

CgResult cg_solve(const LinearOperator& A, const Eigen::VectorXd& b,
                  const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>* precond,
                  const CgOptions& opts) {
  CgResult res;
  const int n = static_cast<int>(b.size());
  res.x = Eigen::VectorXd::Zero(n);
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    res.converged = true;
    return res;
  }
  Eigen::VectorXd r = b;  // r = b - A*0
  Eigen::VectorXd z(n), Ap(n);
  if (precond)
    (*precond)(r, z);
  else
    z = r;
  Eigen::VectorXd p = z;
  double rz = r.dot(z);
  if (opts.record_history) res.residual_history.push_back(1.0);
  if (opts.record_iterates) res.iterates.push_back(res.x);

  for (int it = 0; it < opts.max_iterations; ++it) {
    A(p, Ap);
    const double pAp = p.dot(Ap);
    if (!(pAp > 0.0))
      throw SolverError("cg_solve: operator not positive definite (p^T A p = " +
                            std::to_string(pAp) + ")",
                        r.norm() / bnorm);
    const double alpha = rz / pAp;
    res.x += alpha * p;
    r -= alpha * Ap;
    res.iterations = it + 1;
    const double relres = r.norm() / bnorm;
    if (opts.record_history) res.residual_history.push_back(relres);
    if (opts.record_iterates) res.iterates.push_back(res.x);
    if (relres <= opts.tol) {
      res.converged = true;
      res.relative_residual = relres;
      return res;
    }
    if (precond)
      (*precond)(r, z);
    else
      z = r;
    const double rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
  res.relative_residual = r.norm() / bnorm;
  return res;
}

CgResult cg_solve(const AugmentedOperator& op, const Eigen::VectorXd& b, const CgOptions& opts,
                  bool block_jacobi) {
  LinearOperator A = [&op](const Eigen::VectorXd& x, Eigen::VectorXd& y) { op.apply(x, y); };
  if (!block_jacobi) return cg_solve(A, b, nullptr, opts);
  BlockJacobiPreconditioner pc(*op.A);
  std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)> M =
      [&pc](const Eigen::VectorXd& r, Eigen::VectorXd& z) { pc.apply(r, z); };
  return cg_solve(A, b, &M, opts);
}

Eigen::VectorXd dense_solve_augmented(const Eigen::MatrixXd& A, const Eigen::VectorXd& t,
                                      const Eigen::VectorXd& b) {
  if (t.size() == 0) return Eigen::LDLT<Eigen::MatrixXd>(A).solve(b);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(A);
  const Eigen::VectorXd d = ldlt.vectorD();
  const double dmax = d.cwiseAbs().maxCoeff();
  if (ldlt.info() == Eigen::Success && d.minCoeff() > 1e-12 * dmax) {
    // Sherman-Morrison on the invertible base
    const Eigen::VectorXd Ainv_b = ldlt.solve(b);
    const Eigen::VectorXd Ainv_t = ldlt.solve(t);
    return Ainv_b - Ainv_t * (t.dot(Ainv_b) / (1.0 + t.dot(Ainv_t)));
  }
  // A singular on the trace mode: eliminate the rank-one via a bordered system
  const int n = static_cast<int>(A.rows());
  Eigen::MatrixXd bordered(n + 1, n + 1);
  bordered.topLeftCorner(n, n) = A;
  bordered.topRightCorner(n, 1) = t;
  bordered.bottomLeftCorner(1, n) = t.transpose();
  bordered(n, n) = -1.0;
  Eigen::VectorXd rhs(n + 1);
  rhs.head(n) = b;
  rhs(n) = 0.0;
  return Eigen::FullPivLU<Eigen::MatrixXd>(bordered).solve(rhs).head(n);
}

double dense_min_eigenvalue(const Eigen::MatrixXd& A) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

SaddleResult saddle_solve(const SaddleSystem& S, double tol) {
  const int n = static_cast<int>(S.M.rows());
  const int m = static_cast<int>(S.B.rows());
  // Jacobi-preconditioned CG for M z = r
  Eigen::VectorXd Mdiag = S.M.diagonal();
  if ((Mdiag.array() <= 0.0).any()) throw SolverError("saddle_solve: mass diagonal not positive");
  std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)> jacobi =
      [&Mdiag](const Eigen::VectorXd& r, Eigen::VectorXd& z) { z = r.cwiseQuotient(Mdiag); };
  LinearOperator Mop = [&S](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y = S.M * x; };
  CgOptions inner;
  inner.tol = std::max(tol * 1e-2, 1e-14);
  inner.max_iterations = 4 * n + 100;
  inner.record_history = false;
  auto solve_M = [&](const Eigen::VectorXd& r) {
    CgResult cr = cg_solve(Mop, r, &jacobi, inner);
    if (!cr.converged)
      throw SolverError("saddle_solve: inner mass solve stalled", cr.relative_residual);
    return cr.x;
  };

  // Schur complement S_h = B M^{-1} B^T acting on the multiplier
  LinearOperator schur = [&](const Eigen::VectorXd& lam, Eigen::VectorXd& y) {
    const Eigen::VectorXd v = solve_M(S.B.transpose() * lam);
    y = S.B * v;
  };
  const Eigen::VectorXd g = S.B * solve_M(S.rhs);
  CgOptions outer;
  outer.tol = std::max(tol, 1e-14);
  outer.max_iterations = 4 * m + 200;
  outer.record_history = false;
  SaddleResult out;
  if (g.norm() == 0.0) {
    out.multiplier = Eigen::VectorXd::Zero(m);
  } else {
    CgResult cr = cg_solve(schur, g, nullptr, outer);
    if (!cr.converged)
      throw SolverError("saddle_solve: Schur iteration breakdown", cr.relative_residual);
    out.outer_iterations = cr.iterations;
    out.multiplier = cr.x;
  }
  out.primal = solve_M(S.rhs - S.B.transpose() * out.multiplier);
  out.constraint_residual = m > 0 ? (S.B * out.primal).cwiseAbs().maxCoeff() : 0.0;
  return out;
}

}  // namespace stressdg
