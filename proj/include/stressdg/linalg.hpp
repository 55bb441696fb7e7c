// Sparse symmetric storage with element-block structure, conjugate gradients
// with optional rank-one augmentation and block-Jacobi preconditioning, dense
// desk-scale oracles, and the Schur-complement saddle solver used by the
// divergence-free velocity reconstruction.
#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "stressdg/errors.hpp"

namespace stressdg {

// Block-CSR symmetric matrix: one row of dense (bs x bs) blocks per element,
// columns = the element itself and its face neighbors.
class BlockSparseMatrix {
 public:
  // adjacency[r] = sorted column ids of row r (must contain r itself)
  BlockSparseMatrix(int block_size, const std::vector<std::vector<int>>& adjacency);

  int block_size() const { return bs_; }
  int num_block_rows() const { return static_cast<int>(row_ptr_.size()) - 1; }
  int dim() const { return num_block_rows() * bs_; }

  // accumulate `local` into block (r, c); the block must exist in the pattern
  void add_block(int r, int c, const Eigen::MatrixXd& local);
  Eigen::MatrixXd& block(int r, int c);
  const Eigen::MatrixXd& block(int r, int c) const;
  const std::vector<int>& row_cols(int r) const { return cols_of_row_[r]; }

  void multiply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const;

  Eigen::MatrixXd densify() const;
  // max |A - A^T| relative to max |A|
  double symmetry_defect() const;

 private:
  int find_block(int r, int c) const;

  int bs_;
  std::vector<int> row_ptr_;
  std::vector<int> col_idx_;
  std::vector<std::vector<int>> cols_of_row_;
  std::vector<Eigen::MatrixXd> blocks_;
};

// x -> A x + theta * (t . x) t; the rank-one trace term stays out of the
// sparse pattern (Proposition-style augmentation).
struct AugmentedOperator {
  const BlockSparseMatrix* A = nullptr;
  Eigen::VectorXd t;  // empty when inactive
  void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
    A->multiply(x, y);
    if (t.size() > 0) y += t.dot(x) * t;
  }
  Eigen::MatrixXd densify() const {
    Eigen::MatrixXd d = A->densify();
    if (t.size() > 0) d += t * t.transpose();
    return d;
  }
};

using LinearOperator = std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>;

// LDLT factors of the element-diagonal blocks.
class BlockJacobiPreconditioner {
 public:
  explicit BlockJacobiPreconditioner(const BlockSparseMatrix& A);
  void apply(const Eigen::VectorXd& r, Eigen::VectorXd& z) const;

 private:
  int bs_;
  std::vector<Eigen::LDLT<Eigen::MatrixXd>> factors_;
};

struct CgOptions {
  double tol = 1e-12;  // relative residual ||Ax-b||/||b||
  int max_iterations = 10000;
  bool record_history = true;
  bool record_iterates = false;  // memory-heavy; tests only
};

struct CgResult {
  Eigen::VectorXd x;
  bool converged = false;
  int iterations = 0;
  double relative_residual = 0.0;
  std::vector<double> residual_history;
  std::vector<Eigen::VectorXd> iterates;
};

// Preconditioned CG; pass nullptr preconditioner for the unpreconditioned
// iteration. Deterministic for fixed inputs.
CgResult cg_solve(const LinearOperator& A, const Eigen::VectorXd& b,
                  const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>* precond,
                  const CgOptions& opts);

// Convenience overload for the assembled stress system; throws SolverError on
// non-convergence (carrying the final residual).
CgResult cg_solve(const AugmentedOperator& op, const Eigen::VectorXd& b, const CgOptions& opts,
                  bool block_jacobi = true);

// Dense oracles ------------------------------------------------------------

// Solves (A + t t^T) x = b directly. Uses Sherman-Morrison around an LDLT of
// A when A is invertible; falls back to the bordered system
// [A t; t^T -1] [x; y] = [b; 0] when A is (numerically) singular, which is
// the generic situation for the pure-Dirichlet trace augmentation.
Eigen::VectorXd dense_solve_augmented(const Eigen::MatrixXd& A, const Eigen::VectorXd& t,
                                      const Eigen::VectorXd& b);

double dense_min_eigenvalue(const Eigen::MatrixXd& A);

// Saddle-point system for the mixed reconstruction: M SPD (BDM mass),
// B the divergence coupling to the multiplier space.
struct SaddleSystem {
  Eigen::SparseMatrix<double> M;  // n x n
  Eigen::SparseMatrix<double> B;  // m x n
  Eigen::VectorXd rhs;            // length n (multiplier equation is homogeneous)
};

struct SaddleResult {
  Eigen::VectorXd primal;      // length n
  Eigen::VectorXd multiplier;  // length m
  int outer_iterations = 0;
  double constraint_residual = 0.0;  // ||B primal||_inf
};

// Schur-complement CG on the multiplier with inner CG solves of M.
SaddleResult saddle_solve(const SaddleSystem& S, double tol);

}  // namespace stressdg
