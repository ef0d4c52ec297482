#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/SparseCholesky>

#include "polydtn/error.hpp"
#include "polydtn/network.hpp"
#include "polydtn/simd/kernels.hpp"

namespace polydtn {

struct LaplacianSolver::Impl {
  SolveOptions options;
  Eigen::Index size = 0;
  Eigen::SparseMatrix<double> a;

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;

  // CSR copy for the iterative path.
  std::vector<std::int64_t> row_ptr;
  std::vector<std::int32_t> col;
  std::vector<double> val;
  std::vector<double> inv_diag;

  simd::CsrView csr() const {
    return {static_cast<std::size_t>(size), row_ptr.data(), col.data(), val.data()};
  }

  // Jacobi-preconditioned CG for one right-hand side. Returns the relative
  // residual reached.
  double pcg(const double* b, double* x, std::size_t& iterations) const {
    const auto& k = simd::active();
    const auto n = static_cast<std::size_t>(size);
    std::vector<double> r(b, b + n), z(n), p(n), q(n);
    std::fill(x, x + n, 0.0);
    const double bnorm = std::sqrt(k.dot(b, b, n));
    if (bnorm == 0.0) {
      iterations = 0;
      return 0.0;
    }
    k.hadamard(inv_diag.data(), r.data(), z.data(), n);
    p = z;
    double rz = k.dot(r.data(), z.data(), n);
    const std::size_t max_it = options.max_iterations ? options.max_iterations : std::max<std::size_t>(1000, 10 * n);
    const simd::CsrView view = csr();
    double rel = 1.0;
    std::size_t it = 0;
    for (; it < max_it; ++it) {
      k.spmv(view, p.data(), q.data());
      const double pq = k.dot(p.data(), q.data(), n);
      if (!(pq > 0.0)) throw NumericalFailure("conjugate gradients: matrix is not positive definite");
      const double alpha = rz / pq;
      k.axpy(alpha, p.data(), x, n);
      k.axpy(-alpha, q.data(), r.data(), n);
      rel = std::sqrt(k.dot(r.data(), r.data(), n)) / bnorm;
      if (rel <= options.rel_tol) {
        ++it;
        break;
      }
      k.hadamard(inv_diag.data(), r.data(), z.data(), n);
      const double rz_new = k.dot(r.data(), z.data(), n);
      k.xpay(z.data(), rz_new / rz, p.data(), n);
      rz = rz_new;
    }
    iterations = it;
    if (rel > options.rel_tol) {
      throw NumericalFailure("conjugate gradients did not converge in " + std::to_string(max_it) +
                             " iterations (relative residual " + std::to_string(rel) + ")");
    }
    return rel;
  }
};

LaplacianSolver::LaplacianSolver(Eigen::SparseMatrix<double> a, SolveOptions options)
    : impl_(std::make_unique<Impl>()) {
  if (a.rows() != a.cols()) throw InvalidInput("LaplacianSolver needs a square matrix");
  impl_->options = options;
  impl_->size = a.rows();
  a.makeCompressed();
  impl_->a = std::move(a);
  if (impl_->size == 0) return;

  if (options.kind == SolverKind::Direct) {
    impl_->ldlt.compute(impl_->a);
    if (impl_->ldlt.info() != Eigen::Success) throw NumericalFailure("sparse LDL^T factorization failed");
    const auto d = impl_->ldlt.vectorD();
    double dmax = 0.0;
    for (Eigen::Index i = 0; i < d.size(); ++i) dmax = std::max(dmax, std::abs(d(i)));
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      if (!(d(i) > 1e-13 * dmax)) throw NumericalFailure("interior Laplacian block is singular");
    }
    return;
  }

  // Column-major symmetric matrix == CSR of its transpose == CSR of itself.
  const auto& m = impl_->a;
  if (m.nonZeros() > std::numeric_limits<std::int32_t>::max()) throw InvalidInput("matrix too large for CG path");
  impl_->row_ptr.assign(m.outerIndexPtr(), m.outerIndexPtr() + m.outerSize() + 1);
  impl_->col.resize(static_cast<std::size_t>(m.nonZeros()));
  for (Eigen::Index i = 0; i < m.nonZeros(); ++i) impl_->col[static_cast<std::size_t>(i)] = m.innerIndexPtr()[i];
  impl_->val.assign(m.valuePtr(), m.valuePtr() + m.nonZeros());
  impl_->inv_diag.assign(static_cast<std::size_t>(impl_->size), 0.0);
  const Eigen::VectorXd diag = m.diagonal();
  for (Eigen::Index i = 0; i < impl_->size; ++i) {
    if (!(diag(i) > 0.0)) throw NumericalFailure("non-positive diagonal in interior Laplacian block");
    impl_->inv_diag[static_cast<std::size_t>(i)] = 1.0 / diag(i);
  }
}

LaplacianSolver::~LaplacianSolver() = default;
LaplacianSolver::LaplacianSolver(LaplacianSolver&&) noexcept = default;
LaplacianSolver& LaplacianSolver::operator=(LaplacianSolver&&) noexcept = default;

Eigen::MatrixXd LaplacianSolver::solve(const Eigen::MatrixXd& rhs) const {
  if (rhs.rows() != impl_->size) throw InvalidInput("right-hand side has the wrong number of rows");
  if (impl_->size == 0) return Eigen::MatrixXd(0, rhs.cols());
  Eigen::MatrixXd x(rhs.rows(), rhs.cols());
  double worst = 0.0;
  std::size_t iterations = 0;
  if (impl_->options.kind == SolverKind::Direct) {
    x = impl_->ldlt.solve(rhs);
    for (Eigen::Index c = 0; c < rhs.cols(); ++c) {
      const double bn = rhs.col(c).norm();
      if (bn == 0.0) continue;
      worst = std::max(worst, (impl_->a * x.col(c) - rhs.col(c)).norm() / bn);
    }
  } else {
    for (Eigen::Index c = 0; c < rhs.cols(); ++c) {
      const Eigen::VectorXd b = rhs.col(c);
      Eigen::VectorXd xc(rhs.rows());
      std::size_t it = 0;
      worst = std::max(worst, impl_->pcg(b.data(), xc.data(), it));
      iterations = std::max(iterations, it);
      x.col(c) = xc;
    }
  }
  last_residual_ = worst;
  last_iterations_ = iterations;
  return x;
}

}  // namespace polydtn
