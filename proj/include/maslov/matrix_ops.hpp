#pragma once

// Dense spectral kernel: eigendecompositions, principal matrix logarithm and
// exponential, polar decomposition and tolerance-based rank. Backed by Eigen
// (including unsupported/MatrixFunctions for log/exp); every operation checks
// its own pre/postconditions so callers get typed errors instead of NaNs.
//
// Branch-cut policy: principal branch everywhere, eigenvalue arguments in
// (-pi, pi). Inputs with an eigenvalue argument within `branch_cut` of +-pi
// are rejected (kBranchCutEigenvalue) rather than resolved arbitrarily.

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "maslov/core.hpp"

namespace maslov {

struct SpectralDecomposition {
  RealVector values;       // ascending
  ComplexMatrix vectors;   // orthonormal columns
};

struct RealSpectralDecomposition {
  RealVector values;       // ascending
  RealMatrix vectors;      // orthonormal columns
};

struct PolarDecomposition {
  RealMatrix orthogonal;   // Q
  RealMatrix positive;     // R = (M^T M)^{1/2}, symmetric positive definite
};

inline void require_square(const ComplexMatrix& m, const std::string& what) {
  require(m.rows() == m.cols() && m.rows() > 0, Error::Code::kDimensionMismatch,
          what + ": square matrix required");
  require_finite(m, what);
}

inline void require_square(const RealMatrix& m, const std::string& what) {
  require(m.rows() == m.cols() && m.rows() > 0, Error::Code::kDimensionMismatch,
          what + ": square matrix required");
  require_finite(m, what);
}

inline SpectralDecomposition hermitian_eigen(const ComplexMatrix& m,
                                             const Tolerances& tol = {}) {
  require_square(m, "hermitian_eigen");
  require((m - m.adjoint()).norm() <= tol.structural * matrix_scale(m),
          Error::Code::kNonHermitian, "hermitian_eigen: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  require(solver.info() == Eigen::Success, Error::Code::kNoConvergence,
          "hermitian_eigen: solver failed");
  ComplexMatrix recon = solver.eigenvectors() *
                        solver.eigenvalues().asDiagonal() *
                        solver.eigenvectors().adjoint();
  require((recon - m).norm() <= 1e3 * tol.reconstruction * matrix_scale(m),
          Error::Code::kNoConvergence, "hermitian_eigen: reconstruction residual too large");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

inline RealSpectralDecomposition symmetric_eigen(const RealMatrix& m,
                                                 const Tolerances& tol = {}) {
  require_square(m, "symmetric_eigen");
  require((m - m.transpose()).norm() <= tol.structural * matrix_scale(m),
          Error::Code::kNotSymmetric, "symmetric_eigen: input is not symmetric");
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(m);
  require(solver.info() == Eigen::Success, Error::Code::kNoConvergence,
          "symmetric_eigen: solver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

inline void require_unitary(const ComplexMatrix& m, const Tolerances& tol,
                            const std::string& what) {
  require_square(m, what);
  double residual = (m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols())).norm();
  require(residual <= tol.structural * static_cast<double>(m.rows()),
          Error::Code::kNotUnitary, what + ": input is not unitary");
}

// Tr Log M for unitary M: sum_j i*arg(lambda_j) with principal arguments.
// Purely imaginary up to floating noise. Eigenvalues with an argument within
// `branch_cut` of +-pi are a branch-cut error.
inline Complex unitary_log_trace(const ComplexMatrix& m, const Tolerances& tol = {}) {
  require_unitary(m, tol, "unitary_log_trace");
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m);
  require(solver.info() == Eigen::Success, Error::Code::kNoConvergence,
          "unitary_log_trace: eigensolver failed");
  double arg_sum = 0.0;
  for (int j = 0; j < m.rows(); ++j) {
    double a = std::arg(solver.eigenvalues()(j));
    require(kPi - std::abs(a) > tol.branch_cut, Error::Code::kBranchCutEigenvalue,
            "unitary_log_trace: eigenvalue argument within " +
                std::to_string(tol.branch_cut) + " of the branch cut");
    arg_sum += a;
  }
  return Complex(0.0, arg_sum);
}

inline RealMatrix matrix_exp(const RealMatrix& m) {
  require_square(m, "matrix_exp");
  return m.exp();
}

// Principal real logarithm. Defined only when no eigenvalue lies on the
// closed negative real axis; verified by an eigenvalue pre-check, then
// computed by inverse scaling-and-squaring on the real Schur form.
inline RealMatrix real_matrix_log(const RealMatrix& m, const Tolerances& tol = {}) {
  require_square(m, "real_matrix_log");
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m.cast<Complex>());
  require(solver.info() == Eigen::Success, Error::Code::kNoConvergence,
          "real_matrix_log: eigensolver failed");
  for (int j = 0; j < m.rows(); ++j) {
    Complex lambda = solver.eigenvalues()(j);
    require(std::abs(lambda) > tol.rank, Error::Code::kSingular,
            "real_matrix_log: input is singular");
    require(kPi - std::abs(std::arg(lambda)) > tol.branch_cut,
            Error::Code::kBranchCutEigenvalue,
            "real_matrix_log: eigenvalue on or near the negative real axis");
  }
  RealMatrix log_m = m.log();
  require_finite(log_m, "real_matrix_log");
  require((log_m.exp() - m).norm() <= 1e3 * tol.reconstruction * matrix_scale(m),
          Error::Code::kNoConvergence, "real_matrix_log: exp(log) round-trip failed");
  return log_m;
}

// M = Q R with Q orthogonal and R = (M^T M)^{1/2} positive definite.
inline PolarDecomposition polar_decompose(const RealMatrix& m, const Tolerances& tol = {}) {
  require_square(m, "polar_decompose");
  Eigen::JacobiSVD<RealMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  double smax = svd.singularValues()(0);
  double smin = svd.singularValues()(m.rows() - 1);
  require(smax > 0.0 && smin > tol.rank * smax, Error::Code::kSingular,
          "polar_decompose: input is singular");
  RealMatrix q = svd.matrixU() * svd.matrixV().transpose();
  RealMatrix r = svd.matrixV() * svd.singularValues().asDiagonal() * svd.matrixV().transpose();
  require((q * r - m).norm() <= 1e3 * tol.reconstruction * matrix_scale(m),
          Error::Code::kNoConvergence, "polar_decompose: reconstruction residual too large");
  return {q, r};
}

template <typename Matrix>
int rank_with_tolerance(const Matrix& m, double rel_tol = 1e-9) {
  require(m.rows() > 0 && m.cols() > 0, Error::Code::kDimensionMismatch,
          "rank_with_tolerance: empty matrix");
  require_finite(m, "rank_with_tolerance");
  Eigen::JacobiSVD<Matrix> svd(m);
  double smax = svd.singularValues()(0);
  if (smax <= 0.0) return 0;
  int rank = 0;
  for (int j = 0; j < svd.singularValues().size(); ++j)
    if (svd.singularValues()(j) > rel_tol * smax) ++rank;
  return rank;
}

}  // namespace maslov
