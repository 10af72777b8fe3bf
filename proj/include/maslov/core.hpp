#pragma once

// Shared scalar/matrix aliases, the error taxonomy and the tolerance record
// used across the library. Everything operates on small dense matrices
// (envelope: n <= 32, i.e. 64x64 symplectic matrices).

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace maslov {

using Complex = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

class Error : public std::runtime_error {
 public:
  enum class Code {
    kInvalidArgument,
    kDimensionMismatch,
    kNotFinite,
    kNonHermitian,
    kNotSymmetric,
    kNotUnitary,
    kNotOrthogonal,
    kSingular,
    kNoConvergence,
    kBranchCutEigenvalue,
    kRankDeficient,
    kNotLagrangian,
    kNotSymplectic,
    kLiftMismatch,
    kNotTransversal,
    kSearchExhausted,
    kNearThreshold,
    kNonIntegerIndex,
    kStepTooCoarse,
    kNotClosed,
    kNotUnitaryPath,
    kDriftTooLarge,
    kMonodromyRelationViolated,
    kNonGenericMonodromy,
    kProjectionResidualTooLarge,
    kIdentityViolated,
    kSchema,
    kIo,
  };

  Error(Code code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Code code() const { return code_; }

 private:
  Code code_;
};

inline void require(bool condition, Error::Code code, const std::string& message) {
  if (!condition) throw Error(code, message);
}

// Relative tolerances unless stated otherwise. A single record is threaded
// through every operation so the CLI can override the structural tolerance
// in one place.
struct Tolerances {
  double structural = 1e-9;        // type invariants (symmetry, unitarity, ...)
  double reconstruction = 1e-10;   // decomposition round-trips
  double rank = 1e-9;              // singular-value threshold, relative to the largest
  double branch_cut = 1e-6;        // absolute distance of eigenvalue arguments from +-pi
  double integer_residual = 1e-6;  // absolute distance of an index from the nearest integer
  double drift = 1e-10;            // symplectic drift that triggers re-projection
  double drift_max = 1e-8;         // symplectic drift that is a hard error
  double projection = 1e-8;        // sp(n) projection residual, relative
  double identity = 1e-8;          // residual for matrix identities (conjugacy, splitting)
};

inline bool all_finite(const RealMatrix& m) { return m.allFinite(); }
inline bool all_finite(const ComplexMatrix& m) { return m.allFinite(); }

template <typename Matrix>
void require_finite(const Matrix& m, const std::string& what) {
  require(m.allFinite(), Error::Code::kNotFinite, what + ": non-finite entries");
}

// Scale used for relative residuals; never smaller than 1 so that residuals
// of near-zero matrices stay meaningful.
template <typename Matrix>
double matrix_scale(const Matrix& m) {
  return std::max(1.0, m.norm());
}

// The standard symplectic form on R^{2n}: J = (0  I; -I  0), acting on
// coordinates z = (x, p). sigma(z, z') = Jz . z' = p.x' - p'.x.
inline RealMatrix standard_form(int n) {
  require(n >= 1, Error::Code::kInvalidArgument, "standard_form: n must be positive");
  RealMatrix j = RealMatrix::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = RealMatrix::Identity(n, n);
  j.bottomLeftCorner(n, n) = -RealMatrix::Identity(n, n);
  return j;
}

// Nearest integer with a hard residual gate: indices are never rounded
// silently, a residual above the gate is an error.
inline long exact_integer(double value, double residual_gate, const std::string& what) {
  double rounded = std::nearbyint(value);
  double residual = std::abs(value - rounded);
  require(residual <= residual_gate, Error::Code::kNonIntegerIndex,
          what + ": value " + std::to_string(value) + " is " + std::to_string(residual) +
              " away from an integer (gate " + std::to_string(residual_gate) + ")");
  return static_cast<long>(rounded);
}

}  // namespace maslov
