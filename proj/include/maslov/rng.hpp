#pragma once

// Deterministic random sources. Standard-library distributions are
// implementation-defined, so everything here draws from raw mt19937_64 words;
// identical seeds give identical streams on every platform.

#include <complex>
#include <random>

#include "maslov/core.hpp"

namespace maslov {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed ^ 0x9e3779b97f4a7c15ULL) {}

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Inclusive bounds.
  long uniform_int(long lo, long hi) {
    return lo + static_cast<long>(uniform() * static_cast<double>(hi - lo + 1));
  }

  // Box-Muller; the standard normal_distribution is not portable.
  double gauss() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * kPi * u2);
  }

  Complex cgauss() {
    double re = gauss();
    double im = gauss();
    return Complex(re, im);
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Haar-like random unitary: complex Ginibre sample, QR, then the Q columns
// re-phased so the R diagonal is positive (removes the QR gauge freedom).
inline ComplexMatrix random_unitary(Rng& rng, int n) {
  ComplexMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.cgauss();
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  ComplexMatrix r = q.adjoint() * g;
  for (int j = 0; j < n; ++j) {
    Complex d = r(j, j);
    double a = std::abs(d);
    if (a > 0.0) q.col(j) *= d / a;
  }
  return q;
}

// Random real symmetric matrix with entries O(scale).
inline RealMatrix random_symmetric(Rng& rng, int dim, double scale = 1.0) {
  RealMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      double v = scale * rng.gauss();
      m(i, j) = v;
      m(j, i) = v;
    }
  return m;
}

}  // namespace maslov
