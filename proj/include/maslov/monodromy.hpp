#pragma once

// Variational flows along periodic orbits and the index decomposition of
// the monodromy matrix.
//
// The flow S_t of d/dt S_t = J H''(t) S_t is integrated over [0, 2T] and
// factored as S_t = P_t e^{tX} with P 2T-periodic and X in sp(n); X comes
// from the real logarithm of S_{2T} (the log of S_T itself is in general
// not real, squaring the period removes the inverse-hyperbolic
// obstruction). The polar factors P_t = U_t e^{Y_t} then carry the
// winding number k, and the splitting ties the index of the period path
// to k and to the exponential path of X.

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "maslov/paths.hpp"

namespace maslov {

// Hessian schedule H''(t) of a quadratic (or quadratically approximated)
// Hamiltonian over one period of an orbit. Three kinds:
//   constant_quadratic  a single symmetric 2n x 2n matrix;
//   periodic_quadratic  sampled Hessians over [0, T], interpolated
//                       linearly in t (the schedule is data, so
//                       interpolating it is legitimate; interpolating
//                       flow samples would not be);
//   builtin             named closed-form systems.
// A phase shifts the schedule: hessian_at(t) evaluates the base schedule
// at t + phase. Re-basing the orbit origin is a phase shift.
class HamiltonianSpec {
 public:
  enum class Kind { kConstantQuadratic, kPeriodicQuadratic, kBuiltin };

  static HamiltonianSpec constant_quadratic(RealMatrix hessian, double period,
                                            const Tolerances& tol = {}) {
    HamiltonianSpec spec;
    spec.kind_ = Kind::kConstantQuadratic;
    spec.name_ = "constant_quadratic";
    validate_hessian(hessian, tol, "constant_quadratic");
    spec.n_ = static_cast<int>(hessian.rows()) / 2;
    require(period > 0.0, Error::Code::kInvalidArgument,
            "constant_quadratic: period must be positive");
    spec.period_ = period;
    spec.schedule_values_.push_back(std::move(hessian));
    spec.origin_ = RealVector::Zero(2 * spec.n_);
    return spec;
  }

  // times must start at 0 and end at the period; values are interpolated
  // linearly between samples.
  static HamiltonianSpec periodic_quadratic(std::vector<double> times,
                                            std::vector<RealMatrix> hessians,
                                            const Tolerances& tol = {}) {
    HamiltonianSpec spec;
    spec.kind_ = Kind::kPeriodicQuadratic;
    spec.name_ = "periodic_quadratic";
    require(times.size() == hessians.size(), Error::Code::kDimensionMismatch,
            "periodic_quadratic: one Hessian per time");
    require(times.size() >= 2, Error::Code::kInvalidArgument,
            "periodic_quadratic: need at least two samples");
    require(times.front() == 0.0, Error::Code::kInvalidArgument,
            "periodic_quadratic: schedule must start at time 0");
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
      require(times[k] < times[k + 1], Error::Code::kInvalidArgument,
              "periodic_quadratic: times must be strictly increasing");
    }
    for (const RealMatrix& h : hessians) {
      validate_hessian(h, tol, "periodic_quadratic");
      require(h.rows() == hessians.front().rows(), Error::Code::kDimensionMismatch,
              "periodic_quadratic: mixed dimensions");
    }
    double wrap = (hessians.front() - hessians.back()).norm();
    require(wrap <= tol.structural * matrix_scale(hessians.front()),
            Error::Code::kInvalidArgument,
            "periodic_quadratic: schedule is not periodic, H''(0) != H''(T)");
    spec.n_ = static_cast<int>(hessians.front().rows()) / 2;
    spec.period_ = times.back();
    spec.schedule_times_ = std::move(times);
    spec.schedule_values_ = std::move(hessians);
    spec.origin_ = RealVector::Zero(2 * spec.n_);
    return spec;
  }

  // Built-in systems. Every builtin accepts an optional "period" override.
  //   harmonic_oscillator    omega (> 0, default 1), n (default 1);
  //                          all modes turn at the same rate, default
  //                          period 2 pi / omega
  //   anisotropic_oscillator omega1, omega2 (defaults 1, 2), n = 2,
  //                          default period 2 pi
  //   inverted_oscillator    lambda (nonzero, default 0.5), n = 1,
  //                          hyperbolic normal form, default period 1
  //   driven_oscillator      omega (default 0.2), epsilon (default 0.02),
  //                          n = 1, default period 2 pi; the position
  //                          stiffness is modulated by epsilon cos(2 pi
  //                          t / T)
  static HamiltonianSpec builtin(const std::string& name,
                                 std::map<std::string, double> parameters = {},
                                 RealVector origin = RealVector(),
                                 const Tolerances& tol = {}) {
    HamiltonianSpec spec;
    spec.kind_ = Kind::kBuiltin;
    spec.name_ = name;
    spec.parameters_ = std::move(parameters);
    auto reject_unknown = [&spec, &name](std::initializer_list<const char*> allowed) {
      for (const auto& entry : spec.parameters_) {
        bool known = false;
        for (const char* key : allowed) known = known || entry.first == key;
        require(known, Error::Code::kInvalidArgument,
                "builtin " + name + ": unknown parameter '" + entry.first + "'");
      }
    };
    if (name == "harmonic_oscillator") {
      reject_unknown({"omega", "n", "period"});
      double omega = spec.param("omega", 1.0);
      require(omega > 0.0, Error::Code::kInvalidArgument,
              "harmonic_oscillator: omega must be positive");
      double modes = spec.param("n", 1.0);
      spec.n_ = static_cast<int>(modes);
      require(spec.n_ >= 1 && modes == static_cast<double>(spec.n_),
              Error::Code::kInvalidArgument, "harmonic_oscillator: n must be a positive integer");
      spec.period_ = spec.param("period", 2.0 * kPi / omega);
    } else if (name == "anisotropic_oscillator") {
      reject_unknown({"omega1", "omega2", "period"});
      require(spec.param("omega1", 1.0) > 0.0 && spec.param("omega2", 2.0) > 0.0,
              Error::Code::kInvalidArgument,
              "anisotropic_oscillator: frequencies must be positive");
      spec.n_ = 2;
      spec.period_ = spec.param("period", 2.0 * kPi);
    } else if (name == "inverted_oscillator") {
      reject_unknown({"lambda", "period"});
      require(spec.param("lambda", 0.5) != 0.0, Error::Code::kInvalidArgument,
              "inverted_oscillator: lambda must be nonzero");
      spec.n_ = 1;
      spec.period_ = spec.param("period", 1.0);
    } else if (name == "driven_oscillator") {
      reject_unknown({"omega", "epsilon", "period"});
      require(spec.param("omega", 0.2) > 0.0, Error::Code::kInvalidArgument,
              "driven_oscillator: omega must be positive");
      spec.n_ = 1;
      spec.period_ = spec.param("period", 2.0 * kPi);
    } else {
      throw Error(Error::Code::kInvalidArgument, "unknown builtin '" + name + "'");
    }
    require(spec.period_ > 0.0, Error::Code::kInvalidArgument,
            "builtin " + name + ": period must be positive");
    if (origin.size() == 0) {
      spec.origin_ = RealVector::Zero(2 * spec.n_);
      if (name == "harmonic_oscillator" || name == "anisotropic_oscillator") {
        spec.origin_(0) = 1.0;  // a point on the reference orbit
      }
    } else {
      require(origin.size() == 2 * spec.n_, Error::Code::kDimensionMismatch,
              "builtin " + name + ": origin must have 2n entries");
      require(origin.allFinite(), Error::Code::kNotFinite, "builtin origin");
      spec.origin_ = std::move(origin);
    }
    spec.hessian_at(0.0);  // force parameter validation paths
    return spec;
  }

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  int n() const { return n_; }
  double period() const { return period_; }
  double phase() const { return phase_; }
  const RealVector& origin() const { return origin_; }
  const std::map<std::string, double>& parameters() const { return parameters_; }

  bool autonomous() const {
    if (kind_ == Kind::kConstantQuadratic) return true;
    return kind_ == Kind::kBuiltin && name_ != "driven_oscillator";
  }

  RealMatrix hessian_at(double t) const {
    double tau = t + phase_;
    switch (kind_) {
      case Kind::kConstantQuadratic:
        return schedule_values_.front();
      case Kind::kPeriodicQuadratic:
        return interpolate_schedule(wrap_time(tau));
      case Kind::kBuiltin:
        return builtin_hessian(tau);
    }
    throw Error(Error::Code::kInvalidArgument, "HamiltonianSpec: bad kind");
  }

  // A spec whose schedule is this one's evaluated at t + delta. Moving the
  // orbit origin backwards by t' means shifting by -t'.
  HamiltonianSpec shifted(double delta) const {
    HamiltonianSpec copy = *this;
    copy.phase_ += delta;
    return copy;
  }

 private:
  HamiltonianSpec() = default;

  static void validate_hessian(const RealMatrix& h, const Tolerances& tol,
                               const std::string& what) {
    require_square(h, what);
    require(h.rows() % 2 == 0 && h.rows() >= 2, Error::Code::kDimensionMismatch,
            what + ": Hessian must be 2n x 2n");
    require_finite(h, what);
    require((h - h.transpose()).norm() <= tol.structural * matrix_scale(h),
            Error::Code::kNotSymmetric, what + ": Hessian must be symmetric");
  }

  double param(const std::string& key, double fallback) const {
    auto it = parameters_.find(key);
    return it == parameters_.end() ? fallback : it->second;
  }

  double wrap_time(double tau) const {
    double wrapped = std::fmod(tau, period_);
    if (wrapped < 0.0) wrapped += period_;
    return wrapped;
  }

  RealMatrix interpolate_schedule(double tau) const {
    auto it = std::upper_bound(schedule_times_.begin(), schedule_times_.end(), tau);
    std::size_t hi = static_cast<std::size_t>(it - schedule_times_.begin());
    if (hi == 0) return schedule_values_.front();
    if (hi >= schedule_times_.size()) return schedule_values_.back();
    std::size_t lo = hi - 1;
    double span = schedule_times_[hi] - schedule_times_[lo];
    double s = (tau - schedule_times_[lo]) / span;
    return (1.0 - s) * schedule_values_[lo] + s * schedule_values_[hi];
  }

  RealMatrix builtin_hessian(double tau) const {
    if (name_ == "harmonic_oscillator") {
      double omega = param("omega", 1.0);
      return -omega * RealMatrix::Identity(2 * n_, 2 * n_);
    }
    if (name_ == "anisotropic_oscillator") {
      RealMatrix h = RealMatrix::Zero(4, 4);
      h(0, 0) = h(2, 2) = -param("omega1", 1.0);
      h(1, 1) = h(3, 3) = -param("omega2", 2.0);
      return h;
    }
    if (name_ == "inverted_oscillator") {
      RealMatrix h = RealMatrix::Zero(2, 2);
      h(0, 1) = h(1, 0) = param("lambda", 0.5);
      return h;
    }
    // driven_oscillator
    double omega = param("omega", 0.2);
    double epsilon = param("epsilon", 0.02);
    RealMatrix h = RealMatrix::Zero(2, 2);
    h(0, 0) = -(omega * omega + epsilon * std::cos(2.0 * kPi * tau / period_));
    h(1, 1) = -1.0;
    return h;
  }

  Kind kind_ = Kind::kConstantQuadratic;
  std::string name_;
  int n_ = 0;
  double period_ = 0.0;
  double phase_ = 0.0;
  std::vector<double> schedule_times_;
  std::vector<RealMatrix> schedule_values_;
  std::map<std::string, double> parameters_;
  RealVector origin_;
};

struct IntegrationLog {
  bool exact_flow = false;
  int corrections = 0;          // re-projection passes applied
  double max_raw_drift = 0.0;   // worst |S^T J S - J| before correction
  double max_final_drift = 0.0;
};

// Fourth-order one-step integration of the variational equation
// dS/dt = J H''(t) S, S_0 = I, over `periods` periods. Autonomous
// schedules take the exact flow e^{tJA} instead. Samples whose
// symplectic drift exceeds the trigger are projected back by a Newton
// correction; drift that stays above the hard gate is an error.
inline SymplecticPath integrate_variational(const HamiltonianSpec& spec, int periods,
                                            int steps_per_period,
                                            IntegrationLog* log = nullptr,
                                            const Tolerances& tol = {}) {
  require(periods >= 1, Error::Code::kInvalidArgument,
          "integrate_variational: periods must be >= 1");
  require(steps_per_period >= 64, Error::Code::kInvalidArgument,
          "integrate_variational: need at least 64 steps per period");
  int n = spec.n();
  RealMatrix j = standard_form(n);
  double h = spec.period() / steps_per_period;
  int total = periods * steps_per_period;
  std::vector<double> times;
  std::vector<SymplecticMatrix> samples;
  times.reserve(total + 1);
  samples.reserve(total + 1);
  IntegrationLog local;
  if (spec.autonomous()) {
    local.exact_flow = true;
    RealMatrix generator = j * spec.hessian_at(0.0);
    for (int k = 0; k <= total; ++k) {
      times.push_back(k * h);
      samples.emplace_back(matrix_exp((k * h) * generator), tol);
    }
  } else {
    RealMatrix s = RealMatrix::Identity(2 * n, 2 * n);
    times.push_back(0.0);
    samples.emplace_back(s, tol);
    for (int k = 0; k < total; ++k) {
      double t = k * h;
      RealMatrix g1 = j * spec.hessian_at(t);
      RealMatrix g2 = j * spec.hessian_at(t + 0.5 * h);
      RealMatrix g4 = j * spec.hessian_at(t + h);
      RealMatrix k1 = g1 * s;
      RealMatrix k2 = g2 * (s + (0.5 * h) * k1);
      RealMatrix k3 = g2 * (s + (0.5 * h) * k2);
      RealMatrix k4 = g4 * (s + h * k3);
      s += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      double drift = (s.transpose() * j * s - j).norm();
      local.max_raw_drift = std::max(local.max_raw_drift, drift);
      for (int pass = 0; pass < 5 && drift > tol.drift; ++pass) {
        s = s * (RealMatrix::Identity(2 * n, 2 * n) +
                 0.5 * j * (s.transpose() * j * s - j));
        drift = (s.transpose() * j * s - j).norm();
        ++local.corrections;
      }
      require(drift <= tol.drift_max, Error::Code::kDriftTooLarge,
              "integrate_variational: symplectic drift " + std::to_string(drift) +
                  " persists after correction");
      local.max_final_drift = std::max(local.max_final_drift, drift);
      times.push_back((k + 1) * h);
      samples.emplace_back(s, tol);
    }
  }
  if (log != nullptr) *log = local;
  return SymplecticPath(std::move(times), std::move(samples), tol);
}

// S at the period, with the translation relation S_{t+T} = S_t S_T checked
// on every available sample pair.
inline SymplecticMatrix monodromy_matrix(const SymplecticPath& path, double period,
                                         const Tolerances& tol = {}) {
  std::size_t offset = path.index_of(period);
  const SymplecticMatrix& s_period = path.sample(offset);
  double grid_tol = 1e-9 * std::max(1.0, path.duration());
  for (std::size_t k = 0; k + offset < path.size(); ++k) {
    require(std::abs(path.time(k + offset) - (path.time(k) + period)) <= grid_tol,
            Error::Code::kInvalidArgument,
            "monodromy_matrix: sample grid is not aligned with the period");
    const RealMatrix& target = path.sample(k + offset).matrix();
    double residual = (target - path.sample(k).matrix() * s_period.matrix()).norm();
    require(residual <= tol.identity * matrix_scale(target),
            Error::Code::kMonodromyRelationViolated,
            "monodromy_matrix: S_{t+T} != S_t S_T at t = " + std::to_string(path.time(k)));
  }
  return s_period;
}

struct MonodromyDecomposition {
  SymplecticPath path;  // input flow over [0, 2T]
  double period;        // T
  SymplecticMatrix monodromy;         // S_T
  SymplecticMatrix monodromy_square;  // S_{2T}
  RealMatrix generator;               // X in sp(n) with e^{2TX} = S_{2T}
  SymplecticPath periodic_part;       // P_t = S_t e^{-tX}, closes at 2T
  SymplecticPath unitary_part;        // orthogonal polar factors U_t of P_t
  std::vector<RealMatrix> stretch_part;  // positive polar factors e^{Y_t}
  long winding = 0;                   // k: turns of det u_t over [0, 2T]
  double projection_residual = 0.0;   // |X - X_raw|
  double exponential_residual = 0.0;  // |e^{2TX} - S_{2T}|
};

// Factor the flow over a doubled period. Errors instead of guessing
// whenever the construction leaves its domain: an eigenvalue of S_{2T} on
// the closed negative real axis has no real principal logarithm, and a
// log that cannot be projected onto sp(n) within tolerance would
// silently break every later invariant.
inline MonodromyDecomposition split_monodromy(const SymplecticPath& path, double period,
                                              std::uint64_t seed = 0,
                                              const Tolerances& tol = {}) {
  double grid_tol = 1e-9 * std::max(1.0, path.duration());
  require(std::abs(path.duration() - 2.0 * period) <= grid_tol,
          Error::Code::kInvalidArgument, "split_monodromy: path must cover [0, 2T]");
  int n = path.n();
  RealMatrix j = standard_form(n);
  SymplecticMatrix s_period = path.sample(path.index_of(period));
  SymplecticMatrix s_double = path.back();
  double square_gap =
      (s_double.matrix() - s_period.matrix() * s_period.matrix()).norm();
  require(square_gap <= tol.identity * matrix_scale(s_double.matrix()),
          Error::Code::kMonodromyRelationViolated, "split_monodromy: S_{2T} != S_T^2");

  Eigen::EigenSolver<RealMatrix> eigen(s_double.matrix());
  require(eigen.info() == Eigen::Success, Error::Code::kNoConvergence,
          "split_monodromy: eigenvalue computation failed");
  for (int i = 0; i < eigen.eigenvalues().size(); ++i) {
    double away = kPi - std::abs(std::arg(eigen.eigenvalues()(i)));
    require(away > tol.branch_cut, Error::Code::kNonGenericMonodromy,
            "split_monodromy: S_{2T} has an eigenvalue on the negative real axis; "
            "the doubled-period flow has no real generator here");
  }

  RealMatrix x_raw = real_matrix_log(s_double.matrix(), tol) / (2.0 * period);
  RealMatrix x = 0.5 * (x_raw + j * x_raw.transpose() * j);
  double projection_residual = (x - x_raw).norm();
  require(projection_residual <= tol.projection * matrix_scale(x_raw),
          Error::Code::kProjectionResidualTooLarge,
          "split_monodromy: generator is too far from sp(n)");
  double exponential_residual = (matrix_exp(2.0 * period * x) - s_double.matrix()).norm();
  require(exponential_residual <= tol.identity * matrix_scale(s_double.matrix()),
          Error::Code::kIdentityViolated,
          "split_monodromy: projected generator fails to reproduce S_{2T}");

  std::vector<double> times(path.times());
  std::vector<SymplecticMatrix> periodic;
  std::vector<SymplecticMatrix> unitary;
  std::vector<RealMatrix> stretch;
  periodic.reserve(path.size());
  unitary.reserve(path.size());
  stretch.reserve(path.size());
  for (std::size_t k = 0; k < path.size(); ++k) {
    RealMatrix p = path.sample(k).matrix() * matrix_exp(-path.time(k) * x);
    periodic.emplace_back(p, tol);
    PolarDecomposition polar = polar_decompose(p, tol);
    unitary.emplace_back(polar.orthogonal, tol);
    stretch.push_back(polar.positive);
  }
  RealMatrix eye = RealMatrix::Identity(2 * n, 2 * n);
  require((periodic.front().matrix() - eye).norm() <= tol.identity &&
              (periodic.back().matrix() - eye).norm() <= tol.identity,
          Error::Code::kIdentityViolated,
          "split_monodromy: periodic part fails to close at 2T");
  require((unitary.front().matrix() - eye).norm() <= tol.identity &&
              (unitary.back().matrix() - eye).norm() <= tol.identity,
          Error::Code::kIdentityViolated,
          "split_monodromy: unitary part fails to close at 2T");

  SymplecticPath p_path(times, std::move(periodic), tol);
  SymplecticPath u_path(std::move(times), std::move(unitary), tol);
  MaslovResult u_loop = loop_winding_index(u_path, seed, tol);

  return MonodromyDecomposition{path,
                                period,
                                std::move(s_period),
                                std::move(s_double),
                                std::move(x),
                                std::move(p_path),
                                std::move(u_path),
                                std::move(stretch),
                                u_loop.index / 2,
                                projection_residual,
                                exponential_residual};
}

namespace detail {

inline SymplecticPath exponential_path(const std::vector<double>& times, const RealMatrix& x,
                                       const Tolerances& tol) {
  std::vector<SymplecticMatrix> samples;
  samples.reserve(times.size());
  for (double t : times) samples.emplace_back(matrix_exp(t * x), tol);
  return SymplecticPath(times, std::move(samples), tol);
}

inline long inertia_of_planes(const SymplecticMatrix& a, const SymplecticMatrix& b,
                              const LagrangianFrame& lp, const Tolerances& tol) {
  return inertia_index(act_symplectic(a, lp, tol), act_symplectic(b, lp, tol), lp, tol).inert;
}

}  // namespace detail

struct SplittingReport {
  long mu_period = 0;         // index of the flow over [0, T]
  long mu_double = 0;         // index of the flow over [0, 2T]
  long mu_periodic_part = 0;  // index of the P loop
  long mu_unitary_part = 0;   // index of the U loop, equals 2k
  long mu_exp_double = 0;     // index of t -> e^{tX} over [0, 2T]
  long mu_exp_period = 0;     // index of t -> e^{tX} over [0, T]
  long inertia_correction = 0;  // Inert(S_{2T} l_p, S_T l_p, l_p)
  long winding = 0;             // k
  double index_residual_max = 0.0;  // worst pre-rounding residual seen
  // 2 mu_period = mu_periodic_part + mu_exp_double + inertia_correction
  bool halving_holds = false;
  // mu_periodic_part = mu_unitary_part = 2k
  bool winding_holds = false;
  // mu_double = 2 mu_period - inertia_correction
  bool doubling_holds = false;
  // mu_period = mu_exp_period + k; meaningful only under the premise
  // S_T = e^{TX} (the generator recovered from S_{2T} already closes one
  // period), which generator_checked records
  bool generator_checked = false;
  bool generator_holds = false;

  bool all_hold() const {
    return halving_holds && winding_holds && doubling_holds &&
           (!generator_checked || generator_holds);
  }
};

inline SplittingReport splitting_report(const MonodromyDecomposition& d,
                                        std::uint64_t seed = 0, const Tolerances& tol = {},
                                        bool throw_on_violation = true) {
  SplittingReport report;
  auto track = [&report](const MaslovResult& r) {
    report.index_residual_max = std::max(report.index_residual_max, r.residual);
    return r.index;
  };
  report.mu_period = track(maslov_index(d.path.restricted_to(d.period, tol), seed, tol));
  report.mu_double = track(maslov_index(d.path, seed, tol));
  report.mu_periodic_part = track(maslov_index(d.periodic_part, seed, tol));
  report.mu_unitary_part = track(loop_winding_index(d.unitary_part, seed, tol));
  SymplecticPath exp_double = detail::exponential_path(d.path.times(), d.generator, tol);
  report.mu_exp_double = track(maslov_index(exp_double, seed, tol));
  report.mu_exp_period =
      track(maslov_index(exp_double.restricted_to(d.period, tol), seed, tol));
  LagrangianFrame lp = LagrangianFrame::momentum_plane(d.path.n());
  report.inertia_correction =
      detail::inertia_of_planes(d.monodromy_square, d.monodromy, lp, tol);
  report.winding = d.winding;

  report.halving_holds = 2 * report.mu_period ==
                         report.mu_periodic_part + report.mu_exp_double +
                             report.inertia_correction;
  report.winding_holds = report.mu_periodic_part == report.mu_unitary_part &&
                         report.mu_unitary_part == 2 * report.winding;
  report.doubling_holds =
      report.mu_double == 2 * report.mu_period - report.inertia_correction;
  double premise_gap =
      (d.monodromy.matrix() - matrix_exp(d.period * d.generator)).norm();
  report.generator_checked =
      premise_gap <= tol.identity * matrix_scale(d.monodromy.matrix());
  if (report.generator_checked) {
    report.generator_holds = report.mu_period == report.mu_exp_period + report.winding;
  }
  if (throw_on_violation && !report.all_hold()) {
    throw Error(Error::Code::kIdentityViolated,
                "splitting_report: 2*" + std::to_string(report.mu_period) + " vs " +
                    std::to_string(report.mu_periodic_part) + " + " +
                    std::to_string(report.mu_exp_double) + " + " +
                    std::to_string(report.inertia_correction) + ", unitary " +
                    std::to_string(report.mu_unitary_part) + ", 2k = " +
                    std::to_string(2 * report.winding));
  }
  return report;
}

struct RepetitionReport {
  int repetitions = 0;
  long direct = 0;     // index of the full path over [0, rT]
  long recursive = 0;  // iterated product rule from the one-period index
  bool holds() const { return direct == recursive; }
};

// Compare the index of r traversals computed directly against the
// recursion mu_{j+1} = mu_j + mu_1 - Inert(S_{(j+1)T} l_p, S_T l_p, l_p).
inline RepetitionReport repetition_index(const SymplecticPath& path, double period, int r,
                                         std::uint64_t seed = 0, const Tolerances& tol = {},
                                         bool throw_on_violation = true) {
  require(r >= 1, Error::Code::kInvalidArgument, "repetition_index: r must be >= 1");
  double grid_tol = 1e-9 * std::max(1.0, path.duration());
  require(std::abs(path.duration() - r * period) <= grid_tol, Error::Code::kInvalidArgument,
          "repetition_index: path must cover [0, rT]");
  RepetitionReport report;
  report.repetitions = r;
  report.direct = maslov_index(path, seed, tol).index;
  SymplecticMatrix s_period = path.sample(path.index_of(period));
  LagrangianFrame lp = LagrangianFrame::momentum_plane(path.n());
  long mu_one = maslov_index(path.restricted_to(period, tol), seed, tol).index;
  long mu = mu_one;
  for (int j = 2; j <= r; ++j) {
    SymplecticMatrix s_total = path.sample(path.index_of(j * period));
    mu += mu_one - detail::inertia_of_planes(s_total, s_period, lp, tol);
  }
  report.recursive = mu;
  if (throw_on_violation && !report.holds()) {
    throw Error(Error::Code::kIdentityViolated,
                "repetition_index: direct " + std::to_string(report.direct) +
                    " != recursive " + std::to_string(report.recursive));
  }
  return report;
}

struct OriginChangeReport {
  double t_prime = 0.0;
  // The orbit is re-based at the point t_prime earlier along the orbit:
  // the new schedule is the old one evaluated at t - t_prime, and
  // S' = S_{t_prime}(new origin) carries the old frame to the new one.
  double conjugacy_residual = 0.0;      // |S_T(z') - S'^{-1} S_T(z) S'|
  double group_relation_residual = 0.0;  // worst |S_{t+t'}(z') - S_t(z) S'|
  long mu_base = 0;      // index at the original origin
  long mu_shifted = 0;   // index at the new origin
  long mu_rebased = 0;   // index of the original flow relative to S' l_p
  long inertia_first = 0;   // Inert(S_T l_p, l_p, S' l_p)
  long inertia_second = 0;  // Inert(S_T l_p, S_T S' l_p, S' l_p)
  long winding_base = 0;
  long winding_shifted = 0;
  double index_residual_max = 0.0;  // worst pre-rounding residual seen
  bool rebase_holds = false;      // mu_shifted == mu_rebased
  bool difference_holds = false;  // mu_base - mu_shifted == inertia_first - inertia_second
  bool winding_holds = false;     // winding_base == winding_shifted

  bool all_hold() const { return rebase_holds && difference_holds && winding_holds; }
};

inline OriginChangeReport change_origin_report(const HamiltonianSpec& spec, double t_prime,
                                               int steps_per_period = 256,
                                               std::uint64_t seed = 0,
                                               const Tolerances& tol = {},
                                               bool throw_on_violation = true) {
  double period = spec.period();
  require(t_prime > 0.0 && t_prime < period, Error::Code::kInvalidArgument,
          "change_origin_report: t_prime must lie strictly inside (0, T)");
  double h = period / steps_per_period;
  long m = std::lround(t_prime / h);
  require(m >= 1 && m < steps_per_period &&
              std::abs(m * h - t_prime) <= 1e-9 * period,
          Error::Code::kInvalidArgument,
          "change_origin_report: t_prime must lie on the integration grid");

  SymplecticPath base = integrate_variational(spec, 2, steps_per_period, nullptr, tol);
  HamiltonianSpec rebased_spec = spec.shifted(-t_prime);
  SymplecticPath shifted = integrate_variational(rebased_spec, 2, steps_per_period, nullptr, tol);

  OriginChangeReport report;
  report.t_prime = t_prime;
  SymplecticMatrix s_prime = shifted.sample(static_cast<std::size_t>(m));
  SymplecticMatrix s_period = base.sample(base.index_of(period));
  SymplecticMatrix s_period_shifted = shifted.sample(shifted.index_of(period));

  RealMatrix conjugated = s_prime.inverse().matrix() * s_period.matrix() * s_prime.matrix();
  report.conjugacy_residual = (s_period_shifted.matrix() - conjugated).norm();
  require(report.conjugacy_residual <= tol.identity * matrix_scale(s_period_shifted.matrix()),
          Error::Code::kIdentityViolated,
          "change_origin_report: monodromy matrices are not conjugate by S'");

  for (std::size_t k = 0; k + m < shifted.size(); ++k) {
    double residual = (shifted.sample(k + m).matrix() -
                       base.sample(k).matrix() * s_prime.matrix())
                          .norm();
    report.group_relation_residual = std::max(report.group_relation_residual, residual);
  }
  require(report.group_relation_residual <=
              tol.identity * matrix_scale(shifted.back().matrix()),
          Error::Code::kIdentityViolated,
          "change_origin_report: translation relation S_{t+t'}(z') = S_t(z) S' fails");

  SymplecticPath base_period = base.restricted_to(period, tol);
  SymplecticPath shifted_period = shifted.restricted_to(period, tol);
  auto track = [&report](const MaslovResult& r) {
    report.index_residual_max = std::max(report.index_residual_max, r.residual);
    return r.index;
  };
  report.mu_base = track(maslov_index(base_period, seed, tol));
  report.mu_shifted = track(maslov_index(shifted_period, seed, tol));
  LagrangianFrame lp = LagrangianFrame::momentum_plane(spec.n());
  LagrangianFrame carried = act_symplectic(s_prime, lp, tol);
  report.mu_rebased = track(maslov_index_rel(base_period, carried, seed, tol));

  LagrangianFrame moved = act_symplectic(s_period, lp, tol);
  LagrangianFrame moved_carried =
      act_symplectic(SymplecticMatrix(s_period.matrix() * s_prime.matrix(), tol), lp, tol);
  report.inertia_first = inertia_index(moved, lp, carried, tol).inert;
  report.inertia_second = inertia_index(moved, moved_carried, carried, tol).inert;

  report.winding_base = split_monodromy(base, period, seed, tol).winding;
  report.winding_shifted = split_monodromy(shifted, period, seed, tol).winding;

  report.rebase_holds = report.mu_shifted == report.mu_rebased;
  report.difference_holds =
      report.mu_base - report.mu_shifted == report.inertia_first - report.inertia_second;
  report.winding_holds = report.winding_base == report.winding_shifted;
  if (throw_on_violation && !report.all_hold()) {
    throw Error(Error::Code::kIdentityViolated,
                "change_origin_report: mu " + std::to_string(report.mu_base) + "/" +
                    std::to_string(report.mu_shifted) + "/" +
                    std::to_string(report.mu_rebased) + ", inertia " +
                    std::to_string(report.inertia_first) + "/" +
                    std::to_string(report.inertia_second) + ", winding " +
                    std::to_string(report.winding_base) + "/" +
                    std::to_string(report.winding_shifted));
  }
  return report;
}

// Tangent direction of the orbit through the spec origin, J grad H =
// J H''(0) z for quadratic H. Only a line (n = 1) spans a Lagrangian
// plane by itself; callers wanting the index relative to the orbit
// tangent must check availability first.
inline bool orbit_tangent_available(const HamiltonianSpec& spec) {
  if (spec.n() != 1) return false;
  RealVector velocity = standard_form(1) * spec.hessian_at(0.0) * spec.origin();
  return velocity.norm() > 0.0;
}

inline LagrangianFrame orbit_tangent_frame(const HamiltonianSpec& spec,
                                           const Tolerances& tol = {}) {
  require(orbit_tangent_available(spec), Error::Code::kInvalidArgument,
          "orbit_tangent_frame: spec has no one-dimensional orbit tangent");
  RealVector velocity = standard_form(1) * spec.hessian_at(0.0) * spec.origin();
  RealMatrix z(2, 1);
  z << velocity(0), velocity(1);
  return LagrangianFrame(std::move(z), tol);
}

}  // namespace maslov
