#pragma once

// Declarative jobs: a JSON document names a computation, run_job executes
// it and returns a report plus a process exit code. Reports are built with
// order-preserving JSON so that the same (document, seed, version) triple
// always serializes to the same bytes.
//
// Exit codes: 0 on success, 2 when a checked identity fails, 1 for
// malformed or out-of-domain input.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "maslov/indices.hpp"
#include "maslov/monodromy.hpp"
#include "maslov/verify.hpp"
#include "maslov/version.hpp"

namespace maslov {

using Json = nlohmann::ordered_json;

// Schema walkers. Every failure names the offending location with a
// JSONPath-style string, e.g. "$.lifts[0].w".
namespace schema {

[[noreturn]] inline void fail(const std::string& path, const std::string& message) {
  throw Error(Error::Code::kSchema, path + ": " + message);
}

inline void require_object(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
}

inline void allow_keys(const Json& obj, const std::string& path,
                       const std::vector<std::string>& keys) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(keys.begin(), keys.end(), it.key()) == keys.end())
      fail(path + "." + it.key(), "unknown key");
  }
}

inline const Json& fetch(const Json& obj, const std::string& path, const char* key) {
  require_object(obj, path);
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing required key");
  return *it;
}

inline double number(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

inline long integer(const Json& j, const std::string& path, long lo, long hi) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  long v = j.get<long>();
  if (v < lo || v > hi)
    fail(path, "expected an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return v;
}

inline bool boolean(const Json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected true or false");
  return j.get<bool>();
}

inline std::string text(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

// Row-major: an array of equal-length rows of numbers.
inline RealMatrix real_matrix(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of rows");
  std::size_t rows = j.size();
  std::size_t cols = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    const Json& row = j[i];
    std::string row_path = path + "[" + std::to_string(i) + "]";
    if (!row.is_array() || row.empty()) fail(row_path, "expected a non-empty row");
    if (i == 0)
      cols = row.size();
    else if (row.size() != cols)
      fail(row_path, "rows have different lengths");
  }
  RealMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          number(j[i][k], path + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
  return m;
}

inline RealVector real_vector(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of numbers");
  RealVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = number(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

// A complex entry is the two-element array [re, im].
inline Complex complex_entry(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(path, "expected [re, im]");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

inline ComplexMatrix complex_matrix(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of rows");
  std::size_t rows = j.size();
  std::size_t cols = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    const Json& row = j[i];
    std::string row_path = path + "[" + std::to_string(i) + "]";
    if (!row.is_array() || row.empty()) fail(row_path, "expected a non-empty row");
    if (i == 0)
      cols = row.size();
    else if (row.size() != cols)
      fail(row_path, "rows have different lengths");
  }
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          complex_entry(j[i][k], path + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
  return m;
}

}  // namespace schema

inline Tolerances parse_tolerances(const Json& j, const std::string& path) {
  schema::require_object(j, path);
  schema::allow_keys(j, path,
                     {"structural", "reconstruction", "rank", "branch_cut", "integer_residual",
                      "drift", "drift_max", "projection", "identity"});
  Tolerances tol;
  auto maybe_set = [&j, &path](const char* key, double& field) {
    if (!j.contains(key)) return;
    double v = schema::number(j.at(key), path + "." + key);
    if (!std::isfinite(v) || v <= 0.0) schema::fail(path + "." + key, "expected a positive number");
    field = v;
  };
  maybe_set("structural", tol.structural);
  maybe_set("reconstruction", tol.reconstruction);
  maybe_set("rank", tol.rank);
  maybe_set("branch_cut", tol.branch_cut);
  maybe_set("integer_residual", tol.integer_residual);
  maybe_set("drift", tol.drift);
  maybe_set("drift_max", tol.drift_max);
  maybe_set("projection", tol.projection);
  maybe_set("identity", tol.identity);
  return tol;
}

inline LagrangianLift parse_lift(const Json& j, const std::string& path, const Tolerances& tol) {
  schema::require_object(j, path);
  schema::allow_keys(j, path, {"w", "theta"});
  ComplexMatrix w = schema::complex_matrix(schema::fetch(j, path, "w"), path + ".w");
  double theta = schema::number(schema::fetch(j, path, "theta"), path + ".theta");
  return LagrangianLift(SouriauPoint(std::move(w), tol), theta, tol);
}

inline LagrangianFrame parse_frame(const Json& j, const std::string& path,
                                   const Tolerances& tol) {
  return LagrangianFrame(schema::real_matrix(j, path), tol);
}

// Path descriptions: a named family or explicit samples.
inline SymplecticPath parse_path_spec(const Json& j, const std::string& path,
                                      int steps_override, const Tolerances& tol) {
  schema::require_object(j, path);
  std::string kind = schema::text(schema::fetch(j, path, "kind"), path + ".kind");
  auto pick_steps = [&j, &path, steps_override](int fallback) {
    if (steps_override > 0) return steps_override;
    if (j.contains("steps"))
      return static_cast<int>(schema::integer(j.at("steps"), path + ".steps", 2, 65536));
    return fallback;
  };
  if (kind == "rotation") {
    schema::allow_keys(j, path, {"kind", "alpha", "steps"});
    double alpha = schema::number(schema::fetch(j, path, "alpha"), path + ".alpha");
    int fallback = std::max(16, static_cast<int>(std::ceil(8.0 * std::abs(alpha) / kPi)));
    return rotation_path(alpha, pick_steps(fallback), tol);
  }
  if (kind == "unitary_loop") {
    schema::allow_keys(j, path, {"kind", "winding", "n", "steps"});
    int winding =
        static_cast<int>(schema::integer(schema::fetch(j, path, "winding"), path + ".winding",
                                         -64, 64));
    int n = static_cast<int>(schema::integer(schema::fetch(j, path, "n"), path + ".n", 1, 16));
    return unitary_loop_path(winding, pick_steps(std::max(16, 8 * std::abs(winding) + 8)), n,
                             tol);
  }
  if (kind == "quadratic_flow") {
    schema::allow_keys(j, path, {"kind", "hessian", "duration", "steps"});
    RealMatrix hessian =
        schema::real_matrix(schema::fetch(j, path, "hessian"), path + ".hessian");
    double duration = schema::number(schema::fetch(j, path, "duration"), path + ".duration");
    return quadratic_flow_path(hessian, duration, pick_steps(64), tol);
  }
  if (kind == "samples") {
    schema::allow_keys(j, path, {"kind", "times", "matrices"});
    require(steps_override == 0, Error::Code::kInvalidArgument,
            "steps cannot override an explicit sample grid");
    const Json& times_json = schema::fetch(j, path, "times");
    const Json& matrices_json = schema::fetch(j, path, "matrices");
    if (!times_json.is_array() || times_json.empty())
      schema::fail(path + ".times", "expected a non-empty array of numbers");
    if (!matrices_json.is_array() || matrices_json.size() != times_json.size())
      schema::fail(path + ".matrices", "expected one matrix per time");
    std::vector<double> times;
    std::vector<SymplecticMatrix> samples;
    times.reserve(times_json.size());
    samples.reserve(times_json.size());
    for (std::size_t k = 0; k < times_json.size(); ++k) {
      times.push_back(
          schema::number(times_json[k], path + ".times[" + std::to_string(k) + "]"));
      samples.emplace_back(schema::real_matrix(matrices_json[k],
                                               path + ".matrices[" + std::to_string(k) + "]"),
                           tol);
    }
    return SymplecticPath(std::move(times), std::move(samples), tol);
  }
  schema::fail(path + ".kind", "unknown path kind '" + kind + "'");
}

inline HamiltonianSpec parse_system_spec(const Json& j, const std::string& path,
                                         const Tolerances& tol) {
  schema::require_object(j, path);
  std::string kind = schema::text(schema::fetch(j, path, "kind"), path + ".kind");
  if (kind == "constant_quadratic") {
    schema::allow_keys(j, path, {"kind", "hessian", "period"});
    RealMatrix hessian =
        schema::real_matrix(schema::fetch(j, path, "hessian"), path + ".hessian");
    double period = schema::number(schema::fetch(j, path, "period"), path + ".period");
    return HamiltonianSpec::constant_quadratic(std::move(hessian), period, tol);
  }
  if (kind == "periodic_quadratic") {
    schema::allow_keys(j, path, {"kind", "times", "hessians"});
    const Json& times_json = schema::fetch(j, path, "times");
    const Json& hessians_json = schema::fetch(j, path, "hessians");
    if (!times_json.is_array() || times_json.size() < 2)
      schema::fail(path + ".times", "expected at least two numbers");
    if (!hessians_json.is_array() || hessians_json.size() != times_json.size())
      schema::fail(path + ".hessians", "expected one matrix per time");
    std::vector<double> times;
    std::vector<RealMatrix> hessians;
    times.reserve(times_json.size());
    hessians.reserve(times_json.size());
    for (std::size_t k = 0; k < times_json.size(); ++k) {
      times.push_back(
          schema::number(times_json[k], path + ".times[" + std::to_string(k) + "]"));
      hessians.push_back(schema::real_matrix(hessians_json[k],
                                             path + ".hessians[" + std::to_string(k) + "]"));
    }
    return HamiltonianSpec::periodic_quadratic(std::move(times), std::move(hessians), tol);
  }
  if (kind == "builtin") {
    schema::allow_keys(j, path, {"kind", "name", "parameters", "origin"});
    std::string name = schema::text(schema::fetch(j, path, "name"), path + ".name");
    std::map<std::string, double> parameters;
    if (j.contains("parameters")) {
      const Json& params = j.at("parameters");
      schema::require_object(params, path + ".parameters");
      for (auto it = params.begin(); it != params.end(); ++it)
        parameters[it.key()] =
            schema::number(it.value(), path + ".parameters." + it.key());
    }
    RealVector origin;
    if (j.contains("origin"))
      origin = schema::real_vector(j.at("origin"), path + ".origin");
    return HamiltonianSpec::builtin(name, std::move(parameters), std::move(origin), tol);
  }
  schema::fail(path + ".kind", "unknown system kind '" + kind + "'");
}

struct JobSpec {
  std::string command;
  std::uint64_t seed = 0;
  int steps = 0;  // 0 keeps the per-command default
  std::string format = "json";
  Tolerances tol;
  Json document;  // the validated job document, echoed into the report
};

namespace detail {

inline LagrangianFrame parse_plane(const Json& j, const std::string& path, int n,
                                   const Tolerances& tol) {
  if (j.is_string()) {
    std::string name = j.get<std::string>();
    if (name == "momentum") return LagrangianFrame::momentum_plane(n);
    if (name == "position") return LagrangianFrame::position_plane(n);
    schema::fail(path, "expected \"momentum\", \"position\", or a frame matrix");
  }
  return parse_frame(j, path, tol);
}

// Walk the document once so that schema errors surface at parse time, not
// halfway through a computation.
inline void validate_payload(const JobSpec& spec) {
  const Json& doc = spec.document;
  const Tolerances& tol = spec.tol;
  if (spec.command == "leray") {
    const Json& lifts = schema::fetch(doc, "$", "lifts");
    if (!lifts.is_array() || lifts.size() != 2)
      schema::fail("$.lifts", "expected exactly two lifts");
    LagrangianLift a = parse_lift(lifts[0], "$.lifts[0]", tol);
    LagrangianLift b = parse_lift(lifts[1], "$.lifts[1]", tol);
    require(a.n() == b.n(), Error::Code::kDimensionMismatch, "lifts have different n");
  } else if (spec.command == "signature" || spec.command == "inert") {
    const Json& frames = schema::fetch(doc, "$", "frames");
    if (!frames.is_array() || frames.size() != 3)
      schema::fail("$.frames", "expected exactly three frames");
    LagrangianFrame a = parse_frame(frames[0], "$.frames[0]", tol);
    LagrangianFrame b = parse_frame(frames[1], "$.frames[1]", tol);
    LagrangianFrame c = parse_frame(frames[2], "$.frames[2]", tol);
    require(a.n() == b.n() && b.n() == c.n(), Error::Code::kDimensionMismatch,
            "frames have different n");
  } else if (spec.command == "maslov-path") {
    SymplecticPath p = parse_path_spec(schema::fetch(doc, "$", "path"), "$.path", spec.steps, tol);
    bool loop = doc.contains("loop") && schema::boolean(doc.at("loop"), "$.loop");
    if (doc.contains("plane")) {
      if (loop)
        schema::fail("$.plane",
                     "loop winding is computed against the momentum plane; drop this key");
      parse_plane(doc.at("plane"), "$.plane", p.n(), tol);
    }
  } else if (spec.command == "monodromy") {
    parse_system_spec(schema::fetch(doc, "$", "system"), "$.system", tol);
    if (doc.contains("repetitions"))
      schema::integer(doc.at("repetitions"), "$.repetitions", 2, 8);
  } else if (spec.command == "change-origin") {
    parse_system_spec(schema::fetch(doc, "$", "system"), "$.system", tol);
    schema::number(schema::fetch(doc, "$", "t_prime"), "$.t_prime");
  } else if (spec.command == "verify") {
    if (doc.contains("trials")) schema::integer(doc.at("trials"), "$.trials", 1, 500);
    if (doc.contains("max_n")) schema::integer(doc.at("max_n"), "$.max_n", 1, 4);
  }
}

}  // namespace detail

inline JobSpec parse_job(const Json& document) {
  schema::require_object(document, "$");
  JobSpec spec;
  spec.command = schema::text(schema::fetch(document, "$", "command"), "$.command");
  static const std::map<std::string, std::vector<std::string>> kAllowedKeys = {
      {"leray", {"command", "seed", "tolerances", "lifts"}},
      {"signature", {"command", "seed", "tolerances", "frames"}},
      {"inert", {"command", "seed", "tolerances", "frames"}},
      {"maslov-path", {"command", "seed", "tolerances", "path", "plane", "loop"}},
      {"monodromy", {"command", "seed", "tolerances", "system", "steps", "repetitions"}},
      {"change-origin", {"command", "seed", "tolerances", "system", "t_prime", "steps"}},
      {"verify", {"command", "seed", "tolerances", "trials", "max_n"}},
  };
  auto it = kAllowedKeys.find(spec.command);
  if (it == kAllowedKeys.end())
    schema::fail("$.command", "unknown command '" + spec.command + "'");
  schema::allow_keys(document, "$", it->second);
  if (document.contains("seed"))
    spec.seed = static_cast<std::uint64_t>(
        schema::integer(document.at("seed"), "$.seed", 0, (1L << 53)));
  if (document.contains("tolerances"))
    spec.tol = parse_tolerances(document.at("tolerances"), "$.tolerances");
  if (document.contains("steps"))
    spec.steps = static_cast<int>(schema::integer(document.at("steps"), "$.steps", 2, 65536));
  spec.document = document;
  detail::validate_payload(spec);
  return spec;
}

struct JobOutcome {
  Json report;
  int exit_code = 0;
};

namespace detail {

inline void run_leray(const JobSpec& spec, Json& report) {
  const Json& lifts = spec.document.at("lifts");
  LagrangianLift a = parse_lift(lifts[0], "$.lifts[0]", spec.tol);
  LagrangianLift b = parse_lift(lifts[1], "$.lifts[1]", spec.tol);
  LerayResult r = leray(a, b, spec.seed, spec.tol);
  Json results;
  results["n"] = a.n();
  results["index"] = r.value;
  results["index_residual"] = r.residual;
  report["results"] = std::move(results);
  Json diagnostics;
  diagnostics["transversal"] = is_transversal(a.point(), b.point(), spec.tol);
  report["diagnostics"] = std::move(diagnostics);
}

inline void run_signature(const JobSpec& spec, Json& report, bool full_triple) {
  const Json& frames = spec.document.at("frames");
  LagrangianFrame a = parse_frame(frames[0], "$.frames[0]", spec.tol);
  LagrangianFrame b = parse_frame(frames[1], "$.frames[1]", spec.tol);
  LagrangianFrame c = parse_frame(frames[2], "$.frames[2]", spec.tol);
  Json results;
  results["n"] = a.n();
  if (full_triple) {
    TripleIndexReport triple = inertia_index(a, b, c, spec.tol);
    results["tau"] = triple.tau;
    results["tau_residual"] = 0.0;
    results["ddim"] = triple.ddim;
    results["ddim_residual"] = 0.0;
    results["inert"] = triple.inert;
    results["inert_residual"] = 0.0;
  } else {
    results["tau"] = signature(a, b, c, spec.tol);
    results["tau_residual"] = 0.0;
  }
  report["results"] = std::move(results);
}

inline void run_maslov_path(const JobSpec& spec, Json& report) {
  const Json& doc = spec.document;
  SymplecticPath p = parse_path_spec(doc.at("path"), "$.path", spec.steps, spec.tol);
  bool loop = doc.contains("loop") && doc.at("loop").get<bool>();
  Json results;
  results["n"] = p.n();
  Json diagnostics;
  diagnostics["samples"] = p.size();
  diagnostics["duration"] = p.duration();
  if (loop) {
    MaslovResult r = loop_winding_index(p, spec.seed, spec.tol);
    results["index"] = r.index;
    results["index_residual"] = r.residual;
    results["winding"] = r.index / 2;
    diagnostics["endpoint_transversal"] = r.endpoint_transversal;
  } else {
    LagrangianFrame plane = doc.contains("plane")
                                ? parse_plane(doc.at("plane"), "$.plane", p.n(), spec.tol)
                                : LagrangianFrame::momentum_plane(p.n());
    MaslovResult r = maslov_index_rel(p, plane, spec.seed, spec.tol);
    results["index"] = r.index;
    results["index_residual"] = r.residual;
    diagnostics["endpoint_transversal"] = r.endpoint_transversal;
  }
  report["results"] = std::move(results);
  report["diagnostics"] = std::move(diagnostics);
}

inline bool run_monodromy(const JobSpec& spec, Json& report) {
  const Json& doc = spec.document;
  HamiltonianSpec system = parse_system_spec(doc.at("system"), "$.system", spec.tol);
  int steps = spec.steps > 0 ? spec.steps : 256;
  int repetitions = doc.contains("repetitions")
                        ? static_cast<int>(doc.at("repetitions").get<long>())
                        : 0;
  int periods = std::max(2, repetitions);
  IntegrationLog log;
  SymplecticPath flow = integrate_variational(system, periods, steps, &log, spec.tol);
  SymplecticPath doubled =
      periods == 2 ? flow : flow.restricted_to(2.0 * system.period(), spec.tol);
  MonodromyDecomposition d = split_monodromy(doubled, system.period(), spec.seed, spec.tol);
  SplittingReport r = splitting_report(d, spec.seed, spec.tol, false);

  Json results;
  results["n"] = system.n();
  results["period"] = system.period();
  results["mu_period"] = r.mu_period;
  results["mu_double"] = r.mu_double;
  results["mu_periodic_part"] = r.mu_periodic_part;
  results["mu_unitary_part"] = r.mu_unitary_part;
  results["mu_exp_period"] = r.mu_exp_period;
  results["mu_exp_double"] = r.mu_exp_double;
  results["inertia_correction"] = r.inertia_correction;
  results["winding"] = r.winding;
  results["index_residual_max"] = r.index_residual_max;
  bool ok = r.all_hold();

  Json checks;
  checks["halving"] = r.halving_holds;
  checks["winding"] = r.winding_holds;
  checks["doubling"] = r.doubling_holds;
  checks["generator_checked"] = r.generator_checked;
  checks["generator"] = r.generator_holds;
  if (repetitions >= 2) {
    RepetitionReport rep =
        repetition_index(flow, system.period(), repetitions, spec.seed, spec.tol, false);
    results["mu_repeated_direct"] = rep.direct;
    results["mu_repeated_recursive"] = rep.recursive;
    checks["repetition"] = rep.holds();
    ok = ok && rep.holds();
  }

  // Index relative to the orbit tangent; only well formed for one degree
  // of freedom, and reported for information rather than asserted.
  if (orbit_tangent_available(system)) {
    MaslovResult tangent = maslov_index_rel(flow.restricted_to(system.period(), spec.tol),
                                            orbit_tangent_frame(system, spec.tol), spec.seed,
                                            spec.tol);
    results["xi_gamma"] = tangent.index;
    results["xi_gamma_residual"] = tangent.residual;
    results["xi_gamma_tentative"] = true;
  }
  report["results"] = std::move(results);
  report["checks"] = std::move(checks);

  Json diagnostics;
  diagnostics["steps_per_period"] = steps;
  diagnostics["periods"] = periods;
  diagnostics["exact_flow"] = log.exact_flow;
  diagnostics["corrections"] = log.corrections;
  diagnostics["max_raw_drift"] = log.max_raw_drift;
  diagnostics["max_final_drift"] = log.max_final_drift;
  diagnostics["projection_residual"] = d.projection_residual;
  diagnostics["exponential_residual"] = d.exponential_residual;
  report["diagnostics"] = std::move(diagnostics);
  return ok;
}

inline bool run_change_origin(const JobSpec& spec, Json& report) {
  const Json& doc = spec.document;
  HamiltonianSpec system = parse_system_spec(doc.at("system"), "$.system", spec.tol);
  double t_prime = doc.at("t_prime").get<double>();
  int steps = spec.steps > 0 ? spec.steps : 256;
  OriginChangeReport r =
      change_origin_report(system, t_prime, steps, spec.seed, spec.tol, false);

  Json results;
  results["n"] = system.n();
  results["period"] = system.period();
  results["t_prime"] = r.t_prime;
  results["mu_base"] = r.mu_base;
  results["mu_shifted"] = r.mu_shifted;
  results["mu_rebased"] = r.mu_rebased;
  results["inertia_first"] = r.inertia_first;
  results["inertia_second"] = r.inertia_second;
  results["winding_base"] = r.winding_base;
  results["winding_shifted"] = r.winding_shifted;
  results["index_residual_max"] = r.index_residual_max;
  report["results"] = std::move(results);

  Json checks;
  checks["rebase"] = r.rebase_holds;
  checks["difference"] = r.difference_holds;
  checks["winding"] = r.winding_holds;
  report["checks"] = std::move(checks);

  Json diagnostics;
  diagnostics["steps_per_period"] = steps;
  diagnostics["conjugacy_residual"] = r.conjugacy_residual;
  diagnostics["group_relation_residual"] = r.group_relation_residual;
  report["diagnostics"] = std::move(diagnostics);
  return r.all_hold();
}

inline bool run_verify(const JobSpec& spec, Json& report) {
  const Json& doc = spec.document;
  int trials = doc.contains("trials") ? static_cast<int>(doc.at("trials").get<long>()) : 24;
  int max_n = doc.contains("max_n") ? static_cast<int>(doc.at("max_n").get<long>()) : 3;
  std::vector<VerifyCheck> checks = run_verify_suite(spec.seed, trials, max_n, spec.tol);
  Json rows = Json::array();
  int failed = 0;
  for (const VerifyCheck& check : checks) {
    Json row;
    row["name"] = check.name;
    row["cases"] = check.cases;
    row["passed"] = check.passed;
    rows.push_back(std::move(row));
    if (!check.passed) ++failed;
  }
  Json results;
  results["trials"] = trials;
  results["max_n"] = max_n;
  results["total"] = checks.size();
  results["failed"] = failed;
  results["checks"] = std::move(rows);
  report["results"] = std::move(results);
  return failed == 0;
}

}  // namespace detail

inline JobOutcome run_job(const JobSpec& spec) {
  Json report;
  report["version"] = std::string("maslov ") + kVersion;
  report["command"] = spec.command;
  report["seed"] = spec.seed;
  report["inputs"] = spec.document;
  bool ok = true;
  if (spec.command == "leray") {
    detail::run_leray(spec, report);
  } else if (spec.command == "signature") {
    detail::run_signature(spec, report, false);
  } else if (spec.command == "inert") {
    detail::run_signature(spec, report, true);
  } else if (spec.command == "maslov-path") {
    detail::run_maslov_path(spec, report);
  } else if (spec.command == "monodromy") {
    ok = detail::run_monodromy(spec, report);
  } else if (spec.command == "change-origin") {
    ok = detail::run_change_origin(spec, report);
  } else if (spec.command == "verify") {
    ok = detail::run_verify(spec, report);
  } else {
    schema::fail("$.command", "unknown command '" + spec.command + "'");
  }
  report["status"] = ok ? "ok" : "identity_violated";
  return {std::move(report), ok ? 0 : 2};
}

namespace detail {

inline void flatten_json(const Json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten_json(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    return;
  }
  if (j.is_array()) {
    bool scalars_only = true;
    for (const Json& element : j)
      if (element.is_structured()) scalars_only = false;
    if (!scalars_only) {
      for (std::size_t i = 0; i < j.size(); ++i)
        flatten_json(j[i], prefix + "[" + std::to_string(i) + "]", out);
      return;
    }
  }
  out += prefix;
  out += "  ";
  out += j.dump();
  out += "\n";
}

}  // namespace detail

// One scalar per line, path on the left; arrays of scalars stay inline.
inline std::string render_text(const Json& report) {
  std::string out;
  detail::flatten_json(report, "", out);
  return out;
}

inline int exit_code_for(const Error& e) {
  return e.code() == Error::Code::kIdentityViolated ? 2 : 1;
}

}  // namespace maslov
