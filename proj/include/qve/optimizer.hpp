#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "qve/ansatz.hpp"
#include "qve/types.hpp"

namespace qve {

enum class OptMethod { Spsa, NelderMead };

/// a_k = a / (k + 1 + A)^alpha, c_k = c / (k + 1)^gamma. A zero `a` is
/// auto-calibrated at the start of each restart so the first step moves
/// each coordinate by about 0.1 rad; a zero `A` defaults to 10% of the
/// restart's iteration budget.
struct SpsaGains {
  double a = 0.0;
  double c = 0.1;
  double A = 0.0;
  double alpha = 0.602;
  double gamma = 0.101;
};

struct OptimizerConfig {
  OptMethod method = OptMethod::NelderMead;
  std::int64_t max_evals = 5000;  // per restart
  double target_value = -std::numeric_limits<double>::infinity();
  int restarts = 1;
  std::uint64_t seed = 0;  // echoed into results; minimize uses the Rng
  SpsaGains spsa;
  double nm_simplex_scale = 0.25;
  double f_tol = 1e-6;
  std::int64_t stall_evals = 500;
};

enum class StopReason { Target, Budget, Stalled };

const char* stop_reason_name(StopReason reason);

struct TraceEntry {
  std::int64_t eval_index;
  double value;
  bool improved;  // new global best at this evaluation
};

struct OptimizationTrace {
  std::vector<TraceEntry> evaluations;
  double best_value = std::numeric_limits<double>::infinity();
  ParamVector best_params;
  std::int64_t n_evals = 0;
  StopReason stop_reason = StopReason::Budget;
  std::int64_t non_finite_evals = 0;

  /// Best-so-far value at every evaluation index.
  std::vector<double> best_value_curve() const;
};

/// Derivative-free minimization with restarts. Restart 0 starts from
/// `theta0`; later restarts draw fresh angles uniform on [0, 2*pi). The
/// returned parameters are the best point actually evaluated. Non-finite
/// objective values are discarded (counted in the trace) and never become
/// the best point. Deterministic given the generator state and a
/// deterministic objective.
std::pair<ParamVector, OptimizationTrace> minimize(
    const std::function<double(const ParamVector&)>& objective,
    const ParamVector& theta0, const OptimizerConfig& cfg, Rng& rng);

/// One SPSA update: theta' = theta - a_k * g_hat with g_hat estimated from
/// two evaluations at theta +- c_k * Delta, Delta i.i.d. Rademacher. If
/// either probe is non-finite the step is skipped and theta is returned
/// unchanged. `gains.a` and `gains.A` must be resolved (positive a).
ParamVector spsa_step(const ParamVector& theta, std::int64_t k,
                      const std::function<double(const ParamVector&)>& objective,
                      const SpsaGains& gains, Rng& rng);

}  // namespace qve
