#include "qve/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qve {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Loop {
  const std::function<double(const ParamVector&)>& objective;
  const OptimizerConfig& cfg;
  OptimizationTrace trace;

  // Per-restart bookkeeping.
  std::int64_t restart_evals = 0;
  double restart_best = kInf;
  std::int64_t evals_since_improvement = 0;
  bool target_hit = false;

  void begin_restart() {
    restart_evals = 0;
    restart_best = kInf;
    evals_since_improvement = 0;
  }

  bool restart_done() const {
    return target_hit || restart_evals >= cfg.max_evals ||
           evals_since_improvement >= cfg.stall_evals;
  }

  bool budget_left() const { return !restart_done(); }

  /// Evaluates, logs, and tracks bests. Returns +inf for a discarded
  /// non-finite value.
  double evaluate(const ParamVector& theta) {
    const double raw = objective(theta);
    ++restart_evals;
    const std::int64_t index = trace.n_evals++;
    if (!std::isfinite(raw)) {
      ++trace.non_finite_evals;
      ++evals_since_improvement;
      trace.evaluations.push_back(
          {index, std::numeric_limits<double>::quiet_NaN(), false});
      return kInf;
    }
    const bool improved = raw < trace.best_value;
    if (improved) {
      trace.best_value = raw;
      trace.best_params = theta;
    }
    if (raw < restart_best - cfg.f_tol) {
      evals_since_improvement = 0;
    } else {
      ++evals_since_improvement;
    }
    restart_best = std::min(restart_best, raw);
    trace.evaluations.push_back({index, raw, improved});
    if (trace.best_value <= cfg.target_value) target_hit = true;
    return raw;
  }
};

void run_nelder_mead(Loop& loop, const ParamVector& start, Rng&) {
  const Eigen::Index dim = start.size();
  const double scale = loop.cfg.nm_simplex_scale;

  std::vector<ParamVector> simplex;
  std::vector<double> values;
  auto build_simplex = [&](const ParamVector& origin) {
    simplex.clear();
    values.clear();
    simplex.push_back(origin);
    values.push_back(loop.evaluate(origin));
    for (Eigen::Index i = 0; i < dim && loop.budget_left(); ++i) {
      ParamVector v = origin;
      v(i) += scale;
      simplex.push_back(v);
      values.push_back(loop.evaluate(v));
    }
  };
  build_simplex(start);

  std::vector<std::size_t> order(simplex.size());
  while (loop.budget_left() && simplex.size() == std::size_t(dim) + 1) {
    order.resize(simplex.size());
    std::iota(order.begin(), order.end(), std::size_t(0));
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a,
                                                     std::size_t b) {
      return values[a] < values[b];
    });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[order.size() - 2];

    double diameter = 0.0;
    for (const ParamVector& v : simplex) {
      diameter = std::max(diameter, (v - simplex[best]).norm());
    }
    if (diameter < 1e-6) {
      // Collapsed simplex: rebuild around the best vertex and continue.
      const ParamVector origin = simplex[best];
      build_simplex(origin);
      continue;
    }

    ParamVector centroid = ParamVector::Zero(dim);
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (order[i] != worst) centroid += simplex[order[i]];
    }
    centroid /= static_cast<double>(dim);

    const ParamVector reflected = centroid + (centroid - simplex[worst]);
    const double f_reflected = loop.evaluate(reflected);
    if (!loop.budget_left()) break;

    if (f_reflected < values[best]) {
      const ParamVector expanded = centroid + 2.0 * (reflected - centroid);
      const double f_expanded = loop.evaluate(expanded);
      if (f_expanded < f_reflected) {
        simplex[worst] = expanded;
        values[worst] = f_expanded;
      } else {
        simplex[worst] = reflected;
        values[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < values[second_worst]) {
      simplex[worst] = reflected;
      values[worst] = f_reflected;
      continue;
    }

    if (f_reflected < values[worst]) {
      const ParamVector contracted = centroid + 0.5 * (reflected - centroid);
      const double f_contracted = loop.evaluate(contracted);
      if (f_contracted <= f_reflected) {
        simplex[worst] = contracted;
        values[worst] = f_contracted;
        continue;
      }
    } else {
      const ParamVector contracted =
          centroid + 0.5 * (simplex[worst] - centroid);
      const double f_contracted = loop.evaluate(contracted);
      if (f_contracted < values[worst]) {
        simplex[worst] = contracted;
        values[worst] = f_contracted;
        continue;
      }
    }

    // Shrink toward the best vertex.
    for (std::size_t i = 0; i < simplex.size() && loop.budget_left(); ++i) {
      if (i == best) continue;
      simplex[i] = simplex[best] + 0.5 * (simplex[i] - simplex[best]);
      values[i] = loop.evaluate(simplex[i]);
    }
  }
}

SpsaGains resolve_gains(const Loop& loop, const SpsaGains& gains) {
  SpsaGains g = gains;
  if (g.A <= 0.0) {
    g.A = 0.1 * static_cast<double>(std::max<std::int64_t>(
                    1, loop.cfg.max_evals / 2));
  }
  return g;
}

double calibrate_spsa_a(Loop& loop, const ParamVector& theta,
                        const SpsaGains& gains, Rng& rng) {
  // Aim the first update at ~0.1 rad per coordinate.
  constexpr double kTargetStep = 0.1;
  constexpr int kProbes = 5;
  double abs_sum = 0.0;
  std::int64_t samples = 0;
  for (int p = 0; p < kProbes && loop.budget_left(); ++p) {
    ParamVector delta(theta.size());
    for (Eigen::Index i = 0; i < delta.size(); ++i) {
      delta(i) = static_cast<double>(rng.rademacher());
    }
    const double f_plus = loop.evaluate(theta + gains.c * delta);
    if (!loop.budget_left()) break;
    const double f_minus = loop.evaluate(theta - gains.c * delta);
    if (!std::isfinite(f_plus) || !std::isfinite(f_minus)) continue;
    abs_sum += std::abs(f_plus - f_minus) / (2.0 * gains.c);
    ++samples;
  }
  const double mean_abs = samples > 0 ? abs_sum / samples : 0.0;
  const double boost = std::pow(gains.A + 1.0, gains.alpha);
  if (mean_abs < 1e-8) return kTargetStep * boost;
  return kTargetStep * boost / mean_abs;
}

void run_spsa(Loop& loop, const ParamVector& start, Rng& rng) {
  SpsaGains gains = resolve_gains(loop, loop.cfg.spsa);
  if (gains.a <= 0.0) gains.a = calibrate_spsa_a(loop, start, gains, rng);

  ParamVector theta = start;
  for (std::int64_t k = 0; loop.budget_left(); ++k) {
    const double ck = gains.c / std::pow(static_cast<double>(k + 1),
                                         gains.gamma);
    ParamVector delta(theta.size());
    for (Eigen::Index i = 0; i < delta.size(); ++i) {
      delta(i) = static_cast<double>(rng.rademacher());
    }
    const double f_plus = loop.evaluate(theta + ck * delta);
    if (!loop.budget_left()) break;
    const double f_minus = loop.evaluate(theta - ck * delta);
    if (!std::isfinite(f_plus) || !std::isfinite(f_minus)) continue;
    const double ak =
        gains.a / std::pow(static_cast<double>(k + 1) + gains.A, gains.alpha);
    const double slope = (f_plus - f_minus) / (2.0 * ck);
    // Rademacher entries are their own reciprocals.
    theta -= (ak * slope) * delta;
  }
}

}  // namespace

const char* stop_reason_name(StopReason reason) {
  switch (reason) {
    case StopReason::Target: return "target";
    case StopReason::Budget: return "budget";
    case StopReason::Stalled: return "stalled";
  }
  return "budget";
}

std::vector<double> OptimizationTrace::best_value_curve() const {
  std::vector<double> curve;
  curve.reserve(evaluations.size());
  double best = kInf;
  for (const TraceEntry& e : evaluations) {
    if (std::isfinite(e.value)) best = std::min(best, e.value);
    curve.push_back(best);
  }
  return curve;
}

std::pair<ParamVector, OptimizationTrace> minimize(
    const std::function<double(const ParamVector&)>& objective,
    const ParamVector& theta0, const OptimizerConfig& cfg, Rng& rng) {
  if (cfg.max_evals < 1) {
    throw ValidationError("invalid_config", "minimize: max_evals must be >= 1");
  }
  if (cfg.restarts < 1) {
    throw ValidationError("invalid_config", "minimize: restarts must be >= 1");
  }
  if (theta0.size() == 0) {
    throw ValidationError("invalid_config", "minimize: empty parameter vector");
  }

  Loop loop{objective, cfg, {}, 0, kInf, 0, false};
  StopReason last_restart_reason = StopReason::Budget;
  for (int restart = 0; restart < cfg.restarts && !loop.target_hit;
       ++restart) {
    loop.begin_restart();
    ParamVector start = theta0;
    if (restart > 0) {
      for (Eigen::Index i = 0; i < start.size(); ++i) {
        start(i) = rng.uniform(0.0, 2.0 * M_PI);
      }
    }
    if (cfg.method == OptMethod::Spsa) {
      run_spsa(loop, start, rng);
    } else {
      run_nelder_mead(loop, start, rng);
    }
    last_restart_reason = loop.restart_evals >= cfg.max_evals
                              ? StopReason::Budget
                              : StopReason::Stalled;
  }

  loop.trace.stop_reason =
      loop.target_hit ? StopReason::Target : last_restart_reason;
  if (!std::isfinite(loop.trace.best_value)) {
    loop.trace.best_params = theta0;
  }
  return {loop.trace.best_params, std::move(loop.trace)};
}

ParamVector spsa_step(const ParamVector& theta, std::int64_t k,
                      const std::function<double(const ParamVector&)>& objective,
                      const SpsaGains& gains, Rng& rng) {
  if (k < 0) {
    throw ValidationError("invalid_config", "spsa_step: k must be >= 0");
  }
  if (gains.a <= 0.0 || gains.c <= 0.0) {
    throw ValidationError("invalid_config",
                          "spsa_step: gains must be resolved and positive");
  }
  const double ck =
      gains.c / std::pow(static_cast<double>(k + 1), gains.gamma);
  ParamVector delta(theta.size());
  for (Eigen::Index i = 0; i < delta.size(); ++i) {
    delta(i) = static_cast<double>(rng.rademacher());
  }
  const double f_plus = objective(theta + ck * delta);
  const double f_minus = objective(theta - ck * delta);
  if (!std::isfinite(f_plus) || !std::isfinite(f_minus)) return theta;
  const double ak =
      gains.a / std::pow(static_cast<double>(k + 1) + gains.A, gains.alpha);
  const double slope = (f_plus - f_minus) / (2.0 * ck);
  return theta - (ak * slope) * delta;
}

}  // namespace qve
