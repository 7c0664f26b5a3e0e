#include "murec/solver.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>

#include "murec/kernels.hpp"

namespace murec {

namespace {

constexpr int kMaxBacktracks = 64;

bool observed_constant(const Problem& p, std::vector<double>& value) {
  value.assign(p.u0.channels(), 0.0);
  bool first = true;
  for (std::size_t i = 0; i < p.u0.pixels(); ++i) {
    if (p.mask.in_region(i)) continue;
    if (first) {
      for (int c = 0; c < p.u0.channels(); ++c) value[c] = p.u0.plane(c)[i];
      first = false;
      continue;
    }
    for (int c = 0; c < p.u0.channels(); ++c)
      if (p.u0.plane(c)[i] != value[c]) return false;
  }
  return true;
}

// One delta stage, warm-started from u. Appends per-iteration records tagged
// with stage_index and returns the stage summary.
StageRecord minimize_stage(double delta, ImageField& u, const SolverConfig& cfg,
                           int stage_index, SolverTrace& trace,
                           EnergyEvaluator& ev) {
  const auto& k = kernels::table();
  const double tol = cfg.resolved_grad_tol(u.pixels());
  const std::size_t n = u.size();

  ImageField grad(u.width(), u.height(), u.channels(), u.spacing());
  ImageField precond(u.width(), u.height(), u.channels(), u.spacing());
  ImageField candidate(u.width(), u.height(), u.channels(), u.spacing());

  StageRecord stage;
  stage.delta = delta;

  auto state = ev.energy_gradient(u, delta, grad, &precond);
  if (!std::isfinite(state.energy.total))
    throw SolverError("non-finite energy at the stage start");
  trace.max_dual_norm = std::max(trace.max_dual_norm, state.max_dual_norm);
  trace.iterations.push_back({stage_index, 0, state.energy, state.grad_max_norm, 0.0});

  double step = 1.0;
  int it = 0;
  stage.termination = Termination::MaxIters;
  for (; it < cfg.max_iters; ++it) {
    if (state.grad_max_norm <= tol) {
      stage.termination = Termination::Stationary;
      break;
    }

    // Preconditioned steepest descent: d = -g / P, reusing the gradient
    // buffer since g is not needed past the directional derivative.
    double gd = 0.0;
    {
      double* g = grad.values().data();
      const double* pc = precond.values().data();
      for (std::size_t i = 0; i < n; ++i) {
        double di = -g[i] / pc[i];
        gd += g[i] * di;
        g[i] = di;
      }
    }

    step = std::min(step * 2.0, 1e12);
    bool accepted = false;
    EnergyBreakdown cand_energy;
    for (int bt = 0; bt < kMaxBacktracks; ++bt) {
      for (int c = 0; c < u.channels(); ++c)
        k.add_scaled(candidate.plane(c), u.plane(c), step, grad.plane(c), u.pixels());
      cand_energy = ev.energy(candidate, delta);
      if (!std::isfinite(cand_energy.total))
        throw SolverError("line search produced a non-finite energy");
      if (cand_energy.total <= state.energy.total + cfg.sufficient_decrease * step * gd) {
        accepted = true;
        break;
      }
      step *= cfg.backtrack_factor;
    }
    if (!accepted) break;  // fp-limited decrease; reported as MaxIters

    std::swap(u, candidate);
    state = ev.energy_gradient(u, delta, grad, &precond);
    trace.max_dual_norm = std::max(trace.max_dual_norm, state.max_dual_norm);
    trace.iterations.push_back(
        {stage_index, it + 1, state.energy, state.grad_max_norm, step});
  }
  if (it == cfg.max_iters && state.grad_max_norm <= tol)
    stage.termination = Termination::Stationary;

  stage.iterations = it;
  stage.k_delta = state.energy.total;
  stage.k_zero = ev.energy(u, 0.0).total;
  stage.grad_max_norm = state.grad_max_norm;
  return stage;
}

std::pair<ImageField, SolverTrace> run_schedule(const Problem& p,
                                                const SolverConfig& cfg,
                                                const ImageField& init,
                                                const std::vector<double>& deltas) {
  cfg.validate();
  if (!init.same_shape(p.u0)) throw std::invalid_argument("init shape mismatch");

  std::optional<kernels::BackendGuard> guard;
  if (cfg.deterministic) guard.emplace(kernels::Backend::Scalar);

  SolverTrace trace;
  ImageField u = init;

  // A fully observed constant image is its own exact minimizer: every term
  // vanishes at u = u0, which is a global minimum.
  std::vector<double> cval;
  if (p.mask.empty() && observed_constant(p, cval)) {
    u = p.u0;
    EnergyEvaluator ev(p);
    for (std::size_t s = 0; s < deltas.size(); ++s) {
      StageRecord stage;
      stage.delta = deltas[s];
      stage.iterations = 0;
      stage.k_delta = ev.energy(u, deltas[s]).total;
      stage.k_zero = ev.energy(u, 0.0).total;
      stage.grad_max_norm = 0.0;
      stage.termination = Termination::Stationary;
      trace.stages.push_back(stage);
      trace.iterations.push_back({static_cast<int>(s), 0, {0, 0, 0, 0}, 0.0, 0.0});
    }
    trace.termination = Termination::Stationary;
    return {std::move(u), std::move(trace)};
  }

  EnergyEvaluator ev(p);
  for (std::size_t s = 0; s < deltas.size(); ++s) {
    StageRecord stage =
        minimize_stage(deltas[s], u, cfg, static_cast<int>(s), trace, ev);
    trace.total_iterations += stage.iterations;
    trace.termination = stage.termination;
    trace.stages.push_back(stage);
  }
  return {std::move(u), std::move(trace)};
}

}  // namespace

double SolverConfig::resolved_grad_tol(std::size_t pixels) const {
  if (grad_tol > 0.0) return grad_tol;
  return 1e-7 * std::sqrt(static_cast<double>(pixels));
}

void SolverConfig::validate() const {
  if (max_iters < 1) throw std::invalid_argument("max_iters must be positive");
  if (grad_tol < 0.0) throw std::invalid_argument("grad_tol must be non-negative");
  if (!(sufficient_decrease > 0.0) || sufficient_decrease >= 1.0)
    throw std::invalid_argument("sufficient_decrease must lie in (0,1)");
  if (!(backtrack_factor > 0.0) || backtrack_factor >= 1.0)
    throw std::invalid_argument("backtrack_factor must lie in (0,1)");
  if (!(delta_start > 0.0)) throw std::invalid_argument("delta_start must be positive");
  if (!(delta_factor > 0.0) || delta_factor >= 1.0)
    throw std::invalid_argument("delta_factor must lie in (0,1)");
  if (delta_steps < 1) throw std::invalid_argument("delta_steps must be positive");
}

ImageField default_init(const Problem& p) {
  ImageField u = p.u0;
  if (p.mask.empty()) return u;
  const std::size_t observed = p.mask.observed_count();
  for (int c = 0; c < u.channels(); ++c) {
    double mean = 0.0;
    const double* src = p.u0.plane(c);
    for (std::size_t i = 0; i < u.pixels(); ++i)
      if (!p.mask.in_region(i)) mean += src[i];
    mean /= static_cast<double>(observed);
    double* dst = u.plane(c);
    for (std::size_t i = 0; i < u.pixels(); ++i)
      if (p.mask.in_region(i)) dst[i] = mean;
  }
  return u;
}

std::pair<ImageField, SolverTrace> minimize_fixed_delta(const Problem& p,
                                                        double delta,
                                                        const ImageField& init,
                                                        const SolverConfig& cfg) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  return run_schedule(p, cfg, init, {delta});
}

std::pair<ImageField, SolverTrace> continuation(const Problem& p,
                                                const SolverConfig& cfg,
                                                const ImageField& init) {
  cfg.validate();
  std::vector<double> deltas(cfg.delta_steps);
  double d = cfg.delta_start;
  for (int k = 0; k < cfg.delta_steps; ++k, d *= cfg.delta_factor) deltas[k] = d;
  return run_schedule(p, cfg, init, deltas);
}

std::pair<ImageField, SolverTrace> continuation(const Problem& p,
                                                const SolverConfig& cfg) {
  return continuation(p, cfg, default_init(p));
}

}  // namespace murec
