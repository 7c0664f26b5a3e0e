#ifndef MUREC_SOLVER_HPP
#define MUREC_SOLVER_HPP

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "murec/energy.hpp"

// Minimization of the delta-regularized functional by diagonally
// preconditioned descent with Armijo backtracking, and the continuation
// delta -> 0 over a geometric schedule with warm starts. Energies recorded
// per accepted iterate are non-increasing within a stage; the delta = 0
// evaluations recorded per stage are non-increasing along the schedule.

namespace murec {

struct SolverConfig {
  int max_iters = 200000;
  // Stationarity tolerance on the max-norm of the energy gradient;
  // 0 selects the default 1e-7 * sqrt(#pixels).
  double grad_tol = 0.0;
  double sufficient_decrease = 1e-4;
  double backtrack_factor = 0.5;
  double delta_start = 1e-1;
  double delta_factor = 1e-1;
  int delta_steps = 4;
  bool deterministic = false;
  std::uint64_t seed = 0;

  double resolved_grad_tol(std::size_t pixels) const;
  void validate() const;  // throws std::invalid_argument
};

enum class Termination { Stationary, MaxIters };

struct IterationRecord {
  int stage = 0;
  int iter = 0;
  EnergyBreakdown energy;
  double grad_max_norm = 0.0;
  double step = 0.0;  // step accepted to reach this iterate (0 for the initial one)
};

struct StageRecord {
  double delta = 0.0;
  int iterations = 0;
  double k_delta = 0.0;  // E_delta at the stage minimizer
  double k_zero = 0.0;   // delta = 0 evaluation at the stage minimizer
  double grad_max_norm = 0.0;
  Termination termination = Termination::Stationary;
};

struct SolverTrace {
  std::vector<IterationRecord> iterations;
  std::vector<StageRecord> stages;
  Termination termination = Termination::Stationary;
  int total_iterations = 0;
  double max_dual_norm = 0.0;  // max |sigma| over every recorded iterate
};

// Raised when a line-search candidate produces a non-finite energy.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// u0 on observed pixels; the per-channel observed mean on D.
ImageField default_init(const Problem& p);

std::pair<ImageField, SolverTrace> minimize_fixed_delta(const Problem& p,
                                                        double delta,
                                                        const ImageField& init,
                                                        const SolverConfig& cfg);

std::pair<ImageField, SolverTrace> continuation(const Problem& p,
                                                const SolverConfig& cfg);
std::pair<ImageField, SolverTrace> continuation(const Problem& p,
                                                const SolverConfig& cfg,
                                                const ImageField& init);

}  // namespace murec

#endif
