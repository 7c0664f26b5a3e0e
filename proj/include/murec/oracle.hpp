#ifndef MUREC_ORACLE_HPP
#define MUREC_ORACLE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "murec/energy.hpp"

// Independent reference answers for tiny instances. Nothing here shares code
// with the energy/solver path: the objective is re-assembled with naive
// loops on top of the (quadrature-validated) density profiles, and the
// minimizers come from grid refinement and cyclic coordinate search.

namespace murec::oracle {

// Adaptive-Simpson double quadrature of (1+r)^(-mu); absolute error < 1e-9
// for t in [0, 1e3]. Independent check of the closed-form profile.
double numeric_phi(double mu, double t);

// Naive re-assembly of the objective (forward differences and pixel sums
// written out directly).
double objective(const Problem& p, const ImageField& u, double delta);

struct OracleResult {
  ImageField minimizer;
  double value = 0.0;
  int sweeps = 0;             // coordinate sweeps used
  double max_abs_slope = 0.0; // max |dE/dcoordinate| at the reported minimizer
  bool cross_checked = false; // grid search agreed with coordinate descent
};

// Instances up to 16 pixels and 2 channels. Unknown counts <= 3 also run the
// boxed grid search ([-1,2] at 1e-2, refined twice by 10x) and the two
// routes must agree to 1e-6; larger instances use coordinate descent alone,
// polished to ~1e-8 stationarity. Throws std::invalid_argument when the
// instance is too large and std::runtime_error when the routes disagree.
OracleResult brute_force_min(const Problem& tiny, double delta);

struct ComparisonCase {
  std::string label;
  double oracle_value = 0.0;
  double solver_value = 0.0;
  double value_rel_err = 0.0;
  double arg_max_dev = 0.0;
  bool pass = false;
};

struct ComparisonSummary {
  std::vector<ComparisonCase> cases;
  int failures = 0;
  double max_value_rel_err = 0.0;
  double max_arg_dev = 0.0;
  double max_dual_excess = 0.0;  // max over runs of max|sigma| - nu1
};

// Randomized solver-vs-oracle equivalence: cases_per_config instances for
// each of {both densities} x {both data terms} x {empty, half mask},
// continuation against brute_force_min, values compared at 1e-4 relative.
ComparisonSummary compare_with_solver(std::uint64_t seed, int cases_per_config);

}  // namespace murec::oracle

#endif
