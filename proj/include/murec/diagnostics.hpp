#ifndef MUREC_DIAGNOSTICS_HPP
#define MUREC_DIAGNOSTICS_HPP

#include <optional>
#include <span>
#include <vector>

#include "murec/solver.hpp"

// Numerical counterparts of the regularity/uniqueness statements: the
// Sobolev exponent calculator, the maximum principle and dual-bound checks
// on solver outputs, multi-start uniqueness, and descriptive gradient
// integrability statistics.

namespace murec {

enum class Theorem { T1_1, T1_2, T1_3, T1_4 };

// Admissible ellipticity range sup for each statement:
//   T1_1 (n = 2): 3/2 with a general inpainting region, 2 for pure denoising;
//   T1_2: 2;  T1_3: 3n/(3n-2);  T1_4: 2.
double theorem_mu_bound(Theorem t, int n, bool inpainting);

struct ExponentReport {
  int n = 2;
  double mu = 0.0;
  Theorem theorem = Theorem::T1_1;
  bool inpainting = true;
  bool admissible = false;
  std::optional<double> p;  // first-derivative integrability order (sup where open)
  std::optional<double> s;  // second-derivative integrability order
  double mu_bound = 0.0;
};

// Exact exponent formulas. T1_2: p = 2, s = 4/(2+mu). T1_3 (n >= 3 required,
// throws std::invalid_argument at n = 2): p = (1-mu/2)*2n/(n-2),
// s = (2-mu)n/(n-mu). T1_4: p = 4-mu (open bound). T1_1 asserts qualitative
// regularity only, so p and s stay empty.
ExponentReport sobolev_exponents(int n, double mu, Theorem t, bool inpainting = true);

struct MaxPrincipleCheck {
  double sup_u = 0.0;   // max over all pixels of |u| (Euclidean across channels)
  double sup_u0 = 0.0;  // max over observed pixels of |u0|
  bool pass = false;    // sup_u <= sup_u0 + 1e-6
};
MaxPrincipleCheck max_principle_check(const ImageField& u, const ImageField& u0,
                                      const Mask& mask);

struct DualBoundCheck {
  double max_sigma = 0.0;
  double nu1 = 0.0;
  bool pass = false;  // max_sigma <= nu1 + 1e-12
};
DualBoundCheck dual_bound_check(const Problem& p, const ImageField& u);

struct UniquenessCheck {
  double max_dev_off_d = 0.0;  // max pairwise deviation on observed pixels
  double max_dev_full = 0.0;   // same over the whole grid
  bool pass = false;           // max_dev_off_d < 10 * grad_tol
};
// Runs continuation from `trials` seeded uniform random starts.
UniquenessCheck uniqueness_check(const Problem& p, const SolverConfig& cfg,
                                 int trials);

struct GradIntegrability {
  double p = 0.0;
  double norm = 0.0;  // ( sum h^2 (1+|grad u|)^p )^(1/p)
};
std::vector<GradIntegrability> grad_integrability_stats(const ImageField& u,
                                                        std::span<const double> p_list);

struct DiagnosticsReport {
  MaxPrincipleCheck max_principle;
  DualBoundCheck dual_bound;
  UniquenessCheck uniqueness;
  std::vector<GradIntegrability> grad_integrability;
};

DiagnosticsReport run_diagnostics(const Problem& p, const SolverConfig& cfg,
                                  const ImageField& u,
                                  std::span<const double> p_list);

}  // namespace murec

#endif
