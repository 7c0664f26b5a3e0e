#ifndef MUREC_ENERGY_HPP
#define MUREC_ENERGY_HPP

#include <vector>

#include "murec/grid.hpp"

// Discrete restoration functionals. With G the forward-difference gradient
// and h the grid spacing,
//
//   E_delta(u) = h^2 sum_p Phi(|Gu|_p)                      (regularizer)
//              + h^2 sum_{p not in D} dataterm(|u_p - u0_p|) (fidelity)
//              + (delta/2) h^2 sum_p |Gu|_p^2               (tikhonov)
//
// delta = 0 recovers the plain linear-growth functional. The analytic
// gradient is h^2 (-div(DF(Gu) + delta Gu) + fidelity'), and the dual
// variable sigma = DF(Gu) is bounded by nu1 pixelwise.

namespace murec {

struct Problem {
  Density density;
  DataTermProfile data;
  ImageField u0;
  Mask mask;

  // Validates shapes, finiteness of u0 and that the mask leaves at least one
  // pixel observed; throws std::invalid_argument otherwise.
  Problem(Density density, DataTermProfile data, ImageField u0, Mask mask);
};

struct EnergyBreakdown {
  double regularizer = 0.0;
  double fidelity = 0.0;
  double tikhonov = 0.0;
  double total = 0.0;
};

// Reusable evaluator holding the per-pixel scratch (gradient planes, norm
// maps, coefficient maps). One instance per concurrent solve.
class EnergyEvaluator {
 public:
  explicit EnergyEvaluator(const Problem& p);

  EnergyBreakdown energy(const ImageField& u, double delta);

  // Energy, analytic gradient, max gradient norm and the pointwise dual norm
  // max |sigma| of the current iterate, in one pass. When precond is non-null
  // it is filled with the diagonal curvature estimate used by the solver.
  struct GradientResult {
    EnergyBreakdown energy;
    double grad_max_norm = 0.0;
    double max_dual_norm = 0.0;
  };
  GradientResult energy_gradient(const ImageField& u, double delta,
                                 ImageField& grad_out, ImageField* precond = nullptr);

 private:
  const Problem& p_;
  GradientField grad_;
  std::vector<double> norms_;       // |Gu| per pixel
  std::vector<double> coeff_;       // Phi'(t)/t + delta per pixel
  std::vector<double> fid_coeff_;   // dataterm'(r)/r per pixel, 0 on D
  std::vector<double> diff_norms_;  // |u-u0| per pixel
  std::vector<double> deg_;         // incident forward-difference count (0..4)
  ImageField diff_;
  ImageField div_;
};

EnergyBreakdown energy(const Problem& p, const ImageField& u, double delta);
ImageField energy_gradient(const Problem& p, const ImageField& u, double delta);

// sigma(x) = DF(Gu(x)) per pixel.
GradientField dual_variable(const Problem& p, const ImageField& u);
double max_dual_norm(const Problem& p, const ImageField& u);

}  // namespace murec

#endif
