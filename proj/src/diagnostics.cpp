#include "murec/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace murec {

double theorem_mu_bound(Theorem t, int n, bool inpainting) {
  if (n < 2) throw std::invalid_argument("dimension must satisfy n >= 2");
  switch (t) {
    case Theorem::T1_1:
      if (n != 2) throw std::invalid_argument("this statement is specific to n = 2");
      return inpainting ? 1.5 : 2.0;
    case Theorem::T1_2:
      return 2.0;
    case Theorem::T1_3:
      return 3.0 * n / (3.0 * n - 2.0);
    case Theorem::T1_4:
      return 2.0;
  }
  throw std::invalid_argument("unknown theorem");
}

ExponentReport sobolev_exponents(int n, double mu, Theorem t, bool inpainting) {
  if (n < 2) throw std::invalid_argument("dimension must satisfy n >= 2");
  if (!(mu > 1.0)) throw std::invalid_argument("ellipticity exponent must satisfy mu > 1");
  if (t == Theorem::T1_3 && n == 2)
    throw std::invalid_argument("the inpainting exponent formulas need n >= 3");

  ExponentReport rep;
  rep.n = n;
  rep.mu = mu;
  rep.theorem = t;
  rep.inpainting = inpainting;
  rep.mu_bound = theorem_mu_bound(t, n, inpainting);
  rep.admissible = mu < rep.mu_bound;
  switch (t) {
    case Theorem::T1_1:
      break;  // W^{1,p} for every finite p and W^{2,s} for s < 2; no formula
    case Theorem::T1_2:
      rep.p = 2.0;
      rep.s = 4.0 / (2.0 + mu);
      break;
    case Theorem::T1_3:
      rep.p = (1.0 - mu / 2.0) * (2.0 * n) / (n - 2);
      rep.s = (2.0 - mu) * n / (n - mu);
      break;
    case Theorem::T1_4:
      rep.p = 4.0 - mu;  // open bound: W^{1,p} for every p below it
      break;
  }
  return rep;
}

MaxPrincipleCheck max_principle_check(const ImageField& u, const ImageField& u0,
                                      const Mask& mask) {
  if (!u.same_shape(u0)) throw std::invalid_argument("field shape mismatch");
  if (mask.width() != u.width() || mask.height() != u.height())
    throw std::invalid_argument("mask shape mismatch");
  MaxPrincipleCheck chk;
  for (std::size_t i = 0; i < u.pixels(); ++i) {
    chk.sup_u = std::max(chk.sup_u, u.pixel_norm(i));
    if (!mask.in_region(i)) chk.sup_u0 = std::max(chk.sup_u0, u0.pixel_norm(i));
  }
  chk.pass = chk.sup_u <= chk.sup_u0 + 1e-6;
  return chk;
}

DualBoundCheck dual_bound_check(const Problem& p, const ImageField& u) {
  DualBoundCheck chk;
  chk.max_sigma = max_dual_norm(p, u);
  chk.nu1 = p.density.constants().nu1;
  chk.pass = chk.max_sigma <= chk.nu1 + 1e-12;
  return chk;
}

UniquenessCheck uniqueness_check(const Problem& p, const SolverConfig& cfg,
                                 int trials) {
  if (trials < 2) throw std::invalid_argument("uniqueness check needs >= 2 trials");
  std::vector<ImageField> finals;
  finals.reserve(trials);
  for (int t = 0; t < trials; ++t) {
    ImageField init(p.u0.width(), p.u0.height(), p.u0.channels(), p.u0.spacing());
    std::mt19937_64 rng(cfg.seed * 0x9e3779b97f4a7c15ull + t + 1);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (double& v : init.values()) v = uni(rng);
    finals.push_back(continuation(p, cfg, init).first);
  }
  UniquenessCheck chk;
  for (int a = 0; a < trials; ++a)
    for (int b = a + 1; b < trials; ++b) {
      for (std::size_t i = 0; i < p.u0.pixels(); ++i) {
        double dev = 0.0;
        for (int c = 0; c < p.u0.channels(); ++c)
          dev = std::max(dev, std::fabs(finals[a].plane(c)[i] - finals[b].plane(c)[i]));
        chk.max_dev_full = std::max(chk.max_dev_full, dev);
        if (!p.mask.in_region(i)) chk.max_dev_off_d = std::max(chk.max_dev_off_d, dev);
      }
    }
  chk.pass = chk.max_dev_off_d < 10.0 * cfg.resolved_grad_tol(p.u0.pixels());
  return chk;
}

std::vector<GradIntegrability> grad_integrability_stats(const ImageField& u,
                                                        std::span<const double> p_list) {
  GradientField g = gradient(u);
  std::vector<double> norms;
  pixel_norms(g, norms);
  const double h2 = u.spacing() * u.spacing();
  std::vector<GradIntegrability> out;
  out.reserve(p_list.size());
  for (double p : p_list) {
    if (!(p >= 1.0)) throw std::invalid_argument("integrability orders must satisfy p >= 1");
    double acc = 0.0;
    for (double t : norms) acc += h2 * std::pow(1.0 + t, p);
    out.push_back({p, std::pow(acc, 1.0 / p)});
  }
  return out;
}

DiagnosticsReport run_diagnostics(const Problem& p, const SolverConfig& cfg,
                                  const ImageField& u,
                                  std::span<const double> p_list) {
  DiagnosticsReport rep;
  rep.max_principle = max_principle_check(u, p.u0, p.mask);
  rep.dual_bound = dual_bound_check(p, u);
  rep.uniqueness = uniqueness_check(p, cfg, 2);
  rep.grad_integrability = grad_integrability_stats(u, p_list);
  return rep;
}

}  // namespace murec
