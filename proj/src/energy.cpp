#include "murec/energy.hpp"

#include <cmath>
#include <stdexcept>

#include "murec/kernels.hpp"

namespace murec {

Problem::Problem(Density density_in, DataTermProfile data_in, ImageField u0_in,
                 Mask mask_in)
    : density(density_in), data(data_in), u0(std::move(u0_in)), mask(std::move(mask_in)) {
  if (mask.width() != u0.width() || mask.height() != u0.height())
    throw std::invalid_argument("mask shape does not match the data");
  if (!u0.all_finite()) throw std::invalid_argument("observed data contains non-finite values");
  mask.validate();
}

EnergyEvaluator::EnergyEvaluator(const Problem& p)
    : p_(p),
      grad_(p.u0.width(), p.u0.height(), p.u0.channels(), p.u0.spacing()),
      diff_(p.u0.width(), p.u0.height(), p.u0.channels(), p.u0.spacing()),
      div_(p.u0.width(), p.u0.height(), p.u0.channels(), p.u0.spacing()) {
  const std::size_t n = p.u0.pixels();
  norms_.assign(n, 0.0);
  coeff_.assign(n, 0.0);
  fid_coeff_.assign(n, 0.0);
  diff_norms_.assign(n, 0.0);
  // Number of forward differences incident to each pixel; the diagonal of
  // G^T G scaled by h^2 is deg/h^2 * h^2 = deg.
  deg_.assign(n, 0.0);
  const int w = p.u0.width(), h = p.u0.height();
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double d = 0.0;
      if (x + 1 < w) d += 1.0;
      if (x > 0) d += 1.0;
      if (y + 1 < h) d += 1.0;
      if (y > 0) d += 1.0;
      deg_[static_cast<std::size_t>(y) * w + x] = d;
    }
}

EnergyBreakdown EnergyEvaluator::energy(const ImageField& u, double delta) {
  if (!u.same_shape(p_.u0)) throw std::invalid_argument("field shape mismatch");
  if (!(delta >= 0.0)) throw std::invalid_argument("delta must be non-negative");
  const auto& k = kernels::table();
  const std::size_t npx = u.pixels();
  const std::size_t w = static_cast<std::size_t>(u.width());
  const std::size_t hgt = static_cast<std::size_t>(u.height());
  const double inv_h = 1.0 / u.spacing();
  const double h2 = u.spacing() * u.spacing();

  for (int c = 0; c < u.channels(); ++c) {
    k.diff_x(grad_.dx_plane(c), u.plane(c), w, hgt, inv_h);
    k.diff_y(grad_.dy_plane(c), u.plane(c), w, hgt, inv_h);
  }
  std::fill(norms_.begin(), norms_.end(), 0.0);
  for (int p = 0; p < grad_.planes(); ++p) k.accum_sq(norms_.data(), grad_.plane(p), npx);

  EnergyBreakdown out;
  double sq = k.sum(norms_.data(), npx);
  out.tikhonov = 0.5 * delta * h2 * sq;

  k.sqrt_arr(norms_.data(), norms_.data(), npx);
  double reg = 0.0;
  for (std::size_t i = 0; i < npx; ++i) reg += p_.density.profile_value(norms_[i]);
  out.regularizer = h2 * reg;

  for (int c = 0; c < u.channels(); ++c)
    k.sub(diff_.plane(c), u.plane(c), p_.u0.plane(c), npx);
  std::fill(diff_norms_.begin(), diff_norms_.end(), 0.0);
  for (int c = 0; c < u.channels(); ++c)
    k.accum_sq(diff_norms_.data(), diff_.plane(c), npx);
  k.sqrt_arr(diff_norms_.data(), diff_norms_.data(), npx);
  double fid = 0.0;
  for (std::size_t i = 0; i < npx; ++i)
    if (!p_.mask.in_region(i)) fid += p_.data.value(diff_norms_[i]);
  out.fidelity = h2 * fid;

  out.total = out.regularizer + out.fidelity + out.tikhonov;
  return out;
}

EnergyEvaluator::GradientResult EnergyEvaluator::energy_gradient(
    const ImageField& u, double delta, ImageField& grad_out, ImageField* precond) {
  if (!u.same_shape(p_.u0) || !grad_out.same_shape(p_.u0))
    throw std::invalid_argument("field shape mismatch");
  if (!(delta >= 0.0)) throw std::invalid_argument("delta must be non-negative");
  const auto& k = kernels::table();
  const std::size_t npx = u.pixels();
  const std::size_t w = static_cast<std::size_t>(u.width());
  const std::size_t hgt = static_cast<std::size_t>(u.height());
  const double inv_h = 1.0 / u.spacing();
  const double h2 = u.spacing() * u.spacing();

  GradientResult res;

  for (int c = 0; c < u.channels(); ++c) {
    k.diff_x(grad_.dx_plane(c), u.plane(c), w, hgt, inv_h);
    k.diff_y(grad_.dy_plane(c), u.plane(c), w, hgt, inv_h);
  }
  std::fill(norms_.begin(), norms_.end(), 0.0);
  for (int p = 0; p < grad_.planes(); ++p) k.accum_sq(norms_.data(), grad_.plane(p), npx);
  double sq = k.sum(norms_.data(), npx);
  res.energy.tikhonov = 0.5 * delta * h2 * sq;
  k.sqrt_arr(norms_.data(), norms_.data(), npx);

  double reg = 0.0;
  double max_sigma = 0.0;
  for (std::size_t i = 0; i < npx; ++i) {
    const double t = norms_[i];
    reg += p_.density.profile_value(t);
    const double c = p_.density.profile_deriv_over_t(t);
    const double sigma = c * t;  // |DF| = Phi'(t)
    if (sigma > max_sigma) max_sigma = sigma;
    coeff_[i] = c + delta;
  }
  res.energy.regularizer = h2 * reg;
  res.max_dual_norm = max_sigma;

  for (int c = 0; c < u.channels(); ++c)
    k.sub(diff_.plane(c), u.plane(c), p_.u0.plane(c), npx);
  std::fill(diff_norms_.begin(), diff_norms_.end(), 0.0);
  for (int c = 0; c < u.channels(); ++c)
    k.accum_sq(diff_norms_.data(), diff_.plane(c), npx);
  k.sqrt_arr(diff_norms_.data(), diff_norms_.data(), npx);
  double fid = 0.0;
  for (std::size_t i = 0; i < npx; ++i) {
    if (p_.mask.in_region(i)) {
      fid_coeff_[i] = 0.0;
    } else {
      fid += p_.data.value(diff_norms_[i]);
      fid_coeff_[i] = p_.data.deriv_over_t(diff_norms_[i]);
    }
  }
  res.energy.fidelity = h2 * fid;
  res.energy.total = res.energy.regularizer + res.energy.fidelity + res.energy.tikhonov;

  // grad = h^2 * (-div((Phi'(t)/t + delta) Gu) + fid_coeff * (u - u0))
  for (int c = 0; c < u.channels(); ++c) {
    k.mul(grad_.dx_plane(c), grad_.dx_plane(c), coeff_.data(), npx);
    k.mul(grad_.dy_plane(c), grad_.dy_plane(c), coeff_.data(), npx);
  }
  std::fill(div_.values().begin(), div_.values().end(), 0.0);
  for (int c = 0; c < u.channels(); ++c) {
    k.div_x_accum(div_.plane(c), grad_.dx_plane(c), w, hgt, inv_h);
    k.div_y_accum(div_.plane(c), grad_.dy_plane(c), w, hgt, inv_h);
  }
  for (int c = 0; c < u.channels(); ++c) {
    double* out = grad_out.plane(c);
    k.mul(out, diff_.plane(c), fid_coeff_.data(), npx);
    k.axpy(out, -1.0, div_.plane(c), npx);
    k.scale(out, h2, out, npx);
  }
  res.grad_max_norm = k.max_abs(grad_out.values().data(), grad_out.size());

  if (precond) {
    if (!precond->same_shape(p_.u0)) throw std::invalid_argument("field shape mismatch");
    // Diagonal curvature estimate: fidelity tangential weight plus the
    // (Tikhonov + density tangential) weight once per incident difference.
    for (std::size_t i = 0; i < npx; ++i) {
      double d = h2 * fid_coeff_[i] + coeff_[i] * deg_[i];
      coeff_[i] = d > 1e-12 ? d : 1e-12;
    }
    for (int c = 0; c < u.channels(); ++c)
      std::copy(coeff_.begin(), coeff_.end(), precond->plane(c));
  }
  return res;
}

EnergyBreakdown energy(const Problem& p, const ImageField& u, double delta) {
  EnergyEvaluator ev(p);
  return ev.energy(u, delta);
}

ImageField energy_gradient(const Problem& p, const ImageField& u, double delta) {
  EnergyEvaluator ev(p);
  ImageField g(u.width(), u.height(), u.channels(), u.spacing());
  ev.energy_gradient(u, delta, g);
  return g;
}

GradientField dual_variable(const Problem& p, const ImageField& u) {
  GradientField g = gradient(u);
  std::vector<double> t;
  pixel_norms(g, t);
  const std::size_t npx = g.pixels();
  std::vector<double> c(npx);
  for (std::size_t i = 0; i < npx; ++i) c[i] = p.density.profile_deriv_over_t(t[i]);
  const auto& k = kernels::table();
  for (int pl = 0; pl < g.planes(); ++pl) k.mul(g.plane(pl), g.plane(pl), c.data(), npx);
  return g;
}

double max_dual_norm(const Problem& p, const ImageField& u) {
  return dual_variable(p, u).max_pixel_norm();
}

}  // namespace murec
