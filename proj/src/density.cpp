#include "murec/density.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace murec {

namespace {

void check_domain(double mu, double t) {
  if (!(mu > 1.0)) throw std::domain_error("ellipticity exponent must satisfy mu > 1");
  if (!(t >= 0.0)) throw std::domain_error("radial argument must satisfy t >= 0");
}

// (1+t)^p via expm1/log1p so that values near t = 0 and exponents near 0
// keep full precision.
double pow1p(double p, double t) { return std::exp(p * std::log1p(t)); }

double frob_norm_sq(std::span<const double> z) {
  double s = 0.0;
  for (double v : z) s += v * v;
  return s;
}

void check_finite(std::span<const double> z) {
  for (double v : z)
    if (!std::isfinite(v)) throw std::domain_error("non-finite matrix entry");
}

constexpr double kTaylorCutoff = 1e-6;

}  // namespace

double phi_value(double mu, double t) {
  check_domain(mu, t);
  if (mu == 2.0) return t - std::log1p(t);
  // t/(mu-1) - ((1+t)^(2-mu) - 1)/((mu-1)(2-mu)); expm1 keeps the second
  // factor accurate for mu near 2, where (2-mu)*log1p(t) is tiny.
  return t / (mu - 1.0) -
         std::expm1((2.0 - mu) * std::log1p(t)) / ((mu - 1.0) * (2.0 - mu));
}

double phi_deriv(double mu, double t) {
  check_domain(mu, t);
  // (1 - (1+t)^(1-mu)) / (mu-1)
  return -std::expm1((1.0 - mu) * std::log1p(t)) / (mu - 1.0);
}

double phi_second(double mu, double t) {
  check_domain(mu, t);
  return pow1p(-mu, t);
}

Density Density::mu_family(double mu) {
  if (!(mu > 1.0)) throw std::domain_error("ellipticity exponent must satisfy mu > 1");
  if (!std::isfinite(mu)) throw std::domain_error("non-finite ellipticity exponent");
  return Density(DensityKind::MuFamily, mu);
}

Density Density::minimal_surface() {
  return Density(DensityKind::MinimalSurface, 3.0);
}

double Density::profile_value(double t) const {
  if (kind_ == DensityKind::MinimalSurface) {
    if (!(t >= 0.0)) throw std::domain_error("radial argument must satisfy t >= 0");
    return std::sqrt(1.0 + t * t) - 1.0;
  }
  return phi_value(mu_, t);
}

double Density::profile_deriv(double t) const {
  if (kind_ == DensityKind::MinimalSurface) {
    if (!(t >= 0.0)) throw std::domain_error("radial argument must satisfy t >= 0");
    return t / std::sqrt(1.0 + t * t);
  }
  return phi_deriv(mu_, t);
}

double Density::profile_second(double t) const {
  if (kind_ == DensityKind::MinimalSurface) {
    if (!(t >= 0.0)) throw std::domain_error("radial argument must satisfy t >= 0");
    double g = 1.0 + t * t;
    return 1.0 / (g * std::sqrt(g));
  }
  return phi_second(mu_, t);
}

double Density::profile_deriv_over_t(double t) const {
  if (kind_ == DensityKind::MinimalSurface) {
    if (!(t >= 0.0)) throw std::domain_error("radial argument must satisfy t >= 0");
    return 1.0 / std::sqrt(1.0 + t * t);
  }
  if (!(t >= 0.0)) throw std::domain_error("radial argument must satisfy t >= 0");
  // Phi'(t)/t -> Phi''(0) = 1 as t -> 0; Phi'''(0) = -mu gives the 2-term
  // Taylor expansion used below the cancellation cutoff.
  if (t < kTaylorCutoff) return 1.0 - 0.5 * mu_ * t;
  return phi_deriv(mu_, t) / t;
}

DensityConstants Density::constants() const {
  if (kind_ == DensityKind::MinimalSurface) {
    // sqrt(1+t^2)-1 >= t-1; eigenvalue envelopes give nu4 = 1, nu5 = sqrt(2).
    return {1.0, 1.0, 1.0, 1.0, std::sqrt(2.0)};
  }
  const double nu1 = 1.0 / (mu_ - 1.0);
  // Chord bound through T with Phi'(T) = nu1/2, i.e. T = 2^(1/(mu-1)) - 1:
  // F(Z) >= Phi'(T)|Z| - Phi'(T) T for all |Z| by convexity.
  const double chord_t = std::expm1(std::log(2.0) / (mu_ - 1.0));
  const double nu2 = 0.5 * nu1;
  const double nu3 = nu2 * chord_t;
  // Radial eigenvalue (1+t)^(-mu) attains the lower envelope; the tangential
  // one Phi'(t)/t is bounded by max(1, nu1)/(1+t).
  return {nu1, nu2, nu3, 1.0, std::max(1.0, nu1)};
}

double density_value(const Density& d, std::span<const double> z) {
  check_finite(z);
  return d.profile_value(std::sqrt(frob_norm_sq(z)));
}

void density_gradient(const Density& d, std::span<const double> z,
                      std::span<double> grad) {
  check_finite(z);
  if (grad.size() != z.size()) throw std::invalid_argument("gradient size mismatch");
  const double t = std::sqrt(frob_norm_sq(z));
  const double c = d.profile_deriv_over_t(t);
  for (std::size_t i = 0; i < z.size(); ++i) grad[i] = c * z[i];
}

double density_hessian_form(const Density& d, std::span<const double> z,
                            std::span<const double> x) {
  check_finite(z);
  check_finite(x);
  if (x.size() != z.size()) throw std::invalid_argument("direction size mismatch");
  const double t = std::sqrt(frob_norm_sq(z));
  const double xx = frob_norm_sq(x);
  if (t == 0.0) return d.profile_second(0.0) * xx;
  double zx = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) zx += z[i] * x[i];
  const double radial = (zx / t) * (zx / t);
  return d.profile_second(t) * radial +
         d.profile_deriv_over_t(t) * std::max(xx - radial, 0.0);
}

namespace {

struct AuditExtrema {
  double nu4 = std::numeric_limits<double>::infinity();
  double nu5 = 0.0;
};

// Hessian-form ratio r = D^2F(Z)(X,X)/|X|^2 for Z = t * zdir, normalized
// against the two envelopes.
void audit_accumulate(const Density& d, double mu_audit, double t,
                      std::span<const double> zdir, std::span<const double> x,
                      AuditExtrema& ex) {
  double z[4], r;
  for (int i = 0; i < 4; ++i) z[i] = t * zdir[i];
  double xx = 0.0;
  for (double v : x) xx += v * v;
  if (xx == 0.0) return;
  r = density_hessian_form(d, std::span<const double>(z, 4), x) / xx;
  ex.nu4 = std::min(ex.nu4, r * std::pow(1.0 + t, mu_audit));
  ex.nu5 = std::max(ex.nu5, r * (1.0 + t));
}

AuditExtrema audit_pass(const Density& d, double mu_audit, std::int64_t count) {
  // 2x2 matrices (n = 2, N = 2 slice is representative: the densities are
  // radial, so only |Z|, the Z direction and the X split relative to Z matter).
  const double radius = static_cast<double>(count) / 10.0;
  AuditExtrema ex;

  // Deterministic radial sweep hitting t = 0, t = 1 and t = radius exactly,
  // with X aligned to Z, orthogonal to Z, and mixed.
  const std::int64_t sweep = std::max<std::int64_t>(count / 4, 16);
  for (std::int64_t i = 0; i <= sweep; ++i) {
    double frac = static_cast<double>(i) / static_cast<double>(sweep);
    // log spacing from 0 to radius
    double t = std::expm1(frac * std::log1p(radius));
    double angle = 2.39996322972865332 * static_cast<double>(i);
    double c = std::cos(angle), s = std::sin(angle);
    double zdir[4] = {c, s, -s * 0.5, c * 0.5};
    double nz = std::sqrt(zdir[0] * zdir[0] + zdir[1] * zdir[1] +
                          zdir[2] * zdir[2] + zdir[3] * zdir[3]);
    for (double& v : zdir) v /= nz;
    double xpar[4] = {zdir[0], zdir[1], zdir[2], zdir[3]};
    // Gram-Schmidt an orthogonal direction
    double raw[4] = {-zdir[1], zdir[0], zdir[3], -zdir[2]};
    double dotp = 0.0;
    for (int k = 0; k < 4; ++k) dotp += raw[k] * zdir[k];
    double xorth[4];
    for (int k = 0; k < 4; ++k) xorth[k] = raw[k] - dotp * zdir[k];
    double xmix[4];
    for (int k = 0; k < 4; ++k) xmix[k] = xpar[k] + xorth[k];
    audit_accumulate(d, mu_audit, t, zdir, xpar, ex);
    audit_accumulate(d, mu_audit, t, zdir, xorth, ex);
    audit_accumulate(d, mu_audit, t, zdir, xmix, ex);
  }
  if (sweep + 1 >= count) return ex;

  // Golden-ratio quasi-random fill for the rest of the budget.
  const double phi_frac[9] = {0.6180339887498949, 0.7548776662466927,
                              0.5698402909980532, 0.8191725133961645,
                              0.3819660112501051, 0.2451223337533073,
                              0.4301597090019468, 0.1808274866038355,
                              0.9270509831248423};
  double state[9] = {0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5};
  for (std::int64_t i = sweep + 1; i < count; ++i) {
    for (int k = 0; k < 9; ++k) {
      state[k] += phi_frac[k];
      if (state[k] >= 1.0) state[k] -= 1.0;
    }
    double t = std::expm1(state[0] * std::log1p(radius));
    double zdir[4] = {state[1] - 0.5, state[2] - 0.5, state[3] - 0.5,
                      state[4] - 0.5};
    double nz = std::sqrt(zdir[0] * zdir[0] + zdir[1] * zdir[1] +
                          zdir[2] * zdir[2] + zdir[3] * zdir[3]);
    if (nz < 1e-12) continue;
    for (double& v : zdir) v /= nz;
    double x[4] = {state[5] - 0.5, state[6] - 0.5, state[7] - 0.5,
                   state[8] - 0.5};
    audit_accumulate(d, mu_audit, t, zdir, x, ex);
  }
  return ex;
}

}  // namespace

AuditReport ellipticity_audit(const Density& d, std::int64_t sample_count) {
  return ellipticity_audit(d, sample_count, d.mu());
}

AuditReport ellipticity_audit(const Density& d, std::int64_t sample_count,
                              double mu_audit) {
  if (sample_count < 1) throw std::invalid_argument("sample_count must be >= 1");
  AuditExtrema base = audit_pass(d, mu_audit, sample_count);
  AuditExtrema doubled = audit_pass(d, mu_audit, 2 * sample_count);
  AuditReport rep;
  rep.nu4_hat = doubled.nu4;
  rep.nu5_hat = doubled.nu5;
  rep.nu4_drift = std::fabs(doubled.nu4 - base.nu4) /
                  std::max(std::fabs(base.nu4), 1e-300);
  rep.nu5_drift = std::fabs(doubled.nu5 - base.nu5) /
                  std::max(std::fabs(base.nu5), 1e-300);
  rep.pass = rep.nu4_hat > 0.0 && std::isfinite(rep.nu5_hat) &&
             rep.nu4_drift < 0.05 && rep.nu5_drift < 0.05;
  return rep;
}

DataTermProfile DataTermProfile::quadratic(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::domain_error("fidelity weight lambda must be positive");
  return DataTermProfile(DataTermKind::Quadratic, lambda, 0.0);
}

DataTermProfile DataTermProfile::linear_growth(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw std::domain_error("smoothing parameter beta must be positive");
  return DataTermProfile(DataTermKind::LinearGrowth, 0.0, beta);
}

double DataTermProfile::value(double t) const {
  if (!(t >= 0.0)) throw std::domain_error("data term argument must satisfy t >= 0");
  if (kind_ == DataTermKind::Quadratic) return 0.5 * lambda_ * t * t;
  // sqrt(beta^2+t^2) - beta == t^2 / (sqrt(beta^2+t^2) + beta), exact at 0
  return t * t / (std::hypot(beta_, t) + beta_);
}

double DataTermProfile::deriv(double t) const {
  if (!(t >= 0.0)) throw std::domain_error("data term argument must satisfy t >= 0");
  if (kind_ == DataTermKind::Quadratic) return lambda_ * t;
  return t / std::hypot(beta_, t);
}

double DataTermProfile::second(double t) const {
  if (!(t >= 0.0)) throw std::domain_error("data term argument must satisfy t >= 0");
  if (kind_ == DataTermKind::Quadratic) return lambda_;
  const double r = std::hypot(beta_, t);
  return beta_ * beta_ / (r * r * r);
}

double DataTermProfile::deriv_over_t(double t) const {
  if (!(t >= 0.0)) throw std::domain_error("data term argument must satisfy t >= 0");
  if (kind_ == DataTermKind::Quadratic) return lambda_;
  return 1.0 / std::hypot(beta_, t);
}

}  // namespace murec
