#ifndef MUREC_DENSITY_HPP
#define MUREC_DENSITY_HPP

#include <cstdint>
#include <span>

// Strictly convex linear-growth energy densities F(Z) = Phi(|Z|) acting on
// gradient matrices Z (stored flat, Frobenius norm), plus the pointwise data
// term profiles. Two families are shipped:
//
//   MuFamily        Phi_mu(t) = integral_0^t integral_0^s (1+r)^(-mu) dr ds,
//                   so Phi_mu'' (t) = (1+t)^(-mu) exactly. Closed forms:
//                   mu != 2:  t/(mu-1) - ((1+t)^(2-mu) - 1)/((mu-1)(2-mu))
//                   mu == 2:  t - log(1+t)
//   MinimalSurface  Phi(t) = sqrt(1+t^2) - 1, the mu = 3 boundary case.
//
// The Hessian of F decomposes radially:
//   D^2F(Z)(X,X) = Phi''(|Z|) <z,X>^2 + (Phi'(|Z|)/|Z|) (|X|^2 - <z,X>^2)
// with z = Z/|Z|, and the eigenvalues obey
//   nu4 (1+|Z|)^(-mu) |X|^2 <= D^2F(Z)(X,X) <= nu5 (1+|Z|)^(-1) |X|^2.

namespace murec {

// Radial profile of the mu-family, exposed directly for the tests.
// All three throw std::domain_error unless mu > 1 and t >= 0.
double phi_value(double mu, double t);
double phi_deriv(double mu, double t);
double phi_second(double mu, double t);

enum class DensityKind { MuFamily, MinimalSurface };

struct DensityConstants {
  double nu1;  // sup |DF|
  double nu2, nu3;  // linear growth from below: F(Z) >= nu2 |Z| - nu3
  double nu4, nu5;  // Hessian sandwich constants
};

class Density {
 public:
  static Density mu_family(double mu);
  static Density minimal_surface();  // ellipticity exponent fixed to 3

  DensityKind kind() const { return kind_; }
  double mu() const { return mu_; }

  // Radial profile Phi and its derivatives; t >= 0.
  double profile_value(double t) const;
  double profile_deriv(double t) const;
  double profile_second(double t) const;
  // Tangential Hessian eigenvalue Phi'(t)/t, with the removable singularity
  // at t = 0 handled by a two-term Taylor expansion.
  double profile_deriv_over_t(double t) const;

  DensityConstants constants() const;

 private:
  Density(DensityKind kind, double mu) : kind_(kind), mu_(mu) {}
  DensityKind kind_;
  double mu_;
};

// F(Z); rejects non-finite entries with std::domain_error.
double density_value(const Density& d, std::span<const double> z);
// DF(Z) = Phi'(|Z|) Z/|Z| written into grad (same length as z).
void density_gradient(const Density& d, std::span<const double> z,
                      std::span<double> grad);
// Quadratic form D^2F(Z)(X,X).
double density_hessian_form(const Density& d, std::span<const double> z,
                            std::span<const double> x);

// Sampled verification of the mu-ellipticity sandwich. Samples grow out to
// radius sample_count/10, mixing a deterministic log-spaced radial sweep
// (with eigendirection-aligned X) and a golden-ratio quasi-random set; the
// whole audit is rerun at twice the budget and must agree within 5%. Auditing
// against a wrong exponent therefore shows up as drift of nu4_hat.
struct AuditReport {
  double nu4_hat;
  double nu5_hat;
  double nu4_drift;  // relative change under sample doubling
  double nu5_drift;
  bool pass;
};
AuditReport ellipticity_audit(const Density& d, std::int64_t sample_count);
AuditReport ellipticity_audit(const Density& d, std::int64_t sample_count,
                              double mu_audit);

enum class DataTermKind { Quadratic, LinearGrowth };

// Pointwise fidelity profile applied to t = |u - u0|:
//   Quadratic     (lambda/2) t^2
//   LinearGrowth  omega(t) = sqrt(beta^2 + t^2) - beta, omega' in [0,1)
class DataTermProfile {
 public:
  static DataTermProfile quadratic(double lambda);
  static DataTermProfile linear_growth(double beta);

  DataTermKind kind() const { return kind_; }
  double lambda() const { return lambda_; }
  double beta() const { return beta_; }

  double value(double t) const;  // throws std::domain_error on t < 0
  double deriv(double t) const;
  double second(double t) const;  // lambda, resp. beta^2/(beta^2+t^2)^(3/2)
  // deriv(t)/t without the 0/0: lambda, resp. 1/sqrt(beta^2+t^2).
  double deriv_over_t(double t) const;

 private:
  DataTermProfile(DataTermKind kind, double lambda, double beta)
      : kind_(kind), lambda_(lambda), beta_(beta) {}
  DataTermKind kind_;
  double lambda_;
  double beta_;
};

}  // namespace murec

#endif
