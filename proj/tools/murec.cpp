#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include "murec/cli.hpp"
#include "murec/oracle.hpp"
#include "murec/report.hpp"

namespace {

using murec::DataTermKind;
using murec::DensityKind;
using murec::Theorem;

int cmd_exponents(int n, double mu, const std::string& theorem, bool denoise_only) {
  static const std::map<std::string, Theorem> names = {
      {"1.1", Theorem::T1_1}, {"1.2", Theorem::T1_2},
      {"1.3", Theorem::T1_3}, {"1.4", Theorem::T1_4}};
  try {
    murec::ExponentReport rep =
        murec::sobolev_exponents(n, mu, names.at(theorem), !denoise_only);
    std::cout << murec::exponent_report_json(rep) << std::endl;
    return murec::kExitOk;
  } catch (const std::invalid_argument& e) {
    std::cout << murec::error_json(murec::kExitConfig, "validation", e.what())
              << std::endl;
    return murec::kExitConfig;
  }
}

int cmd_audit(DensityKind kind, double mu, long long samples, double mu_audit) {
  try {
    murec::Density d = kind == DensityKind::MuFamily
                           ? murec::Density::mu_family(mu)
                           : murec::Density::minimal_surface();
    const double audited = mu_audit > 0.0 ? mu_audit : d.mu();
    murec::AuditReport rep = murec::ellipticity_audit(d, samples, audited);
    std::cout << murec::audit_report_json(kind, d.mu(), audited, samples, rep)
              << std::endl;
    return rep.pass ? murec::kExitOk : 1;
  } catch (const std::exception& e) {
    std::cout << murec::error_json(murec::kExitConfig, "validation", e.what())
              << std::endl;
    return murec::kExitConfig;
  }
}

int cmd_oracle_compare(std::uint64_t seed, int cases) {
  try {
    murec::oracle::ComparisonSummary s = murec::oracle::compare_with_solver(seed, cases);
    for (const auto& c : s.cases)
      std::printf("%-6s %-34s oracle %.10g solver %.10g rel %.3g arg %.3g\n",
                  c.pass ? "[ok]" : "[FAIL]", c.label.c_str(), c.oracle_value,
                  c.solver_value, c.value_rel_err, c.arg_max_dev);
    std::printf("%d case(s), %d failure(s); worst value rel err %.3g, worst arg dev %.3g\n",
                static_cast<int>(s.cases.size()), s.failures, s.max_value_rel_err,
                s.max_arg_dev);
    return s.failures == 0 ? murec::kExitOk : 1;
  } catch (const std::exception& e) {
    std::cout << murec::error_json(murec::kExitSolver, "oracle", e.what())
              << std::endl;
    return murec::kExitSolver;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational denoising and inpainting with strictly convex "
               "linear-growth densities"};
  app.require_subcommand(1);

  // restore
  murec::RunConfig cfg;
  std::string density_flag = "mu-family";
  std::string data_flag = "quadratic";
  auto* restore = app.add_subcommand("restore", "Denoise/inpaint a PNG image");
  restore->add_option("--input", cfg.input_path, "Input PNG (8/16-bit gray or RGB)")
      ->required();
  restore->add_option("--mask", cfg.mask_path,
                      "Mask PNG; nonzero first channel marks missing pixels");
  restore->add_option("--output", cfg.output_path, "Restored PNG path")->required();
  restore->add_option("--report", cfg.report_path,
                      "JSON report path (default <output>.report.json)");
  restore->add_option("--density", density_flag, "Energy density family")
      ->check(CLI::IsMember({"mu-family", "minimal-surface"}))
      ->capture_default_str();
  restore->add_option("--mu", cfg.mu, "Ellipticity exponent (mu-family)")
      ->capture_default_str();
  restore->add_option("--data-term", data_flag, "Fidelity profile")
      ->check(CLI::IsMember({"quadratic", "linear-growth"}))
      ->capture_default_str();
  restore->add_option("--lambda", cfg.lambda, "Quadratic fidelity weight")
      ->capture_default_str();
  restore->add_option("--beta", cfg.beta, "Linear-growth smoothing parameter")
      ->capture_default_str();
  restore->add_option("--spacing", cfg.spacing, "Grid spacing h")->capture_default_str();
  restore->add_option("--delta-start", cfg.solver.delta_start)->capture_default_str();
  restore->add_option("--delta-factor", cfg.solver.delta_factor)->capture_default_str();
  restore->add_option("--delta-steps", cfg.solver.delta_steps)->capture_default_str();
  restore->add_option("--tol", cfg.solver.grad_tol,
                      "Gradient max-norm tolerance (0: 1e-7*sqrt(#pixels))");
  restore->add_option("--max-iters", cfg.solver.max_iters)->capture_default_str();
  restore->add_option("--seed", cfg.solver.seed)->capture_default_str();
  restore->add_flag("--deterministic", cfg.solver.deterministic,
                    "Bit-reproducible run (scalar kernels, fixed reductions)");
  restore->add_flag("--diagnostics", cfg.diagnostics,
                    "Run the theorem checks and embed them in the report");

  // exponents
  int exp_n = 2;
  double exp_mu = 1.5;
  std::string exp_theorem = "1.2";
  bool denoise_only = false;
  auto* exponents =
      app.add_subcommand("exponents", "Sobolev exponent calculator");
  exponents->add_option("--n", exp_n, "Domain dimension")->capture_default_str();
  exponents->add_option("--mu", exp_mu, "Ellipticity exponent")->capture_default_str();
  exponents->add_option("--theorem", exp_theorem, "Statement to evaluate")
      ->check(CLI::IsMember({"1.1", "1.2", "1.3", "1.4"}))
      ->capture_default_str();
  exponents->add_flag("--pure-denoising", denoise_only,
                      "Assume an empty inpainting region");

  // audit
  std::string audit_density = "mu-family";
  double audit_mu = 1.5;
  long long audit_samples = 10000;
  double audit_against = 0.0;
  auto* audit = app.add_subcommand("audit", "Sampled ellipticity audit");
  audit->add_option("--density", audit_density)
      ->check(CLI::IsMember({"mu-family", "minimal-surface"}))
      ->capture_default_str();
  audit->add_option("--mu", audit_mu, "Ellipticity exponent (mu-family)")
      ->capture_default_str();
  audit->add_option("--samples", audit_samples)->capture_default_str();
  audit->add_option("--audit-mu", audit_against,
                    "Audit against this exponent instead of the density's own");

  // oracle-compare
  std::uint64_t oc_seed = 20240901;
  int oc_cases = 20;
  auto* oracle_cmp = app.add_subcommand(
      "oracle-compare", "Solver vs brute-force oracle on random tiny instances");
  oracle_cmp->add_option("--seed", oc_seed)->capture_default_str();
  oracle_cmp->add_option("--cases", oc_cases, "Cases per configuration")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cout << murec::error_json(murec::kExitConfig, "usage", e.what())
              << std::endl;
    return murec::kExitConfig;
  }

  if (restore->parsed()) {
    cfg.density_kind = density_flag == "mu-family" ? DensityKind::MuFamily
                                                   : DensityKind::MinimalSurface;
    cfg.data_kind = data_flag == "quadratic" ? DataTermKind::Quadratic
                                             : DataTermKind::LinearGrowth;
    return murec::run_restore(cfg);
  }
  if (exponents->parsed()) return cmd_exponents(exp_n, exp_mu, exp_theorem, denoise_only);
  if (audit->parsed())
    return cmd_audit(audit_density == "mu-family" ? DensityKind::MuFamily
                                                  : DensityKind::MinimalSurface,
                     audit_mu, audit_samples, audit_against);
  if (oracle_cmp->parsed()) return cmd_oracle_compare(oc_seed, oc_cases);
  return murec::kExitConfig;
}
