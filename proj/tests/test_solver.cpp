#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "murec/oracle.hpp"
#include "murec/solver.hpp"
#include "helpers.hpp"

using namespace murec;
using namespace testutil;

namespace {

Problem oracle_1x2() {
  ImageField u0(2, 1, 1);
  u0.at(1, 0, 0) = 2.0;
  return Problem(Density::mu_family(1.5), DataTermProfile::quadratic(1.0),
                 std::move(u0), Mask(2, 1));
}

}  // namespace

TEST_CASE("constant data short-circuits to the exact minimizer") {
  Problem p(Density::mu_family(1.5), DataTermProfile::quadratic(2.0),
            ImageField::constant(6, 6, 2, 0.3), Mask(6, 6));
  SolverConfig cfg;
  auto [u, trace] = continuation(p, cfg);
  for (double v : u.values()) CHECK(v == 0.3);
  CHECK(trace.total_iterations == 0);
  CHECK(trace.termination == Termination::Stationary);
  for (const auto& s : trace.stages) {
    CHECK(s.k_zero == 0.0);
    CHECK(s.k_delta == 0.0);
  }
}

TEST_CASE("half-masked constant data converges to the constant") {
  std::mt19937_64 rng(41);
  Problem p(Density::mu_family(1.5), DataTermProfile::quadratic(2.0),
            ImageField::constant(6, 6, 1, 0.4), random_mask(rng, 6, 6, 0.5));
  auto [u, trace] = continuation(p, SolverConfig{});
  for (double v : u.values()) CHECK(v == doctest::Approx(0.4).epsilon(1e-9));
  CHECK(trace.termination == Termination::Stationary);
}

TEST_CASE("fixed-delta minimizer matches the brute-force oracle on 1x2") {
  Problem p = oracle_1x2();
  SolverConfig cfg;
  auto [u, trace] = minimize_fixed_delta(p, 1e-3, default_init(p), cfg);
  CHECK(trace.termination == Termination::Stationary);

  oracle::OracleResult ref = oracle::brute_force_min(p, 1e-3);
  CHECK(ref.cross_checked);
  CHECK(u.at(0, 0, 0) == doctest::Approx(ref.minimizer.at(0, 0, 0)).epsilon(1e-4));
  CHECK(u.at(1, 0, 0) == doctest::Approx(ref.minimizer.at(1, 0, 0)).epsilon(1e-4));

  // the known delta = 0 optimum: u = (1-s, 1+s), s = 0.45054017, E = 0.58888
  SolverConfig deep;
  deep.delta_steps = 8;
  auto [uz, tz] = continuation(p, deep);
  CHECK(uz.at(0, 0, 0) == doctest::Approx(0.5494598298559307).epsilon(1e-5));
  CHECK(uz.at(1, 0, 0) == doctest::Approx(1.4505401701440693).epsilon(1e-5));
  CHECK(oracle::objective(p, uz, 0.0) ==
        doctest::Approx(0.5888799846833821).epsilon(1e-7));
}

TEST_CASE("independent inits reach the same energy") {
  std::mt19937_64 rng(42);
  Problem p(Density::mu_family(1.5), DataTermProfile::quadratic(1.0),
            random_field(rng, 4, 4, 1), Mask(4, 4));
  SolverConfig cfg;
  ImageField i1 = random_field(rng, 4, 4, 1, -0.5, 1.5);
  ImageField i2 = random_field(rng, 4, 4, 1, -0.5, 1.5);
  auto [u1, t1] = minimize_fixed_delta(p, 1e-2, i1, cfg);
  auto [u2, t2] = minimize_fixed_delta(p, 1e-2, i2, cfg);
  CHECK(t1.stages.back().k_delta ==
        doctest::Approx(t2.stages.back().k_delta).epsilon(1e-8));
  // strict convexity: the iterates agree too
  for (std::size_t i = 0; i < u1.size(); ++i)
    CHECK(std::fabs(u1.values()[i] - u2.values()[i]) < 10.0 * cfg.resolved_grad_tol(16));
}

TEST_CASE("accepted steps never increase the stage energy") {
  std::mt19937_64 rng(43);
  Problem p(Density::minimal_surface(), DataTermProfile::linear_growth(0.5),
            random_field(rng, 8, 8, 2), random_mask(rng, 8, 8, 0.4));
  auto [u, trace] = continuation(p, SolverConfig{});
  REQUIRE(trace.iterations.size() > 4);
  for (std::size_t i = 1; i < trace.iterations.size(); ++i) {
    const auto& prev = trace.iterations[i - 1];
    const auto& cur = trace.iterations[i];
    if (cur.stage != prev.stage) continue;  // stage boundary re-evaluates
    CHECK(cur.energy.total <= prev.energy.total);
  }
}

TEST_CASE("continuation stage records satisfy the homotopy inequalities") {
  std::mt19937_64 rng(44);
  Problem p(Density::mu_family(1.7), DataTermProfile::quadratic(5.0),
            random_field(rng, 8, 8, 1), random_mask(rng, 8, 8, 0.5));
  auto [u, trace] = continuation(p, SolverConfig{});
  REQUIRE(trace.stages.size() == 4);
  for (std::size_t k = 1; k < trace.stages.size(); ++k) {
    const double slack = 1e-8 * (1.0 + std::fabs(trace.stages[k].k_zero));
    CHECK(trace.stages[k].k_zero <= trace.stages[k - 1].k_zero + slack);
    CHECK(trace.stages[k].k_delta <= trace.stages[k - 1].k_delta + slack);
    CHECK(trace.stages[k].delta < trace.stages[k - 1].delta);
  }
}

TEST_CASE("translation equivariance of full solves on dyadic data") {
  std::mt19937_64 rng(45);
  ImageField u0 = dyadic_field(rng, 5, 5, 1, 0.0, 1.0);
  ImageField u0s = u0;
  for (double& v : u0s.values()) v += 0.25;
  Mask m = random_mask(rng, 5, 5, 0.3);
  Problem p(Density::mu_family(1.5), DataTermProfile::quadratic(2.0), u0, m);
  Problem ps(Density::mu_family(1.5), DataTermProfile::quadratic(2.0), u0s, m);
  SolverConfig cfg;
  auto [ua, ta] = continuation(p, cfg);
  auto [ub, tb] = continuation(ps, cfg);
  REQUIRE(ta.iterations.size() == tb.iterations.size());
  for (std::size_t i = 0; i < ta.iterations.size(); ++i) {
    CHECK(ta.iterations[i].energy.total ==
          doctest::Approx(tb.iterations[i].energy.total).epsilon(1e-12));
    CHECK(ta.iterations[i].step == doctest::Approx(tb.iterations[i].step).epsilon(1e-12));
  }
  for (std::size_t i = 0; i < ua.size(); ++i)
    CHECK(ub.values()[i] - ua.values()[i] == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("max-iters termination is reported") {
  std::mt19937_64 rng(46);
  Problem p(Density::mu_family(1.5), DataTermProfile::quadratic(10.0),
            random_field(rng, 8, 8, 1), Mask(8, 8));
  SolverConfig cfg;
  cfg.max_iters = 2;
  auto [u, trace] = minimize_fixed_delta(p, 1e-2, default_init(p), cfg);
  CHECK(trace.termination == Termination::MaxIters);
  CHECK(trace.stages.back().iterations == 2);
}

TEST_CASE("default_init fills the masked region with the observed mean") {
  // no mask: init == u0
  std::mt19937_64 rng(47);
  Problem p0(Density::mu_family(1.5), DataTermProfile::quadratic(1.0),
             random_field(rng, 3, 3, 2), Mask(3, 3));
  ImageField i0 = default_init(p0);
  for (std::size_t i = 0; i < i0.size(); ++i)
    CHECK(i0.values()[i] == p0.u0.values()[i]);

  // half-masked constant: init is the constant everywhere
  Mask half(2, 2);
  half.set(0, 0, true);
  half.set(1, 0, true);
  Problem pc(Density::mu_family(1.5), DataTermProfile::quadratic(1.0),
             ImageField::constant(2, 2, 1, 0.6), half);
  ImageField ic = default_init(pc);
  for (double v : ic.values()) CHECK(v == 0.6);

  // checkerboard with the top row masked: masked pixels get the observed mean
  ImageField cb(2, 2, 1);
  cb.at(0, 0, 0) = 1.0;
  cb.at(1, 0, 0) = 0.0;
  cb.at(0, 1, 0) = 0.0;
  cb.at(1, 1, 0) = 1.0;
  Problem pcb(Density::mu_family(1.5), DataTermProfile::quadratic(1.0), cb, half);
  ImageField icb = default_init(pcb);
  CHECK(icb.at(0, 0, 0) == 0.5);
  CHECK(icb.at(1, 0, 0) == 0.5);
  CHECK(icb.at(0, 1, 0) == 0.0);
  CHECK(icb.at(1, 1, 0) == 1.0);
}

TEST_CASE("solver config validation") {
  SolverConfig cfg;
  cfg.delta_factor = 1.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = SolverConfig{};
  cfg.delta_start = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = SolverConfig{};
  cfg.max_iters = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = SolverConfig{};
  CHECK(cfg.resolved_grad_tol(256) == doctest::Approx(1.6e-6));
  cfg.grad_tol = 1e-9;
  CHECK(cfg.resolved_grad_tol(256) == 1e-9);

  Problem p = oracle_1x2();
  CHECK_THROWS_AS(minimize_fixed_delta(p, 0.0, default_init(p), SolverConfig{}),
                  std::invalid_argument);
}

TEST_CASE("deterministic flag forces reproducible traces") {
  std::mt19937_64 rng(48);
  ImageField u0 = random_field(rng, 6, 6, 1);
  Mask m = random_mask(rng, 6, 6, 0.4);
  Problem p(Density::mu_family(1.5), DataTermProfile::quadratic(3.0), u0, m);
  SolverConfig cfg;
  cfg.deterministic = true;
  auto [u1, t1] = continuation(p, cfg);
  auto [u2, t2] = continuation(p, cfg);
  REQUIRE(u1.size() == u2.size());
  for (std::size_t i = 0; i < u1.size(); ++i)
    CHECK(u1.values()[i] == u2.values()[i]);
  REQUIRE(t1.iterations.size() == t2.iterations.size());
  for (std::size_t i = 0; i < t1.iterations.size(); ++i)
    CHECK(t1.iterations[i].energy.total == t2.iterations[i].energy.total);
}
