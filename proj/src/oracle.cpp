#include "murec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>

#include "murec/solver.hpp"

namespace murec::oracle {

namespace {

// Recursive adaptive Simpson.
double simpson(const std::function<double(double)>& f, double a, double fa,
               double b, double fb, double m, double fm, double whole,
               double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double err = left + right - whole;
  if (depth <= 0 || std::fabs(err) <= 15.0 * tol)
    return left + right + err / 15.0;
  return simpson(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

void check_tiny(const Problem& p) {
  if (p.u0.pixels() > 16 || p.u0.channels() > 2)
    throw std::invalid_argument(
        "oracle instance too large (needs <= 16 pixels, <= 2 channels)");
}

// Phi(|grad u|) + (delta/2)|grad u|^2 at one pixel, unweighted.
double pixel_reg(const Problem& p, const ImageField& u, double delta, int x,
                 int y) {
  const int w = u.width(), h = u.height();
  const double inv_h = 1.0 / u.spacing();
  double g2 = 0.0;
  for (int c = 0; c < u.channels(); ++c) {
    if (x + 1 < w) {
      double d = (u.at(x + 1, y, c) - u.at(x, y, c)) * inv_h;
      g2 += d * d;
    }
    if (y + 1 < h) {
      double d = (u.at(x, y + 1, c) - u.at(x, y, c)) * inv_h;
      g2 += d * d;
    }
  }
  return p.density.profile_value(std::sqrt(g2)) + 0.5 * delta * g2;
}

double pixel_fid(const Problem& p, const ImageField& u, int x, int y) {
  if (p.mask.in_region(x, y)) return 0.0;
  double d2 = 0.0;
  for (int c = 0; c < u.channels(); ++c) {
    double d = u.at(x, y, c) - p.u0.at(x, y, c);
    d2 += d * d;
  }
  return p.data.value(std::sqrt(d2));
}

// Part of the objective that depends on the coordinate (x, y, *): the
// stencil terms touching pixel (x, y) plus its fidelity term. Differences to
// the full objective are constant in that coordinate.
double local_objective(const Problem& p, const ImageField& u, double delta,
                       int x, int y) {
  double acc = pixel_reg(p, u, delta, x, y);
  if (x > 0) acc += pixel_reg(p, u, delta, x - 1, y);
  if (y > 0) acc += pixel_reg(p, u, delta, x, y - 1);
  return acc + pixel_fid(p, u, x, y);
}

struct CoordinateResult {
  double value;
  int sweeps;
};

// Cyclic coordinate minimization; golden-section per coordinate on the local
// objective, until a full sweep moves no coordinate by more than move_tol.
CoordinateResult coordinate_descent(const Problem& p, double delta, ImageField& u,
                                    double move_tol, int max_sweeps) {
  const double inv_gr = (std::sqrt(5.0) - 1.0) / 2.0;
  const int w = u.width(), h = u.height(), n = u.channels();
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    double max_move = 0.0;
    for (int c = 0; c < n; ++c)
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
          double& coord = u.at(x, y, c);
          const double x0 = coord;
          auto eval = [&](double v) {
            coord = v;
            return local_objective(p, u, delta, x, y);
          };
          double a = std::min(-1.0, x0 - 0.5), b = std::max(2.0, x0 + 0.5);
          double ca = b - inv_gr * (b - a);
          double cb = a + inv_gr * (b - a);
          double fa = eval(ca), fb = eval(cb);
          while (b - a > 1e-11) {
            if (fa < fb) {
              b = cb;
              cb = ca;
              fb = fa;
              ca = b - inv_gr * (b - a);
              fa = eval(ca);
            } else {
              a = ca;
              ca = cb;
              fa = fb;
              cb = a + inv_gr * (b - a);
              fb = eval(cb);
            }
          }
          coord = 0.5 * (a + b);
          max_move = std::max(max_move, std::fabs(coord - x0));
        }
    if (max_move < move_tol) {
      ++sweep;
      break;
    }
  }
  return {objective(p, u, delta), sweep};
}

double max_coordinate_slope(const Problem& p, double delta, ImageField& u) {
  const double step = 1e-6;
  double worst = 0.0;
  const int w = u.width(), h = u.height(), n = u.channels();
  for (int c = 0; c < n; ++c)
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        double& coord = u.at(x, y, c);
        const double x0 = coord;
        coord = x0 + step;
        const double fp = local_objective(p, u, delta, x, y);
        coord = x0 - step;
        const double fm = local_objective(p, u, delta, x, y);
        coord = x0;
        worst = std::max(worst, std::fabs(fp - fm) / (2.0 * step));
      }
  // local terms are unweighted; scale like the objective
  return worst * u.spacing() * u.spacing();
}

// Exhaustive boxed search over <= 3 unknowns: [-1,2] at 1e-2, then two 10x
// refinements around the incumbent.
void grid_search(const Problem& p, double delta, ImageField& u) {
  const std::size_t k = u.size();
  std::vector<double> lo(k, -1.0), hi(k, 2.0), best(k, 0.0);
  double step = 1e-2;
  double best_val = std::numeric_limits<double>::infinity();

  for (int level = 0; level < 3; ++level) {
    std::vector<std::size_t> counts(k);
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) {
      counts[i] = static_cast<std::size_t>(std::floor((hi[i] - lo[i]) / step + 0.5)) + 1;
      total *= counts[i];
    }
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::size_t rem = flat;
      for (std::size_t i = 0; i < k; ++i) {
        u.values()[i] = lo[i] + step * static_cast<double>(rem % counts[i]);
        rem /= counts[i];
      }
      double v = objective(p, u, delta);
      if (v < best_val) {
        best_val = v;
        std::copy(u.values().begin(), u.values().end(), best.begin());
      }
    }
    for (std::size_t i = 0; i < k; ++i) {
      lo[i] = best[i] - step;
      hi[i] = best[i] + step;
    }
    step /= 10.0;
  }
  std::copy(best.begin(), best.end(), u.values().begin());
}

}  // namespace

double numeric_phi(double mu, double t) {
  if (!(mu > 1.0)) throw std::domain_error("ellipticity exponent must satisfy mu > 1");
  if (!(t >= 0.0) || t > 1e3) throw std::domain_error("radial argument outside [0, 1e3]");
  auto integrand = [mu](double r) { return std::pow(1.0 + r, -mu); };
  auto inner = [&](double s) { return integrate(integrand, 0.0, s, 1e-12); };
  return integrate(inner, 0.0, t, 2e-10);
}

double objective(const Problem& p, const ImageField& u, double delta) {
  const int w = u.width(), h = u.height();
  const double h2 = u.spacing() * u.spacing();
  double acc = 0.0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      acc += pixel_reg(p, u, delta, x, y) + pixel_fid(p, u, x, y);
  return h2 * acc;
}

OracleResult brute_force_min(const Problem& tiny, double delta) {
  check_tiny(tiny);
  if (!(delta >= 0.0)) throw std::invalid_argument("delta must be non-negative");

  ImageField via_coord = default_init(tiny);
  CoordinateResult coord = coordinate_descent(tiny, delta, via_coord, 1e-9, 4000);

  OracleResult res{via_coord, coord.value, coord.sweeps, 0.0, false};

  if (tiny.u0.size() <= 3) {
    ImageField via_grid(tiny.u0.width(), tiny.u0.height(), tiny.u0.channels(),
                        tiny.u0.spacing());
    grid_search(tiny, delta, via_grid);
    CoordinateResult polished = coordinate_descent(tiny, delta, via_grid, 1e-9, 4000);
    if (std::fabs(polished.value - coord.value) >
        1e-6 * (1.0 + std::fabs(coord.value)))
      throw std::runtime_error("oracle routes disagree beyond 1e-6");
    res.cross_checked = true;
    if (polished.value < res.value) {
      res.minimizer = via_grid;
      res.value = polished.value;
    }
  }
  res.max_abs_slope = max_coordinate_slope(tiny, delta, res.minimizer);
  return res;
}

namespace {

Problem random_tiny(std::mt19937_64& rng, int density_pick, int data_pick,
                    bool half_mask) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const int sizes[][2] = {{2, 1}, {2, 2}, {3, 2}, {3, 3}, {4, 2}, {4, 4}};
  const auto& wh = sizes[rng() % 6];
  const int w = wh[0], hgt = wh[1];
  const int n = 1 + static_cast<int>(rng() % 2);

  ImageField u0(w, hgt, n);
  for (double& v : u0.values()) v = uni(rng);

  Mask mask(w, hgt);
  if (half_mask) {
    std::vector<int> order(w * hgt);
    for (int i = 0; i < w * hgt; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (int i = 0; i < w * hgt / 2; ++i)
      mask.set(order[i] % w, order[i] / w, true);
  }

  Density density = density_pick == 0 ? Density::mu_family(1.2 + 0.7 * uni(rng))
                                      : Density::minimal_surface();
  DataTermProfile data = data_pick == 0
                             ? DataTermProfile::quadratic(1.0 + 9.0 * uni(rng))
                             : DataTermProfile::linear_growth(0.3 + 2.0 * uni(rng));
  return Problem(density, data, std::move(u0), std::move(mask));
}

}  // namespace

ComparisonSummary compare_with_solver(std::uint64_t seed, int cases_per_config) {
  ComparisonSummary summary;
  SolverConfig cfg;
  cfg.delta_start = 1e-1;
  cfg.delta_factor = 1e-1;
  cfg.delta_steps = 8;  // push the Tikhonov residue below the 1e-4 comparison
  cfg.seed = seed;

  const char* density_names[] = {"mu-family", "minimal-surface"};
  const char* data_names[] = {"quadratic", "linear-growth"};
  for (int density_pick = 0; density_pick < 2; ++density_pick)
    for (int data_pick = 0; data_pick < 2; ++data_pick)
      for (int mask_pick = 0; mask_pick < 2; ++mask_pick) {
        std::mt19937_64 rng(seed ^
                            (0x51ed2701ull * (density_pick * 4 + data_pick * 2 +
                                              mask_pick + 1)));
        for (int i = 0; i < cases_per_config; ++i) {
          // Redraw instances whose optimum is too close to zero for a
          // relative comparison to mean anything.
          bool drawn = false;
          for (int attempt = 0; attempt < 64 && !drawn; ++attempt) {
            Problem problem = random_tiny(rng, density_pick, data_pick, mask_pick == 1);
            OracleResult oracle_res = brute_force_min(problem, 0.0);
            if (std::fabs(oracle_res.value) < 0.05) continue;
            drawn = true;

            auto [u, trace] = continuation(problem, cfg);
            const double solver_value = objective(problem, u, 0.0);
            ComparisonCase c;
            c.label = std::string(density_names[density_pick]) + "/" +
                      data_names[data_pick] +
                      (mask_pick ? "/half-mask" : "/no-mask") + "#" +
                      std::to_string(i);
            c.oracle_value = oracle_res.value;
            c.solver_value = solver_value;
            c.value_rel_err = std::fabs(solver_value - oracle_res.value) /
                              std::fabs(oracle_res.value);
            for (std::size_t j = 0; j < u.size(); ++j)
              c.arg_max_dev = std::max(
                  c.arg_max_dev,
                  std::fabs(u.values()[j] - oracle_res.minimizer.values()[j]));
            c.pass = c.value_rel_err < 1e-4;
            summary.max_value_rel_err =
                std::max(summary.max_value_rel_err, c.value_rel_err);
            summary.max_arg_dev = std::max(summary.max_arg_dev, c.arg_max_dev);
            summary.max_dual_excess =
                std::max(summary.max_dual_excess,
                         trace.max_dual_norm - problem.density.constants().nu1);
            summary.failures += c.pass ? 0 : 1;
            summary.cases.push_back(std::move(c));
          }
          if (!drawn)
            throw std::runtime_error("could not draw a well-scaled oracle instance");
        }
      }
  return summary;
}

}  // namespace murec::oracle
