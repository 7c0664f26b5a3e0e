#ifndef MUREC_TESTS_HELPERS_HPP
#define MUREC_TESTS_HELPERS_HPP

#include <cmath>
#include <random>
#include <vector>

#include "murec/energy.hpp"

namespace testutil {

inline std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n,
                                      double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> uni(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = uni(rng);
  return v;
}

// Values quantized to multiples of 2^-26: sums and differences with dyadic
// scalars stay exact, which the exact-linearity and translation tests use.
inline double dyadic(std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> uni(lo, hi);
  return std::round(uni(rng) * 67108864.0) / 67108864.0;
}

inline murec::ImageField random_field(std::mt19937_64& rng, int w, int h, int n,
                                      double lo = 0.0, double hi = 1.0,
                                      double spacing = 1.0) {
  murec::ImageField f(w, h, n, spacing);
  std::uniform_real_distribution<double> uni(lo, hi);
  for (double& v : f.values()) v = uni(rng);
  return f;
}

inline murec::ImageField dyadic_field(std::mt19937_64& rng, int w, int h, int n,
                                      double lo = 0.0, double hi = 1.0) {
  murec::ImageField f(w, h, n);
  for (double& v : f.values()) v = dyadic(rng, lo, hi);
  return f;
}

inline murec::GradientField random_gradient(std::mt19937_64& rng, int w, int h,
                                            int n) {
  murec::GradientField g(w, h, n);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (double& v : g.values()) v = uni(rng);
  return g;
}

inline murec::Mask random_mask(std::mt19937_64& rng, int w, int h,
                               double fraction) {
  murec::Mask m(w, h);
  std::size_t target = static_cast<std::size_t>(fraction * w * h);
  if (target >= static_cast<std::size_t>(w) * h) target = w * h - 1;
  std::vector<int> order(w * h);
  for (int i = 0; i < w * h; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t i = 0; i < target; ++i)
    m.set(order[i] % w, order[i] / w, true);
  return m;
}

inline double inner(const murec::GradientField& a, const murec::GradientField& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a.values()[i] * b.values()[i];
  return acc;
}

inline double inner(const murec::ImageField& a, const murec::ImageField& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a.values()[i] * b.values()[i];
  return acc;
}

}  // namespace testutil

#endif
