#include "murec/kernels.hpp"

#include <cmath>

// Reference kernels. Plain strictly-ordered loops; the equivalence tests and
// the deterministic solver mode rely on these exact semantics.

namespace murec::kernels {
namespace {

void axpy_s(double* y, double a, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void add_scaled_s(double* dst, const double* x, double a, const double* y,
                  std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = x[i] + a * y[i];
}

void sub_s(double* dst, const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] - b[i];
}

void mul_s(double* dst, const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * b[i];
}

void scale_s(double* dst, double a, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a * x[i];
}

void accum_sq_s(double* acc, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += x[i] * x[i];
}

void sqrt_arr_s(double* dst, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = std::sqrt(x[i]);
}

double dot_s(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sum_s(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i];
  return acc;
}

double sum_sq_s(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * a[i];
  return acc;
}

double max_abs_s(const double* a, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double v = std::fabs(a[i]);
    if (v > m) m = v;
  }
  return m;
}

void diff_x_s(double* gx, const double* u, std::size_t w, std::size_t h,
              double inv_h) {
  for (std::size_t y = 0; y < h; ++y) {
    const double* row = u + y * w;
    double* out = gx + y * w;
    for (std::size_t x = 0; x + 1 < w; ++x) out[x] = (row[x + 1] - row[x]) * inv_h;
    out[w - 1] = 0.0;
  }
}

void diff_y_s(double* gy, const double* u, std::size_t w, std::size_t h,
              double inv_h) {
  for (std::size_t y = 0; y + 1 < h; ++y) {
    const double* row = u + y * w;
    double* out = gy + y * w;
    for (std::size_t x = 0; x < w; ++x) out[x] = (row[x + w] - row[x]) * inv_h;
  }
  for (std::size_t x = 0; x < w; ++x) gy[(h - 1) * w + x] = 0.0;
}

void div_x_accum_s(double* dst, const double* qx, std::size_t w, std::size_t h,
                   double inv_h) {
  if (w < 2) return;  // the single column is the (zeroed) last column
  for (std::size_t y = 0; y < h; ++y) {
    const double* q = qx + y * w;
    double* d = dst + y * w;
    d[0] += q[0] * inv_h;
    for (std::size_t x = 1; x + 1 < w; ++x) d[x] += (q[x] - q[x - 1]) * inv_h;
    d[w - 1] -= q[w - 2] * inv_h;
  }
}

void div_y_accum_s(double* dst, const double* qy, std::size_t w, std::size_t h,
                   double inv_h) {
  if (h < 2) return;
  for (std::size_t x = 0; x < w; ++x) dst[x] += qy[x] * inv_h;
  for (std::size_t y = 1; y + 1 < h; ++y) {
    const double* q = qy + y * w;
    double* d = dst + y * w;
    for (std::size_t x = 0; x < w; ++x) d[x] += (q[x] - q[x - w]) * inv_h;
  }
  const double* qlast = qy + (h - 2) * w;
  double* dlast = dst + (h - 1) * w;
  for (std::size_t x = 0; x < w; ++x) dlast[x] -= qlast[x] * inv_h;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t = {
      axpy_s,   add_scaled_s, sub_s,   mul_s,      scale_s,
      accum_sq_s, sqrt_arr_s, dot_s,   sum_s,      sum_sq_s,
      max_abs_s, diff_x_s,    diff_y_s, div_x_accum_s, div_y_accum_s,
      "scalar"};
  return t;
}

}  // namespace murec::kernels
