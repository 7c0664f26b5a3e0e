// AVX2+FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma and must only be entered after the dispatcher has verified
// CPU support.

#include "murec/kernels.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

#include <cmath>

namespace murec::kernels {
namespace {

void axpy_v(double* y, double a, const double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void add_scaled_v(double* dst, const double* x, double a, const double* y,
                  std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_fmadd_pd(va, _mm256_loadu_pd(y + i), _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(dst + i, v);
  }
  for (; i < n; ++i) dst[i] = x[i] + a * y[i];
}

void sub_v(double* dst, const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(dst + i, _mm256_sub_pd(_mm256_loadu_pd(a + i),
                                            _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) dst[i] = a[i] - b[i];
}

void mul_v(double* dst, const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(dst + i, _mm256_mul_pd(_mm256_loadu_pd(a + i),
                                            _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) dst[i] = a[i] * b[i];
}

void scale_v(double* dst, double a, const double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(dst + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) dst[i] = a * x[i];
}

void accum_sq_v(double* acc, const double* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vx = _mm256_loadu_pd(x + i);
    __m256d va = _mm256_loadu_pd(acc + i);
    _mm256_storeu_pd(acc + i, _mm256_fmadd_pd(vx, vx, va));
  }
  for (; i < n; ++i) acc[i] += x[i] * x[i];
}

void sqrt_arr_v(double* dst, const double* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(dst + i, _mm256_sqrt_pd(_mm256_loadu_pd(x + i)));
  for (; i < n; ++i) dst[i] = std::sqrt(x[i]);
}

double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double dot_v(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
  double r = hsum(acc);
  for (; i < n; ++i) r += a[i] * b[i];
  return r;
}

double sum_v(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
  double r = hsum(acc);
  for (; i < n; ++i) r += a[i];
  return r;
}

double sum_sq_v(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(a + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double r = hsum(acc);
  for (; i < n; ++i) r += a[i] * a[i];
  return r;
}

double max_abs_v(const double* a, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_max_pd(acc, _mm256_andnot_pd(sign, _mm256_loadu_pd(a + i)));
  __m128d lo = _mm256_castpd256_pd128(acc);
  __m128d hi = _mm256_extractf128_pd(acc, 1);
  lo = _mm_max_pd(lo, hi);
  double r = _mm_cvtsd_f64(_mm_max_sd(lo, _mm_unpackhi_pd(lo, lo)));
  for (; i < n; ++i) {
    double v = std::fabs(a[i]);
    if (v > r) r = v;
  }
  return r;
}

void diff_x_v(double* gx, const double* u, std::size_t w, std::size_t h,
              double inv_h) {
  const __m256d vh = _mm256_set1_pd(inv_h);
  for (std::size_t y = 0; y < h; ++y) {
    const double* row = u + y * w;
    double* out = gx + y * w;
    std::size_t x = 0;
    for (; x + 4 <= w - 1; x += 4) {
      __m256d d = _mm256_sub_pd(_mm256_loadu_pd(row + x + 1),
                                _mm256_loadu_pd(row + x));
      _mm256_storeu_pd(out + x, _mm256_mul_pd(d, vh));
    }
    for (; x + 1 < w; ++x) out[x] = (row[x + 1] - row[x]) * inv_h;
    out[w - 1] = 0.0;
  }
}

void diff_y_v(double* gy, const double* u, std::size_t w, std::size_t h,
              double inv_h) {
  const __m256d vh = _mm256_set1_pd(inv_h);
  for (std::size_t y = 0; y + 1 < h; ++y) {
    const double* row = u + y * w;
    double* out = gy + y * w;
    std::size_t x = 0;
    for (; x + 4 <= w; x += 4) {
      __m256d d = _mm256_sub_pd(_mm256_loadu_pd(row + x + w),
                                _mm256_loadu_pd(row + x));
      _mm256_storeu_pd(out + x, _mm256_mul_pd(d, vh));
    }
    for (; x < w; ++x) out[x] = (row[x + w] - row[x]) * inv_h;
  }
  for (std::size_t x = 0; x < w; ++x) gy[(h - 1) * w + x] = 0.0;
}

void div_x_accum_v(double* dst, const double* qx, std::size_t w, std::size_t h,
                   double inv_h) {
  if (w < 2) return;
  const __m256d vh = _mm256_set1_pd(inv_h);
  for (std::size_t y = 0; y < h; ++y) {
    const double* q = qx + y * w;
    double* d = dst + y * w;
    d[0] += q[0] * inv_h;
    std::size_t x = 1;
    for (; x + 4 <= w - 1; x += 4) {
      __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(q + x),
                                   _mm256_loadu_pd(q + x - 1));
      __m256d acc = _mm256_loadu_pd(d + x);
      _mm256_storeu_pd(d + x, _mm256_fmadd_pd(diff, vh, acc));
    }
    for (; x + 1 < w; ++x) d[x] += (q[x] - q[x - 1]) * inv_h;
    d[w - 1] -= q[w - 2] * inv_h;
  }
}

void div_y_accum_v(double* dst, const double* qy, std::size_t w, std::size_t h,
                   double inv_h) {
  if (h < 2) return;
  const __m256d vh = _mm256_set1_pd(inv_h);
  {
    std::size_t x = 0;
    for (; x + 4 <= w; x += 4) {
      __m256d acc = _mm256_loadu_pd(dst + x);
      _mm256_storeu_pd(dst + x, _mm256_fmadd_pd(_mm256_loadu_pd(qy + x), vh, acc));
    }
    for (; x < w; ++x) dst[x] += qy[x] * inv_h;
  }
  for (std::size_t y = 1; y + 1 < h; ++y) {
    const double* q = qy + y * w;
    double* d = dst + y * w;
    std::size_t x = 0;
    for (; x + 4 <= w; x += 4) {
      __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(q + x),
                                   _mm256_loadu_pd(q + x - w));
      __m256d acc = _mm256_loadu_pd(d + x);
      _mm256_storeu_pd(d + x, _mm256_fmadd_pd(diff, vh, acc));
    }
    for (; x < w; ++x) d[x] += (q[x] - q[x - w]) * inv_h;
  }
  const double* qlast = qy + (h - 2) * w;
  double* dlast = dst + (h - 1) * w;
  std::size_t x = 0;
  for (; x + 4 <= w; x += 4) {
    __m256d acc = _mm256_loadu_pd(dlast + x);
    __m256d neg = _mm256_sub_pd(_mm256_setzero_pd(), _mm256_loadu_pd(qlast + x));
    _mm256_storeu_pd(dlast + x, _mm256_fmadd_pd(neg, vh, acc));
  }
  for (; x < w; ++x) dlast[x] -= qlast[x] * inv_h;
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable t = {
      axpy_v,   add_scaled_v, sub_v,   mul_v,      scale_v,
      accum_sq_v, sqrt_arr_v, dot_v,   sum_v,      sum_sq_v,
      max_abs_v, diff_x_v,    diff_y_v, div_x_accum_v, div_y_accum_v,
      "avx2"};
  return t;
}

}  // namespace murec::kernels

#endif  // __AVX2__
