#ifndef MUREC_KERNELS_HPP
#define MUREC_KERNELS_HPP

#include <cstddef>

// Data-parallel inner loops on double planes. Every kernel exists as a
// scalar reference implementation and, on x86-64, as an AVX2+FMA variant;
// the active table is chosen once at runtime from CPUID (override with the
// MUREC_KERNELS environment variable or set_backend()).
//
// Elementwise kernels allow dst to alias a source operand. Reductions
// accumulate in a fixed order per backend, so results are reproducible
// run-to-run for a given backend.

namespace murec::kernels {

struct KernelTable {
  // y[i] += a * x[i]
  void (*axpy)(double* y, double a, const double* x, std::size_t n);
  // dst[i] = x[i] + a * y[i]
  void (*add_scaled)(double* dst, const double* x, double a, const double* y,
                     std::size_t n);
  // dst[i] = a[i] - b[i]
  void (*sub)(double* dst, const double* a, const double* b, std::size_t n);
  // dst[i] = a[i] * b[i]
  void (*mul)(double* dst, const double* a, const double* b, std::size_t n);
  // dst[i] = a * x[i]
  void (*scale)(double* dst, double a, const double* x, std::size_t n);
  // acc[i] += x[i] * x[i]
  void (*accum_sq)(double* acc, const double* x, std::size_t n);
  // dst[i] = sqrt(x[i])
  void (*sqrt_arr)(double* dst, const double* x, std::size_t n);

  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sum)(const double* a, std::size_t n);
  double (*sum_sq)(const double* a, std::size_t n);
  double (*max_abs)(const double* a, std::size_t n);

  // Forward differences on a w*h row-major plane, scaled by inv_h.
  // The last column (diff_x) / last row (diff_y) is set to zero.
  void (*diff_x)(double* gx, const double* u, std::size_t w, std::size_t h,
                 double inv_h);
  void (*diff_y)(double* gy, const double* u, std::size_t w, std::size_t h,
                 double inv_h);
  // Accumulate the exact negative-adjoint divergence of one gradient plane:
  // dst[i] += (q[i] - q[i-1]) * inv_h along the axis, where the entry of q in
  // the last column/row is treated as zero (it is never produced by diff_*).
  void (*div_x_accum)(double* dst, const double* qx, std::size_t w,
                      std::size_t h, double inv_h);
  void (*div_y_accum)(double* dst, const double* qy, std::size_t w,
                      std::size_t h, double inv_h);

  const char* name;
};

enum class Backend { Scalar, Avx2 };

bool backend_available(Backend b);

// Active table (thread-local override aware).
const KernelTable& table();
const KernelTable& table(Backend b);  // throws std::runtime_error if unavailable

Backend active_backend();

// Thread-local override; Backend must be available. Pass-through RAII guard
// for scoped forcing (used by the deterministic solver mode and the tests).
void set_backend(Backend b);
void clear_backend_override();

class BackendGuard {
 public:
  explicit BackendGuard(Backend b);
  ~BackendGuard();
  BackendGuard(const BackendGuard&) = delete;
  BackendGuard& operator=(const BackendGuard&) = delete;

 private:
  bool had_override_;
  Backend previous_;
};

}  // namespace murec::kernels

#endif
