#include "murec/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace murec::kernels {

const KernelTable& scalar_table();
#if defined(MUREC_HAVE_AVX2_TU)
const KernelTable& avx2_table();
#endif

namespace {

bool cpu_has_avx2() {
#if defined(MUREC_HAVE_AVX2_TU) && defined(__GNUC__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend detect_default() {
  if (const char* env = std::getenv("MUREC_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::Scalar;
    if (std::strcmp(env, "avx2") == 0 && backend_available(Backend::Avx2))
      return Backend::Avx2;
  }
  return backend_available(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar;
}

Backend default_backend() {
  static const Backend b = detect_default();
  return b;
}

thread_local bool tl_has_override = false;
thread_local Backend tl_override = Backend::Scalar;

}  // namespace

bool backend_available(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
      return cpu_has_avx2();
  }
  return false;
}

const KernelTable& table(Backend b) {
  if (!backend_available(b)) throw std::runtime_error("kernel backend unavailable");
  switch (b) {
    case Backend::Avx2:
#if defined(MUREC_HAVE_AVX2_TU)
      return avx2_table();
#else
      break;
#endif
    case Backend::Scalar:
      break;
  }
  return scalar_table();
}

Backend active_backend() {
  return tl_has_override ? tl_override : default_backend();
}

const KernelTable& table() { return table(active_backend()); }

void set_backend(Backend b) {
  if (!backend_available(b)) throw std::runtime_error("kernel backend unavailable");
  tl_has_override = true;
  tl_override = b;
}

void clear_backend_override() { tl_has_override = false; }

BackendGuard::BackendGuard(Backend b)
    : had_override_(tl_has_override), previous_(tl_override) {
  set_backend(b);
}

BackendGuard::~BackendGuard() {
  tl_has_override = had_override_;
  tl_override = previous_;
}

}  // namespace murec::kernels
