#include "lagcoh/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace lagcoh::kernels {

namespace {

Backend detect_backend() {
  Backend chosen = Backend::scalar;
#if LAGCOH_HAVE_AVX2
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    chosen = Backend::avx2;
  }
#endif
  if (const char* env = std::getenv("LAGCOH_KERNEL")) {
    if (std::strcmp(env, "scalar") == 0) chosen = Backend::scalar;
#if LAGCOH_HAVE_AVX2
    if (std::strcmp(env, "avx2") == 0 && __builtin_cpu_supports("avx2")) {
      chosen = Backend::avx2;
    }
#endif
  }
  return chosen;
}

Backend g_backend = detect_backend();

}  // namespace

Backend active_backend() { return g_backend; }

void set_backend(Backend backend) {
#if !LAGCOH_HAVE_AVX2
  backend = Backend::scalar;
#endif
  g_backend = backend;
}

bool avx2_available() {
#if LAGCOH_HAVE_AVX2
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::string to_string(Backend backend) {
  return backend == Backend::avx2 ? "avx2" : "scalar";
}

double dot(const double* a, const double* b, std::size_t n) {
#if LAGCOH_HAVE_AVX2
  if (g_backend == Backend::avx2) return detail::dot_avx2(a, b, n);
#endif
  return detail::dot_scalar(a, b, n);
}

double sum_squares(const double* a, std::size_t n) {
#if LAGCOH_HAVE_AVX2
  if (g_backend == Backend::avx2) return detail::sum_squares_avx2(a, n);
#endif
  return detail::sum_squares_scalar(a, n);
}

std::complex<double> cdot_conj(const double* ar, const double* ai,
                               const double* br, const double* bi,
                               std::size_t n) {
#if LAGCOH_HAVE_AVX2
  if (g_backend == Backend::avx2) return detail::cdot_conj_avx2(ar, ai, br, bi, n);
#endif
  return detail::cdot_conj_scalar(ar, ai, br, bi, n);
}

}  // namespace lagcoh::kernels
