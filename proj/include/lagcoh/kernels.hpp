#pragma once

#include <complex>
#include <cstddef>
#include <string>

// Data-parallel inner loops behind the spectral estimators. Each kernel has
// a scalar reference implementation and, on x86-64, an AVX2 variant selected
// at runtime. Variants may differ in reduction order, so equality is only
// guaranteed to rounding; the equivalence tests pin the tolerance.
namespace lagcoh::kernels {

enum class Backend { scalar, avx2 };

// Backend chosen at startup: AVX2 when compiled in and supported by the CPU,
// overridable via the LAGCOH_KERNEL environment variable (scalar|avx2).
Backend active_backend();
void set_backend(Backend backend);
std::string to_string(Backend backend);
bool avx2_available();

// sum_i a[i] * b[i]
double dot(const double* a, const double* b, std::size_t n);

// sum_i a[i]^2
double sum_squares(const double* a, std::size_t n);

// sum_i (ar[i] + i*ai[i]) * conj(br[i] + i*bi[i]), split-complex layout.
std::complex<double> cdot_conj(const double* ar, const double* ai,
                               const double* br, const double* bi,
                               std::size_t n);

namespace detail {
double dot_scalar(const double* a, const double* b, std::size_t n);
double sum_squares_scalar(const double* a, std::size_t n);
std::complex<double> cdot_conj_scalar(const double* ar, const double* ai,
                                      const double* br, const double* bi,
                                      std::size_t n);
#if LAGCOH_HAVE_AVX2
double dot_avx2(const double* a, const double* b, std::size_t n);
double sum_squares_avx2(const double* a, std::size_t n);
std::complex<double> cdot_conj_avx2(const double* ar, const double* ai,
                                    const double* br, const double* bi,
                                    std::size_t n);
#endif
}  // namespace detail

}  // namespace lagcoh::kernels
