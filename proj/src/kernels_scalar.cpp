#include "lagcoh/kernels.hpp"

namespace lagcoh::kernels::detail {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sum_squares_scalar(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * a[i];
  return acc;
}

std::complex<double> cdot_conj_scalar(const double* ar, const double* ai,
                                      const double* br, const double* bi,
                                      std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += ar[i] * br[i] + ai[i] * bi[i];
    im += ai[i] * br[i] - ar[i] * bi[i];
  }
  return {re, im};
}

}  // namespace lagcoh::kernels::detail
