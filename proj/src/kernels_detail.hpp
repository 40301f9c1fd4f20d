#pragma once

#include <complex>
#include <cstddef>
#include <vector>

// Per-element bodies shared by the serial and OpenMP translation units so the
// two paths cannot drift apart numerically.

namespace tart::kernels::detail {

inline double affine_forward_elem(const double* x, const double* w,
                                  const double* b, std::size_t in,
                                  std::size_t i, std::size_t o) {
  const double* xr = x + i * in;
  const double* wr = w + o * in;
  double acc = b ? b[o] : 0.0;
  for (std::size_t j = 0; j < in; ++j) acc += xr[j] * wr[j];
  return acc;
}

inline double backward_input_elem(const double* dz, const double* w,
                                  std::size_t in, std::size_t out,
                                  std::size_t i, std::size_t j) {
  const double* dzr = dz + i * out;
  double acc = 0.0;
  for (std::size_t o = 0; o < out; ++o) acc += dzr[o] * w[o * in + j];
  return acc;
}

inline double backward_weight_elem(const double* dz, const double* x,
                                   std::size_t m, std::size_t in,
                                   std::size_t out, std::size_t o,
                                   std::size_t j) {
  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) acc += dz[i * out + o] * x[i * in + j];
  return acc;
}

inline double backward_bias_elem(const double* dz, std::size_t m,
                                 std::size_t out, std::size_t o) {
  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) acc += dz[i * out + o];
  return acc;
}

/// One Hann-windowed power-spectrum frame; writes fft_size/2+1 bins.
void power_spectrum_frame(const std::vector<double>& signal, std::size_t start,
                          std::size_t fft_size, double* bins_out);

}  // namespace tart::kernels::detail
