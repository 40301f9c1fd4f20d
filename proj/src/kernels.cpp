#include "tart/kernels.hpp"

#include <cmath>
#include <numbers>

#include "kernels_detail.hpp"
#include "tart/errors.hpp"

namespace tart::kernels {

namespace detail {

void power_spectrum_frame(const std::vector<double>& signal, std::size_t start,
                          std::size_t fft_size, double* bins_out) {
  // Periodic Hann window, recomputed per frame; cheap next to the FFT.
  std::vector<std::complex<double>> buf(fft_size);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(fft_size);
  for (std::size_t n = 0; n < fft_size; ++n) {
    std::size_t idx = start + n;
    double s = idx < signal.size() ? signal[idx] : 0.0;
    double w = 0.5 - 0.5 * std::cos(step * static_cast<double>(n));
    buf[n] = s * w;
  }
  fft_pow2(buf.data(), fft_size, false);
  for (std::size_t k = 0; k <= fft_size / 2; ++k) {
    bins_out[k] = std::norm(buf[k]);
  }
}

}  // namespace detail

void fft_pow2(std::complex<double>* a, std::size_t n, bool inverse) {
  if (n == 0 || (n & (n - 1)) != 0) {
    throw ValidationError("fft_pow2: length must be a power of two");
  }
  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    double ang = 2.0 * std::numbers::pi / static_cast<double>(len);
    if (!inverse) ang = -ang;
    std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        std::complex<double> u = a[i + k];
        std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse) {
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) a[i] *= inv_n;
  }
}

namespace serial {
void affine_forward(const double*, const double*, const double*, double*,
                    std::size_t, std::size_t, std::size_t);
void affine_backward_input(const double*, const double*, double*, std::size_t,
                           std::size_t, std::size_t);
void affine_backward_params(const double*, const double*, double*, double*,
                            std::size_t, std::size_t, std::size_t);
std::vector<double> power_spectra(const std::vector<double>&, std::size_t,
                                  std::size_t, std::size_t);
}  // namespace serial

namespace omp {
void affine_forward(const double*, const double*, const double*, double*,
                    std::size_t, std::size_t, std::size_t);
void affine_backward_input(const double*, const double*, double*, std::size_t,
                           std::size_t, std::size_t);
void affine_backward_params(const double*, const double*, double*, double*,
                            std::size_t, std::size_t, std::size_t);
std::vector<double> power_spectra(const std::vector<double>&, std::size_t,
                                  std::size_t, std::size_t);
}  // namespace omp

void affine_forward(const double* x, const double* w, const double* b,
                    double* z, std::size_t m, std::size_t in, std::size_t out,
                    Exec exec) {
  if (exec == Exec::kSerial) {
    serial::affine_forward(x, w, b, z, m, in, out);
  } else {
    omp::affine_forward(x, w, b, z, m, in, out);
  }
}

void affine_backward_input(const double* dz, const double* w, double* dx,
                           std::size_t m, std::size_t in, std::size_t out,
                           Exec exec) {
  if (exec == Exec::kSerial) {
    serial::affine_backward_input(dz, w, dx, m, in, out);
  } else {
    omp::affine_backward_input(dz, w, dx, m, in, out);
  }
}

void affine_backward_params(const double* dz, const double* x, double* dw,
                            double* db, std::size_t m, std::size_t in,
                            std::size_t out, Exec exec) {
  if (exec == Exec::kSerial) {
    serial::affine_backward_params(dz, x, dw, db, m, in, out);
  } else {
    omp::affine_backward_params(dz, x, dw, db, m, in, out);
  }
}

std::vector<double> power_spectra(const std::vector<double>& signal,
                                  std::size_t n_frames, std::size_t fft_size,
                                  std::size_t hop, Exec exec) {
  if (exec == Exec::kSerial) {
    return serial::power_spectra(signal, n_frames, fft_size, hop);
  }
  return omp::power_spectra(signal, n_frames, fft_size, hop);
}

}  // namespace tart::kernels
