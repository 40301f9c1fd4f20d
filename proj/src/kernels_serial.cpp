#include "kernels_detail.hpp"
#include "tart/kernels.hpp"

// Reference implementations: plain loops, no threading. Tests compare the
// OpenMP path against these bit for bit.

namespace tart::kernels::serial {

void affine_forward(const double* x, const double* w, const double* b,
                    double* z, std::size_t m, std::size_t in,
                    std::size_t out) {
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t o = 0; o < out; ++o) {
      z[i * out + o] = detail::affine_forward_elem(x, w, b, in, i, o);
    }
  }
}

void affine_backward_input(const double* dz, const double* w, double* dx,
                           std::size_t m, std::size_t in, std::size_t out) {
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < in; ++j) {
      dx[i * in + j] = detail::backward_input_elem(dz, w, in, out, i, j);
    }
  }
}

void affine_backward_params(const double* dz, const double* x, double* dw,
                            double* db, std::size_t m, std::size_t in,
                            std::size_t out) {
  for (std::size_t o = 0; o < out; ++o) {
    for (std::size_t j = 0; j < in; ++j) {
      dw[o * in + j] = detail::backward_weight_elem(dz, x, m, in, out, o, j);
    }
    db[o] = detail::backward_bias_elem(dz, m, out, o);
  }
}

std::vector<double> power_spectra(const std::vector<double>& signal,
                                  std::size_t n_frames, std::size_t fft_size,
                                  std::size_t hop) {
  const std::size_t n_bins = fft_size / 2 + 1;
  std::vector<double> spectra(n_frames * n_bins);
  for (std::size_t f = 0; f < n_frames; ++f) {
    detail::power_spectrum_frame(signal, f * hop, fft_size,
                                 spectra.data() + f * n_bins);
  }
  return spectra;
}

}  // namespace tart::kernels::serial
