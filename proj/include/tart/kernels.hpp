#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace tart::kernels {

// Dense and spectral inner loops shared by the classifier and the audio
// front end. Each kernel has a serial reference implementation and an
// OpenMP-parallel one; both produce bitwise-identical results because every
// output element is accumulated by a single thread in the same order. The
// serial path is kept as the oracle for tests and for the benchmark tool.

enum class Exec { kSerial, kParallel };

/// Z[m x out] = X[m x in] * W^T + b, with W stored row-major [out x in].
void affine_forward(const double* x, const double* w, const double* b,
                    double* z, std::size_t m, std::size_t in, std::size_t out,
                    Exec exec = Exec::kParallel);

/// dX[m x in] = dZ[m x out] * W.
void affine_backward_input(const double* dz, const double* w, double* dx,
                           std::size_t m, std::size_t in, std::size_t out,
                           Exec exec = Exec::kParallel);

/// dW[out x in] = dZ^T * X, db[out] = column sums of dZ.
void affine_backward_params(const double* dz, const double* x, double* dw,
                            double* db, std::size_t m, std::size_t in,
                            std::size_t out, Exec exec = Exec::kParallel);

/// In-place iterative radix-2 FFT; n must be a power of two.
void fft_pow2(std::complex<double>* a, std::size_t n, bool inverse);

/// Power spectra of Hann-windowed frames. `signal` is framed at
/// `hop`-sample steps starting at sample 0; frames reaching past the end of
/// the signal are zero-padded. Output is n_frames rows of (fft_size/2 + 1)
/// bins, row-major. Parallel over frames.
std::vector<double> power_spectra(const std::vector<double>& signal,
                                  std::size_t n_frames, std::size_t fft_size,
                                  std::size_t hop,
                                  Exec exec = Exec::kParallel);

}  // namespace tart::kernels
