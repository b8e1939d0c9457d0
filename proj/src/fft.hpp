#pragma once

// Thin wrapper over FFTW. Plans are created once per (size, direction) under a
// mutex; execution on caller-owned buffers is thread-safe.

#include <complex>
#include <cstddef>
#include <span>

namespace ambibound::detail {

enum class FftSign { negative, positive };

// In-place unnormalized DFT:
//   negative: X[l] = sum_k x[k] exp(-i 2 pi l k / N)
//   positive: X[l] = sum_k x[k] exp(+i 2 pi l k / N)
void fft_inplace(std::span<std::complex<double>> data, FftSign sign);

}  // namespace ambibound::detail
