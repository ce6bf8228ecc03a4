#ifndef PLAB_FFT_HPP
#define PLAB_FFT_HPP

#include <span>

#include "plab/types.hpp"

namespace plab {

/// In-place radix-2 transforms for power-of-two lengths.
///
/// Forward:  X_j = sum_n x_n exp(-2*pi*i*j*n/N)
/// Inverse:  x_n = (1/N) sum_j X_j exp(+2*pi*i*j*n/N)
///
/// The inverse kernel exp(+i k z) is the synthesis convention used
/// throughout: mode j of a field multiplies exp(+i k_j (z - z_min)).
void fft(std::span<cd> data);
void ifft(std::span<cd> data);

}  // namespace plab

#endif
