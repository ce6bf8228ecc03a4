#include "plab/fft.hpp"

#include <cmath>
#include <cstddef>
#include <utility>

#include "plab/errors.hpp"

namespace plab {

namespace {

void transform(std::span<cd> a, int sign) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw InvalidInput("fft: length must be a power of two");

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * M_PI / static_cast<double>(len);
        const std::size_t half = len / 2;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < half; ++j) {
                // direct twiddle evaluation keeps round-off flat in j
                const cd w = std::polar(1.0, ang * static_cast<double>(j));
                const cd u = a[i + j];
                const cd v = a[i + j + half] * w;
                a[i + j] = u + v;
                a[i + j + half] = u - v;
            }
        }
    }
}

}  // namespace

void fft(std::span<cd> data) { transform(data, -1); }

void ifft(std::span<cd> data) {
    transform(data, +1);
    const double inv = 1.0 / static_cast<double>(data.size());
    for (auto& x : data) x *= inv;
}

}  // namespace plab
