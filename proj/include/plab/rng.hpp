#ifndef PLAB_RNG_HPP
#define PLAB_RNG_HPP

#include <random>

#include "plab/types.hpp"

namespace plab {

/// mt19937_64 mapped to doubles through the raw 53-bit mantissa, so streams
/// are identical across platforms and standard-library versions.
class DeterministicRng {
  public:
    explicit DeterministicRng(unsigned long seed) : eng_(seed) {}

    double uniform(double lo, double hi) {
        const double u =
            static_cast<double>(eng_() >> 11) * (1.0 / 9007199254740992.0);
        return lo + (hi - lo) * u;
    }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(eng_() % static_cast<unsigned long>(hi - lo + 1));
    }

    cd complex_uniform(double radius) {
        return cd(uniform(-radius, radius), uniform(-radius, radius));
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace plab

#endif
