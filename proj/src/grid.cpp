#include "plab/grid.hpp"

#include <cmath>

#include "plab/errors.hpp"

namespace plab {

double Grid1D::k(int j) const {
    const int jj = (j < n_points / 2) ? j : j - n_points;
    return 2.0 * M_PI * jj / (n_points * dz());
}

std::vector<double> Grid1D::k_values() const {
    std::vector<double> ks(static_cast<std::size_t>(n_points));
    for (int j = 0; j < n_points; ++j) ks[static_cast<std::size_t>(j)] = k(j);
    return ks;
}

void Grid1D::validate() const {
    if (n_points < 16 || (n_points & (n_points - 1)) != 0)
        throw InvalidInput("grid: n_points must be a power of two >= 16");
    if (!(z_max > z_min))
        throw InvalidInput("grid: z_max must exceed z_min");
    if (!std::isfinite(z_min) || !std::isfinite(z_max))
        throw InvalidInput("grid: bounds must be finite");
}

}  // namespace plab
