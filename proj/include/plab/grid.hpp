#ifndef PLAB_GRID_HPP
#define PLAB_GRID_HPP

#include <vector>

namespace plab {

/// Uniform periodic grid on [z_min, z_max). Sample points are
/// z_i = z_min + i*dz with dz = (z_max - z_min)/n_points.
///
/// Wavenumbers follow the usual DFT layout with k_j = 2*pi*jj/(n*dz),
/// jj = j for j < n/2 and jj = j - n otherwise, i.e. the symmetric range
/// [-pi/dz, pi/dz). Index 0 is always k = 0.
struct Grid1D {
    int n_points = 0;
    double z_min = 0.0;
    double z_max = 0.0;

    double dz() const { return (z_max - z_min) / n_points; }
    double length() const { return z_max - z_min; }
    double z(int i) const { return z_min + i * dz(); }
    double k(int j) const;
    std::vector<double> k_values() const;

    /// Throws InvalidInput unless n_points is a power of two >= 16 and
    /// z_max > z_min.
    void validate() const;
};

}  // namespace plab

#endif
