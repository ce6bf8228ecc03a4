#ifndef PLAB_FIELD_STATE_HPP
#define PLAB_FIELD_STATE_HPP

#include <array>
#include <span>
#include <vector>

#include "plab/grid.hpp"
#include "plab/types.hpp"

namespace plab {

/// Gaussian pulse amplitude(z) = amplitude * exp(-(z-center)^2/(4 sigma^2))
///                              * exp(i carrier_k (z - center)),
/// so the intensity |amplitude|^2 has rms width sigma (rms_width).
struct PulseSpec {
    double center = 0.0;
    double rms_width = 0.0;
    double carrier_k = 0.0;
    cd amplitude{1.0, 0.0};

    cd eval(double z) const;

    /// Requires sigma > 0 and center +/- 5 sigma inside the grid domain.
    void validate(const Grid1D& grid) const;
};

/// The five complex amplitudes (E+, E-, sigma_gs, sigma_ge+, sigma_ge-)
/// sampled on a grid, either in z space or as DFT coefficients (k space).
struct FieldState {
    enum class Rep { z_space, k_space };

    Grid1D grid;
    Rep rep = Rep::z_space;
    std::array<std::vector<cd>, 5> amp;
    double time = 0.0;

    static FieldState zero(const Grid1D& grid, Rep rep = Rep::z_space);

    void to_k();
    void to_z();

    /// L2 norm sum_i integral |X_i|^2 dz, representation-independent
    /// (Parseval in k space).
    double total_norm() const;
    /// Same integral for one component.
    double component_norm(int component) const;

    /// Gather/scatter one k-mode as a 5-vector (k-space representation only).
    Vector5cd mode(int j) const;
    void set_mode(int j, const Vector5cd& x);
};

/// Intensity-weighted first moment of |f|^2 over the grid.
double centroid(std::span<const cd> f, const Grid1D& grid);
/// Intensity-weighted rms width of |f|^2 about its centroid.
double rms_width(std::span<const cd> f, const Grid1D& grid);

}  // namespace plab

#endif
