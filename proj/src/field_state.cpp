#include "plab/field_state.hpp"

#include <cmath>

#include "plab/errors.hpp"
#include "plab/fft.hpp"

namespace plab {

cd PulseSpec::eval(double z) const {
    const double u = z - center;
    const double envelope = std::exp(-u * u / (4.0 * rms_width * rms_width));
    return amplitude * envelope * std::polar(1.0, carrier_k * u);
}

void PulseSpec::validate(const Grid1D& grid) const {
    grid.validate();
    if (!(rms_width > 0.0) || !std::isfinite(rms_width))
        throw InvalidInput("pulse: rms_width must be > 0");
    if (!std::isfinite(center) || !std::isfinite(carrier_k))
        throw InvalidInput("pulse: center and carrier_k must be finite");
    if (!std::isfinite(amplitude.real()) || !std::isfinite(amplitude.imag()))
        throw InvalidInput("pulse: amplitude must be finite");
    if (center - 5.0 * rms_width < grid.z_min ||
        center + 5.0 * rms_width > grid.z_max)
        throw InvalidInput(
            "pulse: support (center +/- 5 rms_width) must lie inside the grid");
}

FieldState FieldState::zero(const Grid1D& grid, Rep rep) {
    grid.validate();
    FieldState st;
    st.grid = grid;
    st.rep = rep;
    for (auto& a : st.amp) a.assign(static_cast<std::size_t>(grid.n_points), cd(0.0, 0.0));
    return st;
}

void FieldState::to_k() {
    if (rep == Rep::k_space) return;
    for (auto& a : amp) fft(a);
    rep = Rep::k_space;
}

void FieldState::to_z() {
    if (rep == Rep::z_space) return;
    for (auto& a : amp) ifft(a);
    rep = Rep::z_space;
}

double FieldState::total_norm() const {
    double sum = 0.0;
    for (int c = 0; c < 5; ++c) sum += component_norm(c);
    return sum;
}

double FieldState::component_norm(int component) const {
    const auto& a = amp[static_cast<std::size_t>(component)];
    double s = 0.0;
    for (const cd& x : a) s += std::norm(x);
    // integral |f|^2 dz = dz * sum_z = (dz/n) * sum_k for unnormalized
    // forward DFT coefficients
    if (rep == Rep::z_space) return s * grid.dz();
    return s * grid.dz() / grid.n_points;
}

Vector5cd FieldState::mode(int j) const {
    Vector5cd x;
    for (int c = 0; c < 5; ++c)
        x(c) = amp[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)];
    return x;
}

void FieldState::set_mode(int j, const Vector5cd& x) {
    for (int c = 0; c < 5; ++c)
        amp[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)] = x(c);
}

double centroid(std::span<const cd> f, const Grid1D& grid) {
    double w = 0.0, zw = 0.0;
    for (int i = 0; i < grid.n_points; ++i) {
        const double p = std::norm(f[static_cast<std::size_t>(i)]);
        w += p;
        zw += grid.z(i) * p;
    }
    if (w <= 0.0) throw InvalidInput("centroid: zero-intensity profile");
    return zw / w;
}

double rms_width(std::span<const cd> f, const Grid1D& grid) {
    const double zc = centroid(f, grid);
    double w = 0.0, z2w = 0.0;
    for (int i = 0; i < grid.n_points; ++i) {
        const double p = std::norm(f[static_cast<std::size_t>(i)]);
        const double u = grid.z(i) - zc;
        w += p;
        z2w += u * u * p;
    }
    return std::sqrt(z2w / w);
}

}  // namespace plab
