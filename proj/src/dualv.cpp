#include "plab/dualv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "plab/errors.hpp"

namespace plab::dualv {

double ModelParams::omega_sq() const {
    return std::norm(omega_plus) + std::norm(omega_minus);
}

double ModelParams::omega_eff() const {
    return std::sqrt(g_sqrt_n * g_sqrt_n + omega_sq());
}

double ModelParams::gamma_max() const { return std::max(gamma_plus, gamma_minus); }

void ModelParams::validate() const {
    if (!(g_sqrt_n >= 0.0) || !std::isfinite(g_sqrt_n))
        throw InvalidInput("model: g_sqrt_n must be finite and >= 0");
    if (!std::isfinite(omega_plus.real()) || !std::isfinite(omega_plus.imag()) ||
        !std::isfinite(omega_minus.real()) || !std::isfinite(omega_minus.imag()))
        throw InvalidInput("model: control Rabi frequencies must be finite");
    if (!std::isfinite(delta_plus) || !std::isfinite(delta_minus))
        throw InvalidInput("model: detunings must be finite");
    if (!(gamma_plus >= 0.0) || !(gamma_minus >= 0.0) ||
        !std::isfinite(gamma_plus) || !std::isfinite(gamma_minus))
        throw InvalidInput("model: decoherence rates must be finite and >= 0");
    if (!(c > 0.0) || !std::isfinite(c))
        throw InvalidInput("model: c must be finite and > 0");
}

Matrix5cd build_h(const ModelParams& p, double k) {
    p.validate();
    const cd i1(0.0, 1.0);
    const double g = p.g_sqrt_n;

    Matrix5cd h = Matrix5cd::Zero();
    h(0, 0) = cd(-k * p.c, 0.0);
    h(1, 1) = cd(+k * p.c, 0.0);
    h(3, 3) = -i1 * (i1 * p.delta_plus + p.gamma_plus);
    h(4, 4) = -i1 * (i1 * p.delta_minus + p.gamma_minus);
    h(0, 3) = h(3, 0) = cd(-g, 0.0);
    h(1, 4) = h(4, 1) = cd(-g, 0.0);
    h(2, 3) = -p.omega_plus;
    h(2, 4) = -p.omega_minus;
    h(3, 2) = -std::conj(p.omega_plus);
    h(4, 2) = -std::conj(p.omega_minus);
    return h;
}

Matrix5cd mode_matrix(const ModelParams& p, double k) { return build_h(p, -k); }

MixingAngles mixing_angles(const ModelParams& p) {
    p.validate();
    const double osq = p.omega_sq();
    if (osq <= 0.0)
        throw DegenerateControlError("degenerate control fields: Omega^2 = 0");
    MixingAngles a;
    a.omega_sq = osq;
    a.theta = std::atan2(p.g_sqrt_n, std::sqrt(osq));
    a.phi = std::atan2(std::abs(p.omega_minus), std::abs(p.omega_plus));
    return a;
}

Vector5cd dark_vector_from_angles(double theta, double phi, double arg_plus,
                                  double arg_minus) {
    Vector5cd d = Vector5cd::Zero();
    d(0) = std::polar(std::cos(phi) * std::cos(theta), -arg_plus);
    d(1) = std::polar(std::sin(phi) * std::cos(theta), -arg_minus);
    d(2) = cd(-std::sin(theta), 0.0);
    return d;
}

Vector5cd dark_polariton_vector(const ModelParams& p) {
    p.validate();
    const double osq = p.omega_sq();
    if (osq <= 0.0)
        throw DegenerateControlError("degenerate control fields: Omega^2 = 0");
    const double norm = p.omega_eff();
    Vector5cd d = Vector5cd::Zero();
    d(0) = std::conj(p.omega_plus) / norm;
    d(1) = std::conj(p.omega_minus) / norm;
    d(2) = cd(-p.g_sqrt_n / norm, 0.0);
    return d;
}

DerivedScales derived_scales(const ModelParams& p) {
    p.validate();
    DerivedScales s;
    const double g2n = p.g_sqrt_n * p.g_sqrt_n;
    const double den = g2n + p.omega_sq();
    s.v_gr = (den > 0.0) ? p.c * p.omega_sq() / den : p.c;
    s.l_abs = (g2n > 0.0) ? p.c * p.gamma_max() / g2n
                          : std::numeric_limits<double>::infinity();
    s.omega_eff = std::sqrt(den);
    return s;
}

namespace {

AdiabaticityLevel level_of(double ratio) {
    if (ratio >= 10.0) return AdiabaticityLevel::pass;
    if (ratio >= 3.0) return AdiabaticityLevel::warn;
    return AdiabaticityLevel::fail;
}

}  // namespace

AdiabaticityReport validate_adiabaticity(const ModelParams& p,
                                         double pulse_duration,
                                         double pulse_length) {
    p.validate();
    if (!(pulse_duration > 0.0) || !std::isfinite(pulse_duration))
        throw InvalidInput("adiabaticity: pulse_duration must be > 0");
    if (!(pulse_length > 0.0) || !std::isfinite(pulse_length))
        throw InvalidInput("adiabaticity: pulse_length must be > 0");

    AdiabaticityReport r;
    r.temporal_ratio = p.omega_eff() * pulse_duration;
    // L_p / sqrt(L_abs * c/gamma) with L_abs = c*gamma/(g^2 N); gamma cancels.
    r.spatial_ratio = pulse_length * p.g_sqrt_n / p.c;
    r.temporal_level = level_of(r.temporal_ratio);
    r.spatial_level = level_of(r.spatial_ratio);
    return r;
}

}  // namespace plab::dualv
