#ifndef PLAB_DUALV_HPP
#define PLAB_DUALV_HPP

#include <complex>

#include "plab/types.hpp"

namespace plab::dualv {

/// Physical parameters of the dual-V medium, in reduced units
/// (frequencies in units of the reference decoherence rate, lengths in
/// units of c over that rate; typically c = 1).
struct ModelParams {
    double g_sqrt_n = 0.0;          ///< collective coupling g*sqrt(N), >= 0
    cd omega_plus{0.0, 0.0};        ///< forward control Rabi frequency
    cd omega_minus{0.0, 0.0};       ///< backward control Rabi frequency
    double delta_plus = 0.0;        ///< one-photon detuning, forward probe
    double delta_minus = 0.0;       ///< one-photon detuning, backward probe
    double gamma_plus = 0.0;        ///< optical decoherence rate, >= 0
    double gamma_minus = 0.0;       ///< optical decoherence rate, >= 0
    double c = 1.0;                 ///< vacuum light speed, > 0

    double omega_sq() const;        ///< |Omega+|^2 + |Omega-|^2
    double omega_eff() const;       ///< sqrt(g^2 N + Omega^2)
    double gamma_max() const;       ///< max(gamma+, gamma-)

    void validate() const;          ///< throws InvalidInput
};

/// Field/matter content and forward/backward balance of the dark-state
/// polariton: tan^2(theta) = g^2 N / Omega^2, tan^2(phi) = |Om-|^2/|Om+|^2.
struct MixingAngles {
    double theta = 0.0;   // in [0, pi/2]
    double phi = 0.0;     // in [0, pi/2]
    double omega_sq = 0.0;
};

struct DerivedScales {
    double v_gr = 0.0;       ///< slow-light group velocity c*cos^2(theta)
    double l_abs = 0.0;      ///< absorption length c*gamma/(g^2 N)
    double omega_eff = 0.0;  ///< sqrt(g^2 N + Omega^2)
};

enum class AdiabaticityLevel { fail, warn, pass };

/// "Much greater than one" made concrete: ratio >= 10 passes, >= 3 warns.
/// The ratios are reported, never enforced.
struct AdiabaticityReport {
    double temporal_ratio = 0.0;   ///< Omega_eff * T
    double spatial_ratio = 0.0;    ///< L_p / sqrt(L_abs * c / gamma)
    AdiabaticityLevel temporal_level = AdiabaticityLevel::fail;
    AdiabaticityLevel spatial_level = AdiabaticityLevel::fail;

    bool pass() const {
        return temporal_level == AdiabaticityLevel::pass &&
               spatial_level == AdiabaticityLevel::pass;
    }
};

/// The 5x5 coefficient matrix H(k) in the variable order
/// (E+, E-, sigma_gs, sigma_ge+, sigma_ge-):
/// diagonal (-kc, +kc, 0, -i Gamma+, -i Gamma-) with Gamma = i Delta + gamma,
/// couplings -g sqrt(N) between each field and its optical coherence and
/// -Omega (with conjugates below the diagonal) between the spin coherence
/// and the optical coherences.
Matrix5cd build_h(const ModelParams& params, double k);

/// Coefficient matrix governing the spatial mode exp(+i k z). With the
/// synthesis convention f(z) = sum_k f_k exp(+i k z) the field diagonal
/// carries the opposite sign of k relative to build_h, so this is
/// build_h(params, -k). Positive d(omega)/dk on a branch of this matrix
/// means motion toward +z.
Matrix5cd mode_matrix(const ModelParams& params, double k);

/// Throws DegenerateControlError when both controls vanish.
MixingAngles mixing_angles(const ModelParams& params);

/// Unit dark vector from explicit angles and control phases:
/// (cos(phi)cos(theta) e^{-i arg+}, sin(phi)cos(theta) e^{-i arg-},
///  -sin(theta), 0, 0).
Vector5cd dark_vector_from_angles(double theta, double phi,
                                  double arg_plus = 0.0,
                                  double arg_minus = 0.0);

/// The dark-state polariton direction (conj(Om+), conj(Om-), -g sqrt(N))
/// normalized by Omega_eff; annihilated by H(0) for arbitrary detunings and
/// decoherence rates. Reduces to the cos/sin form for real controls.
Vector5cd dark_polariton_vector(const ModelParams& params);

DerivedScales derived_scales(const ModelParams& params);

/// Temporal condition Omega_eff*T >> 1, spatial condition
/// L_p >> sqrt(L_abs * c/gamma). The spatial ratio is evaluated in the
/// cancellation-free form L_p * g sqrt(N) / c (gamma drops out exactly).
AdiabaticityReport validate_adiabaticity(const ModelParams& params,
                                         double pulse_duration,
                                         double pulse_length);

}  // namespace plab::dualv

#endif
