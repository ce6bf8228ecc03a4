#ifndef PLAB_DISPERSION_HPP
#define PLAB_DISPERSION_HPP

#include <array>
#include <span>
#include <string>
#include <vector>

#include "plab/dualv.hpp"
#include "plab/types.hpp"

namespace plab::dispersion {

using dualv::ModelParams;

/// One eigenvalue branch omega(k) of the mode matrix, tracked by
/// eigenvector-overlap continuation from k = 0 outward. Branches follow the
/// traveling-wave convention exp(i(kz - omega t)): positive Re d(omega)/dk
/// is motion toward +z, Im omega <= 0 is decay.
struct DispersionBranch {
    std::vector<double> k_grid;
    std::vector<cd> omega;
    std::vector<Vector5cd> vectors;   // unit eigenvectors, phase-aligned along k
    std::string branch_id;
};

struct BranchSet {
    std::array<DispersionBranch, 5> branches;
    int dark_index = -1;
};

/// All five branches of the non-Hermitian mode matrix over a sorted k grid.
/// The dark branch is the one whose k = 0 eigenvector overlaps the dark
/// polariton vector by at least 0.999. Throws TrackingError (with the
/// offending k) when the best continuation overlap drops below 0.5.
BranchSet eigen_branches(const ModelParams& params, std::span<const double> k_grid);

/// Dispersion omega(k) = C1 k + C2 k^2 of the dark branch:
///   C1 = v_gr cos(2 phi)
///   C2 = v_gr L_abs (Delta/gamma - i)(sin^2(2 phi) + cos^2(2 phi) sin^4(theta))
/// in the symmetric regime Gamma+ = Gamma-. inv_mass is the curvature
/// (1/hbar) d^2 omega/dk^2 = 2 C2 with hbar = 1 in reduced units.
struct PerturbativeCoefficients {
    cd c1{0.0, 0.0};
    cd c2{0.0, 0.0};
    double v = 0.0;          ///< drift velocity c cos^2(theta) cos(2 phi)
    cd inv_mass{0.0, 0.0};
};

/// Throws UnsupportedRegimeError for Gamma+ != Gamma- or g_sqrt_n = 0
/// (the exact branches remain available through eigen_branches).
PerturbativeCoefficients perturbative_coefficients(const ModelParams& params);

/// The dark-branch eigenvalue of the mode matrix at one wavenumber,
/// identified by overlap with the dark polariton vector and polished to
/// machine precision by Newton iteration on det(H - omega I).
cd dark_eigenvalue(const ModelParams& params, double k);

/// Centered five-point derivative estimates of the dark branch at k = 0,
/// at step h and Richardson-refined with step h/2.
struct DerivativeEstimate {
    cd first{0.0, 0.0};
    cd second{0.0, 0.0};
    cd first_refined{0.0, 0.0};
    cd second_refined{0.0, 0.0};
    double step = 0.0;
};

DerivativeEstimate dark_branch_derivatives(const ModelParams& params,
                                           double h = 1e-4);

/// Check that the expanded mass formula
///   (4 pi / m)(v_gr / v_rec)(L_abs / lambda)(Delta/gamma - i)(...)
/// equals 2 C2 / hbar once m v_rec = hbar k_probe and lambda = 2 pi/k_probe
/// are inserted (hbar = 1). recoil_consistent flags whether the supplied
/// inputs actually satisfy lambda * k_probe = 2 pi.
struct MassIdentityReport {
    cd expanded{0.0, 0.0};
    cd curvature{0.0, 0.0};   // 2 C2 / hbar
    double residual = 0.0;    // relative
    bool recoil_consistent = true;
};

MassIdentityReport verify_mass_identity(const ModelParams& params,
                                        double k_probe, double v_rec,
                                        double lambda_p);

}  // namespace plab::dispersion

#endif
