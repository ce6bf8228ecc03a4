#ifndef PLAB_PROPAGATOR_HPP
#define PLAB_PROPAGATOR_HPP

#include <optional>
#include <span>
#include <vector>

#include "plab/dispersion.hpp"
#include "plab/dualv.hpp"
#include "plab/field_state.hpp"
#include "plab/grid.hpp"

namespace plab::propagator {

using dispersion::PerturbativeCoefficients;
using dualv::AdiabaticityReport;
using dualv::ModelParams;

/// Number of worker threads used by the per-mode evolution loops. Modes
/// write disjoint slots, so results are identical for any setting.
void set_thread_count(int n);
int thread_count();

/// Tracked dark eigendata over the occupied DFT modes of a grid:
/// eigenvectors are phase-aligned by continuation from the k = 0 dark
/// polariton vector.
struct DarkModeTable {
    std::vector<int> mode_index;      // DFT indices, ascending in k
    std::vector<double> k;            // wavenumbers
    std::vector<Vector5cd> vectors;   // unit dark eigenvectors
    std::vector<cd> omega;            // dark eigenvalues (polished)

    /// Position of a DFT index inside the table, or -1.
    int find(int dft_index) const;
};

/// Dark eigendata over the closed k-interval covering k = 0 and all modes
/// where |weight| > 1e-12 * max|weight|. Pass an empty span to cover every
/// mode of the grid. The k = 0 column is the supplied anchor (the dark
/// polariton vector when anchor is null); continuation runs outward from it.
DarkModeTable dark_mode_table(const ModelParams& params, const Grid1D& grid,
                              std::span<const cd> weights,
                              const Vector5cd* anchor = nullptr);

struct DarkInitResult {
    FieldState state;                    // z-space
    DarkModeTable table;
    double offband_fraction = 0.0;       // spectral weight with |k|c > 0.1 Om_eff
    double spatial_ratio = 0.0;          // L_p g sqrt(N)/c, pulse as L_p
};

/// Mode-wise initialization on the dark branch: each occupied k-mode is the
/// pulse spectrum times the tracked dark eigenvector at that k (exactly the
/// dark polariton vector in the k = 0 column). Throws
/// NonadiabaticSpectrumError when more than 1% of the spectral weight lies
/// at |k| c > 0.1 Omega_eff.
DarkInitResult init_on_dark_branch(const ModelParams& params,
                                   const PulseSpec& pulse, const Grid1D& grid);

/// Exact per-mode advance by exp(-i H(k) t) for frozen parameters; state
/// must be in k space. Zero modes are skipped.
void advance_modes(FieldState& state_k, const ModelParams& params, double t);

/// Contract-level evolution for time-independent parameters. Validates
/// dt <= 0.1/Omega_eff and dt <= 0.1/(|k|_max c) (throws StepSizeError, no
/// silent sub-stepping), then advances by the exact per-mode matrix
/// exponential. The output uses the input representation.
FieldState evolve_full(const FieldState& initial, const ModelParams& params,
                       double t_final, double dt);

/// Exact spectral solution of the effective dark-polariton equation:
/// psi_k(t) = psi_k(0) exp(-i (k C1 + k^2 C2) t). With the exp(+ikz)
/// synthesis convention a positive C1 translates the envelope toward +z.
std::vector<cd> evolve_effective(std::span<const cd> psi, const Grid1D& grid,
                                 const PerturbativeCoefficients& coeffs,
                                 double t_final);

/// Closed-form intensity rms width of an initially Gaussian envelope under
/// the quadratic dispersion k^2 C2: width^2(t) =
/// ((s0^2 - Im(C2) t)^2 + (Re(C2) t)^2) / (s0^2 - Im(C2) t).
double gaussian_width_sq(double initial_width_sq, cd c2, double t);

struct CompareReport {
    double l2_error = 0.0;
    double centroid_full = 0.0;
    double centroid_effective = 0.0;
    double width_full = 0.0;
    double width_effective = 0.0;
    double offband_fraction = 0.0;
    AdiabaticityReport adiabaticity;
};

/// Evolve the same dark-initialized pulse with the full five-variable model
/// and with the effective dispersion relation, project the full solution on
/// the tracked dark eigenvectors, and report the relative L2 error plus
/// centroid/width discrepancies. Report-only: nothing is asserted here.
/// Throws UnsupportedCaseError when g_sqrt_n = 0.
CompareReport compare_full_vs_effective(const ModelParams& params,
                                        const PulseSpec& pulse,
                                        const Grid1D& grid, double t_final);

}  // namespace plab::propagator

#endif
