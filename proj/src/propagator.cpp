#include "plab/propagator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include <unsupported/Eigen/MatrixFunctions>

#include "plab/eig5.hpp"
#include "plab/errors.hpp"
#include "plab/fft.hpp"

namespace plab::propagator {

namespace {

int g_threads = 1;

// Strided parallel loop; each index is touched by exactly one worker, so
// results do not depend on scheduling.
template <typename Fn>
void for_each_index(std::size_t n, Fn&& fn) {
    const int nt = std::min<int>(g_threads, static_cast<int>(n));
    if (nt <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(nt));
    for (int t = 0; t < nt; ++t) {
        workers.emplace_back([&fn, n, t, nt] {
            for (std::size_t i = static_cast<std::size_t>(t); i < n;
                 i += static_cast<std::size_t>(nt))
                fn(i);
        });
    }
    for (auto& w : workers) w.join();
}

}  // namespace

void set_thread_count(int n) { g_threads = std::max(1, n); }
int thread_count() { return g_threads; }

int DarkModeTable::find(int dft_index) const {
    for (std::size_t i = 0; i < mode_index.size(); ++i)
        if (mode_index[i] == dft_index) return static_cast<int>(i);
    return -1;
}

DarkModeTable dark_mode_table(const ModelParams& params, const Grid1D& grid,
                              std::span<const cd> weights,
                              const Vector5cd* anchor) {
    params.validate();
    grid.validate();

    const int n = grid.n_points;
    // DFT indices ordered by ascending k; index 0 (k = 0) sits at position n/2.
    std::vector<int> by_k(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const int jj = (j < n / 2) ? j : j - n;  // signed frequency
        by_k[static_cast<std::size_t>(jj + n / 2)] = j;
    }
    const int zero_pos = n / 2;

    int lo = 0, hi = n - 1;
    if (!weights.empty()) {
        if (static_cast<int>(weights.size()) != n)
            throw InvalidInput("dark_mode_table: weights length must match grid");
        double peak = 0.0;
        for (const cd& w : weights) peak = std::max(peak, std::abs(w));
        const double cut = 1e-12 * peak;
        lo = zero_pos;
        hi = zero_pos;
        for (int pos = 0; pos < n; ++pos) {
            const int j = by_k[static_cast<std::size_t>(pos)];
            if (std::abs(weights[static_cast<std::size_t>(j)]) > cut) {
                lo = std::min(lo, pos);
                hi = std::max(hi, pos);
            }
        }
    }

    DarkModeTable table;
    table.mode_index.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (int pos = lo; pos <= hi; ++pos) {
        const int j = by_k[static_cast<std::size_t>(pos)];
        table.mode_index.push_back(j);
        table.k.push_back(grid.k(j));
    }
    table.vectors.resize(table.mode_index.size());
    table.omega.resize(table.mode_index.size());

    const Vector5cd dark0 =
        anchor ? *anchor : dualv::dark_polariton_vector(params);
    const int zero_entry = zero_pos - lo;

    auto fill = [&](int entry, const Vector5cd& prev) -> Vector5cd {
        const double k = table.k[static_cast<std::size_t>(entry)];
        const Matrix5cd h = dualv::mode_matrix(params, k);
        const EigenModes modes = eigen_modes(h);
        double overlap = 0.0;
        const int idx = best_overlap(modes, prev, &overlap);
        if (overlap < 0.5)
            throw TrackingError(
                "dark_mode_table: lost the dark branch at k = " + std::to_string(k),
                k);
        Vector5cd vec = modes.vectors[static_cast<std::size_t>(idx)];
        phase_align(vec, prev);
        table.vectors[static_cast<std::size_t>(entry)] = vec;
        table.omega[static_cast<std::size_t>(entry)] = newton_polish_eigenvalue(
            h, modes.values[static_cast<std::size_t>(idx)]);
        return vec;
    };

    // k = 0 column is exactly the dark polariton vector
    table.vectors[static_cast<std::size_t>(zero_entry)] = dark0;
    table.omega[static_cast<std::size_t>(zero_entry)] = cd(0.0, 0.0);

    Vector5cd prev = dark0;
    for (int e = zero_entry + 1; e <= hi - lo; ++e) prev = fill(e, prev);
    prev = dark0;
    for (int e = zero_entry - 1; e >= 0; --e) prev = fill(e, prev);
    return table;
}

DarkInitResult init_on_dark_branch(const ModelParams& params,
                                   const PulseSpec& pulse, const Grid1D& grid) {
    params.validate();
    pulse.validate(grid);

    // scalar pulse and its spectrum
    std::vector<cd> spectrum(static_cast<std::size_t>(grid.n_points));
    for (int i = 0; i < grid.n_points; ++i)
        spectrum[static_cast<std::size_t>(i)] = pulse.eval(grid.z(i));
    fft(spectrum);

    // spectral weight outside the adiabatic window |k| c <= 0.1 Omega_eff
    const double om_eff = params.omega_eff();
    double total = 0.0, outside = 0.0;
    for (int j = 0; j < grid.n_points; ++j) {
        const double w = std::norm(spectrum[static_cast<std::size_t>(j)]);
        total += w;
        if (std::abs(grid.k(j)) * params.c > 0.1 * om_eff) outside += w;
    }
    if (total <= 0.0) throw InvalidInput("init_on_dark_branch: empty pulse");
    const double offband = outside / total;
    if (offband > 0.01)
        throw NonadiabaticSpectrumError(
            "init_on_dark_branch: " + std::to_string(100.0 * offband) +
            "% of the pulse spectrum lies at |k|c > 0.1 Omega_eff");

    DarkInitResult out;
    out.offband_fraction = offband;
    out.spatial_ratio = pulse.rms_width * params.g_sqrt_n / params.c;
    out.table = dark_mode_table(params, grid, spectrum);

    out.state = FieldState::zero(grid, FieldState::Rep::k_space);
    for (std::size_t e = 0; e < out.table.mode_index.size(); ++e) {
        const int j = out.table.mode_index[e];
        out.state.set_mode(j, spectrum[static_cast<std::size_t>(j)] * out.table.vectors[e]);
    }
    out.state.to_z();
    return out;
}

void advance_modes(FieldState& state_k, const ModelParams& params, double t) {
    if (state_k.rep != FieldState::Rep::k_space)
        throw InvalidInput("advance_modes: state must be in k space");
    const int n = state_k.grid.n_points;
    const cd mi(0.0, -1.0);
    for_each_index(static_cast<std::size_t>(n), [&](std::size_t j) {
        const Vector5cd x = state_k.mode(static_cast<int>(j));
        if (x.squaredNorm() == 0.0) return;
        const Matrix5cd h = dualv::mode_matrix(params, state_k.grid.k(static_cast<int>(j)));
        const Matrix5cd u = (mi * t * h).exp();
        state_k.set_mode(static_cast<int>(j), u * x);
    });
    state_k.time += t;
}

FieldState evolve_full(const FieldState& initial, const ModelParams& params,
                       double t_final, double dt) {
    params.validate();
    initial.grid.validate();
    if (!(t_final >= 0.0) || !std::isfinite(t_final))
        throw InvalidInput("evolve_full: t_final must be >= 0");
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw StepSizeError("evolve_full: dt must be > 0");

    const double om_eff = params.omega_eff();
    double k_max = 0.0;
    for (const double k : initial.grid.k_values()) k_max = std::max(k_max, std::abs(k));
    const double slack = 1.0 + 1e-12;
    if (om_eff > 0.0 && dt > slack * 0.1 / om_eff)
        throw StepSizeError("evolve_full: dt exceeds 0.1/Omega_eff");
    if (dt > slack * 0.1 / (k_max * params.c))
        throw StepSizeError("evolve_full: dt exceeds 0.1/(|k|_max c)");

    FieldState st = initial;
    const FieldState::Rep rep_in = st.rep;
    st.to_k();
    advance_modes(st, params, t_final);
    if (rep_in == FieldState::Rep::z_space) st.to_z();
    return st;
}

std::vector<cd> evolve_effective(std::span<const cd> psi, const Grid1D& grid,
                                 const PerturbativeCoefficients& coeffs,
                                 double t_final) {
    grid.validate();
    if (static_cast<int>(psi.size()) != grid.n_points)
        throw InvalidInput("evolve_effective: psi length must match grid");
    std::vector<cd> out(psi.begin(), psi.end());
    fft(out);
    const cd mi(0.0, -1.0);
    for (int j = 0; j < grid.n_points; ++j) {
        const double k = grid.k(j);
        out[static_cast<std::size_t>(j)] *=
            std::exp(mi * (k * coeffs.c1 + k * k * coeffs.c2) * t_final);
    }
    ifft(out);
    return out;
}

double gaussian_width_sq(double initial_width_sq, cd c2, double t) {
    const double re_s = initial_width_sq - c2.imag() * t;
    const double im_s = c2.real() * t;
    return (re_s * re_s + im_s * im_s) / re_s;
}

CompareReport compare_full_vs_effective(const ModelParams& params,
                                        const PulseSpec& pulse,
                                        const Grid1D& grid, double t_final) {
    params.validate();
    if (params.g_sqrt_n <= 0.0)
        throw UnsupportedCaseError(
            "compare_full_vs_effective: dark projection undefined without a "
            "medium (g_sqrt_n = 0)");
    if (!(t_final > 0.0) || !std::isfinite(t_final))
        throw InvalidInput("compare_full_vs_effective: t_final must be > 0");

    // effective dispersion on the same initial polariton
    const PerturbativeCoefficients coeffs =
        dispersion::perturbative_coefficients(params);

    // periodic domain must hold the pulse plus its drift
    const double needed = 20.0 * pulse.rms_width + std::abs(coeffs.v) * t_final;
    if (grid.length() < needed)
        throw InvalidInput("compare_full_vs_effective: domain length " +
                           std::to_string(grid.length()) +
                           " is below 20 sigma_z + |v| t = " +
                           std::to_string(needed));

    DarkInitResult init = init_on_dark_branch(params, pulse, grid);
    const DarkModeTable& table = init.table;
    const int n = grid.n_points;

    // initial polariton spectrum from the dark projection
    FieldState state0 = init.state;
    state0.to_k();
    std::vector<cd> psi0_k(static_cast<std::size_t>(n), cd(0.0, 0.0));
    for (std::size_t e = 0; e < table.mode_index.size(); ++e) {
        const int j = table.mode_index[e];
        psi0_k[static_cast<std::size_t>(j)] = table.vectors[e].dot(state0.mode(j));
    }

    // full model, projected back on the tracked dark eigenvectors
    FieldState full = state0;
    advance_modes(full, params, t_final);
    std::vector<cd> psi_full_k(static_cast<std::size_t>(n), cd(0.0, 0.0));
    for (std::size_t e = 0; e < table.mode_index.size(); ++e) {
        const int j = table.mode_index[e];
        psi_full_k[static_cast<std::size_t>(j)] = table.vectors[e].dot(full.mode(j));
    }

    std::vector<cd> psi_eff_k = psi0_k;
    const cd mi(0.0, -1.0);
    for (int j = 0; j < n; ++j) {
        const double k = grid.k(j);
        psi_eff_k[static_cast<std::size_t>(j)] *=
            std::exp(mi * (k * coeffs.c1 + k * k * coeffs.c2) * t_final);
    }

    CompareReport rep;
    rep.offband_fraction = init.offband_fraction;
    rep.adiabaticity =
        dualv::validate_adiabaticity(params, t_final, pulse.rms_width);

    double num = 0.0, den = 0.0;
    for (int j = 0; j < n; ++j) {
        num += std::norm(psi_full_k[static_cast<std::size_t>(j)] -
                         psi_eff_k[static_cast<std::size_t>(j)]);
        den += std::norm(psi_full_k[static_cast<std::size_t>(j)]);
    }
    rep.l2_error = (den > 0.0) ? std::sqrt(num / den) : 0.0;

    std::vector<cd> psi_full_z = psi_full_k;
    std::vector<cd> psi_eff_z = psi_eff_k;
    ifft(psi_full_z);
    ifft(psi_eff_z);
    rep.centroid_full = centroid(psi_full_z, grid);
    rep.centroid_effective = centroid(psi_eff_z, grid);
    rep.width_full = rms_width(psi_full_z, grid);
    rep.width_effective = rms_width(psi_eff_z, grid);
    return rep;
}

}  // namespace plab::propagator
