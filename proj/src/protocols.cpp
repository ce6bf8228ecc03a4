#include "plab/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "plab/errors.hpp"
#include "plab/fft.hpp"
#include "plab/propagator.hpp"

namespace plab::protocols {

namespace {

using propagator::DarkModeTable;

ModelParams with_controls(const ModelParams& base, cd omega_plus, cd omega_minus) {
    ModelParams p = base;
    p.omega_plus = omega_plus;
    p.omega_minus = omega_minus;
    return p;
}

// Dark polariton direction that stays defined at Omega = 0 (full storage):
// the angle formula limits to the pure spin coherence.
Vector5cd instantaneous_dark(const ModelParams& p) {
    if (p.omega_sq() > 0.0) return dualv::dark_polariton_vector(p);
    Vector5cd d = Vector5cd::Zero();
    d(2) = cd(-1.0, 0.0);
    return d;
}

bool near_zero(cd v, double scale) { return std::abs(v) <= 1e-12 * scale; }

double control_scale(const ControlSchedule& s) {
    double m = std::abs(s.omega_plus_start) + std::abs(s.omega_minus_start);
    for (const auto& seg : s.segments)
        m = std::max(m, std::abs(seg.omega_plus_target) +
                            std::abs(seg.omega_minus_target));
    return std::max(m, 1e-300);
}

// |v| upper bound over the schedule: c cos^2(theta) |cos 2 phi| evaluated at
// segment endpoints.
double max_drift_speed(const ModelParams& base, const ControlSchedule& s) {
    auto speed = [&](cd op, cd om) {
        const double osq = std::norm(op) + std::norm(om);
        const double den = base.g_sqrt_n * base.g_sqrt_n + osq;
        if (den <= 0.0) return base.c;
        const double cos2t = osq / den;
        const double cos2phi = (osq > 0.0) ? (std::norm(op) - std::norm(om)) / osq : 1.0;
        return base.c * cos2t * std::abs(cos2phi);
    };
    double m = speed(s.omega_plus_start, s.omega_minus_start);
    for (const auto& seg : s.segments)
        m = std::max(m, speed(seg.omega_plus_target, seg.omega_minus_target));
    return m;
}

struct Recorder {
    const ModelParams* base = nullptr;
    const ControlSchedule* schedule = nullptr;
    std::vector<cd> band_weights;  // fixes the occupied band for projections
    ScenarioResult* result = nullptr;
    bool projection_warned = false;

    void snapshot(double t, const FieldState& st_k) {
        const auto [op, om] = schedule->omega_at(t);
        const ModelParams p = with_controls(*base, op, om);

        const double norm_total = st_k.total_norm();
        const double norm_field =
            st_k.component_norm(0) + st_k.component_norm(1);
        const double norm_spin = st_k.component_norm(2);

        result->times.push_back(t);
        result->total_norm.push_back(norm_total);
        const double spin_frac = (norm_total > 0.0) ? norm_spin / norm_total : 0.0;
        const double field_frac = (norm_total > 0.0) ? norm_field / norm_total : 0.0;
        result->spin_fraction.push_back(spin_frac);
        result->field_fraction.push_back(field_frac);
        // fractions sum to one by construction
        result->excited_fraction.push_back(1.0 - spin_frac - field_frac);

        // dark-polariton envelope over the occupied band
        const Grid1D& grid = st_k.grid;
        std::vector<cd> psi_k(static_cast<std::size_t>(grid.n_points), cd(0.0, 0.0));
        const Vector5cd anchor = instantaneous_dark(p);
        bool projected = false;
        try {
            const DarkModeTable table =
                propagator::dark_mode_table(p, grid, band_weights, &anchor);
            for (std::size_t e = 0; e < table.mode_index.size(); ++e) {
                const int j = table.mode_index[e];
                psi_k[static_cast<std::size_t>(j)] =
                    table.vectors[e].dot(st_k.mode(j));
            }
            projected = true;
        } catch (const TrackingError&) {
            // fall back to the k = 0 dark vector; diagnostics must not abort
            for (int j = 0; j < grid.n_points; ++j)
                psi_k[static_cast<std::size_t>(j)] = anchor.dot(st_k.mode(j));
            if (!projection_warned) {
                result->warnings.push_back(
                    "dark projection fell back to the k=0 polariton vector "
                    "(branch tracking ambiguous during the ramp)");
                projection_warned = true;
            }
        }
        (void)projected;

        double dsp = 0.0;
        for (const cd& x : psi_k) dsp += std::norm(x);
        dsp *= grid.dz() / grid.n_points;  // Parseval
        result->dsp_norm.push_back(dsp);

        std::vector<cd> psi_z = psi_k;
        ifft(psi_z);
        if (dsp > 0.0) {
            result->centroid.push_back(centroid(psi_z, grid));
            result->width.push_back(rms_width(psi_z, grid));
        } else {
            result->centroid.push_back(0.0);
            result->width.push_back(0.0);
        }
        result->psi_d.push_back(std::move(psi_z));

        FieldState snap = st_k;
        snap.to_z();
        result->snapshots.push_back(std::move(snap));
    }
};

// Advance the k-space state through the schedule. Holds use one exact
// exponential per chunk; ramps use frozen-midpoint exponential sub-steps
// with dt <= 0.01 min(1/Omega_eff, segment duration). Snapshots land on
// exact sub-step boundaries at the requested times.
void evolve_schedule(FieldState& st_k, const ModelParams& base,
                     const ControlSchedule& schedule, int snapshot_count,
                     Recorder& rec) {
    schedule.validate();
    if (snapshot_count < 2) throw InvalidInput("scenario: snapshot_count must be >= 2");

    const double t_total = schedule.total_duration();
    std::vector<double> snap_times(static_cast<std::size_t>(snapshot_count));
    for (int i = 0; i < snapshot_count; ++i)
        snap_times[static_cast<std::size_t>(i)] =
            t_total * static_cast<double>(i) / (snapshot_count - 1);

    rec.snapshot(0.0, st_k);
    std::size_t next_snap = 1;

    double t = 0.0;
    double seg_begin = 0.0;
    for (std::size_t si = 0; si < schedule.segments.size(); ++si) {
        const auto& seg = schedule.segments[si];
        const double seg_end = seg_begin + seg.duration;
        const bool hold = schedule.segment_is_hold(si);

        double dt_nominal = seg.duration;
        if (!hold) {
            const auto [p0, m0] = schedule.segment_start_values(si);
            const double o2_max =
                std::max(std::norm(p0) + std::norm(m0),
                         std::norm(seg.omega_plus_target) +
                             std::norm(seg.omega_minus_target));
            const double om_eff_max =
                std::sqrt(base.g_sqrt_n * base.g_sqrt_n + o2_max);
            dt_nominal = 0.01 * seg.duration;
            if (om_eff_max > 0.0)
                dt_nominal = std::min(dt_nominal, 0.01 / om_eff_max);
        }

        while (t < seg_end - 1e-15 * std::max(1.0, seg_end)) {
            double step = std::min(dt_nominal, seg_end - t);
            if (next_snap < snap_times.size())
                step = std::min(step, snap_times[next_snap] - t);
            if (step <= 0.0) {
                // snapshot time coincides with the current instant
                rec.snapshot(t, st_k);
                ++next_snap;
                continue;
            }
            const auto [op, om] = schedule.omega_at(t + 0.5 * step);
            propagator::advance_modes(st_k, with_controls(base, op, om), step);
            t += step;
            while (next_snap < snap_times.size() &&
                   t >= snap_times[next_snap] - 1e-12 * std::max(1.0, t_total)) {
                rec.snapshot(t, st_k);
                ++next_snap;
            }
        }
        t = seg_end;
        seg_begin = seg_end;
    }
    while (next_snap < snap_times.size()) {
        rec.snapshot(t_total, st_k);
        ++next_snap;
    }
}

std::vector<cd> mode_weights(const FieldState& st_k) {
    std::vector<cd> w(static_cast<std::size_t>(st_k.grid.n_points));
    for (int j = 0; j < st_k.grid.n_points; ++j)
        w[static_cast<std::size_t>(j)] = cd(st_k.mode(j).norm(), 0.0);
    return w;
}

ScenarioResult run_schedule_from_state(const ModelParams& base,
                                       FieldState initial,
                                       const ControlSchedule& schedule,
                                       const ScenarioOptions& options) {
    initial.to_k();

    ScenarioResult result;
    result.adiabatic_schedule =
        schedule.nonadiabatic_segments(base.g_sqrt_n).empty();
    if (!result.adiabatic_schedule)
        result.warnings.push_back(
            "schedule has ramps with Omega_eff * T < 10; physics assertions "
            "are report-only");

    Recorder rec;
    rec.base = &base;
    rec.schedule = &schedule;
    rec.band_weights = mode_weights(initial);
    rec.result = &result;

    evolve_schedule(initial, base, schedule, options.snapshot_count, rec);
    return result;
}

void require_domain_fits(const Grid1D& grid, double pulse_width,
                         double max_speed, double duration) {
    const double needed = 20.0 * pulse_width + max_speed * duration;
    if (grid.length() < needed)
        throw InvalidInput(
            "grid: domain length " + std::to_string(grid.length()) +
            " is below 20 sigma_z + |v| T = " + std::to_string(needed) +
            "; the pulse would wrap around");
}

// Shift f by `shift` using the spectral factor exp(-i k shift), then return
// the relative L2 distance between the unit-normalized moduli of f_ref and
// the shifted f.
double aligned_envelope_error(std::span<const cd> reference, std::span<const cd> f,
                              double shift, const Grid1D& grid) {
    std::vector<cd> shifted(f.begin(), f.end());
    fft(shifted);
    for (int j = 0; j < grid.n_points; ++j)
        shifted[static_cast<std::size_t>(j)] *=
            std::polar(1.0, -grid.k(j) * shift);
    ifft(shifted);

    double n_ref = 0.0, n_shift = 0.0;
    for (int i = 0; i < grid.n_points; ++i) {
        n_ref += std::norm(reference[static_cast<std::size_t>(i)]);
        n_shift += std::norm(shifted[static_cast<std::size_t>(i)]);
    }
    if (n_ref <= 0.0 || n_shift <= 0.0) return 1.0;
    const double s_ref = 1.0 / std::sqrt(n_ref), s_shift = 1.0 / std::sqrt(n_shift);

    double err2 = 0.0;
    for (int i = 0; i < grid.n_points; ++i) {
        const double d = std::abs(reference[static_cast<std::size_t>(i)]) * s_ref -
                         std::abs(shifted[static_cast<std::size_t>(i)]) * s_shift;
        err2 += d * d;
    }
    return std::sqrt(err2);
}

Check make_check(const std::string& name, bool hard, double value,
                 double threshold, const std::string& comparator,
                 const std::string& note = "") {
    Check c;
    c.name = name;
    c.hard = hard;
    c.value = value;
    c.threshold = threshold;
    c.comparator = comparator;
    c.note = note;
    c.passed = (comparator == "<=") ? (value <= threshold) : (value >= threshold);
    return c;
}

}  // namespace

bool ScenarioResult::all_hard_passed() const {
    for (const auto& c : checks)
        if (c.hard && !c.passed) return false;
    return true;
}

ScenarioResult run_storage(const ModelParams& base, const PulseSpec& pulse,
                           const Grid1D& grid, const ControlSchedule& schedule,
                           const ScenarioOptions& options) {
    schedule.validate();
    const double scale = control_scale(schedule);
    if (!near_zero(schedule.omega_minus_start, scale))
        throw InvalidInput("storage: the initial state must be a phi = 0 "
                           "slow-light pulse (Omega- = 0 at t = 0)");
    const auto& last = schedule.segments.back();
    if (!near_zero(last.omega_plus_target, scale) ||
        !near_zero(last.omega_minus_target, scale))
        throw InvalidInput("storage: schedule must end with both controls off");

    const ModelParams p0 = with_controls(base, schedule.omega_plus_start,
                                         schedule.omega_minus_start);
    require_domain_fits(grid, pulse.rms_width, max_drift_speed(base, schedule),
                        schedule.total_duration());

    propagator::DarkInitResult init =
        propagator::init_on_dark_branch(p0, pulse, grid);

    // initial polariton envelope, for the stored-shape comparison
    FieldState init_k = init.state;
    init_k.to_k();
    std::vector<cd> psi0_k(static_cast<std::size_t>(grid.n_points), cd(0.0, 0.0));
    for (std::size_t e = 0; e < init.table.mode_index.size(); ++e) {
        const int j = init.table.mode_index[e];
        psi0_k[static_cast<std::size_t>(j)] = init.table.vectors[e].dot(init_k.mode(j));
    }
    std::vector<cd> psi0_z = psi0_k;
    ifft(psi0_z);

    const double peak0 = [&] {
        double m = 0.0;
        for (int i = 0; i < grid.n_points; ++i)
            m = std::max({m,
                          std::abs(init.state.amp[0][static_cast<std::size_t>(i)]),
                          std::abs(init.state.amp[1][static_cast<std::size_t>(i)])});
        return m;
    }();

    ScenarioResult result =
        run_schedule_from_state(base, init.state, schedule, options);
    const bool hard = result.adiabatic_schedule;

    const FieldState& final_z = result.snapshots.back();
    double peak_final = 0.0;
    for (int i = 0; i < grid.n_points; ++i)
        peak_final = std::max({peak_final,
                               std::abs(final_z.amp[0][static_cast<std::size_t>(i)]),
                               std::abs(final_z.amp[1][static_cast<std::size_t>(i)])});

    result.checks.push_back(make_check("storage.spin_fraction", hard,
                                       result.spin_fraction.back(), 0.99, ">="));
    result.checks.push_back(make_check(
        "storage.residual_field_amplitude", hard,
        (peak0 > 0.0) ? peak_final / peak0 : 0.0, 1e-3, "<=",
        "peak |E| at the end relative to the initial peak"));

    // stored sigma_gs envelope vs the initial polariton envelope, aligned by
    // the accumulated drift
    const auto& sgs = final_z.amp[2];
    double sgs_norm = 0.0;
    for (const cd& x : sgs) sgs_norm += std::norm(x);
    double shape_err = 1.0;
    if (sgs_norm > 0.0) {
        const double drift = centroid(sgs, grid) - centroid(psi0_z, grid);
        shape_err = aligned_envelope_error(sgs, psi0_z, drift, grid);
    }
    result.checks.push_back(make_check(
        "storage.stored_shape_l2", hard, shape_err, 0.02, "<=",
        "sigma_gs envelope vs initial polariton envelope, drift removed"));

    const bool lossless = base.gamma_plus == 0.0 && base.gamma_minus == 0.0;
    result.checks.push_back(make_check(
        "storage.norm_conservation", hard && lossless,
        std::abs(result.total_norm.back() / result.total_norm.front() - 1.0), 1e-6,
        "<=", lossless ? "" : "soft: medium is lossy"));
    return result;
}

ScenarioResult run_retrieval_stationary(const ModelParams& base,
                                        const FieldState& stored,
                                        const ControlSchedule& schedule,
                                        const ScenarioOptions& options) {
    schedule.validate();
    const double scale = control_scale(schedule);
    if (!near_zero(schedule.omega_plus_start, scale) ||
        !near_zero(schedule.omega_minus_start, scale))
        throw InvalidInput("retrieval: schedule must ramp the controls up from zero");

    FieldState st = stored;
    st.to_z();
    const double total0 = st.total_norm();
    if (total0 <= 0.0) throw InvalidInput("retrieval: stored state is empty");
    if (st.component_norm(2) / total0 < 0.9)
        throw InvalidInput(
            "retrieval: stored state must hold its norm in sigma_gs");

    const double sigma_z = rms_width(st.amp[2], st.grid);
    require_domain_fits(st.grid, sigma_z, max_drift_speed(base, schedule),
                        schedule.total_duration());

    const auto& last = schedule.segments.back();
    const bool equal_finals =
        std::abs(std::abs(last.omega_plus_target) - std::abs(last.omega_minus_target)) <=
        1e-12 * scale;

    ScenarioResult result = run_schedule_from_state(base, st, schedule, options);
    const bool hard = result.adiabatic_schedule;

    // measurement window: from the end of the last ramp to the end
    double window_start = 0.0, t_acc = 0.0;
    for (std::size_t i = 0; i < schedule.segments.size(); ++i) {
        t_acc += schedule.segments[i].duration;
        if (!schedule.segment_is_hold(i)) window_start = t_acc;
    }

    const FieldState& final_z = result.snapshots.back();
    const Grid1D& grid = final_z.grid;

    // |E+|^2 vs |E-|^2 profile agreement
    double diff2 = 0.0, mean2 = 0.0;
    for (int i = 0; i < grid.n_points; ++i) {
        const double ip = std::norm(final_z.amp[0][static_cast<std::size_t>(i)]);
        const double im = std::norm(final_z.amp[1][static_cast<std::size_t>(i)]);
        diff2 += (ip - im) * (ip - im);
        mean2 += 0.25 * (ip + im) * (ip + im);
    }
    const double sym_err = (mean2 > 0.0) ? std::sqrt(diff2 / mean2) : 0.0;
    result.checks.push_back(make_check("retrieval.field_symmetry_l2",
                                       hard && equal_finals, sym_err, 0.01, "<=",
                                       equal_finals ? "" : "soft: unequal controls"));

    // centroid drift of the probe intensity over the post-ramp window
    std::size_t w0 = 0;
    while (w0 + 1 < result.times.size() && result.times[w0] < window_start - 1e-12)
        ++w0;
    auto probe_centroid = [&](const FieldState& s) {
        std::vector<cd> probe(static_cast<std::size_t>(grid.n_points));
        for (int i = 0; i < grid.n_points; ++i) {
            const double p2 = std::norm(s.amp[0][static_cast<std::size_t>(i)]) +
                              std::norm(s.amp[1][static_cast<std::size_t>(i)]);
            probe[static_cast<std::size_t>(i)] = cd(std::sqrt(p2), 0.0);
        }
        return centroid(probe, grid);
    };
    const double window = result.times.back() - result.times[w0];
    if (window > 0.0) {
        const double drift =
            probe_centroid(result.snapshots.back()) - probe_centroid(result.snapshots[w0]);
        if (equal_finals) {
            const double gamma = base.gamma_max();
            if (gamma > 0.0) {
                // allowed 0.02 sigma_z per 10/gamma of reduced time
                const double rate_limit = 0.02 * sigma_z * gamma / 10.0;
                result.checks.push_back(make_check("retrieval.stationarity_drift_rate",
                                                   hard, std::abs(drift) / window,
                                                   rate_limit, "<="));
            } else {
                result.checks.push_back(make_check(
                    "retrieval.stationarity_drift", hard, std::abs(drift),
                    0.02 * sigma_z, "<=", "gamma = 0: absolute drift over the window"));
            }
        } else {
            const ModelParams pf =
                with_controls(base, last.omega_plus_target, last.omega_minus_target);
            const double osq = pf.omega_sq();
            const double den = pf.g_sqrt_n * pf.g_sqrt_n + osq;
            const double v_expected =
                pf.c * (osq / den) * (std::norm(pf.omega_plus) - std::norm(pf.omega_minus)) / osq;
            const double v_measured = drift / window;
            result.checks.push_back(make_check(
                "retrieval.drift_velocity_match", hard,
                std::abs(v_measured - v_expected) / std::max(std::abs(v_expected), 1e-300),
                0.05, "<=",
                "measured " + std::to_string(v_measured) + " vs c cos^2(theta) cos(2 phi) = " +
                    std::to_string(v_expected)));
        }
    }
    return result;
}

ScenarioResult run_custom(const ModelParams& base, const PulseSpec& pulse,
                          const Grid1D& grid, const ControlSchedule& schedule,
                          const ScenarioOptions& options) {
    schedule.validate();
    const ModelParams p0 = with_controls(base, schedule.omega_plus_start,
                                         schedule.omega_minus_start);
    require_domain_fits(grid, pulse.rms_width, max_drift_speed(base, schedule),
                        schedule.total_duration());
    propagator::DarkInitResult init =
        propagator::init_on_dark_branch(p0, pulse, grid);
    return run_schedule_from_state(base, init.state, schedule, options);
}

ScenarioResult run_custom_from(const ModelParams& base, const FieldState& initial,
                               const ControlSchedule& schedule,
                               const ScenarioOptions& options) {
    schedule.validate();
    return run_schedule_from_state(base, initial, schedule, options);
}

RoundTripResult run_storage_retrieval_roundtrip(
    const ModelParams& base, const PulseSpec& pulse, const Grid1D& grid,
    const ControlSchedule& storage_schedule,
    const ControlSchedule& retrieval_schedule, const ScenarioOptions& options) {
    RoundTripResult rt;
    rt.storage = run_storage(base, pulse, grid, storage_schedule, options);
    rt.retrieval = run_retrieval_stationary(base, rt.storage.snapshots.back(),
                                            retrieval_schedule, options);

    const bool lossless = base.gamma_plus == 0.0 && base.gamma_minus == 0.0;
    const bool hard = lossless && rt.storage.adiabatic_schedule &&
                      rt.retrieval.adiabatic_schedule;
    const double dsp0 = rt.storage.dsp_norm.front();
    const double dsp_final = rt.retrieval.dsp_norm.back();
    rt.checks.push_back(make_check(
        "roundtrip.dsp_norm_retained", hard,
        (dsp0 > 0.0) ? dsp_final / dsp0 : 0.0, 0.98, ">=",
        lossless ? "" : "soft: medium is lossy"));
    return rt;
}

}  // namespace plab::protocols
