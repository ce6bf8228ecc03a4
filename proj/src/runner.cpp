#include "plab/runner.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "plab/dispersion.hpp"
#include "plab/errors.hpp"
#include "plab/fft.hpp"
#include "plab/propagator.hpp"
#include "plab/rng.hpp"
#include "plab/version.hpp"

namespace plab::runner {

namespace fs = std::filesystem;
using protocols::Check;

namespace {

constexpr const char* kUnitsNote =
    "reduced units: frequencies in units of the reference decoherence rate "
    "gamma, times in 1/gamma, lengths in c/gamma (c = 1 recommended)";

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

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot open for writing: " + path.string());
    out << text;
}

struct CsvWriter {
    std::string buffer;

    void header(const std::vector<std::string>& cols) {
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (i) buffer += ',';
            buffer += cols[i];
        }
        buffer += '\n';
    }
    void row(const std::vector<double>& vals) {
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (i) buffer += ',';
            buffer += csv_number(vals[i]);
        }
        buffer += '\n';
    }
};

// ---------------------------------------------------------------- transform

void check_decomposition(const ms::CouplingMatrix& cm, const std::string& prefix,
                         bool aggregate_only, std::vector<Check>& checks,
                         double* worst_block, double* worst_unitarity) {
    const ms::MsDecomposition dec = ms::morris_shore(cm);
    const Eigen::MatrixXcd h = ms::assemble_bipartite(cm);
    const Eigen::Index n = cm.n_a() + cm.n_b();
    const Eigen::Index m = std::min(cm.n_a(), cm.n_b());

    const double unit_res =
        (dec.transform.adjoint() * dec.transform - Eigen::MatrixXcd::Identity(n, n))
            .norm();

    Eigen::MatrixXcd t = dec.transform.adjoint() * h * dec.transform;
    for (Eigen::Index j = 0; j < m; ++j) {
        t(2 * j, 2 * j + 1) = cd(0.0, 0.0);
        t(2 * j + 1, 2 * j) = cd(0.0, 0.0);
    }
    const double s_max = dec.pair_couplings.empty() ? 0.0 : dec.pair_couplings[0];
    const double block_res = t.norm();

    double dark_res = 0.0;
    for (const auto& d : dec.dark_vectors)
        dark_res = std::max(dark_res, (h * d).norm());

    // spectrum against a dense Hermitian eigensolver
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    std::vector<double> expected;
    for (const double s : dec.pair_couplings) {
        expected.push_back(-s);
        expected.push_back(s);
    }
    for (Eigen::Index i = 0; i < n - 2 * m; ++i) expected.push_back(0.0);
    std::sort(expected.begin(), expected.end());
    double spec_res = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        spec_res = std::max(spec_res,
                            std::abs(es.eigenvalues()(i) -
                                     expected[static_cast<std::size_t>(i)]));

    const int zero_singulars = static_cast<int>(std::count_if(
        dec.pair_couplings.begin(), dec.pair_couplings.end(),
        [&](double s) { return s <= 1e-12 * s_max; }));
    const int expected_dark =
        static_cast<int>(std::abs(cm.n_a() - cm.n_b())) + zero_singulars;

    if (worst_block) *worst_block = std::max(*worst_block, block_res / std::max(s_max, 1e-300));
    if (worst_unitarity) *worst_unitarity = std::max(*worst_unitarity, unit_res);
    if (aggregate_only) return;

    checks.push_back(make_check(prefix + "unitarity", true, unit_res,
                                1e-12 * static_cast<double>(n), "<="));
    checks.push_back(make_check(prefix + "block_diagonal_residual", true, block_res,
                                1e-10 * std::max(s_max, 1e-300), "<="));
    checks.push_back(make_check(prefix + "dark_annihilation", true, dark_res,
                                1e-10 * std::max(h.norm(), 1e-300), "<="));
    checks.push_back(make_check(prefix + "dark_count", true,
                                std::abs(dec.n_dark - expected_dark), 0.0, "<="));
    checks.push_back(make_check(prefix + "spectrum_match", true, spec_res,
                                1e-10 * std::max(1.0, s_max), "<="));
}

void run_transform(const config::RunConfig& cfg, const fs::path& out,
                   RunManifest& manifest) {
    const auto& section = *cfg.transform;
    ms::CouplingMatrix cm{section.v};
    const ms::MsDecomposition dec = ms::morris_shore(cm);

    json artifact = to_json(dec);
    artifact["input"] = matrix_json(section.v);
    write_text(out / "transform.json", artifact.dump(2) + "\n");
    manifest.artifacts.push_back("transform.json");

    check_decomposition(cm, "transform.", false, manifest.checks, nullptr, nullptr);

    // b-diagonal stability with a generic complex diagonal
    Eigen::VectorXcd b(cm.n_b());
    for (Eigen::Index i = 0; i < cm.n_b(); ++i)
        b(i) = cd(0.1 * static_cast<double>(i + 1), -1.0 - static_cast<double>(i));
    manifest.checks.push_back(make_check(
        "transform.dark_stability_under_b_diagonal", true,
        ms::dark_stability_under_b_diagonal(cm, b) ? 1.0 : 0.0, 1.0, ">="));

    if (section.self_test) {
        DeterministicRng rng(cfg.seed);
        double worst_block = 0.0, worst_unit = 0.0;
        bool all_stable = true;
        for (int c = 0; c < section.self_test_cases; ++c) {
            const int na = rng.uniform_int(1, 8), nb = rng.uniform_int(1, 8);
            Eigen::MatrixXcd v(na, nb);
            for (int r = 0; r < na; ++r)
                for (int cc = 0; cc < nb; ++cc) v(r, cc) = rng.complex_uniform(2.0);
            ms::CouplingMatrix random_cm{v};
            check_decomposition(random_cm, "", true, manifest.checks, &worst_block,
                                &worst_unit);
            Eigen::VectorXcd bd(nb);
            for (int i = 0; i < nb; ++i) bd(i) = rng.complex_uniform(3.0);
            all_stable =
                all_stable && ms::dark_stability_under_b_diagonal(random_cm, bd);
        }
        manifest.checks.push_back(make_check("transform.self_test.block_residual",
                                             true, worst_block, 1e-10, "<="));
        manifest.checks.push_back(make_check("transform.self_test.unitarity", true,
                                             worst_unit, 1e-11, "<="));
        manifest.checks.push_back(make_check("transform.self_test.dark_stability",
                                             true, all_stable ? 1.0 : 0.0, 1.0,
                                             ">="));
    }
}

// --------------------------------------------------------------- dispersion

void run_dispersion(const config::RunConfig& cfg, const fs::path& out,
                    RunManifest& manifest) {
    const auto& p = *cfg.model;
    const auto& d = *cfg.dispersion;

    std::vector<double> ks(static_cast<std::size_t>(d.n_k));
    for (int i = 0; i < d.n_k; ++i)
        ks[static_cast<std::size_t>(i)] =
            d.k_min + (d.k_max - d.k_min) * static_cast<double>(i) / (d.n_k - 1);

    const dispersion::BranchSet set = dispersion::eigen_branches(p, ks);

    CsvWriter csv;
    std::vector<std::string> cols = {"k"};
    for (int b = 1; b <= 5; ++b) {
        cols.push_back("re_omega_" + std::to_string(b));
        cols.push_back("im_omega_" + std::to_string(b));
    }
    cols.push_back("dark_branch");
    csv.header(cols);
    for (std::size_t i = 0; i < ks.size(); ++i) {
        std::vector<double> row = {ks[i]};
        for (int b = 0; b < 5; ++b) {
            const cd w = set.branches[static_cast<std::size_t>(b)].omega[i];
            row.push_back(w.real());
            row.push_back(w.imag());
        }
        row.push_back(static_cast<double>(set.dark_index + 1));
        csv.row(row);
    }
    write_text(out / "branches.csv", csv.buffer);
    manifest.artifacts.push_back("branches.csv");

    // darkness at k = 0
    const Matrix5cd h0 = dualv::build_h(p, 0.0);
    const Vector5cd yd = dualv::dark_polariton_vector(p);
    const double h0_norm = h0.norm();
    manifest.checks.push_back(make_check("dispersion.darkness_at_k0", true,
                                         (h0 * yd).norm(),
                                         1e-10 * std::max(h0_norm, 1e-300), "<="));
    const cd w0 = dispersion::dark_eigenvalue(p, 0.0);
    manifest.checks.push_back(make_check("dispersion.dark_eigenvalue_at_k0", true,
                                         std::abs(w0),
                                         1e-10 * std::max(h0_norm, 1e-300), "<="));

    json summary;
    summary["dark_branch_column"] = set.dark_index + 1;
    summary["sign_convention"] =
        "omega(k) for modes exp(i(kz - omega t)); positive d(omega)/dk moves "
        "the envelope toward +z";

    const bool symmetric = p.delta_plus == p.delta_minus && p.gamma_plus == p.gamma_minus;
    if (symmetric && p.g_sqrt_n > 0.0) {
        const auto pc = dispersion::perturbative_coefficients(p);
        const auto fd = dispersion::dark_branch_derivatives(p);
        summary["c1"] = complex_json(pc.c1);
        summary["c2"] = complex_json(pc.c2);
        summary["v"] = pc.v;
        summary["inv_mass"] = complex_json(pc.inv_mass);
        summary["fd_first"] = complex_json(fd.first);
        summary["fd_second"] = complex_json(fd.second);
        summary["fd_first_refined"] = complex_json(fd.first_refined);
        summary["fd_second_refined"] = complex_json(fd.second_refined);
        summary["fd_step"] = fd.step;

        const auto scales = dualv::derived_scales(p);
        const double v_scale = std::max(std::abs(pc.v), 1e-3 * scales.v_gr);
        const double fd1_res = std::abs(fd.first - pc.c1) / std::max(v_scale, 1e-300);
        const double fd2_res = std::abs(fd.second - 2.0 * pc.c2) /
                               std::max(std::abs(2.0 * pc.c2), 1e-300);
        // report-only: the regime depends on the requested k window
        manifest.checks.push_back(make_check("dispersion.fd_first_vs_c1", false,
                                             fd1_res, 5e-3, "<="));
        manifest.checks.push_back(make_check("dispersion.fd_second_vs_2c2", false,
                                             fd2_res, 2e-2, "<="));
    } else {
        summary["perturbative_coefficients"] =
            "unavailable: Gamma+ != Gamma- or g_sqrt_n = 0 (exact branches only)";
        manifest.warnings.push_back(
            "perturbative coefficients skipped: asymmetric Gamma or no medium");
    }
    write_text(out / "dispersion.json", summary.dump(2) + "\n");
    manifest.artifacts.push_back("dispersion.json");
}

// ---------------------------------------------------------------- propagate

void write_snapshot_csv(const fs::path& dir, int index, const FieldState& st_z,
                        std::span<const cd> psi_z, RunManifest& manifest) {
    CsvWriter csv;
    csv.header({"z", "abs2_e_plus", "abs2_e_minus", "abs2_sigma_gs",
                "abs2_sigma_ge_plus", "abs2_sigma_ge_minus", "re_psi_d",
                "im_psi_d"});
    const Grid1D& grid = st_z.grid;
    for (int i = 0; i < grid.n_points; ++i) {
        const std::size_t ii = static_cast<std::size_t>(i);
        csv.row({grid.z(i), std::norm(st_z.amp[0][ii]), std::norm(st_z.amp[1][ii]),
                 std::norm(st_z.amp[2][ii]), std::norm(st_z.amp[3][ii]),
                 std::norm(st_z.amp[4][ii]), psi_z[ii].real(), psi_z[ii].imag()});
    }
    char name[32];
    std::snprintf(name, sizeof(name), "snapshots/snap_%04d.csv", index);
    write_text(dir / name, csv.buffer);
    manifest.artifacts.push_back(name);
}

void run_propagate(const config::RunConfig& cfg, const fs::path& out,
                   RunManifest& manifest) {
    const auto& p = *cfg.model;
    const Grid1D& grid = *cfg.grid;
    const PulseSpec& pulse = *cfg.pulse;
    const auto& pr = *cfg.propagate;

    fs::create_directories(out / "snapshots");

    propagator::DarkInitResult init =
        propagator::init_on_dark_branch(p, pulse, grid);
    const propagator::DarkModeTable& table = init.table;

    const double om_eff = p.omega_eff();
    double k_max = 0.0;
    for (const double k : grid.k_values()) k_max = std::max(k_max, std::abs(k));
    double dt = std::min(0.05 / std::max(om_eff, 1e-300), 0.05 / (k_max * p.c));
    if (pr.dt) dt = *pr.dt;

    FieldState state = init.state;
    state.to_k();

    json times = json::array(), centroids = json::array(), widths = json::array();
    json dsp_norms = json::array(), total_norms = json::array(),
         nondark = json::array();

    double worst_nondark = 0.0;
    const int n_snaps = pr.snapshot_count;
    const double chunk = pr.t_final / (n_snaps - 1);
    for (int s = 0; s < n_snaps; ++s) {
        if (s > 0) state = propagator::evolve_full(state, p, chunk, dt);

        std::vector<cd> psi_k(static_cast<std::size_t>(grid.n_points), cd(0.0, 0.0));
        for (std::size_t e = 0; e < table.mode_index.size(); ++e) {
            const int j = table.mode_index[e];
            psi_k[static_cast<std::size_t>(j)] = table.vectors[e].dot(state.mode(j));
        }
        double dsp = 0.0;
        for (const cd& x : psi_k) dsp += std::norm(x);
        dsp *= grid.dz() / grid.n_points;

        std::vector<cd> psi_z = psi_k;
        ifft(psi_z);

        FieldState snap = state;
        snap.to_z();
        write_snapshot_csv(out, s, snap, psi_z, manifest);

        const double t = chunk * s;
        const double total = state.total_norm();
        times.push_back(t);
        total_norms.push_back(total);
        dsp_norms.push_back(dsp);
        const double nd = (total > 0.0) ? std::max(0.0, 1.0 - dsp / total) : 0.0;
        nondark.push_back(nd);
        worst_nondark = std::max(worst_nondark, nd);
        centroids.push_back(centroid(psi_z, grid));
        widths.push_back(rms_width(psi_z, grid));
    }

    json summary;
    summary["times"] = times;
    summary["centroid"] = centroids;
    summary["width"] = widths;
    summary["dsp_norm"] = dsp_norms;
    summary["total_norm"] = total_norms;
    summary["nondark_fraction"] = nondark;
    summary["offband_fraction"] = init.offband_fraction;
    summary["sign_convention"] =
        "modes exp(i(kz - omega t)); a phi = 0 pulse moves toward +z";

    const auto adiab = dualv::validate_adiabaticity(p, pr.t_final, pulse.rms_width);
    summary["adiabaticity"] = {{"temporal_ratio", adiab.temporal_ratio},
                               {"spatial_ratio", adiab.spatial_ratio}};

    manifest.checks.push_back(make_check(
        "propagate.dark_branch_confinement", adiab.pass(), worst_nondark, 0.01,
        "<=", adiab.pass() ? "" : "soft: outside the adiabatic regime"));

    const bool lossless = p.gamma_plus == 0.0 && p.gamma_minus == 0.0 &&
                          p.delta_plus == 0.0 && p.delta_minus == 0.0;
    const double t0 = total_norms[0].get<double>();
    const double tN = total_norms[total_norms.size() - 1].get<double>();
    manifest.checks.push_back(make_check(
        "propagate.norm_conservation", lossless,
        std::abs(tN / std::max(t0, 1e-300) - 1.0), 1e-8, "<=",
        lossless ? "Hermitian limit" : "soft: medium is lossy/detuned"));

    if (pr.compare_effective) {
        const auto cmp =
            propagator::compare_full_vs_effective(p, pulse, grid, pr.t_final);
        summary["compare"] = {{"l2_error", cmp.l2_error},
                              {"centroid_full", cmp.centroid_full},
                              {"centroid_effective", cmp.centroid_effective},
                              {"width_full", cmp.width_full},
                              {"width_effective", cmp.width_effective}};
        const bool deep = cmp.adiabaticity.temporal_ratio >= 100.0 &&
                          cmp.adiabaticity.spatial_ratio >= 10.0;
        manifest.checks.push_back(make_check(
            "propagate.full_vs_effective_l2", deep, cmp.l2_error, 0.05, "<=",
            deep ? "deep-adiabatic regime" : "soft: not deep-adiabatic"));
    }

    write_text(out / "summary.json", summary.dump(2) + "\n");
    manifest.artifacts.push_back("summary.json");
}

// ----------------------------------------------------------------- scenario

void append_timeline(CsvWriter& csv, const protocols::ScenarioResult& r,
                     double t_offset) {
    if (csv.buffer.empty())
        csv.header({"t", "total_norm", "dsp_norm", "spin_fraction",
                    "field_fraction", "excited_fraction", "centroid", "width"});
    for (std::size_t i = 0; i < r.times.size(); ++i) {
        csv.row({r.times[i] + t_offset, r.total_norm[i], r.dsp_norm[i],
                 r.spin_fraction[i], r.field_fraction[i], r.excited_fraction[i],
                 r.centroid[i], r.width[i]});
    }
}

void write_scenario_snapshots(const fs::path& out,
                              const protocols::ScenarioResult& r, int* index,
                              RunManifest& manifest) {
    for (std::size_t i = 0; i < r.snapshots.size(); ++i)
        write_snapshot_csv(out, (*index)++, r.snapshots[i], r.psi_d[i], manifest);
}

FieldState synthesize_stored_state(const PulseSpec& pulse, const Grid1D& grid) {
    pulse.validate(grid);
    FieldState st = FieldState::zero(grid, FieldState::Rep::z_space);
    for (int i = 0; i < grid.n_points; ++i)
        st.amp[2][static_cast<std::size_t>(i)] = -pulse.eval(grid.z(i));
    return st;
}

void run_scenario(const config::RunConfig& cfg, const fs::path& out,
                  RunManifest& manifest) {
    const auto& p = *cfg.model;
    const Grid1D& grid = *cfg.grid;
    const PulseSpec& pulse = *cfg.pulse;
    const auto& sc = *cfg.scenario;
    protocols::ScenarioOptions opts;
    opts.snapshot_count = sc.snapshot_count;

    fs::create_directories(out / "snapshots");
    CsvWriter timeline;
    int snap_index = 0;
    json summary;

    auto absorb = [&](const protocols::ScenarioResult& r, double t_offset) {
        append_timeline(timeline, r, t_offset);
        write_scenario_snapshots(out, r, &snap_index, manifest);
        for (const auto& c : r.checks) manifest.checks.push_back(c);
        for (const auto& w : r.warnings) manifest.warnings.push_back(w);
    };

    switch (sc.type) {
        case config::ScenarioType::storage: {
            const auto r = protocols::run_storage(p, pulse, grid, *cfg.schedule, opts);
            absorb(r, 0.0);
            summary["adiabatic_schedule"] = r.adiabatic_schedule;
            break;
        }
        case config::ScenarioType::retrieval: {
            const FieldState stored = synthesize_stored_state(pulse, grid);
            const auto r = protocols::run_retrieval_stationary(p, stored,
                                                               *cfg.schedule, opts);
            absorb(r, 0.0);
            summary["adiabatic_schedule"] = r.adiabatic_schedule;
            break;
        }
        case config::ScenarioType::roundtrip: {
            const auto rt = protocols::run_storage_retrieval_roundtrip(
                p, pulse, grid, *cfg.schedule, *cfg.retrieval_schedule, opts);
            absorb(rt.storage, 0.0);
            absorb(rt.retrieval, rt.storage.times.back());
            for (const auto& c : rt.checks) manifest.checks.push_back(c);
            summary["adiabatic_schedule"] = rt.storage.adiabatic_schedule &&
                                            rt.retrieval.adiabatic_schedule;
            break;
        }
        case config::ScenarioType::custom: {
            const auto r = protocols::run_custom(p, pulse, grid, *cfg.schedule, opts);
            absorb(r, 0.0);
            summary["adiabatic_schedule"] = r.adiabatic_schedule;
            break;
        }
    }

    write_text(out / "timeline.csv", timeline.buffer);
    manifest.artifacts.push_back("timeline.csv");
    write_text(out / "summary.json", summary.dump(2) + "\n");
    manifest.artifacts.push_back("summary.json");
}

}  // namespace

bool RunManifest::all_hard_passed() const {
    for (const auto& c : checks)
        if (c.hard && !c.passed) return false;
    return true;
}

json RunManifest::to_json() const {
    json out;
    out["tool"] = "polariton-lab";
    out["version"] = tool_version;
    out["mode"] = mode;
    out["units"] = units;
    json checks_json = json::array();
    for (const auto& c : checks) {
        json cj;
        cj["name"] = c.name;
        cj["hard"] = c.hard;
        cj["passed"] = c.passed;
        cj["value"] = c.value;
        cj["threshold"] = c.threshold;
        cj["comparator"] = c.comparator;
        if (!c.note.empty()) cj["note"] = c.note;
        checks_json.push_back(cj);
    }
    out["checks"] = checks_json;
    out["all_hard_passed"] = all_hard_passed();
    out["artifacts"] = artifacts;
    out["warnings"] = warnings;
    out["config"] = config_echo;
    out["wall_clock_s"] = wall_clock_s;
    return out;
}

RunOutcome run(const config::RunConfig& cfg, const std::string& output_override) {
    const auto t_start = std::chrono::steady_clock::now();

    RunOutcome outcome;
    outcome.output_dir = output_override.empty() ? cfg.output_dir : output_override;
    const fs::path out(outcome.output_dir);
    fs::create_directories(out);

    RunManifest& manifest = outcome.manifest;
    manifest.tool_version = kToolVersion;
    manifest.mode = config::mode_name(cfg.mode);
    manifest.units = kUnitsNote;
    manifest.config_echo = config::serialize_config(cfg);

    switch (cfg.mode) {
        case config::Mode::transform: run_transform(cfg, out, manifest); break;
        case config::Mode::dispersion: run_dispersion(cfg, out, manifest); break;
        case config::Mode::propagate: run_propagate(cfg, out, manifest); break;
        case config::Mode::scenario: run_scenario(cfg, out, manifest); break;
    }

    manifest.wall_clock_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
            .count();
    write_text(out / "manifest.json", manifest.to_json().dump(2) + "\n");
    outcome.exit_code = manifest.all_hard_passed() ? 0 : 1;
    return outcome;
}

}  // namespace plab::runner
