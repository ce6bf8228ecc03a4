#include "plab/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "plab/eig5.hpp"
#include "plab/errors.hpp"

namespace plab::dispersion {

namespace {

// Order of the branches at the anchor: bright branches by descending real
// part (then imaginary part), the dark branch last. Deterministic labels
// for output tables.
std::array<int, 5> anchor_order(const EigenModes& modes, int dark) {
    std::array<int, 5> idx{};
    int n = 0;
    for (int i = 0; i < 5; ++i)
        if (i != dark) idx[static_cast<std::size_t>(n++)] = i;
    std::sort(idx.begin(), idx.begin() + 4, [&](int a, int b) {
        const cd wa = modes.values[static_cast<std::size_t>(a)];
        const cd wb = modes.values[static_cast<std::size_t>(b)];
        if (wa.real() != wb.real()) return wa.real() > wb.real();
        return wa.imag() > wb.imag();
    });
    idx[4] = dark;
    return idx;
}

// dark reference for branch identification; at Omega = 0 the polariton
// angle formula limits to the decoupled spin coherence (theta -> pi/2)
Vector5cd dark_reference(const ModelParams& p) {
    if (p.omega_sq() > 0.0) return dualv::dark_polariton_vector(p);
    Vector5cd d = Vector5cd::Zero();
    d(2) = cd(-1.0, 0.0);
    return d;
}

}  // namespace

BranchSet eigen_branches(const ModelParams& params, std::span<const double> k_grid) {
    params.validate();
    if (k_grid.empty()) throw InvalidInput("eigen_branches: empty k grid");
    for (std::size_t i = 0; i < k_grid.size(); ++i) {
        if (!std::isfinite(k_grid[i]))
            throw InvalidInput("eigen_branches: k grid must be finite");
        if (i > 0 && !(k_grid[i] > k_grid[i - 1]))
            throw InvalidInput("eigen_branches: k grid must be strictly increasing");
    }

    const Vector5cd dark_ref = dark_reference(params);

    // Anchor at k = 0 exactly, independent of the grid.
    const Matrix5cd h0 = dualv::mode_matrix(params, 0.0);
    EigenModes anchor = eigen_modes(h0);
    double dark_overlap = 0.0;
    int dark_at_anchor = best_overlap(anchor, dark_ref, &dark_overlap);
    if (dark_overlap < 0.999) {
        // Degenerate zero eigenvalue: the dark vector is still an exact
        // eigenvector, but the solver may hand back a rotated basis of the
        // zero eigenspace. Accept the dark reference when it lies in that
        // subspace, identified by overlap alone.
        const double zero_tol = 1e-8 * std::max(1.0, h0.norm());
        std::vector<int> zero_space;
        for (int i = 0; i < 5; ++i)
            if (std::abs(anchor.values[static_cast<std::size_t>(i)]) <= zero_tol)
                zero_space.push_back(i);
        bool accepted = false;
        if (zero_space.size() >= 2) {
            Eigen::MatrixXcd basis(5, static_cast<Eigen::Index>(zero_space.size()));
            for (std::size_t c = 0; c < zero_space.size(); ++c)
                basis.col(static_cast<Eigen::Index>(c)) =
                    anchor.vectors[static_cast<std::size_t>(zero_space[c])];
            const Eigen::VectorXcd coeff =
                basis.colPivHouseholderQr().solve(dark_ref);
            if ((basis * coeff - dark_ref).norm() <= 1e-8) {
                double best = -1.0;
                for (const int i : zero_space) {
                    const double o = std::abs(dark_ref.dot(
                        anchor.vectors[static_cast<std::size_t>(i)]));
                    if (o > best) {
                        best = o;
                        dark_at_anchor = i;
                    }
                }
                anchor.vectors[static_cast<std::size_t>(dark_at_anchor)] = dark_ref;
                anchor.values[static_cast<std::size_t>(dark_at_anchor)] = cd(0.0, 0.0);
                accepted = true;
            }
        }
        if (!accepted)
            throw TrackingError(
                "eigen_branches: no eigenvector at k=0 matches the dark "
                "polariton vector",
                0.0);
    }
    const std::array<int, 5> order = anchor_order(anchor, dark_at_anchor);

    BranchSet out;
    const std::size_t nk = k_grid.size();
    for (int b = 0; b < 5; ++b) {
        auto& br = out.branches[static_cast<std::size_t>(b)];
        br.k_grid.assign(k_grid.begin(), k_grid.end());
        br.omega.resize(nk);
        br.vectors.resize(nk);
        br.branch_id = (b == 4) ? "dark" : "bright-" + std::to_string(b + 1);
    }
    out.dark_index = 4;  // anchor_order puts the dark branch last

    // March outward from k = 0 in both directions, continuing each branch to
    // the not-yet-claimed eigenpair of largest overlap.
    auto track_direction = [&](bool forward) {
        std::array<Vector5cd, 5> prev;
        for (int b = 0; b < 5; ++b)
            prev[static_cast<std::size_t>(b)] = anchor.vectors[static_cast<std::size_t>(
                order[static_cast<std::size_t>(b)])];

        const std::size_t split = static_cast<std::size_t>(std::distance(
            k_grid.begin(), std::lower_bound(k_grid.begin(), k_grid.end(), 0.0)));

        auto visit = [&](std::size_t gi) {
            const double k = k_grid[gi];
            const Matrix5cd h = dualv::mode_matrix(params, k);
            const EigenModes modes = eigen_modes(h);

            // greedy globally-best assignment of 5 branches to 5 eigenpairs
            std::array<std::array<double, 5>, 5> ov{};
            for (int b = 0; b < 5; ++b)
                for (int e = 0; e < 5; ++e)
                    ov[static_cast<std::size_t>(b)][static_cast<std::size_t>(e)] =
                        std::abs(prev[static_cast<std::size_t>(b)].dot(
                            modes.vectors[static_cast<std::size_t>(e)]));
            std::array<bool, 5> b_used{}, e_used{};
            for (int pick = 0; pick < 5; ++pick) {
                int bb = -1, ee = -1;
                double best = -1.0;
                for (int b = 0; b < 5; ++b) {
                    if (b_used[static_cast<std::size_t>(b)]) continue;
                    for (int e = 0; e < 5; ++e) {
                        if (e_used[static_cast<std::size_t>(e)]) continue;
                        const double o =
                            ov[static_cast<std::size_t>(b)][static_cast<std::size_t>(e)];
                        if (o > best) {
                            best = o;
                            bb = b;
                            ee = e;
                        }
                    }
                }
                if (best < 0.5)
                    throw TrackingError(
                        "eigen_branches: branch continuation ambiguous (max "
                        "overlap " +
                            std::to_string(best) + ") at k = " + std::to_string(k),
                        k);
                b_used[static_cast<std::size_t>(bb)] = true;
                e_used[static_cast<std::size_t>(ee)] = true;

                Vector5cd vec = modes.vectors[static_cast<std::size_t>(ee)];
                phase_align(vec, prev[static_cast<std::size_t>(bb)]);
                auto& br = out.branches[static_cast<std::size_t>(bb)];
                br.omega[gi] = modes.values[static_cast<std::size_t>(ee)];
                br.vectors[gi] = vec;
                prev[static_cast<std::size_t>(bb)] = vec;
            }

            // polish the dark eigenvalue; the bright ones are reported as solved
            auto& dark = out.branches[static_cast<std::size_t>(out.dark_index)];
            dark.omega[gi] = newton_polish_eigenvalue(h, dark.omega[gi]);
        };

        if (forward) {
            for (std::size_t gi = split; gi < nk; ++gi) visit(gi);
        } else {
            for (std::size_t gi = split; gi-- > 0;) visit(gi);
        }
    };

    track_direction(true);
    track_direction(false);
    return out;
}

PerturbativeCoefficients perturbative_coefficients(const ModelParams& p) {
    p.validate();
    const double osq = p.omega_sq();
    if (osq <= 0.0)
        throw DegenerateControlError("degenerate control fields: Omega^2 = 0");
    if (p.g_sqrt_n <= 0.0)
        throw UnsupportedRegimeError(
            "perturbative coefficients need a medium (g_sqrt_n > 0)");
    const double asym = std::abs(p.delta_plus - p.delta_minus) +
                        std::abs(p.gamma_plus - p.gamma_minus);
    const double scale = std::abs(p.delta_plus) + std::abs(p.gamma_plus) + 1.0;
    if (asym > 1e-12 * scale)
        throw UnsupportedRegimeError(
            "perturbative coefficients assume Gamma+ = Gamma-; use "
            "eigen_branches for the asymmetric case");

    const double g2n = p.g_sqrt_n * p.g_sqrt_n;
    const double om_eff2 = g2n + osq;
    const double cos2t = osq / om_eff2;   // cos^2(theta)
    const double sin2t = g2n / om_eff2;   // sin^2(theta)
    const double cos_2phi = (std::norm(p.omega_plus) - std::norm(p.omega_minus)) / osq;
    const double sin_2phi_sq =
        4.0 * std::norm(p.omega_plus) * std::norm(p.omega_minus) / (osq * osq);

    const double v_gr = p.c * cos2t;
    const double angle_factor = sin_2phi_sq + cos_2phi * cos_2phi * sin2t * sin2t;
    // v_gr * L_abs * (Delta/gamma - i) written gamma-cancellation-free as
    // v_gr * (c/g^2N) * (Delta - i gamma)
    const cd loss(p.delta_plus, -p.gamma_plus);

    PerturbativeCoefficients out;
    out.v = v_gr * cos_2phi;
    out.c1 = cd(out.v, 0.0);
    out.c2 = v_gr * (p.c / g2n) * loss * angle_factor;
    out.inv_mass = 2.0 * out.c2;  // hbar = 1
    return out;
}

cd dark_eigenvalue(const ModelParams& params, double k) {
    const Vector5cd dark_ref = dualv::dark_polariton_vector(params);
    const Matrix5cd h = dualv::mode_matrix(params, k);
    const EigenModes modes = eigen_modes(h);
    double overlap = 0.0;
    const int idx = best_overlap(modes, dark_ref, &overlap);
    if (overlap < 0.9)
        throw TrackingError("dark_eigenvalue: dark branch not identifiable at k = " +
                                std::to_string(k),
                            k);
    return newton_polish_eigenvalue(h, modes.values[static_cast<std::size_t>(idx)]);
}

DerivativeEstimate dark_branch_derivatives(const ModelParams& params, double h) {
    params.validate();
    if (!(h > 0.0) || !std::isfinite(h))
        throw InvalidInput("dark_branch_derivatives: step must be > 0");

    const auto stencil = [&params](double step, cd* d1, cd* d2) {
        const cd f0 = dark_eigenvalue(params, 0.0);
        const cd fp1 = dark_eigenvalue(params, step);
        const cd fm1 = dark_eigenvalue(params, -step);
        const cd fp2 = dark_eigenvalue(params, 2.0 * step);
        const cd fm2 = dark_eigenvalue(params, -2.0 * step);
        *d1 = (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * step);
        *d2 = (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) /
              (12.0 * step * step);
    };

    DerivativeEstimate est;
    est.step = h;
    stencil(h, &est.first, &est.second);
    cd d1_half, d2_half;
    stencil(0.5 * h, &d1_half, &d2_half);
    // both stencils are fourth order; one Richardson step gains two orders
    est.first_refined = (16.0 * d1_half - est.first) / 15.0;
    est.second_refined = (16.0 * d2_half - est.second) / 15.0;
    return est;
}

MassIdentityReport verify_mass_identity(const ModelParams& params, double k_probe,
                                        double v_rec, double lambda_p) {
    params.validate();
    if (!(k_probe > 0.0) || !(v_rec > 0.0) || !(lambda_p > 0.0))
        throw InvalidInput("mass identity: recoil inputs must be > 0");

    MassIdentityReport rep;
    rep.recoil_consistent =
        std::abs(lambda_p * k_probe - 2.0 * M_PI) <= 1e-9 * 2.0 * M_PI;

    const PerturbativeCoefficients pc = perturbative_coefficients(params);
    const double g2n = params.g_sqrt_n * params.g_sqrt_n;
    const double osq = params.omega_sq();
    const double om_eff2 = g2n + osq;
    const double cos2t = osq / om_eff2;
    const double sin2t = g2n / om_eff2;
    const double cos_2phi =
        (std::norm(params.omega_plus) - std::norm(params.omega_minus)) / osq;
    const double sin_2phi_sq = 4.0 * std::norm(params.omega_plus) *
                               std::norm(params.omega_minus) / (osq * osq);
    const double angle_factor = sin_2phi_sq + cos_2phi * cos_2phi * sin2t * sin2t;

    const double v_gr = params.c * cos2t;
    const double mass = k_probe / v_rec;  // m v_rec = hbar k_probe, hbar = 1
    // (4 pi / m)(v_gr / v_rec)(L_abs / lambda)(Delta/gamma - i)(...) with
    // L_abs (Delta/gamma - i) fused into (c/g^2N)(Delta - i gamma)
    const cd loss(params.delta_plus, -params.gamma_plus);
    rep.expanded = (4.0 * M_PI / mass) * (v_gr / v_rec) * (1.0 / lambda_p) *
                   (params.c / g2n) * loss * angle_factor;
    rep.curvature = 2.0 * pc.c2;

    const double denom = std::max(std::abs(rep.curvature), 1e-300);
    rep.residual = std::abs(rep.expanded - rep.curvature) / denom;
    if (std::abs(rep.curvature) == 0.0 && std::abs(rep.expanded) == 0.0)
        rep.residual = 0.0;
    return rep;
}

}  // namespace plab::dispersion
