#include <cmath>

#include "doctest.h"
#include "plab/dualv.hpp"
#include "plab/errors.hpp"
#include "plab/rng.hpp"

using namespace plab;
using dualv::ModelParams;

namespace {

ModelParams random_params(DeterministicRng& rng, bool symmetric = false) {
    ModelParams p;
    p.g_sqrt_n = rng.uniform(0.1, 10.0);
    p.omega_plus = rng.complex_uniform(3.0);
    p.omega_minus = rng.complex_uniform(3.0);
    p.delta_plus = rng.uniform(-5.0, 5.0);
    p.delta_minus = symmetric ? p.delta_plus : rng.uniform(-5.0, 5.0);
    p.gamma_plus = rng.uniform(0.0, 3.0);
    p.gamma_minus = symmetric ? p.gamma_plus : rng.uniform(0.0, 3.0);
    p.c = 1.0;
    // keep the controls nondegenerate
    if (p.omega_sq() < 0.01) p.omega_plus += cd(0.5, 0.0);
    return p;
}

}  // namespace

TEST_CASE("build_h matches the printed coefficient matrix") {
    SUBCASE("everything off gives the zero matrix") {
        ModelParams p;
        p.c = 1.0;
        CHECK(dualv::build_h(p, 0.0).norm() == 0.0);
    }
    SUBCASE("Hermitian at k = 0 exactly when the losses vanish") {
        // the diagonal entries -i Gamma = Delta - i gamma are real for
        // gamma = 0, so detunings alone do not break Hermiticity
        ModelParams p;
        p.g_sqrt_n = 2.0;
        p.omega_plus = 1.0;
        p.omega_minus = 0.5;
        const Matrix5cd h = dualv::build_h(p, 0.0);
        CHECK((h - h.adjoint()).norm() <= 1e-15 * h.norm());

        ModelParams detuned = p;
        detuned.delta_minus = 1.0;
        const Matrix5cd h2 = dualv::build_h(detuned, 0.0);
        CHECK((h2 - h2.adjoint()).norm() <= 1e-15 * h2.norm());

        ModelParams lossy = p;
        lossy.gamma_plus = 0.4;
        const Matrix5cd h3 = dualv::build_h(lossy, 0.0);
        CHECK((h3 - h3.adjoint()).norm() > 1e-3);
    }
    SUBCASE("k enters only the field diagonal") {
        DeterministicRng rng(2);
        const ModelParams p = random_params(rng);
        const Matrix5cd d = dualv::build_h(p, 0.37) - dualv::build_h(p, 0.0);
        Matrix5cd expected = Matrix5cd::Zero();
        expected(0, 0) = cd(-0.37 * p.c, 0.0);
        expected(1, 1) = cd(+0.37 * p.c, 0.0);
        CHECK((d - expected).norm() <= 1e-14);
    }
    SUBCASE("entry placement") {
        ModelParams p;
        p.g_sqrt_n = 3.0;
        p.omega_plus = cd(1.0, 0.5);
        p.omega_minus = cd(-0.25, 2.0);
        p.delta_plus = 0.7;
        p.delta_minus = -1.3;
        p.gamma_plus = 0.2;
        p.gamma_minus = 0.9;
        p.c = 2.0;
        const Matrix5cd h = dualv::build_h(p, 1.5);
        CHECK(h(0, 0) == cd(-3.0, 0.0));
        CHECK(h(1, 1) == cd(3.0, 0.0));
        CHECK(h(2, 2) == cd(0.0, 0.0));
        // -i Gamma = -i(i Delta + gamma) = Delta - i gamma
        CHECK(h(3, 3) == cd(0.7, -0.2));
        CHECK(h(4, 4) == cd(-1.3, -0.9));
        CHECK(h(0, 3) == cd(-3.0, 0.0));
        CHECK(h(3, 0) == cd(-3.0, 0.0));
        CHECK(h(2, 3) == -p.omega_plus);
        CHECK(h(3, 2) == -std::conj(p.omega_plus));
        CHECK(h(2, 4) == -p.omega_minus);
        CHECK(h(4, 2) == -std::conj(p.omega_minus));
        // bipartition: no couplings inside {E+, E-, sigma_gs} or inside
        // {sigma_ge+, sigma_ge-}
        CHECK(h(0, 1) == cd(0.0, 0.0));
        CHECK(h(0, 2) == cd(0.0, 0.0));
        CHECK(h(1, 2) == cd(0.0, 0.0));
        CHECK(h(3, 4) == cd(0.0, 0.0));
        CHECK(h(0, 4) == cd(0.0, 0.0));
        CHECK(h(1, 3) == cd(0.0, 0.0));
    }
    SUBCASE("mode_matrix flips the sign of k") {
        DeterministicRng rng(4);
        const ModelParams p = random_params(rng);
        CHECK((dualv::mode_matrix(p, 0.8) - dualv::build_h(p, -0.8)).norm() == 0.0);
    }
}

TEST_CASE("mixing angles") {
    ModelParams p;
    p.g_sqrt_n = 2.0;

    SUBCASE("equal intensities give phi = pi/4") {
        p.omega_plus = cd(0.3, 0.4);  // |.| = 0.5
        p.omega_minus = cd(0.5, 0.0);
        const auto a = dualv::mixing_angles(p);
        CHECK(a.phi == doctest::Approx(M_PI / 4.0));
    }
    SUBCASE("single forward control gives phi = 0") {
        p.omega_plus = 1.3;
        p.omega_minus = 0.0;
        CHECK(dualv::mixing_angles(p).phi == 0.0);
    }
    SUBCASE("only backward control gives phi = pi/2") {
        p.omega_plus = 0.0;
        p.omega_minus = 0.7;
        CHECK(dualv::mixing_angles(p).phi == doctest::Approx(M_PI / 2.0));
    }
    SUBCASE("g sqrt(N) = Omega gives theta = pi/4") {
        p.g_sqrt_n = 5.0;
        p.omega_plus = 3.0;
        p.omega_minus = 4.0;
        CHECK(dualv::mixing_angles(p).theta == doctest::Approx(M_PI / 4.0));
    }
    SUBCASE("defining relations hold for random parameters") {
        DeterministicRng rng(13);
        for (int i = 0; i < 100; ++i) {
            const ModelParams q = random_params(rng);
            const auto a = dualv::mixing_angles(q);
            const double tan2_theta = std::tan(a.theta) * std::tan(a.theta);
            CHECK(tan2_theta * a.omega_sq ==
                  doctest::Approx(q.g_sqrt_n * q.g_sqrt_n).epsilon(1e-12));
            // multiplicative restatement, safe at theta = pi/2
            const double c2 = std::cos(a.theta) * std::cos(a.theta);
            const double s2 = std::sin(a.theta) * std::sin(a.theta);
            CHECK(c2 * q.g_sqrt_n * q.g_sqrt_n ==
                  doctest::Approx(s2 * a.omega_sq).epsilon(1e-11));
            if (std::abs(q.omega_plus) > 0.0) {
                const double tan2_phi = std::tan(a.phi) * std::tan(a.phi);
                CHECK(tan2_phi ==
                      doctest::Approx(std::norm(q.omega_minus) /
                                      std::norm(q.omega_plus))
                          .epsilon(1e-11));
            }
        }
    }
    SUBCASE("degenerate controls rejected") {
        p.omega_plus = 0.0;
        p.omega_minus = 0.0;
        CHECK_THROWS_AS(dualv::mixing_angles(p), DegenerateControlError);
    }
}

TEST_CASE("dark polariton vector") {
    SUBCASE("angle-formula limits") {
        const Vector5cd probe = dualv::dark_vector_from_angles(0.0, 0.0);
        CHECK((probe - (Vector5cd() << 1, 0, 0, 0, 0).finished()).norm() <= 1e-15);
        const Vector5cd spin = dualv::dark_vector_from_angles(M_PI / 2.0, M_PI / 4.0);
        CHECK((spin - (Vector5cd() << 0, 0, -1, 0, 0).finished()).norm() <= 1e-15);
    }
    SUBCASE("balanced case with theta = phi = pi/4") {
        ModelParams p;
        p.g_sqrt_n = 1.0;
        p.omega_plus = p.omega_minus = 1.0 / std::sqrt(2.0);
        const Vector5cd d = dualv::dark_polariton_vector(p);
        CHECK(d(0).real() == doctest::Approx(0.5));
        CHECK(d(1).real() == doctest::Approx(0.5));
        CHECK(d(2).real() == doctest::Approx(-1.0 / std::sqrt(2.0)));
        CHECK(std::abs(d(3)) == 0.0);
        CHECK(std::abs(d(4)) == 0.0);
        CHECK((dualv::build_h(p, 0.0) * d).norm() <= 1e-14);
    }
    SUBCASE("darkness is exact at k = 0 for arbitrary losses and detunings") {
        DeterministicRng rng(29);
        for (int i = 0; i < 200; ++i) {
            const ModelParams p = random_params(rng);
            const Vector5cd d = dualv::dark_polariton_vector(p);
            CHECK(std::abs(d.norm() - 1.0) <= 1e-12);
            const Matrix5cd h0 = dualv::build_h(p, 0.0);
            CHECK((h0 * d).norm() <= 1e-10 * h0.norm());
        }
    }
    SUBCASE("reduces to the printed cos/sin form for real controls") {
        ModelParams p;
        p.g_sqrt_n = 3.0;
        p.omega_plus = 1.2;
        p.omega_minus = 0.4;
        const auto a = dualv::mixing_angles(p);
        const Vector5cd d = dualv::dark_polariton_vector(p);
        CHECK(d(0).real() ==
              doctest::Approx(std::cos(a.phi) * std::cos(a.theta)).epsilon(1e-12));
        CHECK(d(1).real() ==
              doctest::Approx(std::sin(a.phi) * std::cos(a.theta)).epsilon(1e-12));
        CHECK(d(2).real() == doctest::Approx(-std::sin(a.theta)).epsilon(1e-12));
    }
}

TEST_CASE("derived scales") {
    ModelParams p;
    p.g_sqrt_n = 2.0;
    p.omega_plus = 1.0;
    p.omega_minus = 1.0;
    p.gamma_plus = 0.5;
    p.gamma_minus = 0.25;
    p.c = 1.0;
    const auto s = dualv::derived_scales(p);
    // cos^2 theta = Omega^2 / (g^2 N + Omega^2) = 2/6
    CHECK(s.v_gr == doctest::Approx(1.0 / 3.0));
    CHECK(s.v_gr >= 0.0);
    CHECK(s.v_gr <= p.c);
    // L_abs = c gamma_max / g^2 N
    CHECK(s.l_abs == doctest::Approx(0.5 / 4.0));
    CHECK(s.omega_eff == doctest::Approx(std::sqrt(6.0)));
}

TEST_CASE("adiabaticity report") {
    ModelParams p;
    p.g_sqrt_n = 1.0;  // spatial ratio = L_p * g sqrt(N) / c
    p.omega_plus = 0.0;
    p.omega_minus = 0.0;
    p.c = 1.0;

    SUBCASE("temporal ratio arithmetic") {
        ModelParams q = p;
        q.g_sqrt_n = 1.0;  // Omega_eff = 1
        const auto r = dualv::validate_adiabaticity(q, 100.0, 100.0);
        CHECK(r.temporal_ratio == doctest::Approx(100.0));
        CHECK(r.temporal_level == dualv::AdiabaticityLevel::pass);
    }
    SUBCASE("spatial ratio equals L_p / sqrt(L_abs c/gamma)") {
        // L_abs c / gamma = c^2/(g^2 N) = 0.01 for g sqrt(N) = 10, so
        // sqrt = 0.1 and L_p = 1 gives ratio 10
        ModelParams q = p;
        q.g_sqrt_n = 10.0;
        q.gamma_plus = 1.0;
        const auto r = dualv::validate_adiabaticity(q, 1.0, 1.0);
        CHECK(r.spatial_ratio == doctest::Approx(10.0));
        CHECK(r.spatial_level == dualv::AdiabaticityLevel::pass);
    }
    SUBCASE("boundary ratio of one warns as failing") {
        // L_p = sqrt(L_abs c/gamma) exactly: ratio 1 -> below the warn band
        ModelParams q = p;
        q.g_sqrt_n = 10.0;
        const auto r = dualv::validate_adiabaticity(q, 1.0, 0.1);
        CHECK(r.spatial_ratio == doctest::Approx(1.0));
        CHECK(r.spatial_level == dualv::AdiabaticityLevel::fail);
    }
    SUBCASE("warn band") {
        ModelParams q = p;
        q.g_sqrt_n = 5.0;
        const auto r = dualv::validate_adiabaticity(q, 1.0, 1.0);
        CHECK(r.spatial_ratio == doctest::Approx(5.0));
        CHECK(r.spatial_level == dualv::AdiabaticityLevel::warn);
    }
    SUBCASE("nonpositive inputs rejected") {
        CHECK_THROWS_AS(dualv::validate_adiabaticity(p, 0.0, 1.0), InvalidInput);
        CHECK_THROWS_AS(dualv::validate_adiabaticity(p, 1.0, -2.0), InvalidInput);
    }
}

TEST_CASE("model validation") {
    ModelParams p;
    p.g_sqrt_n = -1.0;
    CHECK_THROWS_AS(p.validate(), InvalidInput);
    p.g_sqrt_n = 1.0;
    p.gamma_plus = -0.1;
    CHECK_THROWS_AS(p.validate(), InvalidInput);
    p.gamma_plus = 0.0;
    p.c = 0.0;
    CHECK_THROWS_AS(p.validate(), InvalidInput);
}
