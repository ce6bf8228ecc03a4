#include <cmath>

#include "doctest.h"
#include "plab/errors.hpp"
#include "plab/propagator.hpp"
#include "plab/protocols.hpp"
#include "plab/rng.hpp"

using namespace plab;
using dualv::ModelParams;
using protocols::ControlSchedule;
using protocols::ScheduleSegment;

namespace {

// lossless storage testbed: cos^2 theta = 0.1, v_gr = 0.1
ModelParams storage_params() {
    ModelParams p;
    p.g_sqrt_n = 6.0;
    p.omega_plus = 2.0;
    p.omega_minus = 0.0;
    p.c = 1.0;
    return p;
}

Grid1D storage_grid() { return Grid1D{512, -48.0, 48.0}; }

PulseSpec storage_pulse() {
    PulseSpec pulse;
    pulse.center = -6.0;
    pulse.rms_width = 4.0;
    return pulse;
}

ControlSchedule storage_schedule(double ramp, double hold = 1.0) {
    ControlSchedule s;
    s.omega_plus_start = cd(2.0, 0.0);
    s.omega_minus_start = cd(0.0, 0.0);
    s.segments.push_back({ramp, cd(0.0, 0.0), cd(0.0, 0.0)});
    s.segments.push_back({hold, cd(0.0, 0.0), cd(0.0, 0.0)});
    return s;
}

ControlSchedule retrieval_schedule(double ramp, cd plus, cd minus,
                                   double hold = 2.0) {
    ControlSchedule s;
    s.omega_plus_start = s.omega_minus_start = cd(0.0, 0.0);
    s.segments.push_back({ramp, plus, minus});
    s.segments.push_back({hold, plus, minus});
    return s;
}

// one adiabatic storage run shared by several test cases (subcases re-run
// their enclosing bodies, so this saves real time)
const protocols::ScenarioResult& adiabatic_storage_run() {
    static const auto result = protocols::run_storage(
        storage_params(), storage_pulse(), storage_grid(), storage_schedule(12.0));
    return result;
}

}  // namespace

TEST_CASE("control schedule shapes") {
    ControlSchedule s;
    s.omega_plus_start = cd(2.0, 0.0);
    s.segments.push_back({4.0, cd(0.0, 0.0), cd(0.0, 0.0)});
    s.segments.push_back({2.0, cd(0.0, 0.0), cd(1.0, 0.0)});
    s.validate();

    CHECK(s.total_duration() == doctest::Approx(6.0));
    // raised cosine: halfway through a ramp sits at the midpoint value
    CHECK(s.omega_at(0.0).first.real() == doctest::Approx(2.0));
    CHECK(s.omega_at(2.0).first.real() == doctest::Approx(1.0));
    CHECK(s.omega_at(4.0).first.real() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s.omega_at(5.0).second.real() == doctest::Approx(0.5));
    CHECK(s.omega_at(6.0).second.real() == doctest::Approx(1.0));
    CHECK(s.omega_at(100.0).second.real() == doctest::Approx(1.0));

    SUBCASE("continuity across the boundary") {
        const double eps = 1e-9;
        const auto before = s.omega_at(4.0 - eps);
        const auto after = s.omega_at(4.0 + eps);
        CHECK(std::abs(before.first - after.first) <= 1e-6);
        CHECK(std::abs(before.second - after.second) <= 1e-6);
    }
    SUBCASE("adiabatic ramp flags") {
        // g sqrt(N) = 6: Omega_eff >= 6, both ramps comfortably adiabatic
        CHECK(s.nonadiabatic_segments(6.0).empty());
        // with a weak medium the second ramp (min Omega_eff = 0.0 at start
        // of hold... min endpoint Omega_eff = g) can fail
        ControlSchedule fast = s;
        fast.segments[0].duration = 0.1;
        const auto flagged = fast.nonadiabatic_segments(6.0);
        REQUIRE(flagged.size() == 1);
        CHECK(flagged[0] == 0);
    }
    SUBCASE("invalid schedules rejected") {
        ControlSchedule bad;
        CHECK_THROWS_AS(bad.validate(), InvalidInput);
        bad.segments.push_back({0.0, cd(1.0, 0.0), cd(0.0, 0.0)});
        CHECK_THROWS_AS(bad.validate(), InvalidInput);
    }
}

TEST_CASE("constant schedule reproduces evolve_full") {
    const ModelParams p = storage_params();
    const Grid1D grid = storage_grid();
    const PulseSpec pulse = storage_pulse();

    ControlSchedule hold;
    hold.omega_plus_start = p.omega_plus;
    hold.omega_minus_start = p.omega_minus;
    hold.segments.push_back({5.0, p.omega_plus, p.omega_minus});

    protocols::ScenarioOptions opts;
    opts.snapshot_count = 6;
    const auto result = protocols::run_custom(p, pulse, grid, hold, opts);

    const auto init = propagator::init_on_dark_branch(p, pulse, grid);
    const FieldState direct = propagator::evolve_full(init.state, p, 5.0, 1e-3);

    const FieldState& via_schedule = result.snapshots.back();
    double err = 0.0, scale = 0.0;
    for (int c = 0; c < 5; ++c) {
        for (int i = 0; i < grid.n_points; ++i) {
            const std::size_t ii = static_cast<std::size_t>(i);
            err = std::max(err, std::abs(via_schedule.amp[static_cast<std::size_t>(c)][ii] -
                                         direct.amp[static_cast<std::size_t>(c)][ii]));
            scale = std::max(scale, std::abs(direct.amp[static_cast<std::size_t>(c)][ii]));
        }
    }
    CHECK(err <= 1e-12 * scale);
}

TEST_CASE("storage in the lossless adiabatic regime") {
    const auto& result = adiabatic_storage_run();
    REQUIRE(result.adiabatic_schedule);

    // hard checks pass
    CHECK(result.all_hard_passed());
    for (const auto& c : result.checks) {
        CAPTURE(c.name);
        CHECK(c.passed);
    }
    // norm is conserved through storage (gamma = 0)
    CHECK(std::abs(result.total_norm.back() / result.total_norm.front() - 1.0) <=
          1e-6);
    // the excitation ends in the spin coherence
    CHECK(result.spin_fraction.back() >= 0.99);
    CHECK(result.field_fraction.back() <= 1e-4);
}

TEST_CASE("instantaneous turn-off is a negative control") {
    const auto result = protocols::run_storage(storage_params(), storage_pulse(),
                                               storage_grid(),
                                               storage_schedule(0.05, 2.0));
    CHECK_FALSE(result.adiabatic_schedule);
    CHECK_FALSE(result.warnings.empty());
    // assertions are report-only now, and the physics does degrade:
    // bright-branch population shows up as residual fields
    double spin_check = -1.0;
    for (const auto& c : result.checks) {
        if (c.name == "storage.spin_fraction") {
            CHECK_FALSE(c.hard);
            spin_check = c.value;
        }
    }
    REQUIRE(spin_check >= 0.0);
    CHECK(spin_check < 0.99);
}

TEST_CASE("storage preconditions") {
    SUBCASE("schedule must end with the controls off") {
        ControlSchedule bad = storage_schedule(12.0);
        bad.segments.back().omega_plus_target = cd(0.5, 0.0);
        CHECK_THROWS_AS(protocols::run_storage(storage_params(), storage_pulse(),
                                               storage_grid(), bad),
                        InvalidInput);
    }
    SUBCASE("initial state must be a phi = 0 pulse") {
        ControlSchedule bad = storage_schedule(12.0);
        bad.omega_minus_start = cd(0.5, 0.0);
        CHECK_THROWS_AS(protocols::run_storage(storage_params(), storage_pulse(),
                                               storage_grid(), bad),
                        InvalidInput);
    }
    SUBCASE("domain must hold the pulse and its drift") {
        Grid1D tiny{64, -8.0, 8.0};
        PulseSpec pulse;
        pulse.rms_width = 1.5;
        CHECK_THROWS_AS(protocols::run_storage(storage_params(), pulse, tiny,
                                               storage_schedule(12.0)),
                        InvalidInput);
    }
}

TEST_CASE("retrieval into stationary light") {
    // store first, then retrieve with equal counter-propagating controls
    const auto& stored = adiabatic_storage_run();
    REQUIRE(stored.all_hard_passed());
    const double omega_eq = 2.0 / std::sqrt(2.0);

    SUBCASE("equal controls give a symmetric stationary pattern") {
        const auto result = protocols::run_retrieval_stationary(
            storage_params(), stored.snapshots.back(),
            retrieval_schedule(12.0, cd(omega_eq, 0.0), cd(omega_eq, 0.0)));
        REQUIRE(result.adiabatic_schedule);
        CHECK(result.all_hard_passed());
        // fields carry cos^2 theta of the norm again after release
        CHECK(result.field_fraction.back() >= 0.05);
    }
    SUBCASE("unequal controls drift at c cos^2(theta) cos(2 phi)") {
        const auto result = protocols::run_retrieval_stationary(
            storage_params(), stored.snapshots.back(),
            retrieval_schedule(12.0, cd(2.0, 0.0), cd(1.0, 0.0), 6.0));
        REQUIRE(result.adiabatic_schedule);
        bool found = false;
        for (const auto& c : result.checks) {
            if (c.name == "retrieval.drift_velocity_match") {
                found = true;
                CHECK(c.passed);
            }
        }
        CHECK(found);
    }
    SUBCASE("a single forward control releases ordinary slow light at v_gr") {
        // cos(2 phi) = 1: the drift check reduces to the slow-light velocity
        const auto result = protocols::run_retrieval_stationary(
            storage_params(), stored.snapshots.back(),
            retrieval_schedule(12.0, cd(2.0, 0.0), cd(0.0, 0.0), 6.0));
        REQUIRE(result.adiabatic_schedule);
        bool found = false;
        for (const auto& c : result.checks) {
            if (c.name == "retrieval.drift_velocity_match") {
                found = true;
                CHECK(c.passed);
            }
        }
        CHECK(found);
        // the released pulse is purely forward-propagating
        CHECK(result.snapshots.back().component_norm(1) <=
              1e-10 * result.snapshots.back().total_norm());
    }
    SUBCASE("schedule must start from zero controls") {
        ControlSchedule bad =
            retrieval_schedule(12.0, cd(omega_eq, 0.0), cd(omega_eq, 0.0));
        bad.omega_plus_start = cd(1.0, 0.0);
        CHECK_THROWS_AS(protocols::run_retrieval_stationary(
                            storage_params(), stored.snapshots.back(), bad),
                        InvalidInput);
    }
    SUBCASE("stored state must live in the spin coherence") {
        const auto init = propagator::init_on_dark_branch(
            storage_params(), storage_pulse(), storage_grid());
        CHECK_THROWS_AS(
            protocols::run_retrieval_stationary(
                storage_params(), init.state,
                retrieval_schedule(12.0, cd(omega_eq, 0.0), cd(omega_eq, 0.0))),
            InvalidInput);
    }
}

TEST_CASE("storage/retrieval round trip keeps the polariton norm") {
    const double omega_eq = 2.0 / std::sqrt(2.0);
    const auto rt = protocols::run_storage_retrieval_roundtrip(
        storage_params(), storage_pulse(), storage_grid(), storage_schedule(12.0),
        retrieval_schedule(12.0, cd(omega_eq, 0.0), cd(omega_eq, 0.0)));
    CHECK(rt.storage.all_hard_passed());
    CHECK(rt.retrieval.all_hard_passed());
    REQUIRE(rt.checks.size() == 1);
    CHECK(rt.checks[0].hard);
    CHECK(rt.checks[0].passed);
    CHECK(rt.checks[0].value >= 0.98);
}

TEST_CASE("swapping the controls reverses the drift") {
    ModelParams p;
    p.g_sqrt_n = 3.0;
    p.omega_plus = 2.0;
    p.omega_minus = 1.0;
    p.c = 1.0;
    const Grid1D grid{512, -48.0, 48.0};
    PulseSpec pulse;
    pulse.center = 0.0;
    pulse.rms_width = 4.0;

    ControlSchedule swap;
    swap.omega_plus_start = cd(2.0, 0.0);
    swap.omega_minus_start = cd(1.0, 0.0);
    swap.segments.push_back({6.0, cd(2.0, 0.0), cd(1.0, 0.0)});   // hold
    swap.segments.push_back({3.0, cd(1.0, 0.0), cd(2.0, 0.0)});   // swap
    swap.segments.push_back({6.0, cd(1.0, 0.0), cd(2.0, 0.0)});   // hold
    protocols::ScenarioOptions opts;
    opts.snapshot_count = 151;
    const auto result = protocols::run_custom(p, pulse, grid, swap, opts);

    // centroid slope inside each hold, away from the ramp
    auto slope = [&](double t0, double t1) {
        int i0 = -1, i1 = -1;
        for (std::size_t i = 0; i < result.times.size(); ++i) {
            if (i0 < 0 && result.times[i] >= t0) i0 = static_cast<int>(i);
            if (result.times[i] <= t1) i1 = static_cast<int>(i);
        }
        REQUIRE(i0 >= 0);
        REQUIRE(i1 > i0);
        return (result.centroid[static_cast<std::size_t>(i1)] -
                result.centroid[static_cast<std::size_t>(i0)]) /
               (result.times[static_cast<std::size_t>(i1)] -
                result.times[static_cast<std::size_t>(i0)]);
    };
    // v = c cos^2(theta) cos(2 phi): Omega^2 = 5, Omega_eff^2 = 14
    const double v_expected = (5.0 / 14.0) * (3.0 / 5.0);
    const double v_first = slope(1.0, 5.0);
    const double v_second = slope(10.0, 14.0);
    CHECK(v_first == doctest::Approx(v_expected).epsilon(0.05));
    CHECK(v_second == doctest::Approx(-v_expected).epsilon(0.05));
}

TEST_CASE("fractions sum to one by construction") {
    const auto& result = adiabatic_storage_run();
    for (std::size_t i = 0; i < result.times.size(); ++i) {
        CHECK(result.spin_fraction[i] + result.field_fraction[i] +
                  result.excited_fraction[i] ==
              1.0);
        CHECK(result.spin_fraction[i] >= 0.0);
        CHECK(result.field_fraction[i] >= 0.0);
    }
}

TEST_CASE("the polariton subspace holds the population throughout storage") {
    const auto& result = adiabatic_storage_run();
    for (std::size_t i = 0; i < result.times.size(); ++i)
        CHECK(result.dsp_norm[i] / result.total_norm[i] >= 0.99);
}

TEST_CASE("storage from a matter-dominated pulse is nearly trivial") {
    // theta already close to pi/2: the field carries only cos^2(theta)
    ModelParams p;
    p.g_sqrt_n = 6.0;
    p.omega_plus = 0.5;
    p.omega_minus = 0.0;
    p.c = 1.0;
    const double cos2t = p.omega_sq() / (p.omega_eff() * p.omega_eff());

    ControlSchedule s;
    s.omega_plus_start = cd(0.5, 0.0);
    s.segments.push_back({2.0, cd(0.0, 0.0), cd(0.0, 0.0)});
    s.segments.push_back({0.5, cd(0.0, 0.0), cd(0.0, 0.0)});

    Grid1D grid{512, -48.0, 48.0};
    PulseSpec pulse;
    pulse.center = 0.0;
    pulse.rms_width = 4.0;
    const auto result = protocols::run_storage(p, pulse, grid, s);
    CHECK(result.field_fraction.front() <= cos2t * 1.001);
    CHECK(result.spin_fraction.back() >= 0.99);
    // the residual-amplitude ratio is not meaningful here: its denominator,
    // the initial field peak, carries only cos(theta) ~ 0.08 of the
    // excitation, so that bound needs far longer ramps (covered by the main
    // storage test); the envelope still stores faithfully
    for (const auto& c : result.checks) {
        CAPTURE(c.name);
        if (c.name != "storage.residual_field_amplitude") CHECK(c.passed);
    }
}
