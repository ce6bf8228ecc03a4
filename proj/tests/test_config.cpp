#include <string>

#include "doctest.h"
#include "plab/config.hpp"

using namespace plab;
using config::parse_config;

namespace {

const char* kMinimalDispersion = R"(
mode = dispersion

[model]
g_sqrt_n = 10.0
omega_plus_re = 0.70710678118654752
omega_minus_re = 0.70710678118654752
gamma_plus = 1.0
gamma_minus = 1.0

[dispersion]
k_min = -0.5
k_max = 0.5
n_k = 101
)";

bool has_error(const config::ParseResult& r, const std::string& path_part,
               const std::string& msg_part = "") {
    for (const auto& e : r.errors)
        if (e.path.find(path_part) != std::string::npos &&
            e.message.find(msg_part) != std::string::npos)
            return true;
    return false;
}

}  // namespace

TEST_CASE("minimal dispersion config parses") {
    const auto r = parse_config(kMinimalDispersion);
    for (const auto& e : r.errors) {
        CAPTURE(e.path);
        CAPTURE(e.message);
    }
    REQUIRE(r.ok());
    CHECK(r.config->mode == config::Mode::dispersion);
    REQUIRE(r.config->model.has_value());
    CHECK(r.config->model->g_sqrt_n == 10.0);
    CHECK(r.config->model->gamma_plus == 1.0);
    CHECK(r.config->model->c == 1.0);  // default
    REQUIRE(r.config->dispersion.has_value());
    CHECK(r.config->dispersion->n_k == 101);
}

TEST_CASE("degenerate controls are rejected for dispersion mode") {
    std::string text = kMinimalDispersion;
    const auto pos = text.find("omega_plus_re = 0.70710678118654752");
    text.replace(pos, 35, "omega_plus_re = 0.0");
    const auto pos2 = text.find("omega_minus_re = 0.70710678118654752");
    text.replace(pos2, 36, "omega_minus_re = 0.0");
    const auto r = parse_config(text);
    CHECK_FALSE(r.ok());
    CHECK(has_error(r, "model", "degenerate control fields"));
}

TEST_CASE("range errors name the offending field") {
    std::string text = kMinimalDispersion;
    const auto pos = text.find("gamma_plus = 1.0");
    std::string t2 = text;
    t2.replace(pos, 16, "gamma_plus = -1.");
    const auto r = parse_config(t2);
    CHECK_FALSE(r.ok());
    CHECK(has_error(r, "model.gamma_plus", "out of range"));
}

TEST_CASE("all problems are reported, not just the first") {
    const char* text = R"(
mode = dispersion

[model]
g_sqrt_n = -3.0
omega_plus_re = 1.0
gamma_plus = -1.0
mystery_key = 7

[dispersion]
k_min = 0.5
k_max = -0.5
n_k = 101
)";
    const auto r = parse_config(text);
    CHECK_FALSE(r.ok());
    CHECK(has_error(r, "model.g_sqrt_n", "out of range"));
    CHECK(has_error(r, "model.gamma_plus", "out of range"));
    CHECK(has_error(r, "model.mystery_key", "unknown key"));
    CHECK(has_error(r, "dispersion.k_max", "must exceed"));
    CHECK(r.errors.size() >= 4);
}

TEST_CASE("strict parsing") {
    SUBCASE("unknown section") {
        std::string text = kMinimalDispersion;
        text += "\n[plotting]\nstyle = fancy\n";
        const auto r = parse_config(text);
        CHECK_FALSE(r.ok());
        CHECK(has_error(r, "plotting", "not used by mode"));
    }
    SUBCASE("duplicate keys") {
        std::string text = kMinimalDispersion;
        text += "\n[dispersion]\n";  // reopening is fine, duplicating keys is not
        text += "n_k = 7\n";
        const auto r = parse_config(text);
        CHECK_FALSE(r.ok());
        CHECK(has_error(r, "dispersion.n_k", "duplicate"));
    }
    SUBCASE("missing required section") {
        const auto r = parse_config("mode = dispersion\n");
        CHECK_FALSE(r.ok());
        CHECK(has_error(r, "model", "missing required section"));
        CHECK(has_error(r, "dispersion", "missing required section"));
    }
    SUBCASE("unknown mode") {
        const auto r = parse_config("mode = simulate\n");
        CHECK_FALSE(r.ok());
        CHECK(has_error(r, "mode", "unknown mode"));
    }
    SUBCASE("malformed numbers") {
        std::string text = kMinimalDispersion;
        const auto pos = text.find("k_min = -0.5");
        text.replace(pos, 12, "k_min = abc ");
        const auto r = parse_config(text);
        CHECK_FALSE(r.ok());
        CHECK(has_error(r, "dispersion.k_min", "expected a finite number"));
    }
}

TEST_CASE("serialize/parse round trip is idempotent") {
    const char* scenario_text = R"(
mode = scenario
seed = 3

[model]
g_sqrt_n = 6.0
omega_plus_re = 2.0
omega_minus_re = 0.0

[grid]
n_points = 512
z_min = -48.0
z_max = 48.0

[pulse]
center = -6.0
rms_width = 4.0

[scenario]
type = storage
snapshot_count = 41

[schedule]
segment_count = 2
segment1_duration = 12.0
segment1_omega_plus_re = 0.0
segment2_duration = 1.0
)";
    for (const std::string text : {std::string(kMinimalDispersion),
                                   std::string(scenario_text)}) {
        const auto first = parse_config(text);
        REQUIRE(first.ok());
        const std::string canonical = config::serialize_config(*first.config);
        const auto second = parse_config(canonical);
        REQUIRE(second.ok());
        CHECK(config::serialize_config(*second.config) == canonical);
    }
}

TEST_CASE("scenario configs carry schedules rooted at the model controls") {
    const char* text = R"(
mode = scenario

[model]
g_sqrt_n = 6.0
omega_plus_re = 2.0

[grid]
n_points = 512
z_min = -48.0
z_max = 48.0

[pulse]
center = -6.0
rms_width = 4.0

[scenario]
type = storage

[schedule]
segment_count = 2
segment1_duration = 12.0
segment1_omega_plus_re = 0.0
segment2_duration = 1.0
)";
    const auto r = parse_config(text);
    REQUIRE(r.ok());
    REQUIRE(r.config->schedule.has_value());
    const auto& s = *r.config->schedule;
    CHECK(s.omega_plus_start == cd(2.0, 0.0));
    REQUIRE(s.segments.size() == 2);
    CHECK(s.segments[0].omega_plus_target == cd(0.0, 0.0));
    // hold segment inherits the previous target
    CHECK(s.segments[1].omega_plus_target == cd(0.0, 0.0));
    CHECK(s.segment_is_hold(1));
}

TEST_CASE("transform config parses a row-major complex matrix") {
    const char* text = R"(
mode = transform

[transform]
n_a = 3
n_b = 2
v_re = 1 0 0 1 1 1
v_im = 0 0 0 0 0 0.5
)";
    const auto r = parse_config(text);
    REQUIRE(r.ok());
    REQUIRE(r.config->transform.has_value());
    const auto& v = r.config->transform->v;
    CHECK(v.rows() == 3);
    CHECK(v.cols() == 2);
    CHECK(v(0, 0) == cd(1.0, 0.0));
    CHECK(v(2, 1) == cd(1.0, 0.5));

    SUBCASE("wrong entry count is an error") {
        std::string bad = text;
        const auto pos = bad.find("v_re = 1 0 0 1 1 1");
        bad.replace(pos, 18, "v_re = 1 0 0 1 1  ");
        const auto r2 = parse_config(bad);
        CHECK_FALSE(r2.ok());
        CHECK(has_error(r2, "transform.v_re", "expected 6"));
    }
}
