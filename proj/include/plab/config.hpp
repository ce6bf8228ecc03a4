#ifndef PLAB_CONFIG_HPP
#define PLAB_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "plab/dualv.hpp"
#include "plab/field_state.hpp"
#include "plab/grid.hpp"
#include "plab/schedule.hpp"

namespace plab::config {

enum class Mode { transform, dispersion, propagate, scenario };

enum class ScenarioType { storage, retrieval, roundtrip, custom };

struct DispersionSection {
    double k_min = 0.0;
    double k_max = 0.0;
    int n_k = 0;
};

struct PropagateSection {
    double t_final = 0.0;
    std::optional<double> dt;        // default derived from stability bounds
    int snapshot_count = 11;
    bool compare_effective = false;
};

struct ScenarioSection {
    ScenarioType type = ScenarioType::custom;
    int snapshot_count = 81;
};

struct TransformSection {
    Eigen::MatrixXcd v;
    bool self_test = false;
    int self_test_cases = 25;
};

/// A fully validated run description. Sections are present exactly when the
/// mode requires them.
struct RunConfig {
    Mode mode = Mode::dispersion;
    unsigned long seed = 0;              // randomized self-tests only
    std::string output_dir = "out";

    std::optional<dualv::ModelParams> model;
    std::optional<Grid1D> grid;
    std::optional<PulseSpec> pulse;
    std::optional<DispersionSection> dispersion;
    std::optional<PropagateSection> propagate;
    std::optional<ScenarioSection> scenario;
    std::optional<protocols::ControlSchedule> schedule;
    std::optional<protocols::ControlSchedule> retrieval_schedule;
    std::optional<TransformSection> transform;
};

struct ConfigError {
    std::string path;     // e.g. "model.gamma_plus"
    std::string message;  // what is wrong and what was expected
};

/// Either a config or the complete list of problems; never just the first.
struct ParseResult {
    std::optional<RunConfig> config;
    std::vector<ConfigError> errors;

    bool ok() const { return config.has_value(); }
};

/// Strict parser for the UTF-8 key-value format described in the README:
/// unknown keys, unknown sections, duplicates, out-of-range values and
/// mode/section mismatches are all errors.
ParseResult parse_config(const std::string& text);

/// Canonical serialization; parse -> serialize is idempotent after one pass.
std::string serialize_config(const RunConfig& cfg);

std::string mode_name(Mode mode);
std::optional<Mode> mode_from_name(const std::string& name);

}  // namespace plab::config

#endif
