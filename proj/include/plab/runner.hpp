#ifndef PLAB_RUNNER_HPP
#define PLAB_RUNNER_HPP

#include <string>
#include <vector>

#include "plab/config.hpp"
#include "plab/protocols.hpp"
#include "plab/serialize.hpp"

namespace plab::runner {

/// Everything a run asserted or measured, echoed in manifest.json. Every
/// check appears exactly once with its numeric residual; the one
/// nondeterministic field is wall_clock_s.
struct RunManifest {
    std::string tool_version;
    std::string mode;
    std::string units;
    std::string config_echo;
    double wall_clock_s = 0.0;
    std::vector<protocols::Check> checks;
    std::vector<std::string> artifacts;
    std::vector<std::string> warnings;

    bool all_hard_passed() const;
    json to_json() const;
};

struct RunOutcome {
    RunManifest manifest;
    int exit_code = 0;       // 0 iff all hard checks passed
    std::string output_dir;  // where artifacts were written
};

/// Execute a validated config: compute, write artifacts (CSV/JSON) under the
/// output directory, and write manifest.json. Deterministic for a fixed
/// config and seed (apart from the manifest's wall-clock field).
RunOutcome run(const config::RunConfig& cfg, const std::string& output_override = "");

}  // namespace plab::runner

#endif
