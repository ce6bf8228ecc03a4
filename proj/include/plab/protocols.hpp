#ifndef PLAB_PROTOCOLS_HPP
#define PLAB_PROTOCOLS_HPP

#include <string>
#include <vector>

#include "plab/dualv.hpp"
#include "plab/field_state.hpp"
#include "plab/grid.hpp"
#include "plab/schedule.hpp"

namespace plab::protocols {

using dualv::ModelParams;

/// One named assertion with its measured value. Hard checks gate the run
/// outcome; soft ones are report-only (used when a scenario runs outside
/// its guaranteed regime, e.g. a deliberately non-adiabatic ramp).
struct Check {
    std::string name;
    bool hard = true;
    bool passed = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string comparator;  // "<=" or ">="
    std::string note;
};

struct ScenarioOptions {
    int snapshot_count = 81;  ///< diagnostics sampled this many times (>= 2)
};

/// Time-resolved diagnostics of a schedule-driven run. All arrays are
/// aligned with `times`. Fractions refer to the current total norm and sum
/// to one by construction; centroid/width follow the dark-polariton
/// envelope |Psi_D|^2.
struct ScenarioResult {
    std::vector<double> times;
    std::vector<FieldState> snapshots;       // z-space copies
    std::vector<std::vector<cd>> psi_d;      // polariton envelope per snapshot
    std::vector<double> dsp_norm;
    std::vector<double> spin_fraction;
    std::vector<double> field_fraction;
    std::vector<double> excited_fraction;
    std::vector<double> total_norm;
    std::vector<double> centroid;
    std::vector<double> width;
    std::vector<Check> checks;
    std::vector<std::string> warnings;
    bool adiabatic_schedule = true;

    bool all_hard_passed() const;
};

/// Slow-light pulse stored into the spin coherence by ramping the controls
/// to zero. Requires a phi = 0 start (backward control off) and a schedule
/// ending with both controls off. Assertions: final spin fraction >= 0.99,
/// residual field amplitudes <= 1e-3 of the initial peak, and the stored
/// sigma_gs envelope matching the initial polariton envelope within 2% L2
/// after removing the accumulated drift. They turn report-only when the
/// schedule is flagged non-adiabatic.
ScenarioResult run_storage(const ModelParams& base, const PulseSpec& pulse,
                           const Grid1D& grid, const ControlSchedule& schedule,
                           const ScenarioOptions& options = {});

/// Retrieval of a stored spin excitation by ramping both controls up from
/// zero. With equal final controls the released pattern is stationary:
/// |E+|^2 and |E-|^2 agree within 1% L2 and the intensity centroid drifts
/// no faster than 0.02 sigma_z per 10/gamma. With unequal final controls
/// the stationarity assertion is replaced by a drift-velocity comparison
/// against c cos^2(theta) cos(2 phi) at 5%.
ScenarioResult run_retrieval_stationary(const ModelParams& base,
                                        const FieldState& stored,
                                        const ControlSchedule& schedule,
                                        const ScenarioOptions& options = {});

/// Schedule-driven evolution with diagnostics only, starting from a
/// dark-initialized pulse.
ScenarioResult run_custom(const ModelParams& base, const PulseSpec& pulse,
                          const Grid1D& grid, const ControlSchedule& schedule,
                          const ScenarioOptions& options = {});

/// Same, starting from an arbitrary prepared state.
ScenarioResult run_custom_from(const ModelParams& base, const FieldState& initial,
                               const ControlSchedule& schedule,
                               const ScenarioOptions& options = {});

struct RoundTripResult {
    ScenarioResult storage;
    ScenarioResult retrieval;
    std::vector<Check> checks;
};

/// Storage followed by retrieval of the same excitation. In the lossless
/// adiabatic regime the final dark-polariton norm stays within 2% of the
/// initial one.
RoundTripResult run_storage_retrieval_roundtrip(
    const ModelParams& base, const PulseSpec& pulse, const Grid1D& grid,
    const ControlSchedule& storage_schedule,
    const ControlSchedule& retrieval_schedule,
    const ScenarioOptions& options = {});

}  // namespace plab::protocols

#endif
