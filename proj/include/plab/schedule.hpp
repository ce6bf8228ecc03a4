#ifndef PLAB_SCHEDULE_HPP
#define PLAB_SCHEDULE_HPP

#include <utility>
#include <vector>

#include "plab/types.hpp"

namespace plab::protocols {

/// One schedule leg: over `duration`, both controls move from their values
/// at the end of the previous segment to the stated targets along a
/// raised-cosine ramp (continuous value and first derivative at the
/// endpoints). Equal endpoint values make the segment a hold.
struct ScheduleSegment {
    double duration = 0.0;
    cd omega_plus_target{0.0, 0.0};
    cd omega_minus_target{0.0, 0.0};
};

/// Piecewise-smooth control amplitudes Omega+(t), Omega-(t). Continuity
/// across segment boundaries holds by construction: each segment starts
/// from the previous target.
struct ControlSchedule {
    cd omega_plus_start{0.0, 0.0};
    cd omega_minus_start{0.0, 0.0};
    std::vector<ScheduleSegment> segments;

    double total_duration() const;
    std::pair<cd, cd> omega_at(double t) const;

    /// Values at the start of segment i (i.e. the previous target).
    std::pair<cd, cd> segment_start_values(std::size_t i) const;
    bool segment_is_hold(std::size_t i) const;

    /// Indices of ramp segments with min Omega_eff * duration < 10
    /// (Omega_eff evaluated with the given collective coupling).
    std::vector<std::size_t> nonadiabatic_segments(double g_sqrt_n) const;

    void validate() const;  ///< throws InvalidInput
};

}  // namespace plab::protocols

#endif
