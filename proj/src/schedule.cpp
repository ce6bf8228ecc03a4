#include "plab/schedule.hpp"

#include <cmath>

#include "plab/errors.hpp"

namespace plab::protocols {

double ControlSchedule::total_duration() const {
    double t = 0.0;
    for (const auto& s : segments) t += s.duration;
    return t;
}

std::pair<cd, cd> ControlSchedule::segment_start_values(std::size_t i) const {
    if (i == 0) return {omega_plus_start, omega_minus_start};
    return {segments[i - 1].omega_plus_target, segments[i - 1].omega_minus_target};
}

bool ControlSchedule::segment_is_hold(std::size_t i) const {
    const auto [p0, m0] = segment_start_values(i);
    return p0 == segments[i].omega_plus_target && m0 == segments[i].omega_minus_target;
}

std::pair<cd, cd> ControlSchedule::omega_at(double t) const {
    cd p = omega_plus_start, m = omega_minus_start;
    double t0 = 0.0;
    for (const auto& seg : segments) {
        if (t <= t0 + seg.duration || &seg == &segments.back()) {
            const double s =
                std::clamp((t - t0) / std::max(seg.duration, 1e-300), 0.0, 1.0);
            const double r = 0.5 * (1.0 - std::cos(M_PI * s));  // raised cosine
            return {p + (seg.omega_plus_target - p) * r,
                    m + (seg.omega_minus_target - m) * r};
        }
        p = seg.omega_plus_target;
        m = seg.omega_minus_target;
        t0 += seg.duration;
    }
    return {p, m};
}

std::vector<std::size_t> ControlSchedule::nonadiabatic_segments(
    double g_sqrt_n) const {
    std::vector<std::size_t> flagged;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (segment_is_hold(i)) continue;
        const auto [p0, m0] = segment_start_values(i);
        const auto& seg = segments[i];
        // min Omega_eff along a raised-cosine ramp is attained at an endpoint
        const double o2_begin = std::norm(p0) + std::norm(m0);
        const double o2_end =
            std::norm(seg.omega_plus_target) + std::norm(seg.omega_minus_target);
        const double om_eff = std::sqrt(g_sqrt_n * g_sqrt_n + std::min(o2_begin, o2_end));
        if (om_eff > 0.0 && om_eff * seg.duration < 10.0) flagged.push_back(i);
    }
    return flagged;
}

void ControlSchedule::validate() const {
    if (segments.empty()) throw InvalidInput("schedule: needs at least one segment");
    auto finite = [](cd v) {
        return std::isfinite(v.real()) && std::isfinite(v.imag());
    };
    if (!finite(omega_plus_start) || !finite(omega_minus_start))
        throw InvalidInput("schedule: start values must be finite");
    for (const auto& s : segments) {
        if (!(s.duration > 0.0) || !std::isfinite(s.duration))
            throw InvalidInput("schedule: segment durations must be > 0");
        if (!finite(s.omega_plus_target) || !finite(s.omega_minus_target))
            throw InvalidInput("schedule: segment targets must be finite");
    }
}

}  // namespace plab::protocols
