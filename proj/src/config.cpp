#include "plab/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

#include "plab/errors.hpp"

namespace plab::config {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct RawSection {
    std::map<std::string, std::string> values;
    std::set<std::string> used;
};

struct Raw {
    std::map<std::string, RawSection> sections;  // "" is the top level
    std::vector<ConfigError> errors;

    void error(const std::string& path, const std::string& message) {
        errors.push_back({path, message});
    }

    bool has(const std::string& section) const {
        return sections.count(section) > 0;
    }

    std::string path_of(const std::string& section, const std::string& key) const {
        return section.empty() ? key : section + "." + key;
    }

    const std::string* lookup(const std::string& section, const std::string& key) {
        auto s = sections.find(section);
        if (s == sections.end()) return nullptr;
        auto it = s->second.values.find(key);
        if (it == s->second.values.end()) return nullptr;
        s->second.used.insert(key);
        return &it->second;
    }

    std::optional<double> get_double(const std::string& section, const std::string& key,
                                     bool required, double lo, double hi,
                                     bool lo_strict = false) {
        const std::string* raw = lookup(section, key);
        if (!raw) {
            if (required) error(path_of(section, key), "missing required value");
            return std::nullopt;
        }
        char* end = nullptr;
        const double v = std::strtod(raw->c_str(), &end);
        if (end == raw->c_str() || *end != '\0' || !std::isfinite(v)) {
            error(path_of(section, key), "expected a finite number, got '" + *raw + "'");
            return std::nullopt;
        }
        const bool below = lo_strict ? !(v > lo) : !(v >= lo);
        if (below || v > hi) {
            error(path_of(section, key),
                  "value " + fmt(v) + " out of range " + (lo_strict ? "(" : "[") +
                      fmt(lo) + ", " + fmt(hi) + "]");
            return std::nullopt;
        }
        return v;
    }

    std::optional<long> get_int(const std::string& section, const std::string& key,
                                bool required, long lo, long hi) {
        const std::string* raw = lookup(section, key);
        if (!raw) {
            if (required) error(path_of(section, key), "missing required value");
            return std::nullopt;
        }
        char* end = nullptr;
        const long v = std::strtol(raw->c_str(), &end, 10);
        if (end == raw->c_str() || *end != '\0') {
            error(path_of(section, key), "expected an integer, got '" + *raw + "'");
            return std::nullopt;
        }
        if (v < lo || v > hi) {
            error(path_of(section, key), "value " + std::to_string(v) + " out of range [" +
                                             std::to_string(lo) + ", " +
                                             std::to_string(hi) + "]");
            return std::nullopt;
        }
        return v;
    }

    std::optional<bool> get_bool(const std::string& section, const std::string& key,
                                 bool required) {
        const std::string* raw = lookup(section, key);
        if (!raw) {
            if (required) error(path_of(section, key), "missing required value");
            return std::nullopt;
        }
        if (*raw == "true" || *raw == "1") return true;
        if (*raw == "false" || *raw == "0") return false;
        error(path_of(section, key), "expected true/false, got '" + *raw + "'");
        return std::nullopt;
    }

    std::optional<std::string> get_string(const std::string& section,
                                          const std::string& key, bool required) {
        const std::string* raw = lookup(section, key);
        if (!raw) {
            if (required) error(path_of(section, key), "missing required value");
            return std::nullopt;
        }
        return *raw;
    }

    std::optional<std::vector<double>> get_double_list(const std::string& section,
                                                       const std::string& key,
                                                       bool required) {
        const std::string* raw = lookup(section, key);
        if (!raw) {
            if (required) error(path_of(section, key), "missing required value");
            return std::nullopt;
        }
        std::vector<double> out;
        std::istringstream is(*raw);
        std::string tok;
        while (is >> tok) {
            char* end = nullptr;
            const double v = std::strtod(tok.c_str(), &end);
            if (end == tok.c_str() || *end != '\0' || !std::isfinite(v)) {
                error(path_of(section, key),
                      "expected whitespace-separated numbers, got '" + tok + "'");
                return std::nullopt;
            }
            out.push_back(v);
        }
        return out;
    }

    cd get_complex(const std::string& section, const std::string& stem, bool required,
                   double lo = -1e300, double hi = 1e300) {
        const auto re = get_double(section, stem + "_re", required, lo, hi);
        const auto im = get_double(section, stem + "_im", false, lo, hi);
        return cd(re.value_or(0.0), im.value_or(0.0));
    }

    // flag leftover keys of a consumed section
    void finish_section(const std::string& section) {
        auto s = sections.find(section);
        if (s == sections.end()) return;
        for (const auto& [key, value] : s->second.values)
            if (!s->second.used.count(key))
                error(path_of(section, key), "unknown key");
    }
};

Raw tokenize(const std::string& text) {
    Raw raw;
    raw.sections[""];  // top level always exists
    std::istringstream is(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        // strip comments, then whitespace
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                raw.error("line " + std::to_string(lineno), "malformed section header");
                continue;
            }
            section = trim(line.substr(1, line.size() - 2));
            raw.sections[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            raw.error("line " + std::to_string(lineno),
                      "expected 'key = value', got '" + line + "'");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            raw.error("line " + std::to_string(lineno), "empty key");
            continue;
        }
        auto& sec = raw.sections[section];
        if (sec.values.count(key)) {
            raw.error(raw.path_of(section, key), "duplicate key");
            continue;
        }
        sec.values[key] = value;
    }
    return raw;
}

dualv::ModelParams parse_model(Raw& raw) {
    dualv::ModelParams p;
    p.g_sqrt_n = raw.get_double("model", "g_sqrt_n", true, 0.0, 1e300).value_or(0.0);
    p.omega_plus = raw.get_complex("model", "omega_plus", true);
    p.omega_minus = raw.get_complex("model", "omega_minus", false);
    p.delta_plus = raw.get_double("model", "delta_plus", false, -1e300, 1e300).value_or(0.0);
    p.delta_minus =
        raw.get_double("model", "delta_minus", false, -1e300, 1e300).value_or(0.0);
    p.gamma_plus = raw.get_double("model", "gamma_plus", false, 0.0, 1e300).value_or(0.0);
    p.gamma_minus =
        raw.get_double("model", "gamma_minus", false, 0.0, 1e300).value_or(0.0);
    p.c = raw.get_double("model", "c", false, 0.0, 1e300, true).value_or(1.0);
    raw.finish_section("model");
    return p;
}

Grid1D parse_grid(Raw& raw) {
    Grid1D g;
    g.n_points = static_cast<int>(
        raw.get_int("grid", "n_points", true, 16, 1 << 22).value_or(16));
    g.z_min = raw.get_double("grid", "z_min", true, -1e300, 1e300).value_or(0.0);
    g.z_max = raw.get_double("grid", "z_max", true, -1e300, 1e300).value_or(1.0);
    raw.finish_section("grid");
    if ((g.n_points & (g.n_points - 1)) != 0)
        raw.error("grid.n_points", "must be a power of two");
    if (!(g.z_max > g.z_min)) raw.error("grid.z_max", "must exceed grid.z_min");
    return g;
}

PulseSpec parse_pulse(Raw& raw) {
    PulseSpec p;
    p.center = raw.get_double("pulse", "center", true, -1e300, 1e300).value_or(0.0);
    p.rms_width =
        raw.get_double("pulse", "rms_width", true, 0.0, 1e300, true).value_or(1.0);
    p.carrier_k = raw.get_double("pulse", "carrier_k", false, -1e300, 1e300).value_or(0.0);
    const auto amp_re = raw.get_double("pulse", "amplitude_re", false, -1e300, 1e300);
    const auto amp_im = raw.get_double("pulse", "amplitude_im", false, -1e300, 1e300);
    if (amp_re || amp_im) p.amplitude = cd(amp_re.value_or(0.0), amp_im.value_or(0.0));
    raw.finish_section("pulse");
    return p;
}

protocols::ControlSchedule parse_schedule(Raw& raw, const std::string& section,
                                          const dualv::ModelParams* model) {
    protocols::ControlSchedule s;
    if (model) {
        s.omega_plus_start = model->omega_plus;
        s.omega_minus_start = model->omega_minus;
    }
    const long count = raw.get_int(section, "segment_count", true, 1, 1000).value_or(0);
    cd prev_p = s.omega_plus_start, prev_m = s.omega_minus_start;
    for (long i = 1; i <= count; ++i) {
        const std::string stem = "segment" + std::to_string(i);
        protocols::ScheduleSegment seg;
        seg.duration =
            raw.get_double(section, stem + "_duration", true, 0.0, 1e300, true)
                .value_or(1.0);
        // targets default to the previous values (a hold)
        const auto tp_re = raw.get_double(section, stem + "_omega_plus_re", false,
                                          -1e300, 1e300);
        const auto tp_im = raw.get_double(section, stem + "_omega_plus_im", false,
                                          -1e300, 1e300);
        const auto tm_re = raw.get_double(section, stem + "_omega_minus_re", false,
                                          -1e300, 1e300);
        const auto tm_im = raw.get_double(section, stem + "_omega_minus_im", false,
                                          -1e300, 1e300);
        seg.omega_plus_target = (tp_re || tp_im)
                                    ? cd(tp_re.value_or(0.0), tp_im.value_or(0.0))
                                    : prev_p;
        seg.omega_minus_target = (tm_re || tm_im)
                                     ? cd(tm_re.value_or(0.0), tm_im.value_or(0.0))
                                     : prev_m;
        prev_p = seg.omega_plus_target;
        prev_m = seg.omega_minus_target;
        s.segments.push_back(seg);
    }
    raw.finish_section(section);
    return s;
}

TransformSection parse_transform(Raw& raw) {
    TransformSection t;
    const long na = raw.get_int("transform", "n_a", true, 1, 64).value_or(1);
    const long nb = raw.get_int("transform", "n_b", true, 1, 64).value_or(1);
    const auto re = raw.get_double_list("transform", "v_re", true);
    const auto im = raw.get_double_list("transform", "v_im", false);
    t.self_test = raw.get_bool("transform", "self_test", false).value_or(false);
    t.self_test_cases = static_cast<int>(
        raw.get_int("transform", "self_test_cases", false, 1, 100000).value_or(25));
    raw.finish_section("transform");

    const std::size_t need = static_cast<std::size_t>(na * nb);
    if (re && re->size() != need)
        raw.error("transform.v_re", "expected " + std::to_string(need) +
                                        " row-major entries, got " +
                                        std::to_string(re->size()));
    if (im && im->size() != need)
        raw.error("transform.v_im", "expected " + std::to_string(need) +
                                        " row-major entries, got " +
                                        std::to_string(im->size()));
    t.v = Eigen::MatrixXcd::Zero(na, nb);
    if (re && re->size() == need) {
        for (long r = 0; r < na; ++r)
            for (long c = 0; c < nb; ++c) {
                const std::size_t idx = static_cast<std::size_t>(r * nb + c);
                const double vim = (im && im->size() == need) ? (*im)[idx] : 0.0;
                t.v(r, c) = cd((*re)[idx], vim);
            }
    }
    return t;
}

const std::set<std::string>& allowed_sections(Mode mode, ScenarioType type) {
    static const std::set<std::string> transform_s = {"", "transform"};
    static const std::set<std::string> dispersion_s = {"", "model", "dispersion"};
    static const std::set<std::string> propagate_s = {"", "model", "grid", "pulse",
                                                      "propagate"};
    static const std::set<std::string> scenario_s = {"", "model", "grid", "pulse",
                                                     "scenario", "schedule"};
    static const std::set<std::string> roundtrip_s = {
        "", "model", "grid", "pulse", "scenario", "schedule", "retrieval_schedule"};
    switch (mode) {
        case Mode::transform: return transform_s;
        case Mode::dispersion: return dispersion_s;
        case Mode::propagate: return propagate_s;
        case Mode::scenario: break;
    }
    return (type == ScenarioType::roundtrip) ? roundtrip_s : scenario_s;
}

}  // namespace

std::string mode_name(Mode mode) {
    switch (mode) {
        case Mode::transform: return "transform";
        case Mode::dispersion: return "dispersion";
        case Mode::propagate: return "propagate";
        case Mode::scenario: return "scenario";
    }
    return "?";
}

std::optional<Mode> mode_from_name(const std::string& name) {
    if (name == "transform") return Mode::transform;
    if (name == "dispersion") return Mode::dispersion;
    if (name == "propagate") return Mode::propagate;
    if (name == "scenario") return Mode::scenario;
    return std::nullopt;
}

ParseResult parse_config(const std::string& text) {
    Raw raw = tokenize(text);
    RunConfig cfg;

    const auto mode_str = raw.get_string("", "mode", true);
    if (mode_str) {
        const auto m = mode_from_name(*mode_str);
        if (!m)
            raw.error("mode", "unknown mode '" + *mode_str +
                                  "' (transform|dispersion|propagate|scenario)");
        else
            cfg.mode = *m;
    }
    cfg.seed = static_cast<unsigned long>(
        raw.get_int("", "seed", false, 0, 0x7fffffffL).value_or(0));
    cfg.output_dir = raw.get_string("", "output_dir", false).value_or("out");
    raw.finish_section("");

    if (!mode_str || !mode_from_name(*mode_str)) {
        // cannot know which sections apply; stop after reporting top-level issues
        return {std::nullopt, raw.errors};
    }

    // scenario type first, because it widens the allowed sections
    ScenarioType type = ScenarioType::custom;
    if (cfg.mode == Mode::scenario) {
        ScenarioSection sc;
        const auto type_str = raw.get_string("scenario", "type", true);
        if (type_str) {
            if (*type_str == "storage")
                sc.type = ScenarioType::storage;
            else if (*type_str == "retrieval")
                sc.type = ScenarioType::retrieval;
            else if (*type_str == "roundtrip")
                sc.type = ScenarioType::roundtrip;
            else if (*type_str == "custom")
                sc.type = ScenarioType::custom;
            else
                raw.error("scenario.type",
                          "unknown type '" + *type_str +
                              "' (storage|retrieval|roundtrip|custom)");
        }
        sc.snapshot_count = static_cast<int>(
            raw.get_int("scenario", "snapshot_count", false, 2, 100000).value_or(81));
        raw.finish_section("scenario");
        cfg.scenario = sc;
        type = sc.type;
    }

    const auto& allowed = allowed_sections(cfg.mode, type);
    for (const auto& [name, sec] : raw.sections) {
        (void)sec;
        if (!allowed.count(name))
            raw.error(name.empty() ? "(top level)" : name,
                      "section not used by mode '" + mode_name(cfg.mode) + "'");
    }

    const bool needs_model = cfg.mode != Mode::transform;
    if (needs_model) {
        if (!raw.has("model")) {
            raw.error("model", "missing required section");
        } else {
            cfg.model = parse_model(raw);
            try {
                cfg.model->validate();
            } catch (const InvalidInput& e) {
                raw.error("model", e.what());
            }
            // modes that build the dark polariton need a nondegenerate control
            const bool needs_angles =
                cfg.mode == Mode::dispersion || cfg.mode == Mode::propagate ||
                (cfg.mode == Mode::scenario && type != ScenarioType::retrieval);
            if (needs_angles && cfg.model->omega_sq() <= 0.0)
                raw.error("model", "degenerate control fields: Omega+ and Omega- "
                                   "must not both vanish in mode '" +
                                       mode_name(cfg.mode) + "'");
        }
    }

    switch (cfg.mode) {
        case Mode::transform: {
            if (!raw.has("transform"))
                raw.error("transform", "missing required section");
            else
                cfg.transform = parse_transform(raw);
            break;
        }
        case Mode::dispersion: {
            if (!raw.has("dispersion")) {
                raw.error("dispersion", "missing required section");
                break;
            }
            DispersionSection d;
            d.k_min = raw.get_double("dispersion", "k_min", true, -1e300, 1e300)
                          .value_or(0.0);
            d.k_max = raw.get_double("dispersion", "k_max", true, -1e300, 1e300)
                          .value_or(0.0);
            d.n_k = static_cast<int>(
                raw.get_int("dispersion", "n_k", true, 2, 1000000).value_or(2));
            raw.finish_section("dispersion");
            if (!(d.k_min < d.k_max))
                raw.error("dispersion.k_max", "must exceed dispersion.k_min");
            cfg.dispersion = d;
            break;
        }
        case Mode::propagate: {
            if (raw.has("grid")) cfg.grid = parse_grid(raw);
            else raw.error("grid", "missing required section");
            if (raw.has("pulse")) cfg.pulse = parse_pulse(raw);
            else raw.error("pulse", "missing required section");
            if (!raw.has("propagate")) {
                raw.error("propagate", "missing required section");
                break;
            }
            PropagateSection pr;
            pr.t_final = raw.get_double("propagate", "t_final", true, 0.0, 1e300, true)
                             .value_or(1.0);
            const auto dt = raw.get_double("propagate", "dt", false, 0.0, 1e300, true);
            if (dt) pr.dt = *dt;
            pr.snapshot_count = static_cast<int>(
                raw.get_int("propagate", "snapshot_count", false, 2, 100000)
                    .value_or(11));
            pr.compare_effective =
                raw.get_bool("propagate", "compare_effective", false).value_or(false);
            raw.finish_section("propagate");
            cfg.propagate = pr;
            break;
        }
        case Mode::scenario: {
            if (raw.has("grid")) cfg.grid = parse_grid(raw);
            else raw.error("grid", "missing required section");
            if (raw.has("pulse")) cfg.pulse = parse_pulse(raw);
            else raw.error("pulse", "missing required section");
            if (raw.has("schedule"))
                cfg.schedule = parse_schedule(raw, "schedule",
                                              cfg.model ? &*cfg.model : nullptr);
            else
                raw.error("schedule", "missing required section");
            if (type == ScenarioType::roundtrip) {
                if (raw.has("retrieval_schedule")) {
                    // retrieval always restarts from switched-off controls
                    dualv::ModelParams off = cfg.model.value_or(dualv::ModelParams{});
                    off.omega_plus = off.omega_minus = cd(0.0, 0.0);
                    cfg.retrieval_schedule =
                        parse_schedule(raw, "retrieval_schedule", &off);
                } else {
                    raw.error("retrieval_schedule",
                              "missing required section for scenario type 'roundtrip'");
                }
            }
            if (type == ScenarioType::retrieval && cfg.model &&
                cfg.model->omega_sq() > 0.0)
                raw.error("model",
                          "retrieval starts from switched-off controls; set "
                          "omega_plus = omega_minus = 0");
            break;
        }
    }

    // pulse support must sit inside the grid
    if (cfg.pulse && cfg.grid) {
        try {
            cfg.pulse->validate(*cfg.grid);
        } catch (const InvalidInput& e) {
            raw.error("pulse", e.what());
        }
    }
    if (cfg.schedule) {
        try {
            cfg.schedule->validate();
        } catch (const InvalidInput& e) {
            raw.error("schedule", e.what());
        }
    }
    if (cfg.retrieval_schedule) {
        try {
            cfg.retrieval_schedule->validate();
        } catch (const InvalidInput& e) {
            raw.error("retrieval_schedule", e.what());
        }
    }

    if (!raw.errors.empty()) return {std::nullopt, raw.errors};
    return {cfg, {}};
}

namespace {

void emit_complex(std::ostringstream& os, const std::string& stem, cd v) {
    os << stem << "_re = " << fmt(v.real()) << "\n";
    os << stem << "_im = " << fmt(v.imag()) << "\n";
}

void emit_schedule(std::ostringstream& os, const std::string& name,
                   const protocols::ControlSchedule& s) {
    os << "\n[" << name << "]\n";
    os << "segment_count = " << s.segments.size() << "\n";
    for (std::size_t i = 0; i < s.segments.size(); ++i) {
        const std::string stem = "segment" + std::to_string(i + 1);
        os << stem << "_duration = " << fmt(s.segments[i].duration) << "\n";
        emit_complex(os, stem + "_omega_plus", s.segments[i].omega_plus_target);
        emit_complex(os, stem + "_omega_minus", s.segments[i].omega_minus_target);
    }
}

}  // namespace

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream os;
    os << "mode = " << mode_name(cfg.mode) << "\n";
    os << "seed = " << cfg.seed << "\n";
    os << "output_dir = " << cfg.output_dir << "\n";

    if (cfg.model) {
        os << "\n[model]\n";
        os << "g_sqrt_n = " << fmt(cfg.model->g_sqrt_n) << "\n";
        emit_complex(os, "omega_plus", cfg.model->omega_plus);
        emit_complex(os, "omega_minus", cfg.model->omega_minus);
        os << "delta_plus = " << fmt(cfg.model->delta_plus) << "\n";
        os << "delta_minus = " << fmt(cfg.model->delta_minus) << "\n";
        os << "gamma_plus = " << fmt(cfg.model->gamma_plus) << "\n";
        os << "gamma_minus = " << fmt(cfg.model->gamma_minus) << "\n";
        os << "c = " << fmt(cfg.model->c) << "\n";
    }
    if (cfg.grid) {
        os << "\n[grid]\n";
        os << "n_points = " << cfg.grid->n_points << "\n";
        os << "z_min = " << fmt(cfg.grid->z_min) << "\n";
        os << "z_max = " << fmt(cfg.grid->z_max) << "\n";
    }
    if (cfg.pulse) {
        os << "\n[pulse]\n";
        os << "center = " << fmt(cfg.pulse->center) << "\n";
        os << "rms_width = " << fmt(cfg.pulse->rms_width) << "\n";
        os << "carrier_k = " << fmt(cfg.pulse->carrier_k) << "\n";
        emit_complex(os, "amplitude", cfg.pulse->amplitude);
    }
    if (cfg.dispersion) {
        os << "\n[dispersion]\n";
        os << "k_min = " << fmt(cfg.dispersion->k_min) << "\n";
        os << "k_max = " << fmt(cfg.dispersion->k_max) << "\n";
        os << "n_k = " << cfg.dispersion->n_k << "\n";
    }
    if (cfg.propagate) {
        os << "\n[propagate]\n";
        os << "t_final = " << fmt(cfg.propagate->t_final) << "\n";
        if (cfg.propagate->dt) os << "dt = " << fmt(*cfg.propagate->dt) << "\n";
        os << "snapshot_count = " << cfg.propagate->snapshot_count << "\n";
        os << "compare_effective = "
           << (cfg.propagate->compare_effective ? "true" : "false") << "\n";
    }
    if (cfg.scenario) {
        os << "\n[scenario]\n";
        const char* t = "custom";
        switch (cfg.scenario->type) {
            case ScenarioType::storage: t = "storage"; break;
            case ScenarioType::retrieval: t = "retrieval"; break;
            case ScenarioType::roundtrip: t = "roundtrip"; break;
            case ScenarioType::custom: t = "custom"; break;
        }
        os << "type = " << t << "\n";
        os << "snapshot_count = " << cfg.scenario->snapshot_count << "\n";
    }
    if (cfg.schedule) emit_schedule(os, "schedule", *cfg.schedule);
    if (cfg.retrieval_schedule)
        emit_schedule(os, "retrieval_schedule", *cfg.retrieval_schedule);
    if (cfg.transform) {
        os << "\n[transform]\n";
        os << "n_a = " << cfg.transform->v.rows() << "\n";
        os << "n_b = " << cfg.transform->v.cols() << "\n";
        os << "v_re =";
        for (Eigen::Index r = 0; r < cfg.transform->v.rows(); ++r)
            for (Eigen::Index c = 0; c < cfg.transform->v.cols(); ++c)
                os << " " << fmt(cfg.transform->v(r, c).real());
        os << "\n";
        os << "v_im =";
        for (Eigen::Index r = 0; r < cfg.transform->v.rows(); ++r)
            for (Eigen::Index c = 0; c < cfg.transform->v.cols(); ++c)
                os << " " << fmt(cfg.transform->v(r, c).imag());
        os << "\n";
        os << "self_test = " << (cfg.transform->self_test ? "true" : "false") << "\n";
        os << "self_test_cases = " << cfg.transform->self_test_cases << "\n";
    }
    return os.str();
}

}  // namespace plab::config
