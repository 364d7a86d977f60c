#include "heliox/io/config.hpp"

#include <fstream>
#include <sstream>

namespace heliox::io {

namespace {

OptionSpec num(double v, const char* help, bool sweepable = false) {
    return OptionSpec{OptionSpec::Type::number, json(v), sweepable, help};
}
OptionSpec integer(int v, const char* help) {
    return OptionSpec{OptionSpec::Type::integer, json(v), false, help};
}
OptionSpec boolean(bool v, const char* help) {
    return OptionSpec{OptionSpec::Type::boolean, json(v), false, help};
}
OptionSpec text(const char* v, const char* help) {
    return OptionSpec{OptionSpec::Type::string, json(v), false, help};
}

Schema dft_common() {
    return {
        {"scattering_length_nm", num(0.104, "electron-helium s-wave scattering length")},
        {"grid_rmax_nm", num(8.0, "radial box size")},
        {"grid_points", integer(2048, "radial grid points")},
        {"relax_tolerance", num(1e-8, "stationarity residual target, 1/fs")},
        {"max_iterations", integer(50000, "imaginary-time iteration cap")},
        {"seed_radius_nm", num(1.6, "initial hole radius of the relaxation seed")},
    };
}

Schema pulse_common(double w_fs, double e_vpernm) {
    return {
        {"pulse_W_fs", num(w_fs, "FWHM of the E^2 envelope")},
        {"pulse_E_VperNm", num(e_vpernm, "peak field strength")},
        {"carrier_eV", num(0.0, "drive photon energy; 0 selects resonance")},
        {"dt_fs", num(0.0, "integrator step; 0 selects carrier period / 48")},
        {"window_widths", num(2.5, "half window in units of the pulse width")},
        {"output_stride", integer(4, "steps between recorded samples")},
        {"initial_1p_fraction", num(0.0, "initial |1P|^2 weight of a 1S/1P superposition")},
        {"theta1", num(0.0, "1S phase of the initial superposition")},
        {"theta2", num(0.0, "1P phase of the initial superposition")},
        {"l_max", integer(3, "largest angular momentum in the level table")},
        {"n_max", integer(3, "radial levels per l in the level table")},
    };
}

Schema build_schema(const std::string& scenario) {
    Schema s;
    auto append = [&](Schema extra) {
        for (auto& kv : extra) s.push_back(std::move(kv));
    };
    if (scenario == "eos") {
        s.push_back({"pressure_bar", num(0.0, "ambient pressure", true)});
        s.push_back({"scattering_length_nm",
                     num(0.104, "electron-helium s-wave scattering length")});
    } else if (scenario == "bubble") {
        s.push_back({"pressure_bar", num(25.0, "ambient pressure", true)});
        append(dft_common());
    } else if (scenario == "spectrum") {
        s.push_back({"pressure_bar", num(25.0, "ambient pressure", true)});
        append(dft_common());
        s.push_back({"l_max", integer(3, "largest angular momentum")});
        s.push_back({"n_max", integer(3, "radial levels per l")});
    } else if (scenario == "drive") {
        s.push_back({"pressure_bar", num(25.0, "ambient pressure")});
        append(dft_common());
        append(pulse_common(100.0, 0.1));
        s.push_back({"figure_id", text("fig3a", "output contract: fig3a, fig3b or fig3c")});
    } else if (scenario == "two-photon") {
        s.push_back({"pressure_bar", num(25.0, "ambient pressure")});
        append(dft_common());
        append(pulse_common(200.0, 0.05));
    } else if (scenario == "cavity") {
        s.push_back({"transition_eV", num(0.125, "prolate 1S -> 1P transition energy")});
        s.push_back({"g_GHz", num(3.81, "coupling; g = 2 pi x this value")});
        s.push_back({"kappa_GHz", num(0.02, "cavity photon loss rate")});
        s.push_back({"gamma_r_MHz", num(0.22, "radiative decay rate")});
        s.push_back({"cavity_detuning_GHz", num(0.0, "omega_c offset, cyclic")});
        s.push_back({"photon_dim", integer(2, "cavity truncation")});
        s.push_back({"t_end_ps", num(500.0, "simulated span")});
        s.push_back({"dt_fs", num(0.0, "step; 0 selects the guard bound")});
        s.push_back({"output_stride", integer(40, "steps between samples")});
        s.push_back({"rotating_frame", boolean(false, "RWA fast path")});
    } else if (scenario == "entangle") {
        s.push_back({"transition_eV", num(0.125, "prolate 1S -> 1P transition energy")});
        s.push_back({"g_alpha_GHz", num(3.81, "bubble alpha coupling; g = 2 pi x value")});
        s.push_back({"g_beta_GHz", num(3.81, "bubble beta coupling; g = 2 pi x value")});
        s.push_back({"kappa_GHz", num(0.02, "cavity photon loss rate")});
        s.push_back({"gamma_r_MHz", num(0.22, "radiative decay rate per bubble")});
        s.push_back({"gamma_nr_GHz", num(0.1, "non-radiative decay rate per bubble")});
        s.push_back({"photon_dim", integer(2, "cavity truncation")});
        s.push_back({"excite_beta", boolean(false, "start with bubble beta excited")});
        s.push_back({"t_end_ns", num(1.0, "simulated span")});
        s.push_back({"dt_fs", num(0.0, "step; 0 selects the guard bound")});
        s.push_back({"output_stride", integer(1, "steps between samples")});
        s.push_back({"rotating_frame", boolean(true, "RWA fast path; ns timescales")});
        s.push_back({"coupling_weighted_projectors",
                     boolean(false, "project on coupling-weighted bright/dark states")});
        s.push_back({"figure_id", text("fig5a", "output contract: fig5a or fig5b")});
    } else if (scenario == "expand2s") {
        s.push_back({"pressure_bar", num(25.0, "ambient pressure")});
        append(dft_common());
        // realtime stiffness scales with grid_points^2; the default trades
        // radial resolution for a 4x larger stable step
        for (auto& [key, spec] : s)
            if (key == "grid_points") spec.default_value = 1024;
        s.push_back({"t_end_ps", num(30.0, "simulated span")});
        s.push_back({"dt_fs", num(0.2, "split-step size")});
        s.push_back({"output_every", integer(250, "steps between samples")});
        s.push_back({"absorber_enabled", boolean(true, "damp outgoing sound near r_max")});
        s.push_back({"absorber_strength_eV", num(3e-3, "absorbing layer amplitude")});
        s.push_back({"absorber_start_fraction", num(0.8, "absorbing layer onset")});
        s.push_back({"high_k_filter", boolean(true, "damp unresolved grid-scale phonons")});
        s.push_back({"filter_strength", num(0.02, "hyperdiffusion strength")});
        s.push_back({"occupied_nr", integer(1, "tracked level: radial node count")});
        s.push_back({"occupied_l", integer(0, "tracked level: angular momentum")});
    } else {
        throw ValidationError("unknown scenario: " + scenario);
    }
    return s;
}

} // namespace

const Schema& schema_for(const std::string& scenario) {
    static std::map<std::string, Schema> cache;
    auto it = cache.find(scenario);
    if (it == cache.end()) it = cache.emplace(scenario, build_schema(scenario)).first;
    return it->second;
}

json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file: " + path);
    try {
        return json::parse(in);
    } catch (const std::exception& e) {
        throw ValidationError(std::string("config parse error: ") + e.what());
    }
}

bool is_sweep(const json& value) {
    return value.is_object() && value.contains("start") && value.contains("stop") &&
           value.contains("count");
}

Sweep parse_sweep(const json& value) {
    if (!is_sweep(value) || value.size() != 3)
        throw ValidationError("sweep must be {\"start\":..,\"stop\":..,\"count\":..}");
    Sweep s;
    s.start = value.at("start").get<double>();
    s.stop = value.at("stop").get<double>();
    s.count = value.at("count").get<int>();
    if (s.count < 1) throw ValidationError("sweep count must be >= 1");
    return s;
}

std::vector<double> Sweep::points() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        out.push_back(count == 1 ? start
                                 : start + (stop - start) * i / double(count - 1));
    return out;
}

std::vector<double> sweep_points(const json& resolved, const std::string& key) {
    const json& v = resolved.at(key);
    if (v.is_number()) return {v.get<double>()};
    return parse_sweep(v).points();
}

namespace {

void check_type(const std::string& key, const OptionSpec& spec, const json& value) {
    switch (spec.type) {
    case OptionSpec::Type::number:
        if (value.is_number()) return;
        if (spec.sweepable && is_sweep(value)) {
            parse_sweep(value);
            return;
        }
        throw ValidationError("config key '" + key + "' must be a number" +
                              (spec.sweepable ? " or a {start,stop,count} sweep" : ""));
    case OptionSpec::Type::integer:
        if (value.is_number_integer()) return;
        throw ValidationError("config key '" + key + "' must be an integer");
    case OptionSpec::Type::boolean:
        if (value.is_boolean()) return;
        throw ValidationError("config key '" + key + "' must be a boolean");
    case OptionSpec::Type::string:
        if (value.is_string()) return;
        throw ValidationError("config key '" + key + "' must be a string");
    }
}

json parse_override(const OptionSpec& spec, const std::string& text) {
    try {
        switch (spec.type) {
        case OptionSpec::Type::number: {
            if (!text.empty() && text.front() == '{') return json::parse(text);
            std::size_t used = 0;
            const double v = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return json(v);
        }
        case OptionSpec::Type::integer:
            return json(std::stoi(text));
        case OptionSpec::Type::boolean:
            if (text == "true" || text == "1") return json(true);
            if (text == "false" || text == "0") return json(false);
            throw std::invalid_argument(text);
        case OptionSpec::Type::string:
            return json(text);
        }
    } catch (const ValidationError&) {
        throw;
    } catch (const std::exception&) {
        throw ValidationError("cannot parse override value '" + text + "'");
    }
    return {};
}

} // namespace

json resolve_config(const std::string& scenario, const json& file_config,
                    const std::vector<std::pair<std::string, std::string>>& overrides) {
    const Schema& schema = schema_for(scenario);
    auto find = [&](const std::string& key) -> const OptionSpec* {
        for (const auto& [k, spec] : schema)
            if (k == key) return &spec;
        return nullptr;
    };

    if (!file_config.is_null() && !file_config.is_object())
        throw ValidationError("config must be a JSON object");
    if (!file_config.is_null())
        for (const auto& [key, value] : file_config.items()) {
            const OptionSpec* spec = find(key);
            if (!spec)
                throw ValidationError("unknown config key '" + key + "' for scenario " +
                                      scenario);
            check_type(key, *spec, value);
        }

    json resolved = json::object();
    for (const auto& [key, spec] : schema) {
        if (!file_config.is_null() && file_config.contains(key))
            resolved[key] = file_config.at(key);
        else
            resolved[key] = spec.default_value;
    }
    for (const auto& [key, text] : overrides) {
        const OptionSpec* spec = find(key);
        if (!spec)
            throw ValidationError("unknown option '" + key + "' for scenario " + scenario);
        json value = parse_override(*spec, text);
        check_type(key, *spec, value);
        resolved[key] = std::move(value);
    }
    return resolved;
}

} // namespace heliox::io
