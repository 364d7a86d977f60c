#include "heliox/io/run.hpp"

#include "heliox/dft/bubble.hpp"
#include "heliox/dft/eos.hpp"
#include "heliox/dft/realtime.hpp"
#include "heliox/dft/spectrum.hpp"
#include "heliox/io/csv.hpp"
#include "heliox/scenarios/analytics.hpp"
#include "heliox/scenarios/cavity.hpp"
#include "heliox/scenarios/driven.hpp"
#include "heliox/scenarios/level_table.hpp"
#include "heliox/units.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace heliox::io {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct SweepRunner {
    // share-nothing parallel map over sweep points; results keep sweep order
    template <class F>
    static void map(int workers, int count, F&& body) {
        std::exception_ptr first_error;
#ifdef _OPENMP
#pragma omp parallel for num_threads(workers) schedule(dynamic, 1)
#endif
        for (int i = 0; i < count; ++i) {
            try {
                body(i);
            } catch (...) {
#ifdef _OPENMP
#pragma omp critical(heliox_sweep_error)
#endif
                {
                    if (!first_error) first_error = std::current_exception();
                }
            }
        }
        (void)workers;
        if (first_error) std::rethrow_exception(first_error);
    }
};

int effective_workers(int requested, int count) {
    int w = requested > 0 ? requested : par::max_threads();
    return std::max(1, std::min(w, count));
}

dft::RadialGrid grid_from(const json& cfg) {
    return dft::RadialGrid(cfg.at("grid_rmax_nm").get<double>(),
                           cfg.at("grid_points").get<int>());
}

dft::RelaxOptions relax_options_from(const json& cfg) {
    dft::RelaxOptions o;
    o.tolerance = cfg.at("relax_tolerance").get<double>();
    o.max_iterations = cfg.at("max_iterations").get<int>();
    o.seed_radius_nm = cfg.at("seed_radius_nm").get<double>();
    return o;
}

// level table of the relaxed ground bubble at one pressure
scenarios::LevelTable table_at(const dft::DftParams& params, const json& cfg,
                               dft::BubbleProfile* profile_out = nullptr) {
    const dft::RadialGrid grid = grid_from(cfg);
    auto profile = dft::relax_bubble(params, grid, cfg.at("pressure_bar").get<double>(),
                                     relax_options_from(cfg));
    auto levels = dft::electron_spectrum(params, profile, cfg.at("l_max").get<int>(),
                                         cfg.at("n_max").get<int>());
    if (profile_out) *profile_out = std::move(profile);
    return scenarios::LevelTable::from_bound_levels(levels);
}

json series_scalars(const scenarios::ScenarioResult& result) {
    json out = json::object();
    for (const auto& [k, v] : result.scalars) out[k] = v;
    return out;
}

// ---- per-scenario handlers -------------------------------------------------

json run_eos(const dft::DftParams& params, const json& cfg, const std::string& out_dir,
             int workers) {
    const std::vector<double> pressures = sweep_points(cfg, "pressure_bar");
    Table t{figure_columns("eos"), {}};
    t.rows.resize(pressures.size());
    SweepRunner::map(effective_workers(workers, static_cast<int>(pressures.size())),
                     static_cast<int>(pressures.size()), [&](int i) {
                         const auto bulk = dft::solve_bulk_eos(params, pressures[i]);
                         t.rows[i] = {pressures[i], bulk.n_nm3, bulk.mu_eV,
                                      dft::barrier_height_eV(params, bulk.n_nm3)};
                     });
    emit_figure_data(out_dir, "eos", t);
    json results;
    results["n_bulk_nm3"] = t.rows.back()[1];
    results["mu_eV"] = t.rows.back()[2];
    results["U_eV"] = t.rows.back()[3];
    results["points"] = pressures.size();
    return results;
}

json run_bubble(const dft::DftParams& params, const json& cfg, const std::string& out_dir,
                int workers) {
    const std::vector<double> pressures = sweep_points(cfg, "pressure_bar");
    const dft::RadialGrid grid = grid_from(cfg);
    const dft::RelaxOptions opts = relax_options_from(cfg);
    Table t{figure_columns("fig1c"), {}};
    t.rows.resize(pressures.size());
    std::vector<json> diag(pressures.size());
    SweepRunner::map(effective_workers(workers, static_cast<int>(pressures.size())),
                     static_cast<int>(pressures.size()), [&](int i) {
                         auto prof = dft::relax_bubble(params, grid, pressures[i], opts);
                         t.rows[i] = {pressures[i], prof.radius_nm.value_or(kNaN),
                                      prof.barrier_eV};
                         json d;
                         d["iterations"] = prof.iterations;
                         d["residual_helium_perfs"] = prof.residual_helium;
                         d["residual_electron_perfs"] = prof.residual_electron;
                         d["energy_monotone"] = prof.energy_monotone;
                         d["grand_energy_eV"] = prof.grand_energy_eV;
                         diag[i] = std::move(d);
                     });
    emit_figure_data(out_dir, "fig1c", t);
    json results;
    results["R_nm"] = t.rows.back()[1];
    results["U_eV"] = t.rows.back()[2];
    results["convergence"] = diag.back();
    results["points"] = pressures.size();
    return results;
}

json run_spectrum(const dft::DftParams& params, const json& cfg,
                  const std::string& out_dir, int workers) {
    const std::vector<double> pressures = sweep_points(cfg, "pressure_bar");
    const dft::RadialGrid grid = grid_from(cfg);
    const dft::RelaxOptions opts = relax_options_from(cfg);
    const int l_max = cfg.at("l_max").get<int>(), n_max = cfg.at("n_max").get<int>();

    Table sweep{figure_columns("sweep"), {}};
    Table f2a{figure_columns("fig2a"), {}};
    Table f2b{figure_columns("fig2b"), {}};
    sweep.rows.resize(pressures.size());
    f2a.rows.resize(pressures.size());
    f2b.rows.resize(pressures.size());

    SweepRunner::map(
        effective_workers(workers, static_cast<int>(pressures.size())),
        static_cast<int>(pressures.size()), [&](int i) {
            auto prof = dft::relax_bubble(params, grid, pressures[i], opts);
            auto levels = dft::electron_spectrum(params, prof, l_max, n_max);
            auto find = [&](const char* label) -> const dft::ElectronLevel* {
                for (const auto& lv : levels)
                    if (lv.label() == label) return &lv;
                return nullptr;
            };
            const auto *s1 = find("1S"), *p1 = find("1P"), *s2 = find("2S");
            double e1s = s1 ? s1->energy_eV : kNaN;
            double e1p = p1 ? p1->energy_eV : kNaN;
            double e2s = s2 ? s2->energy_eV : kNaN;
            double l1s1p = kNaN, l1p2s = kNaN, l2ph = kNaN, d1s1p = kNaN;
            if (s1 && p1) {
                auto d = dft::transition_dipole(*s1, *p1);
                l1s1p = d.lambda_um;
                d1s1p = d.d_enm;
            }
            if (p1 && s2) l1p2s = dft::transition_dipole(*p1, *s2).lambda_um;
            if (s1 && s2)
                l2ph = units::energy_to_wavelength_um(0.5 * (e2s - e1s));
            sweep.rows[i] = {pressures[i], prof.n_bulk_nm3, prof.mu_eV, prof.barrier_eV,
                             prof.radius_nm.value_or(kNaN), e1s, e1p, e2s, l1s1p, l2ph,
                             d1s1p};
            f2a.rows[i] = {pressures[i], e1s, e1p, e2s, prof.barrier_eV};
            f2b.rows[i] = {pressures[i], l1s1p, l1p2s, l2ph};
        });
    write_csv(out_dir + "/sweep.csv", sweep);
    emit_figure_data(out_dir, "fig2a", f2a);
    emit_figure_data(out_dir, "fig2b", f2b);

    const auto& last = sweep.rows.back();
    json results;
    results["R_nm"] = last[4];
    results["U_eV"] = last[3];
    results["E_1S_eV"] = last[5];
    results["E_1P_eV"] = last[6];
    results["E_2S_eV"] = last[7];
    results["lambda_1S1P_um"] = last[8];
    results["d_1S1P_enm"] = last[10];
    results["points"] = pressures.size();
    return results;
}

json run_drive(const dft::DftParams& params, const json& cfg, const std::string& out_dir) {
    const std::string figure = cfg.at("figure_id").get<std::string>();
    if (figure != "fig3a" && figure != "fig3b" && figure != "fig3c")
        throw ValidationError("drive: figure_id must be fig3a, fig3b or fig3c");
    scenarios::LevelTable table = table_at(params, cfg);

    scenarios::DrivenPulseParams pulse;
    pulse.width_fs = cfg.at("pulse_W_fs").get<double>();
    pulse.field_VperNm = cfg.at("pulse_E_VperNm").get<double>();
    if (cfg.at("carrier_eV").get<double>() > 0.0)
        pulse.carrier_radfs = units::omega_radfs_from_eV(cfg.at("carrier_eV").get<double>());
    pulse.dt_fs = cfg.at("dt_fs").get<double>();
    pulse.window_widths = cfg.at("window_widths").get<double>();
    pulse.output_stride = cfg.at("output_stride").get<int>();
    pulse.initial_1p_fraction = cfg.at("initial_1p_fraction").get<double>();
    pulse.theta1 = cfg.at("theta1").get<double>();
    pulse.theta2 = cfg.at("theta2").get<double>();

    auto result = scenarios::run_driven_bubble(table, pulse);

    lindblad::DriveEnvelope env;
    env.peak_VperNm = pulse.field_VperNm;
    env.carrier_radfs = result.scalars.at("carrier_radfs");
    env.width_fs = pulse.width_fs;
    Table t{figure_columns(figure), {}};
    const auto& ts = result.series;
    for (std::size_t i = 0; i < ts.times_fs.size(); ++i)
        t.add_row({ts.times_fs[i], env.field(ts.times_fs[i]), ts.column("pop_1S")[i],
                   ts.column("pop_1P")[i], ts.column("leakage")[i]});
    emit_figure_data(out_dir, figure, t);
    return series_scalars(result);
}

json run_two_photon(const dft::DftParams& params, const json& cfg,
                    const std::string& out_dir) {
    scenarios::LevelTable table = table_at(params, cfg);

    scenarios::DrivenPulseParams pulse;
    pulse.width_fs = cfg.at("pulse_W_fs").get<double>();
    pulse.field_VperNm = cfg.at("pulse_E_VperNm").get<double>();
    if (cfg.at("carrier_eV").get<double>() > 0.0)
        pulse.carrier_radfs = units::omega_radfs_from_eV(cfg.at("carrier_eV").get<double>());
    pulse.dt_fs = cfg.at("dt_fs").get<double>();
    pulse.window_widths = cfg.at("window_widths").get<double>();
    pulse.output_stride = cfg.at("output_stride").get<int>();

    auto result = scenarios::run_two_photon(table, pulse);

    Table t{figure_columns("fig6a"), {}};
    const auto& ts = result.series;
    for (std::size_t i = 0; i < ts.times_fs.size(); ++i)
        t.add_row({ts.times_fs[i], ts.column("pop_1S")[i], ts.column("pop_2S")[i],
                   ts.column("pop_1P")[i], ts.column("leakage")[i]});
    emit_figure_data(out_dir, "fig6a", t);
    return series_scalars(result);
}

json run_cavity(const json& cfg, const std::string& out_dir) {
    scenarios::CavityParams cav;
    const double omega_t =
        units::omega_radfs_from_eV(cfg.at("transition_eV").get<double>());
    cav.omega_c_radfs =
        omega_t + units::omega_radfs_from_cyclic_GHz(cfg.at("cavity_detuning_GHz").get<double>());
    cav.g_radfs = units::omega_radfs_from_cyclic_GHz(cfg.at("g_GHz").get<double>());
    cav.kappa_perfs = units::rate_perfs_from_GHz(cfg.at("kappa_GHz").get<double>());
    cav.photon_dim = cfg.at("photon_dim").get<int>();

    scenarios::JcOptions opt;
    opt.omega_transition_radfs = omega_t;
    opt.gamma_r_perfs = units::rate_perfs_from_MHz(cfg.at("gamma_r_MHz").get<double>());
    opt.t_end_fs = units::fs_from_ps(cfg.at("t_end_ps").get<double>());
    opt.dt_fs = cfg.at("dt_fs").get<double>();
    opt.output_stride = cfg.at("output_stride").get<int>();
    opt.rotating_frame = cfg.at("rotating_frame").get<bool>();

    auto result = scenarios::run_jc_cavity(cav, opt);

    Table t{figure_columns("fig4c"), {}};
    const auto& ts = result.series;
    for (std::size_t i = 0; i < ts.times_fs.size(); ++i)
        t.add_row({units::ps_from_fs(ts.times_fs[i]), ts.column("pop_photon_in_cavity")[i],
                   ts.column("pop_photon_in_bubble")[i]});
    emit_figure_data(out_dir, "fig4c", t);

    json results = series_scalars(result);
    // Q is reported as a derived diagnostic under both frequency conventions;
    // kappa is the primary input
    if (cav.kappa_perfs > 0.0) {
        results["Q_omega_over_kappa"] = cav.omega_c_radfs / cav.kappa_perfs;
        results["Q_nu_over_kappa"] =
            cav.omega_c_radfs / (2.0 * units::pi) / cav.kappa_perfs;
    }
    return results;
}

json run_entangle(const json& cfg, const std::string& out_dir) {
    const std::string figure = cfg.at("figure_id").get<std::string>();
    if (figure != "fig5a" && figure != "fig5b")
        throw ValidationError("entangle: figure_id must be fig5a or fig5b");

    scenarios::TwoBubbleParams p;
    p.omega_transition_radfs =
        units::omega_radfs_from_eV(cfg.at("transition_eV").get<double>());
    p.g_alpha_radfs = units::omega_radfs_from_cyclic_GHz(cfg.at("g_alpha_GHz").get<double>());
    p.g_beta_radfs = units::omega_radfs_from_cyclic_GHz(cfg.at("g_beta_GHz").get<double>());
    p.kappa_perfs = units::rate_perfs_from_GHz(cfg.at("kappa_GHz").get<double>());
    p.gamma_r_perfs = units::rate_perfs_from_MHz(cfg.at("gamma_r_MHz").get<double>());
    p.gamma_nr_perfs = units::rate_perfs_from_GHz(cfg.at("gamma_nr_GHz").get<double>());
    p.photon_dim = cfg.at("photon_dim").get<int>();
    p.excite_beta = cfg.at("excite_beta").get<bool>();

    scenarios::TwoBubbleOptions opt;
    opt.t_end_fs = units::fs_from_ns(cfg.at("t_end_ns").get<double>());
    opt.dt_fs = cfg.at("dt_fs").get<double>();
    opt.output_stride = cfg.at("output_stride").get<int>();
    opt.rotating_frame = cfg.at("rotating_frame").get<bool>();
    opt.coupling_weighted_projectors = cfg.at("coupling_weighted_projectors").get<bool>();

    auto result = scenarios::run_two_bubble(p, opt);

    Table t{figure_columns(figure), {}};
    const auto& ts = result.series;
    for (std::size_t i = 0; i < ts.times_fs.size(); ++i)
        t.add_row({units::ns_from_fs(ts.times_fs[i]), ts.column("pop_SE")[i],
                   ts.column("pop_AE")[i], ts.column("concurrence")[i]});
    emit_figure_data(out_dir, figure, t);
    return series_scalars(result);
}

json run_expand2s(const dft::DftParams& params, const json& cfg,
                  const std::string& out_dir) {
    const dft::RadialGrid grid = grid_from(cfg);
    auto ground = dft::relax_bubble(params, grid, cfg.at("pressure_bar").get<double>(),
                                    relax_options_from(cfg));

    dft::RealtimeOptions opt;
    opt.occupied_nr = cfg.at("occupied_nr").get<int>();
    opt.occupied_l = cfg.at("occupied_l").get<int>();
    opt.t_end_fs = units::fs_from_ps(cfg.at("t_end_ps").get<double>());
    opt.dt_fs = cfg.at("dt_fs").get<double>();
    opt.output_every = cfg.at("output_every").get<int>();
    opt.absorber.enabled = cfg.at("absorber_enabled").get<bool>();
    opt.absorber.strength_eV = cfg.at("absorber_strength_eV").get<double>();
    opt.absorber.start_fraction = cfg.at("absorber_start_fraction").get<double>();
    opt.high_k_filter = cfg.at("high_k_filter").get<bool>();
    opt.filter_strength = cfg.at("filter_strength").get<double>();

    auto res = dft::evolve_radial_realtime(params, ground, opt);

    Table t{figure_columns("fig6c"), {}};
    for (std::size_t i = 0; i < res.t_fs.size(); ++i)
        t.add_row({units::ps_from_fs(res.t_fs[i]), res.radius_nm[i]});
    emit_figure_data(out_dir, "fig6c", t);

    json results;
    results["R_initial_nm"] = res.radius_nm.front();
    results["R_final_nm"] = res.final_radius_nm;
    results["settle_time_ps"] = units::ps_from_fs(res.settle_time_fs);
    results["electron_energy_final_eV"] = res.electron_energy_eV.back();
    return results;
}

} // namespace

json params_to_json(const dft::DftParams& p) {
    json j;
    j["_provenance"] =
        "calibrated against liquid helium saturation properties: n0 = 21.836 nm^-3, "
        "mu0 = -7.17 K, first sound 238 m/s, surface tension 0.274 erg/cm^2";
    j["schema_version"] = 1;
    j["g2_eV_nm3"] = p.g2;
    j["g3_eV_nm6"] = p.g3;
    j["g4_eV_nm9"] = p.g4;
    j["w_eV_nm5"] = p.w;
    j["scattering_length_nm"] = p.scattering_length_nm;
    return j;
}

dft::DftParams params_from_json(const json& j) {
    dft::DftParams p;
    try {
        p.g2 = j.at("g2_eV_nm3").get<double>();
        p.g3 = j.at("g3_eV_nm6").get<double>();
        p.g4 = j.at("g4_eV_nm9").get<double>();
        p.w = j.at("w_eV_nm5").get<double>();
        p.scattering_length_nm = j.at("scattering_length_nm").get<double>();
    } catch (const std::exception& e) {
        throw ValidationError(std::string("defaults file: ") + e.what());
    }
    return p;
}

void write_defaults_file(const std::string& path, const dft::DftParams& params) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write defaults file: " + path);
    out << params_to_json(params).dump(2) << '\n';
}

dft::DftParams load_params(double scattering_length_nm, const std::string& defaults_path) {
    std::string path = defaults_path;
    if (path.empty())
        if (const char* env = std::getenv("HELIOX_DEFAULTS")) path = env;
    if (!path.empty()) return params_from_json(load_config_file(path));
    return dft::calibrate_params(dft::standard_helium_targets(), scattering_length_nm);
}

json run_scenario(const std::string& scenario, const json& resolved,
                  const std::string& out_dir, int workers,
                  const std::string& defaults_path) {
    const auto t0 = std::chrono::steady_clock::now();
    std::filesystem::create_directories(out_dir);

    json results;
    if (scenario == "eos" || scenario == "bubble" || scenario == "spectrum" ||
        scenario == "drive" || scenario == "two-photon" || scenario == "expand2s") {
        const dft::DftParams params =
            load_params(resolved.at("scattering_length_nm").get<double>(), defaults_path);
        write_defaults_file(out_dir + "/params.defaults.json", params);
        if (scenario == "eos")
            results = run_eos(params, resolved, out_dir, workers);
        else if (scenario == "bubble")
            results = run_bubble(params, resolved, out_dir, workers);
        else if (scenario == "spectrum")
            results = run_spectrum(params, resolved, out_dir, workers);
        else if (scenario == "drive")
            results = run_drive(params, resolved, out_dir);
        else if (scenario == "two-photon")
            results = run_two_photon(params, resolved, out_dir);
        else
            results = run_expand2s(params, resolved, out_dir);
    } else if (scenario == "cavity") {
        results = run_cavity(resolved, out_dir);
    } else if (scenario == "entangle") {
        results = run_entangle(resolved, out_dir);
    } else {
        throw ValidationError("unknown scenario: " + scenario);
    }

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json summary;
    summary["schema_version"] = 1;
    summary["scenario"] = scenario;
    summary["status"] = "ok";
    summary["reason"] = "";
    summary["config"] = resolved; // fully resolved, defaults included
    summary["results"] = results;
    summary["wall_time_s"] = wall;
    json artifacts = json::array();
    for (const auto& entry : std::filesystem::directory_iterator(out_dir))
        if (entry.path().extension() == ".csv" ||
            entry.path().filename() == "params.defaults.json")
            artifacts.push_back(entry.path().filename().string());
    std::sort(artifacts.begin(), artifacts.end());
    summary["artifacts"] = artifacts;

    std::ofstream out(out_dir + "/summary.json");
    if (!out) throw ValidationError("cannot write summary.json in " + out_dir);
    out << summary.dump(2) << '\n';
    return summary;
}

} // namespace heliox::io
