#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "heliox/scenarios/analytics.hpp"
#include "heliox/scenarios/cavity.hpp"
#include "heliox/scenarios/driven.hpp"
#include "heliox/units.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

using namespace heliox;
using scenarios::LevelTable;

namespace {

// a hand-built three-level table resembling the 25 bar bubble
LevelTable toy_table() {
    LevelTable t;
    t.levels = {{"1S", 0, 0, 0.2204 / units::hbar_eV_fs},
                {"1P", 0, 1, 0.4445 / units::hbar_eV_fs},
                {"2S", 1, 0, 0.8292 / units::hbar_eV_fs}};
    t.dipole_enm = Eigen::MatrixXd::Zero(3, 3);
    t.dipole_enm(0, 1) = t.dipole_enm(1, 0) = 0.4076;
    t.dipole_enm(1, 2) = t.dipole_enm(2, 1) = 0.2496;
    return t;
}

} // namespace

TEST_CASE("dressed states at zero detuning split by 2 hbar g") {
    const double w1s = 0.0, w1p = units::omega_radfs_from_eV(0.125);
    const double g = units::omega_radfs_from_cyclic_GHz(3.81);
    auto r = scenarios::dressed_states(w1s, w1p, g, 0.0);
    CHECK(r.omega_radfs == doctest::Approx(2.0 * g).epsilon(1e-12));
    CHECK(r.e_plus_eV - r.e_minus_eV ==
          doctest::Approx(units::hbar_eV_fs * r.omega_radfs).epsilon(1e-12));
    CHECK(std::abs(r.plus_composition(0)) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(std::abs(r.minus_composition(1)) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));
    // g = 2 pi x 3.81 GHz doubles into Omega = 2 pi x 7.62 GHz
    CHECK(r.omega_radfs == doctest::Approx(units::omega_radfs_from_cyclic_GHz(7.62)).epsilon(1e-12));
}

TEST_CASE("dressed states at g = 0 reduce to the bare splitting") {
    const double w1p = units::omega_radfs_from_eV(0.125);
    // cavity far off resonance: detuning equals the bare transition
    auto r = scenarios::dressed_states(0.0, w1p, 0.0, w1p);
    CHECK(r.omega_radfs == doctest::Approx(w1p).epsilon(1e-12));
    CHECK(std::abs(r.plus_composition(0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(r.plus_composition(1)) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("dressed states diagonalize the single-excitation block") {
    std::mt19937 gen(3);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
        const double w1s = 0.2 * dist(gen);
        const double w1p = w1s + 0.2 + 0.05 * dist(gen);
        const double g = 0.05 * std::abs(dist(gen));
        const double det = 0.1 * dist(gen);
        auto r = scenarios::dressed_states(w1s, w1p, g, det);
        const double wt = w1p - w1s, wc = wt - det;
        Eigen::Matrix2d block;
        block << wt, g, g, wc;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(block);
        CHECK(r.e_minus_eV ==
              doctest::Approx(units::hbar_eV_fs * solver.eigenvalues()(0)).epsilon(1e-12));
        CHECK(r.e_plus_eV ==
              doctest::Approx(units::hbar_eV_fs * solver.eigenvalues()(1)).epsilon(1e-12));
        // compositions are the eigenvectors up to sign
        const auto vplus = solver.eigenvectors().col(1);
        CHECK(std::abs(std::abs(vplus.dot(r.plus_composition)) - 1.0) < 1e-12);
    }
}

TEST_CASE("coupling from field") {
    CHECK(scenarios::coupling_from_field(0.0, 1.0) == 0.0);
    const double g_target = units::omega_radfs_from_cyclic_GHz(3.81);
    const double e_vac = g_target * units::hbar_eV_fs / 0.544;
    CHECK(e_vac == doctest::Approx(2.9e-5).epsilon(0.02));
    CHECK(scenarios::coupling_from_field(0.544, e_vac) ==
          doctest::Approx(g_target).epsilon(1e-12));
    CHECK(scenarios::coupling_from_field(2.0 * 0.544, e_vac) ==
          doctest::Approx(2.0 * g_target).epsilon(1e-12));
}

TEST_CASE("cooperativity") {
    const double g = units::omega_radfs_from_cyclic_GHz(3.81);
    const double kappa = units::rate_perfs_from_GHz(0.02);
    const double gnr = units::rate_perfs_from_GHz(0.1);
    const double c = scenarios::cooperativity(g, kappa, gnr);
    CHECK(c > 5e5);
    CHECK(c < 7e5);
    CHECK(scenarios::cooperativity(0.0, kappa, gnr) == 0.0);
    CHECK(scenarios::cooperativity(2.0 * g, kappa, gnr) == doctest::Approx(4.0 * c).epsilon(1e-12));
    CHECK_THROWS_AS((void)scenarios::cooperativity(g, 0.0, gnr), ValidationError);
}

TEST_CASE("driven bubble uses the resonant carrier and rejects coarse steps") {
    auto table = toy_table();
    scenarios::DrivenPulseParams pulse;
    pulse.width_fs = 30.0; // short test pulse
    pulse.field_VperNm = 0.02;
    auto result = scenarios::run_driven_bubble(table, pulse);
    CHECK(result.scalars.at("carrier_radfs") ==
          doctest::Approx(table.transition_omega("1S", "1P")).epsilon(1e-12));
    // populations sum to one within the integrator tolerance
    CHECK(result.scalars.at("final_pop_1S") + result.scalars.at("final_pop_1P") +
              result.scalars.at("final_pop_2S") ==
          doctest::Approx(1.0).epsilon(1e-7));

    pulse.dt_fs = 10.0; // far coarser than the carrier guard
    CHECK_THROWS_AS((void)scenarios::run_driven_bubble(table, pulse), ValidationError);
}

TEST_CASE("two-photon scenario guards") {
    auto table = toy_table();
    scenarios::DrivenPulseParams pulse;
    pulse.width_fs = 30.0;
    pulse.field_VperNm = 0.0;
    // no field: nothing leaves 1S
    auto result = scenarios::run_two_photon(table, pulse);
    CHECK(result.scalars.at("final_pop_2S") == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(result.scalars.at("carrier_radfs") ==
          doctest::Approx(0.5 * table.transition_omega("1S", "2S")).epsilon(1e-12));

    // a table without the intermediate level refuses
    LevelTable no1p;
    no1p.levels = {{"1S", 0, 0, 0.0}, {"2S", 1, 0, 0.9}};
    no1p.dipole_enm = Eigen::MatrixXd::Zero(2, 2);
    CHECK_THROWS_WITH_AS((void)scenarios::run_two_photon(no1p, pulse),
                         doctest::Contains("1P"), ValidationError);
}

TEST_CASE("jc cavity: decoupled system stays frozen") {
    scenarios::CavityParams cav;
    cav.omega_c_radfs = units::omega_radfs_from_eV(0.125);
    cav.g_radfs = 0.0;
    cav.kappa_perfs = 0.0;
    scenarios::JcOptions opt;
    opt.omega_transition_radfs = cav.omega_c_radfs;
    opt.gamma_r_perfs = 0.0;
    opt.t_end_fs = 2000.0;
    opt.output_stride = 10;
    auto result = scenarios::run_jc_cavity(cav, opt);
    for (double v : result.series.column("pop_photon_in_cavity"))
        CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
    for (double v : result.series.column("pop_photon_in_bubble"))
        CHECK(std::abs(v) < 1e-9);
}

TEST_CASE("jc cavity: cycle-averaged excitation number is conserved") {
    scenarios::CavityParams cav;
    cav.omega_c_radfs = units::omega_radfs_from_eV(0.125);
    cav.g_radfs = units::omega_radfs_from_cyclic_GHz(3.81);
    cav.kappa_perfs = 0.0;
    scenarios::JcOptions opt;
    opt.omega_transition_radfs = cav.omega_c_radfs;
    opt.gamma_r_perfs = 0.0;
    opt.t_end_fs = 40000.0; // ~1200 optical cycles
    opt.dt_fs = 0.8;
    opt.output_stride = 5;
    auto result = scenarios::run_jc_cavity(cav, opt);
    const auto& t = result.series.times_fs;
    const auto& n_ph = result.series.column("photon_number");
    const auto& p_1p = result.series.column("pop_1P");
    // average the excitation number over whole optical cycles
    const double cycle = 2.0 * units::pi / cav.omega_c_radfs;
    double acc = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] > 30.0 * cycle) break;
        acc += n_ph[i] + p_1p[i];
        ++count;
    }
    CHECK(acc / count == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("jc cavity: photon truncation 3 vs 2 shifts populations below 1e-3") {
    scenarios::CavityParams cav;
    cav.omega_c_radfs = units::omega_radfs_from_eV(0.125);
    cav.g_radfs = units::omega_radfs_from_cyclic_GHz(3.81);
    cav.kappa_perfs = units::rate_perfs_from_GHz(0.02);
    scenarios::JcOptions opt;
    opt.omega_transition_radfs = cav.omega_c_radfs;
    opt.gamma_r_perfs = units::rate_perfs_from_MHz(0.22);
    opt.t_end_fs = units::fs_from_ps(50.0);
    opt.dt_fs = 0.5; // the dim-3 ladder widens the spectrum: tighter bound
    opt.output_stride = 320;
    auto r2 = scenarios::run_jc_cavity(cav, opt);
    cav.photon_dim = 3;
    auto r3 = scenarios::run_jc_cavity(cav, opt);
    const auto& a = r2.series.column("pop_photon_in_cavity");
    const auto& b = r3.series.column("pop_photon_in_cavity");
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-3);
}

TEST_CASE("two bubbles: populations close and swap symmetry holds") {
    scenarios::TwoBubbleParams p;
    p.omega_transition_radfs = units::omega_radfs_from_eV(0.125);
    p.g_alpha_radfs = units::omega_radfs_from_cyclic_GHz(3.81);
    p.g_beta_radfs = units::omega_radfs_from_cyclic_GHz(1.905);
    p.kappa_perfs = units::rate_perfs_from_GHz(0.02);
    p.gamma_r_perfs = units::rate_perfs_from_MHz(0.22);
    p.gamma_nr_perfs = units::rate_perfs_from_GHz(0.1);
    scenarios::TwoBubbleOptions opt;
    opt.t_end_fs = units::fs_from_ns(0.5);
    opt.output_stride = 1;

    auto r1 = scenarios::run_two_bubble(p, opt);
    // P(SE) + P(AE) + P(both-ground photon states) + tiny rest = 1
    const auto& se = r1.series.column("pop_SE");
    const auto& ae = r1.series.column("pop_AE");
    const auto& gg = r1.series.column("pop_both_ground");
    for (std::size_t i = 0; i < se.size(); ++i)
        CHECK(se[i] + ae[i] + gg[i] == doctest::Approx(1.0).epsilon(1e-7));
    // concurrence starts at zero for the product initial state
    CHECK(r1.series.column("concurrence").front() ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-10));

    // swap couplings and the initially excited bubble
    scenarios::TwoBubbleParams q = p;
    std::swap(q.g_alpha_radfs, q.g_beta_radfs);
    q.excite_beta = true;
    auto r2 = scenarios::run_two_bubble(q, opt);
    for (const char* col : {"pop_SE", "pop_AE", "concurrence"}) {
        const auto& x = r1.series.column(col);
        const auto& y = r2.series.column(col);
        REQUIRE(x.size() == y.size());
        for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(x[i] - y[i]) < 1e-9);
    }
}

TEST_CASE("two bubbles: lossy cavity leaves the dark-state plateau") {
    // equal couplings, kappa = 10 GHz: the bright state damps out through the
    // cavity and half the population survives in the dark state, so the
    // concurrence settles near 2 x 0.5 x |<eg|D><D|ge>| = 0.5
    scenarios::TwoBubbleParams p;
    p.omega_transition_radfs = units::omega_radfs_from_eV(0.125);
    p.g_alpha_radfs = units::omega_radfs_from_cyclic_GHz(3.81);
    p.g_beta_radfs = p.g_alpha_radfs;
    p.kappa_perfs = units::rate_perfs_from_GHz(10.0);
    p.gamma_r_perfs = units::rate_perfs_from_MHz(0.22);
    p.gamma_nr_perfs = units::rate_perfs_from_GHz(0.1);
    scenarios::TwoBubbleOptions opt;
    opt.t_end_fs = units::fs_from_ns(0.5);
    auto run = scenarios::run_two_bubble(p, opt);
    const double gamma_nr = p.gamma_nr_perfs;
    const auto& t = run.series.times_fs;
    const auto& ae = run.series.column("pop_AE");
    const auto& conc = run.series.column("concurrence");
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < units::fs_from_ps(50.0)) continue; // after the bright state dies
        const double decay = std::exp(-gamma_nr * t[i]);
        CHECK(ae[i] == doctest::Approx(0.5 * decay).epsilon(0.05));
        CHECK(conc[i] == doctest::Approx(0.5 * decay).epsilon(0.10));
    }
    CHECK(run.scalars.at("final_concurrence") == doctest::Approx(0.5).epsilon(0.10));
}

TEST_CASE("two bubbles: coupling-weighted dark state is exactly decoupled") {
    scenarios::TwoBubbleParams p;
    p.omega_transition_radfs = units::omega_radfs_from_eV(0.125);
    p.g_alpha_radfs = 0.5 * units::omega_radfs_from_cyclic_GHz(3.81);
    p.g_beta_radfs = units::omega_radfs_from_cyclic_GHz(3.81);
    p.kappa_perfs = units::rate_perfs_from_GHz(10.0);
    p.gamma_r_perfs = 0.0;
    p.gamma_nr_perfs = 0.0;
    scenarios::TwoBubbleOptions opt;
    opt.t_end_fs = units::fs_from_ns(0.2);
    opt.coupling_weighted_projectors = true;
    auto run = scenarios::run_two_bubble(p, opt);
    // initial weight on the true dark state is g_beta^2/(g_a^2+g_b^2) = 0.8
    // and nothing drains it without the non-radiative channel
    const auto& ae = run.series.column("pop_AE");
    CHECK(ae.front() == doctest::Approx(0.8).epsilon(1e-9));
    for (double v : ae) CHECK(v == doctest::Approx(0.8).epsilon(0.01));
}

TEST_CASE("driven bubble accepts an initial 1S/1P superposition") {
    auto table = toy_table();
    scenarios::DrivenPulseParams pulse;
    pulse.width_fs = 30.0;
    pulse.field_VperNm = 0.0; // free evolution: populations frozen
    pulse.initial_1p_fraction = 0.5;
    pulse.theta1 = 0.3;
    pulse.theta2 = -1.1;
    auto run = scenarios::run_driven_bubble(table, pulse);
    CHECK(run.series.column("pop_1S").front() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(run.series.column("pop_1P").front() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(run.scalars.at("final_pop_1P") == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("two bubbles: rotating frame matches the lab frame") {
    scenarios::TwoBubbleParams p;
    p.omega_transition_radfs = units::omega_radfs_from_eV(0.125);
    p.g_alpha_radfs = units::omega_radfs_from_cyclic_GHz(3.81);
    p.g_beta_radfs = p.g_alpha_radfs;
    p.kappa_perfs = units::rate_perfs_from_GHz(10.0); // fast dynamics, short window
    p.gamma_r_perfs = units::rate_perfs_from_MHz(0.22);
    p.gamma_nr_perfs = units::rate_perfs_from_GHz(0.1);

    scenarios::TwoBubbleOptions rot;
    rot.t_end_fs = units::fs_from_ps(40.0);
    rot.dt_fs = 100.0;
    rot.output_stride = 4; // sample every 400 fs
    auto a = scenarios::run_two_bubble(p, rot);

    scenarios::TwoBubbleOptions lab;
    lab.rotating_frame = false;
    lab.t_end_fs = rot.t_end_fs;
    lab.dt_fs = 0.5;
    lab.output_stride = 800; // same 400 fs sampling
    auto b = scenarios::run_two_bubble(p, lab);

    REQUIRE(a.series.times_fs.size() == b.series.times_fs.size());
    for (const char* col : {"pop_SE", "pop_AE", "concurrence"}) {
        const auto& x = a.series.column(col);
        const auto& y = b.series.column(col);
        for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(x[i] - y[i]) < 1e-3);
    }
}
