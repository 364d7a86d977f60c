#include "heliox/scenarios/driven.hpp"

#include "heliox/units.hpp"

#include <cmath>

namespace heliox::scenarios {

using lindblad::DensityMatrix;
using lindblad::DriveEnvelope;
using lindblad::HilbertSpace;
using lindblad::Matrix;
using lindblad::Observable;
using lindblad::Operator;
using lindblad::PropagationSpec;
using lindblad::Vector;

namespace {

ScenarioResult run_pulse(const LevelTable& table, const DrivenPulseParams& pulse,
                         double carrier_radfs) {
    table.validate();
    const auto n = static_cast<Eigen::Index>(table.size());
    HilbertSpace space({static_cast<int>(n)});

    Matrix h0 = Matrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k)
        h0(k, k) = units::hbar_eV_fs * table.levels[static_cast<std::size_t>(k)].omega_radfs;
    Matrix h1 = table.dipole_enm.cast<std::complex<double>>();

    const int i1s = table.index_of("1S");
    if (i1s < 0) throw ValidationError("driven bubble: table has no 1S level");
    Vector psi = Vector::Zero(n);
    if (pulse.initial_1p_fraction > 0.0) {
        const int i1p = table.index_of("1P");
        if (i1p < 0) throw ValidationError("driven bubble: no 1P level for superposition");
        const double a = std::sqrt(1.0 - pulse.initial_1p_fraction);
        const double b = std::sqrt(pulse.initial_1p_fraction);
        psi(i1s) = a * std::polar(1.0, pulse.theta1);
        psi(i1p) = b * std::polar(1.0, pulse.theta2);
    } else {
        psi(i1s) = 1.0;
    }

    DriveEnvelope env;
    env.peak_VperNm = pulse.field_VperNm;
    env.carrier_radfs = carrier_radfs;
    env.width_fs = pulse.width_fs;
    env.center_fs = 0.0;

    PropagationSpec spec;
    spec.t_start_fs = -pulse.window_widths * pulse.width_fs;
    spec.t_end_fs = pulse.window_widths * pulse.width_fs;
    // Coherences rotate at the full table span, not just the carrier; the
    // pure initial state pins eigenvalues at zero, so the step has to keep
    // the local RK4 error well under the negativity guard.
    double span_omega = 0.0;
    for (const Level& a : table.levels)
        for (const Level& b : table.levels)
            span_omega = std::max(span_omega, std::abs(a.omega_radfs - b.omega_radfs));
    const double dt_auto =
        std::min(2.0 * units::pi / carrier_radfs / 48.0, 0.1 / span_omega);
    spec.dt_fs = pulse.dt_fs > 0.0 ? pulse.dt_fs : dt_auto;
    // land exactly on t_end
    const double span = spec.t_end_fs - spec.t_start_fs;
    spec.dt_fs = span / std::ceil(span / spec.dt_fs - 1e-9);
    spec.output_stride = pulse.output_stride;

    std::vector<Observable> observables;
    for (Eigen::Index k = 0; k < n; ++k) {
        Matrix proj = Matrix::Zero(n, n);
        proj(k, k) = 1.0;
        observables.push_back(
            {"pop_" + table.levels[static_cast<std::size_t>(k)].label,
             Operator(space, std::move(proj))});
    }

    auto series =
        lindblad::propagate(lindblad::pure_state(space, psi), Operator(space, h0),
                            {{Operator(space, h1), env}}, {}, spec, observables);

    // leakage = 1 - P(1S) - P(1P)
    const auto& p1s = series.column("pop_1S");
    std::vector<double> leak(p1s.size(), 1.0);
    for (std::size_t i = 0; i < leak.size(); ++i) leak[i] -= p1s[i];
    if (table.index_of("1P") >= 0) {
        const auto& p1p = series.column("pop_1P");
        for (std::size_t i = 0; i < leak.size(); ++i) leak[i] -= p1p[i];
    }
    series.names.push_back("leakage");
    series.values.push_back(std::move(leak));

    ScenarioResult out;
    out.scalars["carrier_radfs"] = carrier_radfs;
    out.scalars["dt_fs"] = spec.dt_fs;
    for (std::size_t k = 0; k < series.names.size(); ++k)
        out.scalars["final_" + series.names[k]] = series.values[k].back();
    out.series = std::move(series);
    return out;
}

} // namespace

ScenarioResult run_driven_bubble(const LevelTable& table, const DrivenPulseParams& pulse) {
    double carrier;
    if (pulse.carrier_radfs) {
        carrier = *pulse.carrier_radfs;
    } else {
        if (table.index_of("1P") < 0)
            throw ValidationError("driven bubble: no 1P level to set the resonant carrier");
        carrier = table.transition_omega("1S", "1P");
    }
    return run_pulse(table, pulse, carrier);
}

ScenarioResult run_two_photon(const LevelTable& table, const DrivenPulseParams& pulse) {
    const int i1s = table.index_of("1S"), i1p = table.index_of("1P"),
              i2s = table.index_of("2S");
    if (i1s < 0 || i2s < 0)
        throw ValidationError("two-photon: table must include 1S and 2S");
    if (i1p < 0)
        throw ValidationError("two-photon: no intermediate 1P level; the two-photon "
                              "path requires it");
    if (table.dipole_enm(i1s, i1p) == 0.0 || table.dipole_enm(i1p, i2s) == 0.0)
        throw ValidationError("two-photon: 1S-1P-2S dipole path is broken");

    const double carrier =
        pulse.carrier_radfs ? *pulse.carrier_radfs
                            : 0.5 * table.transition_omega("1S", "2S");
    return run_pulse(table, pulse, carrier);
}

} // namespace heliox::scenarios
