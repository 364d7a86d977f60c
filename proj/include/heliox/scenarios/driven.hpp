#pragma once

#include "heliox/scenarios/level_table.hpp"

#include <optional>

namespace heliox::scenarios {

struct DrivenPulseParams {
    double width_fs = 100.0;      // FWHM of E^2(t)'s envelope
    double field_VperNm = 0.1;    // peak field
    std::optional<double> carrier_radfs; // default: resonant 1S -> 1P (or the
                                         // two-photon half frequency)
    double dt_fs = 0.0;           // 0: carrier period / 48
    double window_widths = 2.5;   // simulate t in +- window_widths * W
    int output_stride = 4;
    // optional initial 1S/1P superposition (amplitude angle and phases);
    // default is the pure 1S ground state
    double initial_1p_fraction = 0.0;
    double theta1 = 0.0, theta2 = 0.0;
};

// Gaussian-pulse driven multilevel bubble, H = H0 + E(t) H1 in the lab frame,
// no dissipators.  Observables: pop_<label> for every level plus leakage
// = 1 - P(1S) - P(1P).
ScenarioResult run_driven_bubble(const LevelTable& table, const DrivenPulseParams& pulse);

// Same engine at half the 1S -> 2S frequency; requires 1S, 1P and 2S with a
// nonzero 1S-1P-2S dipole path.
ScenarioResult run_two_photon(const LevelTable& table, const DrivenPulseParams& pulse);

} // namespace heliox::scenarios
