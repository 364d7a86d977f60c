#pragma once

#include "heliox/scenarios/level_table.hpp"

namespace heliox::scenarios {

// Prolate-bubble two-level constants of the cavity scenarios (inputs, not
// computed here: the spherical solver does not produce prolate shapes).
struct ProlateBubbleDefaults {
    double transition_eV = 0.125;
    double dipole_enm = 0.544;
    double g_over_2pi_GHz = 3.81;
    double kappa_GHz = 0.02;       // plain rate
    double gamma_r_MHz = 0.22;     // plain rate
    double gamma_nr_GHz = 0.1;     // plain rate
};

struct CavityParams {
    double omega_c_radfs = 0.0; // cavity frequency
    double g_radfs = 0.0;       // coupling (angular)
    double kappa_perfs = 0.0;   // photon loss rate
    int photon_dim = 2;
};

struct JcOptions {
    double omega_transition_radfs = 0.0; // 1S -> 1P splitting
    double gamma_r_perfs = 0.0;
    double t_end_fs = 0.0;
    double dt_fs = 0.0;         // 0: auto from the guard bound
    int output_stride = 1;
    bool rotating_frame = false; // RWA fast path for the undriven system
    bool store_states = false;
};

// Vacuum Rabi oscillations: full (sigma + sigma^+)(a + a^+) coupling in the
// lab frame, dissipators kappa D[a] and gamma_r D[|1S><1P|], initial state
// |1S> x |1>.  Observables: the photon-in-cavity and photon-in-bubble
// populations, P(1P) and <a^+ a>.
ScenarioResult run_jc_cavity(const CavityParams& cavity, const JcOptions& options);

struct TwoBubbleParams {
    double g_alpha_radfs = 0.0;
    double g_beta_radfs = 0.0;
    double gamma_r_perfs = 0.0;
    double gamma_nr_perfs = 0.0;
    double kappa_perfs = 0.0;
    double omega_transition_radfs = 0.0;
    double omega_c_radfs = 0.0; // 0: resonant with the transition
    int photon_dim = 2;
    bool excite_beta = false;   // default initial state |1P>_a |1S>_b |0>
};

struct TwoBubbleOptions {
    double t_end_fs = 0.0;
    double dt_fs = 0.0;          // 0: auto
    int output_stride = 1;
    bool rotating_frame = true;  // ns timescales; lab frame is the cross-check
    // project on coupling-weighted bright/dark states instead of the fixed
    // (|1P 1S> +- |1S 1P>)/sqrt(2) pair
    bool coupling_weighted_projectors = false;
};

// Two bubbles sharing one lossy cavity photon.  Observables: P(SE), P(AE),
// <a^+ a>, the both-ground population, and the two-electron concurrence
// (from the cavity-traced state).
ScenarioResult run_two_bubble(const TwoBubbleParams& params, const TwoBubbleOptions& options);

} // namespace heliox::scenarios
