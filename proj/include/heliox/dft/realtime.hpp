#pragma once

#include "heliox/dft/bubble.hpp"

#include <vector>

namespace heliox::dft {

struct AbsorbingLayer {
    bool enabled = true;
    double start_fraction = 0.80;  // layer occupies the outer (1 - fraction) of the box
    double strength_eV = 3e-3;     // damping amplitude at r_max
};

struct RealtimeOptions {
    int occupied_nr = 1; // track this level adiabatically (default: 2S)
    int occupied_l = 0;
    double t_end_fs = 30000.0;
    double dt_fs = 2.0;
    int output_every = 100;
    AbsorbingLayer absorber;
    // Hyperdiffusion on grid-scale phonons the step cannot resolve (the
    // surface-gradient term makes them far stiffer than the splitting).
    // Damps ~ sin^4(k dr / 2), so resolved sound passes almost untouched.
    bool high_k_filter = true;
    double filter_strength = 0.02;
};

struct RealtimeResult {
    std::vector<double> t_fs;
    std::vector<double> radius_nm;
    std::vector<double> electron_energy_eV;
    std::vector<double> helium_atoms;   // int n d^3r over the box
    std::vector<double> electron_norm;  // 4 pi int phi^2 r^2 dr
    double final_radius_nm = 0.0;       // mean over the last 10% of the run
    double settle_time_fs = 0.0;        // first time R reaches 90% of its total rise
    BubbleProfile final_profile;
};

// Real-time helium dynamics with the electron tracked adiabatically: the
// helium field advances by Strang splitting (exact nonlinear phase rotation,
// Crank-Nicolson kinetic step) and the occupied electron level is re-solved
// in the instantaneous potential every step.  An absorbing layer near r_max
// damps outgoing sound toward the bulk; with it disabled the evolution is
// unitary and conserves the helium atom count.
RealtimeResult evolve_radial_realtime(const DftParams& params, const BubbleProfile& start,
                                      const RealtimeOptions& options);

} // namespace heliox::dft
