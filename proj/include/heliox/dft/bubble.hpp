#pragma once

#include "heliox/dft/eos.hpp"
#include "heliox/dft/grid.hpp"

#include <optional>
#include <string>
#include <vector>

namespace heliox::dft {

// Relaxed (or evolving) coupled helium/electron state on a radial grid.
struct BubbleProfile {
    RadialGrid grid;
    std::vector<double> helium_density;        // n(r), nm^-3
    std::vector<double> electron_wavefunction; // phi(r), 4 pi int phi^2 r^2 dr = 1
    int occupied_nr = 0;
    int occupied_l = 0;
    std::optional<double> radius_nm; // half-density point; absent when no bubble
    double barrier_eV = 0.0;         // U = f0 n_bulk
    double pressure_bar = 0.0;
    double n_bulk_nm3 = 0.0;
    double mu_eV = 0.0;
    double electron_energy_eV = 0.0; // occupied-level eigenvalue

    // convergence diagnostics
    int iterations = 0;
    double residual_helium = 0.0;   // ||d psi / d tau|| / ||psi||, 1/fs
    double residual_electron = 0.0; // ||(H - E) u|| / hbar, 1/fs
    double grand_energy_eV = 0.0;   // E[psi,phi] - mu * N_He (monitored objective)
    bool energy_monotone = true;    // no accepted step raised it beyond 1e-12 rel
};

struct RelaxOptions {
    int occupied_nr = 0;
    int occupied_l = 0;
    double tolerance = 1e-8;    // stationarity threshold, 1/fs
    int max_iterations = 50000;
    double dtau_init_fs = 2.0;
    double dtau_max_fs = 1e6;   // backward-Euler steps grow until rejected
    double seed_radius_nm = 1.6; // initial hole radius
};

// Imaginary-time relaxation of the coupled system at the given pressure with
// the electron held in the requested level.  The helium field takes
// semi-implicit gradient-flow steps (linear kinetic term and the frozen local
// potential implicit in a tridiagonal solve, nonlinearity refreshed between
// steps) accepted only when the grand-canonical energy does not increase; the
// electron level is re-solved in the instantaneous potential each step.
BubbleProfile relax_bubble(const DftParams& params, const RadialGrid& grid,
                           double pressure_bar, const RelaxOptions& options = {});

inline BubbleProfile relax_ground_bubble(const DftParams& params, const RadialGrid& grid,
                                         double pressure_bar) {
    return relax_bubble(params, grid, pressure_bar, RelaxOptions{});
}

// Discrete grand-canonical energy E[psi,phi] - mu N of a profile (the
// electron enters through its eigenvalue).  Diagnostic/monitoring quantity.
double grand_energy(const DftParams& params, const BubbleProfile& profile);

} // namespace heliox::dft
