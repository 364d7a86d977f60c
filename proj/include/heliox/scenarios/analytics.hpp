#pragma once

#include <Eigen/Dense>

#include <vector>

namespace heliox::scenarios {

// Single-excitation Jaynes-Cummings block over {|1P,0>, |1S,1>}.
struct DressedStateResult {
    double omega_radfs = 0.0;  // generalized vacuum Rabi frequency sqrt(D^2 + 4 g^2)
    double e_plus_eV = 0.0;    // eigenvalues measured from the |1S,0> energy
    double e_minus_eV = 0.0;
    Eigen::Vector2d plus_composition;  // amplitudes over {|1P,0>, |1S,1>}
    Eigen::Vector2d minus_composition;
};

// detuning = omega_1P - omega_1S - omega_cavity (all rad/fs)
DressedStateResult dressed_states(double omega_1s_radfs, double omega_1p_radfs,
                                  double g_radfs, double detuning_radfs);

// g = d E_vac / hbar
double coupling_from_field(double d_enm, double field_VperNm);

// C = 2 g^2 / (kappa gamma_nr), g angular, kappa and gamma plain rates
double cooperativity(double g_radfs, double kappa_perfs, double gamma_nr_perfs);

// Time of the first interior local maximum after the first local minimum
// (parabolic refinement); the vacuum Rabi period estimator.
double first_return_maximum(const std::vector<double>& t, const std::vector<double>& y);

// max(y) - min(y) over samples with t in [t0, t1)
double amplitude_in_window(const std::vector<double>& t, const std::vector<double>& y,
                           double t0, double t1);

} // namespace heliox::scenarios
