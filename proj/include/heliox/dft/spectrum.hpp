#pragma once

#include "heliox/dft/bubble.hpp"
#include "heliox/dft/tridiagonal.hpp"

#include <string>
#include <vector>

namespace heliox::dft {

// Bound electron level in a frozen radial potential.  u(r) = r phi_rad(r)
// with int u^2 dr = 1; n_r counts the interior nodes of u.
struct ElectronLevel {
    int n_r = 0;
    int l = 0;
    double energy_eV = 0.0;
    std::vector<double> u;
    RadialGrid grid;

    std::string label() const; // "1S", "1P", "2S", "1D", ...
};

// Finite-difference radial Hamiltonian on u = r phi for angular momentum l:
// -hbar^2/(2 m_e) u'' + [V(r) + hbar^2 l(l+1)/(2 m_e r^2)] u, with parity
// ghost at the origin and a hard wall at r_max.
SymTridiagonal radial_hamiltonian(const RadialGrid& grid, const std::vector<double>& potential_eV,
                                  int l, double m_e);

// All bound levels (E < bound_eV) with l <= l_max and n_r < n_max, ordered by
// energy within each l.  Levels that do not exist are absent, never padded.
std::vector<ElectronLevel> solve_bound_levels(const RadialGrid& grid,
                                              const std::vector<double>& potential_eV,
                                              double bound_eV, int l_max, int n_max,
                                              double m_e);

// Spectrum of a relaxed profile in its frozen helium potential V = f0 n(r).
std::vector<ElectronLevel> electron_spectrum(const DftParams& params,
                                             const BubbleProfile& profile, int l_max,
                                             int n_max);

struct TransitionDipole {
    std::string from, to;
    double d_enm = 0.0;      // |<b| z |a>| in e nm (m = 0 states)
    double delta_e_eV = 0.0; // |E_b - E_a|
    double lambda_um = 0.0;  // transition wavelength
};

// Zero unless |l_a - l_b| = 1; angular factor (l<+1)/sqrt((2l<+1)(2l<+3))
// times the radial integral int u_a u_b r dr.
TransitionDipole transition_dipole(const ElectronLevel& a, const ElectronLevel& b);

// Free-space spontaneous emission rate gamma = omega^3 d^2 / (3 pi eps0 hbar c^3).
double spontaneous_rate_per_s(double d_enm, double lambda_um);

} // namespace heliox::dft
