#pragma once

// Orbital-free density functional for condensed He-4 with an excess electron.
// Energy density of the helium field psi (n = |psi|^2):
//
//   eps(n) = 1/2 g2 n^2 + 1/3 g3 n^3 + 1/4 g4 n^4
//
// plus a surface-gradient term 1/2 w |grad n|^2 and the electron-helium
// contact coupling f0 |phi|^2 |psi|^2 with f0 = 2 pi hbar^2 l_s / m_e.

#include "heliox/units.hpp"

namespace heliox::dft {

struct DftParams {
    double g2 = 0.0; // eV nm^3
    double g3 = 0.0; // eV nm^6
    double g4 = 0.0; // eV nm^9
    double w = 0.0;  // eV nm^5
    double scattering_length_nm = 0.104; // electron-He s-wave scattering length
    double m_he = units::he4_mass;       // eV fs^2 / nm^2
    double m_e = units::electron_mass;

    // contact coupling, always recomputed from l_s
    double f0() const {
        return 2.0 * units::pi * units::hbar_eV_fs * units::hbar_eV_fs *
               scattering_length_nm / m_e;
    }
};

struct CalibrationTargets {
    double n0_nm3;                   // saturation density
    double mu0_eV;                   // chemical potential at saturation (< 0)
    double sound_speed_m_s;          // first sound at saturation
    double surface_tension_erg_cm2;  // free-surface tension
};

// Liquid He-4 saturation properties at near-zero temperature.
inline CalibrationTargets standard_helium_targets() {
    return CalibrationTargets{21.836, units::eV_from_K(-7.17), 238.0, 0.274};
}

// Solves {mu(n0) = mu0, p(n0) = 0, m_He c_s^2 = n0 dmu/dn(n0)} for (g2,g3,g4)
// and fits w so the planar-interface surface energy matches the target
// tension.  Throws SolverError with residual details when the target set
// admits no bounded, thermodynamically stable functional.
DftParams calibrate_params(const CalibrationTargets& targets,
                           double scattering_length_nm = 0.104);

// Planar-interface surface energy of the calibrated functional, eV/nm^2,
// from the first integral of the 1D Euler-Lagrange equation (quadrature,
// no grid).  Used by the w-fit and as one side of the dual-route check.
double planar_surface_energy(const DftParams& params, double n0_nm3, double mu0_eV);

} // namespace heliox::dft
