#pragma once

// Internal unit system shared by every module: energies in eV, lengths in nm,
// times in fs.  Angular frequencies are rad/fs, rates are 1/fs.  Public
// interfaces take SI-tagged values (bar, K, m/s, GHz, ...) and convert here,
// so no quantity crosses a module boundary without its unit in the name.
//
// Constant pins follow CODATA-2018.

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace heliox::units {

inline constexpr double pi = std::numbers::pi;

// --- CODATA-2018 pins -------------------------------------------------------

inline constexpr double hbar_eV_fs = 0.6582119569;      // reduced Planck constant
inline constexpr double c_nm_per_fs = 299.792458;       // speed of light (exact)
inline constexpr double electron_mass_c2_eV = 510998.95000;
inline constexpr double atomic_mass_unit_c2_eV = 931494102.42;
inline constexpr double he4_atomic_mass_u = 4.002602;   // He-4 atom, CODATA/AME
inline constexpr double boltzmann_eV_per_K = 8.617333262e-5;
inline constexpr double fine_structure = 7.2973525693e-3;

// masses in the internal system, eV fs^2 / nm^2  (E = m c^2)
inline constexpr double electron_mass = electron_mass_c2_eV / (c_nm_per_fs * c_nm_per_fs);
inline constexpr double he4_mass =
    he4_atomic_mass_u * atomic_mass_unit_c2_eV / (c_nm_per_fs * c_nm_per_fs);

inline constexpr double hbar2_over_2me_eV_nm2 =
    hbar_eV_fs * hbar_eV_fs / (2.0 * electron_mass);

// Coulomb constant e^2/(4 pi eps0) = alpha hbar c, in eV nm (charge unit: e)
inline constexpr double coulomb_eV_nm = fine_structure * hbar_eV_fs * c_nm_per_fs;
inline constexpr double vacuum_permittivity = 1.0 / (4.0 * pi * coulomb_eV_nm); // e^2/(eV nm)

inline constexpr double hc_eV_nm = 2.0 * pi * hbar_eV_fs * c_nm_per_fs; // 1239.84198...

// --- conversions ------------------------------------------------------------

inline constexpr double eV_from_K(double t_K) { return t_K * boltzmann_eV_per_K; }

// 1 bar = 1e5 J/m^3 expressed in eV/nm^3
inline constexpr double eV_nm3_per_bar = 6.241509074e-4;
inline constexpr double eV_nm3_from_bar(double p) { return p * eV_nm3_per_bar; }
inline constexpr double bar_from_eV_nm3(double p) { return p / eV_nm3_per_bar; }

// 1 erg/cm^2 in eV/nm^2 (surface tension)
inline constexpr double eV_nm2_per_erg_cm2 = 6.241509074e-3;

inline constexpr double nm_fs_from_m_s(double v) { return v * 1e-6; }

inline constexpr double fs_from_s(double t) { return t * 1e15; }
inline constexpr double fs_from_us(double t) { return t * 1e9; }
inline constexpr double fs_from_ns(double t) { return t * 1e6; }
inline constexpr double fs_from_ps(double t) { return t * 1e3; }
inline constexpr double ps_from_fs(double t) { return t * 1e-3; }
inline constexpr double ns_from_fs(double t) { return t * 1e-6; }

inline constexpr double omega_radfs_from_eV(double e) { return e / hbar_eV_fs; }
inline constexpr double eV_from_omega_radfs(double w) { return w * hbar_eV_fs; }

// cyclic frequencies (the "3.81 GHz" in g = 2 pi x 3.81 GHz) vs plain rates
inline constexpr double omega_radfs_from_cyclic_GHz(double nu) { return 2.0 * pi * nu * 1e-6; }
inline constexpr double rate_perfs_from_GHz(double g) { return g * 1e-6; }
inline constexpr double rate_perfs_from_MHz(double g) { return g * 1e-9; }
inline constexpr double rate_perfs_from_per_s(double g) { return g * 1e-15; }
inline constexpr double per_s_from_rate_perfs(double g) { return g * 1e15; }

// --- the two unit operations every module leans on --------------------------

// photon wavelength for a transition energy, lambda * E = 2 pi hbar c
inline double energy_to_wavelength_um(double energy_eV) {
    if (!(energy_eV > 0.0))
        throw std::domain_error("energy_to_wavelength: energy must be positive");
    return hc_eV_nm / energy_eV * 1e-3;
}

inline double wavelength_um_to_energy_eV(double lambda_um) {
    if (!(lambda_um > 0.0))
        throw std::domain_error("wavelength_to_energy: wavelength must be positive");
    return hc_eV_nm / (lambda_um * 1e3);
}

// tau = 1/gamma, SI in and out
inline double rate_to_lifetime_s(double gamma_per_s) {
    if (!(gamma_per_s > 0.0))
        throw std::domain_error("rate_to_lifetime: rate must be positive");
    return 1.0 / gamma_per_s;
}

} // namespace heliox::units
