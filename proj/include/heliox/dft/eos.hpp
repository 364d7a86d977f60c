#pragma once

#include "heliox/dft/params.hpp"

namespace heliox::dft {

struct BulkState {
    double n_nm3;        // helium number density
    double mu_eV;        // chemical potential
    double pressure_bar;
};

// bulk relations of the polynomial functional
double bulk_energy_density(const DftParams& p, double n); // eps(n), eV/nm^3
double chemical_potential(const DftParams& p, double n);  // mu(n) = d eps/dn, eV
double dmu_dn(const DftParams& p, double n);              // eV nm^3
double pressure_eV_nm3(const DftParams& p, double n);     // p(n) = mu n - eps
double pressure_bar(const DftParams& p, double n);

// density at the spinodal (dp/dn = 0) and the pressure there
double spinodal_density(const DftParams& p);
double spinodal_pressure_bar(const DftParams& p);

// Density on the stable branch with p(n) = p, |residual| < 1e-9 bar.
// Below the spinodal pressure there is no solution; the error names it.
BulkState solve_bulk_eos(const DftParams& p, double pressure_bar);

// U = f0 * n  (electron potential barrier of the bulk)
double barrier_height_eV(const DftParams& p, double n_nm3);

} // namespace heliox::dft
