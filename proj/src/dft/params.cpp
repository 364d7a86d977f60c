#include "heliox/dft/params.hpp"

#include "heliox/dft/eos.hpp"
#include "heliox/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <sstream>

namespace heliox::dft {

namespace {

// Grand-potential excess density V(psi) = eps(psi^2) - mu0 psi^2, the
// "double well" between the vacuum (psi = 0) and the bulk (psi = sqrt(n0)).
double well_excess(const DftParams& p, double mu0, double psi) {
    const double n = psi * psi;
    return bulk_energy_density(p, n) - mu0 * n;
}

} // namespace

double planar_surface_energy(const DftParams& p, double n0, double mu0) {
    // First integral of the planar profile equation:
    //   [hbar^2/(2 m_He) + 2 w psi^2] psi'^2 = V(psi)
    // so sigma = 2 int_0^sqrt(n0) sqrt(f(psi) V(psi)) dpsi.
    const double kin = units::hbar_eV_fs * units::hbar_eV_fs / (2.0 * p.m_he);
    const double psi1 = std::sqrt(n0);
    auto integrand = [&](double psi) {
        const double f = kin + 2.0 * p.w * psi * psi;
        const double v = std::max(well_excess(p, mu0, psi), 0.0);
        return std::sqrt(f * v);
    };
    using gauss = boost::math::quadrature::gauss<double, 128>;
    return 2.0 * gauss::integrate(integrand, 0.0, psi1);
}

DftParams calibrate_params(const CalibrationTargets& targets, double scattering_length_nm) {
    const double n0 = targets.n0_nm3;
    const double mu0 = targets.mu0_eV;
    const double cs = units::nm_fs_from_m_s(targets.sound_speed_m_s);
    const double sigma_target = targets.surface_tension_erg_cm2 * units::eV_nm2_per_erg_cm2;

    if (!(n0 > 0.0) || !(cs > 0.0) || !(sigma_target > 0.0))
        throw ValidationError("calibrate_params: densities, sound speed and tension must be positive");
    if (!(mu0 < 0.0))
        throw ValidationError("calibrate_params: saturation chemical potential must be negative");

    DftParams p;
    p.scattering_length_nm = scattering_length_nm;

    // Linear 3x3 system in (x, y, z) = (g2 n0, g3 n0^2, g4 n0^3), all eV:
    //   mu(n0) = mu0          ->  x +     y +     z = mu0
    //   p(n0)  = 0            ->  x/2 + 2y/3 + 3z/4 = 0
    //   n0 dmu/dn = m_He c^2  ->  x +    2y +    3z = m_He c_s^2
    const double mc2 = p.m_he * cs * cs;
    const double z = 2.0 * (mc2 + 2.0 * mu0);
    const double y = -3.0 * mu0 - 1.5 * z;
    const double x = mu0 - y - z;
    p.g2 = x / n0;
    p.g3 = y / (n0 * n0);
    p.g4 = z / (n0 * n0 * n0);

    // Sanity of the resulting functional: bounded below, stable branch at n0,
    // saturation is the unique positive zero of p(n).
    std::ostringstream residuals;
    residuals << "mu residual " << chemical_potential(p, n0) - mu0 << " eV, p residual "
              << pressure_bar(p, n0) << " bar, stiffness residual "
              << n0 * dmu_dn(p, n0) - mc2 << " eV";
    if (!(p.g4 > 0.0))
        throw SolverError("calibrate_params: g4 <= 0 (energy density unbounded below); " +
                          residuals.str());
    if (!(dmu_dn(p, n0) > 0.0))
        throw SolverError("calibrate_params: dmu/dn(n0) <= 0 (saturation not stable); " +
                          residuals.str());

    // V(psi) must stay non-negative between vacuum and bulk for a monotone
    // interface profile to exist.
    for (int i = 1; i < 256; ++i) {
        const double psi = std::sqrt(n0) * i / 256.0;
        if (well_excess(p, mu0, psi) < -1e-14)
            throw SolverError("calibrate_params: interface well not single-signed; " +
                              residuals.str());
    }

    // Fit w against the surface tension.  sigma(w) is strictly increasing.
    p.w = 0.0;
    const double sigma0 = planar_surface_energy(p, n0, mu0);
    if (sigma0 > sigma_target) {
        std::ostringstream msg;
        msg << "calibrate_params: gradient-free surface energy " << sigma0
            << " eV/nm^2 already exceeds the target " << sigma_target
            << " eV/nm^2; no w >= 0 fits";
        throw SolverError(msg.str());
    }
    double w_hi = 1e-4;
    auto sigma_of = [&](double w) {
        DftParams q = p;
        q.w = w;
        return planar_surface_energy(q, n0, mu0) - sigma_target;
    };
    for (int i = 0; i < 80 && sigma_of(w_hi) < 0.0; ++i) w_hi *= 2.0;
    boost::math::tools::eps_tolerance<double> tol(48);
    std::uintmax_t max_iter = 200;
    auto bracket = boost::math::tools::toms748_solve(sigma_of, 0.0, w_hi, tol, max_iter);
    p.w = 0.5 * (bracket.first + bracket.second);

    return p;
}

} // namespace heliox::dft
