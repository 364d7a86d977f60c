#include "heliox/dft/eos.hpp"

#include "heliox/errors.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <sstream>

namespace heliox::dft {

double bulk_energy_density(const DftParams& p, double n) {
    const double n2 = n * n;
    return 0.5 * p.g2 * n2 + (1.0 / 3.0) * p.g3 * n2 * n + 0.25 * p.g4 * n2 * n2;
}

double chemical_potential(const DftParams& p, double n) {
    return (p.g2 + (p.g3 + p.g4 * n) * n) * n;
}

double dmu_dn(const DftParams& p, double n) {
    return p.g2 + 2.0 * p.g3 * n + 3.0 * p.g4 * n * n;
}

double pressure_eV_nm3(const DftParams& p, double n) {
    return chemical_potential(p, n) * n - bulk_energy_density(p, n);
}

double pressure_bar(const DftParams& p, double n) {
    return units::bar_from_eV_nm3(pressure_eV_nm3(p, n));
}

double spinodal_density(const DftParams& p) {
    // dp/dn = n dmu/dn; positive root of dmu/dn = 0
    const double a = 3.0 * p.g4, b = 2.0 * p.g3, c = p.g2;
    const double disc = b * b - 4.0 * a * c;
    if (!(a > 0.0) || disc <= 0.0) return 0.0;
    return (-b + std::sqrt(disc)) / (2.0 * a);
}

double spinodal_pressure_bar(const DftParams& p) {
    return pressure_bar(p, spinodal_density(p));
}

BulkState solve_bulk_eos(const DftParams& p, double target_bar) {
    const double n_sp = spinodal_density(p);
    const double p_sp = pressure_bar(p, n_sp);
    if (target_bar < p_sp) {
        std::ostringstream msg;
        msg << "solve_bulk_eos: pressure " << target_bar
            << " bar is below the spinodal pressure " << p_sp
            << " bar; no stable bulk solution";
        throw SolverError(msg.str());
    }

    // p(n) is monotone increasing for n > n_sp; expand an upper bracket
    double lo = n_sp;
    double hi = n_sp > 0.0 ? 2.0 * n_sp : 1.0;
    for (int i = 0; i < 80 && pressure_bar(p, hi) < target_bar; ++i) hi *= 1.5;
    if (pressure_bar(p, hi) < target_bar)
        throw SolverError("solve_bulk_eos: failed to bracket the target pressure");

    auto f = [&](double n) { return pressure_bar(p, n) - target_bar; };
    boost::math::tools::eps_tolerance<double> tol(52);
    std::uintmax_t max_iter = 200;
    auto bracket = boost::math::tools::toms748_solve(f, lo, hi, tol, max_iter);
    double n = 0.5 * (bracket.first + bracket.second);

    // Newton polish so the residual meets the 1e-9 bar contract
    for (int i = 0; i < 4; ++i) {
        const double dp = n * dmu_dn(p, n); // eV/nm^3 per nm^-3
        if (dp <= 0.0) break;
        n -= units::eV_nm3_from_bar(f(n)) / dp;
    }
    if (std::abs(f(n)) > 1e-9)
        throw SolverError("solve_bulk_eos: residual above 1e-9 bar after polish");

    return BulkState{n, chemical_potential(p, n), target_bar};
}

double barrier_height_eV(const DftParams& p, double n_nm3) {
    return p.f0() * n_nm3;
}

} // namespace heliox::dft
