#include "heliox/scenarios/analytics.hpp"

#include "heliox/errors.hpp"
#include "heliox/units.hpp"

#include <cmath>

namespace heliox::scenarios {

DressedStateResult dressed_states(double omega_1s, double omega_1p, double g,
                                  double detuning) {
    if (g < 0.0) throw ValidationError("dressed_states: coupling must be >= 0");
    const double hbar = units::hbar_eV_fs;
    const double omega_t = omega_1p - omega_1s;
    const double omega_c = omega_t - detuning;

    DressedStateResult out;
    out.omega_radfs = std::sqrt(detuning * detuning + 4.0 * g * g);
    const double mean = 0.5 * (omega_t + omega_c);
    out.e_plus_eV = hbar * (mean + 0.5 * out.omega_radfs);
    out.e_minus_eV = hbar * (mean - 0.5 * out.omega_radfs);

    // eigenvectors of [[omega_t, g], [g, omega_c]] over {|1P,0>, |1S,1>}
    if (g == 0.0) {
        const bool p_high = omega_t >= omega_c;
        out.plus_composition = p_high ? Eigen::Vector2d(1, 0) : Eigen::Vector2d(0, 1);
        out.minus_composition = p_high ? Eigen::Vector2d(0, 1) : Eigen::Vector2d(1, 0);
    } else {
        const double theta = 0.5 * std::atan2(2.0 * g, detuning);
        out.plus_composition = Eigen::Vector2d(std::cos(theta), std::sin(theta));
        out.minus_composition = Eigen::Vector2d(-std::sin(theta), std::cos(theta));
    }
    return out;
}

double coupling_from_field(double d_enm, double field_VperNm) {
    if (d_enm < 0.0 || field_VperNm < 0.0)
        throw ValidationError("coupling_from_field: dipole and field must be >= 0");
    return d_enm * field_VperNm / units::hbar_eV_fs;
}

double cooperativity(double g_radfs, double kappa_perfs, double gamma_nr_perfs) {
    if (!(kappa_perfs > 0.0) || !(gamma_nr_perfs > 0.0))
        throw ValidationError("cooperativity: kappa and gamma_nr must be positive");
    return 2.0 * g_radfs * g_radfs / (kappa_perfs * gamma_nr_perfs);
}

double first_return_maximum(const std::vector<double>& t, const std::vector<double>& y) {
    if (t.size() != y.size() || t.size() < 5)
        throw ValidationError("first_return_maximum: need matching series");
    std::size_t i = 1;
    while (i + 1 < y.size() && !(y[i] < y[i - 1] && y[i] <= y[i + 1])) ++i; // first minimum
    while (i + 1 < y.size() && !(y[i] > y[i - 1] && y[i] >= y[i + 1])) ++i; // next maximum
    if (i + 1 >= y.size())
        throw ValidationError("first_return_maximum: no return maximum in the window");
    // parabolic refinement through (i-1, i, i+1)
    const double d1 = y[i] - y[i - 1], d2 = y[i] - y[i + 1];
    const double denom = d1 + d2;
    const double shift = denom > 0.0 ? 0.5 * (d1 - d2) / denom : 0.0;
    const double dt = t[i + 1] - t[i];
    return t[i] + shift * dt;
}

double amplitude_in_window(const std::vector<double>& t, const std::vector<double>& y,
                           double t0, double t1) {
    double lo = 1e300, hi = -1e300;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t0 || t[i] >= t1) continue;
        lo = std::min(lo, y[i]);
        hi = std::max(hi, y[i]);
    }
    if (hi < lo) throw ValidationError("amplitude_in_window: empty window");
    return hi - lo;
}

} // namespace heliox::scenarios
