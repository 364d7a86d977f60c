#include "heliox/dft/spectrum.hpp"

#include "heliox/units.hpp"

#include <algorithm>
#include <cmath>

namespace heliox::dft {

std::string ElectronLevel::label() const {
    static const char letters[] = "SPDFGH";
    std::string out = std::to_string(n_r + 1);
    out += (l < 6) ? letters[l] : static_cast<char>('I' + (l - 6));
    return out;
}

SymTridiagonal radial_hamiltonian(const RadialGrid& grid, const std::vector<double>& potential_eV,
                                  int l, double m_e) {
    if (static_cast<int>(potential_eV.size()) != grid.n)
        throw ValidationError("radial_hamiltonian: potential/grid size mismatch");
    const double dr = grid.dr();
    const double c = units::hbar_eV_fs * units::hbar_eV_fs / (2.0 * m_e * dr * dr);
    const double cf = units::hbar_eV_fs * units::hbar_eV_fs * l * (l + 1) / (2.0 * m_e);

    SymTridiagonal t;
    t.diag.resize(grid.n);
    t.off.assign(grid.n - 1, -c);
    for (int i = 0; i < grid.n; ++i) {
        const double r = grid.r(i);
        t.diag[i] = 2.0 * c + potential_eV[i] + cf / (r * r);
    }
    // origin ghost: u(-r) = (-1)^(l+1) u(r) since u ~ r^(l+1)
    t.diag[0] += (l % 2 == 0) ? c : -c;
    // hard wall: u = 0 at r_max, midway to the ghost node
    t.diag[grid.n - 1] += c;
    return t;
}

namespace {

int interior_sign_changes(const std::vector<double>& u) {
    double peak = 0.0;
    for (double x : u) peak = std::max(peak, std::abs(x));
    const double floor = 1e-9 * peak;
    int changes = 0;
    double prev = 0.0;
    for (double x : u) {
        if (std::abs(x) <= floor) continue;
        if (prev != 0.0 && x * prev < 0.0) ++changes;
        prev = x;
    }
    return changes;
}

} // namespace

std::vector<ElectronLevel> solve_bound_levels(const RadialGrid& grid,
                                              const std::vector<double>& potential_eV,
                                              double bound_eV, int l_max, int n_max,
                                              double m_e) {
    const double dr = grid.dr();
    std::vector<ElectronLevel> levels;
    for (int l = 0; l <= l_max; ++l) {
        const SymTridiagonal h = radial_hamiltonian(grid, potential_eV, l, m_e);
        const std::vector<double> evals = tridiagonal_eigenvalues(h);
        for (int k = 0; k < n_max && k < static_cast<int>(evals.size()); ++k) {
            if (evals[k] >= bound_eV) break; // ascending; the rest are unbound
            EigenPair pair = inverse_iteration(h, evals[k]);
            // normalize int u^2 dr = 1
            const double scale = 1.0 / std::sqrt(dr);
            for (double& x : pair.vector) x *= scale;
            ElectronLevel level;
            level.n_r = interior_sign_changes(pair.vector);
            level.l = l;
            level.energy_eV = pair.value;
            level.u = std::move(pair.vector);
            level.grid = grid;
            levels.push_back(std::move(level));
        }
    }
    std::stable_sort(levels.begin(), levels.end(),
                     [](const ElectronLevel& a, const ElectronLevel& b) {
                         return a.energy_eV < b.energy_eV;
                     });
    return levels;
}

std::vector<ElectronLevel> electron_spectrum(const DftParams& params,
                                             const BubbleProfile& profile, int l_max,
                                             int n_max) {
    std::vector<double> potential(profile.helium_density.size());
    const double f0 = params.f0();
    for (std::size_t i = 0; i < potential.size(); ++i)
        potential[i] = f0 * profile.helium_density[i];
    return solve_bound_levels(profile.grid, potential, profile.barrier_eV, l_max, n_max,
                              params.m_e);
}

TransitionDipole transition_dipole(const ElectronLevel& a, const ElectronLevel& b) {
    if (!a.grid.same_as(b.grid))
        throw ValidationError("transition_dipole: levels live on different grids");

    TransitionDipole out;
    out.from = a.label();
    out.to = b.label();
    out.delta_e_eV = std::abs(b.energy_eV - a.energy_eV);
    out.lambda_um =
        out.delta_e_eV > 0.0 ? units::energy_to_wavelength_um(out.delta_e_eV) : 0.0;

    if (std::abs(a.l - b.l) != 1) {
        out.d_enm = 0.0; // dipole selection rule for m = 0, z polarization
        return out;
    }
    const int l_low = std::min(a.l, b.l);
    const double angular = (l_low + 1) / std::sqrt((2.0 * l_low + 1) * (2.0 * l_low + 3));
    const double dr = a.grid.dr();
    double radial = 0.0;
    for (int i = 0; i < a.grid.n; ++i) radial += a.u[i] * b.u[i] * a.grid.r(i);
    radial *= dr;
    out.d_enm = angular * std::abs(radial);
    return out;
}

double spontaneous_rate_per_s(double d_enm, double lambda_um) {
    if (d_enm < 0.0) throw ValidationError("spontaneous_rate: dipole must be >= 0");
    if (!(lambda_um > 0.0)) throw ValidationError("spontaneous_rate: wavelength must be positive");
    const double omega = 2.0 * units::pi * units::c_nm_per_fs / (lambda_um * 1e3); // rad/fs
    const double gamma_perfs =
        omega * omega * omega * d_enm * d_enm /
        (3.0 * units::pi * units::vacuum_permittivity * units::hbar_eV_fs *
         units::c_nm_per_fs * units::c_nm_per_fs * units::c_nm_per_fs);
    return units::per_s_from_rate_perfs(gamma_perfs);
}

} // namespace heliox::dft
