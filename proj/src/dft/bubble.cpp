#include "heliox/dft/bubble.hpp"

#include "heliox/dft/spectrum.hpp"
#include "heliox/dft/tridiagonal.hpp"
#include "heliox/units.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

namespace heliox::dft {

namespace {

constexpr double kFourPi = 4.0 * units::pi;

int count_nodes(const std::vector<double>& u) {
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

// (1/r) d^2(r n)/dr^2 with the parity ghost at the origin and bulk extension
// beyond r_max
void radial_laplacian_density(const RadialGrid& g, const std::vector<double>& n,
                              double n_bulk, std::vector<double>& out) {
    const int N = g.n;
    const double dr = g.dr();
    const double inv = 1.0 / (dr * dr);
    out.resize(N);
    for (int i = 0; i < N; ++i) {
        const double q = g.r(i) * n[i];
        const double qm = (i == 0) ? -q : g.r(i - 1) * n[i - 1];
        const double qp = (i == N - 1) ? g.r(N) * n_bulk : g.r(i + 1) * n[i + 1];
        out[i] = (qp - 2.0 * q + qm) * inv / g.r(i);
    }
}

double grand_energy_arrays(const DftParams& p, const RadialGrid& g,
                           const std::vector<double>& s, double n_bulk, double mu,
                           double e_occ) {
    const int N = g.n;
    const double dr = g.dr();
    const double kin = units::hbar_eV_fs * units::hbar_eV_fs / (2.0 * p.m_he);
    const double sqnb = std::sqrt(n_bulk);

    auto psi_at = [&](int i) -> double {
        if (i < 0) return s[0] / g.r(0); // psi even across the origin
        if (i >= N) return sqnb;
        return s[i] / g.r(i);
    };
    double total = 0.0;
    for (int i = 0; i < N; ++i) {
        const double r = g.r(i);
        const double psi = psi_at(i);
        const double n = psi * psi;
        const double dpsi = (psi_at(i + 1) - psi_at(i - 1)) / (2.0 * dr);
        const double nm = psi_at(i - 1) * psi_at(i - 1);
        const double np = psi_at(i + 1) * psi_at(i + 1);
        const double dn = (np - nm) / (2.0 * dr);
        total += (kin * dpsi * dpsi + bulk_energy_density(p, n) - mu * n +
                  0.5 * p.w * dn * dn) *
                 r * r;
    }
    return kFourPi * total * dr + e_occ;
}

struct ElectronState {
    std::vector<double> u; // int u^2 dr = 1
    double energy = 0.0;
    double residual = 0.0; // ||(H - E) v||_2, eV
};

// occupied-level solve in the potential f0 n(r); tracks the previous vector
// when available, falls back to a full eigenvalue scan
void solve_electron(const DftParams& p, const RadialGrid& g, const std::vector<double>& s,
                    double n_bulk, int n_r, int l, ElectronState& st) {
    const double f0 = p.f0();
    std::vector<double> pot(g.n);
    for (int i = 0; i < g.n; ++i) {
        const double psi = s[i] / g.r(i);
        pot[i] = f0 * psi * psi;
    }
    const SymTridiagonal h = radial_hamiltonian(g, pot, l, p.m_e);

    EigenPair pair;
    bool located = false;
    if (!st.u.empty()) {
        // seed scale is irrelevant; inverse iteration renormalizes
        pair = inverse_iteration(h, st.energy, st.u, 12);
        located = count_nodes(pair.vector) == n_r;
    }
    if (!located) {
        const std::vector<double> evals = tridiagonal_eigenvalues(h);
        if (n_r >= static_cast<int>(evals.size()))
            throw SolverError("relax_bubble: requested level index beyond spectrum");
        pair = inverse_iteration(h, evals[static_cast<std::size_t>(n_r)]);
        if (count_nodes(pair.vector) != n_r)
            throw SolverError("relax_bubble: could not isolate the requested level");
    }
    const double scale = 1.0 / std::sqrt(g.dr());
    for (double& x : pair.vector) x *= scale;
    st.u = std::move(pair.vector);
    st.energy = pair.value;
    st.residual = pair.residual;
    if (f0 > 0.0 && st.energy >= f0 * n_bulk)
        throw SolverError("relax_bubble: occupied electron level is unbound (E >= U)");
}

} // namespace

double grand_energy(const DftParams& params, const BubbleProfile& profile) {
    std::vector<double> s(profile.grid.n);
    for (int i = 0; i < profile.grid.n; ++i)
        s[i] = profile.grid.r(i) * std::sqrt(std::max(profile.helium_density[i], 0.0));
    return grand_energy_arrays(params, profile.grid, s, profile.n_bulk_nm3, profile.mu_eV,
                               profile.electron_energy_eV);
}

BubbleProfile relax_bubble(const DftParams& params, const RadialGrid& grid,
                           double pressure_bar, const RelaxOptions& opt) {
    const BulkState bulk = solve_bulk_eos(params, pressure_bar);
    const int N = grid.n;
    const double dr = grid.dr();
    const double hbar = units::hbar_eV_fs;
    const double ch = hbar * hbar / (2.0 * params.m_he * dr * dr); // kinetic scale, eV
    const double f0 = params.f0();
    const double n_bulk = bulk.n_nm3;
    const double sqnb = std::sqrt(n_bulk);
    const double s_ghost = grid.r(N) * sqnb;

    std::vector<double> s(N);
    if (f0 > 0.0) {
        // tanh-seeded hole; the flow moves the interface to its equilibrium
        for (int i = 0; i < N; ++i) {
            const double r = grid.r(i);
            s[i] = r * sqnb * 0.5 * (1.0 + std::tanh((r - opt.seed_radius_nm) / 0.15));
        }
    } else {
        for (int i = 0; i < N; ++i) s[i] = grid.r(i) * sqnb;
    }

    ElectronState electron;
    solve_electron(params, grid, s, n_bulk, opt.occupied_nr, opt.occupied_l, electron);

    double omega = grand_energy_arrays(params, grid, s, n_bulk, bulk.mu_eV, electron.energy);
    double dtau = opt.dtau_init_fs;

    std::vector<double> n(N), lapn(N), vhe(N), rhs(N), diag(N), off(N - 1);
    std::vector<double> s_trial(N);
    ElectronState electron_trial;
    std::deque<double> history;
    double res_psi = 1.0, res_phi = 1.0, res_prev = 1e300;
    double worst_rise = 0.0;
    int accept_streak = 0;

    int it = 0;
    bool converged = false;
    for (; it < opt.max_iterations; ++it) {
        for (int i = 0; i < N; ++i) {
            const double psi = s[i] / grid.r(i);
            n[i] = psi * psi;
        }
        radial_laplacian_density(grid, n, n_bulk, lapn);
        for (int i = 0; i < N; ++i) {
            const double phi2 =
                electron.u[i] * electron.u[i] / (kFourPi * grid.r(i) * grid.r(i));
            vhe[i] = chemical_potential(params, n[i]) - params.w * lapn[i] + f0 * phi2 -
                     bulk.mu_eV;
        }

        // stationarity: || (K + V) s - source || / (hbar ||s||), the actual
        // d psi / d tau rate at the current field
        {
            double gnorm = 0.0, snorm = 0.0;
            for (int i = 0; i < N; ++i) {
                double ks = 2.0 * ch * s[i];
                ks -= ch * (i == 0 ? -s[0] : s[i - 1]);
                ks -= ch * (i == N - 1 ? s_ghost : s[i + 1]);
                const double g = ks + vhe[i] * s[i];
                gnorm += g * g;
                snorm += s[i] * s[i];
            }
            res_psi = std::sqrt(gnorm / snorm) / hbar;
            res_phi = electron.residual / hbar;
        }
        history.push_back(res_psi);
        if (history.size() > 8) history.pop_front();
        if (it > 4 && res_psi < opt.tolerance && res_phi < opt.tolerance) {
            converged = true;
            break;
        }
        // a growing stationarity residual means the last step was too
        // aggressive even though the energy check let it through
        if (it > 0 && res_psi > 1.5 * res_prev) {
            dtau = std::max(0.5 * dtau, 1e-6);
            accept_streak = 0;
        }
        res_prev = res_psi;

        // Semi-implicit increment step (modified Newton as dtau grows):
        //   (I + dtau/hbar J) delta = -(dtau/hbar) [(K + V) s - src],
        // where J is the exact helium Jacobian of the flow in the s variable
        // (symmetric tridiagonal; the surface-gradient term couples nearest
        // neighbours through -2 w psi_i psi_{i+1} / dr^2).
        bool accepted = false;
        while (!accepted) {
            const double a = dtau / hbar;
            bool factorable = true;
            for (int i = 0; i < N; ++i) {
                const double jdiag = vhe[i] + 2.0 * n[i] * dmu_dn(params, n[i]) +
                                     4.0 * params.w * n[i] / (dr * dr);
                diag[i] = 1.0 + a * (2.0 * ch + jdiag);
                if (i == 0) diag[i] += a * ch; // odd origin ghost
                if (diag[i] < 1e-12) factorable = false;
            }
            if (factorable) {
                for (int i = 0; i + 1 < N; ++i) {
                    const double psi_i = s[i] / grid.r(i);
                    const double psi_n = s[i + 1] / grid.r(i + 1);
                    off[i] = -a * (ch + 2.0 * params.w * psi_i * psi_n / (dr * dr));
                }
                for (int i = 0; i < N; ++i) {
                    double ks = 2.0 * ch * s[i];
                    ks -= ch * (i == 0 ? -s[0] : s[i - 1]);
                    ks -= ch * (i == N - 1 ? s_ghost : s[i + 1]);
                    rhs[i] = -a * (ks + vhe[i] * s[i]);
                }
                TridiagonalFactors<double> lu(diag, off);
                lu.solve(rhs);
                for (int i = 0; i < N; ++i) s_trial[i] = s[i] + rhs[i];

                electron_trial = electron;
                solve_electron(params, grid, s_trial, n_bulk, opt.occupied_nr,
                               opt.occupied_l, electron_trial);
                const double omega_new = grand_energy_arrays(
                    params, grid, s_trial, n_bulk, bulk.mu_eV, electron_trial.energy);
                if (omega_new <= omega + 1e-12 * std::abs(omega)) {
                    worst_rise = std::max(
                        worst_rise, (omega_new - omega) / std::max(std::abs(omega), 1e-300));
                    s.swap(s_trial);
                    electron = std::move(electron_trial);
                    omega = omega_new;
                    accepted = true;
                    if (++accept_streak >= 20) {
                        accept_streak = 0;
                        dtau = std::min(dtau * 2.0, opt.dtau_max_fs);
                    }
                    break;
                }
            }
            accept_streak = 0;
            dtau *= 0.25;
            if (dtau < 1e-9)
                throw SolverError("relax_bubble: step size collapsed without descent");
        }
    }
    if (!converged) {
        std::ostringstream msg;
        msg << "relax_bubble: no convergence after " << opt.max_iterations
            << " iterations; trailing helium residuals (1/fs):";
        for (double r : history) msg << ' ' << r;
        throw SolverError(msg.str());
    }

    BubbleProfile out;
    out.grid = grid;
    out.helium_density.resize(N);
    out.electron_wavefunction.resize(N);
    std::vector<double> radii(N);
    for (int i = 0; i < N; ++i) {
        const double psi = s[i] / grid.r(i);
        out.helium_density[i] = psi * psi;
        out.electron_wavefunction[i] = electron.u[i] / (std::sqrt(kFourPi) * grid.r(i));
        radii[i] = grid.r(i);
    }
    out.occupied_nr = opt.occupied_nr;
    out.occupied_l = opt.occupied_l;
    out.radius_nm = monotone_crossing(radii, out.helium_density, 0.5 * n_bulk);
    out.barrier_eV = barrier_height_eV(params, n_bulk);
    out.pressure_bar = pressure_bar;
    out.n_bulk_nm3 = n_bulk;
    out.mu_eV = bulk.mu_eV;
    out.electron_energy_eV = electron.energy;
    out.iterations = it;
    out.residual_helium = res_psi;
    out.residual_electron = res_phi;
    out.grand_energy_eV = omega;
    out.energy_monotone = worst_rise <= 1e-12;

    // the far field must have recovered the bulk well inside the box
    double dev = 0.0;
    for (int i = static_cast<int>(0.9 * N); i < N - 2; ++i)
        dev = std::max(dev, std::abs(out.helium_density[i] - n_bulk) / n_bulk);
    if (dev > 1e-3) {
        std::ostringstream msg;
        msg << "relax_bubble: helium density deviates from bulk by " << dev
            << " near r_max; enlarge the grid";
        throw ValidationError(msg.str());
    }
    return out;
}

} // namespace heliox::dft
