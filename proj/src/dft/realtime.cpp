#include "heliox/dft/realtime.hpp"

#include "heliox/dft/spectrum.hpp"
#include "heliox/dft/tridiagonal.hpp"
#include "heliox/units.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

namespace heliox::dft {

namespace {

using cplx = std::complex<double>;
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

} // namespace

RealtimeResult evolve_radial_realtime(const DftParams& params, const BubbleProfile& start,
                                      const RealtimeOptions& opt) {
    const RadialGrid& grid = start.grid;
    const int N = grid.n;
    const double dr = grid.dr();
    const double hbar = units::hbar_eV_fs;
    const double dt = opt.dt_fs;
    if (!(dt > 0.0) || !(opt.t_end_fs > dt))
        throw ValidationError("evolve_radial_realtime: need 0 < dt < t_end");

    const double n_bulk = start.n_bulk_nm3;
    const double mu = start.mu_eV;
    const double f0 = params.f0();
    const double sqnb = std::sqrt(n_bulk);

    // complex helium field sigma = r psi, seeded from the (real) start profile
    std::vector<cplx> sigma(N);
    std::vector<double> sigma_bulk(N);
    for (int i = 0; i < N; ++i) {
        sigma_bulk[i] = grid.r(i) * sqnb;
        sigma[i] = grid.r(i) * std::sqrt(std::max(start.helium_density[i], 0.0));
    }
    const cplx sigma_ghost = grid.r(N) * sqnb;

    // Crank-Nicolson factors for the kinetic half: (1 + i a K) sigma+ = (1 - i a K) sigma
    const double ch = hbar * hbar / (2.0 * params.m_he * dr * dr);
    const double alpha = dt / (2.0 * hbar);
    std::vector<cplx> cn_diag(N, cplx(1.0, 2.0 * alpha * ch));
    cn_diag[0] = cplx(1.0, 3.0 * alpha * ch);
    std::vector<cplx> cn_off(N - 1, cplx(0.0, -alpha * ch));
    const TridiagonalFactors<cplx> cn(cn_diag, cn_off);

    // absorbing mask, damping rate in eV
    std::vector<double> damp(N, 0.0);
    if (opt.absorber.enabled) {
        const double r_on = opt.absorber.start_fraction * grid.r_max_nm;
        for (int i = 0; i < N; ++i) {
            const double x = (grid.r(i) - r_on) / (grid.r_max_nm - r_on);
            if (x > 0.0) damp[i] = opt.absorber.strength_eV * x * x;
        }
    }

    // electron state: occupied level in the instantaneous potential
    std::vector<double> pot(N), u;
    double e_occ = 0.0;
    auto electron_refresh = [&](bool full_solve, double t_now) {
        for (int i = 0; i < N; ++i) pot[i] = f0 * std::norm(sigma[i]) / (grid.r(i) * grid.r(i));
        const SymTridiagonal h = radial_hamiltonian(grid, pot, opt.occupied_l, params.m_e);
        EigenPair pair;
        bool located = false;
        if (!full_solve && !u.empty()) {
            pair = inverse_iteration(h, e_occ, u, 8);
            located = count_nodes(pair.vector) == opt.occupied_nr;
        }
        if (!located) {
            const std::vector<double> evals = tridiagonal_eigenvalues(h);
            if (opt.occupied_nr >= static_cast<int>(evals.size()))
                throw SolverError("evolve_radial_realtime: occupied level index beyond spectrum");
            pair = inverse_iteration(h, evals[static_cast<std::size_t>(opt.occupied_nr)]);
        }
        const double scale = 1.0 / std::sqrt(dr);
        for (double& x : pair.vector) x *= scale;
        u = std::move(pair.vector);
        e_occ = pair.value;
        if (f0 > 0.0 && e_occ >= f0 * n_bulk) {
            std::ostringstream msg;
            msg << "evolve_radial_realtime: tracked level went unbound at t = " << t_now
                << " fs (E = " << e_occ << " eV, U = " << f0 * n_bulk << " eV)";
            throw SolverError(msg.str());
        }
    };
    electron_refresh(true, 0.0);

    std::vector<double> n(N), lapn(N), radii(N);
    for (int i = 0; i < N; ++i) radii[i] = grid.r(i);

    auto half_potential = [&](double step_fs) {
        for (int i = 0; i < N; ++i) n[i] = std::norm(sigma[i]) / (grid.r(i) * grid.r(i));
        // same discrete laplacian of n as the relaxation solver
        for (int i = 0; i < N; ++i) {
            const double q = grid.r(i) * n[i];
            const double qm = (i == 0) ? -q : grid.r(i - 1) * n[i - 1];
            const double qp = (i == N - 1) ? grid.r(N) * n_bulk : grid.r(i + 1) * n[i + 1];
            lapn[i] = (qp - 2.0 * q + qm) / (dr * dr) / grid.r(i);
        }
        for (int i = 0; i < N; ++i) {
            const double phi2 = u[i] * u[i] / (kFourPi * grid.r(i) * grid.r(i));
            const double v = chemical_potential(params, n[i]) - params.w * lapn[i] +
                             f0 * phi2 - mu;
            sigma[i] *= std::polar(1.0, -v * step_fs / hbar);
            if (damp[i] > 0.0) {
                const double decay = std::exp(-damp[i] * step_fs / hbar);
                sigma[i] = sigma_bulk[i] + (sigma[i] - sigma_bulk[i]) * decay;
            }
        }
    };

    RealtimeResult out;
    const int steps = static_cast<int>(std::llround(opt.t_end_fs / dt));
    std::vector<cplx> rhs(N);

    auto record = [&](int step) {
        for (int i = 0; i < N; ++i) n[i] = std::norm(sigma[i]) / (grid.r(i) * grid.r(i));
        out.t_fs.push_back(step * dt);
        const auto r_half = monotone_crossing(radii, n, 0.5 * n_bulk);
        out.radius_nm.push_back(r_half.value_or(0.0));
        out.electron_energy_eV.push_back(e_occ);
        double atoms = 0.0, enorm = 0.0;
        for (int i = 0; i < N; ++i) {
            atoms += std::norm(sigma[i]);
            enorm += u[i] * u[i];
        }
        out.helium_atoms.push_back(kFourPi * atoms * dr);
        out.electron_norm.push_back(enorm * dr);
    };
    record(0);

    // 4th-order hyperdiffusion on the deviation from bulk; the bulk field
    // r sqrt(n) is linear in r and passes through both stencils exactly.
    std::vector<cplx> lap1(N);
    auto filter_high_k = [&]() {
        const double theta = opt.filter_strength;
        for (int i = 0; i < N; ++i) {
            const cplx sm = (i == 0) ? -sigma[0] : sigma[i - 1];
            const cplx sp = (i == N - 1) ? sigma_ghost : sigma[i + 1];
            lap1[i] = sp - 2.0 * sigma[i] + sm;
        }
        for (int i = 0; i < N; ++i) {
            const cplx lm = (i == 0) ? -lap1[0] : lap1[i - 1];
            const cplx lp = (i == N - 1) ? cplx(0.0, 0.0) : lap1[i + 1];
            rhs[i] = sigma[i] - theta * (lp - 2.0 * lap1[i] + lm);
        }
        sigma.swap(rhs);
    };

    const cplx i_ach(0.0, alpha * ch);
    for (int step = 1; step <= steps; ++step) {
        half_potential(0.5 * dt);
        // Crank-Nicolson kinetic step: rhs = (1 - i a K) sigma, then solve
        // (1 + i a K) sigma+ = rhs; the fixed bulk ghost contributes to both
        // sides and lands on the RHS twice.
        rhs[0] = sigma[0] * cplx(1.0, -3.0 * alpha * ch) + i_ach * sigma[1];
        for (int i = 1; i < N - 1; ++i)
            rhs[i] = sigma[i] * cplx(1.0, -2.0 * alpha * ch) +
                     i_ach * (sigma[i - 1] + sigma[i + 1]);
        rhs[N - 1] = sigma[N - 1] * cplx(1.0, -2.0 * alpha * ch) +
                     i_ach * (sigma[N - 2] + sigma_ghost) + i_ach * sigma_ghost;
        sigma = rhs;
        cn.solve(sigma);
        half_potential(0.5 * dt);
        if (opt.high_k_filter) filter_high_k();
        electron_refresh(false, step * dt);
        if (step % opt.output_every == 0 || step == steps) record(step);
    }

    // settling summary
    const std::size_t m = out.radius_nm.size();
    const std::size_t tail = std::max<std::size_t>(1, m / 10);
    double rf = 0.0;
    for (std::size_t i = m - tail; i < m; ++i) rf += out.radius_nm[i];
    rf /= tail;
    out.final_radius_nm = rf;
    const double r0 = out.radius_nm.front();
    const double target = r0 + 0.9 * (rf - r0);
    out.settle_time_fs = out.t_fs.back();
    for (std::size_t i = 0; i < m; ++i) {
        if ((rf >= r0 && out.radius_nm[i] >= target) ||
            (rf < r0 && out.radius_nm[i] <= target)) {
            out.settle_time_fs = out.t_fs[i];
            break;
        }
    }

    // final profile snapshot
    out.final_profile = start;
    for (int i = 0; i < N; ++i) {
        out.final_profile.helium_density[i] = std::norm(sigma[i]) / (grid.r(i) * grid.r(i));
        out.final_profile.electron_wavefunction[i] =
            u[i] / (std::sqrt(kFourPi) * grid.r(i));
    }
    out.final_profile.occupied_nr = opt.occupied_nr;
    out.final_profile.occupied_l = opt.occupied_l;
    out.final_profile.electron_energy_eV = e_occ;
    out.final_profile.radius_nm =
        monotone_crossing(radii, out.final_profile.helium_density, 0.5 * n_bulk);
    return out;
}

} // namespace heliox::dft
