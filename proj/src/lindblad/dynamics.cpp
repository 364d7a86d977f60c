#include "heliox/lindblad/dynamics.hpp"

#include "heliox/units.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace heliox::lindblad {

std::size_t TimeSeries::index_of(const std::string& name) const {
    for (std::size_t k = 0; k < names.size(); ++k)
        if (names[k] == name) return k;
    throw ValidationError("TimeSeries: no observable named " + name);
}

const std::vector<double>& TimeSeries::column(const std::string& name) const {
    return values[index_of(name)];
}

namespace {

struct DissipatorWork {
    Matrix c;    // collapse operator
    Matrix cdag; // C^dagger
    Matrix cdc;  // C^dagger C
    double rate;
};

// out.row(i) of -(i/hbar)[H,rho] + sum gamma (C rho C^+ - 1/2 {C^+C, rho});
// every term is a row-vector times matrix product, so the summation order per
// element is fixed regardless of scheduling.
void rhs_rows(const Matrix& rho, const Matrix& h,
              const std::vector<DissipatorWork>& diss, Matrix& out, par::Exec exec) {
    const Eigen::Index dim = rho.rows();
    const std::complex<double> minus_i_over_hbar(0.0, -1.0 / units::hbar_eV_fs);
    par::parallel_for(exec, dim, [&](std::ptrdiff_t i) {
        Eigen::RowVectorXcd row = h.row(i) * rho;
        row.noalias() -= rho.row(i) * h;
        row *= minus_i_over_hbar;
        for (const DissipatorWork& d : diss) {
            Eigen::RowVectorXcd crho = d.c.row(i) * rho;
            row.noalias() += d.rate * (crho * d.cdag);
            row.noalias() -= (0.5 * d.rate) * (d.cdc.row(i) * rho);
            row.noalias() -= (0.5 * d.rate) * (rho.row(i) * d.cdc);
        }
        out.row(i) = row;
    });
}

std::vector<DissipatorWork> prepare(const std::vector<Dissipator>& dissipators,
                                    const HilbertSpace& space) {
    std::vector<DissipatorWork> work;
    work.reserve(dissipators.size());
    for (const Dissipator& d : dissipators) {
        if (!(d.collapse.space == space))
            throw ValidationError("dissipator collapse operator lives on a different space");
        work.push_back({d.collapse.mat, d.collapse.mat.adjoint(),
                        d.collapse.mat.adjoint() * d.collapse.mat, d.rate_per_fs});
    }
    return work;
}

} // namespace

void lindblad_rhs(const Matrix& rho, const Matrix& hamiltonian_eV,
                  const std::vector<Dissipator>& dissipators, Matrix& out, par::Exec exec) {
    std::vector<DissipatorWork> work;
    work.reserve(dissipators.size());
    for (const Dissipator& d : dissipators)
        work.push_back({d.collapse.mat, d.collapse.mat.adjoint(),
                        d.collapse.mat.adjoint() * d.collapse.mat, d.rate_per_fs});
    out.resize(rho.rows(), rho.cols());
    rhs_rows(rho, hamiltonian_eV, work, out, exec);
}

Matrix lindblad_rhs(const DensityMatrix& rho, const Operator& hamiltonian,
                    const std::vector<Dissipator>& dissipators) {
    if (!(rho.space == hamiltonian.space))
        throw ValidationError("lindblad_rhs: operator/state space mismatch");
    if (!hamiltonian.is_hermitian())
        throw ValidationError("lindblad_rhs: hamiltonian is not hermitian");
    std::vector<DissipatorWork> work = prepare(dissipators, rho.space);
    Matrix out(rho.rho.rows(), rho.rho.cols());
    rhs_rows(rho.rho, hamiltonian.mat, work, out, par::Exec::serial);
    return out;
}

double max_allowed_dt_fs(const Operator& h_static,
                         const std::vector<std::pair<Operator, DriveEnvelope>>& drives,
                         const std::vector<Dissipator>& dissipators) {
    double bound = std::numeric_limits<double>::infinity();
    if (!drives.empty()) {
        for (const auto& [op, env] : drives) {
            (void)op;
            if (env.carrier_radfs > 0.0)
                bound = std::min(bound, 2.0 * units::pi / env.carrier_radfs / 40.0);
        }
    } else {
        Eigen::SelfAdjointEigenSolver<Matrix> solver(h_static.mat, Eigen::EigenvaluesOnly);
        const double spread =
            solver.eigenvalues().maxCoeff() - solver.eigenvalues().minCoeff();
        if (spread > 0.0) {
            const double f_max = spread / units::hbar_eV_fs / (2.0 * units::pi);
            bound = std::min(bound, 1.0 / (20.0 * f_max));
        }
    }
    for (const Dissipator& d : dissipators)
        if (d.rate_per_fs > 0.0) bound = std::min(bound, 1.0 / (20.0 * d.rate_per_fs));
    return bound;
}

TimeSeries propagate(const DensityMatrix& rho0, const Operator& h_static,
                     const std::vector<std::pair<Operator, DriveEnvelope>>& drives,
                     const std::vector<Dissipator>& dissipators,
                     const PropagationSpec& spec,
                     const std::vector<Observable>& observables) {
    if (!(rho0.space == h_static.space))
        throw ValidationError("propagate: state/hamiltonian space mismatch");
    if (!h_static.is_hermitian())
        throw ValidationError("propagate: static hamiltonian is not hermitian");
    for (const auto& [op, env] : drives) {
        (void)env;
        if (!(op.space == rho0.space))
            throw ValidationError("propagate: drive operator space mismatch");
    }
    for (const Observable& obs : observables)
        if (!(obs.op.space == rho0.space))
            throw ValidationError("propagate: observable space mismatch");
    validate_density_matrix(rho0);

    if (!(spec.dt_fs > 0.0)) throw ValidationError("propagate: dt must be positive");
    const double dt_bound = max_allowed_dt_fs(h_static, drives, dissipators);
    if (spec.dt_fs > dt_bound * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "propagate: dt = " << spec.dt_fs << " fs too coarse; the "
            << (drives.empty() ? "eigenfrequency" : "carrier") << " guard requires dt <= "
            << dt_bound << " fs";
        throw ValidationError(msg.str());
    }
    const double span = spec.t_end_fs - spec.t_start_fs;
    if (!(span > 0.0)) throw ValidationError("propagate: t_end must exceed t_start");
    const long long nsteps = std::llround(span / spec.dt_fs);
    if (nsteps < 1 || std::abs(nsteps * spec.dt_fs - span) > 1e-6 * spec.dt_fs)
        throw ValidationError("propagate: (t_end - t_start) must be a multiple of dt");

    const std::vector<DissipatorWork> work = prepare(dissipators, rho0.space);
    const Eigen::Index dim = rho0.rho.rows();
    const par::Exec exec = par::default_exec(static_cast<std::size_t>(dim) *
                                             static_cast<std::size_t>(dim));

    TimeSeries out;
    for (const Observable& obs : observables) out.names.push_back(obs.name);
    out.values.resize(observables.size());

    Matrix rho = rho0.rho;
    Matrix h(dim, dim), k1(dim, dim), k2(dim, dim), k3(dim, dim), k4(dim, dim),
        stage(dim, dim);

    auto assemble_h = [&](double t) {
        h = h_static.mat;
        for (const auto& [op, env] : drives) h.noalias() += env.field(t) * op.mat;
    };

    auto record = [&](double t) {
        const double tr = rho.trace().real();
        if (std::abs(tr - 1.0) > 1e-6) {
            std::ostringstream msg;
            msg << "propagate: trace drifted to " << tr << " at t = " << t
                << " fs; halve dt";
            throw GuardError(msg.str());
        }
        if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
            throw GuardError("propagate: hermiticity lost; halve dt");
        if (min_eigenvalue(rho) < -1e-6) {
            std::ostringstream msg;
            msg << "propagate: negativity below -1e-6 at t = " << t << " fs; halve dt";
            throw GuardError(msg.str());
        }
        out.times_fs.push_back(t);
        for (std::size_t k = 0; k < observables.size(); ++k) {
            const std::complex<double> v =
                (observables[k].op.mat.array() * rho.transpose().array()).sum();
            out.values[k].push_back(v.real());
        }
        if (spec.store_states) out.states.push_back(rho);
    };

    record(spec.t_start_fs);
    for (long long step = 0; step < nsteps; ++step) {
        const double t = spec.t_start_fs + step * spec.dt_fs;
        const double half = 0.5 * spec.dt_fs;

        assemble_h(t);
        rhs_rows(rho, h, work, k1, exec);
        stage = rho + half * k1;
        assemble_h(t + half);
        rhs_rows(stage, h, work, k2, exec);
        stage = rho + half * k2;
        rhs_rows(stage, h, work, k3, exec);
        stage = rho + spec.dt_fs * k3;
        assemble_h(t + spec.dt_fs);
        rhs_rows(stage, h, work, k4, exec);
        rho += (spec.dt_fs / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        if ((step + 1) % spec.output_stride == 0 || step + 1 == nsteps)
            record(spec.t_start_fs + (step + 1) * spec.dt_fs);
    }
    return out;
}

} // namespace heliox::lindblad
