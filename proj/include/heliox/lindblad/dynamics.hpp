#pragma once

#include "heliox/lindblad/operators.hpp"
#include "heliox/parallel.hpp"

#include <string>
#include <utility>
#include <vector>

namespace heliox::lindblad {

// E(t) = G(t) * peak * cos(omega0 t) with G Gaussian such that the FWHM of
// the envelope of E^2 is width_fs.
struct DriveEnvelope {
    double peak_VperNm = 0.0;
    double carrier_radfs = 0.0;
    double width_fs = 100.0;
    double center_fs = 0.0;

    double envelope(double t_fs) const {
        const double x = (t_fs - center_fs) / width_fs;
        return std::exp(-2.0 * 0.6931471805599453 * x * x);
    }
    double field(double t_fs) const {
        return envelope(t_fs) * peak_VperNm * std::cos(carrier_radfs * t_fs);
    }
};

struct PropagationSpec {
    double t_start_fs = 0.0;
    double t_end_fs = 0.0;
    double dt_fs = 0.0;
    int output_stride = 1;
    bool store_states = false; // keep rho snapshots at every output point
};

struct Observable {
    std::string name;
    Operator op;
};

struct TimeSeries {
    std::vector<double> times_fs;
    std::vector<std::string> names;
    std::vector<std::vector<double>> values; // values[k][i]: observable k at time i
    std::vector<Matrix> states;              // optional snapshots

    std::size_t index_of(const std::string& name) const;
    const std::vector<double>& column(const std::string& name) const;
};

// d rho/dt = -(i/hbar)[H, rho] + sum_k gamma_k D[C_k] rho.
// Row-partitioned so the serial and OpenMP paths perform identical
// floating-point operations.
void lindblad_rhs(const Matrix& rho, const Matrix& hamiltonian_eV,
                  const std::vector<Dissipator>& dissipators, Matrix& out,
                  par::Exec exec = par::Exec::serial);

Matrix lindblad_rhs(const DensityMatrix& rho, const Operator& hamiltonian,
                    const std::vector<Dissipator>& dissipators);

// Fixed-step classical RK4 on the master equation in the lab frame (no
// rotating-wave approximation): H(t) = H_static + sum_j E_j(t) H1_j, the
// dipole operators H1 in e nm and the fields in V/nm.  Trace, hermiticity
// and positivity are monitored at output points; drift beyond the guard
// bounds aborts with step-size advice.
TimeSeries propagate(const DensityMatrix& rho0, const Operator& h_static,
                     const std::vector<std::pair<Operator, DriveEnvelope>>& drives,
                     const std::vector<Dissipator>& dissipators,
                     const PropagationSpec& spec, const std::vector<Observable>& observables);

// Largest dt the step-size guards admit for this problem.
double max_allowed_dt_fs(const Operator& h_static,
                         const std::vector<std::pair<Operator, DriveEnvelope>>& drives,
                         const std::vector<Dissipator>& dissipators);

} // namespace heliox::lindblad
