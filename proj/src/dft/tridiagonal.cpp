#include "heliox/dft/tridiagonal.hpp"

#include "heliox/errors.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace heliox::dft {

void SymTridiagonal::apply(const std::vector<double>& x, std::vector<double>& out) const {
    const std::size_t n = size();
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double v = diag[i] * x[i];
        if (i > 0) v += off[i - 1] * x[i - 1];
        if (i + 1 < n) v += off[i] * x[i + 1];
        out[i] = v;
    }
}

std::vector<double> tridiagonal_eigenvalues(const SymTridiagonal& t) {
    const Eigen::Index n = static_cast<Eigen::Index>(t.size());
    Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(t.diag.data(), n);
    Eigen::VectorXd off = Eigen::Map<const Eigen::VectorXd>(t.off.data(), n - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw SolverError("tridiagonal_eigenvalues: QL iteration failed");
    std::vector<double> out(static_cast<std::size_t>(n));
    Eigen::Map<Eigen::VectorXd>(out.data(), n) = solver.eigenvalues();
    return out;
}

template <class Scalar>
TridiagonalFactors<Scalar>::TridiagonalFactors(const std::vector<Scalar>& diag,
                                               const std::vector<Scalar>& off) {
    const std::size_t n = diag.size();
    inv_pivot_.resize(n);
    upper_ = off;
    lower_ = off;
    Scalar pivot = diag[0];
    if (std::abs(pivot) == 0.0) throw SolverError("TridiagonalFactors: zero pivot");
    inv_pivot_[0] = Scalar(1.0) / pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = diag[i] - lower_[i - 1] * upper_[i - 1] * inv_pivot_[i - 1];
        if (std::abs(pivot) == 0.0) throw SolverError("TridiagonalFactors: zero pivot");
        inv_pivot_[i] = Scalar(1.0) / pivot;
    }
}

template <class Scalar>
void TridiagonalFactors<Scalar>::solve(std::vector<Scalar>& rhs) const {
    const std::size_t n = inv_pivot_.size();
    for (std::size_t i = 1; i < n; ++i)
        rhs[i] -= lower_[i - 1] * inv_pivot_[i - 1] * rhs[i - 1];
    rhs[n - 1] *= inv_pivot_[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        rhs[i] = (rhs[i] - upper_[i] * rhs[i + 1]) * inv_pivot_[i];
}

template class TridiagonalFactors<double>;
template class TridiagonalFactors<std::complex<double>>;

EigenPair inverse_iteration(const SymTridiagonal& t, double shift,
                            const std::vector<double>& seed, int max_iterations,
                            double tol) {
    const std::size_t n = t.size();
    std::vector<double> v = seed;
    if (v.size() != n) v.assign(n, 1.0 / std::sqrt(static_cast<double>(n)));

    std::vector<double> tv(n);
    double lambda = shift;
    double residual = 0.0;
    for (int it = 0; it < max_iterations; ++it) {
        std::vector<double> diag = t.diag;
        // slight pivot perturbation keeps the solve regular when the shift
        // sits numerically on the eigenvalue
        const double eps = 1e-12 * (std::abs(lambda) + 1.0);
        for (double& d : diag) d -= lambda + eps;
        TridiagonalFactors<double> lu(diag, t.off);
        lu.solve(v);
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        for (double& x : v) x /= norm;

        t.apply(v, tv);
        double rq = 0.0;
        for (std::size_t i = 0; i < n; ++i) rq += v[i] * tv[i];
        residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = tv[i] - rq * v[i];
            residual += r * r;
        }
        residual = std::sqrt(residual);
        lambda = rq;
        if (residual < tol * (std::abs(lambda) + 1.0)) break;
    }
    // fix an overall sign so results are reproducible
    double head = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(v[i]) > 1e-8) {
            head = v[i];
            break;
        }
    if (head < 0.0)
        for (double& x : v) x = -x;

    return EigenPair{lambda, std::move(v), residual};
}

} // namespace heliox::dft
