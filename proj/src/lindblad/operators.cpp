#include "heliox/lindblad/operators.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace heliox::lindblad {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Operator identity(const HilbertSpace& space) {
    return Operator(space, Matrix::Identity(space.total_dim(), space.total_dim()));
}

Operator annihilation(int dim) {
    if (dim < 2) throw ValidationError("annihilation: dimension must be >= 2");
    Matrix a = Matrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return Operator(HilbertSpace({dim}), std::move(a));
}

Operator embed(const Operator& local, std::size_t factor, const HilbertSpace& space) {
    if (factor >= space.factors()) throw ValidationError("embed: factor index out of range");
    if (local.mat.rows() != space.dims[factor])
        throw ValidationError("embed: local dimension does not match the factor");
    Matrix out = Matrix::Identity(1, 1);
    for (std::size_t k = 0; k < space.factors(); ++k) {
        if (k == factor)
            out = kron(out, local.mat);
        else
            out = kron(out, Matrix::Identity(space.dims[k], space.dims[k]));
    }
    return Operator(space, std::move(out));
}

Vector basis_ket(const HilbertSpace& space, const std::vector<int>& occupation) {
    if (occupation.size() != space.factors())
        throw ValidationError("basis_ket: occupation length mismatch");
    int index = 0;
    for (std::size_t k = 0; k < space.factors(); ++k) {
        if (occupation[k] < 0 || occupation[k] >= space.dims[k])
            throw ValidationError("basis_ket: occupation out of range");
        index = index * space.dims[k] + occupation[k];
    }
    Vector psi = Vector::Zero(space.total_dim());
    psi(index) = 1.0;
    return psi;
}

DensityMatrix pure_state(const HilbertSpace& space, const Vector& psi) {
    if (psi.size() != space.total_dim())
        throw ValidationError("pure_state: ket does not match space dimension");
    const double norm = psi.norm();
    if (norm == 0.0) throw ValidationError("pure_state: zero ket");
    Vector v = psi / norm;
    return DensityMatrix(space, v * v.adjoint());
}

double min_eigenvalue(const Matrix& hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

void validate_density_matrix(const DensityMatrix& rho, double tol_trace, double tol_herm,
                             double tol_neg) {
    const double tr = rho.rho.trace().real();
    if (std::abs(tr - 1.0) > tol_trace)
        throw ValidationError("density matrix: trace deviates from 1 by " +
                              std::to_string(tr - 1.0));
    if ((rho.rho - rho.rho.adjoint()).cwiseAbs().maxCoeff() > tol_herm)
        throw ValidationError("density matrix: not hermitian");
    const double lmin = min_eigenvalue(rho.rho);
    if (lmin < -tol_neg)
        throw ValidationError("density matrix: negative eigenvalue " + std::to_string(lmin));
}

} // namespace heliox::lindblad
