#pragma once

// Dense operator algebra over small composite Hilbert spaces.  Factor 0 is
// the leftmost (most significant) slot of the tensor product.

#include "heliox/errors.hpp"

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

namespace heliox::lindblad {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct HilbertSpace {
    std::vector<int> dims;

    HilbertSpace() = default;
    explicit HilbertSpace(std::vector<int> d) : dims(std::move(d)) { validate(); }

    int total_dim() const {
        int n = 1;
        for (int d : dims) n *= d;
        return n;
    }
    std::size_t factors() const { return dims.size(); }
    bool operator==(const HilbertSpace& o) const { return dims == o.dims; }

    void validate() const {
        if (dims.empty()) throw ValidationError("HilbertSpace: no factors");
        for (int d : dims)
            if (d < 2) throw ValidationError("HilbertSpace: factor dimension < 2");
        long long n = 1;
        for (int d : dims) n *= d;
        if (n > 4096) throw ValidationError("HilbertSpace: total dimension exceeds 4096");
    }
};

struct Operator {
    HilbertSpace space;
    Matrix mat;

    Operator() = default;
    Operator(HilbertSpace s, Matrix m) : space(std::move(s)), mat(std::move(m)) {
        if (mat.rows() != space.total_dim() || mat.cols() != space.total_dim())
            throw ValidationError("Operator: matrix does not match space dimension");
    }

    bool is_hermitian(double tol = 1e-12) const {
        return (mat - mat.adjoint()).cwiseAbs().maxCoeff() < tol;
    }
};

Matrix kron(const Matrix& a, const Matrix& b);

Operator identity(const HilbertSpace& space);

// a |n> = sqrt(n) |n-1> on a dim-level truncation
Operator annihilation(int dim);

// tensor-product lift of a single-factor operator: I x ... x A x ... x I
Operator embed(const Operator& local, std::size_t factor, const HilbertSpace& space);

// basis ket |i0 i1 ...> of a composite space
Vector basis_ket(const HilbertSpace& space, const std::vector<int>& occupation);

struct DensityMatrix {
    HilbertSpace space;
    Matrix rho;

    DensityMatrix() = default;
    DensityMatrix(HilbertSpace s, Matrix m) : space(std::move(s)), rho(std::move(m)) {
        if (rho.rows() != space.total_dim() || rho.cols() != space.total_dim())
            throw ValidationError("DensityMatrix: matrix does not match space dimension");
    }
};

DensityMatrix pure_state(const HilbertSpace& space, const Vector& psi);

// trace within tol of 1, hermitian, and no eigenvalue below -tol_neg
void validate_density_matrix(const DensityMatrix& rho, double tol_trace = 1e-9,
                             double tol_herm = 1e-9, double tol_neg = 1e-8);

double min_eigenvalue(const Matrix& hermitian);

struct Dissipator {
    Operator collapse;
    double rate_per_fs = 0.0;

    Dissipator() = default;
    Dissipator(Operator c, double rate) : collapse(std::move(c)), rate_per_fs(rate) {
        if (rate_per_fs < 0.0) throw ValidationError("Dissipator: negative rate");
    }
};

} // namespace heliox::lindblad
