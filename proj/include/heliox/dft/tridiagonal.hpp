#pragma once

#include <complex>
#include <vector>

namespace heliox::dft {

// Symmetric tridiagonal matrix, diag.size() = n, off.size() = n - 1.
struct SymTridiagonal {
    std::vector<double> diag;
    std::vector<double> off;

    std::size_t size() const { return diag.size(); }
    void apply(const std::vector<double>& x, std::vector<double>& out) const;
};

// All eigenvalues, ascending (no vectors; vectors come from inverse iteration).
std::vector<double> tridiagonal_eigenvalues(const SymTridiagonal& t);

struct EigenPair {
    double value = 0.0;
    std::vector<double> vector; // unit 2-norm
    double residual = 0.0;      // ||T v - value v||_2
};

// Shifted inverse iteration refined with Rayleigh quotients.  Converges to
// the eigenpair nearest `shift`; `seed` may be empty (flat start).
EigenPair inverse_iteration(const SymTridiagonal& t, double shift,
                            const std::vector<double>& seed = {},
                            int max_iterations = 60, double tol = 1e-13);

// Prefactored Thomas solve for (possibly complex) tridiagonal systems with
// the fixed sparsity of a 1D Laplacian.  Solves are O(n) and reusable.
template <class Scalar>
class TridiagonalFactors {
public:
    TridiagonalFactors() = default;
    TridiagonalFactors(const std::vector<Scalar>& diag, const std::vector<Scalar>& off);

    void solve(std::vector<Scalar>& rhs_in_solution_out) const;
    std::size_t size() const { return inv_pivot_.size(); }

private:
    std::vector<Scalar> inv_pivot_; // 1 / b'_i
    std::vector<Scalar> upper_;     // c_i
    std::vector<Scalar> lower_;     // a_i (symmetric: = c_{i-1})
};

extern template class TridiagonalFactors<double>;
extern template class TridiagonalFactors<std::complex<double>>;

} // namespace heliox::dft
