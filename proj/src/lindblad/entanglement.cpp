#include "heliox/lindblad/entanglement.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace heliox::lindblad {

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::size_t>& keep) {
    const auto& dims = rho.space.dims;
    if (keep.empty()) throw ValidationError("partial_trace: keep set is empty");
    std::vector<bool> kept(dims.size(), false);
    for (std::size_t k : keep) {
        if (k >= dims.size()) throw ValidationError("partial_trace: factor index out of range");
        if (kept[k]) throw ValidationError("partial_trace: duplicate factor index");
        kept[k] = true;
    }
    std::vector<std::size_t> keep_sorted(keep);
    std::sort(keep_sorted.begin(), keep_sorted.end());

    std::vector<int> kdims, tdims;
    for (std::size_t k = 0; k < dims.size(); ++k)
        (kept[k] ? kdims : tdims).push_back(dims[k]);
    int kdim = 1, tdim = 1;
    for (int d : kdims) kdim *= d;
    for (int d : tdims) tdim *= d;

    // global index from (kept multi-index, traced multi-index)
    auto global = [&](int ki, int ti) {
        int idx = 0;
        int krem = ki, trem = ti;
        // decode both in row-major over their own dim lists, then interleave
        std::vector<int> kdigits(kdims.size()), tdigits(tdims.size());
        for (std::size_t p = kdims.size(); p-- > 0;) {
            kdigits[p] = krem % kdims[p];
            krem /= kdims[p];
        }
        for (std::size_t p = tdims.size(); p-- > 0;) {
            tdigits[p] = trem % tdims[p];
            trem /= tdims[p];
        }
        std::size_t kp = 0, tp = 0;
        for (std::size_t f = 0; f < dims.size(); ++f)
            idx = idx * dims[f] + (kept[f] ? kdigits[kp++] : tdigits[tp++]);
        return idx;
    };

    Matrix out = Matrix::Zero(kdim, kdim);
    for (int i = 0; i < kdim; ++i)
        for (int j = 0; j < kdim; ++j) {
            std::complex<double> sum = 0.0;
            for (int t = 0; t < tdim; ++t) sum += rho.rho(global(i, t), global(j, t));
            out(i, j) = sum;
        }
    HilbertSpace reduced{kdims};
    return DensityMatrix(reduced, std::move(out));
}

double concurrence(const Matrix& rho) {
    if (rho.rows() != 4 || rho.cols() != 4)
        throw ValidationError("concurrence: needs a 4x4 two-qubit density matrix");
    Matrix flip = Matrix::Zero(4, 4); // sigma_y x sigma_y
    flip(0, 3) = -1.0;
    flip(1, 2) = 1.0;
    flip(2, 1) = 1.0;
    flip(3, 0) = -1.0;
    // The l_i are the decreasing square roots of the eigenvalues of
    // rho (sy x sy) rho* (sy x sy).  With rho = u u^+ they equal the singular
    // values of the complex-symmetric u^T (sy x sy) u, which avoids taking
    // square roots of near-zero eigenvalues of a nonsymmetric product.
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + Matrix(rho.adjoint())));
    Matrix u = es.eigenvectors();
    for (int k = 0; k < 4; ++k)
        u.col(k) *= std::sqrt(std::max(es.eigenvalues()(k), 0.0));
    const Matrix m = u.transpose() * flip * u;
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& lambda = svd.singularValues(); // sorted decreasing
    const double c = lambda(0) - lambda(1) - lambda(2) - lambda(3);
    return std::clamp(c, 0.0, 1.0);
}

double concurrence(const DensityMatrix& rho) {
    if (rho.space.total_dim() != 4)
        throw ValidationError("concurrence: needs a two-qubit state");
    return concurrence(rho.rho);
}

} // namespace heliox::lindblad
