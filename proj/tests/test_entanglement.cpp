#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "heliox/lindblad/entanglement.hpp"
#include "heliox/lindblad/operators.hpp"

#include <random>

using namespace heliox;
using lindblad::DensityMatrix;
using lindblad::HilbertSpace;
using lindblad::Matrix;
using lindblad::Vector;

namespace {

Matrix random_density(int dim, std::mt19937& gen) {
    std::normal_distribution<double> dist;
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = std::complex<double>(dist(gen), dist(gen));
    Matrix rho = g * g.adjoint();
    rho /= rho.trace();
    return rho;
}

Matrix haar_like_unitary(std::mt19937& gen) {
    std::normal_distribution<double> dist;
    Matrix g(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) g(i, j) = std::complex<double>(dist(gen), dist(gen));
    Eigen::HouseholderQR<Matrix> qr(g);
    return qr.householderQ();
}

} // namespace

TEST_CASE("partial trace of a product state returns the factors") {
    std::mt19937 gen(7);
    HilbertSpace space({2, 3});
    const Matrix ra = random_density(2, gen);
    const Matrix rb = random_density(3, gen);
    DensityMatrix rho(space, lindblad::kron(ra, rb));
    CHECK((lindblad::partial_trace(rho, {0}).rho - ra).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((lindblad::partial_trace(rho, {1}).rho - rb).cwiseAbs().maxCoeff() < 1e-14);
    // keeping everything is the identity
    CHECK((lindblad::partial_trace(rho, {0, 1}).rho - rho.rho).cwiseAbs().maxCoeff() <
          1e-14);
}

TEST_CASE("partial trace of a Bell state is maximally mixed") {
    HilbertSpace space({2, 2});
    Vector bell = (lindblad::basis_ket(space, {0, 1}) +
                   lindblad::basis_ket(space, {1, 0})) /
                  std::sqrt(2.0);
    auto reduced = lindblad::partial_trace(lindblad::pure_state(space, bell), {0});
    CHECK((reduced.rho - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("partial trace preserves the trace on random states") {
    std::mt19937 gen(13);
    HilbertSpace space({2, 3, 2});
    for (int rep = 0; rep < 20; ++rep) {
        DensityMatrix rho(space, random_density(12, gen));
        for (const auto& keep :
             std::vector<std::vector<std::size_t>>{{0}, {1}, {2}, {0, 2}, {1, 2}}) {
            auto reduced = lindblad::partial_trace(rho, keep);
            CHECK(std::abs(reduced.rho.trace().real() - 1.0) < 1e-12);
            CHECK((reduced.rho - reduced.rho.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("partial trace rejects bad factor sets") {
    std::mt19937 gen(17);
    HilbertSpace space({2, 2});
    DensityMatrix rho(space, random_density(4, gen));
    CHECK_THROWS_AS((void)lindblad::partial_trace(rho, {}), ValidationError);
    CHECK_THROWS_AS((void)lindblad::partial_trace(rho, {2}), ValidationError);
    CHECK_THROWS_AS((void)lindblad::partial_trace(rho, {0, 0}), ValidationError);
}

TEST_CASE("concurrence anchors") {
    HilbertSpace space({2, 2});
    // |01> is a product state
    CHECK(lindblad::concurrence(
              lindblad::pure_state(space, lindblad::basis_ket(space, {0, 1}))) ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
    // Bell state
    Vector bell = (lindblad::basis_ket(space, {0, 1}) +
                   lindblad::basis_ket(space, {1, 0})) /
                  std::sqrt(2.0);
    CHECK(lindblad::concurrence(lindblad::pure_state(space, bell)) ==
          doctest::Approx(1.0).epsilon(1e-10));
    // diagonal mixture: Wootters eigenvalues {1/2, 1/2, 0, 0} give C = 0
    Matrix mix = Matrix::Zero(4, 4);
    mix(1, 1) = 0.5;
    mix(2, 2) = 0.5;
    CHECK(lindblad::concurrence(mix) == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
    // Werner state at p = 0.8: C = (3 x 0.8 - 1)/2 = 0.7
    Matrix werner = 0.8 * (bell * bell.adjoint()).eval() +
                    0.2 * 0.25 * Matrix::Identity(4, 4);
    CHECK(lindblad::concurrence(werner) == doctest::Approx(0.7).epsilon(1e-10));
}

TEST_CASE("concurrence is invariant under local unitaries") {
    std::mt19937 gen(29);
    for (int rep = 0; rep < 25; ++rep) {
        const Matrix rho = random_density(4, gen);
        const double c0 = lindblad::concurrence(rho);
        const Matrix u = lindblad::kron(haar_like_unitary(gen), haar_like_unitary(gen));
        const double c1 = lindblad::concurrence(Matrix(u * rho * u.adjoint()));
        CHECK(std::abs(c0 - c1) < 1e-8);
    }
}

TEST_CASE("concurrence requires a two-qubit state") {
    std::mt19937 gen(31);
    CHECK_THROWS_AS((void)lindblad::concurrence(random_density(3, gen)), ValidationError);
}
