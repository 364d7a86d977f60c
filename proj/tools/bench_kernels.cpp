// Serial / OpenMP kernel benchmark.  Both paths perform identical
// floating-point operations, so the max-difference column must print 0.
//
//   heliox-bench [reps]

#include "heliox/lindblad/dynamics.hpp"
#include "heliox/parallel.hpp"
#include "heliox/units.hpp"

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

using namespace heliox;
using lindblad::Matrix;

namespace {

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

Matrix random_hermitian(int dim, std::mt19937& gen) {
    std::normal_distribution<double> dist;
    Matrix m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = std::complex<double>(dist(gen), dist(gen));
    return 0.5 * (m + Matrix(m.adjoint()));
}

Matrix random_density(int dim, std::mt19937& gen) {
    std::normal_distribution<double> dist;
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = std::complex<double>(dist(gen), dist(gen));
    Matrix rho = g * g.adjoint();
    rho /= rho.trace();
    return rho;
}

void bench_rhs(int dim, int reps, std::mt19937& gen) {
    using lindblad::Dissipator;
    using lindblad::HilbertSpace;
    using lindblad::Operator;

    HilbertSpace space({dim});
    const Matrix h = random_hermitian(dim, gen);
    const Matrix rho = random_density(dim, gen);
    Matrix c = Matrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) c(n - 1, n) = 1.0;
    std::vector<Dissipator> diss{Dissipator(Operator(space, c), 1e-3)};

    Matrix out_serial(dim, dim), out_omp(dim, dim);
    double t0 = now_ms();
    for (int r = 0; r < reps; ++r)
        lindblad::lindblad_rhs(rho, h, diss, out_serial, par::Exec::serial);
    const double serial_ms = (now_ms() - t0) / reps;
    t0 = now_ms();
    for (int r = 0; r < reps; ++r)
        lindblad::lindblad_rhs(rho, h, diss, out_omp, par::Exec::openmp);
    const double omp_ms = (now_ms() - t0) / reps;

    const double diff = (out_serial - out_omp).cwiseAbs().maxCoeff();
    std::printf("lindblad_rhs   dim %5d   serial %9.4f ms   omp %9.4f ms   x%.2f   max|diff| %g\n",
                dim, serial_ms, omp_ms, serial_ms / omp_ms, diff);
}

void bench_radial(int n, int reps, std::mt19937& gen) {
    std::uniform_real_distribution<double> dist(0.5, 1.5);
    std::vector<double> field(static_cast<std::size_t>(n));
    for (double& x : field) x = dist(gen);
    const double dr = 8.0 / n;

    auto energy = [&](par::Exec exec) {
        // the polynomial-energy reduction pattern of the relaxation solver
        return par::chunked_sum(exec, n, [&](std::ptrdiff_t i) {
            const double r = (static_cast<double>(i) + 0.5) * dr;
            const double v = field[static_cast<std::size_t>(i)];
            const double nn = v * v;
            return (0.5 * nn * nn + nn * nn * nn / 3.0) * r * r;
        });
    };

    double acc = 0.0;
    double t0 = now_ms();
    for (int r = 0; r < reps; ++r) acc += energy(par::Exec::serial);
    const double serial_ms = (now_ms() - t0) / reps;
    double acc2 = 0.0;
    t0 = now_ms();
    for (int r = 0; r < reps; ++r) acc2 += energy(par::Exec::openmp);
    const double omp_ms = (now_ms() - t0) / reps;

    std::printf("radial energy  N %7d   serial %9.4f ms   omp %9.4f ms   x%.2f   max|diff| %g\n",
                n, serial_ms, omp_ms, serial_ms / omp_ms, std::abs(acc - acc2) / reps);
}

} // namespace

int main(int argc, char** argv) {
    const int reps = argc > 1 ? std::atoi(argv[1]) : 20;
    std::mt19937 gen(20260810);
    std::printf("threads available: %d\n", par::max_threads());
    for (int dim : {16, 48, 128, 256}) bench_rhs(dim, reps, gen);
    for (int n : {1 << 11, 1 << 15, 1 << 19}) bench_radial(n, reps, gen);
    return 0;
}
