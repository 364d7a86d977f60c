#pragma once

#include "heliox/errors.hpp"
#include "heliox/parallel.hpp"

#include <optional>
#include <vector>

namespace heliox::dft {

// Uniform cell-centered radial grid, r_i = (i + 1/2) dr.  Cell centering
// keeps 1/r factors finite and makes the half-integer origin ghost a pure
// parity reflection.
struct RadialGrid {
    double r_max_nm = 8.0;
    int n = 2048;

    RadialGrid() = default;
    RadialGrid(double r_max, int points) : r_max_nm(r_max), n(points) {
        if (n < 256) throw ValidationError("RadialGrid: need at least 256 points");
        if (!(r_max_nm > 0.0)) throw ValidationError("RadialGrid: r_max must be positive");
    }

    double dr() const { return r_max_nm / n; }
    double r(int i) const { return (i + 0.5) * dr(); }
    bool same_as(const RadialGrid& o) const { return n == o.n && r_max_nm == o.r_max_nm; }
};

// midpoint rule: int f 4 pi r^2 dr over the box
inline double volume_integral(const RadialGrid& g, const std::vector<double>& f,
                              par::Exec exec = par::Exec::serial) {
    const double dr = g.dr();
    const double s = par::chunked_sum(exec, g.n, [&](std::ptrdiff_t i) {
        const double r = g.r(static_cast<int>(i));
        return f[static_cast<std::size_t>(i)] * r * r;
    });
    return 4.0 * 3.14159265358979323846 * s * dr;
}

// First upward crossing of y(x) = target, located with a monotone cubic
// (Fritsch-Carlson limited Hermite) through the bracketing samples; absent
// when the samples never cross.
std::optional<double> monotone_crossing(const std::vector<double>& x,
                                        const std::vector<double>& y, double target);

} // namespace heliox::dft
