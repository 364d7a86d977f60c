#include "heliox/dft/grid.hpp"

#include <algorithm>
#include <cmath>

namespace heliox::dft {

namespace {

// Fritsch-Carlson limited slope at sample k (one-sided at the ends)
double limited_slope(const std::vector<double>& x, const std::vector<double>& y, std::size_t k) {
    const std::size_t n = x.size();
    auto sec = [&](std::size_t i) { return (y[i + 1] - y[i]) / (x[i + 1] - x[i]); };
    if (k == 0) return sec(0);
    if (k == n - 1) return sec(n - 2);
    const double dl = sec(k - 1), dr = sec(k);
    if (dl * dr <= 0.0) return 0.0;
    const double m = 0.5 * (dl + dr);
    const double cap = 3.0 * std::min(std::abs(dl), std::abs(dr));
    return std::copysign(std::min(std::abs(m), cap), m);
}

} // namespace

std::optional<double> monotone_crossing(const std::vector<double>& x,
                                        const std::vector<double>& y, double target) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) return std::nullopt;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!(y[i] < target && y[i + 1] >= target)) continue;
        const double h = x[i + 1] - x[i];
        const double m0 = limited_slope(x, y, i) * h;
        const double m1 = limited_slope(x, y, i + 1) * h;
        auto hermite = [&](double t) {
            const double t2 = t * t, t3 = t2 * t;
            return (2 * t3 - 3 * t2 + 1) * y[i] + (t3 - 2 * t2 + t) * m0 +
                   (-2 * t3 + 3 * t2) * y[i + 1] + (t3 - t2) * m1 - target;
        };
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (hermite(mid) < 0.0 ? lo : hi) = mid;
        }
        return x[i] + 0.5 * (lo + hi) * h;
    }
    return std::nullopt;
}

} // namespace heliox::dft
