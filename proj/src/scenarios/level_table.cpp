#include "heliox/scenarios/level_table.hpp"

#include "heliox/units.hpp"

#include <algorithm>
#include <cmath>

namespace heliox::scenarios {

int LevelTable::index_of(const std::string& label) const {
    for (std::size_t k = 0; k < levels.size(); ++k)
        if (levels[k].label == label) return static_cast<int>(k);
    return -1;
}

double LevelTable::transition_omega(const std::string& from, const std::string& to) const {
    const int a = index_of(from), b = index_of(to);
    if (a < 0 || b < 0)
        throw ValidationError("LevelTable: missing level " + (a < 0 ? from : to));
    return std::abs(levels[static_cast<std::size_t>(b)].omega_radfs -
                    levels[static_cast<std::size_t>(a)].omega_radfs);
}

void LevelTable::validate() const {
    const auto n = static_cast<Eigen::Index>(levels.size());
    if (n == 0) throw ValidationError("LevelTable: empty");
    if (dipole_enm.rows() != n || dipole_enm.cols() != n)
        throw ValidationError("LevelTable: dipole matrix size mismatch");
    for (Eigen::Index i = 0; i < n; ++i) {
        if (dipole_enm(i, i) != 0.0)
            throw ValidationError("LevelTable: dipole diagonal must vanish");
        for (Eigen::Index j = 0; j < n; ++j)
            if (dipole_enm(i, j) != dipole_enm(j, i))
                throw ValidationError("LevelTable: dipole matrix must be symmetric");
    }
}

LevelTable LevelTable::from_bound_levels(const std::vector<dft::ElectronLevel>& bound) {
    if (bound.empty()) throw ValidationError("LevelTable: no bound levels supplied");
    LevelTable table;
    std::vector<dft::ElectronLevel> sorted = bound;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto& a, const auto& b) { return a.energy_eV < b.energy_eV; });
    const auto n = static_cast<Eigen::Index>(sorted.size());
    table.dipole_enm = Eigen::MatrixXd::Zero(n, n);
    for (const auto& lv : sorted)
        table.levels.push_back(
            {lv.label(), lv.n_r, lv.l, lv.energy_eV / units::hbar_eV_fs});
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) {
            if (std::abs(sorted[i].l - sorted[j].l) != 1) continue;
            const auto d = dft::transition_dipole(sorted[i], sorted[j]);
            table.dipole_enm(i, j) = table.dipole_enm(j, i) = d.d_enm;
        }
    table.validate();
    return table;
}

} // namespace heliox::scenarios
