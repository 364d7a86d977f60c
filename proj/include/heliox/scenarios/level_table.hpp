#pragma once

#include "heliox/dft/spectrum.hpp"
#include "heliox/lindblad/dynamics.hpp"

#include <Eigen/Dense>

#include <map>
#include <string>
#include <vector>

namespace heliox::scenarios {

struct Level {
    std::string label;
    int n_r = 0;
    int l = 0;
    double omega_radfs = 0.0; // E / hbar, measured from the bubble-interior zero
};

// Levels and the hermitian dipole matrix that build H0 and H1 of the driven
// scenarios.  Selection-rule zeros are preserved when sourced from the DFT.
struct LevelTable {
    std::vector<Level> levels;
    Eigen::MatrixXd dipole_enm; // symmetric, zero diagonal

    std::size_t size() const { return levels.size(); }
    int index_of(const std::string& label) const; // -1 when absent
    double transition_omega(const std::string& from, const std::string& to) const;
    void validate() const;

    static LevelTable from_bound_levels(const std::vector<dft::ElectronLevel>& levels);
};

struct ScenarioResult {
    lindblad::TimeSeries series;
    std::map<std::string, double> scalars;
};

} // namespace heliox::scenarios
