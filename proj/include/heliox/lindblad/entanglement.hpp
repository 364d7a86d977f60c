#pragma once

#include "heliox/lindblad/operators.hpp"

namespace heliox::lindblad {

// Reduced density matrix over the kept factors (ascending index order).
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::size_t>& keep);

// Two-qubit concurrence: C = max(0, l1 - l2 - l3 - l4) with l_i the
// decreasing square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy).
double concurrence(const Matrix& rho_two_qubit);
double concurrence(const DensityMatrix& rho);

} // namespace heliox::lindblad
