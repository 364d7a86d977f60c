#pragma once

#include <stdexcept>
#include <string>

namespace heliox {

// Error taxonomy mirrors the CLI exit-code contract:
//   ValidationError -> 2, SolverError -> 3, GuardError -> 4.

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// non-convergence, infeasible calibration, no EOS solution, ...
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// integrator guard trips (trace drift, negativity)
struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace heliox
