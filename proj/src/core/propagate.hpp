#pragma once

#include "hamiltonian.hpp"
#include "state.hpp"

namespace rydcz {

enum class IntegratorMethod {
    automatic,   // constant H -> exact; large accumulated diagonal phase -> magnus; else rk
    rk_cash_karp,
    magnus_cf4,
};

struct PropagateOptions {
    IntegratorMethod method = IntegratorMethod::automatic;
    double abs_tol_factor = 1e-2;  // abs_tol = rel_tol * abs_tol_factor
};

// Propagate i dpsi/dt = H(t) psi over the grid, returning the state at each
// output point (the first output point is psi0 itself).
//
// rel_tol must lie in (0, 1e-3].  Throws IntegrationFailure on step-size
// underflow; the exception carries the last successfully reached time.
Trajectory propagate(const HamiltonianProvider& h, const StateVector& psi0, const TimeGrid& grid,
                     double rel_tol, const PropagateOptions& options = {});

inline Trajectory propagate(const HamiltonianPtr& h, const StateVector& psi0, const TimeGrid& grid,
                            double rel_tol, const PropagateOptions& options = {}) {
    return propagate(*h, psi0, grid, rel_tol, options);
}

}  // namespace rydcz
