#pragma once

// Pulse-shape search for the CZ condition: full population return in every
// configuration with the phase arrangement phi11 = 2*phi01 - pi, found by
// minimizing the compensated-gate infidelity of the lossless, Doppler-free,
// fully blockaded model.

#include <cstdint>
#include <map>
#include <vector>

#include "gate.hpp"
#include "nelder_mead.hpp"

namespace rydcz::opt {

enum class PulseParam { ratio_peak, width, t_gate };

// Parameter bounds are dimensionless: width and t_gate in units of
// 1/omega_eff, so one optimum serves every gate speed.
struct OptimizationProblem {
    gate::DriveParams drive;
    double omega_eff = 0.0;
    std::vector<PulseParam> free_params{PulseParam::ratio_peak, PulseParam::width,
                                        PulseParam::t_gate};
    std::map<PulseParam, std::pair<double, double>> bounds{
        {PulseParam::ratio_peak, {0.05, 8.0}},
        {PulseParam::width, {0.5, 6.0}},
        {PulseParam::t_gate, {4.0, 12.0}},
    };
    double blockade_v_over_omega = 1e6;

    void validate() const;
};

struct OptimizationResult {
    gate::PulseShape best_params;
    double infidelity = 0.0;
    int iterations = 0;
    bool converged = false;
    int penalized_evaluations = 0;
    // incumbent per iteration: (ratio_peak, width/omega_eff, t_gate/omega_eff) -> objective
    std::vector<std::pair<std::vector<double>, double>> history;
};

// 1 - F of the compensated lossless gate; propagation failures return the
// penalty value 1e3 instead of throwing.
double objective(const gate::DriveParams& drive, const gate::PulseShape& pulse, double v);

struct OptimizeOptions {
    int max_iterations = 400;
    double rel_tol = 1e-9;        // propagation tolerance during the search
    int restarts = 0;             // additional seeded starts
    std::uint64_t seed = 0;       // PRNG seed for restart jitter
    int threads = 1;              // restarts run concurrently
};

OptimizationResult optimize(const OptimizationProblem& problem, const gate::PulseShape& initial,
                            const OptimizeOptions& options = {});

}  // namespace rydcz::opt
