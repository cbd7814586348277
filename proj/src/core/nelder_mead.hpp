#pragma once

// Bounded derivative-free simplex minimizer.  Iterates are clipped to the
// box; convergence on simplex size (in normalized box units) or objective
// value.  Deterministic for fixed inputs.

#include <functional>
#include <vector>

namespace rydcz::opt {

struct NelderMeadOptions {
    int max_iterations = 400;
    double size_tolerance = 1e-6;    // simplex extent in normalized units
    double objective_target = 1e-8;  // stop when the incumbent falls below
    double initial_step = 0.05;      // relative to box width
};

struct NelderMeadResult {
    std::vector<double> best_x;
    double best_f = 0.0;
    int iterations = 0;
    bool converged = false;
    // incumbent record: (x, f) whenever the best value improves
    std::vector<std::pair<std::vector<double>, double>> history;
};

using Objective = std::function<double(const std::vector<double>&)>;

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0,
                             std::vector<double> lower, std::vector<double> upper,
                             const NelderMeadOptions& options = {});

}  // namespace rydcz::opt
