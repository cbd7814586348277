#include "optimize.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "errors.hpp"
#include "parallel.hpp"

namespace rydcz::opt {

void OptimizationProblem::validate() const {
    drive.validate();
    if (!(omega_eff > 0.0)) throw ContractViolation("OptimizationProblem: omega_eff must be positive");
    if (free_params.empty())
        throw ContractViolation("OptimizationProblem: need at least one free parameter");
    for (PulseParam p : free_params) {
        auto it = bounds.find(p);
        if (it == bounds.end())
            throw ContractViolation("OptimizationProblem: free parameter without bounds");
        if (!(it->second.first <= it->second.second) || !std::isfinite(it->second.first) ||
            !std::isfinite(it->second.second))
            throw ContractViolation("OptimizationProblem: bounds must be finite and ordered");
    }
    if (!(blockade_v_over_omega >= 0.0))
        throw ContractViolation("OptimizationProblem: blockade strength must be nonnegative");
}

double objective(const gate::DriveParams& drive, const gate::PulseShape& pulse, double v) {
    try {
        gate::RunGateOptions opt;
        opt.rel_tol = 1e-9;
        opt.output_points = 2;
        gate::GateRun run = gate::run_gate(drive, pulse, v, {0.0, 0.0}, opt);
        gate::GateMatrix g = gate::assemble_gate(run.amplitudes);
        g = gate::compensate_single_qubit_phase(g, run.phi01);
        return 1.0 - gate::fidelity(g, gate::cz_target());
    } catch (const IntegrationFailure&) {
        return 1e3;
    }
}

namespace {

struct ParamVector {
    // dimensionless values for (ratio_peak, width, t_gate); fixed entries
    // come from the initial pulse
    double ratio_peak, width_scaled, t_gate_scaled;
};

ParamVector from_pulse(const gate::PulseShape& p) {
    return {p.ratio_peak, p.width * p.omega_eff, p.t_gate * p.omega_eff};
}

gate::PulseShape to_pulse(double omega_eff, const ParamVector& v) {
    return gate::PulseShape::gaussian_scaled(omega_eff, v.ratio_peak, v.width_scaled,
                                             v.t_gate_scaled);
}

double run_objective(const OptimizationProblem& problem, const gate::PulseShape& pulse,
                     double rel_tol, int* penalized) {
    try {
        gate::RunGateOptions opt;
        opt.rel_tol = rel_tol;
        opt.output_points = 2;
        gate::GateRun run = gate::run_gate(problem.drive, pulse,
                                           problem.blockade_v_over_omega * problem.omega_eff,
                                           {0.0, 0.0}, opt);
        gate::GateMatrix g = gate::assemble_gate(run.amplitudes);
        g = gate::compensate_single_qubit_phase(g, run.phi01);
        return 1.0 - gate::fidelity(g, gate::cz_target());
    } catch (const IntegrationFailure&) {
        if (penalized) ++(*penalized);
        return 1e3;
    }
}

NelderMeadResult descend(const OptimizationProblem& problem, ParamVector start,
                         const OptimizeOptions& options, int* penalized) {
    std::vector<double> x0, lo, hi;
    for (PulseParam p : problem.free_params) {
        const auto& b = problem.bounds.at(p);
        lo.push_back(b.first);
        hi.push_back(b.second);
        switch (p) {
            case PulseParam::ratio_peak: x0.push_back(start.ratio_peak); break;
            case PulseParam::width: x0.push_back(start.width_scaled); break;
            case PulseParam::t_gate: x0.push_back(start.t_gate_scaled); break;
        }
    }
    auto apply = [&](const std::vector<double>& x) {
        ParamVector v = start;
        for (size_t i = 0; i < problem.free_params.size(); ++i) {
            switch (problem.free_params[i]) {
                case PulseParam::ratio_peak: v.ratio_peak = x[i]; break;
                case PulseParam::width: v.width_scaled = x[i]; break;
                case PulseParam::t_gate: v.t_gate_scaled = x[i]; break;
            }
        }
        return v;
    };
    Objective fn = [&](const std::vector<double>& x) {
        return run_objective(problem, to_pulse(problem.omega_eff, apply(x)), options.rel_tol,
                             penalized);
    };
    NelderMeadOptions nm;
    nm.max_iterations = options.max_iterations;
    return nelder_mead(fn, x0, lo, hi, nm);
}

std::vector<double> full_vector(const OptimizationProblem& problem, ParamVector start,
                                const std::vector<double>& x) {
    ParamVector v = start;
    for (size_t i = 0; i < problem.free_params.size(); ++i) {
        switch (problem.free_params[i]) {
            case PulseParam::ratio_peak: v.ratio_peak = x[i]; break;
            case PulseParam::width: v.width_scaled = x[i]; break;
            case PulseParam::t_gate: v.t_gate_scaled = x[i]; break;
        }
    }
    return {v.ratio_peak, v.width_scaled, v.t_gate_scaled};
}

}  // namespace

OptimizationResult optimize(const OptimizationProblem& problem, const gate::PulseShape& initial,
                            const OptimizeOptions& options) {
    problem.validate();
    initial.validate();
    ParamVector start = from_pulse(initial);
    {
        // the initial point must respect the bounds of every free parameter
        for (PulseParam p : problem.free_params) {
            const auto& b = problem.bounds.at(p);
            double v = p == PulseParam::ratio_peak ? start.ratio_peak
                       : p == PulseParam::width    ? start.width_scaled
                                                   : start.t_gate_scaled;
            if (v < b.first - 1e-12 || v > b.second + 1e-12)
                throw ContractViolation("optimize: initial point violates bounds");
        }
    }

    const int n_starts = 1 + std::max(0, options.restarts);
    std::vector<ParamVector> starts(static_cast<size_t>(n_starts), start);
    if (n_starts > 1) {
        std::mt19937_64 rng(options.seed);
        std::uniform_real_distribution<double> jitter(-1.0, 1.0);
        for (int s = 1; s < n_starts; ++s) {
            ParamVector v = start;
            for (PulseParam p : problem.free_params) {
                const auto& b = problem.bounds.at(p);
                double amp = 0.15 * (b.second - b.first);
                double* slot = p == PulseParam::ratio_peak ? &v.ratio_peak
                               : p == PulseParam::width    ? &v.width_scaled
                                                           : &v.t_gate_scaled;
                *slot = std::clamp(*slot + amp * jitter(rng), b.first, b.second);
            }
            starts[static_cast<size_t>(s)] = v;
        }
    }

    std::vector<NelderMeadResult> runs(starts.size());
    std::vector<int> penalized(starts.size(), 0);
    parallel_for(starts.size(), options.threads, [&](std::size_t s) {
        runs[s] = descend(problem, starts[s], options, &penalized[s]);
    });

    // pick the best run; among near-degenerate optima the shortest gate wins
    size_t best = 0;
    for (size_t s = 1; s < runs.size(); ++s) {
        double fb = runs[best].best_f, fs = runs[s].best_f;
        auto tg = [&](size_t k) { return full_vector(problem, starts[k], runs[k].best_x)[2]; };
        if (fs < fb - 1e-12 || (std::abs(fs - fb) <= 1e-12 && tg(s) < tg(best))) best = s;
    }

    const NelderMeadResult& r = runs[best];
    OptimizationResult result;
    std::vector<double> v = full_vector(problem, starts[best], r.best_x);
    result.best_params = gate::PulseShape::gaussian_scaled(problem.omega_eff, v[0], v[1], v[2]);
    result.infidelity = r.best_f;
    result.iterations = r.iterations;
    result.converged = r.converged;
    for (int p : penalized) result.penalized_evaluations += p;
    result.history.reserve(r.history.size());
    for (const auto& [x, f] : r.history)
        result.history.emplace_back(full_vector(problem, starts[best], x), f);
    return result;
}

}  // namespace rydcz::opt
