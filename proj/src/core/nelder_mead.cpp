#include "nelder_mead.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace rydcz::opt {

namespace {

struct Vertex {
    std::vector<double> x;
    double f;
};

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0,
                             std::vector<double> lower, std::vector<double> upper,
                             const NelderMeadOptions& options) {
    const size_t n = x0.size();
    if (n == 0) throw ContractViolation("nelder_mead: empty parameter vector");
    if (lower.size() != n || upper.size() != n)
        throw ContractViolation("nelder_mead: bound dimension mismatch");
    for (size_t i = 0; i < n; ++i)
        if (!(lower[i] <= upper[i])) throw ContractViolation("nelder_mead: empty bound interval");

    std::vector<double> span(n);
    for (size_t i = 0; i < n; ++i) span[i] = std::max(upper[i] - lower[i], 1e-300);

    auto clip = [&](std::vector<double> v) {
        for (size_t i = 0; i < n; ++i) v[i] = std::clamp(v[i], lower[i], upper[i]);
        return v;
    };

    NelderMeadResult result;

    std::vector<Vertex> simplex;
    simplex.push_back({clip(std::move(x0)), 0.0});
    simplex[0].f = f(simplex[0].x);
    for (size_t i = 0; i < n; ++i) {
        std::vector<double> xi = simplex[0].x;
        double step = options.initial_step * span[i];
        xi[i] = (xi[i] + step <= upper[i]) ? xi[i] + step : xi[i] - step;
        Vertex v{clip(std::move(xi)), 0.0};
        v.f = f(v.x);
        simplex.push_back(std::move(v));
    }

    auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };

    // one incumbent entry per iteration; the best vertex never worsens
    auto record = [&](const Vertex& v) { result.history.emplace_back(v.x, v.f); };

    int it = 0;
    for (; it < options.max_iterations; ++it) {
        std::sort(simplex.begin(), simplex.end(), by_value);
        record(simplex[0]);

        if (simplex[0].f <= options.objective_target) {
            result.converged = true;
            break;
        }
        double size = 0.0;
        for (size_t i = 0; i < n; ++i)
            size = std::max(size, std::abs(simplex.back().x[i] - simplex[0].x[i]) / span[i]);
        if (size <= options.size_tolerance) {
            result.converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (size_t v = 0; v < n; ++v)
            for (size_t i = 0; i < n; ++i) centroid[i] += simplex[v].x[i] / double(n);

        auto along = [&](double coef) {
            std::vector<double> x(n);
            for (size_t i = 0; i < n; ++i)
                x[i] = centroid[i] + coef * (simplex.back().x[i] - centroid[i]);
            return clip(std::move(x));
        };

        Vertex reflected{along(-1.0), 0.0};
        reflected.f = f(reflected.x);
        if (reflected.f < simplex[0].f) {
            Vertex expanded{along(-2.0), 0.0};
            expanded.f = f(expanded.x);
            simplex.back() = expanded.f < reflected.f ? std::move(expanded) : std::move(reflected);
        } else if (reflected.f < simplex[n - 1].f) {
            simplex.back() = std::move(reflected);
        } else {
            Vertex contracted{along(0.5), 0.0};
            contracted.f = f(contracted.x);
            if (contracted.f < simplex.back().f) {
                simplex.back() = std::move(contracted);
            } else {
                for (size_t v = 1; v <= n; ++v) {
                    for (size_t i = 0; i < n; ++i)
                        simplex[v].x[i] = simplex[0].x[i] + 0.5 * (simplex[v].x[i] - simplex[0].x[i]);
                    simplex[v].f = f(simplex[v].x);
                    record(simplex[v]);
                }
            }
        }
    }

    std::sort(simplex.begin(), simplex.end(), by_value);
    record(simplex[0]);
    result.best_x = simplex[0].x;
    result.best_f = simplex[0].f;
    result.iterations = it;
    return result;
}

}  // namespace rydcz::opt
