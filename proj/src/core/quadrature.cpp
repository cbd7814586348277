#include "quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "errors.hpp"

namespace rydcz::quadrature {

namespace {

std::mutex cache_mutex;

// Legendre rule on [-1, 1] by Newton iteration on P_n.
Rule legendre_reference(int n) {
    Rule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    return rule;
}

// Hermite rule (weight exp(-x^2)) with normalized-polynomial recurrence.
Rule hermite_reference(int n) {
    Rule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double pim4 = std::pow(M_PI, -0.25);
    const int m = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i == 0)
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        else if (i == 1)
            z -= 1.14 * std::pow(n, 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * rule.nodes[n - 1];
        else if (i == 3)
            z = 1.91 * z - 0.91 * rule.nodes[n - 2];
        else
            z = 2.0 * z - rule.nodes[n - i + 1];
        double pp = 0.0;
        for (int iter = 0; iter < 200; ++iter) {
            double p1 = pim4, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 - std::sqrt(double(j) / (j + 1.0)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        rule.nodes[n - 1 - i] = z;
        rule.nodes[i] = -z;
        rule.weights[n - 1 - i] = 2.0 / (pp * pp);
        rule.weights[i] = rule.weights[n - 1 - i];
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

}  // namespace

Rule gauss_legendre(int order, double a, double b) {
    if (order < 1) throw ContractViolation("gauss_legendre: order must be >= 1");
    static std::map<int, Rule> cache;
    Rule ref;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(order);
        if (it == cache.end()) it = cache.emplace(order, legendre_reference(order)).first;
        ref = it->second;
    }
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < order; ++i) {
        ref.nodes[i] = mid + half * ref.nodes[i];
        ref.weights[i] *= half;
    }
    return ref;
}

const Rule& gauss_hermite(int order) {
    if (order < 1) throw ContractViolation("gauss_hermite: order must be >= 1");
    static std::map<int, Rule> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, hermite_reference(order)).first;
    return it->second;
}

}  // namespace rydcz::quadrature
