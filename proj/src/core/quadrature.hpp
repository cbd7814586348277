#pragma once

#include <vector>

namespace rydcz::quadrature {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre rule on [a, b].  Nodes/weights are computed once per order
// and cached; the returned rule is already mapped to the interval.
Rule gauss_legendre(int order, double a, double b);

// Gauss-Hermite rule for integrals of f(x) against exp(-x^2) dx; weights
// include the Gaussian factor.  To average f over N(0, sigma^2), evaluate at
// sqrt(2)*sigma*node and combine with weight/sqrt(pi).
const Rule& gauss_hermite(int order);

}  // namespace rydcz::quadrature
