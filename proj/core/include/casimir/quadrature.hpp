#pragma once

#include <vector>

namespace casimir::quadrature {

struct Rule {
    std::vector<double> x;
    std::vector<double> w;
};

/// Gauss-Legendre nodes/weights on (-1, 1). Cached per order, thread-safe.
const Rule& gauss_legendre(int n);

/// Gauss-Laguerre nodes/weights for weight e^{-x} on (0, inf). Cached.
const Rule& gauss_laguerre(int n);

/// Gauss-Legendre rule mapped onto (a, b).
Rule gauss_legendre_on(int n, double a, double b);

}  // namespace casimir::quadrature
