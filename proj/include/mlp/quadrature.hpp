#pragma once

#include <vector>

namespace mlp {

/// Quadrature rule on an open interval: strictly increasing nodes with
/// positive weights summing to the interval length.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int size() const { return static_cast<int>(nodes.size()); }
};

/// Gauss-Legendre rule with n nodes on (-1,1). Nodes are the roots of the
/// degree-n Legendre polynomial (Newton iteration from Chebyshev initial
/// guesses, tolerance 1e-14); weights 2/((1-x^2) P_n'(x)^2).
QuadratureRule gauss_legendre(int n);

/// Cached variant; rules are built once and shared (thread-safe).
const QuadratureRule& gauss_legendre_cached(int n);

/// Affine map of a rule from (-1,1) onto (s,T).
QuadratureRule rescale(const QuadratureRule& rule, double s, double T);

/// Inverse of the gamma function on [2,inf): the unique x >= 2 with
/// Gamma(x) = y for y >= 1. Clamps to 2 for y in [0,1].
double inverse_gamma(double y);

/// Node-count schedule round(inverse_gamma(rho^((k-l)/2))), minimum 2.
int node_count(int k, int l, int rho);

} // namespace mlp
