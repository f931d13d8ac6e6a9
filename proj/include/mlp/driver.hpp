#pragma once

#include <span>
#include <utility>
#include <vector>

#include "mlp/brownian.hpp"

namespace mlp {

enum class DriverKind { Abm, Gbm };

/// Exact forward-diffusion simulator. Produces states X along a Brownian
/// path together with the integrand vector I = (1, dW/(t-s)) used to
/// weight both the solution value and its sigma-scaled gradient.
///
/// Abm: X = x + sigma_bar * dW (sigma_bar is the increment scale, 1 for
///      the plain heat-equation case; mu_bar must be 0).
/// Gbm: X_j = x_j * exp((mu_bar - sigma_bar^2/2)(t-s) + sigma_bar dW_j),
///      requires strictly positive x.
struct Driver {
    DriverKind kind = DriverKind::Abm;
    double mu_bar = 0.0;
    double sigma_bar = 1.0;
};

/// Writes X_t into `state` given the path increment dW = W_t - W_s.
void driver_state(const Driver& driver, std::span<const double> x, double dt,
                  std::span<const double> dw, std::span<double> state);

/// Full evaluation at a recorded path time: returns (X_t, I) with
/// I = (1, dW_{s,t}/(t-s)); at t == s the integrand is the zero vector.
std::pair<std::vector<double>, std::vector<double>> driver_eval(
    const Driver& driver, std::span<const double> x, double s,
    const BrownianPath& path, double t);

} // namespace mlp
