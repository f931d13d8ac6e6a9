#pragma once

#include <optional>
#include <utility>

#include "mlp/examples.hpp"

namespace mlp {

enum class FdScheme { Auto, GbmGrid, AbmGrid };

/// One-dimensional Crank-Nicolson reference solver configuration.
/// space_points = 0 picks 4*nsteps + 1 (odd, so the evaluation point is a
/// grid node). The domain defaults to 6 standard deviations around the
/// evaluation point (log-price units on the GBM grid); an explicit domain
/// is given in price units and must contain x0 strictly.
struct FdConfig {
    int nsteps = 2048;
    int space_points = 0;
    double width_sds = 6.0;
    std::optional<std::pair<double, double>> domain;
    FdScheme scheme = FdScheme::Auto;
    double diffusion_scale = 1.0; // 0 disables diffusion (ODE reduction)
};

/// Solves the example's PDE backward from T to t0 on a truncated grid
/// (Crank-Nicolson in the linear part, lagged explicit nonlinearity) and
/// returns the grid-interpolated value at (t0, x0).
double fd_solve(const FdConfig& config, const ExampleConfig& example, double t0,
                double x0);

} // namespace mlp
