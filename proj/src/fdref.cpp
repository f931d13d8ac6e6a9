#include "mlp/fdref.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace mlp {

namespace {

// Thomas solve of a constant-coefficient tridiagonal system with the
// zero-curvature boundary rows already eliminated into the first and
// last unknowns.
void solve_tridiagonal(std::vector<double>& rhs, double lo, double di, double up,
                       double d_first, double up_first, double d_last,
                       double lo_last) {
    const std::size_t n = rhs.size();
    static thread_local std::vector<double> cp, dp;
    cp.assign(n, 0.0);
    dp.assign(n, 0.0);
    cp[0] = up_first / d_first;
    dp[0] = rhs[0] / d_first;
    for (std::size_t i = 1; i < n; ++i) {
        const double a = (i == n - 1) ? lo_last : lo;
        const double b = (i == n - 1) ? d_last : di;
        const double c = up;
        const double denom = b - a * cp[i - 1];
        cp[i] = c / denom;
        dp[i] = (rhs[i] - a * dp[i - 1]) / denom;
    }
    rhs[n - 1] = dp[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] = dp[i] - cp[i] * rhs[i + 1];
}

} // namespace

double fd_solve(const FdConfig& config, const ExampleConfig& example, double t0,
                double x0) {
    const PdeProblem& problem = example.problem;
    if (problem.dim != 1)
        throw std::invalid_argument("fd_solve: example must have dim = 1");
    const double T = problem.horizon;
    if (!(t0 >= 0.0 && t0 < T))
        throw std::invalid_argument("fd_solve: need 0 <= t0 < T");
    if (config.nsteps < 2) throw std::invalid_argument("fd_solve: nsteps >= 2");

    FdScheme scheme = config.scheme;
    if (scheme == FdScheme::Auto)
        scheme = (example.driver.kind == DriverKind::Gbm) ? FdScheme::GbmGrid
                                                          : FdScheme::AbmGrid;

    const int steps = config.nsteps;
    const int points =
        (config.space_points > 0) ? config.space_points : 4 * steps + 1;
    if (points < 5) throw std::invalid_argument("fd_solve: too few grid points");

    // Grid coordinate: log-price for the GBM grid, price for the ABM grid.
    const double sigma = example.driver.sigma_bar * config.diffusion_scale;
    double lo, hi;
    if (config.domain) {
        lo = config.domain->first;
        hi = config.domain->second;
        if (!(lo < x0 && x0 < hi))
            throw std::invalid_argument("fd_solve: domain must contain x0 strictly");
        if (scheme == FdScheme::GbmGrid) {
            lo = std::log(lo);
            hi = std::log(hi);
        }
    } else if (scheme == FdScheme::GbmGrid) {
        const double width = config.width_sds * example.driver.sigma_bar * std::sqrt(T);
        lo = std::log(x0) - width;
        hi = std::log(x0) + width;
    } else {
        const double width = config.width_sds * std::sqrt(T);
        lo = x0 - width;
        hi = x0 + width;
    }

    const double h = (hi - lo) / (points - 1);
    std::vector<double> price(points);
    for (int i = 0; i < points; ++i) {
        const double xi = lo + i * h;
        price[i] = (scheme == FdScheme::GbmGrid) ? std::exp(xi) : xi;
    }

    // du/dtau = a u'' + b u' + f on the grid coordinate; the log-price map
    // turns mu x d/dx + (sigma x)^2/2 d2/dx2 into constant coefficients.
    double a, b, z_coef;
    if (scheme == FdScheme::GbmGrid) {
        a = 0.5 * sigma * sigma;
        b = example.driver.mu_bar - 0.5 * sigma * sigma;
        z_coef = example.driver.sigma_bar; // z = sigma_bar * x * u_x = sigma_bar * u_xi
    } else {
        a = 0.5 * sigma * sigma;
        b = 0.0;
        z_coef = example.driver.sigma_bar; // z = sigma_bar * u_x
    }

    const double dtau = (T - t0) / steps;
    const double alpha = a * dtau / (2.0 * h * h);
    const double beta = b * dtau / (4.0 * h);

    // Interior rows of (I -/+ dtau/2 L).
    const double im_lo = -(alpha - beta);
    const double im_di = 1.0 + 2.0 * alpha;
    const double im_up = -(alpha + beta);
    // Zero-curvature elimination: v_0 = 2 v_1 - v_2, mirrored at the top.
    const double d_first = im_di + 2.0 * im_lo;
    const double up_first = im_up - im_lo;
    const double d_last = im_di + 2.0 * im_up;
    const double lo_last = im_lo - im_up;

    std::vector<double> v(points);
    for (int i = 0; i < points; ++i)
        v[i] = problem.terminal(std::span<const double>(&price[i], 1));

    const int inner = points - 2;
    std::vector<double> rhs(inner);
    for (int n = 0; n < steps; ++n) {
        const double t_now = T - n * dtau;
        for (int i = 1; i <= inner; ++i) {
            const double z = z_coef * (v[i + 1] - v[i - 1]) / (2.0 * h);
            const double fval = problem.nonlinearity(
                t_now, std::span<const double>(&price[i], 1), v[i],
                std::span<const double>(&z, 1));
            rhs[i - 1] = (alpha - beta) * v[i - 1] + (1.0 - 2.0 * alpha) * v[i] +
                         (alpha + beta) * v[i + 1] + dtau * fval;
        }
        solve_tridiagonal(rhs, im_lo, im_di, im_up, d_first, up_first, d_last,
                          lo_last);
        for (int i = 1; i <= inner; ++i) v[i] = rhs[i - 1];
        v[0] = 2.0 * v[1] - v[2];
        v[points - 1] = 2.0 * v[points - 2] - v[points - 3];
        double vmax = 0.0;
        for (double vi : v) vmax = std::max(vmax, std::fabs(vi));
        if (!(vmax < 1e12))
            throw std::runtime_error(
                "fd_solve: instability detected for example " +
                example_name_string(example.name) + " (nsteps=" +
                std::to_string(steps) + ", points=" + std::to_string(points) + ")");
    }

    // Interpolate at x0 on the grid coordinate.
    const double target = (scheme == FdScheme::GbmGrid) ? std::log(x0) : x0;
    const double pos = (target - lo) / h;
    int i0 = static_cast<int>(std::floor(pos));
    i0 = std::max(0, std::min(points - 2, i0));
    const double frac = pos - i0;
    return (1.0 - frac) * v[i0] + frac * v[i0 + 1];
}

} // namespace mlp
