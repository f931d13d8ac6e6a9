#include "mlp/driver.hpp"

#include <cmath>
#include <stdexcept>

namespace mlp {

void driver_state(const Driver& driver, std::span<const double> x, double dt,
                  std::span<const double> dw, std::span<double> state) {
    const std::size_t d = x.size();
    if (dw.size() != d || state.size() != d)
        throw std::invalid_argument("driver_state: dimension mismatch");
    if (driver.kind == DriverKind::Abm) {
        const double scale = driver.sigma_bar;
        for (std::size_t c = 0; c < d; ++c) state[c] = x[c] + scale * dw[c];
    } else {
        const double drift =
            (driver.mu_bar - 0.5 * driver.sigma_bar * driver.sigma_bar) * dt;
        for (std::size_t c = 0; c < d; ++c)
            state[c] = x[c] * std::exp(drift + driver.sigma_bar * dw[c]);
    }
}

std::pair<std::vector<double>, std::vector<double>> driver_eval(
    const Driver& driver, std::span<const double> x, double s,
    const BrownianPath& path, double t) {
    const int d = static_cast<int>(x.size());
    if (path.dim != d) throw std::invalid_argument("driver_eval: dim mismatch");
    if (driver.kind == DriverKind::Gbm) {
        for (double xc : x)
            if (!(xc > 0.0))
                throw std::invalid_argument("driver_eval: GBM requires x > 0");
    }
    std::vector<double> state(d);
    std::vector<double> integrand(static_cast<std::size_t>(d) + 1, 0.0);
    if (t == s) {
        // Convention: the integrand vanishes at t = s.
        for (int c = 0; c < d; ++c) state[c] = x[c];
        return {std::move(state), std::move(integrand)};
    }
    const int j = path.find_time(t);
    if (j < 0)
        throw std::invalid_argument("driver_eval: t is not a recorded path time");
    const auto dw = path.value_at_index(j);
    driver_state(driver, x, t - s, dw, state);
    integrand[0] = 1.0;
    const double inv = 1.0 / (t - s);
    for (int c = 0; c < d; ++c) integrand[1 + c] = dw[c] * inv;
    return {std::move(state), std::move(integrand)};
}

} // namespace mlp
