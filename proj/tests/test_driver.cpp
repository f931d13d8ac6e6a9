#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "mlp/driver.hpp"

using namespace mlp;

namespace {

BrownianPath fixed_path(double s, double t, std::vector<double> dw) {
    BrownianPath path;
    path.start_time = s;
    path.dim = static_cast<int>(dw.size());
    path.times = {t};
    path.values = std::move(dw);
    return path;
}

} // namespace

TEST_CASE("ABM with zero increment is the identity") {
    const Driver driver{DriverKind::Abm, 0.0, 1.0};
    const double x[2] = {0.3, -1.2};
    const auto path = fixed_path(0.0, 1.0, {0.0, 0.0});
    const auto [state, integrand] = driver_eval(driver, x, 0.0, path, 1.0);
    CHECK(state[0] == x[0]);
    CHECK(state[1] == x[1]);
    CHECK(integrand[0] == 1.0);
    CHECK(integrand[1] == 0.0);
    CHECK(integrand[2] == 0.0);
}

TEST_CASE("GBM drift cancellation at mu = sigma^2/2") {
    const double sigma = 0.3;
    const Driver driver{DriverKind::Gbm, 0.5 * sigma * sigma, sigma};
    const double x[1] = {42.0};
    const auto path = fixed_path(0.0, 2.0, {0.0});
    const auto [state, integrand] = driver_eval(driver, x, 0.0, path, 2.0);
    CHECK(state[0] == doctest::Approx(42.0).epsilon(1e-15));
}

TEST_CASE("GBM closed form with the default-risk parameters") {
    const Driver driver{DriverKind::Gbm, 0.02, 0.2};
    const double x[1] = {100.0};
    const auto path = fixed_path(0.0, 1.0, {0.5});
    const auto [state, integrand] = driver_eval(driver, x, 0.0, path, 1.0);
    // 100 exp((0.02 - 0.02) * 1 + 0.2 * 0.5) = 100 e^0.1
    CHECK(state[0] == doctest::Approx(100.0 * std::exp(0.1)).epsilon(1e-14));
    CHECK(integrand[1] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("integrand vanishes at t = s") {
    const Driver driver{DriverKind::Abm, 0.0, 1.0};
    const double x[1] = {1.0};
    const auto path = fixed_path(0.5, 1.0, {0.7});
    const auto [state, integrand] = driver_eval(driver, x, 0.5, path, 0.5);
    CHECK(state[0] == 1.0);
    CHECK(integrand[0] == 0.0);
    CHECK(integrand[1] == 0.0);
}

TEST_CASE("unrecorded times and non-positive GBM states are contract violations") {
    const Driver gbm{DriverKind::Gbm, 0.0, 0.2};
    const double x[1] = {100.0};
    const double bad_x[1] = {-1.0};
    const auto path = fixed_path(0.0, 1.0, {0.1});
    CHECK_THROWS_AS(driver_eval(gbm, x, 0.0, path, 0.7), std::invalid_argument);
    CHECK_THROWS_AS(driver_eval(gbm, bad_x, 0.0, path, 1.0), std::invalid_argument);
}

TEST_CASE("GBM keeps states strictly positive") {
    const Driver driver{DriverKind::Gbm, 0.06, 0.2};
    const RngKey root = root_key_from_seed(31);
    const double x[3] = {100.0, 0.01, 5.0};
    const double times[2] = {0.3, 0.5};
    for (int i = 0; i < 200; ++i) {
        const RngKey key = derive_child_key(root, Branch::Path, {0, i});
        const auto path = sample_brownian_path(key, 0.0, times, 3);
        for (double t : times) {
            const auto [state, integrand] = driver_eval(driver, x, 0.0, path, t);
            for (double c : state) CHECK(c > 0.0);
        }
    }
}

TEST_CASE("scaled ABM driver shifts by sigma_bar times the increment") {
    const Driver driver{DriverKind::Abm, 0.0, 0.25};
    const double x[2] = {0.1, 0.2};
    const auto path = fixed_path(0.0, 0.5, {1.0, -2.0});
    const auto [state, integrand] = driver_eval(driver, x, 0.0, path, 0.5);
    CHECK(state[0] == doctest::Approx(0.35));
    CHECK(state[1] == doctest::Approx(-0.3));
    // Integrand stays (1, dW/(t-s)) regardless of the scale.
    CHECK(integrand[1] == doctest::Approx(2.0));
    CHECK(integrand[2] == doctest::Approx(-4.0));
}
