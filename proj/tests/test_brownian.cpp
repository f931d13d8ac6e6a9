#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <vector>

#include "mlp/brownian.hpp"

using namespace mlp;

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

} // namespace

TEST_CASE("replay determinism and prefix consistency") {
    const RngKey key = derive_child_key(root_key_from_seed(5), Branch::Path, {0, 1});
    const double two[2] = {0.4, 1.0};
    const double one[1] = {0.4};
    const auto full = sample_brownian_path(key, 0.0, two, 3);
    const auto pre = sample_brownian_path(key, 0.0, one, 3);
    const auto again = sample_brownian_path(key, 0.0, two, 3);
    for (int c = 0; c < 3; ++c) {
        CHECK(full.value_at_index(0)[c] == pre.value_at_index(0)[c]);
        CHECK(full.values[c] == again.values[c]);
        CHECK(full.value_at_index(1)[c] == again.value_at_index(1)[c]);
    }
}

TEST_CASE("contract violations on bad time grids") {
    const RngKey key = root_key_from_seed(5);
    const double bad_order[2] = {1.0, 0.4};
    const double not_after_s[1] = {0.2};
    CHECK_THROWS_AS(sample_brownian_path(key, 0.0, bad_order, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(sample_brownian_path(key, 0.5, not_after_s, 1),
                    std::invalid_argument);
}

TEST_CASE("terminal marginal has the right mean and variance") {
    const RngKey root = root_key_from_seed(77);
    constexpr int n = 100'000;
    const double s = 0.25, T = 1.0;
    const double horizon[1] = {T};
    std::vector<double> samples(n);
    for (int i = 0; i < n; ++i) {
        const RngKey key = derive_child_key(root, Branch::Path, {0, i});
        const auto path = sample_brownian_path(key, s, horizon, 1);
        samples[i] = path.values[0];
    }
    double mean = 0.0;
    for (double v : samples) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : samples) var += (v - mean) * (v - mean);
    var /= (n - 1);
    CHECK(std::fabs(mean) <= 4.0 / std::sqrt(static_cast<double>(n)) * std::sqrt(T - s));
    CHECK(var == doctest::Approx(T - s).epsilon(0.05));
}

TEST_CASE("Kolmogorov-Smirnov test against N(0, t-s)") {
    const RngKey root = root_key_from_seed(99);
    constexpr int n = 100'000;
    const double s = 0.1, t = 0.9;
    const double times[1] = {t};
    std::vector<double> samples(n);
    for (int i = 0; i < n; ++i) {
        const RngKey key = derive_child_key(root, Branch::Path, {1, i});
        samples[i] = sample_brownian_path(key, s, times, 1).values[0];
    }
    std::sort(samples.begin(), samples.end());
    const double sd = std::sqrt(t - s);
    double dmax = 0.0;
    for (int i = 0; i < n; ++i) {
        const double cdf = normal_cdf(samples[i] / sd);
        const double hi = (i + 1.0) / n - cdf;
        const double lo = cdf - static_cast<double>(i) / n;
        dmax = std::max(dmax, std::max(hi, lo));
    }
    // c(alpha) = sqrt(-ln(alpha/2)/2) at alpha = 1e-3.
    const double crit = std::sqrt(-std::log(0.0005) / 2.0) / std::sqrt(static_cast<double>(n));
    CHECK(dmax < crit);
}

TEST_CASE("increments scale with sqrt of the time step") {
    const RngKey key = derive_child_key(root_key_from_seed(3), Branch::Path, {2, 2});
    const double times[3] = {0.5, 0.75, 2.0};
    const auto path = sample_brownian_path(key, 0.25, times, 2);
    std::vector<double> draws(6);
    standard_normals(key, draws);
    CHECK(path.values[0] == doctest::Approx(std::sqrt(0.25) * draws[0]));
    CHECK(path.values[1] == doctest::Approx(std::sqrt(0.25) * draws[1]));
    CHECK(path.value_at_index(1)[0] ==
          doctest::Approx(path.value_at_index(0)[0] + std::sqrt(0.25) * draws[2]));
    CHECK(path.value_at_index(2)[1] ==
          doctest::Approx(path.value_at_index(1)[1] + std::sqrt(1.25) * draws[5]));
}
