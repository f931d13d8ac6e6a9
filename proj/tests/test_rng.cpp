#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "mlp/rng.hpp"

using namespace mlp;

TEST_CASE("child key derivation is deterministic") {
    const RngKey root = root_key_from_seed(2016);
    const RngKey a = derive_child_key(root, Branch::FSampleCurrent, {2, 5, 1});
    const RngKey b = derive_child_key(root, Branch::FSampleCurrent, {2, 5, 1});
    CHECK(a.hi == b.hi);
    CHECK(a.lo == b.lo);
    CHECK(a.path_digest == b.path_digest);
}

TEST_CASE("branch tags separate streams with identical indices") {
    const RngKey root = root_key_from_seed(7);
    const RngKey cur = derive_child_key(root, Branch::FSampleCurrent, {2, 5, 1});
    const RngKey prev = derive_child_key(root, Branch::FSamplePrevious, {2, 5, 1});
    CHECK((cur.hi != prev.hi || cur.lo != prev.lo));
    double a[2], b[2];
    standard_normals(cur, a);
    standard_normals(prev, b);
    CHECK(a[0] != b[0]);
}

TEST_CASE("index tuples separate streams") {
    const RngKey root = root_key_from_seed(7);
    const RngKey a = derive_child_key(root, Branch::Path, {0, 1});
    const RngKey b = derive_child_key(root, Branch::Path, {0, 2});
    const RngKey c = derive_child_key(root, Branch::Path, {1, 1});
    CHECK((a.hi != b.hi || a.lo != b.lo));
    CHECK((a.hi != c.hi || a.lo != c.lo));
    CHECK((b.hi != c.hi || b.lo != c.lo));
}

TEST_CASE("normal stream is prefix-stable") {
    const RngKey key = root_key_from_seed(123);
    std::vector<double> big(11), small(5);
    standard_normals(key, big);
    standard_normals(key, small);
    for (int i = 0; i < 5; ++i) CHECK(big[i] == small[i]);
}

TEST_CASE("draw counter counts scalar draws exactly") {
    const RngKey key = root_key_from_seed(9);
    DrawCounter counter;
    std::vector<double> out(37);
    standard_normals(key, out, &counter);
    CHECK(counter.count == 37);
}

TEST_CASE("inverse normal CDF round-trips the standard normal") {
    CHECK(inverse_normal_cdf(0.5) == doctest::Approx(0.0).epsilon(1e-15));
    // Phi(1.96...) reference points.
    CHECK(inverse_normal_cdf(0.975) == doctest::Approx(1.959963985).epsilon(1e-9));
    CHECK(inverse_normal_cdf(0.025) == doctest::Approx(-1.959963985).epsilon(1e-9));
    CHECK(inverse_normal_cdf(0.841344746068543) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(inverse_normal_cdf(1e-300) < -37.0);
}

TEST_CASE("chi-square uniformity of sibling first draws") {
    const RngKey root = root_key_from_seed(42);
    constexpr int n = 1'000'000;
    constexpr int bins = 256;
    std::vector<int> hist(bins, 0);
    for (int i = 0; i < n; ++i) {
        const RngKey child = derive_child_key(root, Branch::Run, {1, i});
        const double u = uniform01(child, 0);
        const int b = std::min(bins - 1, static_cast<int>(u * bins));
        ++hist[b];
    }
    const double expected = static_cast<double>(n) / bins;
    double chi2 = 0.0;
    for (int b = 0; b < bins; ++b) {
        const double diff = hist[b] - expected;
        chi2 += diff * diff / expected;
    }
    // Wilson-Hilferty upper quantile of chi2(255) at significance 1e-3.
    const double nu = bins - 1;
    const double z = 3.090232306167814; // Phi^-1(1 - 1e-3)
    const double crit = nu * std::pow(1.0 - 2.0 / (9.0 * nu) +
                                          z * std::sqrt(2.0 / (9.0 * nu)),
                                      3.0);
    CHECK(chi2 < crit);
}
