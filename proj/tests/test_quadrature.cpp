#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "mlp/quadrature.hpp"

using namespace mlp;

TEST_CASE("small Gauss-Legendre rules match the classical closed forms") {
    const auto r1 = gauss_legendre(1);
    CHECK(r1.nodes[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(r1.weights[0] == doctest::Approx(2.0).epsilon(1e-15));

    const auto r2 = gauss_legendre(2);
    CHECK(r2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(r2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(r2.weights[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r2.weights[1] == doctest::Approx(1.0).epsilon(1e-14));

    const auto r3 = gauss_legendre(3);
    CHECK(r3.nodes[0] == doctest::Approx(-std::sqrt(0.6)).epsilon(1e-14));
    CHECK(r3.nodes[1] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(r3.nodes[2] == doctest::Approx(std::sqrt(0.6)).epsilon(1e-14));
    CHECK(r3.weights[0] == doctest::Approx(5.0 / 9.0).epsilon(1e-14));
    CHECK(r3.weights[1] == doctest::Approx(8.0 / 9.0).epsilon(1e-14));
    CHECK(r3.weights[2] == doctest::Approx(5.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("nodes are symmetric, increasing, strictly interior; weights positive") {
    for (int n = 1; n <= 24; ++n) {
        const auto rule = gauss_legendre(n);
        REQUIRE(rule.size() == n);
        double prev = -1.0;
        for (int i = 0; i < n; ++i) {
            CHECK(rule.nodes[i] > prev);
            CHECK(rule.nodes[i] < 1.0);
            CHECK(rule.weights[i] > 0.0);
            CHECK(rule.nodes[i] == doctest::Approx(-rule.nodes[n - 1 - i]).epsilon(1e-13));
            prev = rule.nodes[i];
        }
    }
}

TEST_CASE("rescale maps onto (s,T) and keeps the weight sum") {
    const auto base = gauss_legendre(1);
    const auto onto02 = rescale(base, 0.0, 2.0);
    CHECK(onto02.nodes[0] == doctest::Approx(1.0));
    CHECK(onto02.weights[0] == doctest::Approx(2.0));

    const auto identity = rescale(gauss_legendre(4), -1.0, 1.0);
    const auto plain = gauss_legendre(4);
    for (int i = 0; i < 4; ++i) {
        CHECK(identity.nodes[i] == doctest::Approx(plain.nodes[i]).epsilon(1e-15));
        CHECK(identity.weights[i] == doctest::Approx(plain.weights[i]).epsilon(1e-15));
    }

    // Exactness for degree <= 2n-1: integral of t^2 on (0,1) with n=2.
    const auto r = rescale(gauss_legendre(2), 0.0, 1.0);
    double acc = 0.0;
    for (int i = 0; i < 2; ++i) acc += r.weights[i] * r.nodes[i] * r.nodes[i];
    CHECK(acc == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("rescaled rules integrate monomials of degree <= 2n-1") {
    const double s = 0.3, T = 1.7;
    for (int n = 1; n <= 20; ++n) {
        const auto rule = rescale(gauss_legendre(n), s, T);
        double wsum = 0.0;
        for (double w : rule.weights) wsum += w;
        CHECK(wsum == doctest::Approx(T - s).epsilon(1e-12));
        for (int deg = 0; deg <= 2 * n - 1; ++deg) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i)
                acc += rule.weights[i] * std::pow(rule.nodes[i], deg);
            const double exact =
                (std::pow(T, deg + 1) - std::pow(s, deg + 1)) / (deg + 1);
            CHECK(acc == doctest::Approx(exact).epsilon(1e-12));
        }
    }
}

TEST_CASE("inverse gamma hits the factorial fixed points") {
    CHECK(inverse_gamma(1.0) == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(inverse_gamma(2.0) == doctest::Approx(3.0).epsilon(1e-8));
    CHECK(inverse_gamma(6.0) == doctest::Approx(4.0).epsilon(1e-8));
    CHECK(inverse_gamma(24.0) == doctest::Approx(5.0).epsilon(1e-8));
    CHECK(inverse_gamma(120.0) == doctest::Approx(6.0).epsilon(1e-8));
    CHECK(inverse_gamma(0.5) == 2.0);
    CHECK_THROWS_AS(inverse_gamma(-1.0), std::invalid_argument);
}

TEST_CASE("inverse gamma inverts lgamma across the range") {
    for (double x = 2.0; x <= 12.0; x += 0.37) {
        const double y = std::exp(std::lgamma(x));
        CHECK(inverse_gamma(y) == doctest::Approx(x).epsilon(1e-7));
    }
}

TEST_CASE("node count schedule") {
    CHECK(node_count(3, 3, 5) == 2);  // k = l
    CHECK(node_count(1, 0, 1) == 2);  // rho = 1
    CHECK(node_count(7, 0, 1) == 2);
    // Gamma(x) = 4 has x ~ 3.66, rounding to 4 nodes.
    CHECK(node_count(2, 0, 4) == 4);
    SUBCASE("monotone in k - l and in rho") {
        for (int rho = 1; rho <= 7; ++rho)
            for (int gap = 0; gap < 7; ++gap)
                CHECK(node_count(gap + 1, 0, rho) >= node_count(gap, 0, rho));
        for (int gap = 1; gap <= 7; ++gap)
            for (int rho = 1; rho < 7; ++rho)
                CHECK(node_count(gap, 0, rho + 1) >= node_count(gap, 0, rho));
    }
}
