#include "mlp/quadrature.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace mlp {

QuadratureRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 1; i <= half; ++i) {
        // Chebyshev estimate of the i-th root, refined by Newton.
        double z = std::cos(M_PI * (i - 0.25) / (n + 0.5));
        double pp = 0.0;
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::fabs(z - z1) <= 1e-14) {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw std::runtime_error("gauss_legendre: Newton iteration failed");
        rule.nodes[i - 1] = -z;
        rule.nodes[n - i] = z;
        const double w = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.weights[i - 1] = w;
        rule.weights[n - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

const QuadratureRule& gauss_legendre_cached(int n) {
    static std::mutex mu;
    static std::unordered_map<int, QuadratureRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, gauss_legendre(n)).first;
    return it->second;
}

QuadratureRule rescale(const QuadratureRule& rule, double s, double T) {
    if (!(s < T)) throw std::invalid_argument("rescale: need s < T");
    QuadratureRule out;
    const double len = T - s;
    out.nodes.reserve(rule.nodes.size());
    out.weights.reserve(rule.weights.size());
    for (double x : rule.nodes) out.nodes.push_back(s + len * (x + 1.0) * 0.5);
    for (double w : rule.weights) out.weights.push_back(w * len * 0.5);
    return out;
}

namespace {

// Digamma via recurrence into the asymptotic region.
double digamma(double x) {
    double acc = 0.0;
    while (x < 6.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    return acc + std::log(x) - 0.5 * inv -
           inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 / 252.0));
}

} // namespace

double inverse_gamma(double y) {
    if (y < 0.0) throw std::invalid_argument("inverse_gamma: y must be >= 0");
    if (y <= 1.0) return 2.0;
    const double target = std::log(y);
    // Bracket the root of lgamma(x) = log(y) on [2, inf).
    double lo = 2.0, hi = 3.0;
    while (std::lgamma(hi) < target) {
        lo = hi;
        hi *= 1.5;
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double h = std::lgamma(x) - target;
        if (h > 0.0) hi = x; else lo = x;
        const double step = h / digamma(x);
        double next = x - step;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::fabs(next - x) <= 1e-12 && std::fabs(h) <= 1e-8) {
            x = next;
            break;
        }
        x = next;
    }
    return x;
}

int node_count(int k, int l, int rho) {
    if (k < l || l < 0 || rho < 1)
        throw std::invalid_argument("node_count: need k >= l >= 0, rho >= 1");
    const double y = std::pow(static_cast<double>(rho), 0.5 * (k - l));
    const int n = static_cast<int>(std::llround(inverse_gamma(y)));
    return n < 2 ? 2 : n;
}

} // namespace mlp
