#include "mlp/estimator.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "mlp/quadrature.hpp"

namespace mlp {

std::int64_t SchemeParams::mg(int k, int l) const {
    std::int64_t m = 1;
    for (int i = 0; i < k - l; ++i) m *= rho;
    return m;
}

std::int64_t SchemeParams::mf(int k, int l) const {
    if (variant == SampleVariant::FullF) return mg(k, l);
    return std::llround(std::pow(static_cast<double>(rho), 0.5 * (k - l)));
}

int SchemeParams::nodes(int k, int l) const {
    const int n = node_count(k, l, rho) + node_offset;
    return n < 2 ? 2 : n;
}

namespace {

constexpr std::uint64_t kU64Max = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    return (a > kU64Max - b) ? kU64Max : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > kU64Max / b) return kU64Max;
    return a * b;
}

struct LevelScratch {
    std::vector<double> path_values;
    std::vector<double> node_times;
    std::vector<double> node_weights;
    std::vector<double> state;
    std::vector<double> shifted;
    std::vector<double> zeta_cur;
    std::vector<double> zeta_prev;
};

struct EvalContext {
    const PdeProblem& problem;
    const Driver& driver;
    const SchemeParams& params;
    DrawCounter* counter;
    std::vector<LevelScratch> scratch;
};

[[noreturn]] void fail_non_finite(const char* what, double value, double s,
                                  std::span<const double> x, const RngKey& key) {
    char head[256];
    std::snprintf(head, sizeof(head),
                  "non-finite %s (%g) at s=%.17g, x[0]=%.17g (dim %zu), %s",
                  what, value, s, x.empty() ? 0.0 : x[0], x.size(),
                  format_key(key).c_str());
    throw NumericError(head);
}

double eval_recursive(EvalContext& ctx, int k, double s,
                      std::span<const double> x, const RngKey& key, int depth,
                      std::span<double> zeta) {
    const PdeProblem& problem = ctx.problem;
    const int d = problem.dim;
    const double T = problem.horizon;
    LevelScratch& ws = ctx.scratch[depth];

    const double gx = problem.terminal(x);
    if (!std::isfinite(gx)) fail_non_finite("terminal value g(x)", gx, s, x, key);

    double value = gx;
    for (int c = 0; c < d; ++c) zeta[c] = 0.0;

    // Terminal-difference Monte Carlo sum, mg(k,0) samples.
    const std::int64_t m_g = ctx.params.mg(k, 0);
    const double inv_mg = 1.0 / static_cast<double>(m_g);
    const double inv_T = 1.0 / (T - s);
    const double terminal_time[1] = {T};
    std::span<double> dw_T(ws.path_values.data(), d);
    for (std::int64_t i = 1; i <= m_g; ++i) {
        const RngKey ck = derive_child_key(key, Branch::TerminalSample, {i});
        sample_brownian_path_into(ck, s, terminal_time, d, dw_T, ctx.counter);
        driver_state(ctx.driver, x, T - s, dw_T, ws.state);
        const double gX = problem.terminal(ws.state);
        if (!std::isfinite(gX))
            fail_non_finite("terminal value g(X_T)", gX, s, x, ck);
        const double diff = (gX - gx) * inv_mg;
        value += diff;
        const double w = diff * inv_T;
        for (int c = 0; c < d; ++c) zeta[c] += w * dw_T[c];
    }
    if (k == 0) return value;

    // Nonlinearity part: for each level l a Monte Carlo sum over mf(k,l)
    // Brownian paths, quadrature in time over the Gauss-Legendre nodes on
    // (s,T), and the telescoped difference of the two inner iterates.
    for (int l = 0; l < k; ++l) {
        const int n_nodes = ctx.params.nodes(k, l);
        const std::int64_t m_f = ctx.params.mf(k, l);
        const QuadratureRule& base = gauss_legendre_cached(n_nodes);
        const double len = T - s;
        for (int j = 0; j < n_nodes; ++j) {
            ws.node_times[j] = s + len * (base.nodes[j] + 1.0) * 0.5;
            ws.node_weights[j] = base.weights[j] * len * 0.5;
        }
        std::span<const double> times(ws.node_times.data(), n_nodes);
        std::span<double> path(ws.path_values.data(),
                               static_cast<std::size_t>(n_nodes) * d);
        const double inv_mf = 1.0 / static_cast<double>(m_f);
        for (std::int64_t i = 1; i <= m_f; ++i) {
            const RngKey pk = derive_child_key(key, Branch::Path, {l, i});
            sample_brownian_path_into(pk, s, times, d, path, ctx.counter);
            for (int j = 0; j < n_nodes; ++j) {
                const double t = ws.node_times[j];
                std::span<const double> dw(ws.path_values.data() +
                                               static_cast<std::size_t>(j) * d,
                                           d);
                driver_state(ctx.driver, x, t - s, dw, ws.state);
                std::span<const double> inner_point(ws.state.data(), d);
                if (problem.space_shift) {
                    problem.space_shift(ws.state, ws.shifted);
                    inner_point = std::span<const double>(ws.shifted.data(), d);
                }
                const RngKey kc =
                    derive_child_key(key, Branch::FSampleCurrent, {l, i, j});
                const double u_cur =
                    eval_recursive(ctx, l, t, inner_point, kc, depth + 1, ws.zeta_cur);
                double f_diff =
                    problem.nonlinearity(t, ws.state, u_cur, ws.zeta_cur);
                if (!std::isfinite(f_diff))
                    fail_non_finite("nonlinearity value", f_diff, t, ws.state, kc);
                if (l >= 1) {
                    const RngKey kp =
                        derive_child_key(key, Branch::FSamplePrevious, {l, i, j});
                    const double u_prev = eval_recursive(ctx, l - 1, t, inner_point,
                                                         kp, depth + 1, ws.zeta_prev);
                    const double f_prev =
                        problem.nonlinearity(t, ws.state, u_prev, ws.zeta_prev);
                    if (!std::isfinite(f_prev))
                        fail_non_finite("nonlinearity value", f_prev, t, ws.state, kp);
                    f_diff -= f_prev;
                }
                const double scale = ws.node_weights[j] * inv_mf;
                value += scale * f_diff;
                const double w = scale * f_diff / (t - s);
                for (int c = 0; c < d; ++c) zeta[c] += w * dw[c];
            }
        }
    }
    return value;
}

void validate_entry(const PdeProblem& problem, const Driver& driver, int k,
                    double s, std::span<const double> x) {
    problem.validate();
    if (k < 0) throw std::invalid_argument("mlp_estimate: k >= 0");
    if (!(s >= 0.0 && s < problem.horizon))
        throw std::invalid_argument("mlp_estimate: need 0 <= s < T");
    if (static_cast<int>(x.size()) != problem.dim)
        throw std::invalid_argument("mlp_estimate: x has wrong dimension");
    if (driver.kind == DriverKind::Gbm) {
        for (double xc : x)
            if (!(xc > 0.0))
                throw std::invalid_argument("mlp_estimate: GBM requires x > 0");
    } else {
        if (driver.mu_bar != 0.0)
            throw std::invalid_argument("mlp_estimate: ABM driver requires mu_bar = 0");
    }
}

Estimate run_estimator(const PdeProblem& problem, const Driver& driver,
                       const SchemeParams& params, int k, double s,
                       std::span<const double> x, const RngKey& key,
                       DrawCounter* counter) {
    validate_entry(problem, driver, k, s, x);
    const std::uint64_t predicted = predicted_draw_count(problem, params, k);
    if (predicted > params.draw_budget) {
        char msg[160];
        if (predicted == kU64Max)
            std::snprintf(msg, sizeof(msg),
                          "mlp_estimate refused: draw count exceeds budget "
                          "(counter saturated, budget %llu)",
                          static_cast<unsigned long long>(params.draw_budget));
        else
            std::snprintf(msg, sizeof(msg),
                          "mlp_estimate refused: predicted %llu draws exceeds "
                          "budget %llu",
                          static_cast<unsigned long long>(predicted),
                          static_cast<unsigned long long>(params.draw_budget));
        throw BudgetError(msg);
    }

    int max_nodes = 2;
    for (int l = 0; l < k; ++l) max_nodes = std::max(max_nodes, params.nodes(k, l));

    EvalContext ctx{problem, driver, params, counter, {}};
    ctx.scratch.resize(static_cast<std::size_t>(k) + 2);
    const int d = problem.dim;
    for (auto& ws : ctx.scratch) {
        ws.path_values.resize(static_cast<std::size_t>(max_nodes) * d);
        ws.node_times.resize(max_nodes);
        ws.node_weights.resize(max_nodes);
        ws.state.resize(d);
        ws.shifted.resize(d);
        ws.zeta_cur.resize(d);
        ws.zeta_prev.resize(d);
    }

    Estimate est;
    est.zeta.resize(d);
    est.value = eval_recursive(ctx, k, s, x, key, 0, est.zeta);
    if (!std::isfinite(est.value))
        fail_non_finite("estimate value", est.value, s, x, key);
    for (double zc : est.zeta)
        if (!std::isfinite(zc)) fail_non_finite("estimate gradient", zc, s, x, key);
    return est;
}

} // namespace

Estimate base_estimate(const PdeProblem& problem, const Driver& driver,
                       const SchemeParams& params, double s,
                       std::span<const double> x, const RngKey& key,
                       DrawCounter* counter) {
    return run_estimator(problem, driver, params, 0, s, x, key, counter);
}

Estimate mlp_estimate(const PdeProblem& problem, const Driver& driver,
                      const SchemeParams& params, int k, double s,
                      std::span<const double> x, const RngKey& key,
                      DrawCounter* counter) {
    return run_estimator(problem, driver, params, k, s, x, key, counter);
}

std::uint64_t predicted_draw_count(const PdeProblem& problem,
                                   const SchemeParams& params, int k) {
    if (k < 0) throw std::invalid_argument("predicted_draw_count: k >= 0");
    const auto d = static_cast<std::uint64_t>(problem.dim);
    std::vector<std::uint64_t> count(static_cast<std::size_t>(k) + 1, 0);
    for (int kk = 0; kk <= k; ++kk) {
        std::uint64_t total =
            sat_mul(d, static_cast<std::uint64_t>(params.mg(kk, 0)));
        for (int l = 0; l < kk; ++l) {
            // Per sample: one path draw block of d*nodes, then at every node
            // the current iterate and (for l >= 1) the previous iterate.
            std::uint64_t per_node = d;
            per_node = sat_add(per_node, count[l]);
            if (l >= 1) per_node = sat_add(per_node, count[l - 1]);
            const std::uint64_t level = sat_mul(
                sat_mul(static_cast<std::uint64_t>(params.mf(kk, l)),
                        static_cast<std::uint64_t>(params.nodes(kk, l))),
                per_node);
            total = sat_add(total, level);
        }
        count[kk] = total;
    }
    return count[k];
}

} // namespace mlp
