#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mlp {

/// Terminal condition g: R^d -> R.
using TerminalFn = std::function<double(std::span<const double>)>;
/// Nonlinearity f(t, x, y, z) with y ~ u(t,x) and z ~ [sigma]* grad u.
using NonlinearityFn = std::function<double(double, std::span<const double>,
                                            double, std::span<const double>)>;
/// Space shift eta: R^d -> R^d (writes into the second span).
using SpaceShiftFn =
    std::function<void(std::span<const double>, std::span<double>)>;

/// A semilinear parabolic terminal-value problem. `space_shift` empty
/// means the identity.
struct PdeProblem {
    int dim = 1;
    double horizon = 1.0;
    TerminalFn terminal;
    NonlinearityFn nonlinearity;
    SpaceShiftFn space_shift;
    std::vector<double> eval_point;

    void validate() const {
        if (dim < 1) throw std::invalid_argument("PdeProblem: dim >= 1");
        if (!(horizon > 0.0)) throw std::invalid_argument("PdeProblem: horizon > 0");
        if (!terminal || !nonlinearity)
            throw std::invalid_argument("PdeProblem: terminal and nonlinearity required");
        if (static_cast<int>(eval_point.size()) != dim)
            throw std::invalid_argument("PdeProblem: eval_point size != dim");
    }
};

/// Sample-count schedule variant: SqrtF uses round(rho^((k-l)/2)) samples
/// for the nonlinearity sums, FullF uses rho^(k-l) for both sums.
enum class SampleVariant { SqrtF, FullF };

/// Scheme parameters: accuracy knob rho, sample-count schedules, and the
/// quadrature node schedule. `node_offset` perturbs every node count (for
/// sensitivity checks) before the minimum of 2 is applied.
struct SchemeParams {
    int rho = 1;
    SampleVariant variant = SampleVariant::FullF;
    std::uint64_t draw_budget = 10'000'000'000ULL;
    int node_offset = 0;

    std::int64_t mg(int k, int l) const;
    std::int64_t mf(int k, int l) const;
    int nodes(int k, int l) const;
};

/// The (1+d)-dimensional estimate: the solution value and the
/// sigma-scaled spatial gradient.
struct Estimate {
    double value = 0.0;
    std::vector<double> zeta;
};

/// Draw budget refusal (raised before any recursion starts).
class BudgetError : public std::runtime_error {
  public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// Non-finite intermediate detected; the message carries (s, x, key path).
class NumericError : public std::runtime_error {
  public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace mlp
