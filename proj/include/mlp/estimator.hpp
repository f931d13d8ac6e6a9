#pragma once

#include "mlp/driver.hpp"
#include "mlp/problem.hpp"
#include "mlp/rng.hpp"

namespace mlp {

/// Picard base case: (g(x), 0) plus the single-level terminal-difference
/// Monte Carlo correction with mg(0,0) samples.
Estimate base_estimate(const PdeProblem& problem, const Driver& driver,
                       const SchemeParams& params, double s,
                       std::span<const double> x, const RngKey& key,
                       DrawCounter* counter = nullptr);

/// Full-history recursive multilevel Picard estimate of
/// (u(s,x), [sigma(s,x)]* grad u(s,x)) at Picard level k.
///
/// Refuses with BudgetError if the predicted draw count exceeds
/// params.draw_budget; throws NumericError on non-finite intermediates.
Estimate mlp_estimate(const PdeProblem& problem, const Driver& driver,
                      const SchemeParams& params, int k, double s,
                      std::span<const double> x, const RngKey& key,
                      DrawCounter* counter = nullptr);

/// Exact number of scalar standard-normal draws mlp_estimate(k) consumes.
/// Saturates at UINT64_MAX on overflow.
std::uint64_t predicted_draw_count(const PdeProblem& problem,
                                   const SchemeParams& params, int k);

} // namespace mlp
