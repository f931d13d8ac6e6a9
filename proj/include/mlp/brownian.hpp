#pragma once

#include <span>
#include <vector>

#include "mlp/rng.hpp"

namespace mlp {

/// A d-dimensional Brownian path recorded at a finite set of times.
/// values[j*dim + c] holds W_{t_j} - W_s for coordinate c; increments
/// between consecutive recorded times are the generated Gaussian draws
/// scaled by sqrt(t_{j+1} - t_j), so replaying the key reproduces the
/// path and restricting to a prefix of the times leaves earlier values
/// unchanged.
struct BrownianPath {
    double start_time = 0.0;
    int dim = 0;
    std::vector<double> times;
    std::vector<double> values;

    std::span<const double> value_at_index(int j) const {
        return {values.data() + static_cast<std::size_t>(j) * dim,
                static_cast<std::size_t>(dim)};
    }
    int find_time(double t) const; // index of t in times, -1 if absent
};

/// Samples W_t - W_s at the given strictly increasing times (all > s).
BrownianPath sample_brownian_path(const RngKey& key, double s,
                                  std::span<const double> times, int dim,
                                  DrawCounter* counter = nullptr);

/// Core sampler writing into caller storage; `values` must hold
/// times.size()*dim doubles. Layout matches BrownianPath::values.
void sample_brownian_path_into(const RngKey& key, double s,
                               std::span<const double> times, int dim,
                               std::span<double> values,
                               DrawCounter* counter = nullptr);

} // namespace mlp
