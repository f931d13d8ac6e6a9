#include "mlp/brownian.hpp"

#include <cmath>
#include <stdexcept>

namespace mlp {

int BrownianPath::find_time(double t) const {
    for (std::size_t j = 0; j < times.size(); ++j)
        if (times[j] == t) return static_cast<int>(j);
    return -1;
}

void sample_brownian_path_into(const RngKey& key, double s,
                               std::span<const double> times, int dim,
                               std::span<double> values, DrawCounter* counter) {
    if (dim < 1) throw std::invalid_argument("sample_brownian_path: dim >= 1");
    const std::size_t n = times.size();
    if (values.size() != n * static_cast<std::size_t>(dim))
        throw std::invalid_argument("sample_brownian_path: bad output size");
    double prev = s;
    for (std::size_t j = 0; j < n; ++j) {
        if (!(times[j] > prev))
            throw std::invalid_argument(
                "sample_brownian_path: times must be strictly increasing and > s");
        prev = times[j];
    }
    // Draws are time-major: the d coordinates of increment j come before
    // those of increment j+1, which gives prefix consistency in the times.
    standard_normals(key, values, counter);
    prev = s;
    for (std::size_t j = 0; j < n; ++j) {
        const double sd = std::sqrt(times[j] - prev);
        double* row = values.data() + j * dim;
        if (j == 0) {
            for (int c = 0; c < dim; ++c) row[c] *= sd;
        } else {
            const double* before = row - dim;
            for (int c = 0; c < dim; ++c) row[c] = before[c] + sd * row[c];
        }
        prev = times[j];
    }
}

BrownianPath sample_brownian_path(const RngKey& key, double s,
                                  std::span<const double> times, int dim,
                                  DrawCounter* counter) {
    BrownianPath path;
    path.start_time = s;
    path.dim = dim;
    path.times.assign(times.begin(), times.end());
    path.values.resize(times.size() * static_cast<std::size_t>(dim));
    sample_brownian_path_into(key, s, times, dim, path.values, counter);
    return path;
}

} // namespace mlp
