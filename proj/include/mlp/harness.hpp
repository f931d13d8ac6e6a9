#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mlp/estimator.hpp"
#include "mlp/examples.hpp"

namespace mlp {

/// Repeated-run experiment: k = rho along rho_list, `runs` independent
/// evaluations each, statistics per rho. Budget refusal at some rho emits
/// a refused row and skips the larger rho values.
struct ExperimentConfig {
    ExampleName example = ExampleName::AllenCahn;
    int dim = 1;
    std::vector<int> rho_list;
    int runs = 10;
    std::uint64_t seed = 2016;
    std::uint64_t budget = 10'000'000'000ULL;
    std::string out_path;     // stats CSV, empty = don't write
    std::string raw_out_path; // raw CSV, empty = don't write
    int threads = 0;          // 0 = hardware concurrency
    bool with_timing = true;  // false leaves runtime fields empty in CSV
    int fd_nsteps = 2048;     // reference resolution for d=1 examples
};

struct RunRow {
    int rho = 0;
    int run = 0;
    double value = 0.0;
    double runtime_s = 0.0;
};

struct StatsRow {
    int rho = 0;
    double mean_value = 0.0;
    double std_dev = 0.0;
    std::optional<double> rel_error;
    std::optional<double> rel_increment;
    double mean_runtime_s = 0.0;
    bool refused = false;
};

struct ExperimentResult {
    std::vector<RunRow> raw;
    std::vector<StatsRow> stats;
    std::optional<double> reference;
};

/// Mean absolute deviation from v, relative to |v|.
double relative_error(std::span<const double> samples, double v);

/// Cross-rho increment statistic: runs are paired by index, normalized by
/// the magnitude of the rho_max mean. Requires consecutive rho up to
/// rho_max with equally long sample lists.
std::map<int, double> relative_increments(
    const std::map<int, std::vector<double>>& samples_by_rho, int rho_max);

ExperimentResult run_experiment(const ExperimentConfig& config);

struct SweepRow {
    int dim = 0;
    double value = 0.0;
    double mean_runtime_s = 0.0;
    bool refused = false;
};

/// Runtime-vs-dimension sweep at k = rho. Budget refusals are recorded
/// and the sweep continues.
std::vector<SweepRow> dimension_sweep(ExampleName example, int rho,
                                      const std::vector<int>& dims, int runs,
                                      std::uint64_t seed,
                                      std::uint64_t budget = 10'000'000'000ULL);

void write_raw_csv(const std::string& path, const std::vector<RunRow>& rows,
                   bool with_timing = true);
void write_stats_csv(const std::string& path, const std::vector<StatsRow>& rows,
                     bool with_timing = true);
void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);

/// Number formatting used in all CSV output: 6 significant digits.
std::string format_sig6(double v);

} // namespace mlp
