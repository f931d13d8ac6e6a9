#include "mlp/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <future>
#include <stdexcept>
#include <thread>

#include "mlp/fdref.hpp"

namespace mlp {

double relative_error(std::span<const double> samples, double v) {
    if (samples.empty())
        throw std::invalid_argument("relative_error: samples non-empty");
    if (v == 0.0) throw std::invalid_argument("relative_error: v must be nonzero");
    double acc = 0.0;
    for (double s : samples) acc += std::fabs(s - v);
    return acc / (static_cast<double>(samples.size()) * std::fabs(v));
}

std::map<int, double> relative_increments(
    const std::map<int, std::vector<double>>& samples_by_rho, int rho_max) {
    const auto ref_it = samples_by_rho.find(rho_max);
    if (ref_it == samples_by_rho.end())
        throw std::invalid_argument("relative_increments: rho_max samples missing");
    const std::size_t n = ref_it->second.size();
    if (n == 0) throw std::invalid_argument("relative_increments: empty samples");
    double mean_ref = 0.0;
    for (double s : ref_it->second) mean_ref += s;
    mean_ref /= static_cast<double>(n);
    if (mean_ref == 0.0)
        throw std::invalid_argument("relative_increments: zero denominator");

    std::map<int, double> out;
    for (const auto& [rho, samples] : samples_by_rho) {
        if (rho >= rho_max) continue;
        const auto next = samples_by_rho.find(rho + 1);
        if (next == samples_by_rho.end())
            throw std::invalid_argument(
                "relative_increments: consecutive rho required up to rho_max");
        if (samples.size() != n || next->second.size() != n)
            throw std::invalid_argument(
                "relative_increments: sample lists must have equal length");
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            acc += std::fabs(next->second[i] - samples[i]);
        out[rho] = acc / (static_cast<double>(n) * std::fabs(mean_ref));
    }
    return out;
}

namespace {

struct RunOutcome {
    double value = 0.0;
    double runtime_s = 0.0;
};

// One estimator call under its structurally derived run key; wall clock
// covers the estimator call only.
RunOutcome timed_run(const ExampleConfig& cfg, const SchemeParams& params,
                     int k, const RngKey& key) {
    const auto t0 = std::chrono::steady_clock::now();
    const Estimate est =
        mlp_estimate(cfg.problem, cfg.driver, params, k, 0.0,
                     cfg.problem.eval_point, key);
    const auto t1 = std::chrono::steady_clock::now();
    return {est.value, std::chrono::duration<double>(t1 - t0).count()};
}

std::vector<RunOutcome> run_batch(const ExampleConfig& cfg,
                                  const SchemeParams& params, int rho, int runs,
                                  const RngKey& root, int threads) {
    std::vector<RunOutcome> out(runs);
    auto work = [&](int r) {
        const RngKey key = derive_child_key(root, Branch::Run, {rho, r});
        out[r] = timed_run(cfg, params, rho, key);
    };
    if (threads <= 1) {
        for (int r = 0; r < runs; ++r) work(r);
        return out;
    }
    std::vector<std::future<void>> pending;
    pending.reserve(runs);
    for (int r = 0; r < runs; ++r)
        pending.push_back(std::async(std::launch::async, work, r));
    for (auto& f : pending) f.get();
    return out;
}

double mean_of(const std::vector<double>& xs) {
    double acc = 0.0;
    for (double x : xs) acc += x;
    return acc / static_cast<double>(xs.size());
}

double sample_std(const std::vector<double>& xs, double mean) {
    double acc = 0.0;
    for (double x : xs) acc += (x - mean) * (x - mean);
    return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
    if (config.rho_list.empty())
        throw std::invalid_argument("run_experiment: rho_list non-empty");
    if (!std::is_sorted(config.rho_list.begin(), config.rho_list.end()))
        throw std::invalid_argument("run_experiment: rho_list must be sorted");
    if (config.runs < 2)
        throw std::invalid_argument("run_experiment: runs >= 2");

    const ExampleConfig cfg = build_example(config.example, config.dim);
    ExperimentResult result;

    // Reference value: closed form for the explicit example, the finite
    // difference solution for the other d=1 examples, increments otherwise.
    if (cfg.closed_form) {
        result.reference = cfg.closed_form(0.0, cfg.problem.eval_point);
    } else if (config.dim == 1) {
        FdConfig fd;
        fd.nsteps = config.fd_nsteps;
        result.reference = fd_solve(fd, cfg, 0.0, cfg.problem.eval_point[0]);
    }

    const RngKey root = root_key_from_seed(config.seed);
    int threads = config.threads;
    if (threads == 0)
        threads = static_cast<int>(std::thread::hardware_concurrency());

    std::map<int, std::vector<double>> samples_by_rho;
    for (int rho : config.rho_list) {
        SchemeParams params = cfg.scheme_params(rho);
        params.draw_budget = config.budget;
        if (predicted_draw_count(cfg.problem, params, rho) > config.budget) {
            StatsRow row;
            row.rho = rho;
            row.refused = true;
            result.stats.push_back(row);
            break; // larger rho only gets more expensive
        }
        const auto outcomes = run_batch(cfg, params, rho, config.runs, root, threads);
        std::vector<double> values(config.runs);
        double runtime_acc = 0.0;
        for (int r = 0; r < config.runs; ++r) {
            values[r] = outcomes[r].value;
            runtime_acc += outcomes[r].runtime_s;
            result.raw.push_back({rho, r, outcomes[r].value, outcomes[r].runtime_s});
        }
        StatsRow row;
        row.rho = rho;
        row.mean_value = mean_of(values);
        row.std_dev = sample_std(values, row.mean_value);
        row.mean_runtime_s = runtime_acc / config.runs;
        if (result.reference) row.rel_error = relative_error(values, *result.reference);
        result.stats.push_back(row);
        samples_by_rho[rho] = std::move(values);
    }

    if (!result.reference && samples_by_rho.size() >= 2) {
        const int rho_max = samples_by_rho.rbegin()->first;
        bool consecutive = true;
        for (const auto& [rho, _] : samples_by_rho)
            if (rho < rho_max && !samples_by_rho.count(rho + 1)) consecutive = false;
        if (consecutive) {
            const auto inc = relative_increments(samples_by_rho, rho_max);
            for (auto& row : result.stats) {
                const auto it = inc.find(row.rho);
                if (it != inc.end()) row.rel_increment = it->second;
            }
        }
    }

    if (!config.out_path.empty())
        write_stats_csv(config.out_path, result.stats, config.with_timing);
    if (!config.raw_out_path.empty())
        write_raw_csv(config.raw_out_path, result.raw, config.with_timing);
    return result;
}

std::vector<SweepRow> dimension_sweep(ExampleName example, int rho,
                                      const std::vector<int>& dims, int runs,
                                      std::uint64_t seed, std::uint64_t budget) {
    if (dims.empty()) throw std::invalid_argument("dimension_sweep: dims non-empty");
    if (runs < 1) throw std::invalid_argument("dimension_sweep: runs >= 1");
    const RngKey root = root_key_from_seed(seed);
    std::vector<SweepRow> out;
    for (int d : dims) {
        const ExampleConfig cfg = build_example(example, d);
        SchemeParams params = cfg.scheme_params(rho);
        params.draw_budget = budget;
        SweepRow row;
        row.dim = d;
        if (predicted_draw_count(cfg.problem, params, rho) > budget) {
            row.refused = true;
            out.push_back(row);
            continue;
        }
        double value_acc = 0.0, runtime_acc = 0.0;
        for (int r = 0; r < runs; ++r) {
            const RngKey key = derive_child_key(root, Branch::Run, {d, rho, r});
            const RunOutcome o = timed_run(cfg, params, rho, key);
            value_acc += o.value;
            runtime_acc += o.runtime_s;
        }
        row.value = value_acc / runs;
        row.mean_runtime_s = runtime_acc / runs;
        out.push_back(row);
    }
    return out;
}

std::string format_sig6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

namespace {

struct FileHandle {
    std::FILE* f = nullptr;
    explicit FileHandle(const std::string& path) {
        f = std::fopen(path.c_str(), "wb");
        if (!f) throw std::runtime_error("cannot open output file: " + path);
    }
    ~FileHandle() {
        if (f) std::fclose(f);
    }
};

} // namespace

void write_raw_csv(const std::string& path, const std::vector<RunRow>& rows,
                   bool with_timing) {
    FileHandle out(path);
    std::fputs("rho,run,value,runtime_s\n", out.f);
    for (const auto& r : rows) {
        std::fprintf(out.f, "%d,%d,%s,%s\n", r.rho, r.run,
                     format_sig6(r.value).c_str(),
                     with_timing ? format_sig6(r.runtime_s).c_str() : "");
    }
}

void write_stats_csv(const std::string& path, const std::vector<StatsRow>& rows,
                     bool with_timing) {
    FileHandle out(path);
    std::fputs("rho,mean,std,rel_error,rel_increment,mean_runtime_s\n", out.f);
    for (const auto& r : rows) {
        if (r.refused) {
            std::fprintf(out.f, "%d,refused,,,,\n", r.rho);
            continue;
        }
        std::fprintf(out.f, "%d,%s,%s,%s,%s,%s\n", r.rho,
                     format_sig6(r.mean_value).c_str(),
                     format_sig6(r.std_dev).c_str(),
                     r.rel_error ? format_sig6(*r.rel_error).c_str() : "",
                     r.rel_increment ? format_sig6(*r.rel_increment).c_str() : "",
                     with_timing ? format_sig6(r.mean_runtime_s).c_str() : "");
    }
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
    FileHandle out(path);
    std::fputs("d,value,runtime_s\n", out.f);
    for (const auto& r : rows) {
        if (r.refused) {
            std::fprintf(out.f, "%d,refused,\n", r.dim);
            continue;
        }
        std::fprintf(out.f, "%d,%s,%s\n", r.dim, format_sig6(r.value).c_str(),
                     format_sig6(r.mean_runtime_s).c_str());
    }
}

} // namespace mlp
