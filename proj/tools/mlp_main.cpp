// Command-line runner for the multilevel Picard solver: single estimates,
// repeated-run experiments with CSV statistics, runtime-vs-dimension
// sweeps, and the one-dimensional finite-difference reference.

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mlp/estimator.hpp"
#include "mlp/examples.hpp"
#include "mlp/fdref.hpp"
#include "mlp/harness.hpp"

namespace {

mlp::ExampleName require_example(const std::string& text) {
    const auto name = mlp::parse_example_name(text);
    if (!name)
        throw CLI::ValidationError(
            "--example",
            "unknown example '" + text +
                "' (expected default-risk | cva | borrow-lend | allen-cahn | explicit)");
    return *name;
}

// Accepts "5..100", "5,10,25" or a single value.
std::vector<int> parse_dims(const std::string& text) {
    std::vector<int> dims;
    const auto range_pos = text.find("..");
    if (range_pos != std::string::npos) {
        const int lo = std::stoi(text.substr(0, range_pos));
        const int hi = std::stoi(text.substr(range_pos + 2));
        if (lo < 1 || hi < lo)
            throw CLI::ValidationError("--dims", "invalid range '" + text + "'");
        for (int d = lo; d <= hi; ++d) dims.push_back(d);
        return dims;
    }
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        dims.push_back(std::stoi(text.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    if (dims.empty()) throw CLI::ValidationError("--dims", "no dimensions given");
    for (int d : dims)
        if (d < 1) throw CLI::ValidationError("--dims", "dimensions must be >= 1");
    return dims;
}

std::string default_raw_path(const std::string& out) {
    const auto pos = out.rfind(".csv");
    if (pos != std::string::npos && pos == out.size() - 4)
        return out.substr(0, pos) + ".raw.csv";
    return out + ".raw.csv";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multilevel Picard solver for semilinear parabolic PDEs"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a config file");

    std::string example_text;
    int dim = 1;
    int rho = 1;
    std::optional<int> level;
    std::uint64_t seed = 2016;
    std::uint64_t budget = 10'000'000'000ULL;

    auto* solve = app.add_subcommand("solve", "Evaluate one estimate at (0, x0)");
    solve->add_option("--example", example_text, "Example problem")->required();
    solve->add_option("--dim", dim, "Dimension d")->check(CLI::PositiveNumber);
    solve->add_option("--rho", rho, "Accuracy parameter rho")
        ->check(CLI::PositiveNumber);
    solve->add_option("--k", level, "Picard level k (default: k = rho)");
    solve->add_option("--seed", seed, "RNG seed");
    solve->add_option("--budget", budget, "Scalar normal draw budget");
    bool full_output = false;
    solve->add_flag("--full", full_output, "Also print the gradient estimate");

    int runs = 10;
    int rho_max_opt = 0;
    std::string out_path, raw_out_path;
    int threads = 0;
    bool no_timing = false;
    int fd_nsteps = 2048;

    auto* experiment =
        app.add_subcommand("experiment", "Repeated-run statistics over rho = 1..rho-max");
    experiment->add_option("--example", example_text, "Example problem")->required();
    experiment->add_option("--dim", dim, "Dimension d")->check(CLI::PositiveNumber);
    experiment->add_option("--rho-max", rho_max_opt, "Largest rho (k = rho)")
        ->required()
        ->check(CLI::PositiveNumber);
    experiment->add_option("--runs", runs, "Independent runs per rho")
        ->check(CLI::Range(2, 1000000));
    experiment->add_option("--seed", seed, "RNG seed");
    experiment->add_option("--budget", budget, "Scalar normal draw budget");
    experiment->add_option("--out", out_path, "Statistics CSV path")->required();
    experiment->add_option("--raw-out", raw_out_path,
                           "Raw per-run CSV path (default: <out>.raw.csv)");
    experiment->add_option("--threads", threads, "Worker threads (0 = auto)");
    experiment->add_flag("--no-timing", no_timing,
                         "Leave runtime fields empty for reproducible files");
    experiment->add_option("--fd-nsteps", fd_nsteps,
                           "Reference finite-difference time steps (d=1)");

    std::string dims_text;
    int sweep_runs = 1;
    auto* sweep = app.add_subcommand("sweep", "Runtime vs dimension at k = rho");
    sweep->add_option("--example", example_text, "Example problem")->required();
    sweep->add_option("--rho", rho, "Accuracy parameter rho")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--dims", dims_text, "Dimensions, e.g. 5..100 or 5,10,25")
        ->required();
    sweep->add_option("--runs", sweep_runs, "Runs per dimension")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--seed", seed, "RNG seed");
    sweep->add_option("--budget", budget, "Scalar normal draw budget");
    sweep->add_option("--out", out_path, "Sweep CSV path")->required();

    auto* fdref = app.add_subcommand("fd-ref", "Finite-difference reference (d=1)");
    fdref->add_option("--example", example_text, "Example problem")->required();
    fdref->add_option("--nsteps", fd_nsteps, "Time steps")
        ->check(CLI::Range(2, 1 << 24));

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) {
            const auto cfg = mlp::build_example(require_example(example_text), dim);
            mlp::SchemeParams params = cfg.scheme_params(rho);
            params.draw_budget = budget;
            const int k = level.value_or(rho);
            const auto key = mlp::derive_child_key(
                mlp::root_key_from_seed(seed), mlp::Branch::Run, {rho, 0});
            const auto est = mlp::mlp_estimate(cfg.problem, cfg.driver, params, k,
                                               0.0, cfg.problem.eval_point, key);
            std::printf("%s\n", mlp::format_sig6(est.value).c_str());
            if (full_output)
                for (int c = 0; c < dim; ++c)
                    std::printf("zeta[%d] %s\n", c,
                                mlp::format_sig6(est.zeta[c]).c_str());
        } else if (experiment->parsed()) {
            mlp::ExperimentConfig config;
            config.example = require_example(example_text);
            config.dim = dim;
            for (int r = 1; r <= rho_max_opt; ++r) config.rho_list.push_back(r);
            config.runs = runs;
            config.seed = seed;
            config.budget = budget;
            config.out_path = out_path;
            config.raw_out_path =
                raw_out_path.empty() ? default_raw_path(out_path) : raw_out_path;
            config.threads = threads;
            config.with_timing = !no_timing;
            config.fd_nsteps = fd_nsteps;
            const auto result = mlp::run_experiment(config);
            if (result.reference)
                std::printf("reference %s\n",
                            mlp::format_sig6(*result.reference).c_str());
            for (const auto& row : result.stats) {
                if (row.refused) {
                    std::printf("rho %d refused (budget %llu draws)\n", row.rho,
                                static_cast<unsigned long long>(budget));
                    continue;
                }
                std::printf("rho %d mean %s std %s", row.rho,
                            mlp::format_sig6(row.mean_value).c_str(),
                            mlp::format_sig6(row.std_dev).c_str());
                if (row.rel_error)
                    std::printf(" rel_error %s",
                                mlp::format_sig6(*row.rel_error).c_str());
                if (row.rel_increment)
                    std::printf(" rel_increment %s",
                                mlp::format_sig6(*row.rel_increment).c_str());
                std::printf(" runtime_s %s\n",
                            mlp::format_sig6(row.mean_runtime_s).c_str());
            }
        } else if (sweep->parsed()) {
            const auto rows = mlp::dimension_sweep(require_example(example_text),
                                                   rho, parse_dims(dims_text),
                                                   sweep_runs, seed, budget);
            mlp::write_sweep_csv(out_path, rows);
            for (const auto& row : rows) {
                if (row.refused)
                    std::printf("d %d refused\n", row.dim);
                else
                    std::printf("d %d value %s runtime_s %s\n", row.dim,
                                mlp::format_sig6(row.value).c_str(),
                                mlp::format_sig6(row.mean_runtime_s).c_str());
            }
        } else if (fdref->parsed()) {
            const auto cfg = mlp::build_example(require_example(example_text), 1);
            mlp::FdConfig fd;
            fd.nsteps = fd_nsteps;
            const double v = mlp::fd_solve(fd, cfg, 0.0, cfg.problem.eval_point[0]);
            std::printf("%s\n", mlp::format_sig6(v).c_str());
        }
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 1;
    }
    return 0;
}
