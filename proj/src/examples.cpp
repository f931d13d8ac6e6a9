#include "mlp/examples.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mlp {

namespace {

double min_coord(std::span<const double> x) {
    double m = x[0];
    for (double c : x) m = std::min(m, c);
    return m;
}

double max_coord(std::span<const double> x) {
    double m = x[0];
    for (double c : x) m = std::max(m, c);
    return m;
}

double sigmoid(double a) {
    if (a >= 0.0) return 1.0 / (1.0 + std::exp(-a));
    const double e = std::exp(a);
    return e / (1.0 + e);
}

ExampleConfig make_default_risk(int dim) {
    ExampleConfig cfg;
    cfg.name = ExampleName::DefaultRisk;
    cfg.dim = dim;
    cfg.driver = Driver{DriverKind::Gbm, 0.02, 0.2};
    cfg.variant = SampleVariant::SqrtF;
    cfg.rho_max = 7;
    cfg.problem.dim = dim;
    cfg.problem.horizon = 1.0;
    cfg.problem.eval_point.assign(dim, 100.0);
    cfg.problem.terminal = [](std::span<const double> x) { return min_coord(x); };
    const double vh = (dim == 1) ? 50.0 : 47.0;
    const double vl = (dim == 1) ? 120.0 : 65.0;
    constexpr double delta = 2.0 / 3.0;
    constexpr double rate = 0.02;
    constexpr double gamma_h = 0.2;
    constexpr double gamma_l = 0.02;
    cfg.problem.nonlinearity = [vh, vl](double, std::span<const double>, double y,
                                        std::span<const double>) {
        // Default intensity: gamma_h below vh, gamma_l above vl, linear
        // interpolation on [vh, vl).
        double q;
        if (y < vh)
            q = gamma_h;
        else if (y >= vl)
            q = gamma_l;
        else
            q = (gamma_h - gamma_l) / (vh - vl) * (y - vh) + gamma_h;
        return -(1.0 - delta) * q * y - rate * y;
    };
    return cfg;
}

ExampleConfig make_cva(int dim) {
    ExampleConfig cfg;
    cfg.name = ExampleName::Cva;
    cfg.dim = dim;
    cfg.driver = Driver{DriverKind::Gbm, 0.0, 0.2};
    cfg.variant = SampleVariant::SqrtF;
    cfg.rho_max = 7;
    cfg.problem.dim = dim;
    cfg.problem.horizon = 2.0;
    cfg.problem.eval_point.assign(dim, 100.0);
    const double k1 = (dim == 1) ? 90.0 : 30.0;
    const double k2 = (dim == 1) ? 110.0 : 60.0;
    const double loss = (dim == 1) ? 10.0 : 15.0;
    cfg.problem.terminal = [k1, k2, loss](std::span<const double> x) {
        const double m = min_coord(x);
        return std::max(m - k1, 0.0) - std::max(m - k2, 0.0) - loss;
    };
    constexpr double beta = 0.03;
    cfg.problem.nonlinearity = [](double, std::span<const double>, double y,
                                  std::span<const double>) {
        return beta * (std::max(y, 0.0) - y);
    };
    return cfg;
}

ExampleConfig make_borrow_lend(int dim) {
    ExampleConfig cfg;
    cfg.name = ExampleName::BorrowLend;
    cfg.dim = dim;
    cfg.driver = Driver{DriverKind::Gbm, 0.06, 0.2};
    cfg.variant = SampleVariant::SqrtF;
    cfg.rho_max = 7;
    cfg.problem.dim = dim;
    cfg.problem.horizon = 0.5;
    cfg.problem.eval_point.assign(dim, 100.0);
    if (dim == 1) {
        cfg.problem.terminal = [](std::span<const double> x) {
            return std::max(x[0] - 100.0, 0.0);
        };
    } else {
        cfg.problem.terminal = [](std::span<const double> x) {
            const double m = max_coord(x);
            return std::max(m - 120.0, 0.0) - 2.0 * std::max(m - 150.0, 0.0);
        };
    }
    constexpr double r_lend = 0.04;
    constexpr double r_borrow = 0.06;
    constexpr double mu_bar = 0.06;
    constexpr double sigma_bar = 0.2;
    cfg.problem.nonlinearity = [](double, std::span<const double>, double y,
                                  std::span<const double> z) {
        double zsum = 0.0;
        for (double zc : z) zsum += zc;
        return -r_lend * y - (mu_bar - r_lend) / sigma_bar * zsum +
               (r_borrow - r_lend) * std::max(zsum / sigma_bar - y, 0.0);
    };
    return cfg;
}

ExampleConfig make_allen_cahn(int dim) {
    ExampleConfig cfg;
    cfg.name = ExampleName::AllenCahn;
    cfg.dim = dim;
    cfg.driver = Driver{DriverKind::Abm, 0.0, 1.0};
    cfg.variant = SampleVariant::FullF;
    cfg.rho_max = 5;
    cfg.problem.dim = dim;
    cfg.problem.horizon = 1.0;
    cfg.problem.eval_point.assign(dim, 0.0);
    cfg.problem.terminal = [](std::span<const double> x) {
        double m = 0.0;
        for (double c : x) m = std::max(m, c * c);
        return 1.0 / (1.0 + m);
    };
    cfg.problem.nonlinearity = [](double, std::span<const double>, double y,
                                  std::span<const double>) {
        return y - y * y * y;
    };
    return cfg;
}

ExampleConfig make_explicit(int dim) {
    ExampleConfig cfg;
    cfg.name = ExampleName::Explicit;
    cfg.dim = dim;
    constexpr double sigma_bar = 0.25;
    cfg.driver = Driver{DriverKind::Abm, 0.0, sigma_bar};
    cfg.variant = SampleVariant::FullF;
    cfg.rho_max = 5;
    cfg.problem.dim = dim;
    cfg.problem.horizon = 0.5;
    cfg.problem.eval_point.assign(dim, 0.0);
    const double horizon = cfg.problem.horizon;
    cfg.problem.terminal = [horizon](std::span<const double> x) {
        double sum = horizon;
        for (double c : x) sum += c;
        return sigmoid(sum);
    };
    const double shift = (2.0 + sigma_bar * sigma_bar * dim) /
                         (2.0 * sigma_bar * sigma_bar * dim);
    cfg.problem.nonlinearity = [shift](double, std::span<const double>, double y,
                                       std::span<const double> z) {
        double zsum = 0.0;
        for (double zc : z) zsum += zc;
        return sigma_bar * (y - shift) * zsum;
    };
    cfg.closed_form = [](double s, std::span<const double> x) {
        return closed_form_explicit(s, x);
    };
    return cfg;
}

} // namespace

ExampleConfig build_example(ExampleName name, int dim) {
    if (dim < 1) throw std::invalid_argument("build_example: dim >= 1");
    switch (name) {
        case ExampleName::DefaultRisk: return make_default_risk(dim);
        case ExampleName::Cva: return make_cva(dim);
        case ExampleName::BorrowLend: return make_borrow_lend(dim);
        case ExampleName::AllenCahn: return make_allen_cahn(dim);
        case ExampleName::Explicit: return make_explicit(dim);
    }
    throw std::invalid_argument("build_example: unknown example");
}

double closed_form_explicit(double s, std::span<const double> x) {
    double sum = s;
    for (double c : x) sum += c;
    return sigmoid(sum);
}

std::optional<ExampleName> parse_example_name(const std::string& text) {
    if (text == "default-risk") return ExampleName::DefaultRisk;
    if (text == "cva") return ExampleName::Cva;
    if (text == "borrow-lend") return ExampleName::BorrowLend;
    if (text == "allen-cahn") return ExampleName::AllenCahn;
    if (text == "explicit") return ExampleName::Explicit;
    return std::nullopt;
}

std::string example_name_string(ExampleName name) {
    switch (name) {
        case ExampleName::DefaultRisk: return "default-risk";
        case ExampleName::Cva: return "cva";
        case ExampleName::BorrowLend: return "borrow-lend";
        case ExampleName::AllenCahn: return "allen-cahn";
        case ExampleName::Explicit: return "explicit";
    }
    return "?";
}

} // namespace mlp
