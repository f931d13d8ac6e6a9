#pragma once

#include <functional>
#include <optional>
#include <string>

#include "mlp/driver.hpp"
#include "mlp/problem.hpp"

namespace mlp {

enum class ExampleName { DefaultRisk, Cva, BorrowLend, AllenCahn, Explicit };

/// A fully parameterized example problem: the PDE data, the exact forward
/// driver, the sample-schedule variant, and (when known) the closed-form
/// solution.
struct ExampleConfig {
    ExampleName name = ExampleName::AllenCahn;
    int dim = 1;
    PdeProblem problem;
    Driver driver;
    SampleVariant variant = SampleVariant::FullF;
    int rho_max = 5;
    std::function<double(double, std::span<const double>)> closed_form;

    SchemeParams scheme_params(int rho) const {
        SchemeParams p;
        p.rho = rho;
        p.variant = variant;
        return p;
    }
};

/// Builds one of the five example problems. Dimensions other than 1 and
/// 100 reuse the d=100 parameter set.
ExampleConfig build_example(ExampleName name, int dim);

/// Logistic solution of the Explicit example, stable for large |s + sum x|.
double closed_form_explicit(double s, std::span<const double> x);

/// CLI spellings: default-risk | cva | borrow-lend | allen-cahn | explicit.
std::optional<ExampleName> parse_example_name(const std::string& text);
std::string example_name_string(ExampleName name);

} // namespace mlp
