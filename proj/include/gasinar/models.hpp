#ifndef GASINAR_MODELS_HPP
#define GASINAR_MODELS_HPP

#include <string>
#include <variant>
#include <vector>

#include "gasinar/filter.hpp"

namespace gasinar {

// The model zoo compared throughout: the score-driven specification, the
// classical static-coefficient model, and the random-coefficient baseline
// with logit(alpha_t) = omega + tau * y_{t-1}. All three reduce to a
// per-time survival probability plus an error spec, which fully determine
// the conditional pmf; estimation, forecasting and evaluation are written
// against that shared surface.

struct GasInarModel {
    GasParams params;
};

struct StaticInarModel {
    double alpha = 0.5;  // in (0, 1)
    ErrorSpec error;
};

struct RcInarModel {
    double omega = 0.0;
    double tau = 0.0;
    ErrorSpec error;
};

using ModelSpec = std::variant<GasInarModel, StaticInarModel, RcInarModel>;

enum class ModelStructure { Gas, Static, Rc };

struct ModelKind {
    ModelStructure structure = ModelStructure::Static;
    ErrorFamily family = ErrorFamily::Poisson;

    friend bool operator==(const ModelKind&, const ModelKind&) = default;
};

// CLI-facing names: gas-poisson, gas-negbin, inar-poisson, inar-negbin,
// rc-poisson, rc-negbin.
std::string kind_name(ModelKind kind);
ModelKind parse_kind(const std::string& name);
ModelKind kind_of(const ModelSpec& model);
int n_params(ModelKind kind);

void validate(const ModelSpec& model);
const ErrorSpec& error_of(const ModelSpec& model);

// Survival probability used in the conditional pmf of y_t, for t = 1..T
// (entry i refers to t = i + 1, matching FilterPath indexing).
std::vector<double> alpha_path(const ModelSpec& model, const CountSeries& series);

// One-step-ahead survival probability for the period following the last
// observation, the alpha that the recursion assigns to T + 1.
double one_step_alpha(const ModelSpec& model, const CountSeries& series);

struct Likelihood {
    double sum = 0.0;
    double avg = 0.0;  // sum / T, the per-observation average
    std::size_t horizon = 0;
};

Likelihood log_likelihood(const ModelSpec& model, const CountSeries& series);

// Per-time evaluation table for any model: the gas variant delegates to
// run_filter, the others synthesize the same columns from their alpha path.
FilterPath model_filter_path(const ModelSpec& model, const CountSeries& series);

}  // namespace gasinar

#endif
