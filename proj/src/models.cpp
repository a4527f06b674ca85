#include "gasinar/models.hpp"

#include <cmath>
#include <stdexcept>

#include "gasinar/score.hpp"
#include "gasinar/util.hpp"

namespace gasinar {

namespace {

std::string structure_name(ModelStructure s) {
    switch (s) {
        case ModelStructure::Gas: return "gas";
        case ModelStructure::Static: return "inar";
        case ModelStructure::Rc: return "rc";
    }
    return "?";
}

double rc_alpha(const RcInarModel& model, Count y_prev) {
    return logistic(clamp_logit(model.omega + model.tau * static_cast<double>(y_prev)));
}

}  // namespace

std::string kind_name(ModelKind kind) {
    return structure_name(kind.structure) +
           (kind.family == ErrorFamily::Poisson ? "-poisson" : "-negbin");
}

ModelKind parse_kind(const std::string& name) {
    for (ModelStructure s : {ModelStructure::Gas, ModelStructure::Static, ModelStructure::Rc}) {
        for (ErrorFamily f : {ErrorFamily::Poisson, ErrorFamily::NegBinomial}) {
            const ModelKind kind{s, f};
            if (kind_name(kind) == name) return kind;
        }
    }
    throw std::invalid_argument("unknown model kind: " + name);
}

ModelKind kind_of(const ModelSpec& model) {
    const ErrorFamily family = error_of(model).family;
    if (std::holds_alternative<GasInarModel>(model)) return {ModelStructure::Gas, family};
    if (std::holds_alternative<StaticInarModel>(model)) return {ModelStructure::Static, family};
    return {ModelStructure::Rc, family};
}

int n_params(ModelKind kind) {
    const int error_params = kind.family == ErrorFamily::Poisson ? 1 : 2;
    switch (kind.structure) {
        case ModelStructure::Gas: return 3 + error_params;
        case ModelStructure::Rc: return 2 + error_params;
        case ModelStructure::Static: return 1 + error_params;
    }
    return 0;
}

void validate(const ModelSpec& model) {
    if (const auto* gas = std::get_if<GasInarModel>(&model)) {
        validate(gas->params);
        return;
    }
    if (const auto* st = std::get_if<StaticInarModel>(&model)) {
        if (!(st->alpha > 0.0) || !(st->alpha < 1.0)) {
            throw std::invalid_argument("static survival probability must lie in (0, 1)");
        }
        validate(st->error);
        return;
    }
    const auto& rc = std::get<RcInarModel>(model);
    if (!std::isfinite(rc.omega) || !std::isfinite(rc.tau)) {
        throw std::invalid_argument("rc parameters must be finite");
    }
    validate(rc.error);
}

const ErrorSpec& error_of(const ModelSpec& model) {
    if (const auto* gas = std::get_if<GasInarModel>(&model)) return gas->params.error;
    if (const auto* st = std::get_if<StaticInarModel>(&model)) return st->error;
    return std::get<RcInarModel>(model).error;
}

std::vector<double> alpha_path(const ModelSpec& model, const CountSeries& series) {
    validate(model);
    validate_series(series, 2);
    if (const auto* gas = std::get_if<GasInarModel>(&model)) {
        return run_filter(series, gas->params).alpha;
    }
    const std::size_t horizon = series.size() - 1;
    std::vector<double> path(horizon);
    if (const auto* st = std::get_if<StaticInarModel>(&model)) {
        for (std::size_t i = 0; i < horizon; ++i) path[i] = st->alpha;
        return path;
    }
    const auto& rc = std::get<RcInarModel>(model);
    for (std::size_t i = 0; i < horizon; ++i) path[i] = rc_alpha(rc, series[i]);
    return path;
}

double one_step_alpha(const ModelSpec& model, const CountSeries& series) {
    validate(model);
    validate_series(series, 2);
    if (const auto* gas = std::get_if<GasInarModel>(&model)) {
        return logistic(run_filter(series, gas->params).lambda_next);
    }
    if (const auto* st = std::get_if<StaticInarModel>(&model)) return st->alpha;
    return rc_alpha(std::get<RcInarModel>(model), series.back());
}

FilterPath model_filter_path(const ModelSpec& model, const CountSeries& series) {
    if (const auto* gas = std::get_if<GasInarModel>(&model)) {
        return run_filter(series, gas->params);
    }
    const std::vector<double> alphas = alpha_path(model, series);
    const ErrorSpec& error = error_of(model);
    FilterPath path;
    path.lambda.resize(alphas.size());
    path.alpha = alphas;
    path.score.resize(alphas.size());
    path.loglik_contrib.resize(alphas.size());
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        const ScoreEvaluation eval =
            score_evaluate(static_cast<std::uint64_t>(series[i + 1]),
                           static_cast<std::uint64_t>(series[i]), alphas[i], error);
        path.lambda[i] = logit(alphas[i]);
        path.score[i] = eval.score;
        path.loglik_contrib[i] = eval.log_predictive;
    }
    path.lambda_next = logit(one_step_alpha(model, series));
    return path;
}

Likelihood log_likelihood(const ModelSpec& model, const CountSeries& series) {
    validate(model);
    validate_series(series, 2);
    Likelihood out;
    out.horizon = series.size() - 1;
    if (const auto* gas = std::get_if<GasInarModel>(&model)) {
        // Same code path as the filter so the two totals agree exactly.
        const FilterPath path = run_filter(series, gas->params);
        out.sum = path.loglik_sum();
        out.avg = path.loglik_avg();
        return out;
    }
    const std::vector<double> alphas = alpha_path(model, series);
    const ErrorSpec& error = error_of(model);
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        out.sum += predictive_log_pmf(static_cast<std::uint64_t>(series[i + 1]),
                                      static_cast<std::uint64_t>(series[i]), alphas[i], error);
    }
    out.avg = out.sum / static_cast<double>(out.horizon);
    return out;
}

}  // namespace gasinar
