#include "gasinar/filter.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gasinar/score.hpp"
#include "gasinar/util.hpp"

namespace gasinar {

void validate(const GasParams& params) {
    if (!(std::abs(params.beta) < 1.0)) {
        throw std::invalid_argument("gas parameters require |beta| < 1");
    }
    if (!std::isfinite(params.omega) || !std::isfinite(params.tau)) {
        throw std::invalid_argument("gas parameters must be finite");
    }
    validate(params.error);
}

double default_init(const GasParams& params) {
    validate(params);
    return params.omega / (1.0 - params.beta);
}

double FilterPath::loglik_sum() const {
    return std::accumulate(loglik_contrib.begin(), loglik_contrib.end(), 0.0);
}

double FilterPath::loglik_avg() const {
    return loglik_contrib.empty() ? 0.0
                                  : loglik_sum() / static_cast<double>(loglik_contrib.size());
}

FilterPath run_filter(const CountSeries& series, const GasParams& params,
                      std::optional<double> init) {
    validate(params);
    validate_series(series, 2);

    const std::size_t horizon = series.size() - 1;  // contributions t = 1..T
    FilterPath path;
    path.lambda.resize(horizon);
    path.alpha.resize(horizon);
    path.score.resize(horizon);
    path.loglik_contrib.resize(horizon);

    const double start = init.value_or(default_init(params));
    if (!std::isfinite(start)) {
        throw std::invalid_argument("filter initialization must be finite");
    }

    auto saturate = [&path](double x) {
        const double clamped = clamp_logit(x);
        if (clamped != x) ++path.saturation_count;
        return clamped;
    };

    double lambda = saturate(start);
    for (std::size_t i = 0; i < horizon; ++i) {
        const auto y = static_cast<std::uint64_t>(series[i + 1]);
        const auto y_prev = static_cast<std::uint64_t>(series[i]);
        const double alpha = logistic(lambda);

        const ScoreEvaluation eval = score_evaluate(y, y_prev, alpha, params.error);
        path.lambda[i] = lambda;
        path.alpha[i] = alpha;
        path.score[i] = eval.score;
        path.loglik_contrib[i] = eval.log_predictive;

        lambda = saturate(params.omega + params.beta * lambda + params.tau * eval.score);
    }
    path.lambda_next = lambda;
    return path;
}

}  // namespace gasinar
