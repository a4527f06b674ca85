#include "gasinar/score.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gasinar/util.hpp"

namespace gasinar {

ScoreEvaluation score_evaluate(std::uint64_t y, std::uint64_t y_prev, double alpha,
                               const ErrorSpec& spec) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw std::invalid_argument("survival probability must lie strictly in (0, 1)");
    }
    validate(spec);

    const std::uint64_t m = std::min(y, y_prev);
    const double log_alpha = std::log(alpha);
    const double log_1m_alpha = std::log1p(-alpha);
    const double n = static_cast<double>(y_prev);

    // All thinning terms in log space; y_prev in the thousands must not
    // overflow the binomial coefficients.
    LogSumMoments acc;
    for (std::uint64_t k = 0; k <= m; ++k) {
        const double kd = static_cast<double>(k);
        const double log_term = log_binomial_coef(y_prev, k) + kd * log_alpha +
                                (n - kd) * log_1m_alpha + log_pmf(spec, y - k);
        acc.add(log_term, kd);
    }

    ScoreEvaluation out;
    out.m = m;
    out.log_predictive = acc.log_sum();
    out.score = acc.mean() - n * alpha;
    out.score_derivative = acc.variance() - alpha * (1.0 - alpha) * n;
    return out;
}

double predictive_log_pmf(std::uint64_t y, std::uint64_t y_prev, double alpha,
                          const ErrorSpec& spec) {
    return score_evaluate(y, y_prev, alpha, spec).log_predictive;
}

double score(std::uint64_t y, std::uint64_t y_prev, double alpha, const ErrorSpec& spec) {
    // y_prev = 0 collapses to a single k=0 term, giving an exact zero.
    return score_evaluate(y, y_prev, alpha, spec).score;
}

double score_derivative(std::uint64_t y, std::uint64_t y_prev, double alpha,
                        const ErrorSpec& spec) {
    return score_evaluate(y, y_prev, alpha, spec).score_derivative;
}

std::vector<double> predictive_pmf(std::uint64_t y_prev, double alpha, const ErrorSpec& spec) {
    const double mean_hint = alpha * static_cast<double>(y_prev) + spec.mean;
    const std::size_t min_terms = truncation_min_terms(mean_hint);
    // Hard cap so a pathological spec cannot loop forever; generous enough
    // that the tail-mass rule always wins for sane parameters.
    const std::size_t cap =
        std::max<std::size_t>(static_cast<std::size_t>(200.0 * (mean_hint + 10.0)), 100000);

    std::vector<double> probs;
    probs.reserve(min_terms);
    double cum = 0.0;
    for (std::uint64_t x = 0;; ++x) {
        const double p = std::exp(predictive_log_pmf(x, y_prev, alpha, spec));
        probs.push_back(p);
        cum += p;
        if (probs.size() >= min_terms && cum >= 1.0 - kTruncationTailMass) break;
        if (probs.size() >= cap) break;
    }
    return probs;
}

}  // namespace gasinar
