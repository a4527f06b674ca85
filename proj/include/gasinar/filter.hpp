#ifndef GASINAR_FILTER_HPP
#define GASINAR_FILTER_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "gasinar/distributions.hpp"
#include "gasinar/series.hpp"

namespace gasinar {

// Static parameters of the score-driven survival probability recursion
//
//   logit(alpha_{t+1}) = omega + beta * logit(alpha_t) + tau * s_t
//
// where s_t is the score of the one-step predictive log-likelihood.
struct GasParams {
    double omega = 0.0;
    double beta = 0.0;   // persistence, |beta| < 1
    double tau = 0.0;    // score loading
    ErrorSpec error;
};

void validate(const GasParams& params);

// Fixed-point initialization omega / (1 - beta): the unconditional mean of
// logit(alpha_t) implied by the recursion, since the score has zero mean.
double default_init(const GasParams& params);

// Filtered quantities for t = 1..T given observations y_0..y_T; entry i of
// each vector refers to time t = i + 1. lambda is kept inside
// [-kLogitBound, kLogitBound]; clamping events are counted as a diagnostic.
struct FilterPath {
    std::vector<double> lambda;          // logit of filtered survival probability
    std::vector<double> alpha;           // logistic(lambda), elementwise
    std::vector<double> score;           // s_t evaluated at the current alpha
    std::vector<double> loglik_contrib;  // log p(y_t | alpha_t, y_{t-1})
    double lambda_next = 0.0;            // one-step-ahead logit for period T+1
    int saturation_count = 0;

    std::size_t length() const { return lambda.size(); }
    double loglik_sum() const;
    double loglik_avg() const;
};

// The recursion consumes y_0 as the first conditioning value; the first
// likelihood contribution is for y_1. The score driving lambda[t+1] is
// evaluated at the current filtered alpha[t].
FilterPath run_filter(const CountSeries& series, const GasParams& params,
                      std::optional<double> init = std::nullopt);

}  // namespace gasinar

#endif
