#ifndef GASINAR_SCORE_HPP
#define GASINAR_SCORE_HPP

#include <cstdint>
#include <vector>

#include "gasinar/distributions.hpp"

namespace gasinar {

// One evaluation of the predictive pmf
//
//   p(y | alpha, y_prev, xi) = sum_{k=0}^{min(y, y_prev)}
//       Binomial(k; y_prev, alpha) * p_e(y - k, xi)
//
// together with its first two derivatives in logit(alpha). With weights
// w_k proportional to each convolution term,
//
//   score            = E_w[k] - y_prev * alpha
//   score_derivative = Var_w[k] - alpha * (1 - alpha) * y_prev
//
// The variance form of the second derivative collapses the literal double
// sum over (j, k) to a single pass; the equivalence is covered by tests.
struct ScoreEvaluation {
    double log_predictive;
    double score;
    double score_derivative;
    std::uint64_t m;  // min(y, y_prev), upper summation index
};

// Requires alpha strictly inside (0, 1); throws std::invalid_argument
// otherwise. Finite for every pair of counts (full-support error term).
ScoreEvaluation score_evaluate(std::uint64_t y, std::uint64_t y_prev, double alpha,
                               const ErrorSpec& spec);

double predictive_log_pmf(std::uint64_t y, std::uint64_t y_prev, double alpha,
                          const ErrorSpec& spec);

// d log p / d logit(alpha); zero whenever y_prev = 0.
double score(std::uint64_t y, std::uint64_t y_prev, double alpha, const ErrorSpec& spec);

// d score / d logit(alpha); bounded in [-y_prev/4, m^2].
double score_derivative(std::uint64_t y, std::uint64_t y_prev, double alpha,
                        const ErrorSpec& spec);

// Predictive pmf over x = 0..M as a dense vector, truncated by the shared
// support rule (tail mass below 1e-12, at least max(5*mean, 50) points).
// With y_prev = 0 this is the bare error pmf.
std::vector<double> predictive_pmf(std::uint64_t y_prev, double alpha, const ErrorSpec& spec);

}  // namespace gasinar

#endif
