#ifndef GASINAR_UTIL_HPP
#define GASINAR_UTIL_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace gasinar {

// Hard bounds for logit-scale survival probabilities. logistic(+/-35) is
// within 1e-15 of {1, 0}; recursions saturate here instead of overflowing.
inline constexpr double kLogitBound = 35.0;

inline double logistic(double x) {
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

inline double logit(double p) { return std::log(p) - std::log1p(-p); }

inline double clamp_logit(double x) {
    if (x < -kLogitBound) return -kLogitBound;
    if (x > kLogitBound) return kLogitBound;
    return x;
}

// lgamma(n) for integer n >= 1 through a lookup table; counts and thinning
// sums hit this on every pmf term, and std::lgamma is the hot spot otherwise.
double lgamma_int(std::uint64_t n);

// log(n choose k) for 0 <= k <= n.
inline double log_binomial_coef(std::uint64_t n, std::uint64_t k) {
    return lgamma_int(n + 1) - lgamma_int(k + 1) - lgamma_int(n - k + 1);
}

// Streaming max-shifted accumulator for log(sum exp(x_i)) together with the
// first two weighted moments of an integer label attached to each term.
// Single pass, no allocation; terms may arrive in any order.
class LogSumMoments {
  public:
    void add(double log_term, double label) {
        if (log_term == -std::numeric_limits<double>::infinity()) return;
        if (log_term > shift_) {
            const double rescale = std::exp(shift_ - log_term);
            s0_ *= rescale;
            s1_ *= rescale;
            s2_ *= rescale;
            shift_ = log_term;
        }
        const double w = std::exp(log_term - shift_);
        s0_ += w;
        s1_ += w * label;
        s2_ += w * label * label;
    }

    bool empty() const { return s0_ == 0.0; }
    double log_sum() const { return shift_ + std::log(s0_); }
    double mean() const { return s1_ / s0_; }
    double second_moment() const { return s2_ / s0_; }
    double variance() const {
        const double m = mean();
        double v = second_moment() - m * m;
        return v > 0.0 ? v : 0.0;
    }

  private:
    double shift_ = -std::numeric_limits<double>::infinity();
    double s0_ = 0.0;
    double s1_ = 0.0;
    double s2_ = 0.0;
};

inline double log_sum_exp(const std::vector<double>& vals) {
    LogSumMoments acc;
    for (double v : vals) acc.add(v, 0.0);
    return acc.empty() ? -std::numeric_limits<double>::infinity() : acc.log_sum();
}

// Support truncation rule used for every infinite-support summation in this
// project: extend the support until the accumulated mass reaches 1 - 1e-12
// and at least max(5 * mean_hint, 50) points have been included.
inline constexpr double kTruncationTailMass = 1e-12;

inline std::size_t truncation_min_terms(double mean_hint) {
    const double floor_terms = std::max(5.0 * mean_hint, 50.0);
    return static_cast<std::size_t>(std::ceil(floor_terms));
}

}  // namespace gasinar

#endif
