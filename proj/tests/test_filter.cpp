#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "gasinar/filter.hpp"
#include "gasinar/models.hpp"
#include "gasinar/simulation.hpp"
#include "gasinar/util.hpp"
#include "testutil.hpp"

using namespace gasinar;

namespace {

// Score recomputed from the long double convolution weights, independent of
// the library's log-space evaluation.
double oracle_score(unsigned y, unsigned y_prev, double alpha, const ErrorSpec& spec) {
    const unsigned m = y < y_prev ? y : y_prev;
    long double denom = 0.0L, numer = 0.0L;
    for (unsigned k = 0; k <= m; ++k) {
        const long double w = oracle::binomial_pmf_ld(k, y_prev, alpha) *
                              oracle::error_pmf_ld(spec, y - k);
        denom += w;
        numer += w * (static_cast<long double>(k) -
                      static_cast<long double>(y_prev) * static_cast<long double>(alpha));
    }
    return static_cast<double>(numer / denom);
}

}  // namespace

TEST_CASE("default initialization is the recursion fixed point") {
    GasParams params{-0.5, 0.9, 0.15, ErrorSpec::poisson(6.0)};
    CHECK(default_init(params) == doctest::Approx(-5.0).epsilon(1e-14));

    params.omega = 0.0;
    params.beta = 0.0;
    CHECK(default_init(params) == 0.0);

    // Estimates of the magnitude reported for the crime series.
    params.omega = -0.907;
    params.beta = 0.965;
    CHECK(default_init(params) == doctest::Approx(-25.914).epsilon(0.001 / 25.914));
    CHECK(std::abs(default_init(params)) < kLogitBound);

    params.beta = 1.0;
    CHECK_THROWS_AS((void)default_init(params), std::invalid_argument);
    params.beta = -1.2;
    CHECK_THROWS_AS((void)default_init(params), std::invalid_argument);
}

TEST_CASE("zero score loading pins the filter at the fixed point") {
    const GasParams params{-0.4, 0.7, 0.0, ErrorSpec::poisson(5.0)};
    const CountSeries series{3, 5, 2, 8, 0, 4, 6, 1};
    const FilterPath path = run_filter(series, params);
    const double fixed_point = default_init(params);
    for (double lam : path.lambda) CHECK(lam == doctest::Approx(fixed_point).epsilon(1e-14));
}

TEST_CASE("a zero conditioning count leaves a pure autoregressive step") {
    const GasParams params{0.3, 0.6, 0.25, ErrorSpec::poisson(2.0)};
    // series[3] = 0, so the score at t = 4 vanishes and lambda[5] is exact.
    const CountSeries series{2, 4, 1, 0, 3, 2, 5};
    const FilterPath path = run_filter(series, params);
    const std::size_t t_zero = 3;  // contribution index for y_t = series[4], y_prev = 0
    CHECK(path.score[t_zero] == 0.0);
    CHECK(path.lambda[t_zero + 1] ==
          doctest::Approx(params.omega + params.beta * path.lambda[t_zero]).epsilon(1e-15));
}

TEST_CASE("two-step hand recursion matches the filter") {
    const GasParams params{0.1, 0.5, 0.2, ErrorSpec::poisson(5.0)};
    const CountSeries series{3, 5, 2};
    const FilterPath path = run_filter(series, params, 0.2);

    CHECK(path.lambda[0] == 0.2);
    const double alpha1 = logistic(0.2);
    const double s1 = oracle_score(5, 3, alpha1, params.error);
    const double lambda2 = 0.1 + 0.5 * 0.2 + 0.2 * s1;
    CHECK(path.lambda[1] == doctest::Approx(lambda2).epsilon(1e-12));
    CHECK(path.alpha[1] == doctest::Approx(logistic(lambda2)).epsilon(1e-12));

    const double conv =
        static_cast<double>(oracle::convolution_pmf_ld(2, 5, logistic(lambda2), params.error));
    CHECK(path.loglik_contrib[1] == doctest::Approx(std::log(conv)).epsilon(1e-10));
}

TEST_CASE("filter rejects bad inputs") {
    const GasParams params{0.1, 0.5, 0.2, ErrorSpec::poisson(5.0)};
    CHECK_THROWS_AS((void)run_filter(CountSeries{4}, params), std::invalid_argument);
    CHECK_THROWS_AS((void)run_filter(CountSeries{3, -1, 2}, params), std::invalid_argument);
}

TEST_CASE("initialization is forgotten on stable configurations") {
    // Stationary mean of logit(alpha) at -0.5: raw intercept -0.05.
    const GasParams params{-0.05, 0.9, 0.15, ErrorSpec::poisson(6.0)};
    const SimulatedSeries sim = simulate(ModelSpec{GasInarModel{params}}, 1000, 31);
    const FilterPath low = run_filter(sim.series, params, -2.0);
    const FilterPath high = run_filter(sim.series, params, 2.0);
    for (std::size_t t = 500; t < low.length(); ++t) {
        CHECK(std::abs(low.lambda[t] - high.lambda[t]) < 1e-8);
    }
}

TEST_CASE("filtered path respects the saturation bounds") {
    // Large tau forces excursions; the path must stay clamped and alpha interior.
    const GasParams params{0.0, 0.98, 3.5, ErrorSpec::poisson(5.0)};
    const SimulatedSeries sim = simulate(ModelSpec{GasInarModel{{-0.05, 0.9, 0.15,
                                                                 ErrorSpec::poisson(6.0)}}},
                                         400, 17);
    const FilterPath path = run_filter(sim.series, params);
    for (std::size_t t = 0; t < path.length(); ++t) {
        CHECK(path.lambda[t] >= -kLogitBound);
        CHECK(path.lambda[t] <= kLogitBound);
        CHECK(path.alpha[t] > 0.0);
        CHECK(path.alpha[t] < 1.0);
    }
}

TEST_CASE("filter log-likelihood equals the model module's total exactly") {
    const GasParams params{-0.3, 0.8, 0.1, ErrorSpec::negbin(6.0, 15.0)};
    const SimulatedSeries sim = simulate(ModelSpec{GasInarModel{params}}, 300, 5);
    const FilterPath path = run_filter(sim.series, params);
    const Likelihood lik = log_likelihood(GasInarModel{params}, sim.series);
    CHECK(path.loglik_sum() == lik.sum);
    CHECK(path.loglik_avg() == lik.avg);
    CHECK(lik.avg == lik.sum / static_cast<double>(lik.horizon));
}
