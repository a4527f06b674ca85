#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "gasinar/diagnostics.hpp"
#include "gasinar/rng.hpp"
#include "gasinar/score.hpp"
#include "gasinar/util.hpp"
#include "testutil.hpp"

using namespace gasinar;

TEST_CASE("predictive pmf with no prior elements is the error pmf") {
    const ErrorSpec spec = ErrorSpec::poisson(5.0);
    for (std::uint64_t y : {0ull, 3ull, 12ull}) {
        for (double alpha : {0.1, 0.5, 0.9}) {
            CHECK(predictive_log_pmf(y, 0, alpha, spec) ==
                  doctest::Approx(log_pmf(spec, y)).epsilon(1e-15));
        }
    }
}

TEST_CASE("predictive pmf matches the brute-force convolution oracle") {
    const ErrorSpec pois = ErrorSpec::poisson(5.0);
    const double want = static_cast<double>(oracle::convolution_pmf_ld(2, 3, 0.5L, pois));
    CHECK(std::exp(predictive_log_pmf(2, 3, 0.5, pois)) ==
          doctest::Approx(want).epsilon(1e-13));

    const ErrorSpec nb = ErrorSpec::negbin(6.0, 15.0);
    for (unsigned y = 0; y <= 12; ++y) {
        for (unsigned y_prev : {0u, 1u, 4u, 9u}) {
            for (double alpha : {0.07, 0.45, 0.93}) {
                const double got = std::exp(predictive_log_pmf(y, y_prev, alpha, nb));
                const double expected = static_cast<double>(
                    oracle::convolution_pmf_ld(y, y_prev, static_cast<long double>(alpha), nb));
                CHECK(got == doctest::Approx(expected).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("predictive pmf normalizes under the truncation rule") {
    const ErrorSpec nb = ErrorSpec::negbin(6.0, 15.0);
    const std::vector<double> pmf = predictive_pmf(10, 0.7, nb);
    double total = 0.0;
    for (double p : pmf) total += p;
    CHECK(std::abs(total - 1.0) < 1e-10);
}

TEST_CASE("score is zero with no prior elements") {
    const ErrorSpec nb = ErrorSpec::negbin(6.0, 15.0);
    for (std::uint64_t y : {0ull, 2ull, 30ull}) {
        for (double alpha : {0.05, 0.6, 0.95}) {
            CHECK(score(y, 0, alpha, nb) == 0.0);
            CHECK(score_derivative(y, 0, alpha, nb) == 0.0);
        }
    }
}

TEST_CASE("small count after a large count pushes the survival probability down") {
    CHECK(score(2, 20, 0.5, ErrorSpec::poisson(5.0)) < 0.0);
}

TEST_CASE("score equals the finite difference of the predictive log pmf") {
    const ErrorSpec pois = ErrorSpec::poisson(5.0);
    const double fd = oracle::central_diff_logit(
        [&](double a) { return predictive_log_pmf(7, 5, a, pois); }, 0.4);
    CHECK(oracle::relative_error(score(7, 5, 0.4, pois), fd) < 1e-5);
}

TEST_CASE("score derivative equals the finite difference of the score") {
    const ErrorSpec pois = ErrorSpec::poisson(5.0);
    const double fd =
        oracle::central_diff_logit([&](double a) { return score(7, 5, a, pois); }, 0.4);
    CHECK(oracle::relative_error(score_derivative(7, 5, 0.4, pois), fd) < 1e-5);
}

TEST_CASE("derivative consistency holds on a grid of configurations") {
    const std::vector<ErrorSpec> specs{ErrorSpec::poisson(5.0), ErrorSpec::negbin(6.0, 15.0)};
    Rng rng = make_stream(2024);
    std::uniform_int_distribution<std::uint64_t> count_draw(0, 50);
    for (int rep = 0; rep < 60; ++rep) {
        const std::uint64_t y = count_draw(rng);
        const std::uint64_t y_prev = count_draw(rng);
        const double alpha = 0.05 + 0.9 * std::uniform_real_distribution<double>()(rng);
        const ErrorSpec& spec = specs[rep % specs.size()];

        const ScoreEvaluation eval = score_evaluate(y, y_prev, alpha, spec);
        const double fd_score = oracle::central_diff_logit(
            [&](double a) { return predictive_log_pmf(y, y_prev, a, spec); }, alpha);
        const double fd_deriv = oracle::central_diff_logit(
            [&](double a) { return score(y, y_prev, a, spec); }, alpha);

        if (y_prev == 0) {
            CHECK(eval.score == 0.0);
            CHECK(eval.score_derivative == 0.0);
            continue;
        }
        CHECK(std::abs(eval.score - fd_score) <
              1e-5 * std::max(1.0, std::abs(fd_score)));
        CHECK(std::abs(eval.score_derivative - fd_deriv) <
              1e-5 * std::max(1.0, std::abs(fd_deriv)));
    }
}

TEST_CASE("score derivative bounds hold over randomized draws") {
    Rng rng = make_stream(99);
    std::uniform_int_distribution<std::uint64_t> count_draw(0, 100);
    std::uniform_real_distribution<double> alpha_draw(0.001, 0.999);
    std::uniform_real_distribution<double> mean_draw(0.5, 12.0);

    for (int rep = 0; rep < 10000; ++rep) {
        const std::uint64_t y = count_draw(rng);
        const std::uint64_t y_prev = count_draw(rng);
        const double alpha = alpha_draw(rng);
        const double mu = mean_draw(rng);
        const ErrorSpec spec =
            rep % 2 == 0 ? ErrorSpec::poisson(mu) : ErrorSpec::negbin(mu, mu * 2.1);

        const ScoreEvaluation eval = score_evaluate(y, y_prev, alpha, spec);
        const double n = static_cast<double>(y_prev);
        const double m = static_cast<double>(eval.m);
        CHECK(std::abs(eval.score) <= 2.0 * n + 1e-12);
        CHECK(eval.score_derivative >= -n / 4.0 - 1e-12);
        CHECK(eval.score_derivative <= m * m + 1e-12);
    }
}

TEST_CASE("variance form of the score derivative equals the literal double sum") {
    const std::vector<ErrorSpec> specs{ErrorSpec::poisson(3.0), ErrorSpec::negbin(4.0, 9.0)};
    for (unsigned y = 0; y <= 10; ++y) {
        for (unsigned y_prev = 0; y_prev <= 10; ++y_prev) {
            for (double alpha : {0.15, 0.5, 0.85}) {
                for (const ErrorSpec& spec : specs) {
                    const double literal = static_cast<double>(
                        oracle::score_derivative_double_sum_ld(y, y_prev, alpha, spec));
                    const double got = score_derivative(y, y_prev, alpha, spec);
                    CHECK(std::abs(got - literal) < 1e-10 * std::max(1.0, std::abs(literal)));
                }
            }
        }
    }
}

TEST_CASE("score has zero conditional expectation") {
    for (double alpha : {0.1, 0.5, 0.9}) {
        for (std::uint64_t y_prev : {0ull, 1ull, 5ull, 15ull}) {
            for (const ErrorSpec& spec :
                 {ErrorSpec::poisson(5.0), ErrorSpec::negbin(6.0, 15.0)}) {
                CHECK(std::abs(score_mean_check(y_prev, alpha, spec)) < 1e-8);
            }
        }
    }
}

TEST_CASE("alpha outside the open unit interval is rejected") {
    const ErrorSpec spec = ErrorSpec::poisson(5.0);
    CHECK_THROWS_AS((void)predictive_log_pmf(2, 3, 0.0, spec), std::invalid_argument);
    CHECK_THROWS_AS((void)predictive_log_pmf(2, 3, 1.0, spec), std::invalid_argument);
    CHECK_THROWS_AS((void)score(2, 3, -0.1, spec), std::invalid_argument);
    CHECK_THROWS_AS((void)score_derivative(2, 3, 1.5, spec), std::invalid_argument);
}

TEST_CASE("large previous counts stay finite in log space") {
    const ErrorSpec spec = ErrorSpec::poisson(8.0);
    const ScoreEvaluation eval = score_evaluate(2500, 3000, 0.8, spec);
    CHECK(std::isfinite(eval.log_predictive));
    CHECK(std::isfinite(eval.score));
    CHECK(std::isfinite(eval.score_derivative));
}
