#ifndef GASINAR_FORECASTING_HPP
#define GASINAR_FORECASTING_HPP

#include <cstdint>

#include "gasinar/models.hpp"
#include "gasinar/parallel.hpp"
#include "gasinar/rng.hpp"

namespace gasinar {

// Forecast pmf over future counts at a single horizon, either exact (one
// step ahead, n_draws = 0) or Monte Carlo (empirical frequencies of B
// simulated paths). pmf is dense over x = 0..support-1.
struct ForecastDistribution {
    int horizon = 1;
    std::vector<double> pmf;
    std::vector<std::uint64_t> counts;  // per-x draw counts; empty for exact
    double point_mean = 0.0;
    std::uint64_t point_median = 0;
    std::uint64_t n_draws = 0;  // B; 0 marks the exact distribution
    std::uint64_t seed = 0;

    double pmf_at(std::uint64_t x) const {
        return x < pmf.size() ? pmf[x] : 0.0;
    }
};

// Exact one-step pmf: the thinning/error convolution at the survival
// probability the recursion assigns to the next period.
ForecastDistribution forecast_exact_1(std::uint64_t y_last, double alpha_next,
                                      const ErrorSpec& error);

// State at the forecast origin: the last observation and the one-step-ahead
// survival probability (one_step_alpha supplies it for a fitted model).
struct ForecastOrigin {
    std::uint64_t y_last = 0;
    double alpha_next = 0.5;
};

// Simulation-based h-step forecast: B paths advance the count recursion and
// the model's survival-probability law jointly; the pmf is the empirical
// frequency of the terminal values. Chunks of paths own disjoint derived
// streams, so the result is independent of thread count. The point mean is
// the sample average; the median is the lower sample median, an integer.
ForecastDistribution forecast_mc(const ModelSpec& model, const ForecastOrigin& origin, int horizon,
                                 std::uint64_t n_draws, std::uint64_t seed,
                                 Exec exec = Exec::Parallel);

// Closed-form h-step point forecast for the static model in cumulated form
// alpha^h * y + mu * (1 - alpha^h) / (1 - alpha); requires alpha < 1.
double static_point_forecast(std::uint64_t y_last, double alpha, double mu, int horizon);

// Half the L1 distance between two pmfs (zero-padded to a common support).
double total_variation(const std::vector<double>& p, const std::vector<double>& q);

}  // namespace gasinar

#endif
