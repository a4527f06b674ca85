#include "gasinar/forecasting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gasinar/score.hpp"
#include "gasinar/simulation.hpp"
#include "gasinar/util.hpp"

namespace gasinar {

namespace {

constexpr std::uint64_t kPathsPerChunk = 1024;

std::uint64_t median_from_counts(const std::vector<std::uint64_t>& counts, std::uint64_t total) {
    // Lower median: the draw at 1-based position (total + 1) / 2.
    const std::uint64_t position = (total + 1) / 2;
    std::uint64_t cum = 0;
    for (std::uint64_t x = 0; x < counts.size(); ++x) {
        cum += counts[x];
        if (cum >= position) return x;
    }
    return counts.empty() ? 0 : counts.size() - 1;
}

// One simulated path of the count recursion under the fitted model's
// survival-probability law, returning y at the requested horizon.
std::uint64_t simulate_path(const ModelSpec& model, const ForecastOrigin& origin, int horizon,
                            Rng& rng) {
    const ErrorSpec& error = error_of(model);
    const auto* gas = std::get_if<GasInarModel>(&model);
    const auto* rc = std::get_if<RcInarModel>(&model);

    std::uint64_t y = origin.y_last;
    double alpha = origin.alpha_next;
    double lambda = clamp_logit(logit(origin.alpha_next));
    for (int k = 1; k <= horizon; ++k) {
        const std::uint64_t y_prev = y;
        y = thin(y_prev, alpha, rng) + sample(error, rng);
        if (k == horizon) break;
        if (gas) {
            const double s = score(y, y_prev, alpha, error);
            lambda = clamp_logit(gas->params.omega + gas->params.beta * lambda +
                                 gas->params.tau * s);
            alpha = logistic(lambda);
        } else if (rc) {
            alpha = logistic(clamp_logit(rc->omega + rc->tau * static_cast<double>(y)));
        }
        // static: alpha unchanged
    }
    return y;
}

}  // namespace

ForecastDistribution forecast_exact_1(std::uint64_t y_last, double alpha_next,
                                      const ErrorSpec& error) {
    if (!(alpha_next > 0.0) || !(alpha_next < 1.0)) {
        throw std::invalid_argument("one-step survival probability must lie in (0, 1)");
    }
    validate(error);

    ForecastDistribution out;
    out.horizon = 1;
    out.pmf = predictive_pmf(y_last, alpha_next, error);
    out.point_mean = alpha_next * static_cast<double>(y_last) + error.mean;
    out.n_draws = 0;
    out.seed = 0;

    double cum = 0.0;
    out.point_median = out.pmf.size() - 1;
    for (std::uint64_t x = 0; x < out.pmf.size(); ++x) {
        cum += out.pmf[x];
        if (cum >= 0.5) {
            out.point_median = x;
            break;
        }
    }
    return out;
}

ForecastDistribution forecast_mc(const ModelSpec& model, const ForecastOrigin& origin, int horizon,
                                 std::uint64_t n_draws, std::uint64_t seed, Exec exec) {
    validate(model);
    if (horizon < 1) throw std::invalid_argument("forecast horizon must be at least 1");
    if (n_draws < 1) throw std::invalid_argument("forecast needs at least one draw");
    if (!(origin.alpha_next > 0.0) || !(origin.alpha_next < 1.0)) {
        throw std::invalid_argument("one-step survival probability must lie in (0, 1)");
    }

    const std::uint64_t n_chunks = (n_draws + kPathsPerChunk - 1) / kPathsPerChunk;
    std::vector<std::vector<std::uint64_t>> chunk_counts(n_chunks);

    for_each_index(n_chunks, exec, [&](std::size_t c) {
        Rng rng = make_stream(seed, c);
        const std::uint64_t begin = c * kPathsPerChunk;
        const std::uint64_t end = std::min(n_draws, begin + kPathsPerChunk);
        auto& counts = chunk_counts[c];
        for (std::uint64_t i = begin; i < end; ++i) {
            const std::uint64_t y = simulate_path(model, origin, horizon, rng);
            if (y >= counts.size()) counts.resize(y + 1, 0);
            ++counts[y];
        }
    });

    ForecastDistribution out;
    out.horizon = horizon;
    out.n_draws = n_draws;
    out.seed = seed;
    std::size_t support = 0;
    for (const auto& counts : chunk_counts) support = std::max(support, counts.size());
    out.counts.assign(support, 0);
    for (const auto& counts : chunk_counts) {
        for (std::size_t x = 0; x < counts.size(); ++x) out.counts[x] += counts[x];
    }

    out.pmf.resize(support);
    double mean = 0.0;
    for (std::size_t x = 0; x < support; ++x) {
        out.pmf[x] = static_cast<double>(out.counts[x]) / static_cast<double>(n_draws);
        mean += static_cast<double>(x) * static_cast<double>(out.counts[x]);
    }
    out.point_mean = mean / static_cast<double>(n_draws);
    out.point_median = median_from_counts(out.counts, n_draws);
    return out;
}

double static_point_forecast(std::uint64_t y_last, double alpha, double mu, int horizon) {
    if (!(alpha >= 0.0) || !(alpha < 1.0)) {
        throw std::invalid_argument("static point forecast requires alpha in [0, 1)");
    }
    if (horizon < 1) throw std::invalid_argument("forecast horizon must be at least 1");
    const double decay = std::pow(alpha, horizon);
    return decay * static_cast<double>(y_last) + mu * (1.0 - decay) / (1.0 - alpha);
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
    const std::size_t support = std::max(p.size(), q.size());
    double distance = 0.0;
    for (std::size_t x = 0; x < support; ++x) {
        const double px = x < p.size() ? p[x] : 0.0;
        const double qx = x < q.size() ? q[x] : 0.0;
        distance += std::abs(px - qx);
    }
    return 0.5 * distance;
}

}  // namespace gasinar
