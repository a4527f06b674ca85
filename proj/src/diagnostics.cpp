#include "gasinar/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gasinar/score.hpp"
#include "gasinar/util.hpp"

namespace gasinar {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double quantile_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return 0.0;
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = static_cast<std::size_t>(std::ceil(pos));
    const double w = pos - static_cast<double>(lo);
    return (1.0 - w) * sorted[lo] + w * sorted[hi];
}

}  // namespace

ContractionReport contraction_check(const CountSeries& series, const GasParams& params,
                                    int grid_size) {
    validate(params);
    validate_series(series, 2);
    if (grid_size < 101) throw std::invalid_argument("contraction grid needs at least 101 points");

    ContractionReport report;
    report.grid_size = grid_size;

    const double beta = params.beta;
    const double tau = params.tau;
    const std::size_t horizon = series.size() - 1;

    double sufficient_sum = 0.0;
    double empirical_sum = 0.0;
    for (std::size_t i = 0; i < horizon; ++i) {
        const auto y = static_cast<std::uint64_t>(series[i + 1]);
        const auto y_prev = static_cast<std::uint64_t>(series[i]);
        const double m = static_cast<double>(std::min(y, y_prev));

        const double lower = std::abs(beta - tau * static_cast<double>(y_prev) / 4.0);
        const double upper = std::abs(beta + tau * m * m);
        sufficient_sum += std::log(std::max(lower, upper));

        double sup = 0.0;
        if (tau != 0.0) {
            for (int g = 0; g < grid_size; ++g) {
                const double lam = -kLogitBound + 2.0 * kLogitBound * static_cast<double>(g) /
                                                     static_cast<double>(grid_size - 1);
                const double ds = score_derivative(y, y_prev, logistic(lam), params.error);
                sup = std::max(sup, std::abs(beta + tau * ds));
            }
        } else {
            sup = std::abs(beta);
        }
        empirical_sum += std::log(sup);
    }

    const double n = static_cast<double>(horizon);
    report.sufficient_value = std::isfinite(sufficient_sum) ? sufficient_sum / n : kNegInf;
    report.empirical_value = std::isfinite(empirical_sum) ? empirical_sum / n : kNegInf;
    report.satisfied_sufficient = report.sufficient_value < 0.0;
    report.satisfied_empirical = report.empirical_value < 0.0;
    return report;
}

double kl_conditional(const std::vector<double>& p_true, const std::vector<double>& p_model) {
    if (p_true.size() != p_model.size()) {
        throw std::invalid_argument("KL divergence requires pmfs on the same truncated support");
    }
    double kl = 0.0;
    for (std::size_t x = 0; x < p_true.size(); ++x) {
        if (p_true[x] == 0.0) continue;
        if (!(p_model[x] > 0.0)) {
            throw std::invalid_argument("model pmf vanishes inside the support of the true pmf");
        }
        kl += p_true[x] * (std::log(p_true[x]) - std::log(p_model[x]));
    }
    return kl;
}

double score_mean_check(std::uint64_t y_prev, double alpha, const ErrorSpec& error) {
    const std::vector<double> pmf = predictive_pmf(y_prev, alpha, error);
    double mean = 0.0;
    for (std::uint64_t x = 0; x < pmf.size(); ++x) {
        mean += pmf[x] * score(x, y_prev, alpha, error);
    }
    return mean;
}

FilterQuality filter_quality(DgpKind kind, const ModelSpec& fitted, const SimulatedSeries& sim) {
    (void)kind;  // the generating error is Poisson(5) for every kind
    if (sim.series.size() != sim.true_alpha.size()) {
        throw std::invalid_argument("simulated series and true alpha path disagree in length");
    }
    const std::vector<double> fitted_alpha = alpha_path(fitted, sim.series);
    const ErrorSpec& fitted_error = error_of(fitted);
    const ErrorSpec true_error = dgp_error();

    FilterQuality out;
    const std::size_t horizon = fitted_alpha.size();
    for (std::size_t i = 0; i < horizon; ++i) {
        const auto y_prev = static_cast<std::uint64_t>(sim.series[i]);
        const double alpha_true = sim.true_alpha[i + 1];
        const double alpha_hat = fitted_alpha[i];

        const double diff = alpha_hat - alpha_true;
        out.mse_alpha += diff * diff;

        const std::vector<double> p_true = predictive_pmf(y_prev, alpha_true, true_error);
        std::vector<double> p_model(p_true.size());
        for (std::uint64_t x = 0; x < p_true.size(); ++x) {
            p_model[x] = std::exp(predictive_log_pmf(x, y_prev, alpha_hat, fitted_error));
        }
        out.mean_kl += kl_conditional(p_true, p_model);
    }
    out.mse_alpha /= static_cast<double>(horizon);
    out.mean_kl /= static_cast<double>(horizon);
    return out;
}

AlphaBands alpha_confidence_bands(const CountSeries& series, const FitResult& fit,
                                  std::vector<double> levels, std::size_t n_draws,
                                  std::uint64_t seed, Exec exec) {
    if (!fit.se_available || fit.cov_unconstrained.empty()) {
        throw std::runtime_error(
            "confidence bands need the estimator covariance; refit with more data or restarts");
    }
    if (n_draws < 2) throw std::invalid_argument("confidence bands need at least 2 draws");
    std::sort(levels.begin(), levels.end());

    optim::Matrix lower_factor;
    if (!optim::cholesky(fit.cov_unconstrained, lower_factor)) {
        throw std::runtime_error("estimator covariance is not positive semi-definite");
    }

    const std::vector<double> center = to_unconstrained(fit.model);
    const std::size_t k = center.size();
    const std::vector<double> alpha_hat = alpha_path(fit.model, series);
    const std::size_t horizon = alpha_hat.size();

    // draws x time matrix of filtered paths under redrawn parameters
    std::vector<std::vector<double>> paths(n_draws);
    for_each_index(n_draws, exec, [&](std::size_t d) {
        Rng rng = make_stream(seed, d);
        std::normal_distribution<double> normal(0.0, 1.0);
        std::vector<double> z(k);
        for (double& zi : z) zi = normal(rng);
        std::vector<double> v(center);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j <= i && j < k; ++j) v[i] += lower_factor[i][j] * z[j];
        }
        const ModelSpec redrawn = from_unconstrained(fit.kind, v);
        paths[d] = alpha_path(redrawn, series);
    });

    AlphaBands bands;
    bands.alpha_hat = alpha_hat;
    bands.levels = levels;
    bands.n_draws = n_draws;
    bands.lower.assign(levels.size(), std::vector<double>(horizon));
    bands.upper.assign(levels.size(), std::vector<double>(horizon));

    std::vector<double> column(n_draws);
    for (std::size_t t = 0; t < horizon; ++t) {
        for (std::size_t d = 0; d < n_draws; ++d) column[d] = paths[d][t];
        std::sort(column.begin(), column.end());
        for (std::size_t l = 0; l < levels.size(); ++l) {
            const double tail = (1.0 - levels[l]) / 2.0;
            bands.lower[l][t] = quantile_sorted(column, tail);
            bands.upper[l][t] = quantile_sorted(column, 1.0 - tail);
        }
    }
    return bands;
}

namespace {

double pmf_log_at(const ForecastDistribution& forecast, const ModelSpec& model,
                  const ForecastOrigin& origin, std::uint64_t realized, std::size_t& floored) {
    if (forecast.n_draws == 0) {
        // Exact one-step pmf: evaluate outside the truncated support on demand.
        if (realized < forecast.pmf.size() && forecast.pmf[realized] > 0.0) {
            return std::log(forecast.pmf[realized]);
        }
        return predictive_log_pmf(realized, origin.y_last, origin.alpha_next, error_of(model));
    }
    const double p = forecast.pmf_at(realized);
    if (p > 0.0) return std::log(p);
    // Realized value unseen among the draws: floor at a tenth of one draw.
    ++floored;
    return std::log(0.1 / static_cast<double>(forecast.n_draws));
}

}  // namespace

std::vector<EvalReport> rolling_evaluate(const CountSeries& series, std::size_t split, int h_max,
                                         const std::vector<ModelKind>& kinds, std::uint64_t n_draws,
                                         std::uint64_t seed, const RollingOptions& options) {
    validate_series(series, 2);
    if (split < 30) throw std::invalid_argument("rolling evaluation needs a split of at least 30");
    if (h_max < 1) throw std::invalid_argument("rolling evaluation needs h_max >= 1");
    if (split + static_cast<std::size_t>(h_max) > series.size()) {
        throw std::invalid_argument("rolling evaluation: split + h_max exceeds the series length");
    }

    std::vector<EvalReport> reports(kinds.size());
    std::vector<std::vector<double>> warm_starts(kinds.size());
    for (std::size_t m = 0; m < kinds.size(); ++m) {
        reports[m].kind = kinds[m];
        reports[m].h_max = h_max;
        reports[m].mse.assign(h_max, 0.0);
        reports[m].log_score.assign(h_max, 0.0);
    }
    std::vector<std::vector<double>> mse_sums(kinds.size(), std::vector<double>(h_max, 0.0));
    std::vector<std::vector<double>> score_sums(kinds.size(), std::vector<double>(h_max, 0.0));
    std::vector<std::size_t> evaluated(kinds.size(), 0);

    const std::size_t last_origin = series.size() - static_cast<std::size_t>(h_max);
    std::uint64_t origin_counter = 0;
    for (std::size_t origin = split; origin <= last_origin; ++origin, ++origin_counter) {
        const CountSeries train(series.begin(), series.begin() + static_cast<std::ptrdiff_t>(origin));
        for (std::size_t m = 0; m < kinds.size(); ++m) {
            FitOptions fit_options;
            fit_options.restarts = options.restarts;
            fit_options.max_iter = options.max_iter;
            fit_options.tol = options.tol;
            fit_options.seed = mix64(seed ^ origin_counter);
            fit_options.exec = options.exec;
            fit_options.compute_std_errors = false;
            if (!warm_starts[m].empty()) fit_options.extra_starts.push_back(warm_starts[m]);

            FitResult fit_result;
            try {
                fit_result = fit(kinds[m], train, fit_options);
            } catch (const std::exception&) {
                ++reports[m].n_skipped;
                continue;
            }
            warm_starts[m] = to_unconstrained(fit_result.model);

            const ForecastOrigin fc_origin{static_cast<std::uint64_t>(train.back()),
                                           one_step_alpha(fit_result.model, train)};
            ++evaluated[m];
            for (int h = 1; h <= h_max; ++h) {
                const auto realized = static_cast<std::uint64_t>(series[origin + h - 1]);
                ForecastDistribution forecast;
                if (h == 1) {
                    forecast = forecast_exact_1(fc_origin.y_last, fc_origin.alpha_next,
                                                error_of(fit_result.model));
                } else {
                    const std::uint64_t fc_seed = mix64(seed + 17 * origin_counter + 1) +
                                                  static_cast<std::uint64_t>(h) +
                                                  (static_cast<std::uint64_t>(m) << 32);
                    forecast = forecast_mc(fit_result.model, fc_origin, h, n_draws, fc_seed,
                                           options.exec);
                }
                const double err = forecast.point_mean - static_cast<double>(realized);
                mse_sums[m][h - 1] += err * err;
                score_sums[m][h - 1] += pmf_log_at(forecast, fit_result.model, fc_origin, realized,
                                                   reports[m].n_floored);
            }
        }
    }

    for (std::size_t m = 0; m < kinds.size(); ++m) {
        reports[m].n_origins = evaluated[m];
        const double n = std::max<double>(1.0, static_cast<double>(evaluated[m]));
        for (int h = 0; h < h_max; ++h) {
            reports[m].mse[h] = mse_sums[m][h] / n;
            reports[m].log_score[h] = score_sums[m][h] / n;
        }
    }
    return reports;
}

}  // namespace gasinar
