#ifndef GASINAR_DIAGNOSTICS_HPP
#define GASINAR_DIAGNOSTICS_HPP

#include <cstdint>

#include "gasinar/estimation.hpp"
#include "gasinar/forecasting.hpp"
#include "gasinar/simulation.hpp"

namespace gasinar {

// Empirical stability (invertibility) diagnostics for the filter recursion.
// sufficient_value averages log max(|beta - tau*y_{t-1}/4|, |beta + tau*m_t^2|)
// over the sample; empirical_value averages the log of the gridded supremum
// of |beta + tau * score_derivative| over logit-alpha in [-35, 35]. The
// derivative bounds make the sufficient value dominate the empirical one.
// A negative value indicates contraction; tau = beta = 0 collapses both to
// -infinity, reported as satisfied.
struct ContractionReport {
    double sufficient_value = 0.0;
    double empirical_value = 0.0;
    bool satisfied_sufficient = false;
    bool satisfied_empirical = false;
    int grid_size = 0;
};

ContractionReport contraction_check(const CountSeries& series, const GasParams& params,
                                    int grid_size = 1001);

// Kullback-Leibler divergence sum p_true * log(p_true / p_model) over a
// common truncated support; throws when the model pmf vanishes where the
// true pmf does not.
double kl_conditional(const std::vector<double>& p_true, const std::vector<double>& p_model);

// Conditional expectation of the score under the model's own predictive
// pmf over the truncated support; zero up to truncation error.
double score_mean_check(std::uint64_t y_prev, double alpha, const ErrorSpec& error);

// Path- and pmf-approximation quality of a fitted model against the
// generating process of a simulated series.
struct FilterQuality {
    double mse_alpha = 0.0;
    double mean_kl = 0.0;
};

FilterQuality filter_quality(DgpKind kind, const ModelSpec& fitted, const SimulatedSeries& sim);

// Pointwise quantile bands for the filtered survival probability, obtained
// by redrawing the parameter vector from a normal approximation of the
// estimator's distribution on the unconstrained scale and re-running the
// filter. The bands are approximate by construction.
struct AlphaBands {
    std::vector<double> alpha_hat;            // filtered path at the estimate
    std::vector<double> levels;               // e.g. 0.80, 0.95
    std::vector<std::vector<double>> lower;   // lower[level][t]
    std::vector<std::vector<double>> upper;
    std::size_t n_draws = 0;
};

AlphaBands alpha_confidence_bands(const CountSeries& series, const FitResult& fit,
                                  std::vector<double> levels, std::size_t n_draws,
                                  std::uint64_t seed, Exec exec = Exec::Parallel);

// Expanding-window forecast evaluation: every origin refits the model on
// the data up to the origin (the previous estimate joins the multistart
// pool), forecasts horizons 1..h_max, and accumulates squared point-forecast
// errors and the log predictive probability of the realized value.
struct EvalReport {
    ModelKind kind;
    int h_max = 0;
    std::vector<double> mse;        // per horizon 1..h_max
    std::vector<double> log_score;  // per horizon 1..h_max
    std::size_t n_origins = 0;      // origins evaluated
    std::size_t n_skipped = 0;      // origins dropped after a fit failure
    std::size_t n_floored = 0;      // realized values outside the MC support
};

struct RollingOptions {
    int restarts = 2;
    int max_iter = 2000;
    double tol = 1e-9;
    Exec exec = Exec::Parallel;
};

std::vector<EvalReport> rolling_evaluate(const CountSeries& series, std::size_t split, int h_max,
                                         const std::vector<ModelKind>& kinds, std::uint64_t n_draws,
                                         std::uint64_t seed, const RollingOptions& options = {});

}  // namespace gasinar

#endif
