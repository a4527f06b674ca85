#ifndef GASINAR_REPLICATE_HPP
#define GASINAR_REPLICATE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gasinar/diagnostics.hpp"

namespace gasinar {

// Monte Carlo study harnesses. Replications are embarrassingly parallel:
// replication i draws everything from a stream derived from (seed, i) and
// writes into slot i, so Exec::Serial and Exec::Parallel agree bitwise.
// The serial path doubles as the reference implementation for tests and
// for the kernel benchmark.

struct ParamSummary {
    std::string name;
    double true_value = 0.0;
    double mean = 0.0;
    double bias = 0.0;
    double sd = 0.0;
    double rmse = 0.0;
    double mc_se = 0.0;  // Monte Carlo standard error of the mean
};

// Recovery study: simulate from the score-driven model, re-estimate by ML,
// summarize the estimator's sample distribution per parameter. The level of
// the generator is pinned by the stationary mean of logit(alpha): published
// tables for this model family report that mean under the name omega, and
// the raw recursion intercept is mean * (1 - beta). The omega row of the
// report follows the same convention (estimates mapped to the implied
// stationary mean).
struct RecoveryStudyConfig {
    double logit_alpha_mean = -0.5;
    double beta = 0.9;
    double tau = 0.15;
    ErrorSpec error = ErrorSpec::poisson(6.0);
    std::size_t length = 1000;
    int replications = 200;
    std::uint64_t seed = 1;
    int restarts = 5;
    Exec exec = Exec::Parallel;

    GasParams theta0() const {
        return GasParams{logit_alpha_mean * (1.0 - beta), beta, tau, error};
    }
};

struct RecoveryStudyReport {
    std::vector<ParamSummary> params;
    int replications = 0;
    std::size_t length = 0;
    int n_failed = 0;         // replications whose fit threw
    int n_not_converged = 0;  // kept in the summary, flagged here
};

RecoveryStudyReport run_recovery_study(const RecoveryStudyConfig& config);

// Misspecification study: simulate from the deterministic-alpha processes,
// fit the three Poisson-error models, measure path RMSE and mean KL.
struct MisspecStudyConfig {
    std::vector<DgpKind> kinds{DgpKind::FastSine, DgpKind::SlowSine, DgpKind::FastSteps,
                               DgpKind::SlowSteps};
    std::size_t length = 500;
    int replications = 100;
    std::uint64_t seed = 1;
    int restarts = 3;
    Exec exec = Exec::Parallel;
};

struct MisspecCell {
    DgpKind dgp;
    ModelStructure model;
    double rmse_alpha = 0.0;  // mean over replications of sqrt(mse)
    double rmse_alpha_se = 0.0;
    double mean_kl = 0.0;
    double mean_kl_se = 0.0;
};

struct MisspecStudyReport {
    std::vector<MisspecCell> cells;  // dgp-major, model order static/rc/gas
    int replications = 0;
    std::size_t length = 0;
    int n_failed = 0;

    const MisspecCell& cell(DgpKind dgp, ModelStructure model) const;
};

MisspecStudyReport run_misspec_study(const MisspecStudyConfig& config);

}  // namespace gasinar

#endif
