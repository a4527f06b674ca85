#ifndef GASINAR_ESTIMATION_HPP
#define GASINAR_ESTIMATION_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gasinar/models.hpp"
#include "gasinar/optim.hpp"
#include "gasinar/parallel.hpp"

namespace gasinar {

// Raised when a series carries no information about the survival dynamics
// (constant, in particular all zeros) and a dynamic model is requested.
class NoSurvivalInformation : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct FitOptions {
    int restarts = 5;       // multistart count, jittered moment-based initials
    int max_iter = 2000;
    double tol = 1e-9;
    std::uint64_t seed = 1;
    Exec exec = Exec::Parallel;
    bool compute_std_errors = true;
    // Extra unconstrained-space starting points appended to the multistart
    // pool (rolling evaluation feeds the previous origin's estimate here).
    std::vector<std::vector<double>> extra_starts;
};

struct OptimizerTrace {
    int iterations = 0;      // of the winning restart
    int restarts = 0;
    double best_objective = 0.0;  // average log-likelihood at the optimum
};

struct FitResult {
    ModelSpec model;
    ModelKind kind;
    std::size_t horizon = 0;  // T, the number of likelihood contributions
    double loglik_sum = 0.0;
    double loglik_avg = 0.0;
    double aic = 0.0;
    int n_params = 0;
    bool converged = false;
    OptimizerTrace trace;

    std::vector<std::string> param_names;
    std::vector<double> params;      // natural parametrization, same order
    bool se_available = false;
    std::vector<double> std_errors;  // natural parametrization; empty if unavailable
    // Covariance of the unconstrained parameter vector (inverse observed
    // information); empty when the Hessian is not positive definite.
    optim::Matrix cov_unconstrained;
};

// Bijection between each model family and an unconstrained vector:
// omega and tau map identically, beta through atanh, a static alpha through
// logit, the error mean through log, and the negative binomial variance as
// mean + exp(v) so overdispersion is structural.
std::vector<double> to_unconstrained(const ModelSpec& model);
ModelSpec from_unconstrained(ModelKind kind, const std::vector<double>& v);

std::vector<std::string> param_names(ModelKind kind);
std::vector<double> natural_params(const ModelSpec& model);

// Maximum likelihood through Nelder-Mead multistart on the unconstrained
// scale. Requires at least 10 observations. Non-convergence is reported in
// the result, never silently; degenerate series abort for dynamic models.
FitResult fit(ModelKind kind, const CountSeries& series, const FitOptions& options = {});

struct LrTestResult {
    double statistic = 0.0;
    int df = 0;
    double pvalue = 1.0;
};

// Likelihood-ratio test for the nested pairs (static within gas, df 2;
// static within rc, df 1); throws on a non-nested pair.
LrTestResult lr_test(const FitResult& restricted, const FitResult& full);

}  // namespace gasinar

#endif
