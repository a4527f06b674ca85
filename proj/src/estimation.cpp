#include "gasinar/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gasinar/rng.hpp"
#include "gasinar/util.hpp"

namespace gasinar {

namespace {

void append_error_unconstrained(const ErrorSpec& error, std::vector<double>& v) {
    v.push_back(std::log(error.mean));
    if (!error.is_poisson()) v.push_back(std::log(error.variance - error.mean));
}

ErrorSpec error_from_unconstrained(ErrorFamily family, const std::vector<double>& v,
                                   std::size_t offset) {
    const double mean = std::exp(v[offset]);
    if (family == ErrorFamily::Poisson) return ErrorSpec{family, mean, mean};
    const double variance = mean + std::exp(v[offset + 1]);
    return ErrorSpec{family, mean, variance};
}

void check_arity(ModelKind kind, const std::vector<double>& v) {
    if (static_cast<int>(v.size()) != n_params(kind)) {
        throw std::invalid_argument("parameter vector has arity " + std::to_string(v.size()) +
                                    ", expected " + std::to_string(n_params(kind)) + " for " +
                                    kind_name(kind));
    }
}

struct MomentStart {
    double alpha;       // clamped lag-1 autocorrelation
    double mu;          // mean * (1 - alpha)
    double log_excess;  // log(variance - mu), floored away from zero
};

MomentStart moment_start(const CountSeries& series) {
    MomentStart s;
    s.alpha = std::clamp(lag1_autocorrelation(series), 0.05, 0.95);
    s.mu = std::max(series_mean(series) * (1.0 - s.alpha), 0.05);
    const double excess = std::max(series_variance(series) - s.mu, 0.25 * s.mu + 0.1);
    s.log_excess = std::log(excess);
    return s;
}

std::vector<double> initial_point(ModelKind kind, const MomentStart& s) {
    std::vector<double> v;
    switch (kind.structure) {
        case ModelStructure::Gas: {
            const double beta0 = 0.9;
            v = {logit(s.alpha) * (1.0 - beta0), std::atanh(beta0), 0.05};
            break;
        }
        case ModelStructure::Static:
            v = {logit(s.alpha)};
            break;
        case ModelStructure::Rc:
            v = {logit(s.alpha), 0.0};
            break;
    }
    v.push_back(std::log(s.mu));
    if (kind.family == ErrorFamily::NegBinomial) v.push_back(s.log_excess);
    return v;
}

}  // namespace

std::vector<double> to_unconstrained(const ModelSpec& model) {
    validate(model);
    std::vector<double> v;
    if (const auto* gas = std::get_if<GasInarModel>(&model)) {
        v = {gas->params.omega, std::atanh(gas->params.beta), gas->params.tau};
        append_error_unconstrained(gas->params.error, v);
    } else if (const auto* st = std::get_if<StaticInarModel>(&model)) {
        v = {logit(st->alpha)};
        append_error_unconstrained(st->error, v);
    } else {
        const auto& rc = std::get<RcInarModel>(model);
        v = {rc.omega, rc.tau};
        append_error_unconstrained(rc.error, v);
    }
    return v;
}

ModelSpec from_unconstrained(ModelKind kind, const std::vector<double>& v) {
    check_arity(kind, v);
    switch (kind.structure) {
        case ModelStructure::Gas: {
            GasParams params;
            params.omega = v[0];
            params.beta = std::tanh(v[1]);
            params.tau = v[2];
            params.error = error_from_unconstrained(kind.family, v, 3);
            return GasInarModel{params};
        }
        case ModelStructure::Static: {
            StaticInarModel model;
            model.alpha = logistic(v[0]);
            model.error = error_from_unconstrained(kind.family, v, 1);
            return model;
        }
        case ModelStructure::Rc: {
            RcInarModel model;
            model.omega = v[0];
            model.tau = v[1];
            model.error = error_from_unconstrained(kind.family, v, 2);
            return model;
        }
    }
    throw std::logic_error("unreachable model structure");
}

std::vector<std::string> param_names(ModelKind kind) {
    std::vector<std::string> names;
    switch (kind.structure) {
        case ModelStructure::Gas: names = {"omega", "beta", "tau"}; break;
        case ModelStructure::Static: names = {"alpha"}; break;
        case ModelStructure::Rc: names = {"omega", "tau"}; break;
    }
    names.push_back("mu");
    if (kind.family == ErrorFamily::NegBinomial) names.push_back("sigma2");
    return names;
}

std::vector<double> natural_params(const ModelSpec& model) {
    std::vector<double> v;
    if (const auto* gas = std::get_if<GasInarModel>(&model)) {
        v = {gas->params.omega, gas->params.beta, gas->params.tau};
    } else if (const auto* st = std::get_if<StaticInarModel>(&model)) {
        v = {st->alpha};
    } else {
        const auto& rc = std::get<RcInarModel>(model);
        v = {rc.omega, rc.tau};
    }
    const ErrorSpec& error = error_of(model);
    v.push_back(error.mean);
    if (!error.is_poisson()) v.push_back(error.variance);
    return v;
}

namespace {

// Jacobian of the natural parameters with respect to the unconstrained
// vector, for the delta method. Coordinate-wise except that the negative
// binomial variance depends on both the mean and the excess coordinate.
optim::Matrix natural_jacobian(ModelKind kind, const std::vector<double>& v) {
    const std::size_t k = v.size();
    optim::Matrix jac(k, std::vector<double>(k, 0.0));
    std::size_t error_offset = 0;
    switch (kind.structure) {
        case ModelStructure::Gas: {
            jac[0][0] = 1.0;
            const double t = std::tanh(v[1]);
            jac[1][1] = 1.0 - t * t;
            jac[2][2] = 1.0;
            error_offset = 3;
            break;
        }
        case ModelStructure::Static: {
            const double a = logistic(v[0]);
            jac[0][0] = a * (1.0 - a);
            error_offset = 1;
            break;
        }
        case ModelStructure::Rc: {
            jac[0][0] = 1.0;
            jac[1][1] = 1.0;
            error_offset = 2;
            break;
        }
    }
    const double mu = std::exp(v[error_offset]);
    jac[error_offset][error_offset] = mu;
    if (kind.family == ErrorFamily::NegBinomial) {
        const double excess = std::exp(v[error_offset + 1]);
        jac[error_offset + 1][error_offset] = mu;  // sigma2 = mu + excess
        jac[error_offset + 1][error_offset + 1] = excess;
    }
    return jac;
}

void attach_std_errors(FitResult& result, const CountSeries& series) {
    const std::vector<double> vhat = to_unconstrained(result.model);
    const double horizon = static_cast<double>(result.horizon);
    const auto summed_loglik = [&](const std::vector<double>& v) -> double {
        try {
            const ModelSpec candidate = from_unconstrained(result.kind, v);
            const double avg = log_likelihood(candidate, series).avg;
            return std::isfinite(avg) ? avg * horizon : -1e300;
        } catch (const std::exception&) {
            return -1e300;
        }
    };

    const optim::Matrix hess = optim::numerical_hessian(summed_loglik, vhat);
    optim::Matrix info(hess.size(), std::vector<double>(hess.size(), 0.0));
    for (std::size_t i = 0; i < hess.size(); ++i) {
        for (std::size_t j = 0; j < hess.size(); ++j) info[i][j] = -hess[i][j];
    }

    bool ok = false;
    optim::Matrix cov = optim::invert_spd(info, ok);
    if (!ok) {
        result.se_available = false;
        return;
    }
    result.cov_unconstrained = cov;

    const optim::Matrix jac = natural_jacobian(result.kind, vhat);
    const optim::Matrix cov_nat = optim::matmul(optim::matmul(jac, cov), optim::transpose(jac));
    result.std_errors.resize(cov_nat.size());
    for (std::size_t i = 0; i < cov_nat.size(); ++i) {
        if (cov_nat[i][i] < 0.0) {
            result.se_available = false;
            result.std_errors.clear();
            result.cov_unconstrained.clear();
            return;
        }
        result.std_errors[i] = std::sqrt(cov_nat[i][i]);
    }
    result.se_available = true;
}

}  // namespace

FitResult fit(ModelKind kind, const CountSeries& series, const FitOptions& options) {
    validate_series(series, 10);
    if (options.restarts < 1 || options.max_iter < 1 || !(options.tol > 0.0)) {
        throw std::invalid_argument("fit options must be positive");
    }
    if (kind.structure != ModelStructure::Static && is_constant_series(series)) {
        throw NoSurvivalInformation(
            "no survival information: series is constant, the dynamic survival "
            "probability of a " +
            kind_name(kind) + " model is not identified");
    }

    const auto objective = [&](const std::vector<double>& v) -> double {
        try {
            const ModelSpec candidate = from_unconstrained(kind, v);
            const double avg = log_likelihood(candidate, series).avg;
            return std::isfinite(avg) ? avg : -1e300;
        } catch (const std::exception&) {
            return -1e300;
        }
    };

    // Start pool: the raw moment start, jittered copies, then caller-supplied
    // warm starts. Start j depends only on (seed, j) so enlarging the pool
    // never changes earlier starts and the best objective is monotone in the
    // number of restarts.
    const MomentStart moments = moment_start(series);
    const std::vector<double> base = initial_point(kind, moments);
    std::vector<std::vector<double>> starts;
    for (int j = 0; j < options.restarts; ++j) {
        std::vector<double> start = base;
        if (j > 0) {
            Rng rng = make_stream(options.seed, static_cast<std::uint64_t>(j));
            std::normal_distribution<double> jitter(0.0, 0.3);
            for (double& coord : start) coord += jitter(rng);
        }
        starts.push_back(std::move(start));
    }
    for (const auto& extra : options.extra_starts) {
        if (static_cast<int>(extra.size()) == n_params(kind)) starts.push_back(extra);
    }

    optim::SimplexOptions simplex_options;
    simplex_options.max_iter = options.max_iter;
    simplex_options.tol = options.tol;

    std::vector<optim::SimplexResult> runs(starts.size());
    for_each_index(starts.size(), options.exec,
                   [&](std::size_t j) { runs[j] = optim::maximize(objective, starts[j], simplex_options); });

    std::size_t best = 0;
    for (std::size_t j = 1; j < runs.size(); ++j) {
        if (runs[j].fx > runs[best].fx) best = j;
    }
    const optim::SimplexResult& winner = runs[best];
    if (!std::isfinite(winner.fx) || winner.fx <= -1e299) {
        throw std::runtime_error("fit failed: no admissible parameter point found for " +
                                 kind_name(kind));
    }

    FitResult result;
    result.kind = kind;
    result.model = from_unconstrained(kind, winner.x);
    result.n_params = n_params(kind);
    result.param_names = param_names(kind);
    result.params = natural_params(result.model);
    result.converged = winner.converged;
    result.trace = {winner.iterations, static_cast<int>(starts.size()), winner.fx};

    const Likelihood lik = log_likelihood(result.model, series);
    result.horizon = lik.horizon;
    result.loglik_sum = lik.sum;
    result.loglik_avg = lik.avg;
    result.aic = 2.0 * result.n_params - 2.0 * result.loglik_sum;

    if (options.compute_std_errors) attach_std_errors(result, series);
    return result;
}

LrTestResult lr_test(const FitResult& restricted, const FitResult& full) {
    if (restricted.kind.family != full.kind.family) {
        throw std::invalid_argument("likelihood-ratio test requires a common error family");
    }
    int df = 0;
    if (restricted.kind.structure == ModelStructure::Static &&
        full.kind.structure == ModelStructure::Gas) {
        df = 2;  // beta and tau
    } else if (restricted.kind.structure == ModelStructure::Static &&
               full.kind.structure == ModelStructure::Rc) {
        df = 1;  // tau
    } else {
        throw std::invalid_argument("models " + kind_name(restricted.kind) + " and " +
                                    kind_name(full.kind) + " are not nested");
    }
    LrTestResult out;
    out.df = df;
    out.statistic = std::max(0.0, 2.0 * (full.loglik_sum - restricted.loglik_sum));
    out.pvalue = optim::chi2_survival(out.statistic, df);
    return out;
}

}  // namespace gasinar
