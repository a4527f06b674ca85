#include "gasinar/simulation.hpp"

#include <cmath>
#include <stdexcept>

#include "gasinar/score.hpp"
#include "gasinar/util.hpp"

namespace gasinar {

namespace {

constexpr double kPi = 3.14159265358979323846;

double mean_survival_probability(const ModelSpec& model) {
    if (const auto* gas = std::get_if<GasInarModel>(&model)) {
        return logistic(clamp_logit(default_init(gas->params)));
    }
    if (const auto* st = std::get_if<StaticInarModel>(&model)) return st->alpha;
    // rc: alpha and the stationary mean determine each other; a few fixed
    // point sweeps are plenty for a starting draw that burn-in discards.
    const auto& rc = std::get<RcInarModel>(model);
    double alpha = 0.5;
    for (int i = 0; i < 100; ++i) {
        const double mean = rc.error.mean / std::max(1.0 - alpha, 1e-3);
        alpha = logistic(clamp_logit(rc.omega + rc.tau * mean));
    }
    return std::min(alpha, 1.0 - 1e-3);
}

std::uint64_t draw_initial_count(const ErrorSpec& error, double mean_alpha, Rng& rng) {
    const double scaled_mean = error.mean / std::max(1.0 - mean_alpha, 1e-3);
    ErrorSpec start = error;
    start.mean = scaled_mean;
    // Keep the dispersion ratio when rescaling the mean.
    start.variance = error.is_poisson() ? scaled_mean : scaled_mean * (error.variance / error.mean);
    return sample(start, rng);
}

}  // namespace

std::string dgp_name(DgpKind kind) {
    switch (kind) {
        case DgpKind::FastSine: return "fast-sine";
        case DgpKind::SlowSine: return "slow-sine";
        case DgpKind::FastSteps: return "fast-steps";
        case DgpKind::SlowSteps: return "slow-steps";
    }
    return "?";
}

DgpKind parse_dgp(const std::string& name) {
    for (DgpKind kind : {DgpKind::FastSine, DgpKind::SlowSine, DgpKind::FastSteps,
                         DgpKind::SlowSteps}) {
        if (dgp_name(kind) == name) return kind;
    }
    throw std::invalid_argument("unknown data-generating process: " + name);
}

double dgp_alpha(DgpKind kind, std::int64_t t) {
    const double period = (kind == DgpKind::FastSine || kind == DgpKind::FastSteps) ? 100.0 : 250.0;
    const double s = std::sin(kPi * static_cast<double>(t) / period);
    switch (kind) {
        case DgpKind::FastSine:
        case DgpKind::SlowSine:
            return 0.5 + 0.25 * s;
        case DgpKind::FastSteps:
        case DgpKind::SlowSteps:
            return s > 0.0 ? 0.75 : 0.25;
    }
    return 0.5;
}

ErrorSpec dgp_error() { return ErrorSpec::poisson(5.0); }

std::uint64_t thin(std::uint64_t n, double alpha, Rng& rng) {
    if (!(alpha >= 0.0) || !(alpha <= 1.0)) {
        throw std::invalid_argument("thinning probability must lie in [0, 1]");
    }
    if (n == 0 || alpha == 0.0) return 0;
    if (alpha == 1.0) return n;
    std::binomial_distribution<std::uint64_t> binom(n, alpha);
    return binom(rng);
}

SimulatedSeries simulate(const ModelSpec& model, std::size_t length, std::uint64_t seed) {
    validate(model);
    if (length < 2) throw std::invalid_argument("simulation length must be at least 2");

    Rng rng = make_stream(seed);
    const ErrorSpec& error = error_of(model);
    const auto* gas = std::get_if<GasInarModel>(&model);
    const auto* st = std::get_if<StaticInarModel>(&model);
    const auto* rc = std::get_if<RcInarModel>(&model);

    SimulatedSeries out;
    out.seed = seed;
    out.series.reserve(length);
    out.true_alpha.reserve(length);

    std::uint64_t y = draw_initial_count(error, mean_survival_probability(model), rng);
    double lambda = gas ? clamp_logit(default_init(gas->params)) : 0.0;

    const std::size_t total = kSimulationBurnIn + length;
    for (std::size_t step = 1; step < total; ++step) {
        double alpha;
        if (gas) {
            alpha = logistic(lambda);
        } else if (st) {
            alpha = st->alpha;
        } else {
            alpha = logistic(clamp_logit(rc->omega + rc->tau * static_cast<double>(y)));
        }

        const std::uint64_t y_prev = y;
        y = thin(y_prev, alpha, rng) + sample(error, rng);

        if (gas) {
            const double s = score(y, y_prev, alpha, gas->params.error);
            lambda = clamp_logit(gas->params.omega + gas->params.beta * lambda +
                                 gas->params.tau * s);
        }

        if (step >= kSimulationBurnIn) {
            out.series.push_back(static_cast<Count>(y));
            out.true_alpha.push_back(alpha);
        }
    }
    return out;
}

SimulatedSeries simulate(DgpKind kind, std::size_t length, std::uint64_t seed) {
    if (length < 2) throw std::invalid_argument("simulation length must be at least 2");

    Rng rng = make_stream(seed);
    const ErrorSpec error = dgp_error();

    SimulatedSeries out;
    out.seed = seed;
    out.series.reserve(length);
    out.true_alpha.reserve(length);

    std::uint64_t y = draw_initial_count(error, 0.5, rng);
    const auto burn = static_cast<std::int64_t>(kSimulationBurnIn);
    for (std::int64_t step = 1; step < burn + static_cast<std::int64_t>(length); ++step) {
        // The time index fed to the alpha path counts retained time, so the
        // sample starts at phase zero.
        const double alpha = dgp_alpha(kind, step - burn);
        y = thin(y, alpha, rng) + sample(error, rng);
        if (step >= burn) {
            out.series.push_back(static_cast<Count>(y));
            out.true_alpha.push_back(alpha);
        }
    }
    return out;
}

}  // namespace gasinar
