#include "gasinar/replicate.hpp"

#include <cmath>
#include <stdexcept>

#include "gasinar/parallel.hpp"

namespace gasinar {

namespace {

struct SampleStats {
    double mean = 0.0;
    double sd = 0.0;
    double mc_se = 0.0;
};

SampleStats summarize(const std::vector<double>& values) {
    SampleStats stats;
    if (values.empty()) return stats;
    double sum = 0.0;
    for (double v : values) sum += v;
    stats.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - stats.mean) * (v - stats.mean);
        stats.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
        stats.mc_se = stats.sd / std::sqrt(static_cast<double>(values.size()));
    }
    return stats;
}

}  // namespace

RecoveryStudyReport run_recovery_study(const RecoveryStudyConfig& config) {
    const GasParams theta0 = config.theta0();
    validate(theta0);
    if (config.replications < 2) throw std::invalid_argument("recovery study needs >= 2 replications");

    const ModelKind kind{ModelStructure::Gas, theta0.error.family};
    const ModelSpec truth = GasInarModel{theta0};
    std::vector<double> true_values = natural_params(truth);
    true_values[0] = config.logit_alpha_mean;  // omega row: stationary-mean convention
    const std::vector<std::string> names = param_names(kind);
    const std::size_t k = names.size();

    const auto n = static_cast<std::size_t>(config.replications);
    std::vector<std::vector<double>> estimates(n);
    std::vector<char> failed(n, 0);
    std::vector<char> not_converged(n, 0);

    for_each_index(n, config.exec, [&](std::size_t i) {
        const std::uint64_t rep_seed = mix64(config.seed) + i;
        const SimulatedSeries sim = simulate(truth, config.length, rep_seed);
        FitOptions options;
        options.restarts = config.restarts;
        options.seed = mix64(rep_seed ^ 0xf17ULL);
        options.exec = Exec::Serial;  // parallelism lives at the replication level
        options.compute_std_errors = false;
        try {
            const FitResult result = fit(kind, sim.series, options);
            estimates[i] = result.params;
            // params are (omega, beta, tau, mu, ...); report the implied
            // stationary mean of logit(alpha) in the omega slot.
            estimates[i][0] = result.params[0] / (1.0 - result.params[1]);
            not_converged[i] = result.converged ? 0 : 1;
        } catch (const std::exception&) {
            failed[i] = 1;
        }
    });

    RecoveryStudyReport report;
    report.replications = config.replications;
    report.length = config.length;
    for (std::size_t i = 0; i < n; ++i) {
        report.n_failed += failed[i];
        report.n_not_converged += not_converged[i];
    }

    for (std::size_t p = 0; p < k; ++p) {
        std::vector<double> values;
        values.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (!failed[i]) values.push_back(estimates[i][p]);
        }
        const SampleStats stats = summarize(values);
        ParamSummary summary;
        summary.name = names[p];
        summary.true_value = true_values[p];
        summary.mean = stats.mean;
        summary.bias = stats.mean - true_values[p];
        summary.sd = stats.sd;
        summary.mc_se = stats.mc_se;
        double mse = 0.0;
        for (double v : values) mse += (v - true_values[p]) * (v - true_values[p]);
        summary.rmse = values.empty() ? 0.0 : std::sqrt(mse / static_cast<double>(values.size()));
        report.params.push_back(summary);
    }
    return report;
}

const MisspecCell& MisspecStudyReport::cell(DgpKind dgp, ModelStructure model) const {
    for (const MisspecCell& c : cells) {
        if (c.dgp == dgp && c.model == model) return c;
    }
    throw std::out_of_range("no such cell in the misspecification report");
}

MisspecStudyReport run_misspec_study(const MisspecStudyConfig& config) {
    if (config.replications < 2) throw std::invalid_argument("misspec study needs >= 2 replications");

    const std::vector<ModelStructure> structures{ModelStructure::Static, ModelStructure::Rc,
                                                 ModelStructure::Gas};
    const auto n_reps = static_cast<std::size_t>(config.replications);
    const std::size_t n_jobs = config.kinds.size() * n_reps;

    struct RepOutcome {
        bool ok = false;
        double rmse[3] = {0.0, 0.0, 0.0};
        double kl[3] = {0.0, 0.0, 0.0};
    };
    std::vector<RepOutcome> outcomes(n_jobs);

    for_each_index(n_jobs, config.exec, [&](std::size_t job) {
        const std::size_t d = job / n_reps;
        const std::size_t rep = job % n_reps;
        const DgpKind dgp = config.kinds[d];
        const std::uint64_t rep_seed = mix64(config.seed + 101 * d) + rep;
        const SimulatedSeries sim = simulate(dgp, config.length, rep_seed);

        RepOutcome& outcome = outcomes[job];
        outcome.ok = true;
        for (std::size_t s = 0; s < structures.size(); ++s) {
            FitOptions options;
            options.restarts = config.restarts;
            options.seed = mix64(rep_seed ^ (0xabc0ULL + s));
            options.exec = Exec::Serial;
            options.compute_std_errors = false;
            try {
                const ModelKind kind{structures[s], ErrorFamily::Poisson};
                const FitResult result = fit(kind, sim.series, options);
                const FilterQuality quality = filter_quality(dgp, result.model, sim);
                outcome.rmse[s] = std::sqrt(quality.mse_alpha);
                outcome.kl[s] = quality.mean_kl;
            } catch (const std::exception&) {
                outcome.ok = false;
            }
        }
    });

    MisspecStudyReport report;
    report.replications = config.replications;
    report.length = config.length;

    for (std::size_t d = 0; d < config.kinds.size(); ++d) {
        for (std::size_t s = 0; s < structures.size(); ++s) {
            std::vector<double> rmse_values, kl_values;
            for (std::size_t rep = 0; rep < n_reps; ++rep) {
                const RepOutcome& outcome = outcomes[d * n_reps + rep];
                if (!outcome.ok) continue;
                rmse_values.push_back(outcome.rmse[s]);
                kl_values.push_back(outcome.kl[s]);
            }
            const SampleStats rmse_stats = summarize(rmse_values);
            const SampleStats kl_stats = summarize(kl_values);
            MisspecCell cell;
            cell.dgp = config.kinds[d];
            cell.model = structures[s];
            cell.rmse_alpha = rmse_stats.mean;
            cell.rmse_alpha_se = rmse_stats.mc_se;
            cell.mean_kl = kl_stats.mean;
            cell.mean_kl_se = kl_stats.mc_se;
            report.cells.push_back(cell);
        }
    }
    for (const RepOutcome& outcome : outcomes) {
        if (!outcome.ok) ++report.n_failed;
    }
    return report;
}

}  // namespace gasinar
