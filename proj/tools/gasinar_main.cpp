// Command-line front end for the score-driven INAR toolkit.

#include <optional>
#include <string>

#include "CLI11.hpp"

#include "gasinar/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"gasinar: integer-valued autoregression with a score-driven survival probability"};
    app.require_subcommand(1);

    gasinar::RunConfig config;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--output", config.output, "result document (JSON)")
            ->capture_default_str();
        cmd->add_option("--seed", config.seed, "random seed recorded in every output")
            ->capture_default_str();
        cmd->add_option("--threads", config.threads, "worker threads (0 = all available)");
    };

    auto* sim = app.add_subcommand("simulate", "generate a count series");
    add_common(sim);
    sim->add_option("--model", config.models, "model kind, e.g. gas-poisson");
    sim->add_option("--dgp", config.dgp,
                    "deterministic-alpha generator: fast-sine, slow-sine, fast-steps, slow-steps");
    sim->add_option("-T,--length", config.length, "observations to generate")
        ->capture_default_str();
    sim->add_option("--omega", config.omega, "recursion level");
    sim->add_option("--beta", config.beta, "recursion persistence");
    sim->add_option("--tau", config.tau, "score loading");
    sim->add_option("--alpha", config.alpha, "static survival probability");
    sim->add_option("--mu", config.mu, "error mean");
    sim->add_option("--sigma2", config.sigma2, "error variance (negbin)");

    auto* fit_cmd = app.add_subcommand("fit", "maximum-likelihood fit");
    add_common(fit_cmd);
    fit_cmd->add_option("--input", config.input, "count series CSV")->required();
    fit_cmd->add_option("--model", config.models, "model kind")->required();
    fit_cmd->add_option("--restarts", config.restarts, "multistart count")->capture_default_str();

    auto* fc = app.add_subcommand("forecast", "pmf and point forecasts");
    add_common(fc);
    fc->add_option("--input", config.input, "count series CSV")->required();
    fc->add_option("--model", config.models, "model kind (fit before forecasting)");
    fc->add_option("--model-file", config.model_file, "fitted-model JSON document");
    fc->add_option("--horizon", config.horizon, "maximum horizon")->capture_default_str();
    fc->add_option("--draws", config.draws, "Monte Carlo paths for h >= 2")->capture_default_str();
    fc->add_option("--restarts", config.restarts, "multistart count")->capture_default_str();

    auto* ev = app.add_subcommand("evaluate", "expanding-window forecast evaluation");
    add_common(ev);
    ev->add_option("--input", config.input, "count series CSV")->required();
    ev->add_option("--model", config.models, "model kinds to compare (repeatable)");
    ev->add_option("--split", config.split, "training size at the first origin (default 60%)");
    ev->add_option("--horizon", config.horizon, "maximum horizon")->capture_default_str();
    ev->add_option("--draws", config.draws, "Monte Carlo paths for h >= 2")->capture_default_str();
    ev->add_option("--restarts", config.restarts, "multistart count per refit");

    auto* rep = app.add_subcommand("replicate", "run a Monte Carlo study");
    add_common(rep);
    rep->add_option("--study", config.study,
                    "table1 (estimator recovery) or table2 (misspecified filtering)")
        ->required();
    rep->add_option("--scale,--replications", config.replications,
                    "replication count (default 200 for table1, 100 for table2)");
    rep->add_option("-T,--length", config.length, "series length per replication");
    rep->add_option("--restarts", config.restarts, "multistart count per fit")
        ->capture_default_str();
    rep->add_flag("--full-scale", config.full_scale, "run the full 1000 replications");

    CLI11_PARSE(app, argc, argv);

    CLI::App* chosen = app.get_subcommands().front();
    config.command = chosen->get_name();
    if (config.command == "evaluate") config.restarts = std::min(config.restarts, 3);
    if (config.command == "replicate" && chosen->count("-T") == 0 &&
        chosen->count("--length") == 0) {
        config.length = 0;  // the study picks its own default
    }
    return gasinar::run_command(config);
}
