#include "gasinar/commands.hpp"

#include <fstream>
#include <iostream>

#include "json.hpp"

#include "gasinar/io.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gasinar {

namespace {

using nlohmann::json;

std::filesystem::path side_table_path(const std::filesystem::path& output,
                                      const std::string& suffix) {
    std::filesystem::path p = output;
    p.replace_extension();
    return p.string() + "_" + suffix + ".csv";
}

json envelope(const RunConfig& config) {
    json j;
    j["command"] = config.command;
    j["version"] = io::kVersion;
    j["seed"] = config.seed;
    return j;
}

void write_document(const RunConfig& config, json j) {
    io::atomic_write_text(config.output, j.dump(2) + "\n");
}

ModelSpec model_from_flags(const RunConfig& config) {
    if (config.models.empty()) {
        throw std::invalid_argument("simulate needs --model (or --dgp)");
    }
    const ModelKind kind = parse_kind(config.models.front());
    const double mu = config.mu.value_or(5.0);
    const ErrorSpec error = kind.family == ErrorFamily::Poisson
                                ? ErrorSpec::poisson(mu)
                                : ErrorSpec::negbin(mu, config.sigma2.value_or(2.0 * mu + 1.0));
    switch (kind.structure) {
        case ModelStructure::Gas:
            return GasInarModel{GasParams{config.omega.value_or(-0.5), config.beta.value_or(0.9),
                                          config.tau.value_or(0.15), error}};
        case ModelStructure::Static:
            return StaticInarModel{config.alpha.value_or(0.5), error};
        case ModelStructure::Rc:
            return RcInarModel{config.omega.value_or(0.0), config.tau.value_or(0.05), error};
    }
    throw std::logic_error("unreachable model structure");
}

json config_common(const RunConfig& config) {
    json j;
    j["restarts"] = config.restarts;
    j["draws"] = config.draws;
    j["horizon"] = config.horizon;
    return j;
}

void apply_threads(const RunConfig& config) {
#ifdef _OPENMP
    if (config.threads > 0) omp_set_num_threads(config.threads);
#else
    (void)config;
#endif
}

}  // namespace

int cmd_simulate(const RunConfig& config) {
    SimulatedSeries sim;
    json model_doc;
    if (!config.dgp.empty()) {
        const DgpKind kind = parse_dgp(config.dgp);
        sim = simulate(kind, config.length, config.seed);
        model_doc = json{{"dgp", dgp_name(kind)}};
    } else {
        const ModelSpec model = model_from_flags(config);
        sim = simulate(model, config.length, config.seed);
        model_doc = io::model_to_json(model);
    }

    const std::filesystem::path series_path = side_table_path(config.output, "series");
    io::atomic_write_text(series_path, io::simulated_series_csv(sim));

    json j = envelope(config);
    j["config"] = {{"length", config.length}};
    j["generator"] = model_doc;
    j["n_obs"] = sim.series.size();
    j["mean"] = series_mean(sim.series);
    j["variance"] = series_variance(sim.series);
    j["series_csv"] = series_path.string();
    write_document(config, j);
    return 0;
}

int cmd_fit(const RunConfig& config) {
    const CountSeries series = io::read_counts_csv(config.input);
    if (config.models.empty()) throw std::invalid_argument("fit needs --model");
    const ModelKind kind = parse_kind(config.models.front());

    FitOptions options;
    options.restarts = config.restarts;
    options.seed = config.seed;
    const FitResult result = fit(kind, series, options);

    json j = envelope(config);
    j["config"] = config_common(config);
    j["config"]["input"] = config.input.string();
    j["fit"] = io::fit_to_json(result);

    if (kind.structure == ModelStructure::Gas) {
        const FitResult restricted = fit(ModelKind{ModelStructure::Static, kind.family}, series,
                                         options);
        j["static_counterpart"] = io::fit_to_json(restricted);
        j["lr_vs_static"] = io::lr_to_json(lr_test(restricted, result));
        const auto& params = std::get<GasInarModel>(result.model).params;
        j["contraction"] = io::contraction_to_json(contraction_check(series, params));
    }

    const FilterPath path = model_filter_path(result.model, series);
    const std::filesystem::path filter_path_file = side_table_path(config.output, "filter");
    io::atomic_write_text(filter_path_file, io::filter_path_csv(series, path));
    j["filter_csv"] = filter_path_file.string();
    j["saturation_count"] = path.saturation_count;

    if (result.se_available && kind.structure == ModelStructure::Gas) {
        const AlphaBands bands =
            alpha_confidence_bands(series, result, {0.80, 0.95}, 500, config.seed);
        const std::filesystem::path bands_file = side_table_path(config.output, "bands");
        io::atomic_write_text(bands_file, io::bands_csv(bands));
        j["bands_csv"] = bands_file.string();
    }

    write_document(config, j);
    return 0;
}

int cmd_forecast(const RunConfig& config) {
    const CountSeries series = io::read_counts_csv(config.input);

    ModelSpec model;
    json fitted_doc;
    if (!config.model_file.empty()) {
        std::ifstream in(config.model_file);
        if (!in) throw std::runtime_error("cannot open model file: " + config.model_file.string());
        json doc = json::parse(in);
        // Accept either a bare model document or a fit result holding one.
        if (doc.contains("fit")) doc = doc["fit"];
        if (doc.contains("model") && doc["model"].is_object()) doc = doc["model"];
        model = io::model_from_json(doc);
        fitted_doc = io::model_to_json(model);
    } else {
        if (config.models.empty()) {
            throw std::invalid_argument("forecast needs --model-file or --model");
        }
        FitOptions options;
        options.restarts = config.restarts;
        options.seed = config.seed;
        const FitResult result = fit(parse_kind(config.models.front()), series, options);
        model = result.model;
        fitted_doc = io::fit_to_json(result);
    }

    const ForecastOrigin origin{static_cast<std::uint64_t>(series.back()),
                                one_step_alpha(model, series)};

    json forecasts = json::array();
    json j = envelope(config);
    for (int h = 1; h <= config.horizon; ++h) {
        ForecastDistribution forecast;
        if (h == 1) {
            forecast = forecast_exact_1(origin.y_last, origin.alpha_next, error_of(model));
        } else {
            forecast = forecast_mc(model, origin, h, config.draws, config.seed + h);
        }
        const std::filesystem::path pmf_path =
            side_table_path(config.output, "pmf_h" + std::to_string(h));
        io::atomic_write_text(pmf_path, io::forecast_pmf_csv(forecast));
        json entry = io::forecast_to_json(forecast);
        entry["pmf_csv"] = pmf_path.string();
        forecasts.push_back(entry);
    }

    j["config"] = config_common(config);
    j["config"]["input"] = config.input.string();
    j["model"] = fitted_doc;
    j["alpha_next"] = origin.alpha_next;
    j["forecasts"] = forecasts;
    write_document(config, j);
    return 0;
}

int cmd_evaluate(const RunConfig& config) {
    const CountSeries series = io::read_counts_csv(config.input);
    std::vector<ModelKind> kinds;
    if (config.models.empty()) {
        kinds = {ModelKind{ModelStructure::Gas, ErrorFamily::Poisson},
                 ModelKind{ModelStructure::Static, ErrorFamily::Poisson}};
    } else {
        for (const std::string& name : config.models) kinds.push_back(parse_kind(name));
    }
    const std::size_t split =
        config.split > 0 ? config.split : static_cast<std::size_t>(0.6 * series.size());

    RollingOptions options;
    options.restarts = std::max(1, config.restarts);
    const std::vector<EvalReport> reports =
        rolling_evaluate(series, split, config.horizon, kinds, config.draws, config.seed, options);

    const std::filesystem::path table_path = side_table_path(config.output, "eval");
    io::atomic_write_text(table_path, io::eval_csv(reports));

    json rows = json::array();
    for (const EvalReport& report : reports) rows.push_back(io::eval_to_json(report));

    json j = envelope(config);
    j["config"] = config_common(config);
    j["config"]["input"] = config.input.string();
    j["config"]["split"] = split;
    j["reports"] = rows;
    j["eval_csv"] = table_path.string();
    write_document(config, j);
    return 0;
}

int cmd_replicate(const RunConfig& config) {
    json j = envelope(config);
    if (config.study == "table1") {
        RecoveryStudyConfig study;
        study.seed = config.seed;
        study.replications = config.replications > 0 ? config.replications : 200;
        if (config.full_scale) {
            study.replications = 1000;
            std::cerr << "note: full-scale run (1000 replications); expect a long runtime\n";
        }
        if (study.replications < 20) {
            throw std::invalid_argument("replicate needs at least 20 replications");
        }
        study.length = config.length > 2 ? config.length : 1000;
        study.restarts = config.restarts;
        const RecoveryStudyReport report = run_recovery_study(study);
        j["report"] = io::recovery_report_to_json(report);
    } else if (config.study == "table2") {
        MisspecStudyConfig study;
        study.seed = config.seed;
        study.replications = config.replications > 0 ? config.replications : 100;
        if (config.full_scale) {
            study.replications = 1000;
            std::cerr << "note: full-scale run (1000 replications); expect a long runtime\n";
        }
        if (study.replications < 20) {
            throw std::invalid_argument("replicate needs at least 20 replications");
        }
        study.length = config.length > 2 ? config.length : 500;
        study.restarts = std::min(config.restarts, 3);
        const MisspecStudyReport report = run_misspec_study(study);
        j["report"] = io::misspec_report_to_json(report);
    } else {
        throw std::invalid_argument("unknown study '" + config.study +
                                    "' (expected table1 or table2)");
    }
    write_document(config, j);
    return 0;
}

int run_command(const RunConfig& config) {
    apply_threads(config);
    try {
        if (config.command == "simulate") return cmd_simulate(config);
        if (config.command == "fit") return cmd_fit(config);
        if (config.command == "forecast") return cmd_forecast(config);
        if (config.command == "evaluate") return cmd_evaluate(config);
        if (config.command == "replicate") return cmd_replicate(config);
        throw std::invalid_argument("unknown command: " + config.command);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        try {
            json err;
            err["command"] = config.command;
            err["version"] = io::kVersion;
            err["error"] = e.what();
            io::atomic_write_text(config.output, err.dump(2) + "\n");
        } catch (const std::exception&) {
            // nothing more we can do; stderr already has the cause
        }
        return 1;
    }
}

}  // namespace gasinar
