#include "gasinar/io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gasinar::io {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

bool parse_count(const std::string& cell, Count& out) {
    if (cell.empty()) return false;
    std::size_t pos = 0;
    long long value = 0;
    try {
        value = std::stoll(cell, &pos);
    } catch (const std::exception&) {
        return false;
    }
    if (pos != cell.size()) return false;  // trailing garbage, e.g. "2.5"
    out = value;
    return true;
}

// Infinite values cannot ride in a JSON number; the contraction sentinel
// -inf travels as a string.
json finite_or_string(double v) {
    if (std::isfinite(v)) return v;
    return v > 0 ? "inf" : "-inf";
}

json kind_to_json(ModelKind kind) { return kind_name(kind); }

}  // namespace

CountSeries read_counts_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path.string());

    CountSeries series;
    std::string line;
    std::size_t line_number = 0;
    bool first_data_line = true;
    // Without a header the count is the last column (a leading date column
    // is ignored); a header row may name the count column "y" or "count".
    std::ptrdiff_t column = -1;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;

        const std::vector<std::string> fields = split_csv_line(line);
        const std::string& cell =
            (column >= 0 && column < static_cast<std::ptrdiff_t>(fields.size()))
                ? fields[static_cast<std::size_t>(column)]
                : fields.back();

        Count value = 0;
        if (!parse_count(cell, value)) {
            if (first_data_line) {
                first_data_line = false;  // header row
                for (std::size_t i = 0; i < fields.size(); ++i) {
                    std::string name = fields[i];
                    for (char& c : name) c = static_cast<char>(std::tolower(
                                             static_cast<unsigned char>(c)));
                    if (name == "y" || name == "count" || name == "counts") {
                        column = static_cast<std::ptrdiff_t>(i);
                        break;
                    }
                }
                continue;
            }
            throw std::runtime_error(path.string() + ":" + std::to_string(line_number) +
                                     ": count cell '" + cell +
                                     "' is not a non-negative integer");
        }
        first_data_line = false;
        if (value < 0) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_number) +
                                     ": negative count " + cell);
        }
        series.push_back(value);
    }
    if (series.empty()) {
        throw std::runtime_error(path.string() + ": no count observations found");
    }
    return series;
}

void atomic_write_text(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open output file: " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("failed writing to: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

nlohmann::json model_to_json(const ModelSpec& model) {
    json j;
    j["model"] = kind_to_json(kind_of(model));
    const std::vector<std::string> names = param_names(kind_of(model));
    const std::vector<double> values = natural_params(model);
    for (std::size_t i = 0; i < names.size(); ++i) j[names[i]] = values[i];
    return j;
}

ModelSpec model_from_json(const nlohmann::json& j) {
    const ModelKind kind = parse_kind(j.at("model").get<std::string>());
    const double mu = j.at("mu").get<double>();
    ErrorSpec error = kind.family == ErrorFamily::Poisson
                          ? ErrorSpec::poisson(mu)
                          : ErrorSpec::negbin(mu, j.at("sigma2").get<double>());
    switch (kind.structure) {
        case ModelStructure::Gas:
            return GasInarModel{GasParams{j.at("omega").get<double>(), j.at("beta").get<double>(),
                                          j.at("tau").get<double>(), error}};
        case ModelStructure::Static:
            return StaticInarModel{j.at("alpha").get<double>(), error};
        case ModelStructure::Rc:
            return RcInarModel{j.at("omega").get<double>(), j.at("tau").get<double>(), error};
    }
    throw std::logic_error("unreachable model structure");
}

nlohmann::json fit_to_json(const FitResult& fit) {
    json j;
    j["model"] = model_to_json(fit.model);
    j["loglik_sum"] = fit.loglik_sum;
    j["loglik_avg"] = fit.loglik_avg;
    j["aic"] = fit.aic;
    j["n_params"] = fit.n_params;
    j["n_obs_conditional"] = fit.horizon;
    j["converged"] = fit.converged;
    j["trace"] = {{"iterations", fit.trace.iterations},
                  {"restarts", fit.trace.restarts},
                  {"best_objective", fit.trace.best_objective}};
    if (fit.se_available) {
        json se;
        for (std::size_t i = 0; i < fit.param_names.size(); ++i) {
            se[fit.param_names[i]] = fit.std_errors[i];
        }
        j["std_errors"] = se;
    } else {
        j["std_errors"] = nullptr;
    }
    return j;
}

nlohmann::json lr_to_json(const LrTestResult& lr) {
    return json{{"statistic", lr.statistic}, {"df", lr.df}, {"pvalue", lr.pvalue}};
}

nlohmann::json contraction_to_json(const ContractionReport& report) {
    json j;
    j["sufficient_value"] = finite_or_string(report.sufficient_value);
    j["empirical_value"] = finite_or_string(report.empirical_value);
    j["satisfied_sufficient"] = report.satisfied_sufficient;
    j["satisfied_empirical"] = report.satisfied_empirical;
    j["grid_size"] = report.grid_size;
    return j;
}

nlohmann::json forecast_to_json(const ForecastDistribution& forecast) {
    json j;
    j["horizon"] = forecast.horizon;
    j["point_mean"] = forecast.point_mean;
    j["point_median"] = forecast.point_median;
    j["n_draws"] = forecast.n_draws;
    j["seed"] = forecast.seed;
    j["pmf"] = forecast.pmf;
    return j;
}

nlohmann::json eval_to_json(const EvalReport& report) {
    json j;
    j["model"] = kind_to_json(report.kind);
    j["h_max"] = report.h_max;
    j["mse"] = report.mse;
    j["log_score"] = report.log_score;
    j["n_origins"] = report.n_origins;
    j["n_skipped"] = report.n_skipped;
    j["n_floored"] = report.n_floored;
    return j;
}

nlohmann::json recovery_report_to_json(const RecoveryStudyReport& report) {
    json rows = json::array();
    for (const ParamSummary& p : report.params) {
        rows.push_back({{"param", p.name},
                        {"true_value", p.true_value},
                        {"mean", p.mean},
                        {"bias", p.bias},
                        {"sd", p.sd},
                        {"rmse", p.rmse},
                        {"mc_se", p.mc_se}});
    }
    return json{{"study", "recovery"},
                {"replications", report.replications},
                {"length", report.length},
                {"n_failed", report.n_failed},
                {"n_not_converged", report.n_not_converged},
                {"params", rows}};
}

nlohmann::json misspec_report_to_json(const MisspecStudyReport& report) {
    json rows = json::array();
    for (const MisspecCell& c : report.cells) {
        json row;
        row["dgp"] = dgp_name(c.dgp);
        row["model"] = kind_name(ModelKind{c.model, ErrorFamily::Poisson});
        row["rmse_alpha"] = c.rmse_alpha;
        row["rmse_alpha_se"] = c.rmse_alpha_se;
        row["mean_kl"] = c.mean_kl;
        row["mean_kl_se"] = c.mean_kl_se;
        rows.push_back(row);
    }
    return json{{"study", "misspecification"},
                {"replications", report.replications},
                {"length", report.length},
                {"n_failed", report.n_failed},
                {"cells", rows}};
}

std::string simulated_series_csv(const SimulatedSeries& sim) {
    std::ostringstream out;
    out << "t,y,true_alpha\n";
    for (std::size_t i = 0; i < sim.series.size(); ++i) {
        out << i << ',' << sim.series[i] << ',';
        out.precision(17);
        out << sim.true_alpha[i] << '\n';
    }
    return out.str();
}

std::string filter_path_csv(const CountSeries& series, const FilterPath& path) {
    std::ostringstream out;
    out.precision(17);
    out << "t,y,alpha,score,loglik_contrib\n";
    for (std::size_t i = 0; i < path.length(); ++i) {
        out << (i + 1) << ',' << series[i + 1] << ',' << path.alpha[i] << ',' << path.score[i]
            << ',' << path.loglik_contrib[i] << '\n';
    }
    return out.str();
}

std::string forecast_pmf_csv(const ForecastDistribution& forecast) {
    std::ostringstream out;
    out.precision(17);
    out << "x,probability\n";
    for (std::size_t x = 0; x < forecast.pmf.size(); ++x) {
        out << x << ',' << forecast.pmf[x] << '\n';
    }
    return out.str();
}

std::string bands_csv(const AlphaBands& bands) {
    std::ostringstream out;
    out.precision(17);
    out << "t,alpha_hat";
    for (double level : bands.levels) {
        const int pct = static_cast<int>(std::lround(level * 100));
        out << ",lo" << pct << ",hi" << pct;
    }
    out << '\n';
    for (std::size_t t = 0; t < bands.alpha_hat.size(); ++t) {
        out << (t + 1) << ',' << bands.alpha_hat[t];
        for (std::size_t l = 0; l < bands.levels.size(); ++l) {
            out << ',' << bands.lower[l][t] << ',' << bands.upper[l][t];
        }
        out << '\n';
    }
    return out.str();
}

std::string eval_csv(const std::vector<EvalReport>& reports) {
    std::ostringstream out;
    out.precision(17);
    out << "model,horizon,mse,log_score\n";
    for (const EvalReport& report : reports) {
        for (int h = 1; h <= report.h_max; ++h) {
            out << kind_name(report.kind) << ',' << h << ',' << report.mse[h - 1] << ','
                << report.log_score[h - 1] << '\n';
        }
    }
    return out.str();
}

}  // namespace gasinar::io
