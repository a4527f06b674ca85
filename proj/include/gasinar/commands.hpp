#ifndef GASINAR_COMMANDS_HPP
#define GASINAR_COMMANDS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace gasinar {

// Parsed command line for one invocation. Every command writes a JSON result
// document at `output` (plus CSV side tables next to it) and exits nonzero
// with a machine-readable error document on failure. The seed is recorded in
// every output; identical configs produce byte-identical documents.
struct RunConfig {
    std::string command;
    std::filesystem::path input;
    std::filesystem::path output = "result.json";
    std::uint64_t seed = 1;

    std::vector<std::string> models;
    std::string dgp;
    std::optional<double> omega, beta, tau, mu, sigma2, alpha;

    std::size_t length = 500;     // simulate: observations to generate
    int horizon = 6;              // forecast/evaluate: h or h_max
    std::uint64_t draws = 10000;  // Monte Carlo paths
    std::size_t split = 0;        // evaluate: training size; 0 = 60% of the sample
    int restarts = 5;
    int replications = 0;         // replicate: overrides the study default
    std::string study;            // replicate: table1 | table2
    bool full_scale = false;
    std::filesystem::path model_file;  // forecast: fitted-model document
    int threads = 0;                   // 0 = library default
};

int cmd_simulate(const RunConfig& config);
int cmd_fit(const RunConfig& config);
int cmd_forecast(const RunConfig& config);
int cmd_evaluate(const RunConfig& config);
int cmd_replicate(const RunConfig& config);

// Dispatch plus error-document handling; returns the process exit status.
int run_command(const RunConfig& config);

}  // namespace gasinar

#endif
