#ifndef GASINAR_SIMULATION_HPP
#define GASINAR_SIMULATION_HPP

#include <cstdint>

#include "gasinar/models.hpp"
#include "gasinar/rng.hpp"

namespace gasinar {

// Deterministic survival-probability paths used as misspecified data
// generators; the error term is fixed to Poisson(5). The sine kinds move
// smoothly inside [0.25, 0.75]; the step kinds jump between 0.25 and 0.75.
enum class DgpKind { FastSine, SlowSine, FastSteps, SlowSteps };

std::string dgp_name(DgpKind kind);
DgpKind parse_dgp(const std::string& name);

// alpha_t of the named kind, t >= 1 (the sample starts at phase zero).
double dgp_alpha(DgpKind kind, std::int64_t t);

ErrorSpec dgp_error();

// Binomial thinning: number of survivors among n elements with per-element
// survival probability alpha in [0, 1].
std::uint64_t thin(std::uint64_t n, double alpha, Rng& rng);

struct SimulatedSeries {
    CountSeries series;
    // alpha used to generate series[i] from series[i-1]; entry 0 refers to
    // the step that produced the first retained observation.
    std::vector<double> true_alpha;
    std::uint64_t seed = 0;
};

inline constexpr std::size_t kSimulationBurnIn = 200;

// Draws y_0 from the error family with the unconditional mean, runs the
// recursion through a discarded burn-in, then retains `length` observations.
// Bitwise deterministic in (model, length, seed).
SimulatedSeries simulate(const ModelSpec& model, std::size_t length, std::uint64_t seed);
SimulatedSeries simulate(DgpKind kind, std::size_t length, std::uint64_t seed);

}  // namespace gasinar

#endif
