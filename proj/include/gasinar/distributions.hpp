#ifndef GASINAR_DISTRIBUTIONS_HPP
#define GASINAR_DISTRIBUTIONS_HPP

#include <cstdint>
#include <string>

#include "gasinar/rng.hpp"

namespace gasinar {

enum class ErrorFamily { Poisson, NegBinomial };

// Innovation distribution of the count recursion. Both variants have full
// support on the non-negative integers. The negative binomial is carried in
// (mean, variance) form at the API boundary and reparametrized to
// (size, success probability) internally; the size may be non-integer.
struct ErrorSpec {
    ErrorFamily family = ErrorFamily::Poisson;
    double mean = 1.0;
    double variance = 1.0;  // ignored for Poisson

    static ErrorSpec poisson(double mean);
    static ErrorSpec negbin(double mean, double variance);

    bool is_poisson() const { return family == ErrorFamily::Poisson; }
    int n_params() const { return is_poisson() ? 1 : 2; }
};

// Throws std::invalid_argument when the parameters leave the domain
// (mean <= 0, or variance <= mean for the negative binomial).
void validate(const ErrorSpec& spec);

// (mean, variance) -> (size r, success probability p) with
// r = mean^2 / (variance - mean), p = mean / variance. Requires
// variance > mean > 0.
struct NegBinShape {
    double size;
    double prob;
};
NegBinShape negbin_size_prob(double mean, double variance);

// log p_e(x) for x = 0, 1, 2, ...; finite for every x (full support).
double log_pmf(const ErrorSpec& spec, std::uint64_t x);

// One draw from p_e, deterministic given the stream state.
std::uint64_t sample(const ErrorSpec& spec, Rng& rng);

std::string family_name(const ErrorSpec& spec);

}  // namespace gasinar

#endif
