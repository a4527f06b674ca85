#include "gasinar/distributions.hpp"

#include <cmath>
#include <stdexcept>

#include "gasinar/util.hpp"

namespace gasinar {

ErrorSpec ErrorSpec::poisson(double mean) {
    ErrorSpec spec{ErrorFamily::Poisson, mean, mean};
    validate(spec);
    return spec;
}

ErrorSpec ErrorSpec::negbin(double mean, double variance) {
    ErrorSpec spec{ErrorFamily::NegBinomial, mean, variance};
    validate(spec);
    return spec;
}

void validate(const ErrorSpec& spec) {
    if (!(spec.mean > 0.0) || !std::isfinite(spec.mean)) {
        throw std::invalid_argument("error distribution: mean must be positive");
    }
    if (spec.family == ErrorFamily::NegBinomial) {
        if (!(spec.variance > spec.mean) || !std::isfinite(spec.variance)) {
            throw std::invalid_argument(
                "negative binomial requires variance > mean (strict overdispersion)");
        }
    }
}

NegBinShape negbin_size_prob(double mean, double variance) {
    if (!(mean > 0.0) || !(variance > mean)) {
        throw std::invalid_argument("negbin_size_prob requires variance > mean > 0");
    }
    return {mean * mean / (variance - mean), mean / variance};
}

double log_pmf(const ErrorSpec& spec, std::uint64_t x) {
    validate(spec);
    const double xd = static_cast<double>(x);
    if (spec.family == ErrorFamily::Poisson) {
        return xd * std::log(spec.mean) - spec.mean - lgamma_int(x + 1);
    }
    const NegBinShape nb = negbin_size_prob(spec.mean, spec.variance);
    // p(x) = Gamma(x+r) / (Gamma(r) x!) * p^r * (1-p)^x
    return std::lgamma(xd + nb.size) - std::lgamma(nb.size) - lgamma_int(x + 1) +
           nb.size * std::log(nb.prob) + xd * std::log1p(-nb.prob);
}

std::uint64_t sample(const ErrorSpec& spec, Rng& rng) {
    validate(spec);
    if (spec.family == ErrorFamily::Poisson) {
        std::poisson_distribution<std::uint64_t> pois(spec.mean);
        return pois(rng);
    }
    // Gamma-Poisson mixture; handles non-integer size.
    const NegBinShape nb = negbin_size_prob(spec.mean, spec.variance);
    std::gamma_distribution<double> gamma(nb.size, (1.0 - nb.prob) / nb.prob);
    const double rate = gamma(rng);
    if (rate <= 0.0) return 0;  // gamma underflow for small shapes
    std::poisson_distribution<std::uint64_t> pois(rate);
    return pois(rng);
}

std::string family_name(const ErrorSpec& spec) {
    return spec.is_poisson() ? "poisson" : "negbin";
}

}  // namespace gasinar
