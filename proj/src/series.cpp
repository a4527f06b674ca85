#include "gasinar/series.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace gasinar {

void validate_series(const CountSeries& series, std::size_t min_length) {
    if (series.size() < min_length) {
        throw std::invalid_argument("count series too short: need at least " +
                                    std::to_string(min_length) + " observations, got " +
                                    std::to_string(series.size()));
    }
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (series[i] < 0) {
            throw std::invalid_argument("count series contains a negative value at index " +
                                        std::to_string(i));
        }
    }
}

double series_mean(const CountSeries& series) {
    if (series.empty()) return 0.0;
    double sum = 0.0;
    for (Count y : series) sum += static_cast<double>(y);
    return sum / static_cast<double>(series.size());
}

double series_variance(const CountSeries& series) {
    if (series.size() < 2) return 0.0;
    const double mean = series_mean(series);
    double ss = 0.0;
    for (Count y : series) {
        const double d = static_cast<double>(y) - mean;
        ss += d * d;
    }
    return ss / static_cast<double>(series.size() - 1);
}

double lag1_autocorrelation(const CountSeries& series) {
    if (series.size() < 2) return 0.0;
    const double mean = series_mean(series);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t t = 0; t < series.size(); ++t) {
        const double d = static_cast<double>(series[t]) - mean;
        den += d * d;
        if (t > 0) num += d * (static_cast<double>(series[t - 1]) - mean);
    }
    return den > 0.0 ? num / den : 0.0;
}

bool is_constant_series(const CountSeries& series) {
    return std::adjacent_find(series.begin(), series.end(), std::not_equal_to<>()) ==
           series.end();
}

}  // namespace gasinar
