#ifndef GASINAR_SERIES_HPP
#define GASINAR_SERIES_HPP

#include <cstdint>
#include <vector>

namespace gasinar {

// Observed counts y_0..y_T in time order. Signed so that ingestion layers
// can hand over raw values; every modeling entry point validates.
using Count = std::int64_t;
using CountSeries = std::vector<Count>;

// Throws std::invalid_argument on negative entries or fewer than
// `min_length` observations.
void validate_series(const CountSeries& series, std::size_t min_length = 2);

double series_mean(const CountSeries& series);
double series_variance(const CountSeries& series);
double lag1_autocorrelation(const CountSeries& series);
bool is_constant_series(const CountSeries& series);

}  // namespace gasinar

#endif
