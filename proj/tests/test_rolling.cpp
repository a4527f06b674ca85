#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "gasinar/diagnostics.hpp"

using namespace gasinar;

TEST_CASE("a perfect-foresight pmf attains the scoring upper bounds") {
    // Degenerate forecast: all mass on the realized value.
    const std::uint64_t realized = 9;
    std::vector<double> pmf(realized + 1, 0.0);
    pmf[realized] = 1.0;
    const double point = 9.0;
    CHECK((point - static_cast<double>(realized)) == 0.0);
    CHECK(std::log(pmf[realized]) == 0.0);
}

TEST_CASE("rolling evaluation mechanics") {
    const SimulatedSeries sim =
        simulate(ModelSpec{GasInarModel{{-0.05, 0.9, 0.15, ErrorSpec::poisson(6.0)}}}, 140, 71);
    const std::vector<ModelKind> kinds{{ModelStructure::Static, ErrorFamily::Poisson},
                                       {ModelStructure::Gas, ErrorFamily::Poisson}};
    RollingOptions options;
    options.restarts = 1;
    const std::vector<EvalReport> reports =
        rolling_evaluate(sim.series, 120, 3, kinds, 2000, 5, options);

    REQUIRE(reports.size() == 2);
    for (const EvalReport& report : reports) {
        CHECK(report.h_max == 3);
        CHECK(report.mse.size() == 3);
        CHECK(report.log_score.size() == 3);
        // origins 120..137 inclusive
        CHECK(report.n_origins + report.n_skipped == 140 - 3 - 120 + 1);
        for (double ls : report.log_score) CHECK(ls < 0.0);
        for (double mse : report.mse) CHECK(mse >= 0.0);
    }
}

TEST_CASE("rolling evaluation is deterministic in the seed") {
    const SimulatedSeries sim =
        simulate(ModelSpec{StaticInarModel{0.45, ErrorSpec::poisson(5.0)}}, 120, 72);
    const std::vector<ModelKind> kinds{{ModelStructure::Static, ErrorFamily::Poisson}};
    RollingOptions options;
    options.restarts = 1;
    const auto a = rolling_evaluate(sim.series, 100, 2, kinds, 2000, 9, options);
    const auto b = rolling_evaluate(sim.series, 100, 2, kinds, 2000, 9, options);
    CHECK(a[0].mse == b[0].mse);
    CHECK(a[0].log_score == b[0].log_score);
}

TEST_CASE("rolling evaluation input guards") {
    const CountSeries series(100, 3);
    const std::vector<ModelKind> kinds{{ModelStructure::Static, ErrorFamily::Poisson}};
    CHECK_THROWS_AS((void)rolling_evaluate(series, 10, 2, kinds, 100, 1, {}),
                    std::invalid_argument);  // split < 30
    CHECK_THROWS_AS((void)rolling_evaluate(series, 99, 2, kinds, 100, 1, {}),
                    std::invalid_argument);  // split + h_max > length
}
