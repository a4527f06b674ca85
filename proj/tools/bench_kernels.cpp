// Compares the serial reference implementation of the Monte Carlo kernels
// against the OpenMP-parallel path and checks that they agree bitwise.

#include <chrono>
#include <cstdio>

#include "gasinar/forecasting.hpp"
#include "gasinar/replicate.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename F>
double timed(F&& f) {
    const auto start = Clock::now();
    f();
    return seconds_since(start);
}

}  // namespace

int main() {
    using namespace gasinar;

    std::printf("threads available: %d\n\n", hardware_threads());

    {
        RecoveryStudyConfig config;
        config.replications = 24;
        config.length = 500;
        config.restarts = 3;
        config.seed = 7;

        RecoveryStudyReport serial, parallel;
        config.exec = Exec::Serial;
        const double t_serial = timed([&] { serial = run_recovery_study(config); });
        config.exec = Exec::Parallel;
        const double t_parallel = timed([&] { parallel = run_recovery_study(config); });

        bool identical = serial.params.size() == parallel.params.size();
        for (std::size_t i = 0; identical && i < serial.params.size(); ++i) {
            identical = serial.params[i].mean == parallel.params[i].mean &&
                        serial.params[i].sd == parallel.params[i].sd;
        }
        std::printf("recovery study (24 reps, T=500)\n");
        std::printf("  serial   %8.2f s\n", t_serial);
        std::printf("  parallel %8.2f s   speedup %.2fx   results %s\n\n", t_parallel,
                    t_serial / t_parallel, identical ? "identical" : "DIFFER");
    }

    {
        const ModelSpec model =
            GasInarModel{GasParams{-0.5, 0.9, 0.15, ErrorSpec::poisson(6.0)}};
        const ForecastOrigin origin{8, 0.4};

        ForecastDistribution serial, parallel;
        const double t_serial =
            timed([&] { serial = forecast_mc(model, origin, 6, 400000, 11, Exec::Serial); });
        const double t_parallel =
            timed([&] { parallel = forecast_mc(model, origin, 6, 400000, 11, Exec::Parallel); });

        const bool identical = serial.counts == parallel.counts;
        std::printf("monte carlo forecast (h=6, B=400000)\n");
        std::printf("  serial   %8.2f s\n", t_serial);
        std::printf("  parallel %8.2f s   speedup %.2fx   results %s\n", t_parallel,
                    t_serial / t_parallel, identical ? "identical" : "DIFFER");
    }
    return 0;
}
