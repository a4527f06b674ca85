#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "gasinar/estimation.hpp"
#include "gasinar/simulation.hpp"
#include "gasinar/util.hpp"

using namespace gasinar;

namespace {

const CountSeries& shared_static_series() {
    static const SimulatedSeries sim =
        simulate(ModelSpec{StaticInarModel{0.5, ErrorSpec::poisson(5.0)}}, 2000, 314);
    return sim.series;
}

}  // namespace

TEST_CASE("unconstrained transform is a bijection") {
    const std::vector<ModelSpec> models{
        GasInarModel{{-0.4, 0.9, 0.12, ErrorSpec::poisson(6.0)}},
        GasInarModel{{0.3, -0.55, -0.02, ErrorSpec::negbin(6.0, 15.0)}},
        StaticInarModel{0.37, ErrorSpec::poisson(2.5)},
        StaticInarModel{0.81, ErrorSpec::negbin(3.0, 8.0)},
        RcInarModel{-1.0, 0.08, ErrorSpec::poisson(4.0)},
        RcInarModel{0.4, -0.3, ErrorSpec::negbin(9.0, 21.0)},
    };
    for (const ModelSpec& model : models) {
        const std::vector<double> v = to_unconstrained(model);
        const ModelSpec back = from_unconstrained(kind_of(model), v);
        const std::vector<double> orig = natural_params(model);
        const std::vector<double> round = natural_params(back);
        REQUIRE(orig.size() == round.size());
        for (std::size_t i = 0; i < orig.size(); ++i) {
            CHECK(round[i] == doctest::Approx(orig[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("transform pins the documented coordinates") {
    const GasInarModel gas{{-0.5, 0.9, 0.15, ErrorSpec::negbin(6.0, 15.0)}};
    const std::vector<double> v = to_unconstrained(gas);
    CHECK(v[0] == -0.5);
    CHECK(v[1] == doctest::Approx(std::atanh(0.9)).epsilon(1e-14));
    CHECK(v[1] == doctest::Approx(1.47222).epsilon(1e-5));
    CHECK(v[2] == 0.15);
    CHECK(v[3] == doctest::Approx(std::log(6.0)).epsilon(1e-14));
    CHECK(v[4] == doctest::Approx(std::log(9.0)).epsilon(1e-14));

    const GasInarModel zero{{0.0, 0.0, 0.0, ErrorSpec::poisson(1.0)}};
    CHECK(to_unconstrained(zero)[1] == 0.0);

    CHECK_THROWS_AS(
        (void)from_unconstrained(ModelKind{ModelStructure::Gas, ErrorFamily::Poisson},
                                 {0.0, 0.0}),
        std::invalid_argument);
}

TEST_CASE("static fit recovers the generating parameters") {
    const CountSeries& series = shared_static_series();
    FitOptions options;
    options.seed = 5;
    const FitResult result =
        fit(ModelKind{ModelStructure::Static, ErrorFamily::Poisson}, series, options);
    REQUIRE(result.converged);
    const double alpha_hat = std::get<StaticInarModel>(result.model).alpha;
    CHECK(std::abs(alpha_hat - 0.5) < 0.05);

    // Independent optimization route: grid search over (alpha, mu).
    double best_alpha = 0.0, best_mu = 0.0, best = -1e300;
    for (double a = 0.05; a < 0.96; a += 0.01) {
        for (double mu = 3.0; mu < 8.0; mu += 0.05) {
            const double ll =
                log_likelihood(StaticInarModel{a, ErrorSpec::poisson(mu)}, series).avg;
            if (ll > best) {
                best = ll;
                best_alpha = a;
                best_mu = mu;
            }
        }
    }
    CHECK(std::abs(alpha_hat - best_alpha) < 0.015);
    CHECK(std::abs(std::get<StaticInarModel>(result.model).error.mean - best_mu) < 0.08);
    CHECK(result.loglik_avg >= best - 1e-9);  // the simplex beats the grid
}

TEST_CASE("gas nests the static fit") {
    const CountSeries& series = shared_static_series();
    FitOptions options;
    options.seed = 7;
    const FitResult st =
        fit(ModelKind{ModelStructure::Static, ErrorFamily::Poisson}, series, options);
    const FitResult gas =
        fit(ModelKind{ModelStructure::Gas, ErrorFamily::Poisson}, series, options);
    CHECK(gas.loglik_sum >= st.loglik_sum - 1e-6);
}

TEST_CASE("refitting from the estimate does not move the objective") {
    const SimulatedSeries sim =
        simulate(ModelSpec{GasInarModel{{-0.05, 0.9, 0.15, ErrorSpec::poisson(6.0)}}}, 400, 8);
    FitOptions options;
    options.seed = 11;
    options.restarts = 3;
    const FitResult first =
        fit(ModelKind{ModelStructure::Gas, ErrorFamily::Poisson}, sim.series, options);

    FitOptions warm;
    warm.seed = 12;
    warm.restarts = 1;
    warm.extra_starts = {to_unconstrained(first.model)};
    const FitResult second =
        fit(ModelKind{ModelStructure::Gas, ErrorFamily::Poisson}, sim.series, warm);
    CHECK(second.loglik_sum >= first.loglik_sum - 1e-8);
    CHECK(std::abs(second.loglik_sum - first.loglik_sum) <
          1e-8 * std::max(1.0, std::abs(first.loglik_sum)));
}

TEST_CASE("best objective is monotone in the number of restarts") {
    const SimulatedSeries sim =
        simulate(ModelSpec{GasInarModel{{-0.05, 0.9, 0.15, ErrorSpec::poisson(6.0)}}}, 300, 13);
    double previous = -1e301;
    for (int restarts : {1, 2, 4, 6}) {
        FitOptions options;
        options.seed = 21;  // same seed schedule; start j depends only on (seed, j)
        options.restarts = restarts;
        options.compute_std_errors = false;
        const FitResult result =
            fit(ModelKind{ModelStructure::Gas, ErrorFamily::Poisson}, sim.series, options);
        CHECK(result.loglik_avg >= previous - 1e-12);
        previous = result.loglik_avg;
    }
}

TEST_CASE("degenerate series abort for dynamic models") {
    const CountSeries zeros(50, 0);
    const CountSeries constant(50, 7);
    for (const CountSeries& series : {zeros, constant}) {
        CHECK_THROWS_AS(
            (void)fit(ModelKind{ModelStructure::Gas, ErrorFamily::Poisson}, series, {}),
            NoSurvivalInformation);
        CHECK_THROWS_AS(
            (void)fit(ModelKind{ModelStructure::Rc, ErrorFamily::Poisson}, series, {}),
            NoSurvivalInformation);
    }
    CHECK_THROWS_AS(
        (void)fit(ModelKind{ModelStructure::Gas, ErrorFamily::Poisson}, CountSeries{1, 2, 3}, {}),
        std::invalid_argument);  // minimum-information guard
}

TEST_CASE("aic and averages are wired to the definitions") {
    const CountSeries& series = shared_static_series();
    FitOptions options;
    options.seed = 3;
    options.restarts = 2;
    const FitResult result =
        fit(ModelKind{ModelStructure::Static, ErrorFamily::NegBinomial}, series, options);
    CHECK(result.n_params == 3);
    CHECK(result.aic == doctest::Approx(2.0 * 3 - 2.0 * result.loglik_sum).epsilon(1e-14));
    CHECK(result.loglik_avg ==
          doctest::Approx(result.loglik_sum / static_cast<double>(result.horizon)).epsilon(1e-14));
}

TEST_CASE("standard errors exist and respect the delta map") {
    const SimulatedSeries sim =
        simulate(ModelSpec{StaticInarModel{0.5, ErrorSpec::poisson(5.0)}}, 1500, 17);
    FitOptions options;
    options.seed = 9;
    const FitResult result =
        fit(ModelKind{ModelStructure::Static, ErrorFamily::Poisson}, sim.series, options);
    REQUIRE(result.se_available);
    REQUIRE(result.std_errors.size() == 2);
    CHECK(result.std_errors[0] > 0.0);
    CHECK(result.std_errors[1] > 0.0);

    // Two-route check: Hessian taken directly in the natural parametrization.
    const auto natural_loglik = [&](const std::vector<double>& p) {
        return log_likelihood(StaticInarModel{p[0], ErrorSpec::poisson(p[1])}, sim.series).sum;
    };
    const std::vector<double> at{std::get<StaticInarModel>(result.model).alpha,
                                 std::get<StaticInarModel>(result.model).error.mean};
    const optim::Matrix hess = optim::numerical_hessian(natural_loglik, at);
    optim::Matrix info(2, std::vector<double>(2));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) info[i][j] = -hess[i][j];
    bool ok = false;
    const optim::Matrix cov = optim::invert_spd(info, ok);
    REQUIRE(ok);
    for (int i = 0; i < 2; ++i) {
        CHECK(std::abs(result.std_errors[i] - std::sqrt(cov[i][i])) <
              0.05 * std::sqrt(cov[i][i]));
    }
}

TEST_CASE("likelihood ratio test") {
    SUBCASE("identical likelihoods give statistic zero and pvalue one") {
        FitResult restricted;
        restricted.kind = {ModelStructure::Static, ErrorFamily::NegBinomial};
        restricted.loglik_sum = -100.0;
        FitResult full;
        full.kind = {ModelStructure::Gas, ErrorFamily::NegBinomial};
        full.loglik_sum = -100.0;
        const LrTestResult lr = lr_test(restricted, full);
        CHECK(lr.statistic == 0.0);
        CHECK(lr.df == 2);
        CHECK(lr.pvalue == 1.0);
    }

    SUBCASE("published crime-fit values") {
        FitResult restricted;
        restricted.kind = {ModelStructure::Static, ErrorFamily::NegBinomial};
        restricted.loglik_sum = -669.03;
        FitResult full;
        full.kind = {ModelStructure::Gas, ErrorFamily::NegBinomial};
        full.loglik_sum = -662.91;
        const LrTestResult lr = lr_test(restricted, full);
        CHECK(lr.statistic == doctest::Approx(12.24).epsilon(1e-12));
        CHECK(lr.pvalue == doctest::Approx(0.002).epsilon(0.0005 / 0.002));
    }

    SUBCASE("static within rc has one degree of freedom") {
        FitResult restricted;
        restricted.kind = {ModelStructure::Static, ErrorFamily::Poisson};
        restricted.loglik_sum = -50.0;
        FitResult full;
        full.kind = {ModelStructure::Rc, ErrorFamily::Poisson};
        full.loglik_sum = -48.0;
        CHECK(lr_test(restricted, full).df == 1);
    }

    SUBCASE("non-nested pairs are rejected") {
        FitResult rc;
        rc.kind = {ModelStructure::Rc, ErrorFamily::Poisson};
        FitResult gas;
        gas.kind = {ModelStructure::Gas, ErrorFamily::Poisson};
        CHECK_THROWS_AS((void)lr_test(rc, gas), std::invalid_argument);
        FitResult st;
        st.kind = {ModelStructure::Static, ErrorFamily::NegBinomial};
        CHECK_THROWS_AS((void)lr_test(st, gas), std::invalid_argument);  // family mismatch
    }

    SUBCASE("floored at zero when the full model fits worse") {
        FitResult restricted;
        restricted.kind = {ModelStructure::Static, ErrorFamily::Poisson};
        restricted.loglik_sum = -10.0;
        FitResult full;
        full.kind = {ModelStructure::Gas, ErrorFamily::Poisson};
        full.loglik_sum = -10.000001;
        const LrTestResult lr = lr_test(restricted, full);
        CHECK(lr.statistic == 0.0);
        CHECK(lr.pvalue == 1.0);
    }
}
