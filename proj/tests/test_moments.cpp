#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "spde2m/coercivity.hpp"
#include "spde2m/moments.hpp"

using namespace spde2m;

namespace {

// Independent series oracle: plain truncated summation with a wide margin.
double series_oracle(int m, double rate, int N = 40) {
    double sum = 1.0;
    for (int n = 1; n <= N; ++n) sum += 2.0 * std::exp(-integer_power(n, 2 * m) * rate);
    return sum;
}

CoefficientSet benchmark_coeffs(int m, double mu) {
    CoefficientSet c(1, m);
    c.set_drift(MultiIndex({m}), MultiIndex({m}), 1.0);
    c.set_noise(0, MultiIndex({m}), mu);
    return c;
}

}  // namespace

TEST_CASE("finiteness: the blowup side of the threshold") {
    const auto crit = finiteness(2, 1.0, 4.0, 3.0);
    CHECK(crit.verdict == Finiteness::infinite);
    CHECK(crit.criterion_value == doctest::Approx(1.0 - 12.0 / 11.0).epsilon(1e-14));
    CHECK(crit.epsilon == doctest::Approx(1.0).epsilon(1e-14));
    REQUIRE(crit.blowup_time.has_value());
    CHECK(*crit.blowup_time == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("finiteness: before the threshold the moment is finite") {
    const auto crit = finiteness(2, 1.0, 4.0, 1.0);
    CHECK(crit.verdict == Finiteness::finite);
    CHECK(crit.criterion_value == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("finiteness: p = 2 stays finite for every time") {
    for (double t : {0.0, 0.5, 2.0, 50.0, 1e6}) {
        const auto crit = finiteness(2, 1.0, 2.0, t);
        CHECK(crit.verdict == Finiteness::finite);
        CHECK(crit.criterion_value > 0.0);
    }
}

TEST_CASE("finiteness: odd m is finite whenever mu^2 < 2") {
    for (double t : {0.0, 1.0, 10.0, 1e4}) {
        const auto crit = finiteness(1, 1.4, 10.0, t);
        CHECK(crit.verdict == Finiteness::finite);
    }
}

TEST_CASE("finiteness rejects the ill-posed noise range") {
    CHECK_THROWS_AS(finiteness(2, 1.5, 4.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(finiteness(2, -1.5, 4.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(finiteness(2, 1.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(finiteness(2, 1.0, 4.0, -1.0), std::invalid_argument);
}

TEST_CASE("odd closed form: large-time limit is the bare zero mode") {
    const double p = 6.0;
    const double value = closed_form_p_moment_odd(1, 1.0, p, 500.0);
    CHECK(value == doctest::Approx(std::pow(2.0 * M_PI, p / 2.0)).epsilon(1e-10));
}

TEST_CASE("odd closed form: matches the independent series oracle at t = 0") {
    const double series = series_oracle(1, 2.0);
    CHECK(series == doctest::Approx(1.2713415221890152).epsilon(1e-13));
    const double expected = std::pow(2.0 * M_PI, 2.0) * series * series;  // ~63.8
    CHECK(expected == doctest::Approx(63.81).epsilon(1e-3));
    CHECK(closed_form_p_moment_odd(1, 1.0, 4.0, 0.0) ==
          doctest::Approx(expected).epsilon(1e-11));
}

TEST_CASE("odd closed form at p = 2 equals the energy closed form") {
    for (double t : {0.0, 0.4, 2.5}) {
        CHECK(closed_form_p_moment_odd(1, 1.1, 2.0, t) ==
              doctest::Approx(closed_form_l2(1, 1.1, t)).epsilon(1e-12));
    }
}

TEST_CASE("energy closed form: initial energy, benchmark value, no-noise limit") {
    CHECK(closed_form_l2(2, 1.0, 0.0) ==
          doctest::Approx(2.0 * M_PI * series_oracle(2, 2.0)).epsilon(1e-12));
    CHECK(closed_form_l2(2, 1.0, 1.0) ==
          doctest::Approx(2.0 * M_PI * (1.0 + 2.0 * std::exp(-3.0) + 2.0 * std::exp(-48.0)))
              .epsilon(1e-12));
    for (double t : {0.0, 1.0, 3.0})
        CHECK(closed_form_l2(1, 0.0, t) ==
              doctest::Approx(2.0 * M_PI * series_oracle(1, 2.0 + 2.0 * t)).epsilon(1e-12));
}

TEST_CASE("closed forms reject even m where odd is required and tight truncations") {
    CHECK_THROWS_AS(closed_form_p_moment_odd(2, 1.0, 4.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(closed_form_l2(1, 1.0, 1.0, 1), std::invalid_argument);
    // a generous explicit truncation agrees with the automatic one
    CHECK(closed_form_l2(1, 1.0, 1.0, 30) ==
          doctest::Approx(closed_form_l2(1, 1.0, 1.0)).epsilon(1e-13));
}

TEST_CASE("mc moment: zero ensemble gives zero with zero error") {
    PathEnsemble ens;
    ens.m = 2;
    ens.truncation = 2;
    ens.times = {1.0};
    ens.fields.assign(8, std::vector<SpectralField>{SpectralField(2)});
    const auto est = mc_p_moment(ens, 4.0, 1.0);
    CHECK(est.value == 0.0);
    CHECK(est.std_error == 0.0);
    CHECK_THROWS_AS(mc_p_moment(ens, 4.0, 0.5), std::invalid_argument);
}

TEST_CASE("mc moment matches the energy closed form within three standard errors") {
    const std::size_t paths = 20000;
    const auto ens = exact_ensemble(2, 1.0, 8, {1.0}, paths, 2020);
    const auto est = mc_p_moment(ens, 2.0, 1.0);
    const double expected = closed_form_l2(2, 1.0, 1.0);
    CHECK(std::abs(est.value - expected) <= 3.0 * est.std_error);
}

TEST_CASE("mc moment for odd m is a zero-variance estimator") {
    const auto ens = exact_ensemble(1, 1.0, 8, {0.7}, 200, 5);
    const auto est = mc_p_moment(ens, 2.0, 0.7);
    const double expected = closed_form_l2(1, 1.0, 0.7);
    CHECK(std::abs(est.value - expected) <= 1e-10 * expected);
    CHECK(est.std_error <= 1e-10 * expected);
}

TEST_CASE("dichotomy: only even m ever reports an infinite moment") {
    for (int m : {1, 2, 3, 4}) {
        bool any_infinite = false;
        for (double p : {2.0, 4.0, 7.0, 10.0}) {
            for (double t : {0.0, 0.5, 2.0, 5.0, 10.0}) {
                for (double mu_sq : {0.25, 1.0, 1.75}) {
                    const auto crit = finiteness(m, std::sqrt(mu_sq), p, t);
                    any_infinite = any_infinite || crit.verdict == Finiteness::infinite;
                    if (m % 2 != 0) CHECK(crit.verdict == Finiteness::finite);
                }
            }
        }
        if (m % 2 == 0) CHECK(any_infinite);
    }
}

TEST_CASE("threshold identity: the criterion's root in t sits at 2/epsilon") {
    for (double mu : {0.9, 1.0, 1.2}) {
        for (double p : {3.5, 4.0, 6.0}) {
            const double epsilon = (p - 1.0) * mu * mu - 2.0;
            if (epsilon <= 0.0) continue;
            double lo = 0.0, hi = 1e3;
            for (int i = 0; i < 200; ++i) {
                const double mid = 0.5 * (lo + hi);
                if (finiteness(2, mu, p, mid).criterion_value > 0.0)
                    lo = mid;
                else
                    hi = mid;
            }
            CHECK(0.5 * (lo + hi) == doctest::Approx(2.0 / epsilon).epsilon(1e-12));
        }
    }
}

TEST_CASE("coercivity linkage: finite for all time iff the margin is positive") {
    for (double mu : {0.7, 1.0, 1.3}) {
        for (double p : {2.0, 2.4, 2.9, 3.1, 4.0, 6.0}) {
            const auto verdict =
                lambda_star(benchmark_coeffs(2, mu), p, CoercivityMode::p_dependent);
            bool finite_for_all_t = true;
            for (double t = 0.0; t <= 200.0; t += 0.5)
                finite_for_all_t =
                    finite_for_all_t &&
                    finiteness(2, mu, p, t).verdict == Finiteness::finite;
            // skip the degenerate boundary p = 1 + 2/mu^2 where the margin is 0
            if (std::abs(verdict.lambda_star) < 1e-9) continue;
            CHECK(finite_for_all_t == verdict.holds);
        }
    }
}

TEST_CASE("energy closed form decays in time for admissible noise") {
    for (double mu : {0.0, 1.0, 1.4}) {
        double previous = closed_form_l2(2, mu, 0.0);
        for (double t = 0.25; t <= 5.0; t += 0.25) {
            const double current = closed_form_l2(2, mu, t);
            CHECK(current <= previous + 1e-14);
            previous = current;
        }
    }
}

TEST_CASE("divergence classification on synthetic sequences") {
    const std::vector<std::size_t> counts = {1000, 10000, 100000};
    CHECK(classify_divergence(counts, {1.0, 2.5, 6.0}).trend ==
          DivergenceScan::Trend::diverging);
    CHECK(classify_divergence(counts, {1.0, 1.1, 1.05}).trend ==
          DivergenceScan::Trend::stable);
    CHECK(classify_divergence(counts, {1.0, 1.5, 4.0}).trend ==
          DivergenceScan::Trend::inconclusive);
    CHECK_THROWS_AS(classify_divergence({100}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(classify_divergence(counts, {1.0, -2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("moment report assembles verdict, closed forms, and the estimate") {
    const auto norms = exact_norm_samples(1, 1.0, 8, {0.5}, 500, 4);
    const auto report = moment_report(1, 1.0, 4.0, 0.5, {norms[0].data(), norms[0].size()});
    CHECK(report.criterion.verdict == Finiteness::finite);
    REQUIRE(report.closed_form.has_value());
    CHECK(*report.closed_form ==
          doctest::Approx(closed_form_p_moment_odd(1, 1.0, 4.0, 0.5)).epsilon(1e-14));
    REQUIRE(report.mc.has_value());
    // odd m: deterministic norms, so the estimate hits the closed form
    CHECK(report.mc->value == doctest::Approx(*report.closed_form).epsilon(1e-10));

    const auto bare = moment_report(2, 1.0, 4.0, 3.0, {});
    CHECK(bare.criterion.verdict == Finiteness::infinite);
    CHECK_FALSE(bare.closed_form.has_value());  // no closed form for even m, p > 2
    CHECK_FALSE(bare.mc.has_value());
    CHECK(bare.closed_form_energy == doctest::Approx(closed_form_l2(2, 1.0, 3.0)));
}

TEST_CASE("divergence scan: estimates are prefix means of one stream") {
    const std::vector<std::size_t> counts = {100, 1000};
    const auto scan = divergence_scan(2, 1.0, 4.0, 3.0, 8, counts, 42);
    const auto norms = exact_norm_samples(2, 1.0, 8, {3.0}, 1000, 42);
    double sum = 0.0;
    for (std::size_t i = 0; i < 100; ++i) sum += std::pow(norms[0][i], 4.0);
    CHECK(scan.estimates[0] == doctest::Approx(sum / 100.0).epsilon(1e-12));
    CHECK(scan.counts == counts);
    CHECK(scan.ratios.size() == 1);
}
