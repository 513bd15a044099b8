#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "spde2m/coercivity.hpp"
#include "spde2m/rng.hpp"

using namespace spde2m;

namespace {

CoefficientSet scalar_case(int m, double a, double mu) {
    CoefficientSet c(1, m);
    const MultiIndex lead({m});
    c.set_drift(lead, lead, a);
    if (mu != 0.0) c.set_noise(0, lead, mu);
    return c;
}

CoefficientSet random_case(int n, int m, int channels, std::uint64_t seed) {
    CoefficientSet c(n, m);
    NormalStream z(seed, 0);
    const auto basis = enumerate_indices(n, m);
    for (const auto& a : basis)
        for (const auto& b : basis) c.set_drift(a, b, z.next());
    for (int k = 0; k < channels; ++k)
        for (const auto& a : basis) c.set_noise(k, a, 0.5 * z.next());
    return c;
}

}  // namespace

TEST_CASE("multiplier branches") {
    CHECK(multiplier(1, 7.0) == 1.0);
    CHECK(multiplier(2, 2.0) == 1.0);
    CHECK(multiplier(2, 4.0) == 3.0);
    CHECK(multiplier(3, 100.0) == 1.0);
    CHECK_THROWS_AS(multiplier(2, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(multiplier(0, 2.0), std::invalid_argument);
}

TEST_CASE("lambda_star: scalar hand evaluations") {
    // 2A - (p-1) mu^2 for even m
    auto v = lambda_star(scalar_case(2, 1.0, 1.0), 2.0, CoercivityMode::p_dependent);
    CHECK(v.lambda_star == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(v.holds);

    v = lambda_star(scalar_case(2, 1.0, 1.0), 3.0, CoercivityMode::p_dependent);
    CHECK(v.lambda_star == doctest::Approx(0.0).epsilon(1e-14));
    CHECK_FALSE(v.holds);

    // odd m: multiplier is 1 for every p
    for (double p : {2.0, 5.0, 50.0}) {
        v = lambda_star(scalar_case(1, 1.0, 1.0), p, CoercivityMode::p_dependent);
        CHECK(v.lambda_star == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(v.holds);
    }

    // no noise: reduces to the smallest eigenvalue of S
    v = lambda_star(scalar_case(2, 1.0, 0.0), 6.0, CoercivityMode::p_dependent);
    CHECK(v.lambda_star == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("standard mode uses multiplier 1 regardless of parity") {
    const auto v = lambda_star(scalar_case(2, 1.0, 1.0), 10.0, CoercivityMode::standard);
    CHECK(v.c_p == 1.0);
    CHECK(v.lambda_star == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(lambda_star(scalar_case(2, 1.0, 1.0), 1.0, CoercivityMode::standard),
                    std::invalid_argument);
}

TEST_CASE("critical_p: threshold of the benchmark family") {
    const auto p = critical_p(scalar_case(2, 1.0, 1.0));
    REQUIRE(p.has_value());
    CHECK(*p == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("critical_p approaches 2 as the noise saturates the margin") {
    const double mu = std::sqrt(2.0) * (1.0 - 1e-12);
    const auto p = critical_p(scalar_case(2, 1.0, mu));
    REQUIRE(p.has_value());
    CHECK(*p == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("critical_p: none without noise, none for odd m, none when already failing") {
    CHECK_FALSE(critical_p(scalar_case(2, 1.0, 0.0)).has_value());
    CHECK_FALSE(critical_p(scalar_case(1, 1.0, 1.0)).has_value());
    CHECK_FALSE(critical_p(scalar_case(2, 0.4, 1.0)).has_value());  // margin at p=2 is -0.2
}

TEST_CASE("margin is non-increasing in p for even m and constant for odd m") {
    for (int m : {1, 2, 3, 4}) {
        const auto c = random_case(2, m, 2, 7u + static_cast<std::uint64_t>(m));
        double previous = lambda_star(c, 2.0, CoercivityMode::p_dependent).lambda_star;
        const double first = previous;
        for (double p = 2.5; p <= 12.0; p += 0.5) {
            const double current = lambda_star(c, p, CoercivityMode::p_dependent).lambda_star;
            if (m % 2 == 0)
                CHECK(current <= previous + 1e-12);
            else
                CHECK(current == doctest::Approx(first).epsilon(1e-14));
            previous = current;
        }
    }
}

TEST_CASE("random unit vectors never beat the eigenvalue margin") {
    const auto c = random_case(3, 2, 2, 11);
    const double p = 4.0;
    const auto verdict = lambda_star(c, p, CoercivityMode::p_dependent);
    const auto forms = leading_vectors(c);
    const Matrix shifted = forms.dissipation - verdict.c_p * forms.noise;
    NormalStream z(123, 0);
    const std::size_t dim = shifted.dim();
    double best = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 100000; ++trial) {
        std::vector<double> xi(dim);
        double norm_sq = 0.0;
        for (auto& x : xi) {
            x = z.next();
            norm_sq += x * x;
        }
        if (norm_sq == 0.0) continue;
        const double value = quadratic_form(shifted, xi) / norm_sq;
        best = std::min(best, value);
        CHECK(value >= verdict.lambda_star - 1e-8);
    }
    // the search comes close from above for a small dimension
    CHECK(best <= verdict.lambda_star + 0.05 * (std::abs(verdict.lambda_star) + 1.0));
}

TEST_CASE("scaling the noise by s shifts the margin like s^2") {
    const auto base = random_case(2, 2, 1, 5);
    for (double s : {0.5, 2.0, 3.0}) {
        CoefficientSet scaled(2, 2);
        for (const auto& [key, value] : base.drift_entries())
            scaled.set_drift(key.first, key.second, value);
        for (int k = 0; k < base.noise_count(); ++k)
            for (const auto& [alpha, value] : base.noise_entries()[static_cast<std::size_t>(k)])
                scaled.set_noise(k, alpha, s * value);
        const double p = 4.0;
        const auto verdict = lambda_star(scaled, p, CoercivityMode::p_dependent);
        const auto forms = leading_vectors(base);
        const double expected = smallest_eigenvalue(
            forms.dissipation - (multiplier(2, p) * s * s) * forms.noise);
        CHECK(verdict.lambda_star == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("eigensolver reproduces the tridiagonal Toeplitz spectrum") {
    // eigenvalues of the (2, -1) tridiagonal matrix: 2 - 2 cos(k pi / (n+1))
    const std::size_t n = 10;
    Matrix tri(n);
    for (std::size_t i = 0; i < n; ++i) {
        tri(i, i) = 2.0;
        if (i + 1 < n) {
            tri(i, i + 1) = -1.0;
            tri(i + 1, i) = -1.0;
        }
    }
    const auto eig = symmetric_eigenvalues(tri);
    for (std::size_t k = 1; k <= n; ++k) {
        const double expected =
            2.0 - 2.0 * std::cos(static_cast<double>(k) * M_PI / static_cast<double>(n + 1));
        CHECK(eig[k - 1] == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("the eigensolver refuses non-symmetric input") {
    Matrix lopsided(2);
    lopsided(0, 0) = 1.0;
    lopsided(0, 1) = 2.0;
    lopsided(1, 0) = -2.0;
    lopsided(1, 1) = 1.0;
    CHECK_THROWS_AS(symmetric_eigenvalues(lopsided), std::logic_error);
}

TEST_CASE("scalar family identity: margin equals 2A - c_p mu^2") {
    for (int m : {1, 2, 3}) {
        for (double p : {2.0, 3.0, 6.5}) {
            for (double a : {0.5, 1.0, 2.0}) {
                for (double mu : {0.0, 0.7, 1.3}) {
                    const auto v =
                        lambda_star(scalar_case(m, a, mu), p, CoercivityMode::p_dependent);
                    const double expected = 2.0 * a - multiplier(m, p) * mu * mu;
                    CHECK(v.lambda_star == doctest::Approx(expected).epsilon(1e-13));
                }
            }
        }
    }
}
