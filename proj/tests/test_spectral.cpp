#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "spde2m/rng.hpp"
#include "spde2m/spectral.hpp"

using namespace spde2m;

namespace {

SpectralField random_real_field(int truncation, std::uint64_t seed) {
    SpectralField f(truncation);
    NormalStream z(seed, 0);
    f.mode(0) = z.next();
    for (int n = 1; n <= truncation; ++n) {
        const Complex c(z.next(), z.next());
        f.mode(n) = c;
        f.mode(-n) = std::conj(c);
    }
    return f;
}

}  // namespace

TEST_CASE("unit imaginary powers cycle through the quadrants exactly") {
    CHECK(unit_imaginary_power(0) == Complex(1, 0));
    CHECK(unit_imaginary_power(1) == Complex(0, 1));
    CHECK(unit_imaginary_power(2) == Complex(-1, 0));
    CHECK(unit_imaginary_power(3) == Complex(0, -1));
    CHECK(unit_imaginary_power(4) == Complex(1, 0));
    CHECK(unit_imaginary_power(-1) == Complex(0, -1));
}

TEST_CASE("differentiate: constants, eigenfunctions, single modes") {
    const int N = 4;
    // derivative of a constant vanishes
    auto d = differentiate(SpectralField::constant(N, 1.0), 4);
    for (const auto& c : d.modes()) CHECK(std::abs(c) == 0.0);

    // second derivative of 2 cos x is -2 cos x
    d = differentiate(SpectralField::cosine(N, 1, 2.0), 2);
    CHECK(d.mode(1) == Complex(-1.0, 0.0));
    CHECK(d.mode(-1) == Complex(-1.0, 0.0));

    // isolated mode n = 2 under order m = 2: (2i)^2 = -4
    SpectralField single(N);
    single.mode(2) = 1.0;
    d = differentiate(single, 2);
    CHECK(d.mode(2) == Complex(-4.0, 0.0));
}

TEST_CASE("l2 norm: zero mode, decaying modes, zero field") {
    const int N = 6;
    CHECK(l2_norm(SpectralField::constant(N, 1.0)) ==
          doctest::Approx(std::sqrt(2.0 * M_PI)).epsilon(1e-14));

    SpectralField decaying(N);
    double sum = 0.0;
    for (int n = -N; n <= N; ++n) {
        const double v = std::exp(-integer_power(n, 4));  // m = 2
        decaying.mode(n) = v;
        sum += v * v;
    }
    CHECK(sum == doctest::Approx(1.2706705664732254).epsilon(1e-12));
    CHECK(l2_norm(decaying) == doctest::Approx(std::sqrt(2.0 * M_PI * sum)).epsilon(1e-14));

    CHECK(l2_norm(SpectralField(N)) == 0.0);
}

TEST_CASE("evaluate: cosine, constant, sine") {
    const int N = 2;
    auto v = evaluate(SpectralField::cosine(N, 1, 1.0), {0.0});
    CHECK(v[0] == doctest::Approx(1.0).epsilon(1e-14));

    v = evaluate(SpectralField::constant(N, 1.0), {0.3, 5.1});
    CHECK(v[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(v[1] == doctest::Approx(1.0).epsilon(1e-14));

    v = evaluate(SpectralField::sine(N, 1, 1.0), {M_PI / 2.0});
    CHECK(v[0] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("evaluate rejects fields that are not real") {
    SpectralField f(2);
    f.mode(1) = Complex(1.0, 0.0);  // no conjugate partner
    CHECK(f.hermitian_defect() > 0.5);
    CHECK_THROWS_AS(evaluate(f, {0.5}), std::runtime_error);
}

TEST_CASE("Parseval: quadrature on a fine grid reproduces the mode sum") {
    const int N = 8;
    const auto f = random_real_field(N, 42);
    const int G = 2 * N + 2;  // exact for trigonometric polynomials once G > 2N
    std::vector<double> points;
    for (int j = 0; j < G; ++j) points.push_back(2.0 * M_PI * j / G);
    const auto values = evaluate(f, points);
    double quad = 0.0;
    for (double v : values) quad += v * v;
    quad *= 2.0 * M_PI / G;
    CHECK(quad == doctest::Approx(l2_norm(f) * l2_norm(f)).epsilon(1e-8));
}

TEST_CASE("derivative orders compose additively") {
    const auto f = random_real_field(5, 7);
    for (int a : {0, 1, 2}) {
        for (int b : {1, 3}) {
            const auto lhs = differentiate(differentiate(f, a), b);
            const auto rhs = differentiate(f, a + b);
            for (int n = -5; n <= 5; ++n)
                CHECK(std::abs(lhs.mode(n) - rhs.mode(n)) <=
                      1e-12 * std::max(1.0, std::abs(rhs.mode(n))));
        }
    }
}

TEST_CASE("operations preserve Hermitian symmetry") {
    const auto f = random_real_field(6, 9);
    CHECK(f.hermitian_defect() == 0.0);
    for (int order : {1, 2, 5}) {
        const auto d = differentiate(f, order);
        CHECK(d.hermitian_defect() <= 1e-12 * d.total_amplitude());
    }
}

TEST_CASE("csv dump carries one row per mode") {
    SpectralField f(1);
    f.mode(0) = Complex(1.5, 0.0);
    const std::string csv = to_csv(f);
    CHECK(csv == "n,re,im\n-1,0,0\n0,1.5,0\n1,0,0\n");
}
