#include <doctest.h>

#include <numbers>
#include <random>

#include "nehari/errors.hpp"
#include "nehari/spectral.hpp"
#include "support.hpp"

using namespace nehari;
using testing_support::max_abs_diff;

namespace {

GridFunction random_grid(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<cplx> s(n);
    for (auto& z : s) {
        const double re = g(rng);
        const double im = g(rng);
        z = {re, im};
    }
    return GridFunction(std::move(s));
}

} // namespace

TEST_CASE("grid sizes must be powers of two of at least 8")
{
    CHECK_THROWS_AS(GridFunction::constant(6, 0.0), ValidationError);
    CHECK_THROWS_AS(GridFunction::constant(12, 0.0), ValidationError);
    CHECK_THROWS_AS(GridFunction::constant(4, 0.0), ValidationError);
    CHECK_NOTHROW(GridFunction::constant(8, 0.0));
    CHECK_THROWS_AS(GridFunction(std::vector<cplx>(8, cplx(NAN, 0.0))), ValidationError);
}

TEST_CASE("quarter points are exact")
{
    CHECK(grid_point(16, 4) == cplx(0.0, 1.0));
    CHECK(grid_point(16, 8) == cplx(-1.0, 0.0));
    CHECK(grid_point(16, 12) == cplx(0.0, -1.0));
    CHECK(grid_point(16, 16) == cplx(1.0, 0.0));
}

TEST_CASE("a monomial has a single coefficient")
{
    const std::size_t n = 64;
    for (int d : {-32, -5, -1, 0, 3, 31}) {
        auto f = GridFunction::sample(n, [d](cplx z) { return std::pow(z, d); });
        auto c = analyze(f);
        for (int m = c.min_index(); m <= c.max_index(); ++m)
            CHECK(std::abs(c.at(m) - (m == d ? 1.0 : 0.0)) < 1e-13);
    }
}

TEST_CASE("coefficient indices outside the grid range are rejected")
{
    auto c = analyze(GridFunction::constant(16, 1.0));
    CHECK_THROWS_AS(c.at(8), ValidationError);
    CHECK_THROWS_AS(c.at(-9), ValidationError);
    CHECK(c.centered().size() == 16);
}

TEST_CASE("analyze and synthesize are inverse")
{
    auto f = random_grid(256, 7);
    CHECK(max_abs_diff(synthesize(analyze(f)), f) < 1e-13);
}

TEST_CASE("Parseval holds for the normalized transform")
{
    auto f = random_grid(128, 8);
    CHECK(std::abs(l2_norm(f) - analyze(f).l2_norm()) < 1e-12);
    CHECK(std::abs(inner(f, f).real() - l2_norm(f) * l2_norm(f)) < 1e-12);
}

TEST_CASE("Riesz projections split a function")
{
    auto f = random_grid(64, 9);
    auto p = riesz_plus(f);
    auto m = riesz_minus(f);
    CHECK(max_abs_diff(GridFunction::tabulate(64, [&](std::size_t k) { return p[k] + m[k]; }), f) < 1e-13);
    CHECK(std::abs(inner(p, m)) < 1e-13);

    auto zbar = GridFunction::sample(64, [](cplx z) { return std::conj(z); });
    CHECK(l2_norm(riesz_plus(zbar)) < 1e-15);
    CHECK(std::abs(l2_norm(riesz_minus(zbar)) - 1.0) < 1e-14);
}

TEST_CASE("the Nyquist mode belongs to the anti-analytic half")
{
    const std::size_t n = 32;
    auto alt = GridFunction::tabulate(n, [](std::size_t k) { return k % 2 ? -1.0 : 1.0; });
    CHECK(l2_norm(riesz_plus(alt)) < 1e-14);
    CHECK(max_abs_diff(riesz_minus(alt), alt) < 1e-14);
}

TEST_CASE("harmonic conjugate of trigonometric modes")
{
    const std::size_t n = 128;
    auto cosine = RealGridFunction::tabulate(n, [&](std::size_t k) { return std::cos(3.0 * grid_angle(n, k)); });
    auto t = conjugate(cosine);
    for (std::size_t k = 0; k < n; ++k)
        CHECK(std::abs(t[k] - std::sin(3.0 * grid_angle(n, k))) < 1e-13);

    auto constant = RealGridFunction(std::vector<double>(n, 2.5));
    const auto tc = conjugate(constant);
    for (double x : tc.samples())
        CHECK(std::abs(x) < 1e-15);

    auto nyq = RealGridFunction::tabulate(n, [](std::size_t k) { return k % 2 ? -1.0 : 1.0; });
    const auto tn = conjugate(nyq);
    for (double x : tn.samples())
        CHECK(std::abs(x) < 1e-14);
}

TEST_CASE("u + i conj(u) is analytic when u has no Nyquist content")
{
    const std::size_t n = 256;
    auto u = RealGridFunction::tabulate(n, [&](std::size_t k) {
        const double t = grid_angle(n, k);
        return std::log(1.25 + std::cos(t)) + 0.3 * std::sin(5.0 * t);
    });
    auto v = conjugate(u);
    auto f = GridFunction::tabulate(n, [&](std::size_t k) { return cplx(u[k], v[k]); });
    // The log term is analytic to ~2^-n/2; only the dropped Nyquist term survives.
    CHECK(l2_norm(riesz_minus(f)) < 1e-12);
}

TEST_CASE("conjugation twice is minus identity on mean-zero functions")
{
    const std::size_t n = 64;
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    std::vector<cplx> c(n, 0.0);
    for (int m = 1; m < 20; ++m) {
        const double a = g(rng);
        const double b = g(rng);
        c[static_cast<std::size_t>(m)] = {a, b};
        c[n - static_cast<std::size_t>(m)] = {a, -b};
    }
    auto u = to_real(synthesize(FourierCoefficients(c)), 1e-12);
    auto uu = conjugate(conjugate(u));
    for (std::size_t k = 0; k < n; ++k)
        CHECK(std::abs(uu[k] + u[k]) < 1e-13);
}

TEST_CASE("to_real rejects complex data")
{
    auto f = GridFunction::constant(8, cplx(1.0, 1e-3));
    CHECK_THROWS_AS(to_real(f), ValidationError);
    CHECK_NOTHROW(to_real(f, 1e-2));
}

TEST_CASE("Poisson extension of polynomials")
{
    auto z2 = GridFunction::sample(64, [](cplx z) { return z * z; });
    CHECK(std::abs(poisson_eval(z2, cplx(0.5, 0.0)) - 0.25) < 1e-14);
    auto zb = GridFunction::sample(64, [](cplx z) { return std::conj(z); });
    const cplx w(0.3, -0.4);
    CHECK(std::abs(poisson_eval(zb, w) - std::conj(w)) < 1e-14);
    CHECK_THROWS_AS(poisson_eval(zb, cplx(1.0, 0.0)), ValidationError);
}

TEST_CASE("norms and means")
{
    auto two = GridFunction::constant(16, 2.0);
    CHECK(std::abs(lp_norm(two, 1.0) - 2.0) < 1e-15);
    CHECK(std::abs(lp_norm(two, 3.0) - 2.0) < 1e-14);
    CHECK_THROWS_AS(lp_norm(two, 0.5), ValidationError);
    CHECK(std::abs(mean(GridFunction::sample(16, [](cplx z) { return z; }))) < 1e-15);
    CHECK_THROWS_AS(multiply(two, GridFunction::constant(32, 1.0)), ValidationError);
}
