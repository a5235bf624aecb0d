#include <doctest.h>

#include <random>

#include "nehari/errors.hpp"
#include "nehari/hankel.hpp"
#include "support.hpp"

using namespace nehari;
using testing_support::builtin;
using testing_support::rz;

namespace {

GridFunction f1_symbol(double r, std::size_t n)
{
    return GridFunction::sample(n, [r](cplx z) {
        const cplx g = (1.0 - r * z) / std::sqrt(1.0 - r * r);
        return std::conj(g) / g;
    });
}

} // namespace

TEST_CASE("Hankel norm of conj(zeta) is one")
{
    auto zb = GridFunction::sample(256, [](cplx z) { return std::conj(z); });
    for (std::size_t m : {1u, 8u, 64u})
        CHECK(std::abs(hankel_norm(zb, m) - 1.0) < 1e-15);
}

TEST_CASE("Hankel norm of -r conj(zeta) is r")
{
    for (double r : {0.25, 0.5, 0.9}) {
        auto f = GridFunction::sample(1024, [r](cplx z) { return -r * std::conj(z); });
        CHECK(std::abs(hankel_norm(f, 128) - r) < 1e-10);
    }
}

TEST_CASE("analytic symbols have zero Hankel norm")
{
    auto p = GridFunction::sample(256, [](cplx z) { return 1.0 + 2.0 * z - z * z * z; });
    CHECK(hankel_norm(p, 32) < 1e-14);
    CHECK(nehari_distance(p, 32) < 1e-14);
}

TEST_CASE("Hankel matrix has Hankel structure")
{
    auto f = builtin("power-defect", {}, 256);
    auto h = hankel_matrix(build_scattering(f).f0(), 16);
    for (int j = 0; j < 16; ++j)
        for (int k = 0; k < 16; ++k)
            if (j + 1 < 16 && k > 0)
                CHECK(h(j, k) == h(j + 1, k - 1));
}

TEST_CASE("coset invariance under analytic polynomials")
{
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g;
    auto f0 = build_scattering(builtin("power-defect", {}, 512)).f0();
    const std::size_t m = 32;
    std::vector<cplx> c(512, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
        const double re = g(rng);
        const double im = g(rng);
        c[k] = {re, im};
    }
    auto p = synthesize(FourierCoefficients(c));
    auto shifted = GridFunction::tabulate(512, [&](std::size_t k) { return f0[k] + p[k]; });
    CHECK(std::abs(hankel_norm(shifted, m) - hankel_norm(f0, m)) < 1e-12);
}

TEST_CASE("Hankel norm is nondecreasing in the truncation")
{
    auto f0 = build_scattering(builtin("power-defect", {}, 1024)).f0();
    auto curve = hankel_norm_curve(f0, {1, 2, 4, 8, 16, 32, 64, 128, 256});
    for (std::size_t i = 1; i < curve.size(); ++i)
        CHECK(curve[i].value >= curve[i - 1].value - 1e-14);
}

TEST_CASE("Nehari bound holds for every builtin")
{
    for (const auto& name : builtin_names()) {
        auto s = build_scattering(builtin(name, {}, 1024));
        INFO(name);
        CHECK(hankel_norm(s.f0(), 256) <= 1.0 + 1e-7);
    }
}

TEST_CASE("truncation limits")
{
    auto f = GridFunction::constant(64, 1.0);
    CHECK_NOTHROW(hankel_norm(f, 16));
    CHECK_THROWS_AS(hankel_norm(f, 17), ValidationError);
    CHECK_THROWS_AS(hankel_norm(f, 0), ValidationError);
    CHECK(max_truncation(2048) == 512);
}

TEST_CASE("f1 = conj(g)/g lies in the coset of f0 for r zeta")
{
    const double r = 0.5;
    CHECK(std::abs(nehari_distance(f1_symbol(r, 2048), 256) - r) < 1e-6);
    auto s = build_scattering(rz(r));
    CHECK(std::abs(hankel_norm(s.f0(), 256) - hankel_norm(f1_symbol(r, 2048), 256)) < 1e-6);
}

TEST_CASE("AAK resolvent identity")
{
    SUBCASE("phi = 0")
    {
        auto a = aak_resolvent_check(build_scattering(builtin("zero", {}, 256)), 32);
        CHECK(a.discrepancy < 1e-15);
        CHECK(std::abs(a.resolvent[0] - 1.0) < 1e-15);
        CHECK(a.gamma_norm == 0.0);
    }
    SUBCASE("phi = r zeta: x = e0 / (1 - r^2)")
    {
        auto a = aak_resolvent_check(build_scattering(rz(0.5)), 128);
        CHECK(a.discrepancy < 1e-6);
        CHECK(std::abs(a.resolvent[0] - 1.0 / 0.75) < 1e-12);
        CHECK(std::abs(a.condition_number - 1.0 / 0.75) < 1e-12);
    }
    SUBCASE("smooth outer factor converges in M")
    {
        auto s = build_scattering(builtin("rz-outer", {}, 2048));
        double prev = aak_resolvent_check(s, 4).discrepancy;
        for (std::size_t m : {8u, 16u, 32u}) {
            const double d = aak_resolvent_check(s, m).discrepancy;
            CHECK(d <= prev);
            prev = d;
        }
        CHECK(prev < 1e-10);
    }
    SUBCASE("near-unit norm is rejected")
    {
        try {
            aak_resolvent_check(build_scattering(builtin("rz", {{"r", "0.9999999"}}, 256)), 16);
            FAIL("expected not-strongly-contractive");
        } catch (const DegenerateError& e) {
            CHECK(e.code() == "not-strongly-contractive");
        }
    }
}

TEST_CASE("reproducing kernel check")
{
    CHECK(kernel_check(build_scattering(builtin("zero", {}, 256)), 32) < 1e-10);
    CHECK(kernel_check(build_scattering(rz(0.5)), 128) < 1e-7);
    CHECK(kernel_check(build_scattering(builtin("rz-outer", {}, 1024)), 64) < 1e-7);
}

TEST_CASE("Toeplitz invertibility proxies")
{
    auto one = toeplitz_invertibility(GridFunction::constant(256, 1.0), 32);
    CHECK(std::abs(one.min_singular - 1.0) < 1e-14);
    CHECK(one.unimodular);

    const double r = 0.5;
    for (std::size_t m : {16u, 32u, 64u}) {
        auto t = toeplitz_invertibility(f1_symbol(r, 1024), m);
        CHECK(t.min_singular >= std::sqrt(1.0 - r * r) - 0.05);
        CHECK(t.adjoint_kernel_score >= std::sqrt(1.0 - r * r) - 0.05);
        CHECK(t.unimodular);
    }

    // T_conj(zeta) kills the constants; its adjoint T_zeta is an isometry.
    auto back = toeplitz_invertibility(GridFunction::sample(256, [](cplx z) { return std::conj(z); }), 32);
    CHECK(back.min_singular < 1e-15);
    CHECK(std::abs(back.adjoint_kernel_score - 1.0) < 1e-14);
    auto fwd = toeplitz_invertibility(GridFunction::sample(256, [](cplx z) { return z; }), 32);
    CHECK(fwd.adjoint_kernel_score < 1e-15);

    CHECK_FALSE(toeplitz_invertibility(GridFunction::constant(64, 0.5), 8).unimodular);
}

TEST_CASE("contraction identity for a unimodular symbol")
{
    const std::size_t n = 1024;
    const std::size_t m = 64;
    auto v = f1_symbol(0.5, n);
    auto c = analyze(v);
    auto t = toeplitz_matrix(c, m, m);
    auto h = hankel_matrix(c, m);
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 5; ++trial) {
        Eigen::VectorXcd x = Eigen::VectorXcd::Zero(static_cast<int>(m));
        for (int k = 0; k < static_cast<int>(m / 2); ++k) {
            const double re = g(rng);
            const double im = g(rng);
            x(k) = cplx(re, im);
        }
        const double lhs = (t * x).squaredNorm() + (h * x).squaredNorm();
        CHECK(std::abs(lhs - x.squaredNorm()) < 1e-8 * x.squaredNorm());
    }
}
