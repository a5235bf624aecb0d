#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "nehari/generators.hpp"
#include "nehari/nehari.hpp"

namespace testing_support {

using nehari::cplx;

inline nehari::SchurFunction builtin(const std::string& name, const nehari::ParamMap& p = {}, std::size_t n = 2048)
{
    return nehari::make_builtin(name, p).sample(n);
}

inline nehari::SchurFunction rz(double r, std::size_t n = 2048)
{
    return builtin("rz", {{"r", std::to_string(r)}}, n);
}

inline double max_abs_diff(const nehari::GridFunction& a, const nehari::GridFunction& b)
{
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

// Random analytic polynomial of the given degree scaled to sup `radius` on the grid.
inline nehari::GridFunction random_ball_polynomial(std::size_t n, int degree, std::mt19937_64& rng, double radius)
{
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<cplx> c(n, 0.0);
    for (int k = 0; k <= degree; ++k) {
        const double re = g(rng);
        const double im = g(rng);
        c[static_cast<std::size_t>(k)] = {re, im};
    }
    auto p = nehari::synthesize(nehari::FourierCoefficients(std::move(c)));
    return nehari::scale(p, radius / p.sup_norm());
}

} // namespace testing_support
