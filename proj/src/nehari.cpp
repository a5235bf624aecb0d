#include "nehari/nehari.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "nehari/errors.hpp"

namespace nehari {

ScatteringMatrix::ScatteringMatrix(SchurFunction phi, OuterFunction psi, GridFunction f0)
    : phi_(std::move(phi)), psi_(std::move(psi)), f0_(std::move(f0))
{
    if (phi_.size() != psi_.size() || phi_.size() != f0_.size())
        throw ValidationError("ScatteringMatrix: inconsistent grid sizes");
}

ScatteringMatrix build_scattering(const SchurFunction& phi)
{
    OuterFunction psi = defect_outer(phi);
    const auto& p = phi.boundary();
    const auto& q = psi.boundary();
    // psi / conj(psi) = (psi / |psi|)^2, which stays well defined where |psi| is tiny.
    auto f0 = GridFunction::tabulate(phi.size(), [&](std::size_t k) {
        const double m = std::abs(q[k]);
        const cplx u = m > 0.0 ? q[k] / m : cplx(1.0, 0.0);
        return -std::conj(p[k]) * u * u;
    });
    return ScatteringMatrix(phi, std::move(psi), std::move(f0));
}

double unitarity_residual(const ScatteringMatrix& s)
{
    const auto& a = s.phi().boundary();
    const auto& b = s.psi().boundary();
    const auto& d = s.f0();
    double worst = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s.phi().is_clipped(k))
            continue;
        // S = [[a, b], [b, d]]; S*S = [[|a|^2+|b|^2, conj(a) b + conj(b) d], [.., |b|^2+|d|^2]].
        const double e11 = std::norm(a[k]) + std::norm(b[k]) - 1.0;
        const double e22 = std::norm(b[k]) + std::norm(d[k]) - 1.0;
        const cplx e12 = std::conj(a[k]) * b[k] + std::conj(b[k]) * d[k];
        const double fro = std::sqrt(e11 * e11 + e22 * e22 + 2.0 * std::norm(e12));
        worst = std::max(worst, fro);
    }
    return worst;
}

NehariSolution solve(const ScatteringMatrix& s, const GridFunction& eps, Exec exec)
{
    const std::size_t n = s.size();
    if (eps.size() != n)
        throw ValidationError("epsilon grid size mismatch");
    const double sup = eps.sup_norm();
    if (sup > 1.0 + 1e-12)
        throw ValidationError("epsilon leaves the closed unit disc: max|eps| = " + std::to_string(sup));

    const auto& phi = s.phi().boundary();
    const auto& psi = s.psi().boundary();
    const auto& f0 = s.f0();

    std::vector<cplx> den(n);
    ClipMask degenerate(n, 0);
    for_each_index(exec, n, [&](std::size_t k) {
        cplx d = 1.0 - phi[k] * eps[k];
        const double m = std::abs(d);
        if (m < kDenominatorFloor) {
            degenerate[k] = 1;
            d = m > 0.0 ? d * (kDenominatorFloor / m) : cplx(kDenominatorFloor, 0.0);
        }
        den[k] = d;
    });
    std::size_t bad = 0;
    for (auto b : degenerate)
        bad += b;
    if (static_cast<double>(bad) > kMaxDegenerateFraction * static_cast<double>(n))
        throw DegenerateError("degenerate-denominator",
                              "|1 - phi eps| < 1e-12 on " + std::to_string(bad) + " of " + std::to_string(n) + " nodes");

    auto amp = GridFunction::tabulate(n, [&](std::size_t k) { return psi[k] / den[k]; }, exec);
    auto f = GridFunction::tabulate(n, [&](std::size_t k) { return f0[k] + psi[k] * amp[k] * eps[k]; }, exec);

    const double anti = l2_norm(riesz_minus(eps));
    return NehariSolution{std::move(f), std::move(amp), eps, std::move(degenerate), bad, anti, anti > 1e-6};
}

std::vector<NehariSolution> solve_batch(const ScatteringMatrix& s, std::span<const GridFunction> eps, Exec exec)
{
    std::vector<std::optional<NehariSolution>> slots(eps.size());
    for_each_index(exec, eps.size(), [&](std::size_t i) { slots[i].emplace(solve(s, eps[i], Exec::serial)); });
    std::vector<NehariSolution> out;
    out.reserve(eps.size());
    for (auto& x : slots)
        out.push_back(std::move(*x));
    return out;
}

double amplitude_identity_residual(const ScatteringMatrix& s, const NehariSolution& sol)
{
    double worst = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s.phi().is_clipped(k) || sol.degenerate[k])
            continue;
        const double lhs = 1.0 - std::norm(sol.f[k]);
        const double rhs = std::norm(sol.amplitude[k]) * (1.0 - std::norm(sol.epsilon[k]));
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

SchurFunction counterexample_from_inner(const GridFunction& delta)
{
    double dev = 0.0;
    for (const auto& z : delta.samples())
        dev = std::max(dev, std::abs(std::abs(z) - 1.0));
    if (dev > 1e-8)
        throw ValidationError("Delta is not inner on the grid: max||Delta|-1| = " + std::to_string(dev));
    const cplx at_zero = mean(delta);
    if (std::abs(at_zero.imag()) > 1e-8 || at_zero.real() <= 1e-8)
        throw ValidationError("Delta(0) must be real and positive, got (" + std::to_string(at_zero.real()) + ", " +
                              std::to_string(at_zero.imag()) + ")");
    const double d0 = at_zero.real();
    auto phi = GridFunction::tabulate(delta.size(), [&](std::size_t k) { return (delta[k] - d0) / (1.0 + d0); });
    return SchurFunction::from_samples(std::move(phi));
}

double coset_residual_zero_test(const ScatteringMatrix& s) { return l2_norm(riesz_minus(s.f0())); }

} // namespace nehari
