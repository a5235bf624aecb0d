#include "nehari/outer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "nehari/errors.hpp"

namespace nehari {

namespace {

constexpr int kFitRadius = 4;
constexpr double kMinSingularOrder = 1e-3;

std::size_t count_set(const ClipMask& m)
{
    return static_cast<std::size_t>(std::count_if(m.begin(), m.end(), [](std::uint8_t b) { return b != 0; }));
}

// log|zeta_k - zeta_j| and arg(1 - conj(zeta_j) zeta_k) for k != j.
// With t = 2 pi (k - j mod n) / n in (0, 2 pi): 1 - e^{it} = 2 sin(t/2) e^{i(t - pi)/2}.
struct FactorLog {
    double log_mod;
    double arg;
};

FactorLog factor_log(std::size_t n, std::size_t k, std::size_t j)
{
    const std::size_t d = (k + n - j) % n;
    const double t = grid_angle(n, d);
    return {std::log(2.0 * std::sin(0.5 * t)), 0.5 * (t - std::numbers::pi)};
}

struct SingularFit {
    std::size_t index;
    double order;
    double regular_value; // smooth part of u at the node
};

// Fits e_j = (u[k+j] + u[k-j]) / 2 = order * log|zeta_{k+j} - zeta_k| + c0 + c2 j^2 + c4 j^4
// on j = 1..4. Returns false when the node is not isolated.
bool fit_singularity(const RealGridFunction& u, const ClipMask& clipped, std::size_t k0, SingularFit& out)
{
    const std::size_t n = u.size();
    if (n < 4 * kFitRadius)
        return false;
    Eigen::Matrix4d a;
    Eigen::Vector4d rhs;
    for (int j = 1; j <= kFitRadius; ++j) {
        const std::size_t kp = (k0 + static_cast<std::size_t>(j)) % n;
        const std::size_t km = (k0 + n - static_cast<std::size_t>(j)) % n;
        if (clipped[kp] || clipped[km])
            return false;
        const double jj = static_cast<double>(j);
        a(j - 1, 0) = factor_log(n, kp, k0).log_mod;
        a(j - 1, 1) = 1.0;
        a(j - 1, 2) = jj * jj;
        a(j - 1, 3) = jj * jj * jj * jj;
        rhs(j - 1) = 0.5 * (u[kp] + u[km]);
    }
    const Eigen::Vector4d sol = a.fullPivLu().solve(rhs);
    if (!sol.allFinite() || std::abs(sol(0)) < kMinSingularOrder)
        return false;
    out = {k0, sol(0), sol(1)};
    return true;
}

} // namespace

// OuterFunction

OuterFunction::OuterFunction(GridFunction boundary, cplx value_at_zero, RealGridFunction log_modulus, ClipMask clipped,
                             std::vector<ExtractedSingularity> extracted)
    : boundary_(std::move(boundary)), value_at_zero_(value_at_zero), log_modulus_(std::move(log_modulus)),
      clipped_(std::move(clipped)), extracted_(std::move(extracted))
{
    if (boundary_.size() != log_modulus_.size() || clipped_.size() != boundary_.size())
        throw ValidationError("OuterFunction: inconsistent sizes");
}

std::size_t OuterFunction::clipped_count() const noexcept { return count_set(clipped_); }

OuterFunction outer_from_clipped_log_modulus(const RealGridFunction& u, const ClipMask& clipped)
{
    const std::size_t n = u.size();
    if (clipped.size() != n)
        throw ValidationError("clip mask size mismatch");

    std::vector<SingularFit> fits;
    for (std::size_t k = 0; k < n; ++k) {
        if (!clipped[k])
            continue;
        SingularFit f{};
        if (fit_singularity(u, clipped, k, f))
            fits.push_back(f);
    }

    // Regularized log-modulus v = u - sum order_i log|zeta - zeta_i|.
    std::vector<double> v(u.samples().begin(), u.samples().end());
    std::vector<double> phase_extra(n, 0.0);
    std::vector<std::uint8_t> is_node(n, 0);
    for (const auto& f : fits)
        is_node[f.index] = 1;
    for (const auto& f : fits)
        v[f.index] = f.regular_value;
    for (const auto& f : fits) {
        for (std::size_t k = 0; k < n; ++k) {
            if (k == f.index) {
                // One-sided limit of arg(1 - e^{it}) as t -> 0+.
                phase_extra[k] += -0.5 * std::numbers::pi * f.order;
                continue;
            }
            const auto fl = factor_log(n, k, f.index);
            phase_extra[k] += f.order * fl.arg;
            // Other extracted nodes keep the fitted regular value, which already
            // contains this factor's smooth contribution.
            if (!is_node[k])
                v[k] -= f.order * fl.log_mod;
        }
    }

    const RealGridFunction vr(v);
    const RealGridFunction vt = conjugate(vr);
    const double v_mean = mean(vr);

    std::vector<cplx> b(n);
    for (std::size_t k = 0; k < n; ++k)
        b[k] = std::polar(std::exp(u[k]), vt[k] + phase_extra[k]);

    std::vector<ExtractedSingularity> extracted;
    extracted.reserve(fits.size());
    for (const auto& f : fits)
        extracted.push_back({f.index, f.order});

    return OuterFunction(GridFunction(std::move(b)), cplx(std::exp(v_mean), 0.0), u, clipped, std::move(extracted));
}

OuterFunction outer_from_log_modulus(const std::vector<double>& u)
{
    require_grid_size(u.size());
    std::vector<double> uc(u.size());
    ClipMask clipped(u.size(), 0);
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double x = u[k];
        if (std::isnan(x) || x == std::numeric_limits<double>::infinity())
            throw ValidationError("log-modulus must not contain +inf or NaN (index " + std::to_string(k) + ")");
        if (x < kLogClipFloor) {
            uc[k] = kLogClipFloor;
            clipped[k] = 1;
        } else {
            uc[k] = x;
        }
    }
    return outer_from_clipped_log_modulus(RealGridFunction(std::move(uc)), clipped);
}

OuterFunction outer_from_log_modulus(const RealGridFunction& u)
{
    return outer_from_log_modulus(std::vector<double>(u.samples().begin(), u.samples().end()));
}

// SchurFunction

SchurFunction::SchurFunction(GridFunction phi, RealGridFunction defect_log, ClipMask clipped)
    : boundary_(std::move(phi)), defect_log_(std::move(defect_log)), clipped_(std::move(clipped))
{
}

SchurFunction SchurFunction::from_samples(GridFunction phi)
{
    const std::size_t n = phi.size();
    const double sup = phi.sup_norm();
    if (sup > 1.0 + 1e-9)
        throw ValidationError("generator exceeds the unit ball: max|phi| = " + std::to_string(sup));
    const cplx at_zero = mean(phi);
    if (std::abs(at_zero) > 1e-8)
        throw ValidationError("generator must vanish at 0, |phi(0)| = " + std::to_string(std::abs(at_zero)));

    std::vector<double> dl(n);
    ClipMask clipped(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        const double d = 1.0 - std::norm(phi[k]);
        if (d < kClipValue) {
            dl[k] = kLogClipFloor;
            clipped[k] = 1;
        } else {
            dl[k] = std::log(d);
        }
    }
    const double frac = static_cast<double>(count_set(clipped)) / static_cast<double>(n);
    if (frac >= kMaxClippedFraction)
        throw DegenerateError("not-log-integrable",
                              "defect vanishes on " + std::to_string(100.0 * frac) + "% of the grid");
    return SchurFunction(std::move(phi), RealGridFunction(std::move(dl)), std::move(clipped));
}

std::size_t SchurFunction::clipped_count() const noexcept { return count_set(clipped_); }

double SchurFunction::clipped_fraction() const noexcept
{
    return static_cast<double>(clipped_count()) / static_cast<double>(size());
}

SchurFunction SchurFunction::rotated(double c) const
{
    const cplx rot = std::polar(1.0, c);
    return SchurFunction(scale(boundary_, rot), defect_log_, clipped_);
}

OuterFunction defect_outer(const SchurFunction& phi)
{
    if (phi.clipped_fraction() >= kMaxClippedFraction)
        throw DegenerateError("not-log-integrable", "clipped defect measure too large");
    const auto& dl = phi.defect_log();
    auto u = RealGridFunction::tabulate(dl.size(), [&](std::size_t k) { return 0.5 * dl[k]; });
    return outer_from_clipped_log_modulus(u, phi.clipped());
}

OuterFunction reciprocal_outer(const OuterFunction& psi)
{
    const std::size_t n = psi.size();
    auto b = GridFunction::tabulate(n, [&](std::size_t k) { return 1.0 / psi.boundary()[k]; });
    auto u = RealGridFunction::tabulate(n, [&](std::size_t k) { return -psi.log_modulus()[k]; });
    auto ex = psi.extracted();
    for (auto& e : ex)
        e.order = -e.order;
    return OuterFunction(std::move(b), 1.0 / psi.value_at_zero(), std::move(u), psi.clipped(), std::move(ex));
}

} // namespace nehari
