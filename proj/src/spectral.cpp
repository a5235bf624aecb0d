#include "nehari/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <unsupported/Eigen/FFT>

#include "nehari/errors.hpp"

namespace nehari {

namespace {

// Eigen::FFT caches plans internally, so each call gets its own instance.
std::vector<cplx> fft_forward(std::span<const cplx> in)
{
    Eigen::FFT<double> fft;
    std::vector<cplx> src(in.begin(), in.end());
    std::vector<cplx> out;
    fft.fwd(out, src);
    return out;
}

std::vector<cplx> fft_inverse(std::span<const cplx> in)
{
    Eigen::FFT<double> fft;
    std::vector<cplx> src(in.begin(), in.end());
    std::vector<cplx> out;
    fft.inv(out, src); // scaled by 1/N
    return out;
}

void require_same_size(std::size_t a, std::size_t b)
{
    if (a != b)
        throw ValidationError("grid size mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

} // namespace

bool is_valid_grid_size(std::size_t n) noexcept
{
    return n >= kMinGridSize && (n & (n - 1)) == 0;
}

void require_grid_size(std::size_t n)
{
    if (!is_valid_grid_size(n))
        throw ValidationError("grid size must be a power of two >= 8, got " + std::to_string(n));
}

double grid_angle(std::size_t n, std::size_t k) noexcept
{
    return 2.0 * std::numbers::pi * static_cast<double>(k % n) / static_cast<double>(n);
}

cplx grid_point(std::size_t n, std::size_t k) noexcept
{
    k %= n;
    if (n % 4 == 0) {
        const std::size_t q = n / 4;
        if (k == 0)
            return {1.0, 0.0};
        if (k == q)
            return {0.0, 1.0};
        if (k == 2 * q)
            return {-1.0, 0.0};
        if (k == 3 * q)
            return {0.0, -1.0};
    }
    return std::polar(1.0, grid_angle(n, k));
}

// GridFunction

GridFunction::GridFunction(std::vector<cplx> samples) : samples_(std::move(samples))
{
    require_grid_size(samples_.size());
    for (std::size_t k = 0; k < samples_.size(); ++k) {
        if (!std::isfinite(samples_[k].real()) || !std::isfinite(samples_[k].imag()))
            throw ValidationError("non-finite sample at index " + std::to_string(k));
    }
}

GridFunction GridFunction::constant(std::size_t n, cplx value)
{
    require_grid_size(n);
    return GridFunction(std::vector<cplx>(n, value));
}

double GridFunction::sup_norm() const noexcept
{
    double m = 0.0;
    for (const auto& z : samples_)
        m = std::max(m, std::abs(z));
    return m;
}

RealGridFunction::RealGridFunction(std::vector<double> samples) : samples_(std::move(samples))
{
    require_grid_size(samples_.size());
    for (std::size_t k = 0; k < samples_.size(); ++k) {
        if (!std::isfinite(samples_[k]))
            throw ValidationError("non-finite sample at index " + std::to_string(k));
    }
}

GridFunction RealGridFunction::as_complex() const
{
    std::vector<cplx> s(samples_.begin(), samples_.end());
    return GridFunction(std::move(s));
}

RealGridFunction to_real(const GridFunction& f, double tol)
{
    std::vector<double> s(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (std::abs(f[k].imag()) > tol)
            throw ValidationError("expected a real function, sample " + std::to_string(k) + " has imaginary part " +
                                  std::to_string(f[k].imag()));
        s[k] = f[k].real();
    }
    return RealGridFunction(std::move(s));
}

// FourierCoefficients

FourierCoefficients::FourierCoefficients(std::vector<cplx> fft_ordered) : coeffs_(std::move(fft_ordered))
{
    require_grid_size(coeffs_.size());
}

std::size_t FourierCoefficients::slot(int n) const
{
    if (n < min_index() || n > max_index())
        throw ValidationError("Fourier index " + std::to_string(n) + " outside [" + std::to_string(min_index()) +
                              ", " + std::to_string(max_index()) + "]");
    return n >= 0 ? static_cast<std::size_t>(n) : static_cast<std::size_t>(n + static_cast<int>(coeffs_.size()));
}

cplx FourierCoefficients::at(int n) const { return coeffs_[slot(n)]; }
cplx& FourierCoefficients::at(int n) { return coeffs_[slot(n)]; }

std::vector<cplx> FourierCoefficients::centered() const
{
    std::vector<cplx> out;
    out.reserve(coeffs_.size());
    for (int n = min_index(); n <= max_index(); ++n)
        out.push_back(at(n));
    return out;
}

double FourierCoefficients::l2_norm() const noexcept
{
    double s = 0.0;
    for (const auto& c : coeffs_)
        s += std::norm(c);
    return std::sqrt(s);
}

FourierCoefficients analyze(const GridFunction& f)
{
    auto out = fft_forward(f.samples());
    const double inv_n = 1.0 / static_cast<double>(f.size());
    for (auto& c : out)
        c *= inv_n;
    return FourierCoefficients(std::move(out));
}

FourierCoefficients analyze(const RealGridFunction& f) { return analyze(f.as_complex()); }

GridFunction synthesize(const FourierCoefficients& c)
{
    auto out = fft_inverse(c.fft_ordered());
    const double n = static_cast<double>(c.grid_size());
    for (auto& z : out)
        z *= n;
    return GridFunction(std::move(out));
}

namespace {

GridFunction keep_half(const GridFunction& f, bool analytic)
{
    auto c = analyze(f);
    std::vector<cplx> v(c.fft_ordered().begin(), c.fft_ordered().end());
    const std::size_t half = v.size() / 2;
    for (std::size_t m = 0; m < v.size(); ++m) {
        const bool nonneg = m < half;
        if (nonneg != analytic)
            v[m] = 0.0;
    }
    return synthesize(FourierCoefficients(std::move(v)));
}

} // namespace

GridFunction riesz_plus(const GridFunction& f) { return keep_half(f, true); }
GridFunction riesz_minus(const GridFunction& f) { return keep_half(f, false); }

RealGridFunction conjugate(const RealGridFunction& u)
{
    auto c = analyze(u);
    std::vector<cplx> v(c.fft_ordered().begin(), c.fft_ordered().end());
    const std::size_t n = v.size();
    const std::size_t half = n / 2;
    v[0] = 0.0;
    v[half] = 0.0;
    for (std::size_t m = 1; m < half; ++m) {
        v[m] *= cplx(0.0, -1.0);
        v[n - m] *= cplx(0.0, 1.0);
    }
    auto out = synthesize(FourierCoefficients(std::move(v)));
    std::vector<double> re(n);
    for (std::size_t k = 0; k < n; ++k)
        re[k] = out[k].real();
    return RealGridFunction(std::move(re));
}

cplx mean(const GridFunction& f) noexcept
{
    cplx s = 0.0;
    for (const auto& z : f.samples())
        s += z;
    return s / static_cast<double>(f.size());
}

double mean(const RealGridFunction& f) noexcept
{
    double s = 0.0;
    for (double x : f.samples())
        s += x;
    return s / static_cast<double>(f.size());
}

double lp_norm(const GridFunction& f, double p)
{
    if (!(p >= 1.0))
        throw ValidationError("lp_norm requires p >= 1");
    double s = 0.0;
    for (const auto& z : f.samples())
        s += std::pow(std::abs(z), p);
    return std::pow(s / static_cast<double>(f.size()), 1.0 / p);
}

double lp_norm(const RealGridFunction& f, double p) { return lp_norm(f.as_complex(), p); }

double l2_norm(const GridFunction& f) noexcept
{
    double s = 0.0;
    for (const auto& z : f.samples())
        s += std::norm(z);
    return std::sqrt(s / static_cast<double>(f.size()));
}

cplx inner(const GridFunction& f, const GridFunction& g)
{
    require_same_size(f.size(), g.size());
    cplx s = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k)
        s += f[k] * std::conj(g[k]);
    return s / static_cast<double>(f.size());
}

cplx poisson_eval(const GridFunction& f, cplx z)
{
    if (!(std::abs(z) < 1.0))
        throw ValidationError("poisson_eval needs |z| < 1");
    const auto c = analyze(f);
    cplx acc = 0.0;
    cplx zp = 1.0;
    for (int n = 0; n <= c.max_index(); ++n) {
        acc += c.at(n) * zp;
        zp *= z;
    }
    const cplx zb = std::conj(z);
    cplx zbp = zb;
    for (int n = -1; n >= c.min_index(); --n) {
        acc += c.at(n) * zbp;
        zbp *= zb;
    }
    return acc;
}

GridFunction multiply(const GridFunction& a, const GridFunction& b)
{
    require_same_size(a.size(), b.size());
    return GridFunction::tabulate(a.size(), [&](std::size_t k) { return a[k] * b[k]; });
}

GridFunction conj(const GridFunction& f)
{
    return GridFunction::tabulate(f.size(), [&](std::size_t k) { return std::conj(f[k]); });
}

GridFunction subtract(const GridFunction& a, const GridFunction& b)
{
    require_same_size(a.size(), b.size());
    return GridFunction::tabulate(a.size(), [&](std::size_t k) { return a[k] - b[k]; });
}

GridFunction scale(const GridFunction& f, cplx s)
{
    return GridFunction::tabulate(f.size(), [&](std::size_t k) { return f[k] * s; });
}

} // namespace nehari
