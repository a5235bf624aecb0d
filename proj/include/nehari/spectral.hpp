#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "nehari/parallel.hpp"

// Discrete function spaces on the unit circle.
//
// A function on T is carried by its samples at the N-th roots of unity
// zeta_k = exp(2 pi i k / N). Integrals against normalized arc length are grid
// averages, which is exact for the trigonometric interpolant. Fourier indices
// live in [-N/2, N/2); the Nyquist index -N/2 belongs to the anti-analytic half.

namespace nehari {

using cplx = std::complex<double>;

inline constexpr std::size_t kMinGridSize = 8;
inline constexpr std::size_t kDefaultGridSize = 2048;

bool is_valid_grid_size(std::size_t n) noexcept;
// Throws ValidationError unless n >= 8 and n is a power of two.
void require_grid_size(std::size_t n);

// exp(2 pi i k / n), exact at the quarter points.
cplx grid_point(std::size_t n, std::size_t k) noexcept;
double grid_angle(std::size_t n, std::size_t k) noexcept;

class GridFunction {
public:
    explicit GridFunction(std::vector<cplx> samples);

    // Samples f(zeta_k) for k = 0..n-1.
    template <class F>
    static GridFunction sample(std::size_t n, F&& f, Exec exec = default_exec())
    {
        require_grid_size(n);
        std::vector<cplx> s(n);
        for_each_index(exec, n, [&](std::size_t k) { s[k] = f(grid_point(n, k)); });
        return GridFunction(std::move(s));
    }

    // Builds from an index-wise rule g(k).
    template <class G>
    static GridFunction tabulate(std::size_t n, G&& g, Exec exec = default_exec())
    {
        require_grid_size(n);
        std::vector<cplx> s(n);
        for_each_index(exec, n, [&](std::size_t k) { s[k] = g(k); });
        return GridFunction(std::move(s));
    }

    static GridFunction constant(std::size_t n, cplx value);

    std::size_t size() const noexcept { return samples_.size(); }
    cplx operator[](std::size_t k) const noexcept { return samples_[k]; }
    std::span<const cplx> samples() const noexcept { return samples_; }

    double sup_norm() const noexcept;

private:
    std::vector<cplx> samples_;
};

class RealGridFunction {
public:
    explicit RealGridFunction(std::vector<double> samples);

    template <class G>
    static RealGridFunction tabulate(std::size_t n, G&& g, Exec exec = default_exec())
    {
        require_grid_size(n);
        std::vector<double> s(n);
        for_each_index(exec, n, [&](std::size_t k) { s[k] = g(k); });
        return RealGridFunction(std::move(s));
    }

    std::size_t size() const noexcept { return samples_.size(); }
    double operator[](std::size_t k) const noexcept { return samples_[k]; }
    std::span<const double> samples() const noexcept { return samples_; }

    GridFunction as_complex() const;

private:
    std::vector<double> samples_;
};

// Accepts a complex grid function whose imaginary parts are all within tol.
RealGridFunction to_real(const GridFunction& f, double tol = 1e-12);

class FourierCoefficients {
public:
    // Coefficients in FFT storage order: slot m holds index m for m < N/2 and
    // index m - N otherwise.
    explicit FourierCoefficients(std::vector<cplx> fft_ordered);

    std::size_t grid_size() const noexcept { return coeffs_.size(); }
    int min_index() const noexcept { return -static_cast<int>(coeffs_.size() / 2); }
    int max_index() const noexcept { return static_cast<int>(coeffs_.size() / 2) - 1; }

    // Index n in [-N/2, N/2).
    cplx at(int n) const;
    cplx& at(int n);
    std::span<const cplx> fft_ordered() const noexcept { return coeffs_; }

    // Coefficients for n = -N/2 .. N/2-1.
    std::vector<cplx> centered() const;

    double l2_norm() const noexcept;

private:
    std::size_t slot(int n) const;
    std::vector<cplx> coeffs_;
};

FourierCoefficients analyze(const GridFunction& f);
FourierCoefficients analyze(const RealGridFunction& f);
GridFunction synthesize(const FourierCoefficients& c);

// P+ keeps n >= 0, P- keeps n < 0. P+ f + P- f = f coefficient-wise.
GridFunction riesz_plus(const GridFunction& f);
GridFunction riesz_minus(const GridFunction& f);

// Harmonic conjugate: Fourier multiplier -i sgn(n). The Nyquist coefficient
// is dropped so that real input stays real.
RealGridFunction conjugate(const RealGridFunction& u);

cplx mean(const GridFunction& f) noexcept;
double mean(const RealGridFunction& f) noexcept;

// (mean |f|^p)^(1/p).
double lp_norm(const GridFunction& f, double p);
double lp_norm(const RealGridFunction& f, double p);
double l2_norm(const GridFunction& f) noexcept;

// <f, g> = mean(f conj(g)).
cplx inner(const GridFunction& f, const GridFunction& g);

// Harmonic extension of the trigonometric interpolant to |z| < 1.
cplx poisson_eval(const GridFunction& f, cplx z);

// Pointwise helpers used throughout the library.
GridFunction multiply(const GridFunction& a, const GridFunction& b);
GridFunction conj(const GridFunction& f);
GridFunction subtract(const GridFunction& a, const GridFunction& b);
GridFunction scale(const GridFunction& f, cplx s);

} // namespace nehari
