#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "nehari/nehari.hpp"
#include "nehari/spectral.hpp"

namespace nehari {

// Largest truncation whose entries stay inside the grid's index range:
// a Hankel section of size M reads coefficients down to -(2M - 1).
std::size_t max_truncation(std::size_t grid_size) noexcept;
void require_truncation(std::size_t grid_size, std::size_t m);

// H[j,k] = c(-1-j-k), the matrix of x -> P-(F x) from span{1..zeta^{M-1}}
// onto span{conj(zeta)..conj(zeta)^M}.
Eigen::MatrixXcd hankel_matrix(const FourierCoefficients& c, std::size_t m);
Eigen::MatrixXcd hankel_matrix(const GridFunction& symbol, std::size_t m);

// T[j,k] = c(j-k) with `rows` rows and `cols` columns.
Eigen::MatrixXcd toeplitz_matrix(const FourierCoefficients& c, std::size_t rows, std::size_t cols);
Eigen::MatrixXcd toeplitz_matrix(const GridFunction& symbol, std::size_t m);

double hankel_norm(const GridFunction& symbol, std::size_t m);

struct TruncationPoint {
    std::size_t m;
    double value;
};

// One analysis, several truncations; entries evaluated concurrently.
std::vector<TruncationPoint> hankel_norm_curve(const GridFunction& symbol, const std::vector<std::size_t>& ms,
                                               Exec exec = default_exec());

// Lower bound for dist(F, H-infinity), increasing to it as m grows.
double nehari_distance(const GridFunction& f, std::size_t m);

struct AakCheck {
    double discrepancy = 0.0;
    double condition_number = 0.0; // of I - G*G
    double gamma_norm = 0.0;
    std::vector<cplx> resolvent;   // x solving (I - G*G) x = e0
};

inline constexpr double kStrictContractionMargin = 1e-6;

// Compares (I - G*G)^{-1} e0 with the Taylor coefficients of 1/(psi psi(0)).
AakCheck aak_resolvent_check(const ScatteringMatrix& s, std::size_t m);

// max over y = zeta^d, d <= m/2, of |<[psi y; P+(f0 y)], k> - y(0) psi(0)| for the
// kernel k = psi(0) [psi x; P+(f0 x)] built from the resolvent x.
double kernel_check(const ScatteringMatrix& s, std::size_t m, Exec exec = default_exec());

struct ToeplitzInvertibility {
    double min_singular = 0.0;         // sigma_min of the tall section of T_v
    double adjoint_kernel_score = 0.0; // sigma_min of the tall section of T_conj(v)
    bool unimodular = false;           // max||v|-1| < 1e-6
};

// Tall 2m x m sections so that the finite cut does not hide the action of the
// shift; requires m <= N/4.
ToeplitzInvertibility toeplitz_invertibility(const GridFunction& symbol, std::size_t m);

} // namespace nehari
