#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nehari/nehari.hpp"
#include "nehari/outer.hpp"
#include "nehari/spectral.hpp"

namespace nehari {

struct TrivialCriterion {
    double value = 0.0;          // mean of 1/(1 - |phi|^2) over non-clipped nodes
    double clipped_fraction = 0.0;
    std::size_t grid_size = 0;
};

TrivialCriterion trivial_criterion(const SchurFunction& phi);

enum class Log4Verdict { trivial_criterion_holds, log4_favorable, inconclusive };

const char* to_string(Log4Verdict v) noexcept;

inline constexpr double kTrivialMassLimit = 1e6;

struct Log4Report {
    std::vector<double> n_grid;
    std::vector<double> head;             // integral of |h|^4 over |h| <= N
    std::vector<double> tail;             // integral of (log|h|)^4 over |h| > N
    std::vector<double> f_values;         // head * tail
    std::vector<double> corollary_values; // N^4 * tail
    std::vector<double> running_min;
    double best_n = 0.0;
    double mean_h2 = 0.0;
    Log4Verdict verdict = Log4Verdict::inconclusive;
};

// 16 geometric points from 2 to 1e6.
std::vector<double> default_log4_grid();

// Requires h_mod >= 1 - 1e-9 everywhere and a non-empty grid.
Log4Report log4_criterion(const RealGridFunction& h_mod, const std::vector<double>& n_grid);

struct StepModulus {
    std::vector<double> levels;
    std::vector<double> measures;          // nominal n^2 / N_n^2, scaled down if their sum exceeds 1/2
    std::vector<std::size_t> counts;       // grid nodes carrying each level
    std::vector<double> levelset_values;   // n = 1..L-1: |{|h| > N_n}| (N_n log N_{n+1})^4, bound 1/n^2
    std::vector<double> nontriv_values;    // n = 1..L: |{|h| = N_n}| N_n^2, bound n^2
    std::vector<double> gap_sum_ratio;     // n = 0..L-1: sum_{k>n} k^2/N_k^2 over (n+1)^2/N_{n+1}^2, bound 2
    std::vector<double> gap_growth_values; // n = 1..L-1, bound 1/(2 n^2)
    RealGridFunction realized;             // |h| on the grid, nested blocks centred at zeta = -1
};

// Throws ValidationError naming the first failing family and n.
StepModulus build_step_h(const std::vector<double>& levels, std::size_t grid_size);

// The left side is evaluated as ||P+(conj(zeta) conj(h) (g_n - conj(g_n)))||^2,
// which equals ||P+(conj(zeta) conj(h) g_n)||^2 whenever h g_n is analytic.
// On the grid h g_n is analytic only up to aliasing; that remainder,
// ||P+(conj(zeta h g_n))||, is reported as `aliasing`.
struct ApproxSequenceCheck {
    double p_plus_norm = 0.0;
    double j1 = 0.0;
    double j2 = 0.0;
    double bound = 0.0;       // 4 (J1 + J2)
    double max_gh = 0.0;      // max |g_n h|
    double aliasing = 0.0;
    bool chain_holds = false;
    bool side_condition_holds = false;
};

ApproxSequenceCheck approx_sequence_check(const OuterFunction& h, double n_cut);

struct DensityResidualCurve {
    std::vector<int> degrees;
    std::vector<double> residuals;
    double target_norm = 0.0;
    bool plateau = false;
};

std::vector<int> default_density_degrees();

// Least squares over span{1..zeta^d} in the product space, one QR for all
// degrees; requires every degree < N/4.
DensityResidualCurve density_residual(const ScatteringMatrix& s, const std::vector<int>& degrees);

} // namespace nehari
