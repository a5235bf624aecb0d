#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "nehari/outer.hpp"
#include "nehari/parallel.hpp"
#include "nehari/spectral.hpp"

namespace nehari {

struct Arc {
    std::size_t start;
    std::size_t length;
    int level;
};

// Dyadic arcs of the grid at levels 0..depth; level l splits the circle into
// 2^l arcs starting at index 0.
class ArcFamily {
public:
    static constexpr std::size_t kMinArcPoints = 4;

    // Throws ValidationError if the finest level would hold fewer than 4 points.
    static ArcFamily dyadic(std::size_t grid_size, int depth);

    std::size_t grid_size() const noexcept { return grid_size_; }
    int depth() const noexcept { return depth_; }
    const std::vector<Arc>& arcs() const noexcept { return arcs_; }

private:
    ArcFamily(std::size_t n, int depth, std::vector<Arc> arcs);

    std::size_t grid_size_;
    int depth_;
    std::vector<Arc> arcs_;
};

// Deepest level the grid supports.
int max_arc_depth(std::size_t grid_size) noexcept;

struct A2Report {
    double statistic = 0.0;
    std::size_t worst_arc = 0;
    std::vector<double> per_level_max;
    std::vector<double> arc_values; // aligned with ArcFamily::arcs()
    double clipped_fraction = 0.0;
};

inline constexpr double kWeightClipLow = 1e-13;
inline constexpr double kWeightClipHigh = 1e13;

// sup over arcs of <w>_I <1/w>_I. Nodes with w outside [1e-13, 1e13] are left
// out of both averages; an arc with no usable node scores +inf.
A2Report scalar_a2(const RealGridFunction& w, const ArcFamily& arcs, Exec exec = default_exec());

// sup over arcs of the average of (|f - <f>_I|^2 + 1 - |<f>_I|^2) / (1 - |f|^2).
// <f>_I runs over the whole arc; the outer average skips defect-clipped nodes.
A2Report symbol_a2_kind(const GridFunction& f, const ArcFamily& arcs, Exec exec = default_exec());
A2Report matrix_a2_scalar_form(const SchurFunction& phi, const ArcFamily& arcs, Exec exec = default_exec());

// A contact |1 - e^{ic} phi| below this floor is a Poisson peak far narrower
// than the grid spacing; its node carries no usable quadrature weight.
inline constexpr double kRotationFloor = 1e-6;

struct WeightSamples {
    RealGridFunction w;
    ClipMask excluded; // floored nodes; w is set to 0 there
    std::size_t floored = 0;
};

// w_c = (1 - |phi|^2) / |1 - e^{ic} phi|^2. Defect-clipped nodes keep their
// (tiny) value; floored nodes are excluded.
WeightSamples rotated_weight(const SchurFunction& phi, double c, Exec exec = default_exec());
RealGridFunction strong_regularity_weight(const SchurFunction& phi);

struct RotationRow {
    double c = 0.0;
    A2Report report;
    double singular_mass = 0.0; // 1 - mean(w_c) over the non-excluded nodes
    std::size_t floored = 0;
};

std::vector<RotationRow> rotation_sweep(const SchurFunction& phi, const std::vector<double>& c_values,
                                        const ArcFamily& arcs, Exec exec = default_exec());

// c_k = 2 pi k / count.
std::vector<double> uniform_c_grid(std::size_t count);

struct FormProbe {
    double max_ratio = 0.0;    // max(random_max, subspace_sup)
    double random_max = 0.0;
    double subspace_sup = 0.0; // generalized eigenvalue over all degree <= M pairs
    std::size_t trials = 0;
    std::size_t skipped = 0;
    std::size_t truncation = 0;
};

inline constexpr std::size_t kDefaultFormTrials = 200;

// Ratio <W^{-1} P+X, P+X> / <W^{-1} X, X> for 2-vector trigonometric
// polynomials X of degree <= M, W^{-1} = [[1, -phi], [-conj(phi), 1]] / (1 - |phi|^2).
// Needs M < N/4; clipped nodes carry zero weight.
FormProbe matrix_a2_form_test(const SchurFunction& phi, std::size_t trials, std::size_t m, std::uint64_t seed,
                              Exec exec = default_exec());

struct HelsonSzegoPair {
    double a2_statistic = 0.0;
    double hankel_norm = 0.0;
};

// Builds the outer h with |h|^2 = w and returns (scalar A2 of w, ||Gamma_{conj(h)/h}|| at M).
HelsonSzegoPair helson_szego_crosscheck(const RealGridFunction& w, std::size_t m, const ArcFamily& arcs);

struct LadderPoint {
    int depth;
    std::size_t grid_size;
    A2Report report;
};

// Refinement ladder: depth D is evaluated on a grid of base_points * 2^D nodes
// so the finest arc always holds base_points nodes.
std::vector<LadderPoint> depth_ladder(const std::function<A2Report(std::size_t, const ArcFamily&)>& probe,
                                      int d_min, int d_max, std::size_t base_points = 16);

} // namespace nehari
