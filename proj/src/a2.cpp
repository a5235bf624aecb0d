#include "nehari/a2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "nehari/errors.hpp"
#include "nehari/hankel.hpp"

namespace nehari {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Per-arc values -> report. Reduction order is fixed, so it does not depend
// on how the arc values were produced.
A2Report assemble(const ArcFamily& arcs, std::vector<double> values, double clipped_fraction)
{
    A2Report r;
    r.per_level_max.assign(static_cast<std::size_t>(arcs.depth() + 1), 0.0);
    r.statistic = -kInf;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto lvl = static_cast<std::size_t>(arcs.arcs()[i].level);
        r.per_level_max[lvl] = std::max(r.per_level_max[lvl], values[i]);
        if (values[i] > r.statistic) {
            r.statistic = values[i];
            r.worst_arc = i;
        }
    }
    r.arc_values = std::move(values);
    r.clipped_fraction = clipped_fraction;
    return r;
}

void require_family(const ArcFamily& arcs, std::size_t n)
{
    if (arcs.grid_size() != n)
        throw ValidationError("arc family built for grid " + std::to_string(arcs.grid_size()) + ", data has " +
                              std::to_string(n));
}

double fraction(const ClipMask& m)
{
    std::size_t c = 0;
    for (auto b : m)
        c += b;
    return static_cast<double>(c) / static_cast<double>(m.size());
}

} // namespace

// ArcFamily

ArcFamily::ArcFamily(std::size_t n, int depth, std::vector<Arc> arcs)
    : grid_size_(n), depth_(depth), arcs_(std::move(arcs))
{
}

int max_arc_depth(std::size_t grid_size) noexcept
{
    int d = 0;
    while ((grid_size >> (d + 1)) >= ArcFamily::kMinArcPoints)
        ++d;
    return d;
}

ArcFamily ArcFamily::dyadic(std::size_t grid_size, int depth)
{
    require_grid_size(grid_size);
    if (depth < 0 || depth > max_arc_depth(grid_size))
        throw ValidationError("arc depth " + std::to_string(depth) + " outside [0, " +
                              std::to_string(max_arc_depth(grid_size)) + "] for grid " + std::to_string(grid_size));
    std::vector<Arc> arcs;
    for (int l = 0; l <= depth; ++l) {
        const std::size_t len = grid_size >> l;
        for (std::size_t s = 0; s < grid_size; s += len)
            arcs.push_back({s, len, l});
    }
    return ArcFamily(grid_size, depth, std::move(arcs));
}

// Scalar A2

A2Report scalar_a2(const RealGridFunction& w, const ArcFamily& arcs, Exec exec)
{
    const std::size_t n = w.size();
    require_family(arcs, n);
    ClipMask out(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        if (w[k] < 0.0)
            throw ValidationError("weight is negative at index " + std::to_string(k));
        out[k] = (w[k] < kWeightClipLow || w[k] > kWeightClipHigh) ? 1 : 0;
    }
    const auto& list = arcs.arcs();
    std::vector<double> values(list.size());
    for_each_index(exec, list.size(), [&](std::size_t i) {
        double sw = 0.0;
        double si = 0.0;
        std::size_t cnt = 0;
        for (std::size_t k = list[i].start; k < list[i].start + list[i].length; ++k) {
            if (out[k])
                continue;
            sw += w[k];
            si += 1.0 / w[k];
            ++cnt;
        }
        const double c = static_cast<double>(cnt);
        values[i] = cnt == 0 ? kInf : (sw / c) * (si / c);
    });
    return assemble(arcs, std::move(values), fraction(out));
}

// Matrix form, scalar reduction

A2Report symbol_a2_kind(const GridFunction& f, const ArcFamily& arcs, Exec exec)
{
    const std::size_t n = f.size();
    require_family(arcs, n);
    const double sup = f.sup_norm();
    if (sup > 1.0 + 1e-9)
        throw ValidationError("symbol leaves the unit ball: max|f| = " + std::to_string(sup));
    std::vector<double> defect(n);
    ClipMask out(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        defect[k] = 1.0 - std::norm(f[k]);
        out[k] = defect[k] < kClipValue ? 1 : 0;
    }
    const auto& list = arcs.arcs();
    std::vector<double> values(list.size());
    for_each_index(exec, list.size(), [&](std::size_t i) {
        const std::size_t b = list[i].start;
        const std::size_t e = b + list[i].length;
        cplx avg = 0.0;
        for (std::size_t k = b; k < e; ++k)
            avg += f[k];
        avg /= static_cast<double>(list[i].length);
        const double base = 1.0 - std::norm(avg);
        double s = 0.0;
        std::size_t cnt = 0;
        for (std::size_t k = b; k < e; ++k) {
            if (out[k])
                continue;
            s += (std::norm(f[k] - avg) + base) / defect[k];
            ++cnt;
        }
        values[i] = cnt == 0 ? kInf : s / static_cast<double>(cnt);
    });
    return assemble(arcs, std::move(values), fraction(out));
}

A2Report matrix_a2_scalar_form(const SchurFunction& phi, const ArcFamily& arcs, Exec exec)
{
    return symbol_a2_kind(phi.boundary(), arcs, exec);
}

// Weights

WeightSamples rotated_weight(const SchurFunction& phi, double c, Exec exec)
{
    const std::size_t n = phi.size();
    const cplx rot = std::polar(1.0, c);
    const auto& p = phi.boundary();
    ClipMask excluded(n, 0);
    std::vector<double> w(n);
    for_each_index(exec, n, [&](std::size_t k) {
        const double den = std::abs(1.0 - rot * p[k]);
        if (den < kRotationFloor) {
            w[k] = 0.0;
            excluded[k] = 1;
            return;
        }
        w[k] = std::max(1.0 - std::norm(p[k]), 0.0) / (den * den);
    });
    const auto floored = static_cast<std::size_t>(std::count(excluded.begin(), excluded.end(), 1));
    return {RealGridFunction(std::move(w)), std::move(excluded), floored};
}

RealGridFunction strong_regularity_weight(const SchurFunction& phi) { return rotated_weight(phi, 0.0).w; }

std::vector<double> uniform_c_grid(std::size_t count)
{
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k)
        out[k] = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
    return out;
}

std::vector<RotationRow> rotation_sweep(const SchurFunction& phi, const std::vector<double>& c_values,
                                        const ArcFamily& arcs, Exec exec)
{
    require_family(arcs, phi.size());
    std::vector<RotationRow> rows(c_values.size());
    for_each_index(exec, c_values.size(), [&](std::size_t i) {
        auto ws = rotated_weight(phi, c_values[i], Exec::serial);
        double s = 0.0;
        std::size_t cnt = 0;
        for (std::size_t k = 0; k < ws.w.size(); ++k) {
            if (ws.excluded[k])
                continue;
            s += ws.w[k];
            ++cnt;
        }
        RotationRow r;
        r.c = c_values[i];
        r.report = scalar_a2(ws.w, arcs, Exec::serial);
        r.singular_mass = cnt == 0 ? 1.0 : 1.0 - s / static_cast<double>(cnt);
        r.floored = ws.floored;
        rows[i] = std::move(r);
    });
    return rows;
}

// Quadratic-form probe

FormProbe matrix_a2_form_test(const SchurFunction& phi, std::size_t trials, std::size_t m, std::uint64_t seed,
                              Exec exec)
{
    const std::size_t n = phi.size();
    if (m < 1 || 4 * m >= n)
        throw ValidationError("form probe degree must satisfy 1 <= M < N/4, got M=" + std::to_string(m) +
                              " on grid " + std::to_string(n));
    const auto& p = phi.boundary();
    auto a = GridFunction::tabulate(n, [&](std::size_t k) {
        return phi.is_clipped(k) ? cplx(0.0, 0.0) : cplx(1.0 / (1.0 - std::norm(p[k])), 0.0);
    });
    auto b = GridFunction::tabulate(n, [&](std::size_t k) { return -p[k] * a[k]; });
    const auto ac = analyze(a);
    const auto bc = analyze(b);

    const int mi = static_cast<int>(m);
    const int kk = 2 * mi + 1;
    Eigen::MatrixXcd gram(2 * kk, 2 * kk);
    for (int i = 0; i < kk; ++i) {
        for (int j = 0; j < kk; ++j) {
            const int d = i - j; // frequencies run -M..M, so k_i - k_j = i - j
            gram(i, j) = ac.at(d);
            gram(i, kk + j) = bc.at(d);
            gram(kk + i, j) = std::conj(bc.at(-d));
            gram(kk + i, kk + j) = ac.at(d);
        }
    }
    // P+ keeps frequencies >= 0, i.e. local index >= M in each block.
    Eigen::MatrixXcd proj = gram;
    for (int i = 0; i < 2 * kk; ++i) {
        if (i % kk >= mi)
            continue;
        proj.row(i).setZero();
        proj.col(i).setZero();
    }

    FormProbe out;
    out.truncation = m;
    out.trials = trials;

    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> ges(proj, gram, Eigen::EigenvaluesOnly);
    out.subspace_sup = ges.info() == Eigen::Success ? ges.eigenvalues().maxCoeff()
                                                    : std::numeric_limits<double>::quiet_NaN();

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    std::vector<Eigen::VectorXcd> xs(trials, Eigen::VectorXcd(2 * kk));
    for (auto& x : xs)
        for (int i = 0; i < 2 * kk; ++i) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            x(i) = cplx(re, im);
        }
    std::vector<double> ratio(trials, -1.0);
    for_each_index(exec, trials, [&](std::size_t t) {
        const double den = xs[t].dot(gram * xs[t]).real();
        if (!(den >= 1e-12))
            return;
        ratio[t] = xs[t].dot(proj * xs[t]).real() / den;
    });
    out.random_max = 0.0;
    for (double r : ratio) {
        if (r < 0.0)
            ++out.skipped;
        else
            out.random_max = std::max(out.random_max, r);
    }
    out.max_ratio = std::isnan(out.subspace_sup) ? out.random_max : std::max(out.random_max, out.subspace_sup);
    return out;
}

// Helson-Szego

HelsonSzegoPair helson_szego_crosscheck(const RealGridFunction& w, std::size_t m, const ArcFamily& arcs)
{
    const std::size_t n = w.size();
    ClipMask mask(n, 0);
    std::vector<double> u(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (w[k] < 0.0)
            throw ValidationError("weight is negative at index " + std::to_string(k));
        double x = w[k];
        if (x < kWeightClipLow || x > kWeightClipHigh) {
            mask[k] = 1;
            x = std::clamp(x, kWeightClipLow, kWeightClipHigh);
        }
        u[k] = 0.5 * std::log(x);
    }
    const OuterFunction h = outer_from_clipped_log_modulus(RealGridFunction(std::move(u)), mask);
    const auto& hb = h.boundary();
    auto sym = GridFunction::tabulate(n, [&](std::size_t k) {
        const cplx unit = hb[k] / std::abs(hb[k]);
        return std::conj(unit * unit);
    });
    HelsonSzegoPair out;
    out.a2_statistic = scalar_a2(w, arcs).statistic;
    out.hankel_norm = hankel_norm(sym, m);
    return out;
}

// Ladder

std::vector<LadderPoint> depth_ladder(const std::function<A2Report(std::size_t, const ArcFamily&)>& probe, int d_min,
                                      int d_max, std::size_t base_points)
{
    if (d_min < 0 || d_max < d_min)
        throw ValidationError("ladder depths must satisfy 0 <= d_min <= d_max");
    if (base_points < ArcFamily::kMinArcPoints || (base_points & (base_points - 1)) != 0)
        throw ValidationError("ladder base must be a power of two >= 4");
    std::vector<LadderPoint> out;
    for (int d = d_min; d <= d_max; ++d) {
        const std::size_t n = std::max<std::size_t>(base_points << d, kMinGridSize);
        const auto arcs = ArcFamily::dyadic(n, d);
        out.push_back({d, n, probe(n, arcs)});
    }
    return out;
}

} // namespace nehari
