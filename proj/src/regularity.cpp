#include "nehari/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "nehari/errors.hpp"

namespace nehari {

TrivialCriterion trivial_criterion(const SchurFunction& phi)
{
    const auto& p = phi.boundary();
    double s = 0.0;
    std::size_t cnt = 0;
    for (std::size_t k = 0; k < phi.size(); ++k) {
        if (phi.is_clipped(k))
            continue;
        s += 1.0 / (1.0 - std::norm(p[k]));
        ++cnt;
    }
    return {s / static_cast<double>(cnt), phi.clipped_fraction(), phi.size()};
}

const char* to_string(Log4Verdict v) noexcept
{
    switch (v) {
    case Log4Verdict::trivial_criterion_holds:
        return "trivial-criterion-holds";
    case Log4Verdict::log4_favorable:
        return "log4-favorable";
    case Log4Verdict::inconclusive:
        return "inconclusive";
    }
    return "inconclusive";
}

std::vector<double> default_log4_grid()
{
    std::vector<double> g(16);
    const double lo = std::log(2.0);
    const double hi = std::log(1e6);
    for (std::size_t i = 0; i < g.size(); ++i)
        g[i] = std::exp(lo + (hi - lo) * static_cast<double>(i) / 15.0);
    g.front() = 2.0;
    g.back() = 1e6;
    return g;
}

Log4Report log4_criterion(const RealGridFunction& h_mod, const std::vector<double>& n_grid)
{
    if (n_grid.empty())
        throw ValidationError("log4 criterion needs a non-empty N grid");
    const std::size_t n = h_mod.size();
    double h2 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (h_mod[k] < 1.0 - 1e-9)
            throw ValidationError("|h| must be >= 1, got " + std::to_string(h_mod[k]) + " at index " +
                                  std::to_string(k));
        h2 += h_mod[k] * h_mod[k];
    }
    const double inv_n = 1.0 / static_cast<double>(n);

    Log4Report r;
    r.n_grid = n_grid;
    r.head.resize(n_grid.size());
    r.tail.resize(n_grid.size());
    for_each_index(default_exec(), n_grid.size(), [&](std::size_t i) {
        double head = 0.0;
        double tail = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double x = h_mod[k];
            if (x <= n_grid[i]) {
                head += x * x * x * x;
            } else {
                const double l = std::log(x);
                tail += l * l * l * l;
            }
        }
        r.head[i] = head * inv_n;
        r.tail[i] = tail * inv_n;
    });
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        const double nn = n_grid[i];
        r.f_values.push_back(r.head[i] * r.tail[i]);
        r.corollary_values.push_back(nn * nn * nn * nn * r.tail[i]);
        if (r.f_values[i] < best) {
            best = r.f_values[i];
            r.best_n = nn;
        }
        r.running_min.push_back(best);
    }
    r.mean_h2 = h2 * inv_n;
    if (r.mean_h2 <= kTrivialMassLimit)
        r.verdict = Log4Verdict::trivial_criterion_holds;
    else if (r.running_min.back() <= r.f_values.front() / 10.0)
        r.verdict = Log4Verdict::log4_favorable;
    else
        r.verdict = Log4Verdict::inconclusive;
    return r;
}

// Step modulus

namespace {

bool at_most(double value, double bound) { return value <= bound * (1.0 + 1e-12); }

[[noreturn]] void step_failure(const std::string& family, std::size_t n, double value, double bound)
{
    throw ValidationError("step modulus: " + family + " fails at n=" + std::to_string(n) + " (" +
                          std::to_string(value) + " vs bound " + std::to_string(bound) + ")");
}

} // namespace

StepModulus build_step_h(const std::vector<double>& levels, std::size_t grid_size)
{
    require_grid_size(grid_size);
    if (levels.empty())
        throw ValidationError("step modulus needs at least one level");
    if (!(levels[0] >= 2.0))
        throw ValidationError("step modulus levels must start at >= 2");
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (!std::isfinite(levels[i]))
            throw ValidationError("step modulus levels must be finite");
        if (i > 0 && !(levels[i] > levels[i - 1]))
            throw ValidationError("step modulus levels must be strictly increasing");
    }

    const std::size_t L = levels.size();
    auto nominal = [&](std::size_t n) { // n is 1-based
        const double nn = static_cast<double>(n);
        return nn * nn / (levels[n - 1] * levels[n - 1]);
    };

    StepModulus s{levels, {}, {}, {}, {}, {}, {}, RealGridFunction(std::vector<double>(grid_size, 1.0))};
    double total = 0.0;
    for (std::size_t n = 1; n <= L; ++n) {
        s.measures.push_back(nominal(n));
        total += s.measures.back();
    }
    if (total > 0.5)
        for (auto& m : s.measures)
            m *= 0.5 / total;

    for (std::size_t n = 1; n < L; ++n) {
        double above = 0.0;
        for (std::size_t k = n + 1; k <= L; ++k)
            above += s.measures[k - 1];
        const double v = above * std::pow(levels[n - 1] * std::log(levels[n]), 4.0);
        const double bound = 1.0 / static_cast<double>(n * n);
        s.levelset_values.push_back(v);
        if (!at_most(v, bound))
            step_failure("level-set bound", n, v, bound);
    }
    for (std::size_t n = 1; n <= L; ++n) {
        const double v = s.measures[n - 1] * levels[n - 1] * levels[n - 1];
        const double bound = static_cast<double>(n * n);
        s.nontriv_values.push_back(v);
        if (!at_most(bound, v))
            step_failure("non-triviality bound", n, v, bound);
    }
    for (std::size_t n = 1; n < L; ++n) {
        double sum = 0.0;
        for (std::size_t k = n + 1; k <= L; ++k)
            sum += nominal(k);
        const double v = sum / nominal(n + 1);
        s.gap_sum_ratio.push_back(v);
        if (!(v < 2.0))
            step_failure("tail-sum gap condition", n, v, 2.0);
    }
    for (std::size_t n = 1; n < L; ++n) {
        const double v = nominal(n + 1) * std::pow(levels[n - 1] * std::log(levels[n]), 4.0);
        const double bound = 1.0 / (2.0 * static_cast<double>(n * n));
        s.gap_growth_values.push_back(v);
        if (!at_most(v, bound))
            step_failure("growth gap condition", n, v, bound);
    }

    // Realization: the top level sits on the nodes closest to zeta = -1,
    // each lower level on the next ring outwards.
    std::size_t used = 0;
    for (std::size_t n = 1; n <= L; ++n) {
        const auto c = static_cast<std::size_t>(
            std::max<long long>(1, std::llround(s.measures[n - 1] * static_cast<double>(grid_size))));
        s.counts.push_back(c);
        used += c;
    }
    if (used > grid_size / 2)
        throw ValidationError("grid " + std::to_string(grid_size) + " is too coarse for the requested levels");
    std::vector<double> h(grid_size, 1.0);
    const std::size_t centre = grid_size / 2;
    std::size_t pos = 0;
    for (std::size_t n = L; n >= 1; --n) {
        for (std::size_t c = 0; c < s.counts[n - 1]; ++c, ++pos) {
            // pos -> centre, centre+1, centre-1, centre+2, ...
            const std::size_t off = (pos + 1) / 2;
            const std::size_t k = pos % 2 == 1 ? centre + off : centre - off;
            h[k] = levels[n - 1];
        }
    }
    s.realized = RealGridFunction(std::move(h));
    return s;
}

// Approximation sequence

ApproxSequenceCheck approx_sequence_check(const OuterFunction& h, double n_cut)
{
    if (!(n_cut > 1.0))
        throw ValidationError("N_cut must exceed 1");
    const std::size_t n = h.size();
    const auto& u = h.log_modulus();
    for (std::size_t k = 0; k < n; ++k)
        if (u[k] < -1e-9)
            throw ValidationError("|h| must be >= 1, log|h| = " + std::to_string(u[k]) + " at index " +
                                  std::to_string(k));
    const double log_cut = std::log(n_cut);

    const auto phin = RealGridFunction::tabulate(n, [&](std::size_t k) { return u[k] > log_cut ? u[k] : 0.0; });
    const auto phit = conjugate(phin);
    const auto& hb = h.boundary();
    auto g = GridFunction::tabulate(n, [&](std::size_t k) { return std::exp(cplx(-phin[k], -phit[k])); });
    auto w = GridFunction::tabulate(n, [&](std::size_t k) {
        return std::conj(grid_point(n, k)) * std::conj(hb[k]) * (g[k] - std::conj(g[k]));
    });
    auto rest = GridFunction::tabulate(n, [&](std::size_t k) { return std::conj(grid_point(n, k) * hb[k] * g[k]); });
    const double p = l2_norm(riesz_plus(w));

    ApproxSequenceCheck out;
    out.p_plus_norm = p * p;
    out.aliasing = l2_norm(riesz_plus(rest));
    double j1 = 0.0;
    double j2 = 0.0;
    double gh = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double t2 = phit[k] * phit[k];
        if (u[k] <= log_cut)
            j1 += std::exp(2.0 * u[k]) * t2;
        j2 += t2;
        gh = std::max(gh, std::abs(g[k] * hb[k]));
    }
    out.j1 = j1 / static_cast<double>(n);
    out.j2 = j2 / static_cast<double>(n);
    out.bound = 4.0 * (out.j1 + out.j2);
    out.max_gh = gh;
    out.chain_holds = out.p_plus_norm <= out.bound + 1e-6;
    out.side_condition_holds = gh <= n_cut + 1e-6;
    return out;
}

// Density residual

std::vector<int> default_density_degrees() { return {1, 2, 4, 8, 16, 32, 64}; }

DensityResidualCurve density_residual(const ScatteringMatrix& s, const std::vector<int>& degrees)
{
    const std::size_t n = s.size();
    if (degrees.empty())
        throw ValidationError("density residual needs at least one degree");
    int dmax = 0;
    for (int d : degrees) {
        if (d < 0 || static_cast<std::size_t>(d) >= n / 4)
            throw ValidationError("degree " + std::to_string(d) + " outside [0, N/4) for grid " + std::to_string(n));
        dmax = std::max(dmax, d);
    }
    const auto& phi = s.phi().boundary();
    const auto& psi = s.psi().boundary();
    const auto& f0 = s.f0();
    const cplx psi0 = s.psi().value_at_zero();
    const double w = 1.0 / std::sqrt(static_cast<double>(n));
    const int rows = static_cast<int>(2 * n);
    const int cols = dmax + 1;

    Eigen::VectorXcd b(rows);
    for (std::size_t k = 0; k < n; ++k) {
        const cplx zb = std::conj(grid_point(n, k));
        b(static_cast<int>(k)) = w * phi[k] * zb;
        b(static_cast<int>(n + k)) = w * (psi[k] - psi0) * zb;
    }

    Eigen::MatrixXcd a(rows, cols);
    for_each_index(default_exec(), static_cast<std::size_t>(cols), [&](std::size_t j) {
        const auto y = GridFunction::tabulate(n, [&](std::size_t k) { return grid_point(n, k * j); }, Exec::serial);
        const auto tail = riesz_plus(multiply(f0, y));
        for (std::size_t k = 0; k < n; ++k) {
            a(static_cast<int>(k), static_cast<int>(j)) = w * psi[k] * y[k];
            a(static_cast<int>(n + k), static_cast<int>(j)) = w * tail[k];
        }
    });

    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
    const Eigen::VectorXcd qb = qr.householderQ().adjoint() * b;

    DensityResidualCurve out;
    out.degrees = degrees;
    out.target_norm = b.norm();
    for (int d : degrees)
        out.residuals.push_back(qb.tail(rows - (d + 1)).norm());

    std::vector<std::size_t> order(degrees.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return degrees[x] < degrees[y]; });
    auto find = [&](int d) -> std::ptrdiff_t {
        auto it = std::find(degrees.begin(), degrees.end(), d);
        return it == degrees.end() ? -1 : it - degrees.begin();
    };
    std::ptrdiff_t hi = find(64);
    std::ptrdiff_t lo = find(32);
    if (hi < 0 || lo < 0) {
        if (order.size() >= 2) {
            hi = static_cast<std::ptrdiff_t>(order[order.size() - 1]);
            lo = static_cast<std::ptrdiff_t>(order[order.size() - 2]);
        }
    }
    if (hi >= 0 && lo >= 0 && hi != lo) {
        const double rh = out.residuals[static_cast<std::size_t>(hi)];
        const double rl = out.residuals[static_cast<std::size_t>(lo)];
        out.plateau = (rl - rh) < 1e-4 && rh > 0.01;
    }
    return out;
}

} // namespace nehari
