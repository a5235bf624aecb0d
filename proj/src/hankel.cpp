#include "nehari/hankel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nehari/errors.hpp"

namespace nehari {

namespace {

double largest_singular_value(const Eigen::MatrixXcd& a)
{
    if (a.size() == 0)
        return 0.0;
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
    return svd.singularValues()(0);
}

double smallest_singular_value(const Eigen::MatrixXcd& a)
{
    if (a.size() == 0)
        return 0.0;
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
    const auto& s = svd.singularValues();
    return s(s.size() - 1);
}

GridFunction monomial(std::size_t n, std::size_t d)
{
    return GridFunction::tabulate(n, [&](std::size_t k) { return grid_point(n, k * d); }, Exec::serial);
}

} // namespace

std::size_t max_truncation(std::size_t grid_size) noexcept { return grid_size / 4; }

void require_truncation(std::size_t grid_size, std::size_t m)
{
    if (m < 1 || m > max_truncation(grid_size))
        throw ValidationError("truncation must lie in [1, " + std::to_string(max_truncation(grid_size)) +
                              "] for grid " + std::to_string(grid_size) + ", got " + std::to_string(m));
}

Eigen::MatrixXcd hankel_matrix(const FourierCoefficients& c, std::size_t m)
{
    require_truncation(c.grid_size(), m);
    const int mi = static_cast<int>(m);
    Eigen::MatrixXcd h(mi, mi);
    for (int j = 0; j < mi; ++j)
        for (int k = 0; k < mi; ++k)
            h(j, k) = c.at(-1 - j - k);
    return h;
}

Eigen::MatrixXcd hankel_matrix(const GridFunction& symbol, std::size_t m) { return hankel_matrix(analyze(symbol), m); }

Eigen::MatrixXcd toeplitz_matrix(const FourierCoefficients& c, std::size_t rows, std::size_t cols)
{
    const int r = static_cast<int>(rows);
    const int q = static_cast<int>(cols);
    if (r - 1 > c.max_index() || -(q - 1) < c.min_index())
        throw ValidationError("Toeplitz section " + std::to_string(rows) + "x" + std::to_string(cols) +
                              " exceeds the grid's index range");
    Eigen::MatrixXcd t(r, q);
    for (int j = 0; j < r; ++j)
        for (int k = 0; k < q; ++k)
            t(j, k) = c.at(j - k);
    return t;
}

Eigen::MatrixXcd toeplitz_matrix(const GridFunction& symbol, std::size_t m)
{
    require_truncation(symbol.size(), m);
    return toeplitz_matrix(analyze(symbol), m, m);
}

double hankel_norm(const GridFunction& symbol, std::size_t m) { return largest_singular_value(hankel_matrix(symbol, m)); }

std::vector<TruncationPoint> hankel_norm_curve(const GridFunction& symbol, const std::vector<std::size_t>& ms, Exec exec)
{
    for (auto m : ms)
        require_truncation(symbol.size(), m);
    const auto c = analyze(symbol);
    std::vector<TruncationPoint> out(ms.size());
    for_each_index(exec, ms.size(), [&](std::size_t i) {
        out[i] = {ms[i], largest_singular_value(hankel_matrix(c, ms[i]))};
    });
    return out;
}

double nehari_distance(const GridFunction& f, std::size_t m) { return hankel_norm(f, m); }

AakCheck aak_resolvent_check(const ScatteringMatrix& s, std::size_t m)
{
    const Eigen::MatrixXcd g = hankel_matrix(s.f0(), m);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(g);
    const auto& sv = svd.singularValues();
    const double top = sv(0);
    const double bottom = sv(sv.size() - 1);
    if (top >= 1.0 - kStrictContractionMargin)
        throw DegenerateError("not-strongly-contractive",
                              "Hankel section norm " + std::to_string(top) + " is not below 1 - 1e-6");

    const int mi = static_cast<int>(m);
    const Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(mi, mi) - g.adjoint() * g;
    Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(mi);
    e0(0) = 1.0;
    const Eigen::VectorXcd x = a.llt().solve(e0);

    const OuterFunction h = reciprocal_outer(s.psi());
    const auto hc = analyze(h.boundary());
    const cplx psi0 = s.psi().value_at_zero();
    double err = 0.0;
    std::vector<cplx> xs(m);
    for (int k = 0; k < mi; ++k) {
        xs[static_cast<std::size_t>(k)] = x(k);
        err += std::norm(x(k) - hc.at(k) / psi0);
    }
    AakCheck out;
    out.discrepancy = std::sqrt(err);
    out.condition_number = (1.0 - bottom * bottom) / (1.0 - top * top);
    out.gamma_norm = top;
    out.resolvent = std::move(xs);
    return out;
}

double kernel_check(const ScatteringMatrix& s, std::size_t m, Exec exec)
{
    const AakCheck aak = aak_resolvent_check(s, m);
    const std::size_t n = s.size();
    const cplx psi0 = s.psi().value_at_zero();
    const auto& psi = s.psi().boundary();
    const auto& f0 = s.f0();

    std::vector<cplx> xc(n, 0.0);
    for (std::size_t k = 0; k < m; ++k)
        xc[k] = aak.resolvent[k];
    const GridFunction x = synthesize(FourierCoefficients(std::move(xc)));
    const GridFunction k1 = GridFunction::tabulate(n, [&](std::size_t k) { return psi0 * psi[k] * x[k]; });
    const GridFunction k2 = scale(riesz_plus(multiply(f0, x)), psi0);

    const std::size_t count = m / 2 + 1;
    std::vector<double> dev(count);
    for_each_index(exec, count, [&](std::size_t d) {
        const GridFunction y = monomial(n, d);
        const GridFunction a1 = GridFunction::tabulate(n, [&](std::size_t k) { return psi[k] * y[k]; }, Exec::serial);
        const GridFunction a2 = riesz_plus(multiply(f0, y));
        const cplx pairing = inner(a1, k1) + inner(a2, k2);
        const cplx expected = d == 0 ? psi0 : cplx(0.0, 0.0);
        dev[d] = std::abs(pairing - expected);
    });
    return *std::max_element(dev.begin(), dev.end());
}

ToeplitzInvertibility toeplitz_invertibility(const GridFunction& symbol, std::size_t m)
{
    require_truncation(symbol.size(), m);
    const auto c = analyze(symbol);
    const auto cb = analyze(conj(symbol));
    double dev = 0.0;
    for (const auto& z : symbol.samples())
        dev = std::max(dev, std::abs(std::abs(z) - 1.0));
    ToeplitzInvertibility out;
    out.min_singular = smallest_singular_value(toeplitz_matrix(c, 2 * m, m));
    out.adjoint_kernel_score = smallest_singular_value(toeplitz_matrix(cb, 2 * m, m));
    out.unimodular = dev < 1e-6;
    return out;
}

} // namespace nehari
