#include "nehari/generators.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "nehari/errors.hpp"
#include "nehari/nehari.hpp"
#include "nehari/regularity.hpp"

namespace nehari {

namespace {

double parse_number(const std::string& key, const std::string& text)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(v))
        throw ValidationError("parameter " + key + ": not a number: '" + text + "'");
    return v;
}

ParamMap with_defaults(const std::string& name, const ParamMap& given, const ParamMap& defaults)
{
    ParamMap out = defaults;
    for (const auto& [k, v] : given) {
        if (!defaults.count(k))
            throw ValidationError("generator " + name + " has no parameter '" + k + "'");
        out[k] = v;
    }
    return out;
}

double in_range(const std::string& key, double v, double lo, double hi)
{
    if (!(v >= lo && v <= hi))
        throw ValidationError("parameter " + key + " = " + std::to_string(v) + " outside [" + std::to_string(lo) +
                              ", " + std::to_string(hi) + "]");
    return v;
}

// phi = zeta * outer(u), then shifted to vanish at 0 and pulled back into the
// closed ball. The discrete outer is analytic only up to aliasing, which shows
// up as a small mean when u is rough.
SchurFunction schur_from_log_modulus(const std::vector<double>& u)
{
    const OuterFunction o = outer_from_log_modulus(u);
    const std::size_t n = u.size();
    auto raw = GridFunction::tabulate(n, [&](std::size_t k) { return grid_point(n, k) * o.boundary()[k]; });
    const cplx m = mean(raw);
    auto shifted = GridFunction::tabulate(n, [&](std::size_t k) { return raw[k] - m; });
    const double sup = shifted.sup_norm();
    if (sup > 1.0)
        shifted = scale(shifted, 1.0 / sup);
    return SchurFunction::from_samples(std::move(shifted));
}

} // namespace

Generator::Generator(std::string name, ParamMap params, std::function<SchurFunction(std::size_t)> sampler,
                     std::optional<std::size_t> native_grid)
    : name_(std::move(name)), params_(std::move(params)), sampler_(std::move(sampler)), native_grid_(native_grid)
{
}

SchurFunction Generator::sample(std::size_t grid_size) const
{
    require_grid_size(grid_size);
    if (native_grid_ && *native_grid_ != grid_size)
        throw ValidationError("generator " + name_ + " is only available on grid " + std::to_string(*native_grid_));
    return sampler_(grid_size);
}

const std::vector<std::string>& builtin_names()
{
    static const std::vector<std::string> names = {"zero",           "rz",           "rz-outer", "counterexample",
                                                   "blaschke-schur", "power-defect", "step-h"};
    return names;
}

std::vector<double> parse_number_list(const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        out.push_back(parse_number("list", item));
    }
    if (out.empty())
        throw ValidationError("empty number list");
    return out;
}

GridFunction mobius_inner(std::size_t grid_size, double a)
{
    return GridFunction::sample(grid_size, [a](cplx z) { return (a + z) / (1.0 + a * z); });
}

Generator make_builtin(const std::string& name, const ParamMap& params)
{
    if (name == "zero") {
        auto p = with_defaults(name, params, {});
        return Generator(name, p, [](std::size_t n) { return SchurFunction::from_samples(GridFunction::constant(n, 0.0)); });
    }
    if (name == "rz") {
        auto p = with_defaults(name, params, {{"r", "0.5"}});
        const double r = in_range("r", parse_number("r", p["r"]), 0.0, 1.0);
        return Generator(name, p, [r](std::size_t n) {
            return SchurFunction::from_samples(GridFunction::sample(n, [r](cplx z) { return r * z; }));
        });
    }
    if (name == "rz-outer") {
        auto p = with_defaults(name, params, {{"r", "0.9"}, {"b", "0.5"}});
        const double r = in_range("r", parse_number("r", p["r"]), 0.0, 1.0);
        const double b = in_range("b", parse_number("b", p["b"]), -0.99, 0.99);
        return Generator(name, p, [r, b](std::size_t n) {
            return SchurFunction::from_samples(
                GridFunction::sample(n, [r, b](cplx z) { return r * z * (1.0 + b * z) / (1.0 + std::abs(b)); }));
        });
    }
    if (name == "counterexample") {
        auto p = with_defaults(name, params, {{"a", "0.5"}});
        const double a = in_range("a", parse_number("a", p["a"]), 1e-6, 0.999);
        return Generator(name, p, [a](std::size_t n) { return counterexample_from_inner(mobius_inner(n, a)); });
    }
    if (name == "blaschke-schur") {
        auto p = with_defaults(name, params, {{"r", "0.8"}, {"zeros", "0.5"}});
        const double r = in_range("r", parse_number("r", p["r"]), 0.0, 1.0);
        const auto zeros = parse_number_list(p["zeros"]);
        for (double a : zeros)
            in_range("zeros", a, -0.999, 0.999);
        return Generator(name, p, [r, zeros](std::size_t n) {
            return SchurFunction::from_samples(GridFunction::sample(n, [&](cplx z) {
                cplx v = r * z;
                for (double a : zeros)
                    v *= (z - a) / (1.0 - a * z);
                return v;
            }));
        });
    }
    if (name == "power-defect") {
        auto p = with_defaults(name, params, {{"alpha", "0.5"}});
        const double alpha = in_range("alpha", parse_number("alpha", p["alpha"]), 0.05, 4.0);
        return Generator(name, p, [alpha](std::size_t n) {
            std::vector<double> u(n);
            for (std::size_t k = 0; k < n; ++k) {
                const double d = std::pow(std::abs(1.0 - grid_point(n, k)) / 2.0, alpha);
                u[k] = 0.5 * std::log(std::max(1.0 - d, 0.0));
            }
            return schur_from_log_modulus(u);
        });
    }
    if (name == "step-h") {
        auto p = with_defaults(name, params, {{"levels", "10,1e6"}});
        const auto levels = parse_number_list(p["levels"]);
        build_step_h(levels, 1u << 16); // validate once, up front
        return Generator(name, p, [levels](std::size_t n) {
            const auto step = build_step_h(levels, n);
            std::vector<double> u(n);
            for (std::size_t k = 0; k < n; ++k) {
                const double h = step.realized[k];
                u[k] = 0.5 * std::log(std::max(1.0 - 1.0 / (h * h), 0.0));
            }
            return schur_from_log_modulus(u);
        });
    }
    throw ValidationError("unknown generator '" + name + "'");
}

Generator load_sample_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot read sample file '" + path + "'");
    std::vector<std::pair<long long, cplx>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos)
            continue;
        if (lineno == 1 && line.rfind("index", 0) == 0)
            continue;
        std::stringstream ss(line);
        std::string a, b, c;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c))
            throw ValidationError(path + ":" + std::to_string(lineno) + ": expected index,re,im");
        const double idx = parse_number("index", a);
        if (idx != std::floor(idx) || idx < 0)
            throw ValidationError(path + ":" + std::to_string(lineno) + ": bad index");
        rows.emplace_back(static_cast<long long>(idx), cplx(parse_number("re", b), parse_number("im", c)));
    }
    const std::size_t n = rows.size();
    if (!is_valid_grid_size(n))
        throw ValidationError(path + ": row count " + std::to_string(n) + " is not a power of two >= 8");
    std::vector<cplx> s(n);
    std::vector<std::uint8_t> seen(n, 0);
    for (const auto& [i, v] : rows) {
        if (static_cast<std::size_t>(i) >= n || seen[static_cast<std::size_t>(i)])
            throw ValidationError(path + ": indices must be a permutation of 0.." + std::to_string(n - 1));
        seen[static_cast<std::size_t>(i)] = 1;
        s[static_cast<std::size_t>(i)] = v;
    }
    GridFunction samples(std::move(s));
    SchurFunction::from_samples(samples); // validate now, not on first use
    return Generator(
        "file", {{"path", path}}, [samples](std::size_t) { return SchurFunction::from_samples(samples); }, n);
}

Generator resolve_generator(const std::string& spec, const ParamMap& params)
{
    const auto& names = builtin_names();
    if (std::find(names.begin(), names.end(), spec) != names.end())
        return make_builtin(spec, params);
    if (!params.empty())
        throw ValidationError("parameters are only accepted by builtin generators");
    return load_sample_file(spec);
}

} // namespace nehari
