#include "config.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "nehari/a2.hpp"
#include "nehari/errors.hpp"
#include "nehari/hankel.hpp"

namespace nehari::app {

const char* to_string(Command c) noexcept
{
    switch (c) {
    case Command::analyze:
        return "analyze";
    case Command::solve:
        return "solve";
    case Command::a2:
        return "a2";
    case Command::regularity:
        return "regularity";
    }
    return "analyze";
}

const char* to_string(Format f) noexcept { return f == Format::json ? "json" : "csv"; }

namespace {

double number(const std::string& what, const std::string& s)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size() || !std::isfinite(v))
        throw ValidationError(what + ": not a number: '" + s + "'");
    return v;
}

} // namespace

EpsilonSpec parse_epsilon(const std::string& text)
{
    EpsilonSpec e;
    e.text = text;
    const auto colon = text.find(':');
    const std::string kind = colon == std::string::npos ? "const" : text.substr(0, colon);
    const std::string body = colon == std::string::npos ? text : text.substr(colon + 1);
    const auto parts = [&] {
        std::vector<std::string> out;
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ','))
            out.push_back(item);
        return out;
    }();
    if (kind == "const") {
        if (parts.empty() || parts.size() > 2)
            throw ValidationError("epsilon const:RE[,IM] expected, got '" + text + "'");
        e.kind = EpsilonSpec::Kind::constant;
        e.value = {number("epsilon", parts[0]), parts.size() == 2 ? number("epsilon", parts[1]) : 0.0};
        if (std::abs(e.value) > 1.0 + 1e-12)
            throw ValidationError("epsilon must lie in the closed unit disc");
    } else if (kind == "poly") {
        if (parts.empty() || parts.size() > 2)
            throw ValidationError("epsilon poly:DEGREE[,RADIUS] expected, got '" + text + "'");
        const double d = number("epsilon degree", parts[0]);
        if (d < 0 || d != std::floor(d) || d > 1024)
            throw ValidationError("epsilon degree must be an integer in [0, 1024]");
        e.kind = EpsilonSpec::Kind::polynomial;
        e.degree = static_cast<int>(d);
        if (parts.size() == 2)
            e.radius = number("epsilon radius", parts[1]);
        if (!(e.radius >= 0.0 && e.radius <= 1.0))
            throw ValidationError("epsilon radius must lie in [0, 1]");
    } else {
        throw ValidationError("unknown epsilon kind '" + kind + "'");
    }
    return e;
}

GridFunction make_epsilon(const EpsilonSpec& spec, std::size_t grid_size, std::uint64_t seed)
{
    if (spec.kind == EpsilonSpec::Kind::constant)
        return GridFunction::constant(grid_size, spec.value);
    if (static_cast<std::size_t>(spec.degree) >= grid_size / 2)
        throw ValidationError("epsilon degree too large for the grid");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cplx> c(grid_size, 0.0);
    for (int k = 0; k <= spec.degree; ++k) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        c[static_cast<std::size_t>(k)] = cplx(re, im);
    }
    auto p = synthesize(FourierCoefficients(std::move(c)));
    const double sup = p.sup_norm();
    return sup > 0.0 ? scale(p, spec.radius / sup) : p;
}

void JobConfig::resolve()
{
    require_grid_size(grid_size);
    if (truncation == 0)
        truncation = max_truncation(grid_size);
    require_truncation(grid_size, truncation);
    if (arc_depth == kAutoArcDepth)
        arc_depth = std::clamp(static_cast<int>(std::bit_width(grid_size)) - 5, 0, max_arc_depth(grid_size));
    if (arc_depth < 0 || arc_depth > max_arc_depth(grid_size))
        throw ValidationError("arc depth " + std::to_string(arc_depth) + " outside [0, " +
                              std::to_string(max_arc_depth(grid_size)) + "] for grid " + std::to_string(grid_size));
    if (c_grid == 0)
        throw ValidationError("c grid needs at least one point");
    if (form_degree == 0)
        form_degree = std::max<std::size_t>(1, grid_size / 16);
    if (4 * form_degree >= grid_size)
        throw ValidationError("form degree must be below N/4");
    if (generator.empty())
        throw ValidationError("--generator is required");
}

ParseOutcome parse_command_line(int argc, const char* const* argv, std::string& printed)
{
    CLI::App cli{"Nehari problem laboratory: scattering matrix, Hankel norms, A2 diagnostics and regularity scores"};
    cli.set_version_flag("--version", std::string(NEHARI_VERSION));

    JobConfig cfg;
    std::string command;
    std::vector<std::string> params;
    std::string format = "json";
    std::string epsilon = "0";

    cli.add_option("command", command, "analyze | solve | a2 | regularity")
        ->required()
        ->check(CLI::IsMember({"analyze", "solve", "a2", "regularity"}));
    cli.add_option("--generator", cfg.generator, "builtin name or CSV sample file (index,re,im)")->required();
    cli.add_option("--param", params, "generator parameter k=v, repeatable");
    cli.add_option("--grid", cfg.grid_size, "grid size N, a power of two >= 8");
    cli.add_option("--truncation", cfg.truncation, "finite-section size M <= N/4 (default N/4)");
    cli.add_option("--arc-depth", cfg.arc_depth, "dyadic arc depth D (default log2(N/16))");
    cli.add_option("--c-grid", cfg.c_grid, "number of rotation angles");
    cli.add_option("--seed", cfg.seed, "random seed");
    cli.add_option("--trials", cfg.trials, "random trials for the quadratic-form probe");
    cli.add_option("--form-degree", cfg.form_degree, "polynomial degree for the quadratic-form probe (default N/16)");
    cli.add_option("--epsilon", epsilon, "solve: const:RE[,IM] or poly:DEGREE[,RADIUS]");
    cli.add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    cli.add_option("--out", cfg.output_path, "output path, '-' for stdout");

    try {
        cli.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        printed = cli.help();
        return {std::nullopt, 0};
    } catch (const CLI::CallForVersion&) {
        printed = std::string(NEHARI_VERSION) + "\n";
        return {std::nullopt, 0};
    } catch (const CLI::ParseError& e) {
        throw ValidationError(e.what());
    }

    if (command == "analyze")
        cfg.command = Command::analyze;
    else if (command == "solve")
        cfg.command = Command::solve;
    else if (command == "a2")
        cfg.command = Command::a2;
    else
        cfg.command = Command::regularity;
    cfg.format = format == "csv" ? Format::csv : Format::json;
    for (const auto& p : params) {
        const auto eq = p.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ValidationError("--param expects k=v, got '" + p + "'");
        cfg.params[p.substr(0, eq)] = p.substr(eq + 1);
    }
    cfg.epsilon = parse_epsilon(epsilon);
    cfg.resolve();
    return {cfg, 0};
}

} // namespace nehari::app
