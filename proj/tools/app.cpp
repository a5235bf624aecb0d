#include "app.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <unistd.h>

#include "nehari/errors.hpp"

namespace nehari::app {

namespace {

json header(const JobConfig& cfg, const Generator& gen)
{
    json params = json::object();
    for (const auto& [k, v] : gen.params())
        params[k] = v;
    return {{"tool", "nehari-lab"},
            {"version", NEHARI_VERSION},
            {"command", to_string(cfg.command)},
            {"seed", cfg.seed},
            {"generator", {{"name", gen.name()}, {"params", params}}},
            {"grid_size", cfg.grid_size},
            {"truncation", cfg.truncation},
            {"arc_depth", cfg.arc_depth},
            {"c_grid", cfg.c_grid}};
}

std::vector<std::size_t> truncation_ladder(std::size_t m)
{
    std::vector<std::size_t> out;
    for (std::size_t k = std::min<std::size_t>(8, m); k < m; k *= 2)
        out.push_back(k);
    out.push_back(m);
    return out;
}

std::vector<int> density_degrees(std::size_t n)
{
    std::vector<int> out;
    for (int d : default_density_degrees())
        if (static_cast<std::size_t>(d) < n / 4)
            out.push_back(d);
    return out;
}

json generator_summary(const SchurFunction& phi)
{
    return {{"max_abs_phi", number(phi.boundary().sup_norm())}, {"phi_at_zero", complex_number(mean(phi.boundary()))}};
}

json psi_summary(const ScatteringMatrix& s)
{
    double lo = INFINITY;
    double hi = 0.0;
    for (const auto& z : s.psi().boundary().samples()) {
        lo = std::min(lo, std::abs(z));
        hi = std::max(hi, std::abs(z));
    }
    return {{"value_at_zero", number(s.psi().value_at_zero().real())}, {"min_abs", number(lo)}, {"max_abs", number(hi)}};
}

json aak_section(const ScatteringMatrix& s, std::size_t m)
{
    try {
        const auto a = aak_resolvent_check(s, m);
        return {{"status", "ok"},
                {"discrepancy", number(a.discrepancy)},
                {"condition_number", number(a.condition_number)},
                {"gamma_norm", number(a.gamma_norm)},
                {"kernel_check", number(kernel_check(s, m))}};
    } catch (const DegenerateError& e) {
        return {{"status", e.code()}, {"detail", e.what()}};
    }
}

RealGridFunction h_modulus(const OuterFunction& psi)
{
    const auto& u = psi.log_modulus();
    return RealGridFunction::tabulate(u.size(), [&](std::size_t k) { return std::exp(-u[k]); });
}

json approx_table(const OuterFunction& h, const std::vector<double>& cuts)
{
    json out = json::array();
    for (double c : cuts)
        out.push_back(to_json(approx_sequence_check(h, c), c));
    return out;
}

} // namespace

json run_analyze(const JobConfig& cfg)
{
    const auto gen = resolve_generator(cfg.generator, cfg.params);
    const auto phi = gen.sample(cfg.grid_size);
    const auto s = build_scattering(phi);
    json doc = header(cfg, gen);
    doc["clip"] = clip_summary(s);
    doc["validation"] = generator_summary(phi);
    doc["psi"] = psi_summary(s);
    doc["f0"] = {{"sup", number(s.f0().sup_norm())}, {"coset_residual_zero_test", number(coset_residual_zero_test(s))}};
    doc["unitarity_residual"] = number(unitarity_residual(s));
    const auto hn = hankel_norm_curve(s.f0(), truncation_ladder(cfg.truncation));
    doc["hankel_norm_curve"] = to_json(hn);
    doc["hankel_norm"] = number(hn.back().value);
    doc["nehari_distance_lower_bound"] = number(hn.back().value);
    doc["aak"] = aak_section(s, cfg.truncation);
    doc["trivial_criterion"] = to_json(trivial_criterion(phi));
    doc["density_residual"] = to_json(density_residual(s, density_degrees(cfg.grid_size)));
    return doc;
}

json run_solve(const JobConfig& cfg)
{
    const auto gen = resolve_generator(cfg.generator, cfg.params);
    const auto phi = gen.sample(cfg.grid_size);
    const auto s = build_scattering(phi);
    const auto eps = make_epsilon(cfg.epsilon, cfg.grid_size, cfg.seed);
    const auto sol = solve(s, eps);

    double max_f = 0.0;
    double unimod = 0.0;
    double dev_f0 = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (sol.degenerate[k])
            continue;
        max_f = std::max(max_f, std::abs(sol.f[k]));
        unimod = std::max(unimod, std::abs(std::abs(sol.f[k]) - 1.0));
        dev_f0 = std::max(dev_f0, std::abs(sol.f[k] - s.f0()[k]));
    }
    json samples = json::array();
    for (std::size_t k = 0; k < s.size(); ++k)
        samples.push_back({{"x", number(grid_angle(s.size(), k))},
                           {"re", number(sol.f[k].real())},
                           {"im", number(sol.f[k].imag())}});

    json doc = header(cfg, gen);
    doc["clip"] = clip_summary(s);
    doc["clip"]["degenerate_denominators"] = sol.degenerate_count;
    doc["epsilon"] = {{"spec", cfg.epsilon.text},
                      {"sup", number(eps.sup_norm())},
                      {"anti_analytic_norm", number(sol.epsilon_anti_analytic)},
                      {"not_analytic_warning", sol.epsilon_not_analytic}};
    doc["max_abs_f"] = number(max_f);
    doc["max_unimodular_deviation"] = number(unimod);
    doc["max_deviation_from_f0"] = number(dev_f0);
    doc["amplitude_identity_residual"] = number(amplitude_identity_residual(s, sol));
    doc["coset_invariance_residual"] = number(l2_norm(subtract(riesz_minus(sol.f), riesz_minus(s.f0()))));
    doc["f_samples"] = samples;
    return doc;
}

json run_a2(const JobConfig& cfg)
{
    const auto gen = resolve_generator(cfg.generator, cfg.params);
    const auto phi = gen.sample(cfg.grid_size);
    const auto arcs = ArcFamily::dyadic(cfg.grid_size, cfg.arc_depth);
    const auto w = strong_regularity_weight(phi);

    json doc = header(cfg, gen);
    doc["clip"] = {{"defect_clipped", phi.clipped_count()}, {"clipped_fraction", number(phi.clipped_fraction())}};
    doc["scalar_a2"] = to_json(scalar_a2(w, arcs));
    doc["matrix_a2_scalar_form"] = to_json(matrix_a2_scalar_form(phi, arcs));
    doc["rotation_sweep"] = to_json(rotation_sweep(phi, uniform_c_grid(cfg.c_grid), arcs));
    doc["form_probe"] = to_json(matrix_a2_form_test(phi, cfg.trials, cfg.form_degree, cfg.seed));
    const auto hs = helson_szego_crosscheck(w, cfg.truncation, arcs);
    doc["helson_szego"] = {{"a2_statistic", number(hs.a2_statistic)}, {"hankel_norm", number(hs.hankel_norm)}};
    return doc;
}

json run_regularity(const JobConfig& cfg)
{
    const auto gen = resolve_generator(cfg.generator, cfg.params);
    const auto phi = gen.sample(cfg.grid_size);
    const auto s = build_scattering(phi);
    const auto h = reciprocal_outer(s.psi());
    const std::vector<double> cuts = {2.0, 10.0, 100.0, 1e4, 1e6};

    json doc = header(cfg, gen);
    doc["clip"] = clip_summary(s);
    doc["trivial_criterion"] = to_json(trivial_criterion(phi));
    doc["log4"] = to_json(log4_criterion(h_modulus(s.psi()), default_log4_grid()));
    doc["approx_sequence"] = approx_table(h, cuts);
    doc["density_residual"] = to_json(density_residual(s, density_degrees(cfg.grid_size)));
    if (gen.name() == "step-h") {
        const auto step = build_step_h(parse_number_list(gen.params().at("levels")), cfg.grid_size);
        std::vector<double> logh(cfg.grid_size);
        for (std::size_t k = 0; k < cfg.grid_size; ++k)
            logh[k] = std::log(step.realized[k]);
        const auto hs = outer_from_log_modulus(logh);
        doc["step_modulus"] = to_json(step);
        doc["step_modulus"]["log4"] = to_json(log4_criterion(step.realized, default_log4_grid()));
        doc["step_modulus"]["approx_sequence"] = approx_table(hs, cuts);
    }
    return doc;
}

json run_job(const JobConfig& cfg)
{
    switch (cfg.command) {
    case Command::analyze:
        return run_analyze(cfg);
    case Command::solve:
        return run_solve(cfg);
    case Command::a2:
        return run_a2(cfg);
    case Command::regularity:
        return run_regularity(cfg);
    }
    return run_analyze(cfg);
}

std::string render(const json& doc, Format format)
{
    if (format == Format::csv)
        return flatten_csv(doc);
    return doc.dump(2) + "\n";
}

void write_atomically(const std::string& path, const std::string& content)
{
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw ValidationError("cannot write '" + tmp.string() + "'");
        out << content;
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw ValidationError("write failed for '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw ValidationError("cannot move report into place at '" + path + "'");
    }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    try {
        std::string printed;
        auto parsed = parse_command_line(argc, argv, printed);
        if (!parsed.config) {
            out << printed;
            return parsed.exit_code;
        }
        const auto& cfg = *parsed.config;
        const std::string text = render(run_job(cfg), cfg.format);
        if (cfg.output_path == "-")
            out << text;
        else
            write_atomically(cfg.output_path, text);
        return kExitOk;
    } catch (const ValidationError& e) {
        err << "nehari-lab: input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const DegenerateError& e) {
        err << "nehari-lab: degenerate data: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const std::exception& e) {
        err << "nehari-lab: internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}

} // namespace nehari::app
