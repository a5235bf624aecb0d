#include "report.hpp"

#include <cmath>
#include <sstream>

namespace nehari::app {

json number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    return v;
}

json complex_number(cplx z) { return json{{"re", number(z.real())}, {"im", number(z.imag())}}; }

json curve(const std::vector<double>& x, const std::vector<double>& y)
{
    json out = json::array();
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
        out.push_back({{"x", number(x[i])}, {"y", number(y[i])}});
    return out;
}

json to_json(const A2Report& r, bool with_arc_values)
{
    std::vector<double> levels(r.per_level_max.size());
    for (std::size_t i = 0; i < levels.size(); ++i)
        levels[i] = static_cast<double>(i);
    json out = {{"statistic", number(r.statistic)},
                {"worst_arc", r.worst_arc},
                {"per_level_max", curve(levels, r.per_level_max)},
                {"clipped_fraction", number(r.clipped_fraction)}};
    if (with_arc_values) {
        json a = json::array();
        for (double v : r.arc_values)
            a.push_back(number(v));
        out["arc_values"] = a;
    }
    return out;
}

json to_json(const std::vector<RotationRow>& rows)
{
    json out = json::array();
    for (const auto& r : rows)
        out.push_back({{"c", number(r.c)},
                       {"statistic", number(r.report.statistic)},
                       {"singular_mass", number(r.singular_mass)},
                       {"floored", r.floored},
                       {"clipped_fraction", number(r.report.clipped_fraction)}});
    return out;
}

json to_json(const FormProbe& p)
{
    return {{"max_ratio", number(p.max_ratio)},       {"random_max", number(p.random_max)},
            {"subspace_sup", number(p.subspace_sup)}, {"trials", p.trials},
            {"skipped", p.skipped},                   {"degree", p.truncation}};
}

json to_json(const TrivialCriterion& t)
{
    return {{"value", number(t.value)}, {"clipped_fraction", number(t.clipped_fraction)}, {"grid_size", t.grid_size}};
}

json to_json(const Log4Report& r)
{
    return {{"products", curve(r.n_grid, r.f_values)},
            {"corollary", curve(r.n_grid, r.corollary_values)},
            {"head", curve(r.n_grid, r.head)},
            {"tail", curve(r.n_grid, r.tail)},
            {"running_min", curve(r.n_grid, r.running_min)},
            {"best_n", number(r.best_n)},
            {"mean_h2", number(r.mean_h2)},
            {"verdict_hint", to_string(r.verdict)}};
}

json to_json(const StepModulus& s)
{
    json counts = json::array();
    for (auto c : s.counts)
        counts.push_back(c);
    auto arr = [](const std::vector<double>& v) {
        json a = json::array();
        for (double x : v)
            a.push_back(number(x));
        return a;
    };
    return {{"levels", arr(s.levels)},
            {"measures", arr(s.measures)},
            {"grid_counts", counts},
            {"levelset_values", arr(s.levelset_values)},
            {"nontriv_values", arr(s.nontriv_values)},
            {"gap_sum_ratio", arr(s.gap_sum_ratio)},
            {"gap_growth_values", arr(s.gap_growth_values)}};
}

json to_json(const ApproxSequenceCheck& a, double n_cut)
{
    return {{"n_cut", number(n_cut)},           {"p_plus_norm", number(a.p_plus_norm)},
            {"j1", number(a.j1)},               {"j2", number(a.j2)},
            {"bound", number(a.bound)},         {"max_gh", number(a.max_gh)},
            {"aliasing", number(a.aliasing)},
            {"chain_holds", a.chain_holds},     {"side_condition_holds", a.side_condition_holds}};
}

json to_json(const DensityResidualCurve& d)
{
    std::vector<double> x(d.degrees.begin(), d.degrees.end());
    return {{"residuals", curve(x, d.residuals)}, {"target_norm", number(d.target_norm)}, {"plateau", d.plateau}};
}

json to_json(const std::vector<TruncationPoint>& c)
{
    json out = json::array();
    for (const auto& p : c)
        out.push_back({{"x", p.m}, {"y", number(p.value)}});
    return out;
}

json clip_summary(const ScatteringMatrix& s)
{
    json ex = json::array();
    for (const auto& e : s.psi().extracted())
        ex.push_back({{"index", e.index}, {"order", number(e.order)}});
    return {{"defect_clipped", s.phi().clipped_count()},
            {"clipped_fraction", number(s.phi().clipped_fraction())},
            {"extracted_singularities", ex}};
}

namespace {

void flatten(const json& node, const std::string& key, std::ostringstream& out)
{
    if (node.is_object()) {
        for (auto it = node.begin(); it != node.end(); ++it)
            flatten(it.value(), key + "/" + it.key(), out);
    } else if (node.is_array()) {
        for (std::size_t i = 0; i < node.size(); ++i)
            flatten(node[i], key + "/" + std::to_string(i), out);
    } else {
        std::string v = node.is_string() ? node.get<std::string>() : node.dump();
        if (v.find_first_of(",\"\n") != std::string::npos) {
            std::string q = "\"";
            for (char c : v)
                q += c == '"' ? std::string("\"\"") : std::string(1, c);
            v = q + "\"";
        }
        out << key << ',' << v << '\n';
    }
}

} // namespace

std::string flatten_csv(const json& doc)
{
    std::ostringstream out;
    out << "key,value\n";
    flatten(doc, "", out);
    return out.str();
}

} // namespace nehari::app
