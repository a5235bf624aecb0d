#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nehari/outer.hpp"

namespace nehari {

using ParamMap = std::map<std::string, std::string>;

// A named, resamplable Schur-class generator. Builtins can be evaluated on any
// grid; generators read from a sample file only on their own grid.
class Generator {
public:
    Generator(std::string name, ParamMap params, std::function<SchurFunction(std::size_t)> sampler,
              std::optional<std::size_t> native_grid = std::nullopt);

    const std::string& name() const noexcept { return name_; }
    // Parameters after defaults were applied, as used.
    const ParamMap& params() const noexcept { return params_; }
    std::optional<std::size_t> native_grid() const noexcept { return native_grid_; }

    SchurFunction sample(std::size_t grid_size) const;

private:
    std::string name_;
    ParamMap params_;
    std::function<SchurFunction(std::size_t)> sampler_;
    std::optional<std::size_t> native_grid_;
};

const std::vector<std::string>& builtin_names();

// Builtins and their parameters (defaults in brackets):
//   zero
//   rz              r [0.5]                      phi = r zeta
//   rz-outer        r [0.9], b [0.5]             phi = r zeta (1 + b zeta) / (1 + b)
//   counterexample  a [0.5]                      from Delta = (a + zeta) / (1 + a zeta)
//   blaschke-schur  r [0.8], zeros [0.5]         phi = r zeta prod (zeta - a) / (1 - conj(a) zeta)
//   power-defect    alpha [0.5]                  1 - |phi|^2 = (|1 - zeta| / 2)^alpha
//   step-h          levels [10,1e6]              1 - |phi|^2 ~ 1/|h|^2 for the step modulus |h|
// Unknown names or parameters throw ValidationError.
Generator make_builtin(const std::string& name, const ParamMap& params = {});

// CSV rows "index,re,im"; the row count must be a power of two >= 8.
Generator load_sample_file(const std::string& path);

// A builtin name or, failing that, a path to a sample file.
Generator resolve_generator(const std::string& spec, const ParamMap& params);

// "10,1e6" -> {10, 1e6}.
std::vector<double> parse_number_list(const std::string& text);

// Analytic inner function (a + zeta) / (1 + a zeta), 0 < a < 1.
GridFunction mobius_inner(std::size_t grid_size, double a);

} // namespace nehari
