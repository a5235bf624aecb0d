#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nehari/generators.hpp"
#include "nehari/spectral.hpp"

namespace nehari::app {

enum class Command { analyze, solve, a2, regularity };
enum class Format { json, csv };

const char* to_string(Command c) noexcept;
const char* to_string(Format f) noexcept;

// --epsilon forms: "0.5", "const:RE[,IM]", "poly:DEGREE[,RADIUS]" (seeded random
// polynomial scaled to sup RADIUS on the grid, default 0.9).
struct EpsilonSpec {
    enum class Kind { constant, polynomial } kind = Kind::constant;
    cplx value{0.0, 0.0};
    int degree = 0;
    double radius = 0.9;
    std::string text = "0";
};

EpsilonSpec parse_epsilon(const std::string& text);
GridFunction make_epsilon(const EpsilonSpec& spec, std::size_t grid_size, std::uint64_t seed);

inline constexpr int kAutoArcDepth = -1;

struct JobConfig {
    Command command = Command::analyze;
    std::string generator;
    ParamMap params;
    std::size_t grid_size = kDefaultGridSize;
    std::size_t truncation = 0; // 0: N/4
    int arc_depth = kAutoArcDepth; // finest arc holds 16 nodes, capped by the grid
    std::size_t c_grid = 16;
    std::uint64_t seed = 1;
    std::size_t trials = 200;
    std::size_t form_degree = 0; // 0: N/16
    EpsilonSpec epsilon;
    Format format = Format::json;
    std::string output_path = "-";

    // Fills defaults and checks the invariants; throws ValidationError.
    void resolve();
};

struct ParseOutcome {
    std::optional<JobConfig> config; // empty when help or version was printed
    int exit_code = 0;
};

// Parses argv; usage errors throw ValidationError.
ParseOutcome parse_command_line(int argc, const char* const* argv, std::string& printed);

} // namespace nehari::app
