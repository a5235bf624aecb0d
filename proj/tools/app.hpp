#pragma once

#include <iosfwd>
#include <string>

#include "config.hpp"
#include "report.hpp"

namespace nehari::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitDegenerate = 3;

json run_analyze(const JobConfig& cfg);
json run_solve(const JobConfig& cfg);
json run_a2(const JobConfig& cfg);
json run_regularity(const JobConfig& cfg);
json run_job(const JobConfig& cfg);

std::string render(const json& doc, Format format);

// Writes to a sibling temporary file and renames it over `path`.
void write_atomically(const std::string& path, const std::string& content);

// Full CLI behaviour, with exit codes 0 ok, 1 internal, 2 input, 3 degenerate data.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace nehari::app
