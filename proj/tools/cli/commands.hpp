#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"

namespace liegeo::cli {

enum ExitCode : int { kOk = 0, kToleranceExceeded = 1, kConfigError = 2, kDiverged = 3 };

/// Where a command writes its artifact; "-" is standard output, empty means
/// the command's default (config `output` for simulate/compare, stdout for
/// reports).
struct OutputOptions {
  std::string out;
  std::string svg;
  bool expect_none = false;
};

int cmd_simulate(const RunConfig& cfg, const OutputOptions& opts, std::ostream& report);
int cmd_compare(const RunConfig& cfg, const OutputOptions& opts, std::ostream& report);
int cmd_hull(const RunConfig& cfg, const OutputOptions& opts, std::ostream& report);
int cmd_search_integrals(const RunConfig& cfg, const OutputOptions& opts, std::ostream& report);
int cmd_figure(const std::string& name, const OutputOptions& opts, std::ostream& report);
int cmd_catalog(std::ostream& report);

std::vector<std::string> figure_names();
/// Built-in configuration behind a figure, and its projection coordinates.
RunConfig figure_config(const std::string& name);
std::array<std::string, 3> figure_axes(const std::string& name);

/// Parses arguments and dispatches; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Oblique 3-d to 2-d polyline drawing.
void write_svg(std::ostream& out, const std::vector<std::array<double, 3>>& points,
               const std::array<std::string, 3>& axes, const std::string& title);

}  // namespace liegeo::cli
