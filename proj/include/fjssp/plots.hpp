#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fjssp/analysis.hpp"

namespace fjssp {

struct PlotOptions {
    std::optional<double> x_limit;     // clip the x axis
    std::optional<double> threshold;   // horizontal target line (progress plot)
    bool log_y = false;
    int width = 900;
    int height = 540;
};

struct NamedCurve {
    std::string label;
    std::vector<GapCurvePoint> points;
};

/// Share-of-instances-solved vs. gap threshold, one step curve per solver.
std::string gap_curves_svg(const std::vector<NamedCurve>& curves, const PlotOptions& opts = {});

struct ProgressSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;  // (elapsed seconds, gap)
};

/// Gap dynamics of several solvers on one instance. Series start at their
/// first feasible point; an optional horizontal red line marks the target
/// deviation, optionally on a log-scaled y axis.
std::string progress_svg(const std::vector<ProgressSeries>& series, const PlotOptions& opts = {});

/// Critical-distance diagram: solvers placed on the average-rank axis from
/// inferior to superior, CD bar on top, bold bars joining groups without a
/// significant difference.
std::string nemenyi_svg(const RankingReport& report, const PlotOptions& opts = {});

}  // namespace fjssp
