#include "fjssp/plots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace fjssp {

namespace {

const char* const kPalette[] = {"#4e79a7", "#f28e2b", "#59a14f", "#b07aa1",
                                "#76b7b2", "#edc948", "#e15759", "#9c755f"};
constexpr int kPaletteSize = 8;

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

std::string svg_open(int width, int height) {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    return out.str();
}

std::string empty_notice(const PlotOptions& opts, const std::string& what) {
    std::ostringstream out;
    out << svg_open(opts.width, opts.height);
    out << "<text x=\"20\" y=\"30\">no data for " << what << "</text>\n</svg>\n";
    return out.str();
}

struct Frame {
    double left, top, right, bottom;  // pixel margins
    double x0, x1, y0, y1;            // data ranges
    int width, height;

    double px(double x) const {
        return left + (x - x0) / (x1 - x0) * (width - left - right);
    }
    double py(double y) const {
        return height - bottom - (y - y0) / (y1 - y0) * (height - top - bottom);
    }
};

void draw_axes(std::ostringstream& out, const Frame& f, const std::string& x_label,
               const std::string& y_label, int ticks, bool log_y) {
    out << "<rect x=\"" << num(f.left) << "\" y=\"" << num(f.top) << "\" width=\""
        << num(f.width - f.left - f.right) << "\" height=\"" << num(f.height - f.top - f.bottom)
        << "\" fill=\"none\" stroke=\"#333\"/>\n";
    for (int t = 0; t <= ticks; ++t) {
        const double fx = f.x0 + (f.x1 - f.x0) * t / ticks;
        out << "<line x1=\"" << num(f.px(fx)) << "\" y1=\"" << num(f.height - f.bottom) << "\" x2=\""
            << num(f.px(fx)) << "\" y2=\"" << num(f.height - f.bottom + 5) << "\" stroke=\"#333\"/>\n";
        out << "<text x=\"" << num(f.px(fx)) << "\" y=\"" << num(f.height - f.bottom + 18)
            << "\" text-anchor=\"middle\">" << num(fx) << "</text>\n";
        const double fy = f.y0 + (f.y1 - f.y0) * t / ticks;
        out << "<line x1=\"" << num(f.left - 5) << "\" y1=\"" << num(f.py(fy)) << "\" x2=\""
            << num(f.left) << "\" y2=\"" << num(f.py(fy)) << "\" stroke=\"#333\"/>\n";
        const double label = log_y ? std::pow(10.0, fy) : fy;
        out << "<text x=\"" << num(f.left - 8) << "\" y=\"" << num(f.py(fy) + 4)
            << "\" text-anchor=\"end\">" << num(label) << "</text>\n";
    }
    out << "<text x=\"" << num((f.left + f.width - f.right) / 2) << "\" y=\""
        << num(f.height - 8) << "\" text-anchor=\"middle\">" << x_label << "</text>\n";
    out << "<text x=\"14\" y=\"" << num((f.top + f.height - f.bottom) / 2)
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
        << num((f.top + f.height - f.bottom) / 2) << ")\">" << y_label << "</text>\n";
}

void draw_legend(std::ostringstream& out, const Frame& f,
                 const std::vector<std::string>& labels) {
    for (std::size_t s = 0; s < labels.size(); ++s) {
        const double y = f.top + 16 + 18 * static_cast<double>(s);
        const char* color = kPalette[s % kPaletteSize];
        out << "<line x1=\"" << num(f.width - f.right + 8) << "\" y1=\"" << num(y) << "\" x2=\""
            << num(f.width - f.right + 28) << "\" y2=\"" << num(y) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << num(f.width - f.right + 32) << "\" y=\"" << num(y + 4) << "\">"
            << labels[s] << "</text>\n";
    }
}

}  // namespace

std::string gap_curves_svg(const std::vector<NamedCurve>& curves, const PlotOptions& opts) {
    bool any = false;
    for (const NamedCurve& c : curves) any |= !c.points.empty();
    if (!any) return empty_notice(opts, "gap curves");

    double x_max = 0.0;
    for (const NamedCurve& c : curves)
        for (const GapCurvePoint& p : c.points) x_max = std::max(x_max, p.threshold);
    if (opts.x_limit) x_max = *opts.x_limit;
    if (x_max <= 0.0) x_max = 1.0;

    Frame f{60, 20, 150, 45, 0.0, x_max, 0.0, 1.0, opts.width, opts.height};
    std::ostringstream out;
    out << svg_open(opts.width, opts.height);
    draw_axes(out, f, "gap", "share of instances", 5, false);

    std::vector<std::string> labels;
    for (std::size_t s = 0; s < curves.size(); ++s) {
        labels.push_back(curves[s].label);
        const auto& pts = curves[s].points;
        if (pts.empty()) continue;
        std::ostringstream path;
        double prev_frac = 0.0;
        bool started = false;
        for (const GapCurvePoint& p : pts) {
            const double x = std::min(p.threshold, x_max);
            if (!started) {
                path << num(f.px(x)) << ',' << num(f.py(p.fraction)) << ' ';
                started = true;
            } else {
                // step: horizontal to the new threshold, then vertical
                path << num(f.px(x)) << ',' << num(f.py(prev_frac)) << ' ';
                path << num(f.px(x)) << ',' << num(f.py(p.fraction)) << ' ';
            }
            prev_frac = p.fraction;
            if (p.threshold > x_max) break;
        }
        path << num(f.px(x_max)) << ',' << num(f.py(prev_frac));
        out << "<polyline fill=\"none\" stroke=\"" << kPalette[s % kPaletteSize]
            << "\" stroke-width=\"2\" points=\"" << path.str() << "\"/>\n";
    }
    draw_legend(out, f, labels);
    out << "</svg>\n";
    return out.str();
}

std::string progress_svg(const std::vector<ProgressSeries>& series, const PlotOptions& opts) {
    bool any = false;
    for (const ProgressSeries& s : series) any |= !s.points.empty();
    if (!any) return empty_notice(opts, "progress plot");

    double x_max = 0.0, y_max = 0.0;
    for (const ProgressSeries& s : series)
        for (const auto& [t, g] : s.points) {
            x_max = std::max(x_max, t);
            y_max = std::max(y_max, g);
        }
    if (opts.x_limit) x_max = *opts.x_limit;
    if (x_max <= 0.0) x_max = 1.0;
    if (opts.threshold) y_max = std::max(y_max, *opts.threshold);
    if (y_max <= 0.0) y_max = 1.0;

    // log mode clips small gaps at a floor two decades under the threshold
    const double floor = opts.threshold ? *opts.threshold / 100.0 : 1e-4;
    const auto ty = [&](double g) {
        return opts.log_y ? std::log10(std::max(g, floor)) : g;
    };

    Frame f{70, 20, 150, 45, 0.0, x_max, ty(opts.log_y ? floor : 0.0), ty(y_max),
            opts.width, opts.height};
    std::ostringstream out;
    out << svg_open(opts.width, opts.height);
    draw_axes(out, f, "time [s]", "gap", 5, opts.log_y);

    if (opts.threshold) {
        const double y = f.py(ty(*opts.threshold));
        out << "<line x1=\"" << num(f.left) << "\" y1=\"" << num(y) << "\" x2=\""
            << num(f.width - f.right) << "\" y2=\"" << num(y)
            << "\" stroke=\"#cc0000\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << num(f.width - f.right - 4) << "\" y=\"" << num(y - 5)
            << "\" text-anchor=\"end\" fill=\"#cc0000\">target " << num(*opts.threshold)
            << "</text>\n";
    }

    std::vector<std::string> labels;
    for (std::size_t s = 0; s < series.size(); ++s) {
        labels.push_back(series[s].label);
        const auto& pts = series[s].points;
        if (pts.empty()) continue;
        const char* color = kPalette[s % kPaletteSize];
        std::ostringstream path;
        std::ostringstream markers;
        double prev_y = 0.0;
        bool started = false;
        for (const auto& [t, g] : pts) {
            if (t > x_max) break;
            if (!started) {
                path << num(f.px(t)) << ',' << num(f.py(ty(g)));
                started = true;
            } else {
                path << ' ' << num(f.px(t)) << ',' << num(f.py(prev_y));
                path << ' ' << num(f.px(t)) << ',' << num(f.py(ty(g)));
            }
            prev_y = ty(g);
            markers << "<circle cx=\"" << num(f.px(t)) << "\" cy=\"" << num(f.py(ty(g)))
                    << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
        if (!started) continue;
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\""
            << path.str() << "\"/>\n";
        out << markers.str();
    }
    draw_legend(out, f, labels);
    out << "</svg>\n";
    return out.str();
}

std::string nemenyi_svg(const RankingReport& report, const PlotOptions& opts) {
    const std::size_t k = report.solvers.size();
    if (k < 2) return empty_notice(opts, "ranking");

    const double dk = static_cast<double>(k);
    const int width = opts.width;
    const double left = 60, right = 60;
    const double axis_y = 90;
    const double span = width - left - right;
    // inferior (rank k) on the left, superior (rank 1) on the right
    const auto px = [&](double rank) { return left + (dk - rank) / (dk - 1.0) * span; };

    std::vector<int> by_rank(k);
    for (std::size_t s = 0; s < k; ++s) by_rank[s] = static_cast<int>(s);
    std::stable_sort(by_rank.begin(), by_rank.end(), [&](int a, int b) {
        return report.average_ranks[a] > report.average_ranks[b];
    });

    const double group_base = axis_y + 14;
    const double group_step = 10;
    const double label_base = group_base + group_step * static_cast<double>(report.groups.size()) + 18;
    const int height = static_cast<int>(label_base + 22 * static_cast<double>(k) + 30);

    std::ostringstream out;
    out << svg_open(width, height);
    char head[160];
    std::snprintf(head, sizeof(head), "Friedman p = %.4g, CD = %.4f", report.p_value,
                  report.critical_distance);
    out << "<text x=\"" << num(left) << "\" y=\"24\" font-size=\"13\">" << head << "</text>\n";

    // CD ruler
    if (k >= 2 && report.critical_distance > 0.0) {
        const double cd_px = report.critical_distance / (dk - 1.0) * span;
        out << "<line x1=\"" << num(left) << "\" y1=\"42\" x2=\"" << num(left + cd_px)
            << "\" y2=\"42\" stroke=\"#333\" stroke-width=\"2\" class=\"cd-bar\"/>\n";
        out << "<line x1=\"" << num(left) << "\" y1=\"37\" x2=\"" << num(left)
            << "\" y2=\"47\" stroke=\"#333\"/>\n";
        out << "<line x1=\"" << num(left + cd_px) << "\" y1=\"37\" x2=\"" << num(left + cd_px)
            << "\" y2=\"47\" stroke=\"#333\"/>\n";
        out << "<text x=\"" << num(left + cd_px + 6) << "\" y=\"46\">CD</text>\n";
    }

    // rank axis with integer ticks
    out << "<line x1=\"" << num(left) << "\" y1=\"" << num(axis_y) << "\" x2=\""
        << num(width - right) << "\" y2=\"" << num(axis_y) << "\" stroke=\"#333\"/>\n";
    for (int r = 1; r <= static_cast<int>(k); ++r) {
        out << "<line x1=\"" << num(px(r)) << "\" y1=\"" << num(axis_y - 5) << "\" x2=\""
            << num(px(r)) << "\" y2=\"" << num(axis_y) << "\" stroke=\"#333\"/>\n";
        out << "<text x=\"" << num(px(r)) << "\" y=\"" << num(axis_y - 10)
            << "\" text-anchor=\"middle\">" << r << "</text>\n";
    }

    // bold bars joining groups without significant differences
    for (std::size_t g = 0; g < report.groups.size(); ++g) {
        if (report.groups[g].size() < 2) continue;
        double lo = 1e300, hi = -1e300;
        for (int s : report.groups[g]) {
            lo = std::min(lo, report.average_ranks[s]);
            hi = std::max(hi, report.average_ranks[s]);
        }
        const double y = group_base + group_step * static_cast<double>(g);
        out << "<line x1=\"" << num(px(hi)) << "\" y1=\"" << num(y) << "\" x2=\"" << num(px(lo))
            << "\" y2=\"" << num(y)
            << "\" stroke=\"#000\" stroke-width=\"4\" class=\"group-bar\"/>\n";
    }

    // stems and labels, worst rank first
    for (std::size_t row = 0; row < k; ++row) {
        const int s = by_rank[row];
        const double x = px(report.average_ranks[s]);
        const double y = label_base + 22 * static_cast<double>(row);
        out << "<line x1=\"" << num(x) << "\" y1=\"" << num(axis_y) << "\" x2=\"" << num(x)
            << "\" y2=\"" << num(y - 10) << "\" stroke=\"#666\"/>\n";
        char label[128];
        std::snprintf(label, sizeof(label), "%s (%.3f)", report.solvers[s].c_str(),
                      report.average_ranks[s]);
        out << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" text-anchor=\"middle\">" << label
            << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace fjssp
