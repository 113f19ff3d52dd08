#include "fjssp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "fjssp/stats.hpp"

namespace fjssp {

namespace {

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

}  // namespace

double relative_gap(double c_fb, double c_best) {
    if (!(c_best > 0.0)) throw std::domain_error("relative_gap: best-known value must be positive");
    return (c_fb - c_best) / c_best;
}

std::vector<GapCurvePoint> gap_curve(const ResultMatrix& results, std::size_t solver,
                                     const std::map<std::string, double>& best_known) {
    const std::size_t total = results.num_instances();
    std::vector<double> gaps;
    for (std::size_t i = 0; i < total; ++i) {
        const auto& cell = results.cell(solver, i);
        if (!cell) continue;
        const auto it = best_known.find(results.instances[i]);
        if (it == best_known.end()) continue;
        gaps.push_back(relative_gap(cell->value, it->second));
    }
    std::sort(gaps.begin(), gaps.end());
    std::vector<GapCurvePoint> curve;
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        if (!curve.empty() && curve.back().threshold == gaps[i]) {
            curve.back().fraction = static_cast<double>(i + 1) / static_cast<double>(total);
        } else {
            curve.push_back({gaps[i], static_cast<double>(i + 1) / static_cast<double>(total)});
        }
    }
    return curve;
}

ScoreReport minizinc_score(const ResultMatrix& results, InfeasiblePairRule rule) {
    const std::size_t k = results.num_solvers();
    if (k < 2) throw std::invalid_argument("minizinc_score: need at least two solvers");

    ScoreReport report;
    report.solvers = results.solvers;
    report.scores.assign(k, 0.0);
    for (std::size_t inst = 0; inst < results.num_instances(); ++inst) {
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i + 1; j < k; ++j) {
                const auto& a = results.cell(i, inst);
                const auto& b = results.cell(j, inst);
                if (!a && !b) {
                    if (rule == InfeasiblePairRule::split_half) {
                        report.scores[i] += 0.5;
                        report.scores[j] += 0.5;
                    }
                } else if (a && !b) {
                    report.scores[i] += 1.0;
                } else if (!a && b) {
                    report.scores[j] += 1.0;
                } else if (a->value < b->value) {
                    report.scores[i] += 1.0;
                } else if (b->value < a->value) {
                    report.scores[j] += 1.0;
                } else {
                    // quality tie: split the point weighted by time to result
                    const double ti = a->time_to_best, tj = b->time_to_best;
                    if (ti + tj <= 0.0) {
                        report.scores[i] += 0.5;
                        report.scores[j] += 0.5;
                    } else {
                        report.scores[i] += tj / (ti + tj);
                        report.scores[j] += ti / (ti + tj);
                    }
                }
            }
        }
    }
    return report;
}

RankingReport friedman_nemenyi(const ResultMatrix& results, double alpha) {
    const std::size_t k = results.num_solvers();
    const std::size_t nq = results.num_instances();
    if (k < 2) throw std::invalid_argument("friedman_nemenyi: need at least two solvers");
    if (nq < 2) throw std::invalid_argument("friedman_nemenyi: need at least two instances");

    RankingReport report;
    report.solvers = results.solvers;
    report.alpha = alpha;
    std::vector<double> rank_sums(k, 0.0);

    // per instance: rank feasible values ascending, infeasible tied worst
    std::vector<std::size_t> order(k);
    for (std::size_t inst = 0; inst < nq; ++inst) {
        const auto key = [&](std::size_t s) -> std::pair<int, double> {
            const auto& cell = results.cell(s, inst);
            return cell ? std::make_pair(0, cell->value)
                        : std::make_pair(1, 0.0);
        };
        for (std::size_t s = 0; s < k; ++s) order[s] = s;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
        std::size_t pos = 0;
        while (pos < k) {
            std::size_t end = pos + 1;
            while (end < k && key(order[end]) == key(order[pos])) ++end;
            const double shared = (static_cast<double>(pos + 1) + static_cast<double>(end)) / 2.0;
            for (std::size_t t = pos; t < end; ++t) rank_sums[order[t]] += shared;
            pos = end;
        }
    }

    report.average_ranks.resize(k);
    for (std::size_t s = 0; s < k; ++s)
        report.average_ranks[s] = rank_sums[s] / static_cast<double>(nq);

    const double dk = static_cast<double>(k);
    const double dn = static_cast<double>(nq);
    double sum_sq = 0.0;
    for (double r : rank_sums) sum_sq += r * r;
    double stat = 12.0 / (dn * dk * (dk + 1.0)) * sum_sq - 3.0 * dn * (dk + 1.0);
    if (stat < 0.0) stat = 0.0;  // all-tied matrices can land epsilon below zero
    report.statistic = stat;
    report.p_value = chi_squared_tail(stat, static_cast<int>(k) - 1);
    report.critical_distance = nemenyi_q05(static_cast<int>(k)) * std::sqrt(dk * (dk + 1.0) / (6.0 * dn));
    report.significant = report.p_value < alpha;

    // group rank-adjacent solvers closer than the critical distance
    std::vector<int> by_rank(k);
    for (std::size_t s = 0; s < k; ++s) by_rank[s] = static_cast<int>(s);
    std::stable_sort(by_rank.begin(), by_rank.end(), [&](int a, int b) {
        return report.average_ranks[a] < report.average_ranks[b];
    });
    if (!report.significant) {
        report.groups.push_back(by_rank);
    } else {
        std::size_t prev_end = 0;
        for (std::size_t start = 0; start < k; ++start) {
            std::size_t end = start + 1;
            while (end < k && report.average_ranks[by_rank[end]] -
                                      report.average_ranks[by_rank[start]] <=
                                  report.critical_distance)
                ++end;
            if (end - start >= 2 && end > prev_end) {
                report.groups.emplace_back(by_rank.begin() + start, by_rank.begin() + end);
                prev_end = end;
            }
        }
    }
    return report;
}

std::string score_report_csv(const ScoreReport& report) {
    std::ostringstream out;
    out << "solver,score\n";
    for (std::size_t i = 0; i < report.solvers.size(); ++i)
        out << report.solvers[i] << ',' << fixed6(report.scores[i]) << '\n';
    return out.str();
}

std::string ranking_report_csv(const RankingReport& report) {
    std::ostringstream out;
    out << "solver,average_rank\n";
    for (std::size_t i = 0; i < report.solvers.size(); ++i)
        out << report.solvers[i] << ',' << fixed6(report.average_ranks[i]) << '\n';
    out << "statistic," << fixed6(report.statistic) << '\n';
    out << "p_value," << fixed6(report.p_value) << '\n';
    out << "alpha," << fixed6(report.alpha) << '\n';
    out << "critical_distance," << fixed6(report.critical_distance) << '\n';
    out << "significant," << (report.significant ? 1 : 0) << '\n';
    for (std::size_t g = 0; g < report.groups.size(); ++g) {
        out << "group_" << g;
        for (int s : report.groups[g]) out << ',' << report.solvers[s];
        out << '\n';
    }
    return out.str();
}

}  // namespace fjssp
