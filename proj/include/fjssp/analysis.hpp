#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fjssp/model.hpp"

namespace fjssp {

/// One (solver, instance) outcome: best objective value and the elapsed
/// seconds at which it was reached. Infeasible cells stay disengaged.
struct ResultCell {
    double value = 0.0;
    double time_to_best = 0.0;
};

struct ResultMatrix {
    std::vector<std::string> solvers;
    std::vector<std::string> instances;
    std::vector<std::optional<ResultCell>> cells;  // solvers x instances, row-major

    void resize() { cells.assign(solvers.size() * instances.size(), std::nullopt); }
    std::optional<ResultCell>& cell(std::size_t solver, std::size_t instance) {
        return cells[solver * instances.size() + instance];
    }
    const std::optional<ResultCell>& cell(std::size_t solver, std::size_t instance) const {
        return cells[solver * instances.size() + instance];
    }
    std::size_t num_solvers() const { return solvers.size(); }
    std::size_t num_instances() const { return instances.size(); }
};

/// (c_fb - c_best) / c_best; requires c_best > 0.
double relative_gap(double c_fb, double c_best);

struct GapCurvePoint {
    double threshold = 0.0;  // gap value
    double fraction = 0.0;   // share of instances solved within the threshold
};

/// Step curve of the share of instances a solver closes to within each gap.
/// Infeasible cells and instances without a best-known value keep the curve
/// below 1; the denominator is the full instance count of the matrix.
std::vector<GapCurvePoint> gap_curve(const ResultMatrix& results, std::size_t solver,
                                     const std::map<std::string, double>& best_known);

enum class InfeasiblePairRule { split_half, zero };

struct ScoreReport {
    std::vector<std::string> solvers;
    std::vector<double> scores;
};

/// Pairwise tournament score: on each instance a solver earns one point per
/// opponent with worse value or no feasible result; value ties split the
/// point weighted by the opponent's time share. Pairs with both sides
/// infeasible follow the configured rule (half/half by default).
ScoreReport minizinc_score(const ResultMatrix& results,
                           InfeasiblePairRule rule = InfeasiblePairRule::split_half);

struct RankingReport {
    std::vector<std::string> solvers;
    std::vector<double> average_ranks;  // 1 = best
    double statistic = 0.0;             // Friedman chi-squared
    double p_value = 1.0;
    double alpha = 0.05;
    double critical_distance = 0.0;
    bool significant = false;
    /// Maximal runs of rank-adjacent solvers whose average ranks differ by
    /// at most the critical distance; a single all-solver group when the
    /// omnibus test is not significant. Indices into solvers.
    std::vector<std::vector<int>> groups;
};

/// Friedman omnibus test on per-instance solver ranks (smaller value = better
/// rank; ties share average ranks; infeasible results rank worst) followed by
/// the Nemenyi critical-distance grouping at the given level.
RankingReport friedman_nemenyi(const ResultMatrix& results, double alpha = 0.05);

std::string score_report_csv(const ScoreReport& report);
std::string ranking_report_csv(const RankingReport& report);

}  // namespace fjssp
