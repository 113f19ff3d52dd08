#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fjssp/analysis.hpp"
#include "fjssp/io.hpp"
#include "fjssp/solvers.hpp"

namespace fjssp {

/// One line of the JSON-lines run log: a SolveRun plus plan coordinates and
/// environment metadata. Crashed runs keep feasible == false and carry the
/// error text.
struct RunRecord {
    SolveRun run;
    int repetition = 0;
    std::string version;
    std::string host;
    std::string error;  // empty unless the run crashed

    std::string to_json() const;
    static RunRecord from_json(const std::string& line);
};

std::vector<RunRecord> read_records(const std::filesystem::path& file);

struct SolverSpec {
    std::string name;  // "greedy", "greedy-ef" or "ga"
    GaConfig ga;
    GreedyConfig greedy;
};

struct ExperimentPlan {
    std::vector<std::string> instance_ids;
    std::vector<SolverSpec> solvers;
    int repetitions = 20;
    std::uint64_t base_seed = 1;
    double time_limit = 1200.0;  // seconds per run
    std::filesystem::path output_dir;
    int jobs = 1;  // worker pool size
    bool resume = false;
    bool deterministic_time = false;
};

/// Runs every (instance, solver, repetition) triple of the plan through a
/// bounded worker pool, appending one record per run to
/// output_dir/records.jsonl. Seeds derive as base_seed + run index in plan
/// order, so reruns and resumes assign the same seed to the same triple.
/// Returns the full record list found in the log afterwards.
std::vector<RunRecord> run_experiment(const Catalog& catalog, const ExperimentPlan& plan);

struct AggregateCell {
    int repetitions = 0;
    int feasible_runs = 0;
    double best = 0.0;
    double mean = 0.0;
    double stddev = 0.0;
    double best_time = 0.0;  // time-to-best of the best repetition
};

struct Summary {
    ResultMatrix matrix;  // best repetition per (solver, instance)
    std::map<std::pair<std::string, std::string>, AggregateCell> aggregates;  // (solver, instance)
    std::vector<std::string> warnings;
};

/// Pure fold over the records: per (solver, instance) the best and the
/// mean/stddev over feasible repetitions. known_ids, when given, drops
/// records of unknown instances with a warning.
Summary summarize(const std::vector<RunRecord>& records,
                  const std::vector<std::string>* known_ids = nullptr);

std::string summary_csv(const Summary& summary);

/// CSV-backed store of the smallest verified makespan (and lower bound) per
/// instance. Updates are monotone: a value is replaced only by a strictly
/// smaller feasible one, and never below the stored lower bound.
class BestKnownStore {
public:
    struct Entry {
        std::optional<double> best;
        std::optional<double> lower_bound;
        std::string provenance;
    };

    static BestKnownStore load(const std::filesystem::path& file);
    void save(const std::filesystem::path& file) const;

    const Entry* find(const std::string& id) const;
    void set(const std::string& id, Entry entry);
    std::map<std::string, double> best_values() const;
    const std::map<std::string, Entry>& entries() const { return entries_; }

    struct UpdateReport {
        std::vector<std::string> updates;  // human-readable change log
        std::vector<std::string> errors;   // integrity violations
    };

    /// Applies feasible records: strictly smaller values replace stored
    /// bests; candidates below a stored lower bound are rejected.
    UpdateReport update(const std::vector<RunRecord>& records);

private:
    std::map<std::string, Entry> entries_;
};

}  // namespace fjssp
