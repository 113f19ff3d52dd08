#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fjssp/encoding.hpp"
#include "fjssp/model.hpp"
#include "fjssp/rng.hpp"

namespace fjssp {

struct TracePoint {
    double elapsed = 0.0;   // seconds since solver start, monotonic clock
    long long value = 0;
};

/// One solver execution. The trace holds every strict improvement of the
/// incumbent; feasible runs end with best_makespan as the last trace value.
struct SolveRun {
    std::string solver;
    std::string instance_id;
    std::uint64_t seed = 0;
    Encoding best;
    long long best_makespan = 0;
    bool feasible = false;
    std::vector<TracePoint> trace;
    double wallclock = 0.0;
};

std::string solve_run_to_json(const SolveRun& run);
SolveRun solve_run_from_json(const std::string& text);

struct GreedyConfig {
    /// Selection criterion for the frontier operation: smallest option
    /// duration by default; earliest completion time when set.
    bool earliest_finish = false;
    /// Report zero elapsed times so outputs are byte-stable.
    bool deterministic_time = false;
};

/// Repeatedly schedules, among the next unscheduled operation of every job,
/// the one whose cheapest (machine, worker) option is smallest; ties between
/// jobs are broken uniformly at random with the seeded generator.
SolveRun greedy_solve(const Instance& instance, std::uint64_t seed, const GreedyConfig& cfg = {});

struct GaConfig {
    int population = 100;
    int tournament = 3;
    int elitism = 1;
    double crossover_rate = 0.9;
    double mutation_rate = 0.2;
    double time_limit = 10.0;                   // seconds
    std::optional<long long> eval_budget;       // decode calls; binds when set
    bool deterministic_time = false;            // requires eval_budget

    void validate() const;
};

/// Genetic algorithm over (sequence, machines, workers) triples: greedy-seeded
/// population, job-split sequence crossover, positionwise uniform assignment
/// crossover with worker repair, swap/reassign mutation, tournament selection
/// with elitism. Every intermediate individual is valid by construction.
SolveRun ga_solve(const Instance& instance, const GaConfig& cfg, std::uint64_t seed);

// Operator building blocks, exposed for property testing.
Encoding random_encoding(const Instance& instance, SplitMix64& rng);
Encoding ga_crossover(const Instance& instance, const Encoding& a, const Encoding& b,
                      SplitMix64& rng);
void ga_mutate(const Instance& instance, Encoding& enc, SplitMix64& rng);

}  // namespace fjssp
