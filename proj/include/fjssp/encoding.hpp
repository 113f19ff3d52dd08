#pragma once

#include <string>
#include <vector>

#include "fjssp/model.hpp"

namespace fjssp {

/// Vector encoding of a schedule. sequence holds job ids (1-based) and lists
/// job i exactly n_i times; the j-th appearance of i names operation (i, j).
/// machines and workers are indexed by the fixed operation order (job 1 op 1
/// ... job n op n_n); workers stays empty for plain instances.
struct Encoding {
    std::vector<int> sequence;
    std::vector<int> machines;
    std::vector<int> workers;

    friend bool operator==(const Encoding&, const Encoding&) = default;
    friend auto operator<=>(const Encoding&, const Encoding&) = default;
};

struct Violation {
    enum class Kind { shape, multiplicity, machine, worker };
    Kind kind;
    int position;  // index in the offending vector; job id for multiplicity; -1 for shape
    std::string message;
};

/// Empty result iff the encoding satisfies all three vector invariants.
std::vector<Violation> validate_encoding(const Instance& instance, const Encoding& enc);

struct EncodingError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct OpSchedule {
    int job = 0;      // 1-based
    int op = 0;       // 1-based within the job
    int machine = 0;
    int worker = 0;   // 0 for plain instances
    long long start = 0;
    long long end = 0;
};

struct Schedule {
    std::vector<OpSchedule> ops;  // fixed operation order
    long long makespan = 0;
};

/// Semi-active decoding: operations are inserted in sequence order, each
/// starting as early as its job predecessor, machine, and worker allow.
/// Throws EncodingError on any invalid encoding; never repairs.
Schedule decode_schedule(const Instance& instance, const Encoding& enc);

/// max of the per-job chain bound and the machine (and worker) load bounds,
/// all over minimum option durations.
long long lower_bound(const Instance& instance);

struct BruteForceResult {
    long long makespan = 0;
    Encoding encoding;
};

/// Exhaustive search over all sequence interleavings and assignments.
/// Ties resolve to the lexicographically smallest (sequence, machines,
/// workers) triple. Refuses instances with more than max_ops operations.
BruteForceResult brute_force_solve(const Instance& instance, int max_ops = 8);

std::string schedule_to_json(const Instance& instance, const Schedule& schedule);

/// Gantt rendering: one row per machine, bars colored by job, worker id
/// printed inside each bar for worker instances.
std::string schedule_to_svg(const Instance& instance, const Schedule& schedule);

}  // namespace fjssp
