#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fjssp {

// Indices are 1-based throughout the in-memory model (machine 1..m,
// worker 1..w, job 1..n). File formats with 0-based ids are shifted on
// parse and shifted back on write.

struct WorkerOption {
    int worker = 0;
    int duration = 0;

    friend bool operator==(const WorkerOption&, const WorkerOption&) = default;
};

struct MachineOption {
    int machine = 0;
    int duration = 0;  // plain-FJSSP processing time; unused when workers is non-empty
    std::vector<WorkerOption> workers;

    friend bool operator==(const MachineOption&, const MachineOption&) = default;

    /// Number of assignable (machine, worker) combinations this option
    /// contributes: 1 for plain instances, |workers| otherwise.
    int combo_count() const { return workers.empty() ? 1 : static_cast<int>(workers.size()); }
};

struct Operation {
    std::vector<MachineOption> options;

    friend bool operator==(const Operation&, const Operation&) = default;
};

struct Job {
    std::vector<Operation> operations;

    friend bool operator==(const Job&, const Job&) = default;
};

/// A benchmark instance. num_workers == 0 marks a plain FJSSP; a worker
/// instance has num_workers >= 1 and a non-empty worker list on every
/// machine option.
struct Instance {
    std::string id;
    int num_machines = 0;
    int num_workers = 0;
    std::vector<Job> jobs;

    friend bool operator==(const Instance&, const Instance&) = default;

    int num_jobs() const { return static_cast<int>(jobs.size()); }
    bool has_workers() const { return num_workers > 0; }
    int total_operations() const {
        int n = 0;
        for (const auto& j : jobs) n += static_cast<int>(j.operations.size());
        return n;
    }
};

using WorkerInstance = Instance;

struct ModelError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Checks every structural invariant (counts, index ranges, positive
/// durations, distinctness, worker/plain consistency); throws ModelError
/// with a description of the first violation.
void validate_instance(const Instance& instance);

/// Prefix offsets of the fixed operation order (job 1 op 1, ..., job n op
/// n_n); size num_jobs()+1, back() == total_operations().
std::vector<int> operation_offsets(const Instance& instance);

// ---------------------------------------------------------------------------

/// Per-instance statistics used for catalog filtering. Duration statistics
/// run over the multiset of all assignment-option durations; t_std is the
/// population standard deviation.
struct Characteristics {
    int n = 0;
    int m = 0;
    int w = 0;  // 0 for plain FJSSP
    long long total_ops = 0;
    double ops_per_job = 0.0;
    long long t_min = 0;
    long long t_max = 0;
    long long duration_span = 0;
    double t_mean = 0.0;
    double t_std = 0.0;
    double beta = 0.0;
    double dv = 0.0;
    // worker-variant extras, 0 for plain instances
    double omega_avg = 0.0;
    double omega_unique = 0.0;

    friend bool operator==(const Characteristics&, const Characteristics&) = default;
};

/// How the pool of available machine-worker combinations is counted for the
/// worker-variant flexibility ratio: the pairs that actually occur in the
/// instance (default), or the full m*w cross product.
enum class ComboPoolRule { occurring_pairs, cartesian };

Characteristics compute_fjssp_characteristics(const Instance& instance);
Characteristics compute_fjsspw_characteristics(const WorkerInstance& instance,
                                               ComboPoolRule rule = ComboPoolRule::occurring_pairs);
/// Dispatches on the instance variant.
Characteristics compute_characteristics(const Instance& instance,
                                        ComboPoolRule rule = ComboPoolRule::occurring_pairs);

/// Names a numeric Characteristics field; throws ModelError for unknown names.
/// Known fields: n, m, w, N, ops_per_job, T_min, T_max, duration_span,
/// T_mean, T_std, beta, dv, omega_avg, omega_unique.
double characteristic_value(const Characteristics& c, std::string_view field);

struct Bounds {
    std::optional<double> lower;
    std::optional<double> upper;

    bool contains(double v) const {
        return (!lower || v >= *lower) && (!upper || v <= *upper);
    }
};

struct FilterSpec {
    std::map<std::string, Bounds> bounds;             // keyed by characteristic field name
    std::optional<std::set<std::string>> sources;     // whitelist of source names

    void require(const std::string& field, std::optional<double> lo, std::optional<double> hi);
};

struct CatalogRow {
    std::string id;
    std::string source;
    Characteristics ch;
};

/// Ids whose characteristics satisfy every bound (and whose source is
/// whitelisted, if a whitelist is set); input order preserved.
std::vector<std::string> filter_catalog(const std::vector<CatalogRow>& rows, const FilterSpec& spec);

/// CSV with fixed column order: id, source, n, m, w, N, ops_per_job, T_min,
/// T_max, duration_span, T_mean, T_std, beta, dv. Floats carry 6 decimals.
std::string characteristics_csv_header();
std::string characteristics_csv_row(const std::string& id, const std::string& source,
                                    const Characteristics& c);

}  // namespace fjssp
