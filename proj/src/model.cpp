#include "fjssp/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace fjssp {

namespace {

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

}  // namespace

void validate_instance(const Instance& inst) {
    if (inst.num_machines < 1) throw ModelError("instance needs at least one machine");
    if (inst.jobs.empty()) throw ModelError("instance needs at least one job");
    if (inst.num_workers < 0) throw ModelError("negative worker count");
    const bool workers = inst.has_workers();
    for (std::size_t i = 0; i < inst.jobs.size(); ++i) {
        const Job& job = inst.jobs[i];
        if (job.operations.empty())
            throw ModelError("job " + std::to_string(i + 1) + " has no operations");
        for (std::size_t j = 0; j < job.operations.size(); ++j) {
            const Operation& op = job.operations[j];
            const std::string where =
                "operation (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
            if (op.options.empty()) throw ModelError(where + " has no machine options");
            std::set<int> machines;
            for (const MachineOption& mo : op.options) {
                if (mo.machine < 1 || mo.machine > inst.num_machines)
                    throw ModelError(where + ": machine index " + std::to_string(mo.machine) +
                                     " out of [1, m]");
                if (!machines.insert(mo.machine).second)
                    throw ModelError(where + ": duplicate machine " + std::to_string(mo.machine));
                if (workers) {
                    if (mo.workers.empty())
                        throw ModelError(where + ": machine option without workers in worker instance");
                    std::set<int> ws;
                    for (const WorkerOption& wo : mo.workers) {
                        if (wo.worker < 1 || wo.worker > inst.num_workers)
                            throw ModelError(where + ": worker index out of [1, w]");
                        if (!ws.insert(wo.worker).second)
                            throw ModelError(where + ": duplicate worker " + std::to_string(wo.worker));
                        if (wo.duration < 1) throw ModelError(where + ": non-positive duration");
                    }
                } else {
                    if (!mo.workers.empty())
                        throw ModelError(where + ": worker options in a plain instance");
                    if (mo.duration < 1) throw ModelError(where + ": non-positive duration");
                }
            }
        }
    }
}

std::vector<int> operation_offsets(const Instance& inst) {
    std::vector<int> offs(inst.jobs.size() + 1, 0);
    for (std::size_t i = 0; i < inst.jobs.size(); ++i)
        offs[i + 1] = offs[i] + static_cast<int>(inst.jobs[i].operations.size());
    return offs;
}

namespace {

struct DurationStats {
    long long t_min = 0, t_max = 0;
    double mean = 0.0, stddev = 0.0;
    long long distinct = 0;
    long long count = 0;
};

DurationStats duration_stats(const std::vector<long long>& durations) {
    DurationStats s;
    s.count = static_cast<long long>(durations.size());
    s.t_min = *std::min_element(durations.begin(), durations.end());
    s.t_max = *std::max_element(durations.begin(), durations.end());
    double sum = 0.0;
    for (long long d : durations) sum += static_cast<double>(d);
    s.mean = sum / static_cast<double>(durations.size());
    double sq = 0.0;
    for (long long d : durations) {
        const double delta = static_cast<double>(d) - s.mean;
        sq += delta * delta;
    }
    s.stddev = std::sqrt(sq / static_cast<double>(durations.size()));
    s.distinct = static_cast<long long>(std::set<long long>(durations.begin(), durations.end()).size());
    return s;
}

}  // namespace

Characteristics compute_fjssp_characteristics(const Instance& inst) {
    validate_instance(inst);
    if (inst.has_workers())
        throw ModelError("compute_fjssp_characteristics: instance carries worker options");

    Characteristics c;
    c.n = inst.num_jobs();
    c.m = inst.num_machines;
    c.w = 0;
    c.total_ops = inst.total_operations();
    c.ops_per_job = static_cast<double>(c.total_ops) / static_cast<double>(c.n);

    long long option_count = 0;
    std::vector<long long> durations;
    for (const Job& job : inst.jobs)
        for (const Operation& op : job.operations) {
            option_count += static_cast<long long>(op.options.size());
            for (const MachineOption& mo : op.options) durations.push_back(mo.duration);
        }

    const DurationStats ds = duration_stats(durations);
    c.t_min = ds.t_min;
    c.t_max = ds.t_max;
    c.duration_span = ds.t_max - ds.t_min;
    c.t_mean = ds.mean;
    c.t_std = ds.stddev;

    const double m_avg = static_cast<double>(option_count) / static_cast<double>(c.total_ops);
    c.beta = m_avg / static_cast<double>(c.m);
    c.dv = static_cast<double>(ds.distinct) / static_cast<double>(option_count);
    return c;
}

Characteristics compute_fjsspw_characteristics(const WorkerInstance& inst, ComboPoolRule rule) {
    validate_instance(inst);
    if (!inst.has_workers())
        throw ModelError("compute_fjsspw_characteristics: plain instance without workers");

    Characteristics c;
    c.n = inst.num_jobs();
    c.m = inst.num_machines;
    c.w = inst.num_workers;
    c.total_ops = inst.total_operations();
    c.ops_per_job = static_cast<double>(c.total_ops) / static_cast<double>(c.n);

    long long combo_count = 0;
    std::set<std::pair<int, int>> pairs;
    std::vector<long long> durations;
    for (const Job& job : inst.jobs)
        for (const Operation& op : job.operations)
            for (const MachineOption& mo : op.options)
                for (const WorkerOption& wo : mo.workers) {
                    ++combo_count;
                    pairs.emplace(mo.machine, wo.worker);
                    durations.push_back(wo.duration);
                }

    const DurationStats ds = duration_stats(durations);
    c.t_min = ds.t_min;
    c.t_max = ds.t_max;
    c.duration_span = ds.t_max - ds.t_min;
    c.t_mean = ds.mean;
    c.t_std = ds.stddev;

    c.omega_avg = static_cast<double>(combo_count) / static_cast<double>(c.total_ops);
    c.omega_unique = rule == ComboPoolRule::occurring_pairs
                         ? static_cast<double>(pairs.size())
                         : static_cast<double>(c.m) * static_cast<double>(c.w);
    c.beta = c.omega_avg / c.omega_unique;
    // omega_avg * N == total combination count, so dv is distinct / total
    c.dv = static_cast<double>(ds.distinct) / (c.omega_avg * static_cast<double>(c.total_ops));
    return c;
}

Characteristics compute_characteristics(const Instance& inst, ComboPoolRule rule) {
    return inst.has_workers() ? compute_fjsspw_characteristics(inst, rule)
                              : compute_fjssp_characteristics(inst);
}

double characteristic_value(const Characteristics& c, std::string_view field) {
    if (field == "n") return c.n;
    if (field == "m") return c.m;
    if (field == "w") return c.w;
    if (field == "N") return static_cast<double>(c.total_ops);
    if (field == "ops_per_job") return c.ops_per_job;
    if (field == "T_min") return static_cast<double>(c.t_min);
    if (field == "T_max") return static_cast<double>(c.t_max);
    if (field == "duration_span") return static_cast<double>(c.duration_span);
    if (field == "T_mean") return c.t_mean;
    if (field == "T_std") return c.t_std;
    if (field == "beta") return c.beta;
    if (field == "dv") return c.dv;
    if (field == "omega_avg") return c.omega_avg;
    if (field == "omega_unique") return c.omega_unique;
    throw ModelError("unknown characteristic field: " + std::string(field));
}

void FilterSpec::require(const std::string& field, std::optional<double> lo, std::optional<double> hi) {
    if (lo && hi && *lo > *hi) throw ModelError("filter bounds inverted for " + field);
    bounds[field] = Bounds{lo, hi};
}

std::vector<std::string> filter_catalog(const std::vector<CatalogRow>& rows, const FilterSpec& spec) {
    std::vector<std::string> out;
    for (const CatalogRow& row : rows) {
        if (spec.sources && !spec.sources->count(row.source)) continue;
        bool ok = true;
        for (const auto& [field, bounds] : spec.bounds)
            if (!bounds.contains(characteristic_value(row.ch, field))) {
                ok = false;
                break;
            }
        if (ok) out.push_back(row.id);
    }
    return out;
}

std::string characteristics_csv_header() {
    return "id,source,n,m,w,N,ops_per_job,T_min,T_max,duration_span,T_mean,T_std,beta,dv";
}

std::string characteristics_csv_row(const std::string& id, const std::string& source,
                                    const Characteristics& c) {
    std::ostringstream out;
    out << id << ',' << source << ',' << c.n << ',' << c.m << ',' << c.w << ',' << c.total_ops << ','
        << fixed6(c.ops_per_job) << ',' << c.t_min << ',' << c.t_max << ',' << c.duration_span << ','
        << fixed6(c.t_mean) << ',' << fixed6(c.t_std) << ',' << fixed6(c.beta) << ',' << fixed6(c.dv);
    return out.str();
}

}  // namespace fjssp
