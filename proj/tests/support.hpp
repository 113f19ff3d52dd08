#pragma once

// Shared fixtures and independent oracles for the test suites.

#include <algorithm>
#include <map>
#include <vector>

#include "fjssp/encoding.hpp"
#include "fjssp/model.hpp"
#include "fjssp/rng.hpp"

namespace testsupport {

using namespace fjssp;

// n=2, m=2, w=2.
// J1: O11 in {M1/W1:3, M1/W2:4, M2/W1:2}, O12 in {M2/W2:5}
// J2: O21 in {M1/W2:4, M2/W1:3, M2/W2:6}
inline WorkerInstance tiny_w() {
    WorkerInstance inst;
    inst.id = "TINY-W";
    inst.num_machines = 2;
    inst.num_workers = 2;
    Job j1;
    Operation o11;
    o11.options.push_back({1, 0, {{1, 3}, {2, 4}}});
    o11.options.push_back({2, 0, {{1, 2}}});
    Operation o12;
    o12.options.push_back({2, 0, {{2, 5}}});
    j1.operations = {o11, o12};
    Job j2;
    Operation o21;
    o21.options.push_back({1, 0, {{2, 4}}});
    o21.options.push_back({2, 0, {{1, 3}, {2, 6}}});
    j2.operations = {o21};
    inst.jobs = {j1, j2};
    return inst;
}

// job -> operation -> list of (machine, duration)
inline Instance make_plain(int m, const std::vector<std::vector<std::vector<std::pair<int, int>>>>& spec,
                           const std::string& id = "plain") {
    Instance inst;
    inst.id = id;
    inst.num_machines = m;
    for (const auto& job_spec : spec) {
        Job job;
        for (const auto& op_spec : job_spec) {
            Operation op;
            for (const auto& [machine, duration] : op_spec)
                op.options.push_back({machine, duration, {}});
            job.operations.push_back(std::move(op));
        }
        inst.jobs.push_back(std::move(job));
    }
    validate_instance(inst);
    return inst;
}

inline Instance random_instance(SplitMix64& rng, bool workers, int max_total_ops) {
    Instance inst;
    inst.id = "random";
    inst.num_machines = rng.uniform_int(1, 3);
    inst.num_workers = workers ? rng.uniform_int(1, 3) : 0;
    int budget = max_total_ops;
    const int n = rng.uniform_int(1, std::min(3, budget));
    for (int i = 0; i < n; ++i) {
        Job job;
        const int remaining_jobs = n - i - 1;
        const int max_here = budget - remaining_jobs;  // leave one op per later job
        const int ops = rng.uniform_int(1, std::min(3, max_here));
        budget -= ops;
        for (int j = 0; j < ops; ++j) {
            Operation op;
            const std::vector<int> machines =
                rng.sample_without_replacement(inst.num_machines,
                                               rng.uniform_int(1, inst.num_machines));
            for (int machine : machines) {
                MachineOption mo;
                mo.machine = machine + 1;
                if (workers) {
                    const std::vector<int> crew = rng.sample_without_replacement(
                        inst.num_workers, rng.uniform_int(1, inst.num_workers));
                    for (int worker : crew) mo.workers.push_back({worker + 1, rng.uniform_int(1, 9)});
                } else {
                    mo.duration = rng.uniform_int(1, 9);
                }
                op.options.push_back(std::move(mo));
            }
            job.operations.push_back(std::move(op));
        }
        inst.jobs.push_back(std::move(job));
    }
    validate_instance(inst);
    return inst;
}

/// Independent schedule replay: same semi-active insertion rule as the
/// decoder, realized over explicit busy-interval lists instead of scalar
/// availability times.
inline long long replay_makespan(const Instance& inst, const Encoding& enc) {
    struct Interval {
        long long start, end;
    };
    std::map<int, std::vector<Interval>> machine_busy, worker_busy;
    std::vector<std::vector<Interval>> job_busy(inst.num_jobs());
    const std::vector<int> offs = operation_offsets(inst);
    std::vector<int> seen(inst.num_jobs(), 0);
    const bool workers = inst.has_workers();

    const auto max_end = [](const std::vector<Interval>& v) {
        long long end = 0;
        for (const Interval& iv : v) end = std::max(end, iv.end);
        return end;
    };

    long long makespan = 0;
    for (int job_id : enc.sequence) {
        const int j = seen[job_id - 1]++;
        const int p = offs[job_id - 1] + j;
        const Operation& op = inst.jobs[job_id - 1].operations[j];
        const MachineOption* mo = nullptr;
        for (const MachineOption& candidate : op.options)
            if (candidate.machine == enc.machines[p]) mo = &candidate;
        long long duration = 0;
        if (workers) {
            for (const WorkerOption& wo : mo->workers)
                if (wo.worker == enc.workers[p]) duration = wo.duration;
        } else {
            duration = mo->duration;
        }
        long long start = std::max(max_end(job_busy[job_id - 1]), max_end(machine_busy[mo->machine]));
        if (workers) start = std::max(start, max_end(worker_busy[enc.workers[p]]));
        const Interval iv{start, start + duration};
        job_busy[job_id - 1].push_back(iv);
        machine_busy[mo->machine].push_back(iv);
        if (workers) worker_busy[enc.workers[p]].push_back(iv);
        makespan = std::max(makespan, iv.end);
    }
    return makespan;
}

/// Asserts that no machine, worker, or job runs two operations in
/// overlapping intervals and that job operations respect their order.
/// Returns an empty string on success, a description otherwise.
inline std::string overlap_report(const Instance& inst, const Schedule& sched) {
    const std::vector<int> offs = operation_offsets(inst);
    std::map<int, std::vector<const OpSchedule*>> by_machine, by_worker;
    for (const OpSchedule& op : sched.ops) {
        by_machine[op.machine].push_back(&op);
        if (inst.has_workers()) by_worker[op.worker].push_back(&op);
    }
    const auto check_group = [](std::vector<const OpSchedule*>& group, const char* what) {
        std::sort(group.begin(), group.end(),
                  [](const OpSchedule* a, const OpSchedule* b) { return a->start < b->start; });
        for (std::size_t i = 1; i < group.size(); ++i)
            if (group[i]->start < group[i - 1]->end)
                return std::string(what) + " overlap at t=" + std::to_string(group[i]->start);
        return std::string();
    };
    for (auto& [machine, group] : by_machine) {
        const std::string err = check_group(group, "machine");
        if (!err.empty()) return err;
    }
    for (auto& [worker, group] : by_worker) {
        const std::string err = check_group(group, "worker");
        if (!err.empty()) return err;
    }
    for (int i = 0; i < inst.num_jobs(); ++i) {
        const int count = static_cast<int>(inst.jobs[i].operations.size());
        for (int j = 1; j < count; ++j) {
            const OpSchedule& prev = sched.ops[offs[i] + j - 1];
            const OpSchedule& cur = sched.ops[offs[i] + j];
            if (cur.start < prev.end) return "job order violated for job " + std::to_string(i + 1);
        }
    }
    return std::string();
}

}  // namespace testsupport
