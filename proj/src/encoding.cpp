#include "fjssp/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace fjssp {

namespace {

const MachineOption* find_option(const Operation& op, int machine) {
    for (const MachineOption& mo : op.options)
        if (mo.machine == machine) return &mo;
    return nullptr;
}

const WorkerOption* find_worker(const MachineOption& mo, int worker) {
    for (const WorkerOption& wo : mo.workers)
        if (wo.worker == worker) return &wo;
    return nullptr;
}

}  // namespace

std::vector<Violation> validate_encoding(const Instance& inst, const Encoding& enc) {
    std::vector<Violation> out;
    const int n = inst.num_jobs();
    const int total = inst.total_operations();
    const bool workers = inst.has_workers();

    if (static_cast<int>(enc.sequence.size()) != total)
        out.push_back({Violation::Kind::shape, -1,
                       "sequence length " + std::to_string(enc.sequence.size()) + ", expected " +
                           std::to_string(total)});
    if (static_cast<int>(enc.machines.size()) != total)
        out.push_back({Violation::Kind::shape, -1,
                       "machine vector length " + std::to_string(enc.machines.size()) +
                           ", expected " + std::to_string(total)});
    const std::size_t expected_workers = workers ? static_cast<std::size_t>(total) : 0;
    if (enc.workers.size() != expected_workers)
        out.push_back({Violation::Kind::shape, -1,
                       "worker vector length " + std::to_string(enc.workers.size()) + ", expected " +
                           std::to_string(expected_workers)});

    std::vector<int> count(n, 0);
    for (std::size_t pos = 0; pos < enc.sequence.size(); ++pos) {
        const int job = enc.sequence[pos];
        if (job < 1 || job > n)
            out.push_back({Violation::Kind::multiplicity, static_cast<int>(pos),
                           "sequence value " + std::to_string(job) + " is not a job id"});
        else
            ++count[job - 1];
    }
    for (int i = 0; i < n; ++i) {
        const int expect = static_cast<int>(inst.jobs[i].operations.size());
        if (static_cast<int>(enc.sequence.size()) == total && count[i] != expect)
            out.push_back({Violation::Kind::multiplicity, i + 1,
                           "job " + std::to_string(i + 1) + " appears " + std::to_string(count[i]) +
                               " times, expected " + std::to_string(expect)});
    }

    if (static_cast<int>(enc.machines.size()) == total &&
        enc.workers.size() == expected_workers) {
        int p = 0;
        for (int i = 0; i < n; ++i)
            for (const Operation& op : inst.jobs[i].operations) {
                const MachineOption* mo = find_option(op, enc.machines[p]);
                if (!mo)
                    out.push_back({Violation::Kind::machine, p,
                                   "machine " + std::to_string(enc.machines[p]) +
                                       " not admissible for operation " + std::to_string(p)});
                else if (workers && !find_worker(*mo, enc.workers[p]))
                    out.push_back({Violation::Kind::worker, p,
                                   "worker " + std::to_string(enc.workers[p]) +
                                       " not admissible on machine " +
                                       std::to_string(enc.machines[p]) + " for operation " +
                                       std::to_string(p)});
                ++p;
            }
    }
    return out;
}

Schedule decode_schedule(const Instance& inst, const Encoding& enc) {
    const int n = inst.num_jobs();
    const int total = inst.total_operations();
    const bool workers = inst.has_workers();
    const std::vector<int> offs = operation_offsets(inst);

    if (static_cast<int>(enc.sequence.size()) != total ||
        static_cast<int>(enc.machines.size()) != total ||
        enc.workers.size() != (workers ? static_cast<std::size_t>(total) : 0))
        throw EncodingError("decode: encoding shape does not match instance");

    std::vector<int> next_op(n, 0);
    std::vector<long long> job_free(n, 0);
    std::vector<long long> machine_free(inst.num_machines + 1, 0);
    std::vector<long long> worker_free(inst.num_workers + 1, 0);

    Schedule sched;
    sched.ops.resize(total);
    for (int pos = 0; pos < total; ++pos) {
        const int job = enc.sequence[pos];
        if (job < 1 || job > n) throw EncodingError("decode: bad job id in sequence");
        const int j = next_op[job - 1]++;
        if (j >= static_cast<int>(inst.jobs[job - 1].operations.size()))
            throw EncodingError("decode: job " + std::to_string(job) +
                                " appears more often than its operation count");
        const int p = offs[job - 1] + j;
        const Operation& op = inst.jobs[job - 1].operations[j];
        const MachineOption* mo = find_option(op, enc.machines[p]);
        if (!mo) throw EncodingError("decode: inadmissible machine at operation " + std::to_string(p));

        long long duration;
        int worker = 0;
        if (workers) {
            worker = enc.workers[p];
            const WorkerOption* wo = find_worker(*mo, worker);
            if (!wo)
                throw EncodingError("decode: inadmissible worker at operation " + std::to_string(p));
            duration = wo->duration;
        } else {
            duration = mo->duration;
        }

        long long start = std::max(job_free[job - 1], machine_free[mo->machine]);
        if (workers) start = std::max(start, worker_free[worker]);
        const long long end = start + duration;
        job_free[job - 1] = end;
        machine_free[mo->machine] = end;
        if (workers) worker_free[worker] = end;
        sched.ops[p] = {job, j + 1, mo->machine, worker, start, end};
    }

    sched.makespan = 0;
    for (const OpSchedule& s : sched.ops) sched.makespan = std::max(sched.makespan, s.end);
    return sched;
}

namespace {

long long min_option_duration(const Operation& op) {
    long long best = -1;
    for (const MachineOption& mo : op.options) {
        if (mo.workers.empty()) {
            if (best < 0 || mo.duration < best) best = mo.duration;
        } else {
            for (const WorkerOption& wo : mo.workers)
                if (best < 0 || wo.duration < best) best = wo.duration;
        }
    }
    return best;
}

}  // namespace

long long lower_bound(const Instance& inst) {
    long long job_bound = 0;
    long long total_min = 0;
    for (const Job& job : inst.jobs) {
        long long chain = 0;
        for (const Operation& op : job.operations) {
            const long long d = min_option_duration(op);
            chain += d;
            total_min += d;
        }
        job_bound = std::max(job_bound, chain);
    }
    const long long m = inst.num_machines;
    long long load_bound = (total_min + m - 1) / m;
    if (inst.has_workers()) {
        const long long w = inst.num_workers;
        load_bound = std::max(load_bound, (total_min + w - 1) / w);
    }
    return std::max(job_bound, load_bound);
}

namespace {

struct SearchState {
    const Instance* inst;
    std::vector<int> offsets;
    bool workers;
    int total;

    std::vector<int> next_op;
    std::vector<long long> job_free, machine_free, worker_free;
    Encoding current;
    long long partial_makespan = 0;

    long long best_value = -1;
    Encoding best;

    void run(int depth) {
        if (depth == total) {
            if (best_value < 0 || partial_makespan < best_value ||
                (partial_makespan == best_value && current < best)) {
                best_value = partial_makespan;
                best = current;
            }
            return;
        }
        for (int job = 1; job <= inst->num_jobs(); ++job) {
            const int j = next_op[job - 1];
            if (j >= static_cast<int>(inst->jobs[job - 1].operations.size())) continue;
            const int p = offsets[job - 1] + j;
            const Operation& op = inst->jobs[job - 1].operations[j];
            for (const MachineOption& mo : op.options) {
                const auto try_one = [&](int worker, long long duration) {
                    long long start = std::max(job_free[job - 1], machine_free[mo.machine]);
                    if (workers) start = std::max(start, worker_free[worker]);
                    const long long end = start + duration;
                    const long long saved_makespan = partial_makespan;
                    const long long saved_job = job_free[job - 1];
                    const long long saved_machine = machine_free[mo.machine];
                    const long long saved_worker = workers ? worker_free[worker] : 0;

                    partial_makespan = std::max(partial_makespan, end);
                    if (best_value >= 0 && partial_makespan > best_value) {
                        partial_makespan = saved_makespan;
                        return;  // no completion can beat or tie the incumbent
                    }
                    job_free[job - 1] = end;
                    machine_free[mo.machine] = end;
                    if (workers) worker_free[worker] = end;
                    next_op[job - 1] = j + 1;
                    current.sequence.push_back(job);
                    current.machines[p] = mo.machine;
                    if (workers) current.workers[p] = worker;

                    run(depth + 1);

                    current.sequence.pop_back();
                    next_op[job - 1] = j;
                    job_free[job - 1] = saved_job;
                    machine_free[mo.machine] = saved_machine;
                    if (workers) worker_free[worker] = saved_worker;
                    partial_makespan = saved_makespan;
                };
                if (workers)
                    for (const WorkerOption& wo : mo.workers) try_one(wo.worker, wo.duration);
                else
                    try_one(0, mo.duration);
            }
        }
    }
};

}  // namespace

BruteForceResult brute_force_solve(const Instance& inst, int max_ops) {
    validate_instance(inst);
    const int total = inst.total_operations();
    if (total > max_ops)
        throw std::invalid_argument("brute_force_solve: instance has " + std::to_string(total) +
                                    " operations, cap is " + std::to_string(max_ops));

    SearchState st;
    st.inst = &inst;
    st.offsets = operation_offsets(inst);
    st.workers = inst.has_workers();
    st.total = total;
    st.next_op.assign(inst.num_jobs(), 0);
    st.job_free.assign(inst.num_jobs(), 0);
    st.machine_free.assign(inst.num_machines + 1, 0);
    st.worker_free.assign(inst.num_workers + 1, 0);
    st.current.machines.assign(total, 0);
    if (st.workers) st.current.workers.assign(total, 0);
    st.current.sequence.reserve(total);

    st.run(0);
    return {st.best_value, st.best};
}

std::string schedule_to_json(const Instance& inst, const Schedule& sched) {
    nlohmann::json ops = nlohmann::json::array();
    for (const OpSchedule& s : sched.ops) {
        nlohmann::json o;
        o["job"] = s.job;
        o["op"] = s.op;
        o["machine"] = s.machine;
        if (inst.has_workers()) o["worker"] = s.worker;
        o["start"] = s.start;
        o["end"] = s.end;
        ops.push_back(std::move(o));
    }
    nlohmann::json doc;
    doc["instance"] = inst.id;
    doc["makespan"] = sched.makespan;
    doc["operations"] = std::move(ops);
    return doc.dump(2) + "\n";
}

namespace {

// 12-color palette cycled by job index
const char* const kPalette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
                                "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#86bcb6", "#d37295"};

}  // namespace

std::string schedule_to_svg(const Instance& inst, const Schedule& sched) {
    const int m = inst.num_machines;
    const int row_h = 34;
    const int left = 70, top = 40, right = 30, bottom = 40;
    const int plot_w = 760;
    const int width = left + plot_w + right;
    const int height = top + m * row_h + bottom;
    const double span = std::max<long long>(sched.makespan, 1);
    const double scale = plot_w / span;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    svg << "<text x=\"" << left << "\" y=\"20\" font-size=\"13\">" << inst.id
        << " &#8212; makespan " << sched.makespan << "</text>\n";
    for (int k = 1; k <= m; ++k) {
        const int y = top + (k - 1) * row_h;
        svg << "<text x=\"8\" y=\"" << y + row_h / 2 + 4 << "\">M" << k << "</text>\n";
        svg << "<line x1=\"" << left << "\" y1=\"" << y + row_h << "\" x2=\"" << left + plot_w
            << "\" y2=\"" << y + row_h << "\" stroke=\"#ddd\"/>\n";
    }
    for (const OpSchedule& s : sched.ops) {
        const double x = left + s.start * scale;
        const double w = std::max((s.end - s.start) * scale, 1.0);
        const int y = top + (s.machine - 1) * row_h + 3;
        const char* color = kPalette[(s.job - 1) % 12];
        svg << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << w << "\" height=\""
            << row_h - 6 << "\" fill=\"" << color << "\" stroke=\"#333\"/>\n";
        svg << "<text x=\"" << x + 3 << "\" y=\"" << y + (row_h - 6) / 2 + 4
            << "\" fill=\"#fff\">J" << s.job << "." << s.op;
        if (inst.has_workers()) svg << " W" << s.worker;
        svg << "</text>\n";
    }
    // time axis
    const int axis_y = top + m * row_h + 16;
    svg << "<line x1=\"" << left << "\" y1=\"" << axis_y - 10 << "\" x2=\"" << left + plot_w
        << "\" y2=\"" << axis_y - 10 << "\" stroke=\"#333\"/>\n";
    svg << "<text x=\"" << left << "\" y=\"" << axis_y + 6 << "\">0</text>\n";
    svg << "<text x=\"" << left + plot_w - 10 << "\" y=\"" << axis_y + 6 << "\">" << sched.makespan
        << "</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace fjssp
