#include "fjssp/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

#include <json.hpp>

namespace fjssp {

namespace {

using SteadyClock = std::chrono::steady_clock;

struct Stopwatch {
    SteadyClock::time_point start = SteadyClock::now();
    bool frozen = false;  // deterministic-time mode

    double elapsed() const {
        if (frozen) return 0.0;
        return std::chrono::duration<double>(SteadyClock::now() - start).count();
    }
};

const MachineOption* find_option(const Operation& op, int machine) {
    for (const MachineOption& mo : op.options)
        if (mo.machine == machine) return &mo;
    return nullptr;
}

}  // namespace

std::string solve_run_to_json(const SolveRun& run) {
    nlohmann::json doc;
    doc["solver"] = run.solver;
    doc["instance"] = run.instance_id;
    doc["seed"] = run.seed;
    doc["feasible"] = run.feasible;
    doc["best_makespan"] = run.best_makespan;
    doc["encoding"] = {{"sequence", run.best.sequence},
                       {"machines", run.best.machines},
                       {"workers", run.best.workers}};
    nlohmann::json trace = nlohmann::json::array();
    for (const TracePoint& tp : run.trace) trace.push_back({tp.elapsed, tp.value});
    doc["trace"] = std::move(trace);
    doc["wallclock"] = run.wallclock;
    return doc.dump();
}

SolveRun solve_run_from_json(const std::string& text) {
    const nlohmann::json doc = nlohmann::json::parse(text);
    SolveRun run;
    run.solver = doc.at("solver").get<std::string>();
    run.instance_id = doc.at("instance").get<std::string>();
    run.seed = doc.at("seed").get<std::uint64_t>();
    run.feasible = doc.at("feasible").get<bool>();
    run.best_makespan = doc.at("best_makespan").get<long long>();
    const auto& enc = doc.at("encoding");
    run.best.sequence = enc.at("sequence").get<std::vector<int>>();
    run.best.machines = enc.at("machines").get<std::vector<int>>();
    run.best.workers = enc.at("workers").get<std::vector<int>>();
    for (const auto& tp : doc.at("trace"))
        run.trace.push_back({tp.at(0).get<double>(), tp.at(1).get<long long>()});
    run.wallclock = doc.at("wallclock").get<double>();
    return run;
}

SolveRun greedy_solve(const Instance& inst, std::uint64_t seed, const GreedyConfig& cfg) {
    validate_instance(inst);
    Stopwatch watch;
    watch.frozen = cfg.deterministic_time;
    SplitMix64 rng(seed);

    const int n = inst.num_jobs();
    const bool workers = inst.has_workers();
    const std::vector<int> offs = operation_offsets(inst);
    const int total = inst.total_operations();

    std::vector<int> next_op(n, 0);
    std::vector<long long> job_free(n, 0);
    std::vector<long long> machine_free(inst.num_machines + 1, 0);
    std::vector<long long> worker_free(inst.num_workers + 1, 0);

    Encoding enc;
    enc.machines.assign(total, 0);
    if (workers) enc.workers.assign(total, 0);
    enc.sequence.reserve(total);

    struct Choice {
        int job;
        int machine;
        int worker;
        long long duration;
    };

    long long makespan = 0;
    for (int step = 0; step < total; ++step) {
        long long best_key = std::numeric_limits<long long>::max();
        std::vector<Choice> candidates;
        for (int job = 1; job <= n; ++job) {
            const int j = next_op[job - 1];
            if (j >= static_cast<int>(inst.jobs[job - 1].operations.size())) continue;
            const Operation& op = inst.jobs[job - 1].operations[j];
            // cheapest option of this frontier operation
            Choice pick{job, 0, 0, 0};
            long long key = std::numeric_limits<long long>::max();
            for (const MachineOption& mo : op.options) {
                const auto consider = [&](int worker, long long d) {
                    long long k = d;
                    if (cfg.earliest_finish) {
                        long long start = std::max(job_free[job - 1], machine_free[mo.machine]);
                        if (workers) start = std::max(start, worker_free[worker]);
                        k = start + d;
                    }
                    if (k < key) {
                        key = k;
                        pick = {job, mo.machine, worker, d};
                    }
                };
                if (workers)
                    for (const WorkerOption& wo : mo.workers) consider(wo.worker, wo.duration);
                else
                    consider(0, mo.duration);
            }
            if (key < best_key) {
                best_key = key;
                candidates.clear();
            }
            if (key == best_key) candidates.push_back(pick);
        }
        const Choice& c = candidates[rng.uniform_int(0, static_cast<int>(candidates.size()) - 1)];

        const int j = next_op[c.job - 1]++;
        const int p = offs[c.job - 1] + j;
        long long start = std::max(job_free[c.job - 1], machine_free[c.machine]);
        if (workers) start = std::max(start, worker_free[c.worker]);
        const long long end = start + c.duration;
        job_free[c.job - 1] = end;
        machine_free[c.machine] = end;
        if (workers) worker_free[c.worker] = end;
        makespan = std::max(makespan, end);

        enc.sequence.push_back(c.job);
        enc.machines[p] = c.machine;
        if (workers) enc.workers[p] = c.worker;
    }

    SolveRun run;
    run.solver = cfg.earliest_finish ? "greedy-ef" : "greedy";
    run.instance_id = inst.id;
    run.seed = seed;
    run.best = std::move(enc);
    run.best_makespan = makespan;
    run.feasible = true;
    run.trace.push_back({watch.elapsed(), makespan});
    run.wallclock = watch.elapsed();
    return run;
}

Encoding random_encoding(const Instance& inst, SplitMix64& rng) {
    const int n = inst.num_jobs();
    const bool workers = inst.has_workers();
    Encoding enc;
    for (int i = 1; i <= n; ++i)
        enc.sequence.insert(enc.sequence.end(), inst.jobs[i - 1].operations.size(), i);
    rng.shuffle(enc.sequence);
    for (const Job& job : inst.jobs)
        for (const Operation& op : job.operations) {
            const MachineOption& mo =
                op.options[rng.uniform_int(0, static_cast<int>(op.options.size()) - 1)];
            enc.machines.push_back(mo.machine);
            if (workers)
                enc.workers.push_back(
                    mo.workers[rng.uniform_int(0, static_cast<int>(mo.workers.size()) - 1)].worker);
        }
    return enc;
}

Encoding ga_crossover(const Instance& inst, const Encoding& a, const Encoding& b, SplitMix64& rng) {
    const int n = inst.num_jobs();
    const int total = static_cast<int>(a.sequence.size());
    const bool workers = inst.has_workers();
    Encoding child;
    child.sequence.assign(total, 0);
    child.machines.assign(total, 0);
    if (workers) child.workers.assign(total, 0);

    // job-split sequence crossover: jobs in the split keep their positions
    // from parent a, the rest flow in parent b's order
    std::vector<char> in_split(n + 1, 0);
    for (int i = 1; i <= n; ++i) in_split[i] = rng.uniform01() < 0.5 ? 1 : 0;
    std::vector<int> fill;
    for (int v : b.sequence)
        if (!in_split[v]) fill.push_back(v);
    std::size_t fill_pos = 0;
    for (int p = 0; p < total; ++p)
        child.sequence[p] = in_split[a.sequence[p]] ? a.sequence[p] : fill[fill_pos++];

    // positionwise uniform assignment crossover with worker repair
    int p = 0;
    for (int i = 0; i < n; ++i)
        for (const Operation& op : inst.jobs[i].operations) {
            const bool from_a = rng.uniform01() < 0.5;
            child.machines[p] = (from_a ? a : b).machines[p];
            if (workers) {
                const bool worker_from_a = rng.uniform01() < 0.5;
                int worker = (worker_from_a ? a : b).workers[p];
                const MachineOption* mo = find_option(op, child.machines[p]);
                bool admissible = false;
                for (const WorkerOption& wo : mo->workers) admissible |= wo.worker == worker;
                if (!admissible)
                    worker =
                        mo->workers[rng.uniform_int(0, static_cast<int>(mo->workers.size()) - 1)]
                            .worker;
                child.workers[p] = worker;
            }
            ++p;
        }
    return child;
}

void ga_mutate(const Instance& inst, Encoding& enc, SplitMix64& rng) {
    const int total = static_cast<int>(enc.sequence.size());
    const bool workers = inst.has_workers();
    if (rng.uniform01() < 0.5 && total >= 2) {
        // swap two sequence positions
        const int i = rng.uniform_int(0, total - 1);
        const int j = rng.uniform_int(0, total - 1);
        std::swap(enc.sequence[i], enc.sequence[j]);
        return;
    }
    // resample one machine option with a compatible worker
    const int p = rng.uniform_int(0, total - 1);
    int i = 0, j = p;
    while (j >= static_cast<int>(inst.jobs[i].operations.size())) {
        j -= static_cast<int>(inst.jobs[i].operations.size());
        ++i;
    }
    const Operation& op = inst.jobs[i].operations[j];
    const MachineOption& mo =
        op.options[rng.uniform_int(0, static_cast<int>(op.options.size()) - 1)];
    enc.machines[p] = mo.machine;
    if (workers)
        enc.workers[p] =
            mo.workers[rng.uniform_int(0, static_cast<int>(mo.workers.size()) - 1)].worker;
}

void GaConfig::validate() const {
    if (population < 2) throw ModelError("ga: population must be >= 2");
    if (tournament < 1) throw ModelError("ga: tournament size must be >= 1");
    if (elitism < 0 || elitism >= population) throw ModelError("ga: bad elitism count");
    if (crossover_rate < 0.0 || crossover_rate > 1.0) throw ModelError("ga: bad crossover rate");
    if (mutation_rate < 0.0 || mutation_rate > 1.0) throw ModelError("ga: bad mutation rate");
    if (time_limit <= 0.0) throw ModelError("ga: time limit must be positive");
    if (eval_budget && *eval_budget < 0) throw ModelError("ga: negative evaluation budget");
    if (deterministic_time && !eval_budget)
        throw ModelError("ga: deterministic time mode needs an evaluation budget");
}

SolveRun ga_solve(const Instance& inst, const GaConfig& cfg, std::uint64_t seed) {
    validate_instance(inst);
    cfg.validate();
    Stopwatch watch;
    watch.frozen = cfg.deterministic_time;
    SplitMix64 rng(seed);

    struct Indiv {
        Encoding enc;
        long long fit;
    };

    const long long lb = lower_bound(inst);
    long long evals = 0;
    const auto out_of_budget = [&]() { return cfg.eval_budget && evals >= *cfg.eval_budget; };
    const auto out_of_time = [&]() { return watch.elapsed() >= cfg.time_limit; };

    SolveRun run;
    run.solver = "ga";
    run.instance_id = inst.id;
    run.seed = seed;
    run.feasible = true;

    const auto evaluate = [&](const Encoding& enc) {
        ++evals;
        return decode_schedule(inst, enc).makespan;
    };
    const auto record = [&](const Indiv& ind) {
        if (run.trace.empty() || ind.fit < run.best_makespan) {
            run.best = ind.enc;
            run.best_makespan = ind.fit;
            run.trace.push_back({watch.elapsed(), ind.fit});
        }
    };

    // seed population: 1 greedy individual + random encodings
    std::vector<Indiv> pop;
    pop.reserve(cfg.population);
    {
        GreedyConfig gcfg;
        gcfg.deterministic_time = cfg.deterministic_time;
        SolveRun g = greedy_solve(inst, rng.next(), gcfg);
        pop.push_back({std::move(g.best), g.best_makespan});
        record(pop.back());
    }
    while (static_cast<int>(pop.size()) < cfg.population && !out_of_budget() && !out_of_time()) {
        Indiv ind;
        ind.enc = random_encoding(inst, rng);
        ind.fit = evaluate(ind.enc);
        record(ind);
        pop.push_back(std::move(ind));
    }

    const auto tournament = [&]() -> const Indiv& {
        int best = rng.uniform_int(0, static_cast<int>(pop.size()) - 1);
        for (int t = 1; t < cfg.tournament; ++t) {
            const int c = rng.uniform_int(0, static_cast<int>(pop.size()) - 1);
            if (pop[c].fit < pop[best].fit) best = c;
        }
        return pop[best];
    };

    while (!out_of_budget() && !out_of_time() && run.best_makespan > lb &&
           static_cast<int>(pop.size()) == cfg.population) {
        std::vector<Indiv> next;
        next.reserve(cfg.population);
        // elitism: keep the best individuals (stable on ties)
        std::vector<int> order(pop.size());
        for (std::size_t i = 0; i < pop.size(); ++i) order[i] = static_cast<int>(i);
        std::stable_sort(order.begin(), order.end(),
                         [&](int x, int y) { return pop[x].fit < pop[y].fit; });
        for (int e = 0; e < cfg.elitism; ++e) next.push_back(pop[order[e]]);

        while (static_cast<int>(next.size()) < cfg.population && !out_of_budget() &&
               !out_of_time()) {
            const Indiv& p1 = tournament();
            const Indiv& p2 = tournament();
            Indiv child;
            if (rng.uniform01() < cfg.crossover_rate)
                child.enc = ga_crossover(inst, p1.enc, p2.enc, rng);
            else
                child.enc = p1.enc;
            if (rng.uniform01() < cfg.mutation_rate) ga_mutate(inst, child.enc, rng);
            child.fit = evaluate(child.enc);
            record(child);
            next.push_back(std::move(child));
        }
        if (static_cast<int>(next.size()) < cfg.population) break;  // interrupted mid-generation
        pop = std::move(next);
    }

    run.wallclock = watch.elapsed();
    return run;
}

}  // namespace fjssp
