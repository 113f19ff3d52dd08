#include "fjssp/harness.hpp"

#include <sys/utsname.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "fjssp/version.hpp"

namespace fjssp {

namespace {

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string host_descriptor() {
    utsname info{};
    if (uname(&info) != 0) return "unknown";
    return std::string(info.sysname) + " " + info.release + " " + info.machine;
}

}  // namespace

std::string RunRecord::to_json() const {
    nlohmann::json doc = nlohmann::json::parse(solve_run_to_json(run));
    doc["repetition"] = repetition;
    doc["version"] = version;
    doc["host"] = host;
    if (!error.empty()) doc["error"] = error;
    return doc.dump();
}

RunRecord RunRecord::from_json(const std::string& line) {
    RunRecord rec;
    rec.run = solve_run_from_json(line);
    const nlohmann::json doc = nlohmann::json::parse(line);
    rec.repetition = doc.at("repetition").get<int>();
    rec.version = doc.value("version", "");
    rec.host = doc.value("host", "");
    rec.error = doc.value("error", "");
    return rec;
}

std::vector<RunRecord> read_records(const std::filesystem::path& file) {
    std::vector<RunRecord> records;
    std::ifstream in(file);
    if (!in) return records;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            records.push_back(RunRecord::from_json(line));
        } catch (const std::exception& e) {
            throw std::runtime_error(file.string() + ":" + std::to_string(lineno) +
                                     ": bad run record: " + e.what());
        }
    }
    return records;
}

namespace {

struct PlannedRun {
    std::string instance_id;
    std::size_t solver_index;
    int repetition;
    std::uint64_t seed;
};

SolveRun execute(const Instance& inst, const SolverSpec& spec, std::uint64_t seed,
                 double time_limit, bool deterministic_time) {
    if (spec.name == "greedy" || spec.name == "greedy-ef") {
        GreedyConfig cfg = spec.greedy;
        cfg.earliest_finish = spec.name == "greedy-ef";
        cfg.deterministic_time = deterministic_time;
        return greedy_solve(inst, seed, cfg);
    }
    if (spec.name == "ga") {
        GaConfig cfg = spec.ga;
        cfg.time_limit = time_limit;
        cfg.deterministic_time = deterministic_time;
        return ga_solve(inst, cfg, seed);
    }
    throw ModelError("unknown solver: " + spec.name);
}

}  // namespace

std::vector<RunRecord> run_experiment(const Catalog& catalog, const ExperimentPlan& plan) {
    if (plan.repetitions < 1) throw ModelError("plan: repetitions must be >= 1");
    if (plan.jobs < 1) throw ModelError("plan: worker pool needs at least one worker");
    if (plan.solvers.empty()) throw ModelError("plan: no solvers");
    if (plan.instance_ids.empty()) throw ModelError("plan: no instances");

    // validate everything before any run starts
    for (const SolverSpec& spec : plan.solvers) {
        if (spec.name != "greedy" && spec.name != "greedy-ef" && spec.name != "ga")
            throw ModelError("plan: unknown solver " + spec.name);
        if (spec.name == "ga") {
            GaConfig cfg = spec.ga;
            cfg.time_limit = plan.time_limit;
            cfg.deterministic_time = plan.deterministic_time;
            cfg.validate();
        }
    }
    for (const std::string& id : plan.instance_ids)
        if (!catalog.find(id)) throw ModelError("plan: unknown instance " + id);

    std::filesystem::create_directories(plan.output_dir);
    const std::filesystem::path log_path = plan.output_dir / "records.jsonl";

    std::set<std::tuple<std::string, std::string, int>> done;
    if (plan.resume) {
        for (const RunRecord& rec : read_records(log_path))
            done.insert({rec.run.instance_id, rec.run.solver, rec.repetition});
    } else if (std::filesystem::exists(log_path)) {
        throw std::runtime_error("record log already exists (use resume to continue): " +
                                 log_path.string());
    }

    // seeds derive from the position in plan order, so resumed plans keep them
    std::vector<PlannedRun> pending;
    std::uint64_t run_index = 0;
    for (const std::string& id : plan.instance_ids)
        for (std::size_t s = 0; s < plan.solvers.size(); ++s)
            for (int rep = 0; rep < plan.repetitions; ++rep) {
                const std::uint64_t seed = plan.base_seed + run_index;
                ++run_index;
                if (done.count({id, plan.solvers[s].name, rep})) continue;
                pending.push_back({id, s, rep, seed});
            }

    std::ofstream log(log_path, std::ios::app);
    if (!log) throw std::runtime_error("cannot open record log: " + log_path.string());
    std::mutex log_mutex;
    const std::string host = plan.deterministic_time ? "deterministic" : host_descriptor();

    std::atomic<std::size_t> next{0};

    const auto worker = [&]() {
        while (true) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= pending.size()) return;
            const PlannedRun& job = pending[idx];
            const SolverSpec& spec = plan.solvers[job.solver_index];
            const CatalogEntry* entry = catalog.find(job.instance_id);
            RunRecord rec;
            rec.repetition = job.repetition;
            rec.version = kToolkitVersion;
            rec.host = host;
            try {
                rec.run = execute(entry->instance, spec, job.seed, plan.time_limit,
                                  plan.deterministic_time);
                rec.run.instance_id = job.instance_id;
            } catch (const std::exception& e) {
                // a crashed run becomes a failure record, the plan continues
                rec.run.solver = spec.name;
                rec.run.instance_id = job.instance_id;
                rec.run.seed = job.seed;
                rec.run.feasible = false;
                rec.error = e.what();
            }
            std::lock_guard<std::mutex> lock(log_mutex);
            log << rec.to_json() << '\n';
            log.flush();
        }
    };

    if (plan.jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < plan.jobs; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    log.close();
    return read_records(log_path);
}

Summary summarize(const std::vector<RunRecord>& records, const std::vector<std::string>* known_ids) {
    Summary summary;
    std::set<std::string> known;
    if (known_ids) known.insert(known_ids->begin(), known_ids->end());

    std::vector<std::string> solvers, instances;
    std::map<std::pair<std::string, std::string>, std::vector<const RunRecord*>> groups;
    for (const RunRecord& rec : records) {
        if (known_ids && !known.count(rec.run.instance_id)) {
            summary.warnings.push_back("record for unknown instance " + rec.run.instance_id +
                                       " skipped");
            continue;
        }
        if (std::find(solvers.begin(), solvers.end(), rec.run.solver) == solvers.end())
            solvers.push_back(rec.run.solver);
        if (std::find(instances.begin(), instances.end(), rec.run.instance_id) == instances.end())
            instances.push_back(rec.run.instance_id);
        groups[{rec.run.solver, rec.run.instance_id}].push_back(&rec);
    }

    summary.matrix.solvers = solvers;
    summary.matrix.instances = instances;
    summary.matrix.resize();

    for (const auto& [key, runs] : groups) {
        AggregateCell cell;
        cell.repetitions = static_cast<int>(runs.size());
        double sum = 0.0, sum_sq = 0.0;
        const RunRecord* best_run = nullptr;
        for (const RunRecord* rec : runs) {
            if (!rec->run.feasible) continue;
            ++cell.feasible_runs;
            const double value = static_cast<double>(rec->run.best_makespan);
            sum += value;
            sum_sq += value * value;
            if (!best_run || value < static_cast<double>(best_run->run.best_makespan))
                best_run = rec;
        }
        if (cell.feasible_runs > 0) {
            cell.best = static_cast<double>(best_run->run.best_makespan);
            cell.mean = sum / cell.feasible_runs;
            const double var = std::max(0.0, sum_sq / cell.feasible_runs - cell.mean * cell.mean);
            cell.stddev = std::sqrt(var);
            cell.best_time =
                best_run->run.trace.empty() ? 0.0 : best_run->run.trace.back().elapsed;

            const auto s =
                std::find(solvers.begin(), solvers.end(), key.first) - solvers.begin();
            const auto i =
                std::find(instances.begin(), instances.end(), key.second) - instances.begin();
            summary.matrix.cell(s, i) = ResultCell{cell.best, cell.best_time};
        }
        summary.aggregates[key] = cell;
    }
    return summary;
}

std::string summary_csv(const Summary& summary) {
    std::ostringstream out;
    out << "solver,instance,repetitions,feasible_runs,best,mean,stddev,best_time\n";
    for (const auto& [key, cell] : summary.aggregates) {
        out << key.first << ',' << key.second << ',' << cell.repetitions << ','
            << cell.feasible_runs << ',';
        if (cell.feasible_runs > 0)
            out << fixed6(cell.best) << ',' << fixed6(cell.mean) << ',' << fixed6(cell.stddev)
                << ',' << fixed6(cell.best_time);
        else
            out << ",,,";
        out << '\n';
    }
    return out.str();
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field.push_back('"');
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    fields.push_back(field);
    return fields;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

}  // namespace

BestKnownStore BestKnownStore::load(const std::filesystem::path& file) {
    BestKnownStore store;
    std::ifstream in(file);
    if (!in) return store;  // absent file = empty store
    std::string line;
    bool first = true;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line.rfind("id,", 0) == 0) continue;  // header
        }
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != 4)
            throw std::runtime_error(file.string() + ":" + std::to_string(lineno) +
                                     ": expected 4 columns");
        Entry entry;
        if (!fields[1].empty()) entry.best = std::stod(fields[1]);
        if (!fields[2].empty()) entry.lower_bound = std::stod(fields[2]);
        entry.provenance = fields[3];
        if (entry.best && entry.lower_bound && *entry.lower_bound > *entry.best)
            throw std::runtime_error(file.string() + ":" + std::to_string(lineno) +
                                     ": lower bound exceeds best value");
        store.entries_[fields[0]] = std::move(entry);
    }
    return store;
}

void BestKnownStore::save(const std::filesystem::path& file) const {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write store: " + file.string());
    out << "id,best,lower_bound,provenance\n";
    for (const auto& [id, entry] : entries_) {
        out << csv_quote(id) << ',';
        if (entry.best) out << fixed6(*entry.best);
        out << ',';
        if (entry.lower_bound) out << fixed6(*entry.lower_bound);
        out << ',' << csv_quote(entry.provenance) << '\n';
    }
}

const BestKnownStore::Entry* BestKnownStore::find(const std::string& id) const {
    const auto it = entries_.find(id);
    return it == entries_.end() ? nullptr : &it->second;
}

void BestKnownStore::set(const std::string& id, Entry entry) {
    if (entry.best && entry.lower_bound && *entry.lower_bound > *entry.best)
        throw ModelError("store: lower bound exceeds best for " + id);
    entries_[id] = std::move(entry);
}

std::map<std::string, double> BestKnownStore::best_values() const {
    std::map<std::string, double> out;
    for (const auto& [id, entry] : entries_)
        if (entry.best) out[id] = *entry.best;
    return out;
}

BestKnownStore::UpdateReport BestKnownStore::update(const std::vector<RunRecord>& records) {
    UpdateReport report;
    for (const RunRecord& rec : records) {
        if (!rec.run.feasible) continue;
        const double candidate = static_cast<double>(rec.run.best_makespan);
        Entry& entry = entries_[rec.run.instance_id];
        if (entry.lower_bound && candidate < *entry.lower_bound) {
            report.errors.push_back(rec.run.instance_id + ": candidate " + fixed6(candidate) +
                                    " below stored lower bound " + fixed6(*entry.lower_bound));
            continue;
        }
        if (!entry.best || candidate < *entry.best) {
            if (entry.best)
                report.updates.push_back(rec.run.instance_id + ": " + fixed6(*entry.best) +
                                         " -> " + fixed6(candidate));
            else
                report.updates.push_back(rec.run.instance_id + ": new entry " + fixed6(candidate));
            entry.best = candidate;
            entry.provenance = rec.run.solver + " seed=" + std::to_string(rec.run.seed) +
                               " v" + rec.version;
        }
    }
    return report;
}

}  // namespace fjssp
