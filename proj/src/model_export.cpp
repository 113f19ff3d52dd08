#include "fjssp/model_export.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <json.hpp>

namespace fjssp {

namespace {

struct Term {
    long long coef;
    std::string var;
};

struct Constraint {
    std::string name;
    std::vector<Term> terms;
    char sense;  // '=', '>', '<'  (>= / <=)
    long long rhs;
};

void emit_constraint(std::ostringstream& out, const Constraint& c) {
    out << ' ' << c.name << ':';
    bool first = true;
    for (const Term& t : c.terms) {
        if (first) {
            if (t.coef == 1)
                out << ' ' << t.var;
            else if (t.coef == -1)
                out << " - " << t.var;
            else if (t.coef < 0)
                out << " - " << -t.coef << ' ' << t.var;
            else
                out << ' ' << t.coef << ' ' << t.var;
            first = false;
        } else {
            if (t.coef == 1)
                out << " + " << t.var;
            else if (t.coef == -1)
                out << " - " << t.var;
            else if (t.coef < 0)
                out << " - " << -t.coef << ' ' << t.var;
            else
                out << " + " << t.coef << ' ' << t.var;
        }
    }
    out << (c.sense == '=' ? " = " : c.sense == '>' ? " >= " : " <= ") << c.rhs << '\n';
}

long long max_option_duration(const Operation& op) {
    long long best = 0;
    for (const MachineOption& mo : op.options) {
        if (mo.workers.empty())
            best = std::max<long long>(best, mo.duration);
        else
            for (const WorkerOption& wo : mo.workers) best = std::max<long long>(best, wo.duration);
    }
    return best;
}

std::string y_name(int i, int j, int k, int s, bool workers) {
    std::string name = "Y_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(k);
    if (workers) name += "_" + std::to_string(s);
    return name;
}

std::string c_name(int i, int j) {
    return "C_" + std::to_string(i) + "_" + std::to_string(j);
}

std::string pair_name(char prefix, int i, int j, int ip, int jp) {
    return std::string(1, prefix) + "_" + std::to_string(i) + "_" + std::to_string(j) + "_" +
           std::to_string(ip) + "_" + std::to_string(jp);
}

bool shares_machine(const Operation& a, const Operation& b) {
    for (const MachineOption& x : a.options)
        for (const MachineOption& y : b.options)
            if (x.machine == y.machine) return true;
    return false;
}

bool shares_worker(const Operation& a, const Operation& b) {
    for (const MachineOption& x : a.options)
        for (const WorkerOption& wx : x.workers)
            for (const MachineOption& y : b.options)
                for (const WorkerOption& wy : y.workers)
                    if (wx.worker == wy.worker) return true;
    return false;
}

}  // namespace

std::string export_milp(const Instance& inst) {
    validate_instance(inst);
    const bool workers = inst.has_workers();
    const int n = inst.num_jobs();

    long long big_m = 0;
    for (const Job& job : inst.jobs)
        for (const Operation& op : job.operations) big_m += max_option_duration(op);

    std::vector<Constraint> constraints;
    std::vector<std::string> binaries;

    // assignment and job-sequencing rows
    for (int i = 1; i <= n; ++i) {
        const Job& job = inst.jobs[i - 1];
        for (int j = 1; j <= static_cast<int>(job.operations.size()); ++j) {
            const Operation& op = job.operations[j - 1];
            Constraint assign{"assign_" + std::to_string(i) + "_" + std::to_string(j), {}, '=', 1};
            Constraint seq{"jobseq_" + std::to_string(i) + "_" + std::to_string(j), {}, '>', 0};
            seq.terms.push_back({1, c_name(i, j)});
            if (j > 1) seq.terms.push_back({-1, c_name(i, j - 1)});
            for (const MachineOption& mo : op.options) {
                if (workers) {
                    for (const WorkerOption& wo : mo.workers) {
                        const std::string y = y_name(i, j, mo.machine, wo.worker, true);
                        assign.terms.push_back({1, y});
                        seq.terms.push_back({-wo.duration, y});
                        binaries.push_back(y);
                    }
                } else {
                    const std::string y = y_name(i, j, mo.machine, 0, false);
                    assign.terms.push_back({1, y});
                    seq.terms.push_back({-mo.duration, y});
                    binaries.push_back(y);
                }
            }
            constraints.push_back(std::move(assign));
            constraints.push_back(std::move(seq));
        }
    }

    // disjunctive machine-order rows for cross-job pairs sharing a machine
    for (int i = 1; i <= n; ++i)
        for (int ip = i + 1; ip <= n; ++ip) {
            const Job& ja = inst.jobs[i - 1];
            const Job& jb = inst.jobs[ip - 1];
            for (int j = 1; j <= static_cast<int>(ja.operations.size()); ++j)
                for (int jp = 1; jp <= static_cast<int>(jb.operations.size()); ++jp) {
                    const Operation& a = ja.operations[j - 1];
                    const Operation& b = jb.operations[jp - 1];
                    const std::string x = pair_name('X', i, j, ip, jp);
                    bool x_used = false;
                    for (const MachineOption& ma : a.options) {
                        for (const MachineOption& mb : b.options) {
                            if (ma.machine != mb.machine) continue;
                            x_used = true;
                            const int k = ma.machine;
                            const auto add_pair = [&](int s, int sp, long long ta, long long tb) {
                                std::string suffix = "_" + std::to_string(k);
                                if (workers)
                                    suffix += "_" + std::to_string(s) + "_" + std::to_string(sp);
                                const std::string ya = y_name(i, j, k, s, workers);
                                const std::string yb = y_name(ip, jp, k, sp, workers);
                                Constraint c1{"macseq1" + pair_name(' ', i, j, ip, jp).substr(1) +
                                                  suffix,
                                              {},
                                              '>',
                                              ta - 3 * big_m};
                                c1.terms = {{1, c_name(i, j)},
                                            {-1, c_name(ip, jp)},
                                            {-big_m, x},
                                            {-big_m, ya},
                                            {-big_m, yb}};
                                Constraint c2{"macseq2" + pair_name(' ', i, j, ip, jp).substr(1) +
                                                  suffix,
                                              {},
                                              '>',
                                              tb - 2 * big_m};
                                c2.terms = {{1, c_name(ip, jp)},
                                            {-1, c_name(i, j)},
                                            {big_m, x},
                                            {-big_m, ya},
                                            {-big_m, yb}};
                                constraints.push_back(std::move(c1));
                                constraints.push_back(std::move(c2));
                            };
                            if (workers) {
                                for (const WorkerOption& wa : ma.workers)
                                    for (const WorkerOption& wb : mb.workers)
                                        add_pair(wa.worker, wb.worker, wa.duration, wb.duration);
                            } else {
                                add_pair(0, 0, ma.duration, mb.duration);
                            }
                        }
                    }
                    if (x_used) binaries.push_back(x);
                }
        }

    // disjunctive worker-order rows: pairs sharing a worker on any machines
    if (workers) {
        for (int i = 1; i <= n; ++i)
            for (int ip = i + 1; ip <= n; ++ip) {
                const Job& ja = inst.jobs[i - 1];
                const Job& jb = inst.jobs[ip - 1];
                for (int j = 1; j <= static_cast<int>(ja.operations.size()); ++j)
                    for (int jp = 1; jp <= static_cast<int>(jb.operations.size()); ++jp) {
                        const Operation& a = ja.operations[j - 1];
                        const Operation& b = jb.operations[jp - 1];
                        const std::string u = pair_name('U', i, j, ip, jp);
                        bool u_used = false;
                        for (const MachineOption& ma : a.options)
                            for (const WorkerOption& wa : ma.workers)
                                for (const MachineOption& mb : b.options)
                                    for (const WorkerOption& wb : mb.workers) {
                                        if (wa.worker != wb.worker) continue;
                                        u_used = true;
                                        const std::string suffix =
                                            "_" + std::to_string(ma.machine) + "_" +
                                            std::to_string(mb.machine) + "_" +
                                            std::to_string(wa.worker);
                                        const std::string ya =
                                            y_name(i, j, ma.machine, wa.worker, true);
                                        const std::string yb =
                                            y_name(ip, jp, mb.machine, wb.worker, true);
                                        Constraint c1{
                                            "workseq1" + pair_name(' ', i, j, ip, jp).substr(1) +
                                                suffix,
                                            {},
                                            '>',
                                            wa.duration - 3 * big_m};
                                        c1.terms = {{1, c_name(i, j)},
                                                    {-1, c_name(ip, jp)},
                                                    {-big_m, u},
                                                    {-big_m, ya},
                                                    {-big_m, yb}};
                                        Constraint c2{
                                            "workseq2" + pair_name(' ', i, j, ip, jp).substr(1) +
                                                suffix,
                                            {},
                                            '>',
                                            wb.duration - 2 * big_m};
                                        c2.terms = {{1, c_name(ip, jp)},
                                                    {-1, c_name(i, j)},
                                                    {big_m, u},
                                                    {-big_m, ya},
                                                    {-big_m, yb}};
                                        constraints.push_back(std::move(c1));
                                        constraints.push_back(std::move(c2));
                                    }
                        if (u_used) binaries.push_back(u);
                    }
            }
    }

    // makespan rows
    for (int i = 1; i <= n; ++i) {
        Constraint c{"makespan_" + std::to_string(i), {}, '>', 0};
        c.terms = {{1, "Cmax"}, {-1, c_name(i, static_cast<int>(inst.jobs[i - 1].operations.size()))}};
        constraints.push_back(std::move(c));
    }

    std::ostringstream out;
    out << "\\ " << (workers ? "FJSSP-W" : "FJSSP") << " MILP model";
    if (!inst.id.empty()) out << ": " << inst.id;
    out << "\n\\ big-M L = " << big_m << "\n";
    out << "Minimize\n obj: Cmax\nSubject To\n";
    for (const Constraint& c : constraints) emit_constraint(out, c);
    out << "Binary\n";
    for (const std::string& b : binaries) out << ' ' << b << '\n';
    out << "End\n";
    return out.str();
}

std::string export_cp(const Instance& inst) {
    validate_instance(inst);
    const bool workers = inst.has_workers();
    nlohmann::json doc;
    doc["format"] = "fjssp-cp";
    doc["version"] = 1;
    doc["instance"] = inst.id;
    doc["machines"] = inst.num_machines;
    if (workers) doc["workers"] = inst.num_workers;

    nlohmann::json intervals = nlohmann::json::array();
    nlohmann::json alternatives = nlohmann::json::array();
    nlohmann::json alt_groups = nlohmann::json::array();
    nlohmann::json chains = nlohmann::json::array();
    std::map<int, std::vector<int>> machine_groups;
    std::map<int, std::vector<int>> worker_groups;
    nlohmann::json last_ops = nlohmann::json::array();

    int interval_id = 0;
    int alt_id = 0;
    for (int i = 1; i <= inst.num_jobs(); ++i) {
        const Job& job = inst.jobs[i - 1];
        for (int j = 1; j <= static_cast<int>(job.operations.size()); ++j) {
            intervals.push_back({{"id", interval_id}, {"job", i}, {"op", j}});
            nlohmann::json group = nlohmann::json::array();
            for (const MachineOption& mo : job.operations[j - 1].options) {
                const auto add_alt = [&](int worker, long long duration) {
                    nlohmann::json alt;
                    alt["id"] = alt_id;
                    alt["interval"] = interval_id;
                    alt["machine"] = mo.machine;
                    if (workers) alt["worker"] = worker;
                    alt["duration"] = duration;
                    alternatives.push_back(std::move(alt));
                    group.push_back(alt_id);
                    machine_groups[mo.machine].push_back(alt_id);
                    if (workers) worker_groups[worker].push_back(alt_id);
                    ++alt_id;
                };
                if (workers)
                    for (const WorkerOption& wo : mo.workers) add_alt(wo.worker, wo.duration);
                else
                    add_alt(0, mo.duration);
            }
            alt_groups.push_back(std::move(group));
            if (j > 1) chains.push_back({interval_id - 1, interval_id});
            if (j == static_cast<int>(job.operations.size())) last_ops.push_back(interval_id);
            ++interval_id;
        }
    }

    nlohmann::json machine_overlap = nlohmann::json::array();
    for (const auto& [machine, alts] : machine_groups)
        machine_overlap.push_back({{"machine", machine}, {"alternatives", alts}});
    nlohmann::json worker_overlap = nlohmann::json::array();
    for (const auto& [worker, alts] : worker_groups)
        worker_overlap.push_back({{"worker", worker}, {"alternatives", alts}});

    doc["intervals"] = std::move(intervals);
    doc["alternatives"] = std::move(alternatives);
    doc["alternative_groups"] = std::move(alt_groups);
    doc["end_before_start"] = std::move(chains);
    doc["no_overlap_machines"] = std::move(machine_overlap);
    if (workers) doc["no_overlap_workers"] = std::move(worker_overlap);
    doc["objective"] = {{"sense", "minimize"}, {"type", "max_end"}, {"intervals", last_ops}};
    return doc.dump(2) + "\n";
}

namespace {

std::vector<std::string> lp_tokens(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string t;
    while (in >> t) tokens.push_back(t);
    return tokens;
}

bool is_number(const std::string& s) {
    if (s.empty()) return false;
    std::size_t used = 0;
    try {
        (void)std::stod(s, &used);
    } catch (const std::exception&) {
        return false;
    }
    return used == s.size();
}

}  // namespace

std::vector<LpViolation> check_lp_assignment(const std::string& lp_text,
                                             const std::map<std::string, double>& assignment,
                                             double tolerance) {
    std::vector<LpViolation> violations;
    std::istringstream in(lp_text);
    std::string line;
    bool in_constraints = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '\\') continue;
        std::string stripped = line;
        stripped.erase(0, stripped.find_first_not_of(" \t"));
        if (stripped.rfind("Subject To", 0) == 0) {
            in_constraints = true;
            continue;
        }
        if (stripped.rfind("Minimize", 0) == 0 || stripped.rfind("Maximize", 0) == 0) continue;
        if (stripped.rfind("Binary", 0) == 0 || stripped.rfind("Bounds", 0) == 0 ||
            stripped.rfind("General", 0) == 0 || stripped.rfind("End", 0) == 0) {
            in_constraints = false;
            continue;
        }
        if (!in_constraints || stripped.empty()) continue;

        const std::size_t colon = stripped.find(':');
        if (colon == std::string::npos)
            throw std::runtime_error("lp check: constraint row without name: " + line);
        const std::string name = stripped.substr(0, colon);
        const std::vector<std::string> tokens = lp_tokens(stripped.substr(colon + 1));

        double lhs = 0.0;
        char sense = '?';
        double rhs = 0.0;
        double sign = 1.0;
        double coef = 1.0;
        bool coef_set = false;
        for (std::size_t t = 0; t < tokens.size(); ++t) {
            const std::string& tok = tokens[t];
            if (tok == "+") {
                sign = 1.0;
            } else if (tok == "-") {
                sign = -1.0;
            } else if (tok == ">=" || tok == "<=" || tok == "=") {
                sense = tok == ">=" ? '>' : tok == "<=" ? '<' : '=';
                if (t + 1 != tokens.size() - 1)
                    throw std::runtime_error("lp check: malformed rhs in " + name);
                rhs = std::stod(tokens[t + 1]);
                break;
            } else if (is_number(tok)) {
                coef = std::stod(tok);
                coef_set = true;
            } else {
                const auto it = assignment.find(tok);
                if (it == assignment.end())
                    throw std::runtime_error("lp check: variable " + tok + " missing in assignment");
                lhs += sign * (coef_set ? coef : 1.0) * it->second;
                sign = 1.0;
                coef = 1.0;
                coef_set = false;
            }
        }
        if (sense == '?') throw std::runtime_error("lp check: constraint without sense: " + name);

        const bool ok = sense == '>'   ? lhs >= rhs - tolerance
                        : sense == '<' ? lhs <= rhs + tolerance
                                       : std::fabs(lhs - rhs) <= tolerance;
        if (!ok) violations.push_back({name, lhs, rhs, sense});
    }
    return violations;
}

std::map<std::string, double> milp_assignment_from_schedule(const Instance& inst,
                                                            const Schedule& sched) {
    validate_instance(inst);
    const bool workers = inst.has_workers();
    const int n = inst.num_jobs();
    const std::vector<int> offs = operation_offsets(inst);
    std::map<std::string, double> assign;

    for (int i = 1; i <= n; ++i) {
        const Job& job = inst.jobs[i - 1];
        for (int j = 1; j <= static_cast<int>(job.operations.size()); ++j) {
            const OpSchedule& s = sched.ops[offs[i - 1] + j - 1];
            assign[c_name(i, j)] = static_cast<double>(s.end);
            for (const MachineOption& mo : job.operations[j - 1].options) {
                if (workers) {
                    for (const WorkerOption& wo : mo.workers)
                        assign[y_name(i, j, mo.machine, wo.worker, true)] =
                            (mo.machine == s.machine && wo.worker == s.worker) ? 1.0 : 0.0;
                } else {
                    assign[y_name(i, j, mo.machine, 0, false)] = mo.machine == s.machine ? 1.0 : 0.0;
                }
            }
        }
    }
    assign["Cmax"] = static_cast<double>(sched.makespan);

    // order binaries from the realized timelines
    for (int i = 1; i <= n; ++i)
        for (int ip = i + 1; ip <= n; ++ip) {
            const Job& ja = inst.jobs[i - 1];
            const Job& jb = inst.jobs[ip - 1];
            for (int j = 1; j <= static_cast<int>(ja.operations.size()); ++j)
                for (int jp = 1; jp <= static_cast<int>(jb.operations.size()); ++jp) {
                    const OpSchedule& sa = sched.ops[offs[i - 1] + j - 1];
                    const OpSchedule& sb = sched.ops[offs[ip - 1] + jp - 1];
                    const Operation& a = ja.operations[j - 1];
                    const Operation& b = jb.operations[jp - 1];
                    if (shares_machine(a, b))
                        assign[pair_name('X', i, j, ip, jp)] =
                            (sa.machine == sb.machine && sa.start >= sb.end) ? 1.0 : 0.0;
                    if (workers && shares_worker(a, b))
                        assign[pair_name('U', i, j, ip, jp)] =
                            (sa.worker == sb.worker && sa.start >= sb.end) ? 1.0 : 0.0;
                }
        }
    return assign;
}

}  // namespace fjssp
