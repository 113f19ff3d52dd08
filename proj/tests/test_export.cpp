#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include <json.hpp>

#include "fjssp/model_export.hpp"
#include "fjssp/rng.hpp"
#include "fjssp/solvers.hpp"
#include "support.hpp"

using namespace fjssp;
using testsupport::make_plain;
using testsupport::random_instance;
using testsupport::tiny_w;

namespace {

std::set<std::string> binary_vars(const std::string& lp) {
    std::set<std::string> vars;
    std::istringstream in(lp);
    std::string line;
    bool in_binary = false;
    while (std::getline(in, line)) {
        if (line.rfind("Binary", 0) == 0) {
            in_binary = true;
            continue;
        }
        if (line.rfind("End", 0) == 0) break;
        if (!in_binary || line.empty()) continue;
        vars.insert(line.substr(1));
    }
    return vars;
}

std::size_t count_prefix(const std::set<std::string>& vars, const std::string& prefix) {
    std::size_t n = 0;
    for (const std::string& v : vars)
        if (v.rfind(prefix, 0) == 0) ++n;
    return n;
}

}  // namespace

TEST_CASE("milp export: single machine-worker option forces Cmax >= T") {
    WorkerInstance inst;
    inst.id = "one";
    inst.num_machines = 1;
    inst.num_workers = 1;
    Job job;
    Operation op;
    op.options.push_back({1, 0, {{1, 6}}});
    job.operations.push_back(op);
    inst.jobs.push_back(job);

    const std::string lp = export_milp(inst);
    CHECK(lp.find("Minimize") != std::string::npos);
    CHECK(lp.find("obj: Cmax") != std::string::npos);
    CHECK(lp.find("assign_1_1: Y_1_1_1_1 = 1") != std::string::npos);

    // the decoded schedule satisfies the model and pins Cmax at exactly T
    Encoding enc;
    enc.sequence = {1};
    enc.machines = {1};
    enc.workers = {1};
    const Schedule sched = decode_schedule(inst, enc);
    auto assign = milp_assignment_from_schedule(inst, sched);
    CHECK(check_lp_assignment(lp, assign).empty());
    CHECK(assign.at("Cmax") == 6.0);
    // pushing the makespan below T must violate a constraint
    assign["Cmax"] = 5.0;
    assign["C_1_1"] = 5.0;
    CHECK_FALSE(check_lp_assignment(lp, assign).empty());
}

TEST_CASE("milp export: TINY-W variable counts match enumeration") {
    const WorkerInstance inst = tiny_w();
    const std::string lp = export_milp(inst);
    const std::set<std::string> binaries = binary_vars(lp);

    // one Y per machine-worker option
    std::size_t options = 0;
    for (const Job& job : inst.jobs)
        for (const Operation& op : job.operations)
            for (const MachineOption& mo : op.options) options += mo.workers.size();
    CHECK(options == 7);
    CHECK(count_prefix(binaries, "Y_") == options);

    // one X per cross-job operation pair sharing an admissible machine
    CHECK(count_prefix(binaries, "X_") == 2);
    // both cross-job pairs also share admissible workers
    CHECK(count_prefix(binaries, "U_") == 2);

    // completion variables: one per operation plus the makespan
    std::size_t c_vars = 0, pos = 0;
    std::set<std::string> seen;
    while ((pos = lp.find("C_", pos)) != std::string::npos) {
        std::size_t end = pos;
        while (end < lp.size() && (std::isalnum(lp[end]) || lp[end] == '_')) ++end;
        seen.insert(lp.substr(pos, end - pos));
        pos = end;
    }
    c_vars = seen.size();
    CHECK(c_vars == 3);
    CHECK(lp.find("Cmax") != std::string::npos);
}

TEST_CASE("milp export: deterministic bytes") {
    CHECK(export_milp(tiny_w()) == export_milp(tiny_w()));
    SplitMix64 rng(4);
    const Instance inst = random_instance(rng, false, 8);
    CHECK(export_milp(inst) == export_milp(inst));
}

TEST_CASE("milp substitution: every decoded schedule satisfies the model") {
    SplitMix64 rng(2025);
    int rounds = 0;
    while (rounds < 120) {
        const bool workers = rounds % 2 == 1;
        const Instance inst = random_instance(rng, workers, 6);
        const std::string lp = export_milp(inst);
        SplitMix64 enc_rng(rng.next());
        for (int e = 0; e < 3; ++e) {
            const Encoding enc = random_encoding(inst, enc_rng);
            const Schedule sched = decode_schedule(inst, enc);
            const auto assign = milp_assignment_from_schedule(inst, sched);
            const auto violations = check_lp_assignment(lp, assign);
            if (!violations.empty()) {
                CAPTURE(violations[0].constraint);
                CAPTURE(violations[0].lhs);
                CAPTURE(violations[0].rhs);
            }
            CHECK(violations.empty());
        }
        ++rounds;
    }
}

TEST_CASE("lp checker flags corrupted schedules") {
    const WorkerInstance inst = tiny_w();
    const std::string lp = export_milp(inst);
    Encoding enc;
    enc.sequence = {1, 1, 2};
    enc.machines = {2, 2, 1};
    enc.workers = {1, 2, 2};
    const Schedule sched = decode_schedule(inst, enc);
    auto assign = milp_assignment_from_schedule(inst, sched);
    // shift one completion time so the job chain breaks
    assign["C_1_2"] = assign["C_1_1"];
    CHECK_FALSE(check_lp_assignment(lp, assign).empty());
}

TEST_CASE("lp checker rejects unknown variables") {
    const std::string lp = export_milp(tiny_w());
    CHECK_THROWS((void)check_lp_assignment(lp, {}));
}

TEST_CASE("cp export: single-operation instance") {
    const Instance inst = make_plain(1, {{{{1, 5}}}});
    const nlohmann::json doc = nlohmann::json::parse(export_cp(inst));
    CHECK(doc.at("format") == "fjssp-cp");
    CHECK(doc.at("version") == 1);
    CHECK(doc.at("intervals").size() == 1);
    CHECK(doc.at("alternatives").size() == 1);
    CHECK(doc.at("end_before_start").empty());
    CHECK(doc.at("no_overlap_machines").size() == 1);
    CHECK_FALSE(doc.contains("no_overlap_workers"));
    CHECK(doc.at("objective").at("intervals").size() == 1);
}

TEST_CASE("cp export: TINY-W counts and group membership") {
    const nlohmann::json doc = nlohmann::json::parse(export_cp(tiny_w()));
    CHECK(doc.at("intervals").size() == 3);
    CHECK(doc.at("alternatives").size() == 7);
    CHECK(doc.at("no_overlap_machines").size() == 2);
    CHECK(doc.at("no_overlap_workers").size() == 2);
    CHECK(doc.at("end_before_start").size() == 1);  // J1's two operations chain

    // every alternative sits in exactly one machine group and one worker group
    std::map<int, int> machine_hits, worker_hits;
    for (const auto& group : doc.at("no_overlap_machines"))
        for (const auto& alt : group.at("alternatives")) machine_hits[alt.get<int>()]++;
    for (const auto& group : doc.at("no_overlap_workers"))
        for (const auto& alt : group.at("alternatives")) worker_hits[alt.get<int>()]++;
    for (int alt = 0; alt < 7; ++alt) {
        CHECK(machine_hits[alt] == 1);
        CHECK(worker_hits[alt] == 1);
    }

    // alternative durations carry the instance values
    std::multiset<int> durations;
    for (const auto& alt : doc.at("alternatives")) durations.insert(alt.at("duration").get<int>());
    CHECK(durations == std::multiset<int>{2, 3, 3, 4, 4, 5, 6});
}

TEST_CASE("cp export: every interval links to at least one alternative") {
    SplitMix64 rng(88);
    for (int round = 0; round < 40; ++round) {
        const Instance inst = random_instance(rng, round % 2 == 1, 8);
        const nlohmann::json doc = nlohmann::json::parse(export_cp(inst));
        const auto& groups = doc.at("alternative_groups");
        CHECK(groups.size() == doc.at("intervals").size());
        for (const auto& group : groups) CHECK(!group.empty());
    }
}

TEST_CASE("cp export: deterministic bytes") {
    CHECK(export_cp(tiny_w()) == export_cp(tiny_w()));
}
