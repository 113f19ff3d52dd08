#pragma once

#include <map>
#include <string>
#include <vector>

#include "fjssp/encoding.hpp"
#include "fjssp/model.hpp"

namespace fjssp {

/// Emits the disjunctive big-M MILP for the instance in LP model text.
/// Variables: Y assignment binaries (Y_i_j_k, or Y_i_j_k_s with workers),
/// X_i_j_ip_jp machine-order binaries for cross-job operation pairs sharing
/// an admissible machine, U_i_j_ip_jp worker-order binaries for pairs sharing
/// an admissible worker, completion times C_i_j, and the makespan objective
/// Cmax. The big-M constant aggregates the maximal option duration of every
/// operation. Output is deterministic for a given instance.
std::string export_milp(const Instance& instance);

/// Emits the interval/alternative constraint model as a versioned JSON
/// document: one interval per operation, one fixed-duration alternative per
/// (machine[, worker]) option, end-before-start chains per job, no-overlap
/// groups per machine (and per worker), objective minimize max end of the
/// last operation of every job.
std::string export_cp(const Instance& instance);

// --- substitution checking (stands in for an external solver in CI) -------

struct LpViolation {
    std::string constraint;
    double lhs = 0.0;
    double rhs = 0.0;
    char sense = '?';
};

/// Parses the LP text emitted by export_milp and evaluates every constraint
/// row under the assignment; unknown variables in the assignment are errors.
std::vector<LpViolation> check_lp_assignment(const std::string& lp_text,
                                             const std::map<std::string, double>& assignment,
                                             double tolerance = 1e-6);

/// Builds the MILP variable assignment a decoded schedule induces: chosen Y
/// binaries, completion times, makespan, and order binaries read off the
/// schedule's machine and worker timelines.
std::map<std::string, double> milp_assignment_from_schedule(const Instance& instance,
                                                            const Schedule& schedule);

}  // namespace fjssp
