#pragma once

#include <cstdint>
#include <optional>

#include "fjssp/model.hpp"

namespace fjssp {

/// Parameters for turning a plain instance into a worker instance. The
/// worker count defaults to 1.5*m rounded half up; each (operation, machine)
/// option receives a uniform 1..w sized crew of distinct workers whose
/// durations are drawn from [lb*d, ub*d] and rounded half away from zero
/// (clamped to 1).
struct ExtendParams {
    std::optional<int> workers;       // default: round_half_up(1.5 * m)
    double lb = 0.9;
    double ub = 1.1;
    std::optional<std::uint64_t> seed;  // entropy-seeded when absent

    int resolve_workers(int num_machines) const;
    void validate() const;
};

struct ExtendResult {
    WorkerInstance instance;
    std::uint64_t seed_used = 0;
    bool reproducible = false;  // false when the seed came from entropy
};

ExtendResult extend_instance(const Instance& instance, const ExtendParams& params);

}  // namespace fjssp
