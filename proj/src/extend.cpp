#include "fjssp/extend.hpp"

#include <cmath>
#include <random>

#include "fjssp/rng.hpp"

namespace fjssp {

int ExtendParams::resolve_workers(int num_machines) const {
    if (workers) return *workers;
    return static_cast<int>(std::floor(1.5 * num_machines + 0.5));
}

void ExtendParams::validate() const {
    if (workers && *workers < 1) throw ModelError("extend: worker count must be >= 1");
    if (!(lb > 0.0)) throw ModelError("extend: lb must be positive");
    if (lb > ub) throw ModelError("extend: lb must not exceed ub");
}

ExtendResult extend_instance(const Instance& inst, const ExtendParams& params) {
    validate_instance(inst);
    if (inst.has_workers()) throw ModelError("extend: instance already carries workers");
    params.validate();

    ExtendResult result;
    result.reproducible = params.seed.has_value();
    result.seed_used = params.seed ? *params.seed
                                   : (static_cast<std::uint64_t>(std::random_device{}()) << 32 |
                                      std::random_device{}());
    SplitMix64 rng(result.seed_used);

    const int w = params.resolve_workers(inst.num_machines);
    WorkerInstance out = inst;
    out.num_workers = w;
    for (Job& job : out.jobs)
        for (Operation& op : job.operations)
            for (MachineOption& mo : op.options) {
                const int crew = rng.uniform_int(1, w);
                const std::vector<int> selected = rng.sample_without_replacement(w, crew);
                const double d_orig = mo.duration;
                mo.workers.reserve(crew);
                for (int id : selected) {
                    const double draw = rng.uniform_real(d_orig * params.lb, d_orig * params.ub);
                    int d_work = static_cast<int>(std::llround(draw));
                    if (d_work < 1) d_work = 1;
                    mo.workers.push_back({id + 1, d_work});
                }
                mo.duration = 0;  // plain-format duration has no meaning here
            }
    validate_instance(out);
    result.instance = std::move(out);
    return result;
}

}  // namespace fjssp
