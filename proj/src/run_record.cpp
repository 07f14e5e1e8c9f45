#include "rhobench/run_record.hpp"

namespace rhobench
{
    RunRecord make_record(std::string algorithm, const DiscretizedProblem &dp, std::uint64_t seed)
    {
        const ProblemInstance &inst = dp.instance();
        RunRecord r;
        r.algorithm = std::move(algorithm);
        r.fid = inst.fid;
        r.n = inst.domain.n;
        r.instance_id = inst.instance_id;
        r.rho = dp.rho();
        r.seed = seed;
        r.budget = dp.budget();
        r.evaluations = dp.eval_count();
        r.trajectory = dp.trajectory();
        if (!r.trajectory.empty())
            r.final_delta = r.trajectory.back().delta;
        for (const auto &event : r.trajectory)
        {
            if (event.delta < kSolvedDelta)
            {
                r.hit_1e8_at = event.eval;
                break;
            }
        }
        return r;
    }
}
