#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rhobench/discretizer.hpp"

namespace rhobench
{
    /// Outcome of one optimizer run on one discretized instance.
    struct RunRecord
    {
        std::string algorithm;
        int fid = 0;
        int n = 0;
        int instance_id = 0;
        int run = 0;
        PlateauSize rho;
        std::uint64_t seed = 0;
        std::int64_t budget = 0;
        std::int64_t evaluations = 0;
        Trajectory trajectory;
        double final_delta = std::numeric_limits<double>::infinity();
        std::optional<std::int64_t> hit_1e8_at;
        bool failed = false;
        std::string message;
    };

    /// Snapshot of the counters of dp after a run.
    RunRecord make_record(std::string algorithm, const DiscretizedProblem &dp, std::uint64_t seed);
}
