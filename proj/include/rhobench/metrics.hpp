#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "rhobench/run_record.hpp"

namespace rhobench::metrics
{
    inline constexpr std::int64_t kNever = std::numeric_limits<std::int64_t>::max();

    /// Strictly decreasing fixed targets.
    class TargetSet
    {
    public:
        explicit TargetSet(std::vector<double> targets);

        const std::vector<double> &values() const { return targets_; }
        std::size_t size() const { return targets_.size(); }
        double operator[](std::size_t k) const { return targets_[k]; }

    private:
        std::vector<double> targets_;
    };

    /// 51 log-spaced targets, 10^(2 - 0.2 k) for k = 0..50.
    TargetSet default_targets();

    /// First evaluation whose delta is strictly below phi, or kNever.
    std::int64_t hitting_time(const RunRecord &record, double phi);

    /// Best-so-far delta after the first `budget` evaluations (+inf before any improvement).
    double best_delta_at(const RunRecord &record, std::int64_t budget);

    /// Fraction of runs that hit phi within the budget.
    double success_rate(std::span<const RunRecord> records, double phi, std::int64_t budget);

    /// Sum of min(t_i, B_i) over runs divided by the number of hits, where B_i is
    /// the budget capped by the evaluations run i actually consumed; +inf without hits.
    double ert(std::span<const RunRecord> records, double phi, std::int64_t budget);

    struct EcdfPoint
    {
        std::int64_t budget;
        double fraction;
    };

    /// Mean over runs of the fraction of targets phi >= best-so-far delta at each budget.
    std::vector<EcdfPoint> ecdf(std::span<const RunRecord> records, const TargetSet &targets,
                                std::span<const std::int64_t> budgets);

    /// `count` log-spaced integer budgets from `from` to `to`, deduplicated.
    std::vector<std::int64_t> log_budgets(std::int64_t from, std::int64_t to, int count = 100);
}
