#include "rhobench/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "rhobench/error.hpp"

namespace rhobench::metrics
{
    namespace
    {
        void require_records(std::span<const RunRecord> records)
        {
            if (records.empty())
                throw Error(ErrorCode::EmptyGroup, "no run records in group");
        }
    }

    TargetSet::TargetSet(std::vector<double> targets) : targets_(std::move(targets))
    {
        for (std::size_t k = 0; k < targets_.size(); ++k)
        {
            if (!(targets_[k] > 0.0))
                throw Error(ErrorCode::ConfigInvalid, "targets must be positive");
            if (k > 0 && !(targets_[k] < targets_[k - 1]))
                throw Error(ErrorCode::ConfigInvalid, "targets must be strictly decreasing");
        }
    }

    TargetSet default_targets()
    {
        std::vector<double> t(51);
        for (int k = 0; k <= 50; ++k)
            t[k] = std::pow(10.0, static_cast<double>(10 - k) / 5.0);
        return TargetSet(std::move(t));
    }

    std::int64_t hitting_time(const RunRecord &record, double phi)
    {
        for (const auto &event : record.trajectory)
            if (event.delta < phi)
                return event.eval;
        return kNever;
    }

    double best_delta_at(const RunRecord &record, std::int64_t budget)
    {
        double best = std::numeric_limits<double>::infinity();
        for (const auto &event : record.trajectory)
        {
            if (event.eval > budget)
                break;
            best = event.delta;
        }
        return best;
    }

    double success_rate(std::span<const RunRecord> records, double phi, std::int64_t budget)
    {
        require_records(records);
        const auto hits = std::count_if(records.begin(), records.end(),
                                        [&](const RunRecord &r) { return hitting_time(r, phi) <= budget; });
        return static_cast<double>(hits) / static_cast<double>(records.size());
    }

    double ert(std::span<const RunRecord> records, double phi, std::int64_t budget)
    {
        require_records(records);
        double total = 0.0;
        std::int64_t hits = 0;
        for (const auto &r : records)
        {
            const std::int64_t cap = std::min(budget, r.evaluations);
            const std::int64_t t = hitting_time(r, phi);
            if (t <= cap)
            {
                total += static_cast<double>(t);
                ++hits;
            }
            else
            {
                total += static_cast<double>(cap);
            }
        }
        if (hits == 0)
            return std::numeric_limits<double>::infinity();
        return total / static_cast<double>(hits);
    }

    std::vector<EcdfPoint> ecdf(std::span<const RunRecord> records, const TargetSet &targets,
                                std::span<const std::int64_t> budgets)
    {
        require_records(records);
        std::vector<EcdfPoint> curve;
        curve.reserve(budgets.size());
        const auto n_targets = static_cast<double>(targets.size());
        for (const std::int64_t b : budgets)
        {
            double sum = 0.0;
            for (const auto &r : records)
            {
                const double best = best_delta_at(r, b);
                const auto reached = std::count_if(targets.values().begin(), targets.values().end(),
                                                   [&](double phi) { return phi >= best; });
                sum += static_cast<double>(reached) / n_targets;
            }
            curve.push_back({b, sum / static_cast<double>(records.size())});
        }
        return curve;
    }

    std::vector<std::int64_t> log_budgets(std::int64_t from, std::int64_t to, int count)
    {
        std::vector<std::int64_t> out;
        if (to < from || count < 1)
            return out;
        if (count == 1 || to == from)
            return {to};
        const double lo = std::log10(static_cast<double>(from));
        const double hi = std::log10(static_cast<double>(to));
        for (int i = 0; i < count; ++i)
        {
            const double e = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
            const auto b = i == count - 1 ? to : static_cast<std::int64_t>(std::llround(std::pow(10.0, e)));
            if (out.empty() || b > out.back())
                out.push_back(b);
        }
        return out;
    }
}
