#include <doctest.h>

#include <cmath>
#include <random>

#include "rhobench/error.hpp"
#include "rhobench/metrics.hpp"

using namespace rhobench;
using namespace rhobench::metrics;

namespace
{
    RunRecord with_trajectory(Trajectory trajectory, std::int64_t evaluations, std::int64_t budget = 1000)
    {
        RunRecord r;
        r.budget = budget;
        r.evaluations = evaluations;
        r.trajectory = std::move(trajectory);
        return r;
    }

    RunRecord hit_at(std::int64_t t, std::int64_t budget = 1000)
    {
        return with_trajectory({{1, 50.0}, {t, 1e-9}}, t, budget);
    }

    RunRecord miss(std::int64_t budget = 1000)
    {
        return with_trajectory({{1, 50.0}, {10, 0.3}}, budget, budget);
    }

    /// Random decreasing trajectories with hits at arbitrary evaluations.
    std::vector<RunRecord> random_runs(std::uint64_t seed, int count)
    {
        std::mt19937_64 gen(seed);
        std::uniform_int_distribution<std::int64_t> step(1, 400);
        std::uniform_real_distribution<double> shrink(0.01, 0.9);
        std::vector<RunRecord> runs;
        for (int i = 0; i < count; ++i)
        {
            Trajectory t;
            std::int64_t eval = 1;
            double delta = 300.0;
            const int events = 1 + static_cast<int>(step(gen) % 40);
            for (int e = 0; e < events; ++e)
            {
                t.push_back({eval, delta});
                eval += step(gen);
                delta *= shrink(gen);
            }
            runs.push_back(with_trajectory(std::move(t), 80000, 80000));
        }
        return runs;
    }

    ErrorCode code_of(auto &&fn)
    {
        try
        {
            fn();
        }
        catch (const Error &e)
        {
            return e.code();
        }
        FAIL("expected an rhobench::Error");
        return ErrorCode::IoError;
    }
}

TEST_CASE("default targets")
{
    const auto t = default_targets();
    REQUIRE(t.size() == 51);
    CHECK(t[0] == 100.0);
    CHECK(t[50] == 1e-8);
    CHECK(t[25] == doctest::Approx(1e-3));
    for (std::size_t k = 1; k < t.size(); ++k)
        CHECK(t[k] < t[k - 1]);
    CHECK(code_of([] { TargetSet({1.0, 1.0}); }) == ErrorCode::ConfigInvalid);
    CHECK(code_of([] { TargetSet({1.0, -1.0}); }) == ErrorCode::ConfigInvalid);
}

TEST_CASE("hitting time")
{
    const auto r = with_trajectory({{10, 5.0}, {40, 1e-9}}, 40);
    CHECK(hitting_time(r, 1e-8) == 40);
    CHECK(hitting_time(r, 10.0) == 10);
    CHECK(hitting_time(r, 1e-10) == kNever);
    // Strict comparison: a delta equal to the target does not count.
    CHECK(hitting_time(r, 5.0) == 40);
}

TEST_CASE("best delta at a budget")
{
    const auto r = with_trajectory({{10, 5.0}, {40, 1e-9}}, 40);
    CHECK(std::isinf(best_delta_at(r, 9)));
    CHECK(best_delta_at(r, 10) == 5.0);
    CHECK(best_delta_at(r, 39) == 5.0);
    CHECK(best_delta_at(r, 1000) == 1e-9);
}

TEST_CASE("success rate examples")
{
    std::vector<RunRecord> runs;
    for (int i = 0; i < 37; ++i)
        runs.push_back(hit_at(100 + i));
    for (int i = 0; i < 63; ++i)
        runs.push_back(miss());
    CHECK(success_rate(runs, 1e-8, 1000) == doctest::Approx(0.37));

    const std::vector<RunRecord> early{hit_at(1), hit_at(1)};
    CHECK(success_rate(early, 1e-8, 1) == 1.0);
    CHECK(success_rate(runs, 1e-8, 50) == 0.0);
    CHECK(code_of([] { success_rate({}, 1e-8, 10); }) == ErrorCode::EmptyGroup);
}

TEST_CASE("ERT examples")
{
    const std::vector<RunRecord> mixed{hit_at(100), hit_at(200), miss(1000)};
    CHECK(ert(mixed, 1e-8, 1000) == 650.0);

    const std::vector<RunRecord> all{hit_at(500), hit_at(500), hit_at(500)};
    CHECK(ert(all, 1e-8, 1000) == 500.0);

    const std::vector<RunRecord> none{miss(), miss()};
    CHECK(std::isinf(ert(none, 1e-8, 1000)));
    CHECK(code_of([] { ert({}, 1e-8, 10); }) == ErrorCode::EmptyGroup);
}

TEST_CASE("ERT caps each run at the evaluations it consumed")
{
    // The failed run stopped after 300 evaluations, so it contributes 300 rather than the 1000 budget.
    const std::vector<RunRecord> runs{hit_at(100), with_trajectory({{1, 4.0}}, 300)};
    CHECK(ert(runs, 1e-8, 1000) == 400.0);
    // A hit after the cap counts as a failure.
    const std::vector<RunRecord> late{hit_at(100), hit_at(900)};
    CHECK(ert(late, 1e-8, 500) == 600.0);
}

TEST_CASE("ECDF examples")
{
    const auto targets = default_targets();
    const std::vector<std::int64_t> budgets{5};
    const std::vector<RunRecord> half{with_trajectory({{1, 0.5}}, 10)};
    CHECK(ecdf(half, targets, budgets).front().fraction == 12.0 / 51.0);
    const std::vector<RunRecord> solved{with_trajectory({{1, 1e-9}}, 10)};
    CHECK(ecdf(solved, targets, budgets).front().fraction == 1.0);
    const std::vector<RunRecord> far{with_trajectory({{1, 1e3}}, 10)};
    CHECK(ecdf(far, targets, budgets).front().fraction == 0.0);

    // Oracle: count targets 10^(2 - 0.2k) >= delta by brute force.
    for (const double delta : {77.0, 3.3e-2, 1e-5, 2e-8})
    {
        int count = 0;
        for (int k = 0; k <= 50; ++k)
            count += std::pow(10.0, 2.0 - 0.2 * k) >= delta ? 1 : 0;
        const std::vector<RunRecord> one{with_trajectory({{1, delta}}, 10)};
        CHECK(ecdf(one, targets, budgets).front().fraction == doctest::Approx(count / 51.0));
    }
    CHECK(code_of([&] { ecdf({}, targets, budgets); }) == ErrorCode::EmptyGroup);
}

TEST_CASE("ECDF averages per-run fractions")
{
    const auto targets = default_targets();
    const std::vector<std::int64_t> budgets{100};
    const std::vector<RunRecord> runs{with_trajectory({{1, 1e-9}}, 10), with_trajectory({{1, 1e3}}, 10)};
    CHECK(ecdf(runs, targets, budgets).front().fraction == 0.5);
}

TEST_CASE("metric invariants on random runs")
{
    const auto runs = random_runs(11, 40);
    const auto targets = default_targets();
    const auto budgets = log_budgets(10, 20000);

    const auto curve = ecdf(runs, targets, budgets);
    for (std::size_t i = 0; i < curve.size(); ++i)
    {
        CHECK(curve[i].fraction >= 0.0);
        CHECK(curve[i].fraction <= 1.0);
        if (i > 0)
            CHECK(curve[i].fraction >= curve[i - 1].fraction);
    }

    for (const double phi : {10.0, 1.0, 1e-2, 1e-4})
    {
        double previous = 0.0;
        for (const std::int64_t b : {100, 1000, 5000, 20000})
        {
            const double s = success_rate(runs, phi, b);
            CHECK(s >= previous);
            previous = s;
        }
        CHECK(success_rate(runs, phi, 20000) >= success_rate(runs, phi / 10.0, 20000));
    }

    for (const double phi : {10.0, 1.0, 1e-2, 1e-4})
    {
        double previous = 0.0;
        for (const std::int64_t b : {20000, 40000, 80000})
        {
            const double e = ert(runs, phi, b);
            CHECK(e >= previous);
            previous = e;
        }
        const double rate = success_rate(runs, phi, 20000);
        const double e = ert(runs, phi, 20000);
        if (rate == 1.0)
        {
            CHECK(e <= 20000.0);
            double mean = 0.0;
            for (const auto &r : runs)
                mean += static_cast<double>(hitting_time(r, phi));
            CHECK(e == doctest::Approx(mean / static_cast<double>(runs.size())));
        }
        if (!std::isinf(e))
        {
            std::int64_t first = kNever;
            for (const auto &r : runs)
                first = std::min(first, hitting_time(r, phi));
            CHECK(e >= static_cast<double>(first));
        }
    }
}

TEST_CASE("full success implies ERT within the cap, but not conversely")
{
    const std::vector<RunRecord> all{hit_at(100), hit_at(700)};
    CHECK(success_rate(all, 1e-8, 1000) == 1.0);
    CHECK(ert(all, 1e-8, 1000) <= 1000.0);

    const std::vector<RunRecord> partial{hit_at(100), miss(1000)};
    CHECK(success_rate(partial, 1e-8, 1000) < 1.0);
    CHECK(ert(partial, 1e-8, 1000) > 1000.0);

    const std::vector<RunRecord> quick{hit_at(1), hit_at(1), miss(1000)};
    CHECK(success_rate(quick, 1e-8, 1000) < 1.0);
    CHECK(ert(quick, 1e-8, 1000) == 501.0);
}

TEST_CASE("log budgets")
{
    const auto b = log_budgets(10, 50000);
    CHECK(b.front() == 10);
    CHECK(b.back() == 50000);
    CHECK(b.size() <= 100);
    CHECK(b.size() >= 90);
    for (std::size_t i = 1; i < b.size(); ++i)
        CHECK(b[i] > b[i - 1]);
    CHECK(log_budgets(10, 10) == std::vector<std::int64_t>{10});
    CHECK(log_budgets(10, 5).empty());
}
