#include <doctest.h>

#include <cmath>
#include <map>

#include "rhobench/classic.hpp"
#include "rhobench/error.hpp"
#include "rhobench/metrics.hpp"

using namespace rhobench;

namespace
{
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

    double closed_form(double p, int k)
    {
        return p * std::pow(1.0 - p, std::abs(k)) / (2.0 - p);
    }

    /// Success rate over `runs` seeds of one algorithm on F1 at the given plateau size.
    template <typename Run>
    double sphere_success(Run run, int n, PlateauSize rho, std::int64_t budget, int runs)
    {
        int hits = 0;
        for (int s = 0; s < runs; ++s)
        {
            DiscretizedProblem dp(make_instance(1, n, s % 5), rho);
            const auto rec = run(dp, budget, 1000 + static_cast<std::uint64_t>(s));
            hits += rec.hit_1e8_at.has_value() ? 1 : 0;
        }
        return static_cast<double>(hits) / runs;
    }
}

TEST_CASE("lognormal update")
{
    CHECK(classic::learning_rate(8) == doctest::Approx(0.25));
    CHECK(classic::lognormal_update(0.7, 0.3, 0.0) == 0.7);
    CHECK(classic::lognormal_update(1.0, 0.5, 2.0) == doctest::Approx(std::exp(1.0)));
    CHECK(classic::lognormal_update(1e-9, 1.0, -100.0) == classic::kMinStep);
}

TEST_CASE("discrete recombination of identical parents is the identity")
{
    Rng rng(1);
    const Vector a = Vector::LinSpaced(7, -2.0, 3.0);
    CHECK(classic::discrete_recombination(a, a, rng) == a);
    const IntVector z = IntVector::LinSpaced(5, -3, 9);
    CHECK(classic::discrete_recombination(z, z, rng) == z);
}

TEST_CASE("discrete recombination takes each coordinate from one parent")
{
    Rng rng(2);
    const Vector a = Vector::Zero(2000);
    const Vector b = Vector::Ones(2000);
    const Vector c = classic::discrete_recombination(a, b, rng);
    CHECK(((c.array() == 0.0) || (c.array() == 1.0)).all());
    CHECK(c.mean() == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("geometric parameter")
{
    CHECK(classic::geometric_parameter(0.0) == 1.0);
    // m = 2q / (1 - q^2) with q = 1 - p inverts the per-coordinate form.
    for (const double p : {0.2, 0.5, 0.8})
    {
        const double q = 1.0 - p;
        CHECK(classic::geometric_parameter(2.0 * q / (1.0 - q * q)) == doctest::Approx(p));
    }
    CHECK(classic::geometric_parameter(1e6) < 1e-5);
}

TEST_CASE("closed-form two-sided geometric law sums to one")
{
    for (const double p : {0.05, 0.3, 0.5, 0.9})
    {
        double total = 0.0;
        for (int k = -2000; k <= 2000; ++k)
            total += closed_form(p, k);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK(closed_form(0.5, 0) == doctest::Approx(1.0 / 3.0));
    CHECK(closed_form(0.5, 1) == doctest::Approx(1.0 / 6.0));
    CHECK(closed_form(0.5, -1) == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("max entropy sampling matches the closed form and is symmetric")
{
    for (const double p : {0.2, 0.5, 0.8})
    {
        const double q = 1.0 - p;
        const double m = 2.0 * q / (1.0 - q * q);
        Rng rng(42);
        constexpr int kDraws = 1'000'000;
        std::map<std::int64_t, int> counts;
        double sum = 0.0;
        double sum_sq = 0.0;
        for (int s = 0; s < kDraws; ++s)
        {
            const auto k = max_entropy_sample(m, rng);
            ++counts[k];
            sum += static_cast<double>(k);
            sum_sq += static_cast<double>(k * k);
        }
        double tv = 0.0;
        double covered = 0.0;
        for (int k = -50; k <= 50; ++k)
        {
            const auto it = counts.find(k);
            const double freq = it == counts.end() ? 0.0 : static_cast<double>(it->second) / kDraws;
            tv += std::abs(freq - closed_form(p, k));
            covered += freq;
        }
        tv = 0.5 * (tv + (1.0 - covered));
        CHECK_MESSAGE(tv < 0.01, "p=", p, " tv=", tv);

        const double mean = sum / kDraws;
        const double sd = std::sqrt(sum_sq / kDraws - mean * mean);
        CHECK_MESSAGE(std::abs(mean) < 3.0 * sd / std::sqrt(kDraws), "p=", p, " mean=", mean);
    }
}

TEST_CASE("tiny deviations almost always return zero")
{
    Rng rng(9);
    int zeros = 0;
    for (int s = 0; s < 10000; ++s)
        zeros += max_entropy_sample(1e-9, rng) == 0 ? 1 : 0;
    CHECK(zeros >= 9999);
    CHECK(classic::geometric_difference(1.0, rng) == 0);
}

TEST_CASE("max entropy sample rejects non-positive deviations")
{
    Rng rng(1);
    CHECK(code_of([&] { max_entropy_sample(0.0, rng); }) == ErrorCode::InvalidDeviation);
    CHECK(code_of([&] { max_entropy_sample(-1.0, rng); }) == ErrorCode::InvalidDeviation);
    CHECK(code_of([&] { max_entropy_sample(INFINITY, rng); }) == ErrorCode::InvalidDeviation);
}

TEST_CASE("uniform resampling touches one coordinate per child on average")
{
    Rng rng(5);
    constexpr int n = 8;
    const IntVector zlb = IntVector::Constant(n, -3);
    const IntVector zub = IntVector::Constant(n, 3);
    std::size_t total = 0;
    constexpr int kChildren = 200000;
    for (int c = 0; c < kChildren; ++c)
    {
        IntVector z = IntVector::Zero(n);
        total += classic::uniform_resampling(z, zlb, zub, 1.0 / n, rng);
        CHECK(((z.array() >= -3) && (z.array() <= 3)).all());
    }
    CHECK(static_cast<double>(total) / kChildren == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("run errors")
{
    DiscretizedProblem cont(make_instance(1, 3, 0), PlateauSize::none());
    CHECK(code_of([&] { es_run(cont, 27, 1); }) == ErrorCode::BudgetTooSmall);
    CHECK(code_of([&] { intea_run(cont, 1000, 1); }) == ErrorCode::NotDiscretized);
    CHECK(code_of([&] { ga_run(cont, 1000, 1); }) == ErrorCode::NotDiscretized);
    DiscretizedProblem disc(make_instance(1, 3, 0), PlateauSize(1.0));
    CHECK(code_of([&] { intea_run(disc, 10, 1); }) == ErrorCode::BudgetTooSmall);
    CHECK(code_of([&] { ga_run(disc, 10, 1); }) == ErrorCode::BudgetTooSmall);
}

TEST_CASE("runs are deterministic and honour the budget")
{
    using RunFn = RunRecord (*)(DiscretizedProblem &, std::int64_t, std::uint64_t);
    for (const RunFn run : {RunFn{es_run}, RunFn{intea_run}, RunFn{ga_run}})
    {
        DiscretizedProblem a(make_instance(2, 5, 1), PlateauSize(0.01));
        DiscretizedProblem b(make_instance(2, 5, 1), PlateauSize(0.01));
        const auto ra = run(a, 3000, 77);
        const auto rb = run(b, 3000, 77);
        CHECK(ra.trajectory == rb.trajectory);
        CHECK(ra.evaluations == rb.evaluations);
        CHECK(ra.evaluations <= 3000);
        if (!ra.hit_1e8_at)
            CHECK(ra.evaluations >= 3000 - classic::kLambda + 1);
        CHECK(ra.final_delta == ra.trajectory.back().delta);
        for (std::size_t i = 1; i < ra.trajectory.size(); ++i)
        {
            CHECK(ra.trajectory[i].delta < ra.trajectory[i - 1].delta);
            CHECK(ra.trajectory[i].eval > ra.trajectory[i - 1].eval);
        }

        DiscretizedProblem c(make_instance(2, 5, 1), PlateauSize(0.01));
        CHECK(run(c, 3000, 78).trajectory != ra.trajectory);
    }
}

TEST_CASE("hit_1e8_at is the first sub-target event")
{
    DiscretizedProblem dp(make_instance(1, 3, 0), PlateauSize(1.0));
    const auto rec = intea_run(dp, 5000, 3);
    REQUIRE(rec.hit_1e8_at);
    CHECK(*rec.hit_1e8_at == metrics::hitting_time(rec, kSolvedDelta));
    CHECK(*rec.hit_1e8_at <= rec.budget);
    CHECK(rec.evaluations - *rec.hit_1e8_at < classic::kLambda);
}

TEST_CASE("ES solves the continuous 5-D sphere")
{
    CHECK(sphere_success(es_run, 5, PlateauSize::none(), 10000, 20) == 1.0);
}

TEST_CASE("int-EA solves the 5-D sphere with unit plateaus")
{
    CHECK(sphere_success(intea_run, 5, PlateauSize(1.0), 10000, 20) == 1.0);
}

TEST_CASE("GA solves coarse plateaus but not fine ones")
{
    CHECK(sphere_success(ga_run, 5, PlateauSize(2.0), 50000, 20) >= 0.95);
    CHECK(sphere_success(ga_run, 5, PlateauSize(0.001), 50000, 20) <= 0.05);
}
