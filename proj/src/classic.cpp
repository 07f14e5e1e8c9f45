#include "rhobench/classic.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <boost/random/geometric_distribution.hpp>

#include "rhobench/error.hpp"

namespace rhobench
{
    namespace classic
    {
        double learning_rate(int n)
        {
            return 1.0 / std::sqrt(2.0 * static_cast<double>(n));
        }

        double lognormal_update(double step, double tau, double draw)
        {
            return std::max(kMinStep, step * std::exp(tau * draw));
        }

        double geometric_parameter(double m)
        {
            return 1.0 - m / (std::sqrt(1.0 + m * m) + 1.0);
        }

        std::int64_t geometric_difference(double p, Rng &rng)
        {
            if (p >= 1.0)
                return 0;
            boost::random::geometric_distribution<std::int64_t, double> geometric(p);
            const std::int64_t g1 = geometric(rng);
            const std::int64_t g2 = geometric(rng);
            return g1 - g2;
        }

        std::size_t uniform_resampling(IntVector &z, const IntVector &zlb, const IntVector &zub, double p, Rng &rng)
        {
            std::size_t changed = 0;
            for (Eigen::Index j = 0; j < z.size(); ++j)
                if (uniform(rng, 0.0, 1.0) < p)
                {
                    z[j] = uniform_int(rng, zlb[j], zub[j]);
                    ++changed;
                }
            return changed;
        }
    }

    std::int64_t max_entropy_sample(double m, Rng &rng)
    {
        if (!(m > 0.0) || !std::isfinite(m))
            throw Error(ErrorCode::InvalidDeviation, "deviation must be positive and finite");
        return classic::geometric_difference(classic::geometric_parameter(m), rng);
    }

    namespace
    {
        void check_budget(std::int64_t budget)
        {
            if (budget < classic::kLambda)
                throw Error(ErrorCode::BudgetTooSmall, "budget " + std::to_string(budget) +
                                                           " is below the offspring count " +
                                                           std::to_string(classic::kLambda));
        }

        template <typename Individual>
        void truncate_best(std::vector<Individual> &pool, std::size_t keep)
        {
            std::stable_sort(pool.begin(), pool.end(),
                             [](const Individual &a, const Individual &b) { return a.fitness < b.fitness; });
            pool.resize(keep);
        }

        double initial_step(const Domain &dom, Rng &rng)
        {
            return std::max(classic::kMinStep, uniform(rng, 0.0, std::sqrt(std::abs(dom.width()))));
        }

        std::size_t random_parent(Rng &rng)
        {
            return static_cast<std::size_t>(uniform_int(rng, 0, classic::kMu - 1));
        }
    }

    RunRecord es_run(DiscretizedProblem &dp, std::int64_t budget, std::uint64_t seed)
    {
        check_budget(budget);
        dp.reset(budget);
        Rng rng(seed);

        const int n = dp.dimension();
        const Domain &dom = dp.domain();
        const double tau = classic::learning_rate(n);

        std::vector<ContinuousIndividual> parents;
        parents.reserve(classic::kMu);
        for (int i = 0; i < classic::kMu; ++i)
        {
            Vector x(n);
            for (int j = 0; j < n; ++j)
                x[j] = uniform(rng, dom.lb, dom.ub);
            const double sigma = initial_step(dom, rng);
            parents.push_back({x, sigma, dp.eval_continuous(x)});
        }

        std::vector<ContinuousIndividual> offspring;
        offspring.reserve(classic::kLambda);
        while (!dp.solved() && dp.remaining() >= classic::kLambda)
        {
            offspring.clear();
            for (int k = 0; k < classic::kLambda; ++k)
            {
                const auto &a = parents[random_parent(rng)];
                const auto &b = parents[random_parent(rng)];
                Vector x = classic::discrete_recombination(a.x, b.x, rng);
                const double sigma = classic::lognormal_update(0.5 * (a.sigma + b.sigma), tau, standard_normal(rng));
                for (int j = 0; j < n; ++j)
                    x[j] += sigma * standard_normal(rng);
                const double f = dp.eval_continuous(x);
                offspring.push_back({std::move(x), sigma, f});
            }
            truncate_best(offspring, classic::kMu);
            parents.swap(offspring);
        }
        return make_record("es", dp, seed);
    }

    RunRecord intea_run(DiscretizedProblem &dp, std::int64_t budget, std::uint64_t seed)
    {
        if (!dp.rho().present())
            throw Error(ErrorCode::NotDiscretized, "int-EA needs a plateau size");
        check_budget(budget);
        dp.reset(budget);
        Rng rng(seed);

        const int n = dp.dimension();
        const double tau = classic::learning_rate(n);
        const auto [zlb, zub] = dp.integer_bounds();

        std::vector<IntegerIndividual> parents;
        parents.reserve(classic::kMu);
        for (int i = 0; i < classic::kMu; ++i)
        {
            IntVector z(n);
            for (int j = 0; j < n; ++j)
                z[j] = uniform_int(rng, zlb[j], zub[j]);
            const double m = initial_step(dp.domain(), rng);
            parents.push_back({z, m, dp.eval_integer(z)});
        }

        std::vector<IntegerIndividual> offspring;
        offspring.reserve(classic::kLambda);
        while (!dp.solved() && dp.remaining() >= classic::kLambda)
        {
            offspring.clear();
            for (int k = 0; k < classic::kLambda; ++k)
            {
                const auto &a = parents[random_parent(rng)];
                const auto &b = parents[random_parent(rng)];
                IntVector z = classic::discrete_recombination(a.z, b.z, rng);
                const double m = classic::lognormal_update(0.5 * (a.m + b.m), tau, standard_normal(rng));
                const double per_coordinate = m / static_cast<double>(n);
                for (int j = 0; j < n; ++j)
                    z[j] += max_entropy_sample(per_coordinate, rng);
                const double f = dp.eval_integer(z);
                offspring.push_back({std::move(z), m, f});
            }
            truncate_best(offspring, classic::kMu);
            parents.swap(offspring);
        }
        return make_record("intea", dp, seed);
    }

    RunRecord ga_run(DiscretizedProblem &dp, std::int64_t budget, std::uint64_t seed)
    {
        if (!dp.rho().present())
            throw Error(ErrorCode::NotDiscretized, "GA needs a plateau size");
        check_budget(budget);
        dp.reset(budget);
        Rng rng(seed);

        const int n = dp.dimension();
        const double p_mutation = 1.0 / static_cast<double>(n);
        const auto [zlb, zub] = dp.integer_bounds();

        // m is unused by the GA; the field stays at 1.
        std::vector<IntegerIndividual> population;
        population.reserve(classic::kMu + classic::kLambda);
        for (int i = 0; i < classic::kMu; ++i)
        {
            IntVector z(n);
            for (int j = 0; j < n; ++j)
                z[j] = uniform_int(rng, zlb[j], zub[j]);
            population.push_back({z, 1.0, dp.eval_integer(z)});
        }

        std::vector<IntegerIndividual> pool;
        pool.reserve(classic::kMu + classic::kLambda);
        while (!dp.solved() && dp.remaining() >= classic::kLambda)
        {
            pool.clear();
            for (int k = 0; k < classic::kLambda; ++k)
            {
                const auto &a = population[random_parent(rng)];
                const auto &b = population[random_parent(rng)];
                IntVector z = classic::discrete_recombination(a.z, b.z, rng);
                classic::uniform_resampling(z, zlb, zub, p_mutation, rng);
                const double f = dp.eval_integer(z);
                pool.push_back({std::move(z), 1.0, f});
            }
            // Offspring precede parents, so ties go to the newcomers.
            pool.insert(pool.end(), population.begin(), population.end());
            truncate_best(pool, classic::kMu);
            population.swap(pool);
        }
        return make_record("ga", dp, seed);
    }
}
