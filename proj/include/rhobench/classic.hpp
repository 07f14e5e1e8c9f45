#pragma once

#include <cstdint>

#include "rhobench/discretizer.hpp"
#include "rhobench/random.hpp"
#include "rhobench/run_record.hpp"

namespace rhobench
{
    struct ContinuousIndividual
    {
        Vector x;
        double sigma;
        double fitness;
    };

    struct IntegerIndividual
    {
        IntVector z;
        double m;
        double fitness;
    };

    namespace classic
    {
        inline constexpr int kMu = 4;
        inline constexpr int kLambda = 28;
        inline constexpr double kMinStep = 1e-10;

        /// tau = 1 / sqrt(2n).
        double learning_rate(int n);

        /// step * exp(tau * draw), floored at kMinStep.
        double lognormal_update(double step, double tau, double draw);

        /// Each coordinate copied from a or b with probability 1/2.
        template <typename V>
        V discrete_recombination(const V &a, const V &b, Rng &rng)
        {
            V child = a;
            for (Eigen::Index i = 0; i < child.size(); ++i)
                if (uniform_int(rng, 0, 1) == 1)
                    child[i] = b[i];
            return child;
        }

        /// Success probability of the geometric variates for a per-coordinate deviation m.
        double geometric_parameter(double m);

        /// G1 - G2 with G1, G2 iid geometric on {0, 1, ...} with success probability p.
        std::int64_t geometric_difference(double p, Rng &rng);

        /// Redraws each coordinate uniformly within its bounds with probability p; returns how many were drawn.
        std::size_t uniform_resampling(IntVector &z, const IntVector &zlb, const IntVector &zub, double p, Rng &rng);
    }

    /// Symmetric integer step from Rudolph's maximum entropy law, drawn as G1 - G2.
    std::int64_t max_entropy_sample(double m, Rng &rng);

    /// (4,28)-ES with lognormal self-adaptation of a single step size.
    RunRecord es_run(DiscretizedProblem &dp, std::int64_t budget, std::uint64_t seed);

    /// (4,28) integer EA with self-adapted maximum entropy mutation.
    RunRecord intea_run(DiscretizedProblem &dp, std::int64_t budget, std::uint64_t seed);

    /// (4+28) GA: uniform crossover, uniform resampling with probability 1/n.
    RunRecord ga_run(DiscretizedProblem &dp, std::int64_t budget, std::uint64_t seed);
}
