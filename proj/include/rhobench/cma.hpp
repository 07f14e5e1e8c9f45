#pragma once

#include <cstdint>
#include <functional>
#include <utility>

#include "rhobench/discretizer.hpp"
#include "rhobench/run_record.hpp"

namespace rhobench
{
    namespace cma
    {
        /// Default strategy parameters of the (mu_W, lambda)-CMA-ES (Hansen 2016).
        struct Parameters
        {
            int n;
            int lambda;
            int mu;
            Vector weights;
            double mueff;
            double cs;
            double damps;
            double cc;
            double c1;
            double cmu;
            double chi_n;

            static Parameters defaults(int n);
        };

        /// multiplier / (lambda * n), with lambda the default population size.
        double default_margin(int n, int multiplier = 1);

        /// Upper tail of the standard normal, P(N(0,1) > x).
        double normal_upper_tail(double x);

        /// x such that P(N(0,1) > x) = p.
        double normal_upper_quantile(double p);
    }

    struct CmaState
    {
        Vector mean;
        double sigma;
        Matrix C;
        Vector p_sigma;
        Vector p_c;
        Vector weights;
        Matrix B;
        Vector D;
        std::int64_t generation = 0;

        static CmaState initial(const Vector &mean, double sigma, const Vector &weights);

        /// Upper bound on the condition number of C.
        static constexpr double kMaxCondition = 1e14;

        /// Symmetrizes C, lifts its diagonal when the condition number exceeds
        /// kMaxCondition, and refreshes B, D with C = B diag(D)^2 B^T.
        void decompose();
    };

    /// Diagonal margin matrix A (stored as its diagonal) and margin level alpha.
    struct MarginState
    {
        Vector A;
        double alpha;

        static MarginState identity(int n, double alpha);
    };

    /// Lifts, per coordinate, the probability of leaving the plateau of the mean to at
    /// least alpha on each open side by moving the mean and rescaling A.
    std::pair<CmaState, MarginState> margin_correction(const CmaState &state, const MarginState &margin,
                                                       const DiscretizedProblem &dp);

    /// Called once per generation after all updates.
    using CmaObserver = std::function<void(const CmaState &, const MarginState &, const DiscretizedProblem &)>;

    /// Canonical CMA-ES for alpha = 0, CMA-ES with margin otherwise.
    RunRecord cma_run(DiscretizedProblem &dp, std::int64_t budget, std::uint64_t seed, double alpha,
                      const CmaObserver &observer = {});
}
