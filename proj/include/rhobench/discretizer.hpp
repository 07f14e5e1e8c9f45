#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "rhobench/problems.hpp"

namespace rhobench
{
    /// Target below which a run counts as solved.
    inline constexpr double kSolvedDelta = 1e-8;

    /// Plateau size; absent means the original continuous problem.
    class PlateauSize
    {
    public:
        PlateauSize() = default;
        explicit PlateauSize(double rho);
        PlateauSize(std::optional<double> rho);

        static PlateauSize none() { return {}; }

        bool present() const { return value_.has_value(); }
        double value() const;
        const std::optional<double> &optional() const { return value_; }

        friend bool operator==(const PlateauSize &, const PlateauSize &) = default;

    private:
        std::optional<double> value_;
    };

    /// Index of the plateau containing x, i.e. floor(x / rho), treating values
    /// within 1e-12 of a plateau edge (in units of rho) as lying on the edge.
    std::int64_t plateau_index(double x, double rho);

    /// Left edge of the containing plateau, per coordinate (floored modulo).
    Vector snap_to_plateau(const Vector &x, double rho);

    struct Improvement
    {
        std::int64_t eval;
        double delta;

        friend bool operator==(const Improvement &, const Improvement &) = default;
    };

    using Trajectory = std::vector<Improvement>;

    /// A problem instance seen through a plateau discretization.
    ///
    /// The wrapper owns the evaluation counter for one run, so every algorithm is
    /// metered the same way: each proposal costs one evaluation, including
    /// infeasible ones, which evaluate to +inf. Strict improvements of
    /// delta = f - f_opt are appended to the trajectory.
    class DiscretizedProblem
    {
    public:
        DiscretizedProblem(ProblemInstance inst, PlateauSize rho);

        const ProblemInstance &instance() const { return inst_; }
        const Domain &domain() const { return inst_.domain; }
        int dimension() const { return inst_.domain.n; }
        const PlateauSize &rho() const { return rho_; }

        /// Per-coordinate translation x* mod rho; all zero without discretization.
        const Vector &translation() const { return translation_; }

        /// Plateau indices of the optimum.
        const IntVector &optimum_indices() const { return optimum_index_; }

        /// Snapped point moved onto the optimum-aligned grid, then clamped to the bounds.
        Vector shift_and_clamp(const Vector &x_rho) const;

        /// Smallest and largest integer whose plateau edge lies in the domain.
        std::pair<IntVector, IntVector> integer_bounds() const;

        /// Plateau indices of a continuous point (requires a plateau size).
        IntVector encode(const Vector &x) const;

        /// f_rho(x) without touching the counters; +inf outside the domain.
        double value_continuous(const Vector &x) const;
        /// f_rho(z) without touching the counters; +inf outside the integer bounds.
        double value_integer(const IntVector &z) const;

        double eval_continuous(const Vector &x);
        double eval_integer(const IntVector &z);

        /// Clears counters and trajectory and sets the evaluation budget of a new run.
        void reset(std::int64_t budget = std::numeric_limits<std::int64_t>::max());

        std::int64_t budget() const { return budget_; }
        std::int64_t eval_count() const { return eval_count_; }
        std::int64_t remaining() const { return budget_ - eval_count_; }
        double best_delta() const { return best_delta_; }
        const Trajectory &trajectory() const { return trajectory_; }
        bool solved() const { return best_delta_ < kSolvedDelta; }

    private:
        void require_discretized(const char *what) const;
        void check_size(Eigen::Index size) const;
        double record(double f);
        double image_value(const IntVector &z) const;

        ProblemInstance inst_;
        PlateauSize rho_;
        Vector translation_;
        IntVector optimum_index_;

        std::int64_t budget_ = std::numeric_limits<std::int64_t>::max();
        std::int64_t eval_count_ = 0;
        double best_delta_ = std::numeric_limits<double>::infinity();
        Trajectory trajectory_;
    };

    /// Uniform samples of f_rho over the domain of a 1-D or 2-D problem.
    struct LandscapeGrid
    {
        int dimension;
        int points_per_axis;
        std::vector<Vector> points;
        std::vector<double> values;

        /// Header "x1[,x2],f"; for 2-D, x1 varies slowest.
        void write_csv(std::ostream &out) const;
    };

    LandscapeGrid landscape_grid(const DiscretizedProblem &dp, int points_per_axis);
}
