#include "rhobench/discretizer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rhobench/csv.hpp"
#include "rhobench/error.hpp"

namespace rhobench
{
    namespace
    {
        constexpr double kEdgeTolerance = 1e-12;
        constexpr double kInf = std::numeric_limits<double>::infinity();

        void check_rho(double rho)
        {
            if (!(rho > 0.0) || !std::isfinite(rho))
                throw Error(ErrorCode::InvalidPlateauSize, "plateau size must be positive and finite, got " +
                                                               csv::format_number(rho));
        }

        std::int64_t ceil_index(double x, double rho)
        {
            const double q = x / rho;
            const double r = std::round(q);
            if (std::abs(q - r) < kEdgeTolerance)
                return static_cast<std::int64_t>(r);
            return static_cast<std::int64_t>(std::ceil(q));
        }
    }

    PlateauSize::PlateauSize(double rho) : value_(rho)
    {
        check_rho(rho);
    }

    PlateauSize::PlateauSize(std::optional<double> rho) : value_(rho)
    {
        if (rho)
            check_rho(*rho);
    }

    double PlateauSize::value() const
    {
        if (!value_)
            throw Error(ErrorCode::NotDiscretized, "plateau size is None");
        return *value_;
    }

    std::int64_t plateau_index(double x, double rho)
    {
        const double q = x / rho;
        const double r = std::round(q);
        if (std::abs(q - r) < kEdgeTolerance)
            return static_cast<std::int64_t>(r);
        return static_cast<std::int64_t>(std::floor(q));
    }

    Vector snap_to_plateau(const Vector &x, double rho)
    {
        check_rho(rho);
        Vector out(x.size());
        for (Eigen::Index i = 0; i < x.size(); ++i)
            out[i] = static_cast<double>(plateau_index(x[i], rho)) * rho;
        return out;
    }

    DiscretizedProblem::DiscretizedProblem(ProblemInstance inst, PlateauSize rho)
        : inst_(std::move(inst)), rho_(rho), translation_(Vector::Zero(inst_.domain.n)),
          optimum_index_(IntVector::Zero(inst_.domain.n))
    {
        if (!rho_.present())
            return;

        const double r = rho_.value();
        if (r > inst_.domain.width())
            throw Error(ErrorCode::InvalidPlateauSize,
                        "plateau size " + csv::format_number(r) + " exceeds the domain width");

        for (int i = 0; i < dimension(); ++i)
        {
            optimum_index_[i] = plateau_index(inst_.x_opt[i], r);
            const double t = inst_.x_opt[i] - static_cast<double>(optimum_index_[i]) * r;
            translation_[i] = std::clamp(t, 0.0, std::nextafter(r, 0.0));
        }
    }

    void DiscretizedProblem::require_discretized(const char *what) const
    {
        if (!rho_.present())
            throw Error(ErrorCode::NotDiscretized, std::string(what) + " needs a plateau size");
    }

    void DiscretizedProblem::check_size(Eigen::Index size) const
    {
        if (size != dimension())
            throw Error(ErrorCode::DimensionMismatch,
                        "expected " + std::to_string(dimension()) + " coordinates, got " + std::to_string(size));
    }

    Vector DiscretizedProblem::shift_and_clamp(const Vector &x_rho) const
    {
        check_size(x_rho.size());
        if (!rho_.present())
            return x_rho.cwiseMax(domain().lb).cwiseMin(domain().ub);

        const double r = rho_.value();
        IntVector z(dimension());
        for (int i = 0; i < dimension(); ++i)
            z[i] = std::llround(x_rho[i] / r);

        Vector out(dimension());
        for (int i = 0; i < dimension(); ++i)
        {
            // x* + (z - z*) rho equals z rho + t, and reproduces x* bitwise on its own plateau.
            const double shifted = inst_.x_opt[i] + static_cast<double>(z[i] - optimum_index_[i]) * r;
            out[i] = std::clamp(shifted, domain().lb, domain().ub);
        }
        return out;
    }

    std::pair<IntVector, IntVector> DiscretizedProblem::integer_bounds() const
    {
        require_discretized("integer_bounds");
        const double r = rho_.value();
        return {IntVector::Constant(dimension(), ceil_index(domain().lb, r)),
                IntVector::Constant(dimension(), plateau_index(domain().ub, r))};
    }

    IntVector DiscretizedProblem::encode(const Vector &x) const
    {
        require_discretized("encode");
        check_size(x.size());
        const double r = rho_.value();
        IntVector z(dimension());
        for (int i = 0; i < dimension(); ++i)
            z[i] = plateau_index(x[i], r);
        return z;
    }

    double DiscretizedProblem::image_value(const IntVector &z) const
    {
        const double r = rho_.value();
        Vector image(dimension());
        for (int i = 0; i < dimension(); ++i)
        {
            const double shifted = inst_.x_opt[i] + static_cast<double>(z[i] - optimum_index_[i]) * r;
            image[i] = std::clamp(shifted, domain().lb, domain().ub);
        }
        return evaluate_raw(inst_, image);
    }

    double DiscretizedProblem::value_continuous(const Vector &x) const
    {
        check_size(x.size());
        if (!domain().contains(x))
            return kInf;
        if (!rho_.present())
            return evaluate_raw(inst_, x);
        return image_value(encode(x));
    }

    double DiscretizedProblem::value_integer(const IntVector &z) const
    {
        require_discretized("eval_integer");
        check_size(z.size());
        const auto [zlb, zub] = integer_bounds();
        if ((z.array() < zlb.array()).any() || (z.array() > zub.array()).any())
            return kInf;
        return image_value(z);
    }

    double DiscretizedProblem::record(double f)
    {
        ++eval_count_;
        const double delta = f - inst_.f_opt;
        if (delta < best_delta_)
        {
            best_delta_ = delta;
            trajectory_.push_back({eval_count_, delta});
        }
        return f;
    }

    double DiscretizedProblem::eval_continuous(const Vector &x)
    {
        check_size(x.size());
        if (eval_count_ >= budget_)
            throw Error(ErrorCode::BudgetExhausted, "budget of " + std::to_string(budget_) + " evaluations used");
        return record(value_continuous(x));
    }

    double DiscretizedProblem::eval_integer(const IntVector &z)
    {
        require_discretized("eval_integer");
        check_size(z.size());
        if (eval_count_ >= budget_)
            throw Error(ErrorCode::BudgetExhausted, "budget of " + std::to_string(budget_) + " evaluations used");
        return record(value_integer(z));
    }

    void DiscretizedProblem::reset(std::int64_t budget)
    {
        budget_ = budget;
        eval_count_ = 0;
        best_delta_ = kInf;
        trajectory_.clear();
    }

    void LandscapeGrid::write_csv(std::ostream &out) const
    {
        out << (dimension == 1 ? "x1,f\n" : "x1,x2,f\n");
        for (std::size_t i = 0; i < points.size(); ++i)
        {
            for (Eigen::Index j = 0; j < points[i].size(); ++j)
                out << csv::format_number(points[i][j]) << ',';
            out << csv::format_number(values[i]) << '\n';
        }
    }

    LandscapeGrid landscape_grid(const DiscretizedProblem &dp, int points_per_axis)
    {
        const int n = dp.dimension();
        if (n > 2)
            throw Error(ErrorCode::UnsupportedDimension, "landscape grids need n in {1, 2}, got " + std::to_string(n));
        if (points_per_axis < 2)
            throw Error(ErrorCode::UnsupportedDimension, "need at least 2 points per axis");

        const Domain &dom = dp.domain();
        const auto axis = [&](int k)
        {
            if (k == points_per_axis - 1)
                return dom.ub;
            return dom.lb + dom.width() * static_cast<double>(k) / static_cast<double>(points_per_axis - 1);
        };

        LandscapeGrid grid{n, points_per_axis, {}, {}};
        const int total = n == 1 ? points_per_axis : points_per_axis * points_per_axis;
        grid.points.reserve(total);
        grid.values.reserve(total);
        for (int a = 0; a < points_per_axis; ++a)
        {
            if (n == 1)
            {
                grid.points.push_back(Vector::Constant(1, axis(a)));
                grid.values.push_back(dp.value_continuous(grid.points.back()));
                continue;
            }
            for (int b = 0; b < points_per_axis; ++b)
            {
                Vector x(2);
                x << axis(a), axis(b);
                grid.points.push_back(x);
                grid.values.push_back(dp.value_continuous(x));
            }
        }
        return grid;
    }
}
