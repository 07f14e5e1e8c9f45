#include "rhobench/problems.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rhobench/error.hpp"
#include "rhobench/random.hpp"

namespace rhobench
{
    namespace
    {
        double conditioning(int i, int n, double base_exponent)
        {
            if (n == 1)
                return 1.0;
            return std::pow(10.0, base_exponent * static_cast<double>(i) / static_cast<double>(n - 1));
        }

        double rosenbrock_scale(int n)
        {
            return std::max(1.0, std::sqrt(static_cast<double>(n)) / 8.0);
        }

        double rosenbrock(const Vector &z)
        {
            double f = 0.0;
            for (Eigen::Index i = 0; i + 1 < z.size(); ++i)
            {
                const double a = z[i] * z[i] - z[i + 1];
                const double b = z[i] - 1.0;
                f += 100.0 * a * a + b * b;
            }
            return f;
        }

        // Classical Gram-Schmidt over the columns of a standard normal matrix.
        Matrix random_rotation(Rng &rng, int n)
        {
            Matrix m(n, n);
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i)
                    m(i, j) = standard_normal(rng);

            for (int j = 0; j < n; ++j)
            {
                for (int k = 0; k < j; ++k)
                    m.col(j) -= m.col(k).dot(m.col(j)) * m.col(k);
                m.col(j).normalize();
            }
            return m;
        }
    }

    bool Domain::contains(const Vector &x) const
    {
        return (x.array() >= lb).all() && (x.array() <= ub).all();
    }

    bool is_supported_function(int fid)
    {
        return fid == 1 || fid == 2 || fid == 5 || fid == 8 || fid == 9;
    }

    ProblemInstance make_instance(int fid, int n, int instance_id)
    {
        if (!is_supported_function(fid))
            throw Error(ErrorCode::UnsupportedFunction, "function id " + std::to_string(fid));
        if (n < 1 || (n < 2 && fid != 1))
            throw Error(ErrorCode::InvalidDimension, "dimension " + std::to_string(n) + " for f" + std::to_string(fid));
        if (instance_id < 0)
            throw Error(ErrorCode::InvalidDimension, "negative instance id " + std::to_string(instance_id));

        Rng rng(seeding::hash(fid, n, instance_id));

        ProblemInstance inst{fid, Domain{n}, instance_id, Vector(n), 0.0, std::nullopt};
        for (int i = 0; i < n; ++i)
            inst.x_opt[i] = uniform(rng, -4.0, 4.0);
        inst.f_opt = uniform(rng, -100.0, 100.0);

        if (fid == 5)
        {
            for (int i = 0; i < n; ++i)
                inst.x_opt[i] = inst.x_opt[i] < 0.0 ? -inst.domain.ub : inst.domain.ub;
        }
        if (fid == 9)
            inst.rotation = random_rotation(rng, n);
        return inst;
    }

    double evaluate_raw(const ProblemInstance &inst, const Vector &x)
    {
        const int n = inst.dimension();
        if (x.size() != n)
            throw Error(ErrorCode::DimensionMismatch,
                        "expected " + std::to_string(n) + " coordinates, got " + std::to_string(x.size()));
        if (!x.allFinite())
            throw Error(ErrorCode::NonFiniteInput, "input contains a non-finite coordinate");

        const Vector d = x - inst.x_opt;
        double f = 0.0;
        switch (inst.fid)
        {
        case 1:
            f = d.squaredNorm();
            break;
        case 2:
            for (int i = 0; i < n; ++i)
                f += conditioning(i, n, 6.0) * d[i] * d[i];
            break;
        case 5:
            for (int i = 0; i < n; ++i)
            {
                const double xo = inst.x_opt[i];
                const double s = std::copysign(conditioning(i, n, 1.0), xo);
                const double z = x[i] * xo < inst.domain.ub * inst.domain.ub ? x[i] : xo;
                f += 5.0 * std::abs(s) - s * z;
            }
            break;
        case 8:
            f = rosenbrock((rosenbrock_scale(n) * d).array() + 1.0);
            break;
        case 9:
            f = rosenbrock((rosenbrock_scale(n) * (*inst.rotation * d)).array() + 1.0);
            break;
        default:
            throw Error(ErrorCode::UnsupportedFunction, "function id " + std::to_string(inst.fid));
        }
        return f + inst.f_opt;
    }

    std::pair<Vector, double> optimum(const ProblemInstance &inst)
    {
        return {inst.x_opt, inst.f_opt};
    }
}
