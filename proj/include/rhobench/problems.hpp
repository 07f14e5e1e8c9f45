#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include <Eigen/Dense>

namespace rhobench
{
    using Vector = Eigen::VectorXd;
    using Matrix = Eigen::MatrixXd;
    using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

    /// Hypercube [lb, ub]^n.
    struct Domain
    {
        int n;
        double lb = -5.0;
        double ub = 5.0;

        double width() const { return ub - lb; }
        bool contains(const Vector &x) const;
    };

    /// One seeded instance of a unimodal test function.
    ///
    /// Supported functions: 1 Sphere, 2 Ellipsoid, 5 Linear Slope, 8 Rosenbrock,
    /// 9 rotated Rosenbrock. The instance is immutable once built and may be
    /// shared between concurrent runs.
    struct ProblemInstance
    {
        int fid;
        Domain domain;
        int instance_id;
        Vector x_opt;
        double f_opt;
        std::optional<Matrix> rotation;

        int dimension() const { return domain.n; }
    };

    bool is_supported_function(int fid);

    /// Deterministic in (fid, n, instance_id).
    /// n = 1 is accepted for the sphere only, so 1-D landscapes can be drawn.
    ProblemInstance make_instance(int fid, int n, int instance_id);

    /// Raw objective value including the f_opt offset. Pure; no bound check.
    double evaluate_raw(const ProblemInstance &inst, const Vector &x);

    std::pair<Vector, double> optimum(const ProblemInstance &inst);
}
