#include "rhobench/cma.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include <boost/math/special_functions/erf.hpp>

#include "rhobench/csv.hpp"
#include "rhobench/error.hpp"
#include "rhobench/random.hpp"

namespace rhobench
{
    namespace
    {
        constexpr double kMarginEdgeGap = 1e-3;
        constexpr double kMaxSideMass = 0.5 - 1e-6;
    }

    namespace cma
    {
        Parameters Parameters::defaults(int n)
        {
            Parameters p{};
            const double dn = static_cast<double>(n);
            p.n = n;
            p.lambda = 4 + static_cast<int>(std::floor(3.0 * std::log(dn)));
            p.mu = p.lambda / 2;

            p.weights.resize(p.mu);
            for (int i = 0; i < p.mu; ++i)
                p.weights[i] = std::log((p.lambda + 1.0) / 2.0) - std::log(i + 1.0);
            p.weights /= p.weights.sum();
            p.mueff = 1.0 / p.weights.squaredNorm();

            p.cs = (p.mueff + 2.0) / (dn + p.mueff + 5.0);
            p.damps = 1.0 + 2.0 * std::max(0.0, std::sqrt((p.mueff - 1.0) / (dn + 1.0)) - 1.0) + p.cs;
            p.cc = (4.0 + p.mueff / dn) / (dn + 4.0 + 2.0 * p.mueff / dn);
            p.c1 = 2.0 / ((dn + 1.3) * (dn + 1.3) + p.mueff);
            p.cmu = std::min(1.0 - p.c1,
                             2.0 * (p.mueff - 2.0 + 1.0 / p.mueff) / ((dn + 2.0) * (dn + 2.0) + p.mueff));
            p.chi_n = std::sqrt(dn) * (1.0 - 1.0 / (4.0 * dn) + 1.0 / (21.0 * dn * dn));
            return p;
        }

        double default_margin(int n, int multiplier)
        {
            const auto p = Parameters::defaults(n);
            return static_cast<double>(multiplier) / (static_cast<double>(p.lambda) * static_cast<double>(n));
        }

        double normal_upper_tail(double x)
        {
            return 0.5 * std::erfc(x / std::sqrt(2.0));
        }

        double normal_upper_quantile(double p)
        {
            return std::sqrt(2.0) * boost::math::erfc_inv(2.0 * p);
        }
    }

    CmaState CmaState::initial(const Vector &mean, double sigma, const Vector &weights)
    {
        const auto n = mean.size();
        return CmaState{mean,          sigma,          Matrix::Identity(n, n), Vector::Zero(n), Vector::Zero(n),
                        weights,       Matrix::Identity(n, n), Vector::Ones(n), 0};
    }

    void CmaState::decompose()
    {
        C = 0.5 * (C + C.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<Matrix> solver(C);
        Vector eigenvalues = solver.eigenvalues();
        if (!eigenvalues.allFinite() || !(eigenvalues.maxCoeff() > 0.0))
            throw std::runtime_error("covariance matrix lost positive definiteness");
        const double max_eigenvalue = eigenvalues.maxCoeff();
        if (eigenvalues.minCoeff() * kMaxCondition < max_eigenvalue)
        {
            const double lift = max_eigenvalue / kMaxCondition - eigenvalues.minCoeff();
            C.diagonal().array() += lift;
            eigenvalues.array() += lift;
        }
        B = solver.eigenvectors();
        D = eigenvalues.cwiseSqrt();
    }

    MarginState MarginState::identity(int n, double alpha)
    {
        return MarginState{Vector::Ones(n), alpha};
    }

    std::pair<CmaState, MarginState> margin_correction(const CmaState &state, const MarginState &margin,
                                                       const DiscretizedProblem &dp)
    {
        if (margin.alpha == 0.0)
            return {state, margin};
        if (!dp.rho().present())
            throw Error(ErrorCode::MarginRequiresDiscretization, "margin correction needs a plateau size");
        if (!(margin.alpha > 0.0 && margin.alpha < 0.5))
            throw Error(ErrorCode::InvalidMargin, "alpha must lie in (0, 0.5), got " + csv::format_number(margin.alpha));

        CmaState out_state = state;
        MarginState out_margin = margin;
        const double alpha = margin.alpha;
        const double rho = dp.rho().value();
        const double q_alpha = cma::normal_upper_quantile(alpha);
        // Plateaus of positive width inside the domain, as seen by the continuous view.
        const std::int64_t lowest = plateau_index(dp.domain().lb, rho);
        const double ub_cells = dp.domain().ub / rho;
        const std::int64_t highest =
            plateau_index(dp.domain().ub, rho) - (std::abs(ub_cells - std::round(ub_cells)) < 1e-12 ? 1 : 0);
        const double min_gap = kMarginEdgeGap * rho;

        for (int k = 0; k < dp.dimension(); ++k)
        {
            const double c_kk = state.C(k, k);
            const double scale = state.sigma * margin.A[k] * std::sqrt(c_kk);
            if (!(scale >= 1e-300))
                throw Error(ErrorCode::DegenerateMarginal, "marginal deviation of coordinate " + std::to_string(k) +
                                                               " is " + csv::format_number(scale));
            if (lowest >= highest)
                continue;

            double &mean = out_state.mean[k];
            const std::int64_t index = std::clamp(plateau_index(mean, rho), lowest, highest);

            if (index == lowest || index == highest)
            {
                // Only the inner side can be left: move the mean to put mass alpha beyond it.
                const double edge = static_cast<double>(index == lowest ? lowest + 1 : highest) * rho;
                const double inward = index == lowest ? -1.0 : 1.0;
                const double distance = inward * (mean - edge);
                if (distance > 0.0 && cma::normal_upper_tail(distance / scale) >= alpha)
                    continue;
                const double gap = std::max(q_alpha * scale, min_gap);
                mean = edge + inward * gap;
                out_margin.A[k] = margin.A[k] * (inward * (mean - edge)) / (q_alpha * scale);
                continue;
            }

            const double lower = static_cast<double>(index) * rho;
            const double upper = static_cast<double>(index + 1) * rho;
            double p_low = cma::normal_upper_tail((mean - lower) / scale);
            double p_up = cma::normal_upper_tail((upper - mean) / scale);
            if (p_low >= alpha && p_up >= alpha)
                continue;

            const double p_mid = 1.0 - p_low - p_up;
            p_low = std::max(p_low, alpha);
            p_up = std::max(p_up, alpha);
            // Take the excess mass from the three regions in proportion to their share above alpha.
            const double excess = p_low + p_mid + p_up - 1.0;
            const double spread = p_low + p_mid + p_up - 3.0 * alpha;
            if (spread > 0.0)
            {
                const double low = p_low - excess * (p_low - alpha) / spread;
                const double up = p_up - excess * (p_up - alpha) / spread;
                p_low = low;
                p_up = up;
            }
            p_low = std::min(std::max(p_low, alpha), kMaxSideMass);
            p_up = std::min(std::max(p_up, alpha), kMaxSideMass);

            // Solve mean - lower = q_low * s and upper - mean = q_up * s.
            const double q_low = cma::normal_upper_quantile(p_low);
            const double q_up = cma::normal_upper_quantile(p_up);
            const double new_scale = (upper - lower) / (q_low + q_up);
            mean = (lower * q_up + upper * q_low) / (q_low + q_up);
            out_margin.A[k] = new_scale / (state.sigma * std::sqrt(c_kk));
        }
        return {std::move(out_state), std::move(out_margin)};
    }

    RunRecord cma_run(DiscretizedProblem &dp, std::int64_t budget, std::uint64_t seed, double alpha,
                      const CmaObserver &observer)
    {
        const int n = dp.dimension();
        const auto params = cma::Parameters::defaults(n);
        if (budget < params.lambda)
            throw Error(ErrorCode::BudgetTooSmall, "budget " + std::to_string(budget) +
                                                       " is below the population size " +
                                                       std::to_string(params.lambda));
        if (!(alpha >= 0.0 && alpha < 0.5))
            throw Error(ErrorCode::InvalidMargin, "alpha must lie in [0, 0.5), got " + csv::format_number(alpha));
        if (alpha > 0.0 && !dp.rho().present())
            throw Error(ErrorCode::MarginRequiresDiscretization, "CMA-ES with margin needs a plateau size");

        dp.reset(budget);
        Rng rng(seed);
        const Domain &dom = dp.domain();

        Vector mean(n);
        for (int i = 0; i < n; ++i)
            mean[i] = uniform(rng, dom.lb, dom.ub);
        CmaState state = CmaState::initial(mean, 0.3 * dom.width(), params.weights);
        MarginState margin = MarginState::identity(n, alpha);

        const int lambda = params.lambda;
        Matrix ys(n, lambda);
        std::vector<double> fitness(lambda);
        std::vector<int> order(lambda);

        while (!dp.solved() && dp.remaining() >= lambda)
        {
            for (int i = 0; i < lambda; ++i)
            {
                Vector z(n);
                for (int j = 0; j < n; ++j)
                    z[j] = standard_normal(rng);
                ys.col(i) = state.B * state.D.cwiseProduct(z);
                const Vector x = state.mean + state.sigma * margin.A.cwiseProduct(ys.col(i));
                fitness[i] = dp.eval_continuous(x);
            }

            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return fitness[a] < fitness[b]; });

            // Infeasible candidates rank last; only the feasible prefix of the parents is recombined.
            int used = 0;
            while (used < params.mu && std::isfinite(fitness[order[used]]))
                ++used;
            ++state.generation;
            if (used == 0)
                continue;

            Vector w = params.weights.head(used);
            w /= w.sum();
            const double mueff = 1.0 / w.squaredNorm();

            Vector y_w = Vector::Zero(n);
            for (int i = 0; i < used; ++i)
                y_w += w[i] * ys.col(order[i]);

            state.mean += state.sigma * margin.A.cwiseProduct(y_w);

            const Matrix inv_sqrt_c = state.B * state.D.cwiseInverse().asDiagonal() * state.B.transpose();
            state.p_sigma = (1.0 - params.cs) * state.p_sigma +
                            std::sqrt(params.cs * (2.0 - params.cs) * mueff) * (inv_sqrt_c * y_w);

            const double ps_norm = state.p_sigma.norm();
            const double ps_correction =
                std::sqrt(1.0 - std::pow(1.0 - params.cs, 2.0 * static_cast<double>(state.generation)));
            const bool h_sigma = ps_norm / ps_correction < (1.4 + 2.0 / (n + 1.0)) * params.chi_n;

            state.p_c = (1.0 - params.cc) * state.p_c +
                        (h_sigma ? std::sqrt(params.cc * (2.0 - params.cc) * mueff) : 0.0) * y_w;

            Matrix rank_mu = Matrix::Zero(n, n);
            for (int i = 0; i < used; ++i)
            {
                const auto y = ys.col(order[i]);
                rank_mu += w[i] * y * y.transpose();
            }
            const double c1a = params.c1 * (1.0 - (h_sigma ? 0.0 : 1.0) * params.cc * (2.0 - params.cc));
            state.C = (1.0 - c1a - params.cmu) * state.C + params.c1 * state.p_c * state.p_c.transpose() +
                      params.cmu * rank_mu;

            state.sigma *= std::exp((params.cs / params.damps) * (ps_norm / params.chi_n - 1.0));
            state.decompose();

            if (alpha > 0.0)
                std::tie(state, margin) = margin_correction(state, margin, dp);

            if (observer)
                observer(state, margin, dp);
        }
        return make_record(alpha > 0.0 ? "cmaeswm" : "cmaes", dp, seed);
    }
}
