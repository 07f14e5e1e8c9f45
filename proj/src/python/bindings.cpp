#include <optional>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "rhobench/classic.hpp"
#include "rhobench/cma.hpp"
#include "rhobench/error.hpp"
#include "rhobench/harness.hpp"
#include "rhobench/metrics.hpp"

namespace py = pybind11;
using namespace rhobench;

namespace
{
    std::vector<std::pair<std::int64_t, double>> trajectory_pairs(const Trajectory &t)
    {
        std::vector<std::pair<std::int64_t, double>> out;
        out.reserve(t.size());
        for (const auto &e : t)
            out.emplace_back(e.eval, e.delta);
        return out;
    }

    py::dict summary_dict(const harness::ExperimentSummary &s)
    {
        py::dict d;
        d["manifest"] = s.manifest;
        d["trajectory_files"] = s.trajectory_files;
        d["runs"] = s.runs;
        d["failed"] = s.failed;
        d["records"] = s.records;
        return d;
    }
}

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Plateau-discretized benchmark problems, optimizers and metrics";

    static py::handle error_type = PyErr_NewException("rhobench._core.RhobenchError", PyExc_RuntimeError, nullptr);
    m.attr("RhobenchError") = error_type;
    py::register_exception_translator(
        [](std::exception_ptr p)
        {
            try
            {
                if (p)
                    std::rethrow_exception(p);
            }
            catch (const Error &e)
            {
                py::object instance = py::reinterpret_borrow<py::object>(error_type)(e.what());
                instance.attr("code") = std::string(to_string(e.code()));
                PyErr_SetObject(error_type.ptr(), instance.ptr());
            }
        });

    m.attr("SOLVED_DELTA") = kSolvedDelta;

    py::class_<ProblemInstance>(m, "ProblemInstance")
        .def_readonly("fid", &ProblemInstance::fid)
        .def_property_readonly("n", &ProblemInstance::dimension)
        .def_property_readonly("lb", [](const ProblemInstance &p) { return p.domain.lb; })
        .def_property_readonly("ub", [](const ProblemInstance &p) { return p.domain.ub; })
        .def_readonly("instance_id", &ProblemInstance::instance_id)
        .def_readonly("x_opt", &ProblemInstance::x_opt)
        .def_readonly("f_opt", &ProblemInstance::f_opt)
        .def_readonly("rotation", &ProblemInstance::rotation)
        .def("__call__", [](const ProblemInstance &p, const Vector &x) { return evaluate_raw(p, x); });

    m.def("make_instance", &make_instance, py::arg("fid"), py::arg("n"), py::arg("instance_id") = 0);
    m.def("evaluate_raw", &evaluate_raw, py::arg("instance"), py::arg("x"));
    m.def("optimum", &optimum, py::arg("instance"));
    m.def("snap_to_plateau", &snap_to_plateau, py::arg("x"), py::arg("rho"));

    py::class_<DiscretizedProblem>(m, "DiscretizedProblem")
        .def(py::init([](const ProblemInstance &inst, std::optional<double> rho)
                      { return DiscretizedProblem(inst, PlateauSize(rho)); }),
             py::arg("instance"), py::arg("rho") = std::nullopt)
        .def_property_readonly("instance", &DiscretizedProblem::instance)
        .def_property_readonly("n", &DiscretizedProblem::dimension)
        .def_property_readonly("rho", [](const DiscretizedProblem &dp) { return dp.rho().optional(); })
        .def_property_readonly("translation", &DiscretizedProblem::translation)
        .def_property_readonly("optimum_indices", &DiscretizedProblem::optimum_indices)
        .def("shift_and_clamp", &DiscretizedProblem::shift_and_clamp, py::arg("x_rho"))
        .def("integer_bounds", &DiscretizedProblem::integer_bounds)
        .def("encode", &DiscretizedProblem::encode, py::arg("x"))
        .def("value_continuous", &DiscretizedProblem::value_continuous, py::arg("x"))
        .def("value_integer", &DiscretizedProblem::value_integer, py::arg("z"))
        .def("eval_continuous", &DiscretizedProblem::eval_continuous, py::arg("x"))
        .def("eval_integer", &DiscretizedProblem::eval_integer, py::arg("z"))
        .def("reset", &DiscretizedProblem::reset, py::arg("budget") = std::numeric_limits<std::int64_t>::max())
        .def_property_readonly("eval_count", &DiscretizedProblem::eval_count)
        .def_property_readonly("best_delta", &DiscretizedProblem::best_delta)
        .def_property_readonly("trajectory",
                               [](const DiscretizedProblem &dp) { return trajectory_pairs(dp.trajectory()); });

    m.def(
        "landscape",
        [](const DiscretizedProblem &dp, int points)
        {
            const auto grid = landscape_grid(dp, points);
            Matrix xs(static_cast<Eigen::Index>(grid.points.size()), grid.dimension);
            for (std::size_t i = 0; i < grid.points.size(); ++i)
                xs.row(static_cast<Eigen::Index>(i)) = grid.points[i].transpose();
            return std::make_pair(xs, grid.values);
        },
        py::arg("problem"), py::arg("points_per_axis"), "Grid points (x1 slowest) and values of a 1-D or 2-D problem.");

    py::class_<RunRecord>(m, "RunRecord")
        .def_readonly("algorithm", &RunRecord::algorithm)
        .def_readonly("fid", &RunRecord::fid)
        .def_readonly("n", &RunRecord::n)
        .def_readonly("instance_id", &RunRecord::instance_id)
        .def_readonly("run", &RunRecord::run)
        .def_property_readonly("rho", [](const RunRecord &r) { return r.rho.optional(); })
        .def_readonly("seed", &RunRecord::seed)
        .def_readonly("budget", &RunRecord::budget)
        .def_readonly("evaluations", &RunRecord::evaluations)
        .def_property_readonly("trajectory", [](const RunRecord &r) { return trajectory_pairs(r.trajectory); })
        .def_readonly("final_delta", &RunRecord::final_delta)
        .def_readonly("hit_1e8_at", &RunRecord::hit_1e8_at)
        .def_readonly("failed", &RunRecord::failed)
        .def_readonly("message", &RunRecord::message)
        .def("__repr__",
             [](const RunRecord &r)
             {
                 return "<RunRecord " + r.algorithm + " f" + std::to_string(r.fid) + " n=" + std::to_string(r.n) +
                        " evals=" + std::to_string(r.evaluations) + ">";
             });

    m.def("es_run", &es_run, py::arg("problem"), py::arg("budget"), py::arg("seed"));
    m.def("intea_run", &intea_run, py::arg("problem"), py::arg("budget"), py::arg("seed"));
    m.def("ga_run", &ga_run, py::arg("problem"), py::arg("budget"), py::arg("seed"));
    m.def(
        "cma_run",
        [](DiscretizedProblem &dp, std::int64_t budget, std::uint64_t seed, double alpha)
        { return cma_run(dp, budget, seed, alpha); },
        py::arg("problem"), py::arg("budget"), py::arg("seed"), py::arg("alpha") = 0.0);
    m.def("default_margin", &cma::default_margin, py::arg("n"), py::arg("multiplier") = 1);
    m.def(
        "max_entropy_sample",
        [](double deviation, std::uint64_t seed, int count)
        {
            Rng rng(seed);
            std::vector<std::int64_t> out(static_cast<std::size_t>(std::max(count, 0)));
            for (auto &v : out)
                v = max_entropy_sample(deviation, rng);
            return out;
        },
        py::arg("deviation"), py::arg("seed"), py::arg("count") = 1);

    m.def("default_targets", [] { return metrics::default_targets().values(); });
    m.def("hitting_time",
          [](const RunRecord &r, double phi) -> std::optional<std::int64_t>
          {
              const auto t = metrics::hitting_time(r, phi);
              if (t == metrics::kNever)
                  return std::nullopt;
              return t;
          },
          py::arg("record"), py::arg("phi"));
    m.def(
        "success_rate", [](const std::vector<RunRecord> &rs, double phi, std::int64_t budget)
        { return metrics::success_rate(rs, phi, budget); },
        py::arg("records"), py::arg("phi"), py::arg("budget"));
    m.def(
        "ert", [](const std::vector<RunRecord> &rs, double phi, std::int64_t budget)
        { return metrics::ert(rs, phi, budget); },
        py::arg("records"), py::arg("phi"), py::arg("budget"));
    m.def(
        "ecdf",
        [](const std::vector<RunRecord> &rs, const std::vector<std::int64_t> &budgets,
           std::optional<std::vector<double>> targets)
        {
            const auto set = targets ? metrics::TargetSet(*targets) : metrics::default_targets();
            std::vector<std::pair<std::int64_t, double>> out;
            for (const auto &p : metrics::ecdf(rs, set, budgets))
                out.emplace_back(p.budget, p.fraction);
            return out;
        },
        py::arg("records"), py::arg("budgets"), py::arg("targets") = std::nullopt);
    m.def("log_budgets", &metrics::log_budgets, py::arg("start"), py::arg("stop"), py::arg("count") = 100);

    py::class_<harness::ExperimentConfig>(m, "ExperimentConfig")
        .def_readwrite("fids", &harness::ExperimentConfig::fids)
        .def_readwrite("dims", &harness::ExperimentConfig::dims)
        .def_readwrite("instances", &harness::ExperimentConfig::instances)
        .def_property_readonly("rhos",
                               [](const harness::ExperimentConfig &c)
                               {
                                   std::vector<std::optional<double>> out;
                                   for (const auto &r : c.rhos)
                                       out.push_back(r.optional());
                                   return out;
                               })
        .def_property_readonly("algorithms",
                               [](const harness::ExperimentConfig &c)
                               {
                                   std::vector<std::string> out;
                                   for (const auto a : c.algorithms)
                                       out.emplace_back(harness::name(a));
                                   return out;
                               })
        .def_readwrite("runs_per_instance", &harness::ExperimentConfig::runs_per_instance)
        .def_readwrite("base_seed", &harness::ExperimentConfig::base_seed)
        .def_readwrite("output_dir", &harness::ExperimentConfig::output_dir)
        .def_readwrite("workers", &harness::ExperimentConfig::workers)
        .def("budget_for", [](const harness::ExperimentConfig &c, int n) { return c.budget_rule.budget_for(n); })
        .def("cells", [](const harness::ExperimentConfig &c) { return harness::expand(c).size(); });

    m.def("parse_config", &harness::parse_config, py::arg("text"));
    m.def("load_config", &harness::load_config, py::arg("path"));
    m.def(
        "run_experiment",
        [](const harness::ExperimentConfig &cfg)
        {
            harness::ExperimentSummary s;
            {
                py::gil_scoped_release release;
                s = harness::run_experiment(cfg);
            }
            return summary_dict(s);
        },
        py::arg("config"));
    m.def("load_results", &harness::load_results, py::arg("results_dir"));
    m.def(
        "summarize",
        [](const std::filesystem::path &dir, const std::string &metric, const std::vector<std::int64_t> &budgets,
           double target)
        {
            harness::SummaryOptions options;
            options.metric = harness::parse_metric(metric);
            options.budgets = budgets;
            options.target = target;
            return harness::summarize(dir, options);
        },
        py::arg("results_dir"), py::arg("metric") = "success", py::arg("budgets") = std::vector<std::int64_t>{},
        py::arg("target") = kSolvedDelta);
}
