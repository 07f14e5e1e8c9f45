#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rhobench/csv.hpp"
#include "rhobench/discretizer.hpp"
#include "rhobench/error.hpp"
#include "rhobench/harness.hpp"
#include "rhobench/metrics.hpp"

namespace
{
    constexpr int kConfigError = 2;
    constexpr int kIoError = 3;

    int exit_code(const rhobench::Error &e)
    {
        switch (e.code())
        {
        case rhobench::ErrorCode::ConfigSyntax:
        case rhobench::ErrorCode::ConfigInvalid:
        case rhobench::ErrorCode::UnsupportedFunction:
        case rhobench::ErrorCode::InvalidDimension:
        case rhobench::ErrorCode::InvalidPlateauSize:
        case rhobench::ErrorCode::UnsupportedDimension:
            return kConfigError;
        case rhobench::ErrorCode::IoError:
            return kIoError;
        default:
            return 1;
        }
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Plateau-discretized black-box benchmarking"};
    app.require_subcommand(1);

    std::string config_path;
    int workers = 0;
    auto *run = app.add_subcommand("run", "Run every cell of an experiment config");
    run->add_option("--config", config_path, "YAML experiment config")->required();
    run->add_option("--workers", workers, "Worker threads (default: logical cores)")->check(CLI::NonNegativeNumber);

    std::string results_dir;
    std::string metric = "success";
    std::vector<std::int64_t> budgets;
    double target = rhobench::kSolvedDelta;
    auto *summarize = app.add_subcommand("summarize", "Compute success rate, ERT or ECDF from a results directory");
    summarize->add_option("--dir", results_dir, "Results directory")->required();
    summarize->add_option("--metric", metric, "success | ert | ecdf")->check(CLI::IsMember({"success", "ert", "ecdf"}));
    summarize->add_option("--budget", budgets, "Budget cross-cut(s)");
    summarize->add_option("--target", target, "Target delta");

    int fid = 1;
    int dim = 2;
    int instance = 0;
    std::string rho_text = "None";
    int points = 101;
    std::string out_path;
    auto *landscape = app.add_subcommand("landscape", "Sample a 1-D or 2-D discretized landscape to CSV");
    landscape->add_option("--fid", fid, "Function id")->required();
    landscape->add_option("--dim", dim, "Dimension (1 or 2)")->required()->check(CLI::IsMember({1, 2}));
    landscape->add_option("--rho", rho_text, "Plateau size or None")->required();
    landscape->add_option("--points", points, "Grid points per axis");
    landscape->add_option("--instance", instance, "Instance id");
    landscape->add_option("--out", out_path, "Output CSV")->required();

    auto *targets = app.add_subcommand("targets", "Print the default 51 targets");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }

    try
    {
        if (*run)
        {
            auto cfg = rhobench::harness::load_config(config_path);
            if (workers > 0)
                cfg.workers = workers;
            const auto summary = rhobench::harness::run_experiment(cfg);
            std::cout << "runs: " << summary.runs << ", failed: " << summary.failed << '\n'
                      << "manifest: " << summary.manifest.string() << '\n';
            for (const auto &p : summary.trajectory_files)
                std::cout << "trajectories: " << p.string() << '\n';
        }
        else if (*summarize)
        {
            rhobench::harness::SummaryOptions options;
            options.metric = rhobench::harness::parse_metric(metric);
            options.budgets = budgets;
            options.target = target;
            std::cout << rhobench::harness::summarize(results_dir, options).string() << '\n';
        }
        else if (*landscape)
        {
            const rhobench::PlateauSize rho(rhobench::csv::parse_rho(rho_text));
            const rhobench::DiscretizedProblem dp(rhobench::make_instance(fid, dim, instance), rho);
            const auto grid = rhobench::landscape_grid(dp, points);
            std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
            if (!out)
                throw rhobench::Error(rhobench::ErrorCode::IoError, "cannot write " + out_path);
            grid.write_csv(out);
            if (!out)
                throw rhobench::Error(rhobench::ErrorCode::IoError, "failed writing " + out_path);
        }
        else if (*targets)
        {
            for (const double t : rhobench::metrics::default_targets().values())
                std::cout << rhobench::csv::format_number(t) << '\n';
        }
    }
    catch (const rhobench::Error &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e);
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
