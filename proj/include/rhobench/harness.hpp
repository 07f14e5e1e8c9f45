#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rhobench/discretizer.hpp"
#include "rhobench/run_record.hpp"

namespace rhobench::harness
{
    enum class Algorithm
    {
        es,
        intea,
        ga,
        cmaes,
        cmaeswm1,
        cmaeswm2,
    };

    std::string_view name(Algorithm algorithm);
    Algorithm parse_algorithm(std::string_view text);

    /// int-EA and GA work on the integer view and the margin variants need plateau edges.
    bool needs_plateau(Algorithm algorithm);

    /// Absent `fixed` means the default rule min(10000 n, 100000).
    struct BudgetRule
    {
        std::optional<std::int64_t> fixed;

        std::int64_t budget_for(int n) const;
    };

    struct ExperimentConfig
    {
        std::vector<int> fids;
        std::vector<int> dims;
        std::vector<int> instances{0, 1, 2, 3, 4};
        std::vector<PlateauSize> rhos{PlateauSize::none()};
        std::vector<Algorithm> algorithms;
        int runs_per_instance = 20;
        BudgetRule budget_rule;
        std::uint64_t base_seed = 1;
        std::filesystem::path output_dir = "results";
        int workers = 0;

        /// Throws ConfigInvalid naming the offending key.
        void validate() const;
    };

    /// YAML (or JSON) text; see README for the keys.
    ExperimentConfig parse_config(const std::string &text);

    /// Reads, validates and applies the RHOBENCH_SEED override.
    ExperimentConfig load_config(const std::filesystem::path &path);

    struct RunKey
    {
        Algorithm algorithm;
        int fid;
        int n;
        int instance;
        PlateauSize rho;
        int run;
    };

    /// Cells of the cross-product in output order. Algorithms that need plateaus skip rho = None.
    std::vector<RunKey> expand(const ExperimentConfig &cfg);

    std::uint64_t run_seed(std::uint64_t base_seed, const RunKey &key);

    /// Runs one cell; any exception is captured as a failed record.
    RunRecord execute(const RunKey &key, std::int64_t budget, std::uint64_t seed);

    std::string trajectory_filename(std::string_view algorithm, int fid, int n, const PlateauSize &rho);

    struct ExperimentSummary
    {
        std::filesystem::path manifest;
        std::vector<std::filesystem::path> trajectory_files;
        std::size_t runs = 0;
        std::size_t failed = 0;
        std::vector<RunRecord> records;
    };

    /// Executes the cross-product on a worker pool and writes the manifest and the
    /// per-group trajectory CSVs. Output bytes depend only on the config.
    ExperimentSummary run_experiment(const ExperimentConfig &cfg);

    /// Writes manifest.csv and trajectories/*.csv for already computed records.
    ExperimentSummary write_results(const std::filesystem::path &dir, std::vector<RunRecord> records);

    /// Reassembles run records from a results directory.
    std::vector<RunRecord> load_results(const std::filesystem::path &dir);

    enum class Metric
    {
        success,
        ert,
        ecdf,
    };

    Metric parse_metric(std::string_view text);

    struct SummaryOptions
    {
        Metric metric = Metric::success;
        /// success: cross-cut budgets (default 5000 and 50000); ert: cap (default the runs' budget);
        /// ecdf: last budget of the grid (default the runs' budget).
        std::vector<std::int64_t> budgets;
        double target = kSolvedDelta;
    };

    /// Writes success.csv, ert.csv or ecdf.csv into dir and returns its path.
    std::filesystem::path summarize(const std::filesystem::path &dir, const SummaryOptions &options);
}
