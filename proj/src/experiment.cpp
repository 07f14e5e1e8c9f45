#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <thread>
#include <tuple>

#include "rhobench/classic.hpp"
#include "rhobench/cma.hpp"
#include "rhobench/csv.hpp"
#include "rhobench/error.hpp"
#include "rhobench/harness.hpp"
#include "rhobench/metrics.hpp"
#include "rhobench/random.hpp"

namespace fs = std::filesystem;

namespace rhobench::harness
{
    namespace
    {
        constexpr std::string_view kManifestHeader =
            "algorithm,fid,dim,instance,rho,run,seed,budget,evals,final_delta,hit_1e8_at,status,message";
        constexpr std::string_view kTrajectoryHeader = "algorithm,fid,dim,instance,rho,run,seed,eval,delta";

        // Bit pattern of NaN stands in for "None" in seeds.
        constexpr std::uint64_t kNoneRhoKey = 0x7ff8dead0000beefULL;

        std::uint64_t rho_key(const PlateauSize &rho)
        {
            return rho.present() ? seeding::key(rho.value()) : kNoneRhoKey;
        }

        std::string sanitize(std::string text)
        {
            std::replace_if(text.begin(), text.end(), [](char c) { return c == ',' || c == '\n' || c == '\r'; }, ' ');
            return text;
        }

        std::ofstream open_for_write(const fs::path &path)
        {
            std::ofstream out(path, std::ios::binary | std::ios::trunc);
            if (!out)
                throw Error(ErrorCode::IoError, "cannot write " + path.string());
            return out;
        }

        using GroupKey = std::tuple<std::string, int, int, std::optional<double>>;

        GroupKey group_of(const RunRecord &r)
        {
            return {r.algorithm, r.fid, r.n, r.rho.optional()};
        }

        using RunId = std::tuple<std::string, int, int, int, std::optional<double>, int>;

        /// Groups records by (algorithm, fid, n, rho) keeping first-appearance order.
        std::vector<std::pair<GroupKey, std::vector<std::size_t>>> group_records(const std::vector<RunRecord> &records)
        {
            std::vector<std::pair<GroupKey, std::vector<std::size_t>>> groups;
            std::map<GroupKey, std::size_t> index;
            for (std::size_t i = 0; i < records.size(); ++i)
            {
                const auto key = group_of(records[i]);
                auto [it, inserted] = index.try_emplace(key, groups.size());
                if (inserted)
                    groups.push_back({key, {}});
                groups[it->second].second.push_back(i);
            }
            return groups;
        }

        std::string group_prefix(const GroupKey &key)
        {
            const auto &[alg, fid, n, rho] = key;
            return alg + "," + std::to_string(fid) + "," + std::to_string(n) + "," + csv::format_rho(rho);
        }
    }

    std::vector<RunKey> expand(const ExperimentConfig &cfg)
    {
        std::vector<RunKey> keys;
        for (const auto a : cfg.algorithms)
            for (const int fid : cfg.fids)
                for (const int n : cfg.dims)
                    for (const auto &rho : cfg.rhos)
                    {
                        if (needs_plateau(a) && !rho.present())
                            continue;
                        for (const int inst : cfg.instances)
                            for (int run = 0; run < cfg.runs_per_instance; ++run)
                                keys.push_back({a, fid, n, inst, rho, run});
                    }
        return keys;
    }

    std::uint64_t run_seed(std::uint64_t base_seed, const RunKey &key)
    {
        return seeding::hash(base_seed, name(key.algorithm), key.fid, key.n, key.instance, rho_key(key.rho), key.run);
    }

    RunRecord execute(const RunKey &key, std::int64_t budget, std::uint64_t seed)
    {
        RunRecord record;
        try
        {
            DiscretizedProblem dp(make_instance(key.fid, key.n, key.instance), key.rho);
            switch (key.algorithm)
            {
            case Algorithm::es: record = es_run(dp, budget, seed); break;
            case Algorithm::intea: record = intea_run(dp, budget, seed); break;
            case Algorithm::ga: record = ga_run(dp, budget, seed); break;
            case Algorithm::cmaes: record = cma_run(dp, budget, seed, 0.0); break;
            case Algorithm::cmaeswm1: record = cma_run(dp, budget, seed, cma::default_margin(key.n, 1)); break;
            case Algorithm::cmaeswm2: record = cma_run(dp, budget, seed, cma::default_margin(key.n, 2)); break;
            }
        }
        catch (const std::exception &e)
        {
            record = RunRecord{};
            record.failed = true;
            record.message = e.what();
        }
        record.algorithm = std::string(name(key.algorithm));
        record.fid = key.fid;
        record.n = key.n;
        record.instance_id = key.instance;
        record.rho = key.rho;
        record.run = key.run;
        record.seed = seed;
        record.budget = budget;
        return record;
    }

    std::string trajectory_filename(std::string_view algorithm, int fid, int n, const PlateauSize &rho)
    {
        return std::string(algorithm) + "_f" + std::to_string(fid) + "_d" + std::to_string(n) + "_rho" +
               csv::format_rho(rho.optional()) + ".csv";
    }

    ExperimentSummary run_experiment(const ExperimentConfig &cfg)
    {
        cfg.validate();
        const auto keys = expand(cfg);
        std::vector<RunRecord> records(keys.size());

        const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
        const auto workers = static_cast<std::size_t>(cfg.workers > 0 ? static_cast<unsigned>(cfg.workers) : hw);

        std::atomic<std::size_t> next{0};
        const auto work = [&]
        {
            for (std::size_t i = next++; i < keys.size(); i = next++)
                records[i] = execute(keys[i], cfg.budget_rule.budget_for(keys[i].n), run_seed(cfg.base_seed, keys[i]));
        };

        if (workers <= 1 || keys.size() <= 1)
        {
            work();
        }
        else
        {
            std::vector<std::jthread> pool;
            for (std::size_t w = 0; w < std::min(workers, keys.size()); ++w)
                pool.emplace_back(work);
        }
        return write_results(cfg.output_dir, std::move(records));
    }

    ExperimentSummary write_results(const fs::path &dir, std::vector<RunRecord> records)
    {
        std::error_code ec;
        fs::create_directories(dir / "trajectories", ec);
        if (ec)
            throw Error(ErrorCode::IoError, "cannot create " + (dir / "trajectories").string() + ": " + ec.message());

        ExperimentSummary summary;
        summary.manifest = dir / "manifest.csv";
        {
            auto out = open_for_write(summary.manifest);
            out << kManifestHeader << '\n';
            for (const auto &r : records)
            {
                summary.failed += r.failed ? 1 : 0;
                out << r.algorithm << ',' << r.fid << ',' << r.n << ',' << r.instance_id << ','
                    << csv::format_rho(r.rho.optional()) << ',' << r.run << ',' << r.seed << ',' << r.budget
                    << ',' << r.evaluations << ',' << csv::format_number(r.final_delta) << ','
                    << (r.hit_1e8_at ? std::to_string(*r.hit_1e8_at) : std::string()) << ','
                    << (r.failed ? "failed" : "ok") << ',' << sanitize(r.message) << '\n';
            }
            if (!out)
                throw Error(ErrorCode::IoError, "failed writing " + summary.manifest.string());
        }

        for (const auto &[key, members] : group_records(records))
        {
            const auto &front = records[members.front()];
            const auto path = dir / "trajectories" / trajectory_filename(front.algorithm, front.fid, front.n, front.rho);
            auto out = open_for_write(path);
            out << kTrajectoryHeader << '\n';
            for (const auto i : members)
            {
                const auto &r = records[i];
                const std::string prefix = r.algorithm + ',' + std::to_string(r.fid) + ',' + std::to_string(r.n) +
                                           ',' + std::to_string(r.instance_id) + ',' +
                                           csv::format_rho(r.rho.optional()) + ',' + std::to_string(r.run) +
                                           ',' + std::to_string(r.seed) + ',';
                for (const auto &event : r.trajectory)
                    out << prefix << event.eval << ',' << csv::format_number(event.delta) << '\n';
            }
            if (!out)
                throw Error(ErrorCode::IoError, "failed writing " + path.string());
            summary.trajectory_files.push_back(path);
        }

        summary.runs = records.size();
        summary.records = std::move(records);
        return summary;
    }

    std::vector<RunRecord> load_results(const fs::path &dir)
    {
        const auto manifest_path = dir / "manifest.csv";
        if (!fs::exists(manifest_path))
            throw Error(ErrorCode::IoError, "missing manifest " + manifest_path.string());

        const auto manifest = csv::Table::read(manifest_path.string());
        const auto c_alg = manifest.column("algorithm"), c_fid = manifest.column("fid"), c_dim = manifest.column("dim"),
                   c_inst = manifest.column("instance"), c_rho = manifest.column("rho"), c_run = manifest.column("run"),
                   c_seed = manifest.column("seed"), c_budget = manifest.column("budget"),
                   c_evals = manifest.column("evals"), c_final = manifest.column("final_delta"),
                   c_hit = manifest.column("hit_1e8_at"), c_status = manifest.column("status"),
                   c_msg = manifest.column("message");

        std::vector<RunRecord> records;
        std::map<RunId, std::size_t> by_id;
        for (const auto &row : manifest.rows())
        {
            RunRecord r;
            r.algorithm = row[c_alg];
            r.fid = std::stoi(row[c_fid]);
            r.n = std::stoi(row[c_dim]);
            r.instance_id = std::stoi(row[c_inst]);
            r.rho = PlateauSize(csv::parse_rho(row[c_rho]));
            r.seed = std::stoull(row[c_seed]);
            r.budget = std::stoll(row[c_budget]);
            r.evaluations = std::stoll(row[c_evals]);
            r.final_delta = csv::parse_number(row[c_final]);
            if (!row[c_hit].empty())
                r.hit_1e8_at = std::stoll(row[c_hit]);
            r.failed = row[c_status] != "ok";
            r.message = row[c_msg];
            r.run = std::stoi(row[c_run]);
            by_id[{r.algorithm, r.fid, r.n, r.instance_id, r.rho.optional(), r.run}] = records.size();
            records.push_back(std::move(r));
        }

        for (const auto &[key, members] : group_records(records))
        {
            const auto &front = records[members.front()];
            const auto path = dir / "trajectories" / trajectory_filename(front.algorithm, front.fid, front.n, front.rho);
            if (!fs::exists(path))
                throw Error(ErrorCode::IoError, "missing trajectory file " + path.string());
            const auto table = csv::Table::read(path.string());
            const auto t_alg = table.column("algorithm"), t_fid = table.column("fid"), t_dim = table.column("dim"),
                       t_inst = table.column("instance"), t_rho = table.column("rho"), t_run = table.column("run"),
                       t_eval = table.column("eval"), t_delta = table.column("delta");
            for (const auto &row : table.rows())
            {
                const RunId id{row[t_alg],
                               std::stoi(row[t_fid]),
                               std::stoi(row[t_dim]),
                               std::stoi(row[t_inst]),
                               csv::parse_rho(row[t_rho]),
                               std::stoi(row[t_run])};
                const auto it = by_id.find(id);
                if (it == by_id.end())
                    throw Error(ErrorCode::IoError, path.string() + " references a run missing from the manifest");
                records[it->second].trajectory.push_back({std::stoll(row[t_eval]), csv::parse_number(row[t_delta])});
            }
        }
        return records;
    }

    Metric parse_metric(std::string_view text)
    {
        if (text == "success")
            return Metric::success;
        if (text == "ert")
            return Metric::ert;
        if (text == "ecdf")
            return Metric::ecdf;
        throw Error(ErrorCode::ConfigInvalid, "'metric': expected success, ert or ecdf, got '" + std::string(text) + "'");
    }
    fs::path summarize(const fs::path &dir, const SummaryOptions &options)
    {
        const auto records = load_results(dir);
        const auto groups = group_records(records);
        const double phi = options.target;

        const auto members_of = [&](const std::vector<std::size_t> &members)
        {
            std::vector<RunRecord> out;
            out.reserve(members.size());
            for (const auto i : members)
                out.push_back(records[i]);
            return out;
        };

        fs::path path;
        switch (options.metric)
        {
        case Metric::success:
        {
            const auto budgets =
                options.budgets.empty() ? std::vector<std::int64_t>{5000, 50000} : options.budgets;
            path = dir / "success.csv";
            auto out = open_for_write(path);
            out << "algorithm,fid,n,rho,budget,rate\n";
            for (const auto &[key, members] : groups)
            {
                const auto group = members_of(members);
                for (const auto b : budgets)
                    out << group_prefix(key) << ',' << b << ','
                        << csv::format_number(metrics::success_rate(group, phi, b)) << '\n';
            }
            break;
        }
        case Metric::ert:
        {
            path = dir / "ert.csv";
            auto out = open_for_write(path);
            out << "algorithm,fid,n,rho,target,ert\n";
            for (const auto &[key, members] : groups)
            {
                const auto group = members_of(members);
                std::int64_t cap = 0;
                for (const auto &r : group)
                    cap = std::max(cap, r.budget);
                if (!options.budgets.empty())
                    cap = options.budgets.front();
                out << group_prefix(key) << ',' << csv::format_number(phi) << ','
                    << csv::format_number(metrics::ert(group, phi, cap)) << '\n';
            }
            break;
        }
        case Metric::ecdf:
        {
            path = dir / "ecdf.csv";
            auto out = open_for_write(path);
            out << "algorithm,fid,n,rho,budget,fraction\n";
            const auto target_set = metrics::default_targets();
            for (const auto &[key, members] : groups)
            {
                const auto group = members_of(members);
                std::int64_t top = 0;
                for (const auto &r : group)
                    top = std::max(top, r.budget);
                if (!options.budgets.empty())
                    top = *std::max_element(options.budgets.begin(), options.budgets.end());
                const auto grid = metrics::log_budgets(10, std::max<std::int64_t>(top, 10));
                for (const auto &point : metrics::ecdf(group, target_set, grid))
                    out << group_prefix(key) << ',' << point.budget << ','
                        << csv::format_number(point.fraction) << '\n';
            }
            break;
        }
        }
        return path;
    }
}
