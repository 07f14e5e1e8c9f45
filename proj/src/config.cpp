#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "rhobench/classic.hpp"
#include "rhobench/error.hpp"
#include "rhobench/harness.hpp"
#include "rhobench/problems.hpp"

namespace rhobench::harness
{
    namespace
    {
        const std::set<std::string, std::less<>> kKnownKeys{
            "fids",   "dims",     "instances",   "rhos",      "algorithms", "runs_per_instance",
            "runs",   "budget_rule", "base_seed", "output_dir", "workers",
        };

        [[noreturn]] void invalid(const std::string &key, const std::string &why)
        {
            throw Error(ErrorCode::ConfigInvalid, "'" + key + "': " + why);
        }

        template <typename T>
        T scalar(const YAML::Node &node, const std::string &key)
        {
            try
            {
                return node.as<T>();
            }
            catch (const YAML::Exception &)
            {
                invalid(key, "unexpected value '" + YAML::Dump(node) + "'");
            }
        }

        template <typename T>
        std::vector<T> list(const YAML::Node &node, const std::string &key)
        {
            if (!node.IsSequence())
                invalid(key, "expected a list");
            std::vector<T> out;
            for (const auto &item : node)
                out.push_back(scalar<T>(item, key));
            return out;
        }

        PlateauSize parse_rho_node(const YAML::Node &node)
        {
            if (node.IsNull())
                return PlateauSize::none();
            const auto text = scalar<std::string>(node, "rhos");
            if (text == "None" || text == "none" || text == "null")
                return PlateauSize::none();
            try
            {
                return PlateauSize(scalar<double>(node, "rhos"));
            }
            catch (const Error &e)
            {
                invalid("rhos", e.what());
            }
        }

        BudgetRule parse_budget_rule(const YAML::Node &node)
        {
            if (node.IsMap())
            {
                if (!node["fixed"])
                    invalid("budget_rule", "expected 'paper' or fixed: <evaluations>");
                return BudgetRule{scalar<std::int64_t>(node["fixed"], "budget_rule")};
            }
            const auto text = scalar<std::string>(node, "budget_rule");
            if (text == "paper")
                return BudgetRule{};

            std::string_view digits = text;
            if (digits.starts_with("fixed(") && digits.ends_with(")"))
                digits = digits.substr(6, digits.size() - 7);
            std::int64_t value = 0;
            const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), value);
            if (res.ec != std::errc() || res.ptr != digits.data() + digits.size())
                invalid("budget_rule", "expected 'paper' or 'fixed(<evaluations>)', got '" + text + "'");
            return BudgetRule{value};
        }
    }

    std::string_view name(Algorithm algorithm)
    {
        switch (algorithm)
        {
        case Algorithm::es: return "es";
        case Algorithm::intea: return "intea";
        case Algorithm::ga: return "ga";
        case Algorithm::cmaes: return "cmaes";
        case Algorithm::cmaeswm1: return "cmaeswm1";
        case Algorithm::cmaeswm2: return "cmaeswm2";
        }
        return "unknown";
    }

    Algorithm parse_algorithm(std::string_view text)
    {
        for (const auto a : {Algorithm::es, Algorithm::intea, Algorithm::ga, Algorithm::cmaes, Algorithm::cmaeswm1,
                             Algorithm::cmaeswm2})
            if (name(a) == text)
                return a;
        invalid("algorithms", "unknown algorithm '" + std::string(text) + "'");
    }

    bool needs_plateau(Algorithm algorithm)
    {
        return algorithm != Algorithm::es && algorithm != Algorithm::cmaes;
    }

    std::int64_t BudgetRule::budget_for(int n) const
    {
        if (fixed)
            return *fixed;
        return std::min<std::int64_t>(10000 * static_cast<std::int64_t>(n), 100000);
    }

    void ExperimentConfig::validate() const
    {
        if (fids.empty())
            invalid("fids", "at least one function is required");
        for (const int f : fids)
            if (!is_supported_function(f))
                invalid("fids", "unsupported function " + std::to_string(f));
        if (dims.empty())
            invalid("dims", "at least one dimension is required");
        for (const int n : dims)
            if (n < 2)
                invalid("dims", "dimensions must be at least 2, got " + std::to_string(n));
        if (instances.empty())
            invalid("instances", "at least one instance is required");
        for (const int i : instances)
            if (i < 0)
                invalid("instances", "instance ids must be non-negative");
        if (rhos.empty())
            invalid("rhos", "at least one plateau size is required (use None for the continuous problem)");
        for (const auto &rho : rhos)
            if (rho.present() && rho.value() > Domain{2}.width())
                invalid("rhos", "plateau size exceeds the domain width");
        if (algorithms.empty())
            invalid("algorithms", "at least one algorithm is required");
        if (runs_per_instance < 1)
            invalid("runs_per_instance", "must be at least 1");
        if (budget_rule.fixed && *budget_rule.fixed < classic::kLambda)
            invalid("budget_rule", "fixed budget must be at least " + std::to_string(classic::kLambda));
        if (workers < 0)
            invalid("workers", "must be non-negative");

        const bool any_grid = std::any_of(rhos.begin(), rhos.end(), [](const PlateauSize &r) { return r.present(); });
        for (const auto a : algorithms)
            if (needs_plateau(a) && !any_grid)
                invalid("rhos", std::string(name(a)) + " needs at least one plateau size other than None");
    }

    ExperimentConfig parse_config(const std::string &text)
    {
        YAML::Node root;
        try
        {
            root = YAML::Load(text);
        }
        catch (const YAML::Exception &e)
        {
            throw Error(ErrorCode::ConfigSyntax, e.what());
        }
        if (!root.IsMap())
            throw Error(ErrorCode::ConfigSyntax, "top level must be a mapping");

        for (const auto &entry : root)
        {
            const auto key = entry.first.as<std::string>();
            if (!kKnownKeys.contains(key))
                invalid(key, "unknown key");
        }

        ExperimentConfig cfg;
        if (root["fids"])
            cfg.fids = list<int>(root["fids"], "fids");
        if (root["dims"])
            cfg.dims = list<int>(root["dims"], "dims");
        if (root["instances"])
            cfg.instances = list<int>(root["instances"], "instances");
        if (root["rhos"])
        {
            if (!root["rhos"].IsSequence())
                invalid("rhos", "expected a list");
            cfg.rhos.clear();
            for (const auto &item : root["rhos"])
                cfg.rhos.push_back(parse_rho_node(item));
        }
        if (root["algorithms"])
        {
            cfg.algorithms.clear();
            for (const auto &s : list<std::string>(root["algorithms"], "algorithms"))
                cfg.algorithms.push_back(parse_algorithm(s));
        }
        if (root["runs_per_instance"])
            cfg.runs_per_instance = scalar<int>(root["runs_per_instance"], "runs_per_instance");
        else if (root["runs"])
            cfg.runs_per_instance = scalar<int>(root["runs"], "runs");
        if (root["budget_rule"])
            cfg.budget_rule = parse_budget_rule(root["budget_rule"]);
        if (root["base_seed"])
            cfg.base_seed = scalar<std::uint64_t>(root["base_seed"], "base_seed");
        if (root["output_dir"])
            cfg.output_dir = scalar<std::string>(root["output_dir"], "output_dir");
        if (root["workers"])
            cfg.workers = scalar<int>(root["workers"], "workers");

        cfg.validate();
        return cfg;
    }

    ExperimentConfig load_config(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw Error(ErrorCode::IoError, "cannot read config " + path.string());
        std::stringstream buffer;
        buffer << in.rdbuf();
        ExperimentConfig cfg = parse_config(buffer.str());

        if (const char *env = std::getenv("RHOBENCH_SEED"); env != nullptr && *env != '\0')
        {
            const std::string_view text(env);
            std::uint64_t seed = 0;
            const auto res = std::from_chars(text.data(), text.data() + text.size(), seed);
            if (res.ec != std::errc() || res.ptr != text.data() + text.size())
                invalid("RHOBENCH_SEED", "expected an unsigned integer, got '" + std::string(text) + "'");
            cfg.base_seed = seed;
        }
        return cfg;
    }
}
