// Copyright 2026 The librasim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// librasim: generate workloads, run one scheduling simulation, sweep a
// policy-comparison grid, and pretty-print result files.
//
// run/compare accept --config FILE (a single JSON document); any flag given
// on the command line overrides the file. Exit codes: 0 success,
// 2 configuration/input error, 3 I/O error, 4 internal invariant failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "libra/libra.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitInternal = 4;

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw libra::IoError("cannot open for writing: " + path.string());
    out << content;
    if (!out) throw libra::IoError("failed writing: " + path.string());
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw libra::IoError("cannot open: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw libra::IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("LIBRA_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw libra::ConfigError(std::string("LIBRA_SEED is not an integer: ") + env);
        }
    }
    return 1;
}

libra::WorkloadSpec resolve_spec(const std::string& preset_name, const std::string& spec_path) {
    if (!preset_name.empty()) {
        if (auto spec = libra::preset(preset_name)) return *spec;
        std::string valid;
        for (const auto name : libra::preset_names()) {
            if (!valid.empty()) valid += ", ";
            valid += name;
        }
        throw libra::ConfigError("unknown preset '" + preset_name +
                                 "'; valid presets: " + valid);
    }
    try {
        const ordered_json j = ordered_json::parse(read_file(spec_path));
        return libra::workload_spec_from_json(j);
    } catch (const libra::Error&) {
        throw;
    } catch (const std::exception& e) {
        throw libra::ConfigError("bad workload spec " + spec_path + ": " + e.what());
    }
}

/// Loads a JSON config document; command-line flags override its values.
ordered_json load_config(const std::string& path) {
    if (path.empty()) return ordered_json::object();
    try {
        ordered_json j = ordered_json::parse(read_file(path));
        if (!j.is_object()) throw libra::ConfigError("config file must hold a JSON object");
        return j;
    } catch (const libra::Error&) {
        throw;
    } catch (const std::exception& e) {
        throw libra::ConfigError("bad config file " + path + ": " + e.what());
    }
}

/// Fills `var` from the config document unless the flag was passed.
template <typename T>
void merge_option(T& var, const CLI::Option* opt, const ordered_json& config, const char* key) {
    if (opt->count() > 0 || !config.contains(key)) return;
    try {
        var = config.at(key).get<T>();
    } catch (const std::exception& e) {
        throw libra::ConfigError(std::string("config key '") + key + "': " + e.what());
    }
}

/// Seed tokens are plain integers or inclusive ranges "lo:hi".
std::vector<std::uint64_t> expand_seeds(const std::vector<std::string>& tokens) {
    std::vector<std::uint64_t> seeds;
    for (const std::string& token : tokens) {
        try {
            const auto colon = token.find(':');
            if (colon == std::string::npos) {
                seeds.push_back(std::stoull(token));
            } else {
                const auto lo = std::stoull(token.substr(0, colon));
                const auto hi = std::stoull(token.substr(colon + 1));
                if (hi < lo) throw libra::ConfigError("bad seed range: " + token);
                for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
            }
        } catch (const libra::Error&) {
            throw;
        } catch (const std::exception&) {
            throw libra::ConfigError("bad seed token: " + token);
        }
    }
    return seeds;
}

struct PolicyFlags {
    double alpha = 1.0;
    double beta = 100.0;
    std::string selection = "max-loadfree";
    std::string mode = "proportional-scaleup";
    bool no_budget_gate = false;
};

struct PolicyFlagOpts {
    CLI::Option* alpha = nullptr;
    CLI::Option* beta = nullptr;
    CLI::Option* selection = nullptr;
    CLI::Option* mode = nullptr;
    CLI::Option* gate = nullptr;
};

PolicyFlagOpts add_policy_flags(CLI::App* cmd, PolicyFlags& flags) {
    PolicyFlagOpts opts;
    opts.alpha =
        cmd->add_option("--alpha", flags.alpha, "Cost coefficient on E (currency per second)")
            ->capture_default_str();
    opts.beta = cmd->add_option("--beta", flags.beta, "Cost coefficient on E/D (currency)")
                    ->capture_default_str();
    opts.selection = cmd->add_option("--selection", flags.selection, "Libra node selection rule")
                         ->check(CLI::IsMember({"max-loadfree", "min-loadfree"}))
                         ->capture_default_str();
    opts.mode = cmd->add_option("--mode", flags.mode, "Libra share allocation mode")
                    ->check(CLI::IsMember(
                        {"deadline-exact", "proportional-scaleup", "equal-quantized"}))
                    ->capture_default_str();
    opts.gate = cmd->add_flag("--no-budget-gate", flags.no_budget_gate,
                              "FIFO only: skip the cost/budget admission gate");
    return opts;
}

void merge_policy_flags(PolicyFlags& flags, const PolicyFlagOpts& opts,
                        const ordered_json& config) {
    merge_option(flags.alpha, opts.alpha, config, "alpha");
    merge_option(flags.beta, opts.beta, config, "beta");
    merge_option(flags.selection, opts.selection, config, "selection");
    merge_option(flags.mode, opts.mode, config, "mode");
    merge_option(flags.no_budget_gate, opts.gate, config, "no_budget_gate");
    if (!libra::parse_selection_rule(flags.selection))
        throw libra::ConfigError("unknown selection rule: " + flags.selection);
    if (!libra::parse_allocation_mode(flags.mode))
        throw libra::ConfigError("unknown allocation mode: " + flags.mode);
}

libra::PolicyConfig make_policy(libra::PolicyKind kind, const PolicyFlags& flags) {
    libra::PolicyConfig config;
    config.kind = kind;
    config.pricing = {flags.alpha, flags.beta};
    config.selection_rule = *libra::parse_selection_rule(flags.selection);
    config.allocation_mode = *libra::parse_allocation_mode(flags.mode);
    config.apply_budget_gate = !flags.no_budget_gate;
    return config;
}

// ---------------------------------------------------------------------------

int cmd_generate(const std::string& preset_name, const std::string& spec_path,
                 std::uint64_t seed, bool seed_given, const std::string& out,
                 bool print_config) {
    libra::WorkloadSpec spec = resolve_spec(preset_name, spec_path);
    // Presets take the flag/env seed; file specs keep their own seed unless
    // one was passed explicitly.
    if (seed_given || spec_path.empty()) spec.seed = seed;
    if (print_config) {
        ordered_json echo{{"command", "generate"},
                          {"workload", preset_name.empty() ? spec_path : preset_name},
                          {"spec", libra::to_json(spec)},
                          {"out", out}};
        std::cout << echo.dump(2) << '\n';
    }
    const std::vector<libra::Job> jobs = libra::generate(spec);
    libra::save_trace(jobs, out, spec);
    std::cerr << "wrote " << jobs.size() << " jobs to " << out << '\n';
    return 0;
}

int cmd_run(const std::string& trace_path, const std::string& preset_name, std::uint64_t seed,
            bool seed_given, std::uint32_t nodes, double capacity,
            const std::string& policy_name, const PolicyFlags& flags, double estimate_error,
            const std::string& out_dir, bool emit_utilization, bool print_config) {
    if (trace_path.empty() && preset_name.empty())
        throw libra::ConfigError("run: pass --trace or --preset (or set one in --config)");
    if (out_dir.empty()) throw libra::ConfigError("run: --out-dir is required");
    const auto kind = libra::parse_policy_kind(policy_name);
    if (!kind) throw libra::ConfigError("unknown policy: " + policy_name);
    const libra::PolicyConfig policy = make_policy(*kind, flags);
    const libra::ClusterConfig cluster{nodes, capacity};

    libra::RunMeta meta;
    meta.cluster = cluster;
    meta.policy = policy;
    meta.estimate_error = estimate_error;

    std::vector<libra::Job> jobs;
    if (!trace_path.empty()) {
        jobs = libra::load_trace(trace_path);
        meta.workload = trace_path;
    } else {
        libra::WorkloadSpec spec = resolve_spec(preset_name, "");
        spec.seed = seed_given ? seed : default_seed();
        jobs = libra::generate(spec);
        meta.workload = preset_name;
        meta.seed = spec.seed;
    }

    if (print_config) {
        ordered_json echo{{"command", "run"},
                          {"workload", meta.workload},
                          {"seed", meta.seed ? ordered_json(*meta.seed) : ordered_json()},
                          {"cluster", libra::to_json(cluster)},
                          {"policy", libra::to_json(policy)},
                          {"estimate_error", estimate_error},
                          {"out_dir", out_dir}};
        std::cout << echo.dump(2) << '\n';
    }

    const libra::SimResult result = libra::run(jobs, cluster, policy, {estimate_error});

    ensure_dir(out_dir);
    write_file(fs::path(out_dir) / "jobs.csv", libra::jobs_csv(result));
    write_file(fs::path(out_dir) / "summary.json",
               libra::summary_json(result, meta).dump(2) + "\n");
    if (emit_utilization)
        write_file(fs::path(out_dir) / "utilization.csv", libra::utilization_csv(result));

    std::cerr << "accepted " << result.totals.accepted << "/" << result.totals.total_jobs
              << " (budget rejects " << result.totals.rejected_budget << ", deadline rejects "
              << result.totals.rejected_deadline << "); results in " << out_dir << '\n';
    return 0;
}

int cmd_compare(const std::vector<std::string>& presets, const std::vector<std::string>& traces,
                std::vector<std::uint32_t> nodes, double capacity,
                const std::vector<std::string>& policy_names, const PolicyFlags& flags,
                const std::vector<std::string>& seed_tokens, double estimate_error,
                unsigned parallel_jobs, const std::string& out_dir, bool print_config) {
    if (out_dir.empty()) throw libra::ConfigError("compare: --out-dir is required");
    libra::CompareSpec spec;
    spec.node_capacity_mips = capacity;
    spec.node_counts = std::move(nodes);
    spec.estimate_error = estimate_error;
    spec.parallelism = parallel_jobs;

    for (const std::string& name : presets) {
        libra::WorkloadSource source;
        source.label = name;
        source.spec = resolve_spec(name, "");
        spec.workloads.push_back(std::move(source));
    }
    for (const std::string& path : traces) {
        libra::WorkloadSource source;
        source.label = path;
        source.jobs = libra::load_trace(path);
        spec.workloads.push_back(std::move(source));
    }

    for (const std::string& name : policy_names) {
        libra::PolicyVariant variant;
        variant.label = name;
        if (name == "libra") {
            variant.config = make_policy(libra::PolicyKind::Libra, flags);
        } else if (name == "libra-max-loadfree" || name == "libra-min-loadfree") {
            variant.config = make_policy(libra::PolicyKind::Libra, flags);
            variant.config.selection_rule = name == "libra-max-loadfree"
                                                ? libra::SelectionRule::MaxLoadfree
                                                : libra::SelectionRule::MinLoadfree;
        } else if (name == "fifo") {
            variant.config = make_policy(libra::PolicyKind::Fifo, flags);
        } else {
            throw libra::ConfigError(
                "unknown policy '" + name +
                "'; valid: libra, libra-max-loadfree, libra-min-loadfree, fifo");
        }
        spec.policies.push_back(std::move(variant));
    }

    spec.seeds = seed_tokens.empty() ? std::vector<std::uint64_t>{default_seed()}
                                     : expand_seeds(seed_tokens);

    if (print_config) {
        ordered_json policies = ordered_json::array();
        for (const auto& p : spec.policies)
            policies.push_back({{"label", p.label}, {"config", libra::to_json(p.config)}});
        ordered_json workloads = ordered_json::array();
        for (const auto& w : spec.workloads) workloads.push_back(w.label);
        ordered_json echo{{"command", "compare"},
                          {"workloads", workloads},
                          {"node_counts", spec.node_counts},
                          {"policies", policies},
                          {"seeds", spec.seeds},
                          {"node_capacity_mips", capacity},
                          {"estimate_error", estimate_error},
                          {"jobs", parallel_jobs},
                          {"out_dir", out_dir}};
        std::cout << echo.dump(2) << '\n';
    }

    ensure_dir(out_dir);
    libra::ComparisonTable table;
    try {
        table = libra::run_compare(spec);
    } catch (...) {
        // Leave a marker so downstream tooling never mistakes a torn sweep
        // for a finished one.
        write_file(fs::path(out_dir) / "PARTIAL",
                   "comparison sweep aborted before completion\n");
        throw;
    }
    write_file(fs::path(out_dir) / "comparison.csv", libra::comparison_csv(table));
    write_file(fs::path(out_dir) / "comparison.json",
               libra::comparison_json(table).dump(2) + "\n");
    std::cerr << "wrote " << table.cells.size() << " cells x " << spec.seeds.size()
              << " seeds to " << out_dir << '\n';
    return 0;
}

void print_summary(const ordered_json& j) {
    const auto& totals = j.at("totals");
    std::cout << "workload:  " << j.value("workload", std::string("?")) << '\n';
    if (j.contains("seed") && !j.at("seed").is_null())
        std::cout << "seed:      " << j.at("seed") << '\n';
    std::cout << "cluster:   " << j.at("cluster").at("node_count") << " nodes x "
              << j.at("cluster").at("node_capacity_mips").get<double>() << " MIPS\n";
    std::cout << "policy:    " << j.at("policy").dump() << '\n';
    std::cout << "totals:    accepted " << totals.at("accepted") << " / "
              << totals.at("total_jobs") << ", rejected_budget " << totals.at("rejected_budget")
              << ", rejected_deadline " << totals.at("rejected_deadline")
              << ", completed_by_deadline " << totals.at("completed_by_deadline") << '\n';
}

void print_comparison(const ordered_json& j) {
    std::cout << std::left << std::setw(18) << "workload" << std::right << std::setw(6) << "jobs"
              << std::setw(7) << "nodes" << "  " << std::left << std::setw(20) << "policy"
              << std::right << std::setw(7) << "seeds" << std::setw(12) << "accepted"
              << std::setw(9) << "sd" << std::setw(12) << "rej_budget" << std::setw(14)
              << "rej_deadline" << std::setw(13) << "by_deadline" << '\n';
    for (const auto& cell : j.at("cells")) {
        const auto& mean = cell.at("mean");
        const auto& sd = cell.at("stddev");
        std::cout << std::left << std::setw(18) << cell.at("workload").get<std::string>()
                  << std::right << std::setw(6) << cell.at("job_count").get<std::uint32_t>()
                  << std::setw(7) << cell.at("node_count").get<std::uint32_t>() << "  "
                  << std::left << std::setw(20) << cell.at("policy").get<std::string>()
                  << std::right << std::setw(7) << cell.at("per_seed").size() << std::fixed
                  << std::setprecision(2) << std::setw(12) << mean.at("accepted").get<double>()
                  << std::setw(9) << sd.at("accepted").get<double>() << std::setw(12)
                  << mean.at("rejected_budget").get<double>() << std::setw(14)
                  << mean.at("rejected_deadline").get<double>() << std::setw(13)
                  << mean.at("completed_by_deadline").get<double>() << '\n';
        std::cout.unsetf(std::ios::fixed);
        std::cout << std::setprecision(6);
    }
}

int cmd_report(const std::vector<std::string>& files) {
    bool first = true;
    for (const std::string& file : files) {
        ordered_json j;
        try {
            j = ordered_json::parse(read_file(file));
        } catch (const libra::Error&) {
            throw;
        } catch (const std::exception& e) {
            throw libra::ConfigError("cannot parse " + file + ": " + e.what());
        }
        if (!first) std::cout << '\n';
        first = false;
        std::cout << "== " << file << " ==\n";
        if (j.contains("cells"))
            print_comparison(j);
        else if (j.contains("totals"))
            print_summary(j);
        else
            throw libra::ConfigError(file + " is neither a summary nor a comparison report");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"librasim: deadline/budget-driven cluster scheduling simulator"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Generate a synthetic workload trace");
    std::string gen_preset, gen_spec, gen_out;
    std::uint64_t gen_seed = 0;
    bool gen_print = false;
    auto* gen_preset_opt =
        gen->add_option("--preset", gen_preset, "Built-in workload preset name");
    gen->add_option("--spec", gen_spec, "Workload spec JSON file")->excludes(gen_preset_opt);
    auto* gen_seed_opt = gen->add_option("--seed", gen_seed, "Generator seed");
    gen->add_option("--out", gen_out, "Output trace path (JSON Lines)")->required();
    gen->add_flag("--print-config", gen_print, "Echo the resolved configuration");

    // run
    auto* run = app.add_subcommand("run", "Run one simulation and write per-job results");
    std::string run_config, run_trace, run_preset, run_policy = "libra", run_out;
    std::uint64_t run_seed = 0;
    std::uint32_t run_nodes = 10;
    double run_capacity = 100.0, run_estimate_error = 1.0;
    PolicyFlags run_flags;
    bool run_util = false, run_print = false;
    run->add_option("--config", run_config, "JSON config file; flags override it");
    auto* run_trace_opt = run->add_option("--trace", run_trace, "Input trace file");
    auto* run_preset_opt =
        run->add_option("--preset", run_preset, "Generate this preset instead of loading a trace")
            ->excludes(run_trace_opt);
    auto* run_seed_opt = run->add_option("--seed", run_seed, "Seed for --preset generation");
    auto* run_nodes_opt = run->add_option("--nodes", run_nodes, "Cluster size")
                              ->capture_default_str();
    auto* run_capacity_opt =
        run->add_option("--capacity", run_capacity, "Node capacity in MIPS")
            ->capture_default_str();
    auto* run_policy_opt = run->add_option("--policy", run_policy, "Scheduling policy")
                               ->check(CLI::IsMember({"libra", "fifo"}))
                               ->capture_default_str();
    const PolicyFlagOpts run_flag_opts = add_policy_flags(run, run_flags);
    auto* run_err_opt = run->add_option("--estimate-error", run_estimate_error,
                                        "True length multiplier for exploratory runs")
                            ->capture_default_str();
    auto* run_out_opt =
        run->add_option("--out-dir", run_out, "Directory for jobs.csv and summary.json");
    auto* run_util_opt = run->add_flag("--utilization", run_util, "Also write utilization.csv");
    run->add_flag("--print-config", run_print, "Echo the resolved configuration");

    // compare
    auto* cmp = app.add_subcommand("compare", "Sweep workloads x clusters x policies x seeds");
    std::string cmp_config, cmp_out;
    std::vector<std::string> cmp_presets{"paper-batch-100", "paper-batch-200"};
    std::vector<std::string> cmp_traces, cmp_policies{"libra", "fifo"}, cmp_seeds;
    std::vector<std::uint32_t> cmp_nodes{10, 20};
    double cmp_capacity = 100.0, cmp_estimate_error = 1.0;
    unsigned cmp_jobs = 1;
    PolicyFlags cmp_flags;
    bool cmp_print = false;
    cmp->add_option("--config", cmp_config, "JSON config file; flags override it");
    auto* cmp_presets_opt = cmp->add_option("--presets", cmp_presets, "Workload presets to sweep")
                                ->delimiter(',')
                                ->capture_default_str();
    auto* cmp_traces_opt =
        cmp->add_option("--traces", cmp_traces, "Fixed trace files to sweep")->delimiter(',');
    auto* cmp_nodes_opt = cmp->add_option("--nodes", cmp_nodes, "Cluster sizes to sweep")
                              ->delimiter(',')
                              ->capture_default_str();
    auto* cmp_capacity_opt =
        cmp->add_option("--capacity", cmp_capacity, "Node capacity in MIPS")
            ->capture_default_str();
    auto* cmp_policies_opt =
        cmp->add_option("--policies", cmp_policies,
                        "Policies to sweep (libra, libra-max-loadfree, libra-min-loadfree, fifo)")
            ->delimiter(',')
            ->capture_default_str();
    auto* cmp_seeds_opt =
        cmp->add_option("--seeds", cmp_seeds, "Seeds: integers and lo:hi ranges")->delimiter(',');
    const PolicyFlagOpts cmp_flag_opts = add_policy_flags(cmp, cmp_flags);
    auto* cmp_err_opt = cmp->add_option("--estimate-error", cmp_estimate_error,
                                        "True length multiplier for exploratory runs")
                            ->capture_default_str();
    auto* cmp_jobs_opt =
        cmp->add_option("--jobs", cmp_jobs, "Worker threads for the sweep")->capture_default_str();
    auto* cmp_out_opt = cmp->add_option("--out-dir", cmp_out, "Directory for comparison.csv/.json");
    cmp->add_flag("--print-config", cmp_print, "Echo the resolved configuration");

    // report
    auto* rep = app.add_subcommand("report", "Pretty-print summary/comparison JSON files");
    std::vector<std::string> rep_files;
    rep->add_option("files", rep_files, "Result files")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (gen->parsed()) {
            if (gen_preset.empty() && gen_spec.empty())
                throw libra::ConfigError("generate: pass --preset or --spec");
            const bool seed_given = gen_seed_opt->count() > 0;
            return cmd_generate(gen_preset, gen_spec, seed_given ? gen_seed : default_seed(),
                                seed_given, gen_out, gen_print);
        }
        if (run->parsed()) {
            const ordered_json config = load_config(run_config);
            merge_option(run_trace, run_trace_opt, config, "trace");
            merge_option(run_preset, run_preset_opt, config, "preset");
            merge_option(run_seed, run_seed_opt, config, "seed");
            merge_option(run_nodes, run_nodes_opt, config, "nodes");
            merge_option(run_capacity, run_capacity_opt, config, "capacity");
            merge_option(run_policy, run_policy_opt, config, "policy");
            merge_option(run_estimate_error, run_err_opt, config, "estimate_error");
            merge_option(run_out, run_out_opt, config, "out_dir");
            merge_option(run_util, run_util_opt, config, "utilization");
            merge_policy_flags(run_flags, run_flag_opts, config);
            const bool seed_given = run_seed_opt->count() > 0 || config.contains("seed");
            if (!run_trace.empty() && !run_preset.empty())
                throw libra::ConfigError("run: --trace and --preset are mutually exclusive");
            return cmd_run(run_trace, run_preset, run_seed, seed_given, run_nodes, run_capacity,
                           run_policy, run_flags, run_estimate_error, run_out, run_util,
                           run_print);
        }
        if (cmp->parsed()) {
            const ordered_json config = load_config(cmp_config);
            merge_option(cmp_presets, cmp_presets_opt, config, "presets");
            merge_option(cmp_traces, cmp_traces_opt, config, "traces");
            merge_option(cmp_nodes, cmp_nodes_opt, config, "nodes");
            merge_option(cmp_capacity, cmp_capacity_opt, config, "capacity");
            merge_option(cmp_policies, cmp_policies_opt, config, "policies");
            merge_option(cmp_estimate_error, cmp_err_opt, config, "estimate_error");
            merge_option(cmp_jobs, cmp_jobs_opt, config, "jobs");
            merge_option(cmp_out, cmp_out_opt, config, "out_dir");
            merge_policy_flags(cmp_flags, cmp_flag_opts, config);
            if (cmp_seeds_opt->count() == 0 && config.contains("seeds")) {
                cmp_seeds.clear();
                for (const auto& s : config.at("seeds"))
                    cmp_seeds.push_back(s.is_string() ? s.get<std::string>()
                                                      : std::to_string(s.get<std::uint64_t>()));
            }
            return cmd_compare(cmp_presets, cmp_traces, cmp_nodes, cmp_capacity, cmp_policies,
                               cmp_flags, cmp_seeds, cmp_estimate_error, cmp_jobs, cmp_out,
                               cmp_print);
        }
        if (rep->parsed()) return cmd_report(rep_files);
        return kExitConfig;
    } catch (const libra::InternalError& e) {
        std::cerr << "internal invariant failure: " << e.what() << '\n';
        return kExitInternal;
    } catch (const libra::LedgerError& e) {
        std::cerr << "internal invariant failure: " << e.what() << '\n';
        return kExitInternal;
    } catch (const libra::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kExitIo;
    } catch (const libra::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}
