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

#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "libra/engine.hpp"
#include "libra/workload.hpp"

namespace libra {

inline constexpr int kReportFormatVersion = 1;

/// Shortest round-trip decimal form; NaN becomes an empty field.
[[nodiscard]] inline std::string format_double(double value) {
    if (std::isnan(value)) return "";
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

/// RFC-4180 field quoting.
[[nodiscard]] inline std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

[[nodiscard]] inline nlohmann::ordered_json to_json(const ClusterConfig& cluster) {
    return {{"node_count", cluster.node_count},
            {"node_capacity_mips", cluster.node_capacity_mips}};
}

[[nodiscard]] inline nlohmann::ordered_json to_json(const PolicyConfig& policy) {
    return {{"kind", std::string(to_string(policy.kind))},
            {"alpha", policy.pricing.alpha},
            {"beta", policy.pricing.beta},
            {"selection_rule", std::string(to_string(policy.selection_rule))},
            {"allocation_mode", std::string(to_string(policy.allocation_mode))},
            {"apply_budget_gate", policy.apply_budget_gate}};
}

/// Per-job table behind the completion-time/deadline-slack bar charts.
/// Rejected jobs keep their decision and cost but leave the execution
/// columns empty.
[[nodiscard]] inline std::string jobs_csv(const SimResult& result) {
    std::string out =
        "job_id,arrival,decision,node,dispatch_time,completion_time,absolute_deadline,"
        "time_to_complete,time_remaining_to_deadline,cost,budget\n";
    for (const JobRecord& r : result.jobs) {
        const bool assigned = r.decision.outcome == Outcome::Assigned;
        out += std::to_string(r.job.id);
        out += ',';
        out += format_double(r.job.arrival);
        out += ',';
        out += std::string(to_string(r.decision.outcome));
        out += ',';
        out += assigned ? std::to_string(r.decision.node) : "";
        out += ',';
        out += format_double(r.dispatch_time);
        out += ',';
        out += format_double(r.completion_time);
        out += ',';
        out += format_double(r.absolute_deadline);
        out += ',';
        out += std::isnan(r.completion_time)
                   ? ""
                   : format_double(r.completion_time - r.job.arrival);
        out += ',';
        out += std::isnan(r.completion_time)
                   ? ""
                   : format_double(r.absolute_deadline - r.completion_time);
        out += ',';
        out += format_double(r.quote.cost);
        out += ',';
        out += format_double(r.job.budget);
        out += '\n';
    }
    return out;
}

/// Per-node share-sum series at event times; plot-ready.
[[nodiscard]] inline std::string utilization_csv(const SimResult& result) {
    std::string out = "time,node,utilization\n";
    for (const UtilizationSample& s : result.utilization) {
        out += format_double(s.time);
        out += ',';
        out += std::to_string(s.node);
        out += ',';
        out += format_double(s.utilization);
        out += '\n';
    }
    return out;
}

/// Provenance recorded next to a run's aggregates.
struct RunMeta {
    std::string workload;
    std::optional<std::uint64_t> seed;
    ClusterConfig cluster;
    PolicyConfig policy;
    double estimate_error = 1.0;
};

[[nodiscard]] inline nlohmann::ordered_json summary_json(const SimResult& result,
                                                         const RunMeta& meta) {
    nlohmann::ordered_json j{{"format_version", kReportFormatVersion},
                             {"workload", meta.workload},
                             {"seed", nullptr},
                             {"cluster", to_json(meta.cluster)},
                             {"policy", to_json(meta.policy)},
                             {"estimate_error", meta.estimate_error}};
    if (meta.seed) j["seed"] = *meta.seed;
    j["totals"] = {{"total_jobs", result.totals.total_jobs},
                   {"accepted", result.totals.accepted},
                   {"rejected_budget", result.totals.rejected_budget},
                   {"rejected_deadline", result.totals.rejected_deadline},
                   {"completed_by_deadline", result.totals.completed_by_deadline}};
    return j;
}

// --- multi-seed policy comparison ------------------------------------------

/// One workload axis entry: either a spec regenerated per seed, or a fixed
/// trace that ignores the seed axis.
struct WorkloadSource {
    std::string label;
    std::optional<WorkloadSpec> spec;
    std::vector<Job> jobs;  // used when !spec
};

struct PolicyVariant {
    std::string label;
    PolicyConfig config;
};

struct CompareSpec {
    std::vector<WorkloadSource> workloads;
    std::vector<std::uint32_t> node_counts;
    double node_capacity_mips = 100.0;
    std::vector<PolicyVariant> policies;
    std::vector<std::uint64_t> seeds;
    unsigned parallelism = 1;
    double estimate_error = 1.0;
};

struct CompareSeedResult {
    std::uint64_t seed = 0;
    Aggregates totals;
};

/// accepted, rejected_budget, rejected_deadline, completed_by_deadline
using CountStats = std::array<double, 4>;

struct CompareCellResult {
    std::string workload;
    std::uint32_t job_count = 0;
    std::uint32_t node_count = 0;
    std::string policy;
    std::vector<CompareSeedResult> per_seed;
    CountStats mean{};
    CountStats stddev{};  // population
};

struct ComparisonTable {
    std::vector<CompareCellResult> cells;
};

namespace detail {

[[nodiscard]] inline CountStats counts_of(const Aggregates& totals) {
    return {static_cast<double>(totals.accepted), static_cast<double>(totals.rejected_budget),
            static_cast<double>(totals.rejected_deadline),
            static_cast<double>(totals.completed_by_deadline)};
}

inline void finish_cell(CompareCellResult& cell) {
    const double n = static_cast<double>(cell.per_seed.size());
    CountStats sum{}, sumsq{};
    for (const CompareSeedResult& r : cell.per_seed) {
        const CountStats c = counts_of(r.totals);
        for (std::size_t k = 0; k < c.size(); ++k) {
            sum[k] += c[k];
            sumsq[k] += c[k] * c[k];
        }
    }
    for (std::size_t k = 0; k < sum.size(); ++k) {
        cell.mean[k] = sum[k] / n;
        const double var = std::max(0.0, sumsq[k] / n - cell.mean[k] * cell.mean[k]);
        cell.stddev[k] = std::sqrt(var);
    }
}

template <typename Task>
inline void run_tasks(std::size_t count, unsigned parallelism, Task&& task) {
    const unsigned workers =
        std::max(1u, std::min<unsigned>(parallelism, static_cast<unsigned>(count)));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> cursor{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = cursor.fetch_add(1);
                if (i >= count) return;
                try {
                    task(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace detail

/// Runs the full (workload x node_count x policy x seed) grid and aggregates
/// per-cell statistics. Cells are ordered by (workload, node_count, policy)
/// as given; seeds ascending. Parallel execution changes wall time only.
[[nodiscard]] inline ComparisonTable run_compare(const CompareSpec& spec) {
    if (spec.workloads.empty()) throw ConfigError("compare: no workloads");
    if (spec.node_counts.empty()) throw ConfigError("compare: no node counts");
    if (spec.policies.empty()) throw ConfigError("compare: no policies");
    if (spec.seeds.empty()) throw ConfigError("compare: seed list must be non-empty");

    std::vector<std::uint64_t> seeds = spec.seeds;
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

    ComparisonTable table;
    for (const WorkloadSource& source : spec.workloads)
        for (const std::uint32_t node_count : spec.node_counts)
            for (const PolicyVariant& policy : spec.policies) {
                CompareCellResult cell;
                cell.workload = source.label;
                cell.job_count = source.spec
                                     ? source.spec->job_count
                                     : static_cast<std::uint32_t>(source.jobs.size());
                cell.node_count = node_count;
                cell.policy = policy.label;
                cell.per_seed.resize(seeds.size());
                table.cells.push_back(std::move(cell));
            }

    struct Task {
        std::size_t cell;
        std::size_t seed_index;
    };
    std::vector<Task> tasks;
    tasks.reserve(table.cells.size() * seeds.size());
    for (std::size_t c = 0; c < table.cells.size(); ++c)
        for (std::size_t s = 0; s < seeds.size(); ++s) tasks.push_back({c, s});

    const std::size_t cells_per_workload = spec.node_counts.size() * spec.policies.size();
    detail::run_tasks(tasks.size(), spec.parallelism, [&](std::size_t i) {
        const Task& t = tasks[i];
        CompareCellResult& cell = table.cells[t.cell];
        const WorkloadSource& source = spec.workloads[t.cell / cells_per_workload];
        const std::uint64_t seed = seeds[t.seed_index];

        std::vector<Job> jobs;
        if (source.spec) {
            WorkloadSpec wspec = *source.spec;
            wspec.seed = seed;
            jobs = generate(wspec);
        } else {
            jobs = source.jobs;
        }
        ClusterConfig cluster{cell.node_count, spec.node_capacity_mips};
        const std::size_t policy_index = (t.cell % cells_per_workload) % spec.policies.size();
        const SimResult result =
            run(jobs, cluster, spec.policies[policy_index].config, {spec.estimate_error});
        cell.per_seed[t.seed_index] = CompareSeedResult{seed, result.totals};
    });

    for (CompareCellResult& cell : table.cells) detail::finish_cell(cell);
    return table;
}

[[nodiscard]] inline std::string comparison_csv(const ComparisonTable& table) {
    std::string out =
        "workload,job_count,node_count,policy,seed,accepted,rejected_budget,"
        "rejected_deadline,completed_by_deadline\n";
    const auto prefix = [](const CompareCellResult& cell) {
        return csv_escape(cell.workload) + ',' + std::to_string(cell.job_count) + ',' +
               std::to_string(cell.node_count) + ',' + csv_escape(cell.policy) + ',';
    };
    for (const CompareCellResult& cell : table.cells) {
        for (const CompareSeedResult& r : cell.per_seed) {
            out += prefix(cell);
            out += std::to_string(r.seed);
            out += ',';
            out += std::to_string(r.totals.accepted);
            out += ',';
            out += std::to_string(r.totals.rejected_budget);
            out += ',';
            out += std::to_string(r.totals.rejected_deadline);
            out += ',';
            out += std::to_string(r.totals.completed_by_deadline);
            out += '\n';
        }
        for (const char* label : {"mean", "stddev"}) {
            const CountStats& stats =
                std::string_view(label) == "mean" ? cell.mean : cell.stddev;
            out += prefix(cell);
            out += label;
            for (double v : stats) {
                out += ',';
                out += format_double(v);
            }
            out += '\n';
        }
    }
    return out;
}

[[nodiscard]] inline nlohmann::ordered_json comparison_json(const ComparisonTable& table) {
    nlohmann::ordered_json cells = nlohmann::ordered_json::array();
    const auto stats_json = [](const CountStats& s) {
        return nlohmann::ordered_json{{"accepted", s[0]},
                                      {"rejected_budget", s[1]},
                                      {"rejected_deadline", s[2]},
                                      {"completed_by_deadline", s[3]}};
    };
    for (const CompareCellResult& cell : table.cells) {
        nlohmann::ordered_json per_seed = nlohmann::ordered_json::array();
        for (const CompareSeedResult& r : cell.per_seed)
            per_seed.push_back({{"seed", r.seed},
                                {"accepted", r.totals.accepted},
                                {"rejected_budget", r.totals.rejected_budget},
                                {"rejected_deadline", r.totals.rejected_deadline},
                                {"completed_by_deadline", r.totals.completed_by_deadline}});
        cells.push_back({{"workload", cell.workload},
                         {"job_count", cell.job_count},
                         {"node_count", cell.node_count},
                         {"policy", cell.policy},
                         {"per_seed", std::move(per_seed)},
                         {"mean", stats_json(cell.mean)},
                         {"stddev", stats_json(cell.stddev)}});
    }
    return nlohmann::ordered_json{{"format_version", kReportFormatVersion},
                                  {"cells", std::move(cells)}};
}

}  // namespace libra
