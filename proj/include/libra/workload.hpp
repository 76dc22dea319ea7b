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
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "libra/rng.hpp"
#include "libra/types.hpp"

namespace libra {

/// Parameters of one synthetic batch: uniform arrivals, lengths, and
/// deadlines, plus a two-tier budget split (a fixed fraction of jobs at the
/// base budget, the rest drawn uniformly).
struct WorkloadSpec {
    std::uint32_t job_count = 0;
    std::array<double, 2> arrival_range{0.0, 0.0};    // seconds
    std::array<double, 2> length_range{1.0, 1.0};     // MI, rounded to whole MI
    double base_budget = 0.0;
    double base_budget_fraction = 0.0;
    std::array<double, 2> budget_range{0.0, 0.0};     // non-base jobs
    std::array<double, 2> deadline_range{1.0, 1.0};   // seconds, relative
    std::uint64_t seed = 0;
};

inline void validate_spec(const WorkloadSpec& spec) {
    const auto ordered = [](const std::array<double, 2>& r) { return r[0] <= r[1]; };
    if (!ordered(spec.arrival_range)) throw ValidationError("arrival_range", spec.arrival_range[0]);
    if (!ordered(spec.length_range)) throw ValidationError("length_range", spec.length_range[0]);
    if (!ordered(spec.budget_range)) throw ValidationError("budget_range", spec.budget_range[0]);
    if (!ordered(spec.deadline_range))
        throw ValidationError("deadline_range", spec.deadline_range[0]);
    if (!(spec.arrival_range[0] >= 0.0))
        throw ValidationError("arrival_range", spec.arrival_range[0]);
    if (!(spec.length_range[0] >= 1.0)) throw ValidationError("length_range", spec.length_range[0]);
    if (!(spec.deadline_range[0] > 0.0))
        throw ValidationError("deadline_range", spec.deadline_range[0]);
    if (!(spec.budget_range[0] >= 0.0)) throw ValidationError("budget_range", spec.budget_range[0]);
    if (!(spec.base_budget >= 0.0)) throw ValidationError("base_budget", spec.base_budget);
    if (!(spec.base_budget_fraction >= 0.0 && spec.base_budget_fraction <= 1.0))
        throw ValidationError("base_budget_fraction", spec.base_budget_fraction);
}

/// Generates the batch deterministically from spec.seed.
///
/// Draw order is part of the format and must not change: all arrivals first,
/// then all lengths, then all deadlines, then the budgets of the non-base
/// jobs, each in generation-index order. Jobs 1..round(fraction*n) by
/// generation index carry the base budget and consume no draw. The result is
/// sorted by arrival (ties keep generation order).
[[nodiscard]] inline std::vector<Job> generate(const WorkloadSpec& spec) {
    validate_spec(spec);
    const std::size_t n = spec.job_count;
    Rng rng(spec.seed);

    std::vector<Job> jobs(n);
    for (std::size_t i = 0; i < n; ++i) {
        jobs[i].id = static_cast<JobId>(i + 1);
        jobs[i].arrival = rng.uniform(spec.arrival_range[0], spec.arrival_range[1]);
    }
    for (std::size_t i = 0; i < n; ++i)
        jobs[i].length_mi = std::round(rng.uniform(spec.length_range[0], spec.length_range[1]));
    for (std::size_t i = 0; i < n; ++i)
        jobs[i].deadline = rng.uniform(spec.deadline_range[0], spec.deadline_range[1]);

    const auto base_count = static_cast<std::size_t>(
        std::llround(spec.base_budget_fraction * static_cast<double>(n)));
    for (std::size_t i = 0; i < n; ++i) {
        jobs[i].budget = i < base_count
                             ? spec.base_budget
                             : rng.uniform(spec.budget_range[0], spec.budget_range[1]);
    }

    std::stable_sort(jobs.begin(), jobs.end(),
                     [](const Job& a, const Job& b) { return a.arrival < b.arrival; });
    for (const Job& job : jobs) validate_job(job);
    return jobs;
}

// Built-in batches from the two-cluster acceptance study.

[[nodiscard]] inline WorkloadSpec paper_batch_100() {
    WorkloadSpec spec;
    spec.job_count = 100;
    spec.arrival_range = {1.0, 102.0};
    spec.length_range = {1000.0, 10900.0};
    spec.base_budget = 1000.0;
    spec.base_budget_fraction = 0.8;
    spec.budget_range = {1000.0, 12000.0};
    spec.deadline_range = {1.0, 1200.0};
    return spec;
}

[[nodiscard]] inline WorkloadSpec paper_batch_200() {
    WorkloadSpec spec = paper_batch_100();
    spec.job_count = 200;
    spec.arrival_range = {1.0, 208.0};
    return spec;
}

[[nodiscard]] inline std::vector<std::string_view> preset_names() {
    return {"paper-batch-100", "paper-batch-200"};
}

[[nodiscard]] inline std::optional<WorkloadSpec> preset(std::string_view name) {
    if (name == "paper-batch-100") return paper_batch_100();
    if (name == "paper-batch-200") return paper_batch_200();
    return std::nullopt;
}

// --- trace files: JSON Lines, UTF-8, LF ------------------------------------
//
// Line 1 is a header {format_version, spec, seed}; every further line is one
// job {id, arrival, length_mi, deadline, budget}. A zero-length file is a
// valid empty trace.

inline constexpr int kTraceFormatVersion = 1;

[[nodiscard]] inline nlohmann::ordered_json to_json(const WorkloadSpec& spec) {
    return nlohmann::ordered_json{{"job_count", spec.job_count},
                                  {"arrival_range", spec.arrival_range},
                                  {"length_range", spec.length_range},
                                  {"base_budget", spec.base_budget},
                                  {"base_budget_fraction", spec.base_budget_fraction},
                                  {"budget_range", spec.budget_range},
                                  {"deadline_range", spec.deadline_range},
                                  {"seed", spec.seed}};
}

[[nodiscard]] inline WorkloadSpec workload_spec_from_json(const nlohmann::ordered_json& j) {
    WorkloadSpec spec;
    spec.job_count = j.at("job_count").get<std::uint32_t>();
    spec.arrival_range = j.at("arrival_range").get<std::array<double, 2>>();
    spec.length_range = j.at("length_range").get<std::array<double, 2>>();
    spec.base_budget = j.at("base_budget").get<double>();
    spec.base_budget_fraction = j.at("base_budget_fraction").get<double>();
    spec.budget_range = j.at("budget_range").get<std::array<double, 2>>();
    spec.deadline_range = j.at("deadline_range").get<std::array<double, 2>>();
    spec.seed = j.value("seed", std::uint64_t{0});
    return spec;
}

/// A loaded trace with its provenance header.
struct TraceFile {
    int format_version = kTraceFormatVersion;
    std::optional<WorkloadSpec> spec;
    std::uint64_t seed = 0;
    std::vector<Job> jobs;
};

inline void save_trace(const std::vector<Job>& jobs, const std::string& path,
                       const std::optional<WorkloadSpec>& spec = std::nullopt) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!out) throw IoError("cannot open trace file for writing: " + path);

    nlohmann::ordered_json header{{"format_version", kTraceFormatVersion},
                                  {"spec", spec ? to_json(*spec) : nlohmann::ordered_json()},
                                  {"seed", spec ? spec->seed : std::uint64_t{0}}};
    out << header.dump() << '\n';
    for (const Job& job : jobs) {
        nlohmann::ordered_json line{{"id", job.id},
                                    {"arrival", job.arrival},
                                    {"length_mi", job.length_mi},
                                    {"deadline", job.deadline},
                                    {"budget", job.budget}};
        out << line.dump() << '\n';
    }
    if (!out) throw IoError("failed writing trace file: " + path);
}

[[nodiscard]] inline TraceFile load_trace_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open trace file: " + path);

    TraceFile trace;
    std::string line;
    std::size_t lineno = 0;

    if (!std::getline(in, line)) return trace;  // empty file: empty trace
    ++lineno;
    nlohmann::ordered_json header;
    try {
        header = nlohmann::ordered_json::parse(line);
        trace.format_version = header.at("format_version").get<int>();
        if (trace.format_version != kTraceFormatVersion)
            throw ParseError(lineno, "unsupported trace format_version " +
                                         std::to_string(trace.format_version));
        if (header.contains("spec") && !header.at("spec").is_null())
            trace.spec = workload_spec_from_json(header.at("spec"));
        trace.seed = header.value("seed", std::uint64_t{0});
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(lineno, e.what());
    }

    std::unordered_set<JobId> seen;
    double prev_arrival = -std::numeric_limits<double>::infinity();
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;  // tolerate a trailing newline
        try {
            const auto j = nlohmann::ordered_json::parse(line);
            Job job;
            job.id = j.at("id").get<JobId>();
            job.arrival = j.at("arrival").get<double>();
            job.length_mi = j.at("length_mi").get<double>();
            job.deadline = j.at("deadline").get<double>();
            job.budget = j.at("budget").get<double>();
            validate_job(job);
            if (!seen.insert(job.id).second)
                throw ParseError(lineno, "duplicate job id " + std::to_string(job.id));
            if (job.arrival < prev_arrival)
                throw ParseError(lineno, "jobs not sorted by arrival");
            prev_arrival = job.arrival;
            trace.jobs.push_back(job);
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError(lineno, e.what());
        }
    }
    return trace;
}

[[nodiscard]] inline std::vector<Job> load_trace(const std::string& path) {
    return load_trace_file(path).jobs;
}

}  // namespace libra
