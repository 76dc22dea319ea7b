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

#include <catch2/catch.hpp>

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <unordered_set>

#include "libra/workload.hpp"

using namespace libra;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name)
        : path("/tmp/librasim-test-" + std::to_string(::getpid()) + "-" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

bool jobs_equal(const std::vector<Job>& a, const std::vector<Job>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].id != b[i].id || a[i].arrival != b[i].arrival ||
            a[i].length_mi != b[i].length_mi || a[i].deadline != b[i].deadline ||
            a[i].budget != b[i].budget)
            return false;
    }
    return true;
}

}  // namespace

TEST_CASE("generate is deterministic in the seed") {
    WorkloadSpec spec = paper_batch_100();
    spec.seed = 42;
    CHECK(jobs_equal(generate(spec), generate(spec)));

    WorkloadSpec other = spec;
    other.seed = 43;
    CHECK_FALSE(jobs_equal(generate(spec), generate(other)));
}

TEST_CASE("paper presets have the published shape") {
    SECTION("batch of 100") {
        WorkloadSpec spec = paper_batch_100();
        spec.seed = 7;
        const auto jobs = generate(spec);
        REQUIRE(jobs.size() == 100);
        int base = 0;
        std::unordered_set<JobId> ids;
        double prev = -1.0;
        for (const Job& job : jobs) {
            CHECK(job.arrival >= 1.0);
            CHECK(job.arrival <= 102.0);
            CHECK(job.length_mi >= 1000.0);
            CHECK(job.length_mi <= 10900.0);
            CHECK(job.length_mi == std::round(job.length_mi));  // whole MI
            CHECK(job.deadline >= 1.0);
            CHECK(job.deadline <= 1200.0);
            CHECK(job.budget >= 1000.0);
            CHECK(job.budget <= 12000.0);
            if (job.budget == 1000.0) ++base;
            CHECK(ids.insert(job.id).second);
            CHECK(job.arrival >= prev);
            prev = job.arrival;
        }
        CHECK(base >= 80);  // 80 by construction; random draws can tie at 1000
    }
    SECTION("batch of 200") {
        WorkloadSpec spec = paper_batch_200();
        spec.seed = 7;
        const auto jobs = generate(spec);
        REQUIRE(jobs.size() == 200);
        for (const Job& job : jobs) CHECK(job.arrival <= 208.0);
    }
    SECTION("preset lookup") {
        CHECK(preset("paper-batch-100"));
        CHECK(preset("paper-batch-200"));
        CHECK_FALSE(preset("paper-batch-999"));
    }
}

TEST_CASE("base-budget membership is exactly round(fraction * n)") {
    for (const double fraction : {0.0, 0.25, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
        for (const std::uint32_t n : {1u, 7u, 10u, 53u, 100u}) {
            WorkloadSpec spec;
            spec.job_count = n;
            spec.arrival_range = {0.0, 10.0};
            spec.length_range = {100.0, 200.0};
            spec.base_budget = 123456.0;  // sentinel no uniform draw can hit
            spec.base_budget_fraction = fraction;
            spec.budget_range = {1.0, 2.0};
            spec.deadline_range = {1.0, 5.0};
            spec.seed = 99;
            const auto jobs = generate(spec);
            const auto base = static_cast<std::size_t>(std::count_if(
                jobs.begin(), jobs.end(), [](const Job& j) { return j.budget == 123456.0; }));
            CHECK(base == static_cast<std::size_t>(std::llround(fraction * n)));
        }
    }
}

TEST_CASE("sample means sit within three standard errors") {
    WorkloadSpec spec;
    spec.job_count = 10000;
    spec.arrival_range = {1.0, 102.0};
    spec.length_range = {1000.0, 10900.0};
    spec.base_budget = 1000.0;
    spec.base_budget_fraction = 0.0;  // all budgets uniform for this check
    spec.budget_range = {1000.0, 12000.0};
    spec.deadline_range = {1.0, 1200.0};
    spec.seed = 12345;
    const auto jobs = generate(spec);

    const auto check_mean = [&](double lo, double hi, auto field, double extra) {
        double sum = 0.0;
        for (const Job& j : jobs) sum += field(j);
        const double mean = sum / static_cast<double>(jobs.size());
        const double se = (hi - lo) / std::sqrt(12.0 * static_cast<double>(jobs.size()));
        CHECK(std::abs(mean - (lo + hi) / 2.0) <= 3.0 * se + extra);
    };
    check_mean(1, 102, [](const Job& j) { return j.arrival; }, 0.0);
    check_mean(1000, 10900, [](const Job& j) { return j.length_mi; }, 0.5);  // rounding
    check_mean(1, 1200, [](const Job& j) { return j.deadline; }, 0.0);
    check_mean(1000, 12000, [](const Job& j) { return j.budget; }, 0.0);
}

TEST_CASE("structural invariants hold across 100 seeds") {
    WorkloadSpec spec = paper_batch_100();
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        spec.seed = seed;
        const auto jobs = generate(spec);
        REQUIRE(jobs.size() == 100);
        std::unordered_set<JobId> ids;
        double prev = -1.0;
        int base = 0;
        for (const Job& job : jobs) {
            REQUIRE_NOTHROW(validate_job(job));
            REQUIRE(ids.insert(job.id).second);
            REQUIRE(job.arrival >= prev);
            prev = job.arrival;
            if (job.budget == 1000.0) ++base;
        }
        REQUIRE(base >= 80);
    }
}

TEST_CASE("generate rejects a malformed spec") {
    WorkloadSpec spec = paper_batch_100();
    spec.deadline_range = {5.0, 2.0};  // reversed
    CHECK_THROWS_AS(generate(spec), ValidationError);
    spec = paper_batch_100();
    spec.base_budget_fraction = 1.5;
    CHECK_THROWS_AS(generate(spec), ValidationError);
}

TEST_CASE("trace round-trip is field-for-field identity") {
    WorkloadSpec spec = paper_batch_100();
    spec.seed = 4711;
    const auto jobs = generate(spec);

    TempFile file("roundtrip.jsonl");
    save_trace(jobs, file.path, spec);
    const TraceFile loaded = load_trace_file(file.path);
    CHECK(jobs_equal(jobs, loaded.jobs));
    REQUIRE(loaded.spec);
    CHECK(to_json(*loaded.spec) == to_json(spec));
    CHECK(loaded.seed == 4711);
}

TEST_CASE("load_trace flags the offending line") {
    TempFile file("malformed.jsonl");
    {
        std::ofstream out(file.path);
        out << R"({"format_version":1,"spec":null,"seed":0})" << '\n';
        out << R"({"id":1,"arrival":0.5,"length_mi":100.0,"deadline":5.0,"budget":1.0})" << '\n';
        out << "this is not json\n";
    }
    try {
        (void)load_trace(file.path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("load_trace rejects out-of-order and duplicate jobs") {
    TempFile file("unsorted.jsonl");
    {
        std::ofstream out(file.path);
        out << R"({"format_version":1,"spec":null,"seed":0})" << '\n';
        out << R"({"id":1,"arrival":5.0,"length_mi":100.0,"deadline":5.0,"budget":1.0})" << '\n';
        out << R"({"id":2,"arrival":1.0,"length_mi":100.0,"deadline":5.0,"budget":1.0})" << '\n';
    }
    CHECK_THROWS_AS(load_trace(file.path), ParseError);

    TempFile dup("dup.jsonl");
    {
        std::ofstream out(dup.path);
        out << R"({"format_version":1,"spec":null,"seed":0})" << '\n';
        out << R"({"id":1,"arrival":1.0,"length_mi":100.0,"deadline":5.0,"budget":1.0})" << '\n';
        out << R"({"id":1,"arrival":2.0,"length_mi":100.0,"deadline":5.0,"budget":1.0})" << '\n';
    }
    CHECK_THROWS_AS(load_trace(dup.path), ParseError);
}

TEST_CASE("empty trace file loads as an empty job list") {
    TempFile file("empty.jsonl");
    { std::ofstream out(file.path); }
    CHECK(load_trace(file.path).empty());
}

TEST_CASE("unsupported format version is a parse error on line 1") {
    TempFile file("version.jsonl");
    {
        std::ofstream out(file.path);
        out << R"({"format_version":99,"spec":null,"seed":0})" << '\n';
    }
    try {
        (void)load_trace(file.path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
    }
}

TEST_CASE("missing trace file is an io error") {
    CHECK_THROWS_AS(load_trace("/nonexistent/nowhere.jsonl"), IoError);
}
