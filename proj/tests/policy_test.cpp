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

#include <vector>

#include "libra/policy.hpp"

using namespace libra;

namespace {

constexpr double kCapacity = 100.0;

Job job_with_share(JobId id, double share, double deadline = 100.0, double budget = 1e9) {
    return Job{id, 0.0, share * kCapacity * deadline, deadline, budget};
}

std::vector<NodeState> cluster(int n) {
    std::vector<NodeState> nodes;
    for (int i = 0; i < n; ++i) nodes.emplace_back(static_cast<NodeId>(i), kCapacity);
    return nodes;
}

void occupy(NodeState& node, JobId id, double share) {
    const Job job = job_with_share(id, share);
    node.reserve(job, 0.0);
    node.dispatch(job, 0.0);
}

PolicyConfig libra_config() {
    PolicyConfig config;
    config.kind = PolicyKind::Libra;
    config.pricing = {1.0, 100.0};
    return config;
}

PolicyConfig fifo_config(bool gate = true) {
    PolicyConfig config;
    config.kind = PolicyKind::Fifo;
    config.pricing = {1.0, 100.0};
    config.apply_budget_gate = gate;
    return config;
}

}  // namespace

TEST_CASE("libra: budget gate fires before any node is touched") {
    auto nodes = cluster(2);
    // cost = E + 100 E/D = 10 + 100*10/20 = 60 > budget 59; the deadline is
    // also infeasible, but the budget verdict must win.
    Job job{1, 0.0, 1000, 20, 59};
    job.deadline = 5;  // estimate 10 > deadline 5: infeasible everywhere too
    const Decision d = schedule_libra(job, nodes, 0.0, libra_config(), kCapacity);
    CHECK(d.outcome == Outcome::RejectedBudget);
    CHECK(d.shortfall > 0.0);
    for (const NodeState& node : nodes) {
        CHECK(node.reservations().empty());
        CHECK(node.loadfree(0.0) == 1.0);
    }
}

TEST_CASE("libra: symmetric tie breaks to the lowest node id") {
    auto nodes = cluster(2);
    const Decision d =
        schedule_libra(job_with_share(1, 0.4), nodes, 0.0, libra_config(), kCapacity);
    REQUIRE(d.outcome == Outcome::Assigned);
    CHECK(d.node == 0);
    CHECK(d.projected_loadfree == Approx(0.6).margin(1e-12));
    CHECK(nodes[0].reserved_load() == Approx(0.4).margin(1e-12));
    CHECK(nodes[1].reserved_load() == 0.0);
}

TEST_CASE("libra: selection rule picks max vs min loadfree on the same fixture") {
    const Job candidate = job_with_share(9, 0.4);

    auto fixture = [] {
        auto nodes = cluster(2);
        occupy(nodes[0], 101, 0.5);  // loadfree 0.5
        occupy(nodes[1], 102, 0.1);  // loadfree 0.9
        return nodes;
    };

    SECTION("max-loadfree goes to the least loaded node") {
        auto nodes = fixture();
        PolicyConfig config = libra_config();
        config.selection_rule = SelectionRule::MaxLoadfree;
        const Decision d = schedule_libra(candidate, nodes, 0.0, config, kCapacity);
        REQUIRE(d.outcome == Outcome::Assigned);
        CHECK(d.node == 1);
        CHECK(d.projected_loadfree == Approx(0.5).margin(1e-12));
    }
    SECTION("min-loadfree goes to the fullest node that fits") {
        auto nodes = fixture();
        PolicyConfig config = libra_config();
        config.selection_rule = SelectionRule::MinLoadfree;
        const Decision d = schedule_libra(candidate, nodes, 0.0, config, kCapacity);
        REQUIRE(d.outcome == Outcome::Assigned);
        CHECK(d.node == 0);
        CHECK(d.projected_loadfree == Approx(0.1).margin(1e-12));
    }
}

TEST_CASE("libra: rejected_deadline implies every node rejected") {
    auto nodes = cluster(3);
    for (auto& node : nodes) occupy(node, 100 + node.node_id(), 0.8);
    const Job job = job_with_share(9, 0.3);
    const Decision d = schedule_libra(job, nodes, 0.0, libra_config(), kCapacity);
    CHECK(d.outcome == Outcome::RejectedDeadline);
    for (const NodeState& node : nodes)
        CHECK_FALSE(node.can_accept(job, 0.0, AllocationMode::ProportionalScaleup));
}

TEST_CASE("libra: admission safety against the pre-reservation snapshot") {
    auto nodes = cluster(2);
    occupy(nodes[0], 101, 0.3);
    const auto snapshot = nodes;  // before the decision
    const Job job = job_with_share(9, 0.5);
    const Decision d = schedule_libra(job, nodes, 0.0, libra_config(), kCapacity);
    REQUIRE(d.outcome == Outcome::Assigned);
    CHECK(snapshot[d.node].can_accept(job, 0.0, AllocationMode::ProportionalScaleup));
}

TEST_CASE("libra: decisions are deterministic") {
    const Job job = job_with_share(9, 0.5);
    for (int i = 0; i < 2; ++i) {
        auto nodes = cluster(3);
        occupy(nodes[1], 101, 0.1);
        const Decision d = schedule_libra(job, nodes, 0.0, libra_config(), kCapacity);
        CHECK(d.outcome == Outcome::Assigned);
        CHECK(d.node == 0);  // 0 and 2 tie at loadfree 1; lowest id wins
    }
}

TEST_CASE("fifo: empty cluster starts the job immediately") {
    std::vector<FifoNodeQueue> queues(2);
    const Job job{1, 0.0, 1000, 20, 1e9};  // estimate 10, deadline 20
    const Decision d = schedule_fifo(job, queues, 0.0, fifo_config(), kCapacity);
    REQUIRE(d.outcome == Outcome::Assigned);
    CHECK(d.node == 0);
    CHECK(queues[0].available_at == Approx(10.0));
}

TEST_CASE("fifo: queue-drain arithmetic rejects a late start") {
    std::vector<FifoNodeQueue> queues(1);
    queues[0].available_at = 100.0;  // busy until t=100
    const Job job{1, 0.0, 1000, 50, 1e9};  // estimate 10, absolute deadline 50
    const Decision d = schedule_fifo(job, queues, 0.0, fifo_config(), kCapacity);
    CHECK(d.outcome == Outcome::RejectedDeadline);
    CHECK(queues[0].available_at == 100.0);  // rejection books nothing
}

TEST_CASE("fifo: jobs stack in arrival order on the same node") {
    std::vector<FifoNodeQueue> queues(1);
    const Job first{1, 0.0, 1000, 100, 1e9};
    const Job second{2, 0.0, 2000, 100, 1e9};
    CHECK(schedule_fifo(first, queues, 0.0, fifo_config(), kCapacity).outcome ==
          Outcome::Assigned);
    CHECK(queues[0].available_at == Approx(10.0));
    CHECK(schedule_fifo(second, queues, 0.0, fifo_config(), kCapacity).outcome ==
          Outcome::Assigned);
    CHECK(queues[0].available_at == Approx(30.0));  // 10 + 20
}

TEST_CASE("fifo: picks the earliest-available node, ties to lowest id") {
    std::vector<FifoNodeQueue> queues(3);
    queues[0].available_at = 50.0;
    queues[1].available_at = 5.0;
    queues[2].available_at = 5.0;
    const Job job{1, 10.0, 1000, 200, 1e9};
    const Decision d = schedule_fifo(job, queues, 10.0, fifo_config(), kCapacity);
    REQUIRE(d.outcome == Outcome::Assigned);
    CHECK(d.node == 1);
    CHECK(queues[1].available_at == Approx(20.0));  // max(now, 5) + 10
}

TEST_CASE("fifo: budget gate is optional") {
    const Job pricey{1, 0.0, 1000, 2, 1e-3};  // cost 10 + 100*5 = 510 >> budget
    SECTION("gate on rejects on budget") {
        std::vector<FifoNodeQueue> queues(1);
        const Decision d = schedule_fifo(pricey, queues, 0.0, fifo_config(true), kCapacity);
        CHECK(d.outcome == Outcome::RejectedBudget);
    }
    SECTION("gate off falls through to the deadline test") {
        std::vector<FifoNodeQueue> queues(1);
        const Decision d = schedule_fifo(pricey, queues, 0.0, fifo_config(false), kCapacity);
        CHECK(d.outcome == Outcome::RejectedDeadline);  // estimate 10 > deadline 2
    }
}
