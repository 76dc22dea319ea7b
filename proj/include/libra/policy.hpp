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

#include <deque>
#include <optional>
#include <string_view>
#include <vector>

#include "libra/node_ledger.hpp"
#include "libra/pricing.hpp"
#include "libra/types.hpp"

namespace libra {

enum class PolicyKind { Libra, Fifo };

[[nodiscard]] constexpr std::string_view to_string(PolicyKind kind) noexcept {
    switch (kind) {
        case PolicyKind::Libra: return "libra";
        case PolicyKind::Fifo: return "fifo";
    }
    return "?";
}

[[nodiscard]] inline std::optional<PolicyKind> parse_policy_kind(std::string_view s) {
    if (s == "libra") return PolicyKind::Libra;
    if (s == "fifo") return PolicyKind::Fifo;
    return std::nullopt;
}

/// Fully determines scheduling behavior for a given workload and cluster.
struct PolicyConfig {
    PolicyKind kind = PolicyKind::Libra;
    PricingParams pricing{};
    SelectionRule selection_rule = SelectionRule::MaxLoadfree;               // libra
    AllocationMode allocation_mode = AllocationMode::ProportionalScaleup;    // libra
    bool apply_budget_gate = true;                                           // fifo
};

enum class Outcome { Assigned, RejectedBudget, RejectedDeadline };

[[nodiscard]] constexpr std::string_view to_string(Outcome outcome) noexcept {
    switch (outcome) {
        case Outcome::Assigned: return "assigned";
        case Outcome::RejectedBudget: return "rejected_budget";
        case Outcome::RejectedDeadline: return "rejected_deadline";
    }
    return "?";
}

/// The scheduler's verdict for one job at submission time.
///
/// rejected_budget can only come from the pricing gate, before any node is
/// queried; rejected_deadline only after every node answered reject.
struct Decision {
    JobId job_id = 0;
    Outcome outcome = Outcome::RejectedDeadline;
    double decided_at = 0.0;
    NodeId node = kNoNode;             // Assigned
    double projected_loadfree = 0.0;   // Assigned
    double shortfall = 0.0;            // RejectedBudget
};

/// Libra admission: budget gate first, then a feasibility query against every
/// node. The winning node (per selection rule, ties to the lowest node id)
/// gets a reservation for the job's minimum share.
inline Decision schedule_libra(const Job& job, std::vector<NodeState>& nodes, double now,
                               const PolicyConfig& config, double capacity_mips) {
    Decision decision;
    decision.job_id = job.id;
    decision.decided_at = now;

    const CostQuote quote = admit_budget(job, capacity_mips, config.pricing);
    if (!quote.accepted) {
        decision.outcome = Outcome::RejectedBudget;
        decision.shortfall = quote.shortfall;
        return decision;
    }

    // Query all nodes, then pick; the paper's server collects every answer
    // before choosing, and the exhaustive-search invariant is observable.
    bool found = false;
    std::size_t best = 0;
    double best_loadfree = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto projected = nodes[i].can_accept(job, now, config.allocation_mode);
        if (!projected) continue;
        const bool better =
            !found || (config.selection_rule == SelectionRule::MaxLoadfree
                           ? *projected > best_loadfree
                           : *projected < best_loadfree);
        if (better) {
            found = true;
            best = i;
            best_loadfree = *projected;
        }
    }
    if (!found) {
        decision.outcome = Outcome::RejectedDeadline;
        return decision;
    }

    nodes[best].reserve(job, now);
    decision.outcome = Outcome::Assigned;
    decision.node = nodes[best].node_id();
    decision.projected_loadfree = best_loadfree;
    return decision;
}

/// FIFO bookkeeping for one node: when its committed work drains, and the
/// jobs waiting behind the running one.
struct FifoNodeQueue {
    double available_at = 0.0;
    std::deque<Job> waiting;
};

/// FIFO baseline: one job per node at full share, started in arrival order.
///
/// A job goes to the node whose committed work drains earliest (ties to the
/// lowest node id) and is accepted iff it would still finish by its absolute
/// deadline from that projected start. Estimates are exact, so available_at
/// arithmetic is exact too and no later event can invalidate an acceptance.
inline Decision schedule_fifo(const Job& job, std::vector<FifoNodeQueue>& queues, double now,
                              const PolicyConfig& config, double capacity_mips) {
    Decision decision;
    decision.job_id = job.id;
    decision.decided_at = now;

    if (config.apply_budget_gate) {
        const CostQuote quote = admit_budget(job, capacity_mips, config.pricing);
        if (!quote.accepted) {
            decision.outcome = Outcome::RejectedBudget;
            decision.shortfall = quote.shortfall;
            return decision;
        }
    }

    std::size_t best = 0;
    double best_start = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < queues.size(); ++i) {
        const double start = std::max(now, queues[i].available_at);
        if (start < best_start) {
            best_start = start;
            best = i;
        }
    }

    const double runtime = estimate(job, capacity_mips);
    if (queues.empty() || best_start + runtime > absolute_deadline(job)) {
        decision.outcome = Outcome::RejectedDeadline;
        return decision;
    }

    queues[best].available_at = best_start + runtime;
    decision.outcome = Outcome::Assigned;
    decision.node = static_cast<NodeId>(best);
    decision.projected_loadfree = 0.0;  // full-share execution
    return decision;
}

}  // namespace libra
