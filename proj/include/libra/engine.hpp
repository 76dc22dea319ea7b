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

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "libra/node_ledger.hpp"
#include "libra/policy.hpp"
#include "libra/pricing.hpp"
#include "libra/types.hpp"

namespace libra {

/// Kinds ordered by processing priority at equal timestamps: completions
/// first, so a freed node is visible to a job arriving at the same instant.
enum class EventKind : int { Completion = 0, Arrival = 1, Horizon = 2 };

/// A timestamped simulation occurrence. `sequence` breaks remaining ties
/// (insertion order), keeping the event stream fully deterministic.
struct Event {
    double time = 0.0;
    EventKind kind = EventKind::Horizon;
    std::uint64_t sequence = 0;
    JobId job = 0;
    NodeId node = kNoNode;
    std::uint64_t node_version = 0;  // completion events go stale when it moves
};

struct EventAfter {
    bool operator()(const Event& a, const Event& b) const {
        if (a.time != b.time) return a.time > b.time;
        if (a.kind != b.kind) return static_cast<int>(a.kind) > static_cast<int>(b.kind);
        return a.sequence > b.sequence;
    }
};

/// Earliest analytic completion on the node under the given shares:
/// now + remaining / (share * capacity), minimized over running jobs.
/// Jobs whose work already reached zero complete at `now`. Returns nullopt
/// for an idle node (or one where every candidate holds a zero share).
[[nodiscard]] inline std::optional<std::pair<JobId, double>> next_completion_time(
    const NodeState& node, const ShareAssignment& assignment, double now) {
    std::optional<std::pair<JobId, double>> best;
    for (const auto& rj : node.running()) {
        const double remaining = rj.remaining_mi(node.capacity_mips());
        double t;
        if (remaining <= kWorkEpsilon) {
            t = now;
        } else {
            const double share = assignment.share_of(rj.job.id);
            if (share <= 0.0) continue;
            t = now + remaining / (share * node.capacity_mips());
        }
        if (!best || t < best->second) best = {rj.job.id, t};
    }
    return best;
}

/// Sum of allocated shares on the node; the quantity behind the
/// utilization series and the share-sum safety audit.
[[nodiscard]] inline double utilization_sample(const NodeState& node) {
    return node.assignment().sum();
}

/// Everything recorded about one job across a run.
struct JobRecord {
    Job job;
    JobState state;
    Decision decision;
    CostQuote quote;
    double dispatch_time = std::numeric_limits<double>::quiet_NaN();
    double completion_time = std::numeric_limits<double>::quiet_NaN();
    double absolute_deadline = 0.0;
    bool met_deadline = false;
};

struct Aggregates {
    std::uint32_t total_jobs = 0;
    std::uint32_t accepted = 0;
    std::uint32_t rejected_budget = 0;
    std::uint32_t rejected_deadline = 0;
    std::uint32_t completed_by_deadline = 0;
};

struct UtilizationSample {
    double time = 0.0;
    NodeId node = 0;
    double utilization = 0.0;
};

struct SimResult {
    std::vector<JobRecord> jobs;  // in trace order
    Aggregates totals;
    std::vector<UtilizationSample> utilization;  // per node, at each event time
};

struct RunOptions {
    /// Multiplier on true job length relative to the submitted one. Admission
    /// trusts the submitted length; execution bookkeeping sees the truth.
    /// At 1.0 (exact estimates) the deadline guarantee is audited and any
    /// miss aborts the run as an internal invariant failure.
    double estimate_error = 1.0;
};

namespace detail {

/// Single-threaded event loop over one (trace, cluster, policy) triple.
class SimulationEngine {
public:
    SimulationEngine(const std::vector<Job>& trace, const ClusterConfig& cluster,
                     const PolicyConfig& policy, const RunOptions& options)
        : trace_(trace), cluster_(cluster), policy_(policy), options_(options) {}

    SimResult run() {
        validate();
        setup();
        while (!events_.empty()) {
            Event event = events_.top();
            events_.pop();
            if (event.kind == EventKind::Completion &&
                event.node_version != node_versions_[event.node])
                continue;  // superseded by a reallocation
            if (event.time < now_ - kTimeEpsilon)
                throw InternalError("engine: event time moved backwards");
            advance_all(event.time);
            switch (event.kind) {
                case EventKind::Arrival: process_arrival(event); break;
                case EventKind::Completion: process_completion(event); break;
                case EventKind::Horizon: break;
            }
            sample_all();
        }
        audit();
        return std::move(result_);
    }

private:
    void validate() const {
        validate_cluster(cluster_);
        validate_pricing(policy_.pricing);
        if (!(options_.estimate_error > 0.0))
            throw ConfigError("run: estimate_error must be > 0");
        double prev = -std::numeric_limits<double>::infinity();
        std::unordered_set<JobId> ids;
        for (const Job& job : trace_) {
            validate_job(job);
            if (job.arrival < prev) throw ConfigError("run: trace not sorted by arrival");
            prev = job.arrival;
            if (!ids.insert(job.id).second)
                throw ConfigError("run: duplicate job id " + std::to_string(job.id));
        }
    }

    void setup() {
        nodes_.reserve(cluster_.node_count);
        for (NodeId i = 0; i < cluster_.node_count; ++i)
            nodes_.emplace_back(i, cluster_.node_capacity_mips);
        node_versions_.assign(cluster_.node_count, 0);
        if (policy_.kind == PolicyKind::Fifo) fifo_.resize(cluster_.node_count);

        result_.jobs.reserve(trace_.size());
        result_.totals.total_jobs = static_cast<std::uint32_t>(trace_.size());
        for (const Job& job : trace_) {
            JobRecord record;
            record.job = job;
            record.absolute_deadline = absolute_deadline(job);
            record_index_[job.id] = result_.jobs.size();
            result_.jobs.push_back(std::move(record));
            events_.push(Event{job.arrival, EventKind::Arrival, sequence_++, job.id});
        }
        if (!trace_.empty())
            events_.push(Event{trace_.back().arrival, EventKind::Horizon, sequence_++});
    }

    void advance_all(double t) {
        if (t <= now_) return;  // same instant
        for (NodeState& node : nodes_) node.advance(t - now_);
        now_ = t;
    }

    void sample_all() {
        for (const NodeState& node : nodes_) {
            const double u = utilization_sample(node);
            if (u > 1.0 + kShareEpsilon)
                throw InternalError("engine: node " + std::to_string(node.node_id()) +
                                    " allocated " + std::to_string(u) + " of its CPU");
            result_.utilization.push_back(UtilizationSample{now_, node.node_id(), u});
        }
    }

    [[nodiscard]] bool strict() const { return options_.estimate_error == 1.0; }

    [[nodiscard]] double actual_length(const Job& job) const {
        return job.length_mi * options_.estimate_error;
    }

    JobRecord& record_of(JobId id) { return result_.jobs[record_index_.at(id)]; }

    void refresh_completion(NodeId node_id) {
        ++node_versions_[node_id];
        const NodeState& node = nodes_[node_id];
        if (const auto next = next_completion_time(node, node.assignment(), now_))
            events_.push(Event{next->second, EventKind::Completion, sequence_++, next->first,
                               node_id, node_versions_[node_id]});
    }

    void dispatch_full_share(NodeId node_id, const Job& job) {
        NodeState& node = nodes_[node_id];
        node.reserve(job, now_, strict());
        node.dispatch(job, now_, actual_length(job));
        node.assign_full_share(now_);
        JobRecord& record = record_of(job.id);
        record.dispatch_time = now_;
        record.state.to_running(node_id);
        refresh_completion(node_id);
    }

    void process_arrival(const Event& event) {
        JobRecord& record = record_of(event.job);
        const Job& job = record.job;
        record.quote = admit_budget(job, cluster_.node_capacity_mips, policy_.pricing);

        if (policy_.kind == PolicyKind::Libra) {
            record.decision =
                schedule_libra(job, nodes_, now_, policy_, cluster_.node_capacity_mips);
            if (record.decision.outcome == Outcome::Assigned) {
                const NodeId node_id = record.decision.node;
                nodes_[node_id].dispatch(job, now_, actual_length(job));
                record.dispatch_time = now_;
                record.state.to_running(node_id);
                nodes_[node_id].reallocate(now_, policy_.allocation_mode, strict());
                refresh_completion(node_id);
            }
        } else {
            record.decision =
                schedule_fifo(job, fifo_, now_, policy_, cluster_.node_capacity_mips);
            if (record.decision.outcome == Outcome::Assigned) {
                const NodeId node_id = record.decision.node;
                if (nodes_[node_id].running().empty()) {
                    dispatch_full_share(node_id, job);
                } else {
                    fifo_[node_id].waiting.push_back(job);
                }
            }
        }

        switch (record.decision.outcome) {
            case Outcome::Assigned:
                ++result_.totals.accepted;
                break;
            case Outcome::RejectedBudget:
                ++result_.totals.rejected_budget;
                record.state.to_rejected(RejectReason::Budget);
                break;
            case Outcome::RejectedDeadline:
                ++result_.totals.rejected_deadline;
                record.state.to_rejected(RejectReason::Deadline);
                break;
        }
    }

    void process_completion(const Event& event) {
        const NodeId node_id = event.node;
        nodes_[node_id].complete(event.job, now_);

        JobRecord& record = record_of(event.job);
        record.completion_time = now_;
        record.state.to_completed(now_);
        record.met_deadline = now_ <= record.absolute_deadline + kTimeEpsilon;
        if (record.met_deadline) ++result_.totals.completed_by_deadline;

        NodeState& node = nodes_[node_id];
        if (policy_.kind == PolicyKind::Libra) {
            if (node.running().empty())
                node.clear_assignment(now_);
            else
                node.reallocate(now_, policy_.allocation_mode, strict());
            refresh_completion(node_id);
        } else {
            if (!fifo_[node_id].waiting.empty()) {
                const Job next = fifo_[node_id].waiting.front();
                fifo_[node_id].waiting.pop_front();
                dispatch_full_share(node_id, next);
            } else {
                node.clear_assignment(now_);
                refresh_completion(node_id);
            }
        }
    }

    void audit() const {
        const Aggregates& totals = result_.totals;
        if (totals.accepted + totals.rejected_budget + totals.rejected_deadline !=
            totals.total_jobs)
            throw InternalError("audit: decision counts do not add up");
        if (totals.completed_by_deadline > totals.accepted)
            throw InternalError("audit: more deadline hits than accepted jobs");
        for (const JobRecord& record : result_.jobs) {
            if (!record.state.terminal())
                throw InternalError("audit: job " + std::to_string(record.job.id) +
                                    " is not in a terminal state");
            if (strict() && record.decision.outcome == Outcome::Assigned &&
                !record.met_deadline)
                throw InternalError("audit: job " + std::to_string(record.job.id) +
                                    " missed its deadline despite exact estimates");
        }
    }

    const std::vector<Job>& trace_;
    ClusterConfig cluster_;
    PolicyConfig policy_;
    RunOptions options_;

    std::vector<NodeState> nodes_;
    std::vector<std::uint64_t> node_versions_;
    std::vector<FifoNodeQueue> fifo_;
    std::priority_queue<Event, std::vector<Event>, EventAfter> events_;
    std::uint64_t sequence_ = 0;
    double now_ = 0.0;

    SimResult result_;
    std::unordered_map<JobId, std::size_t> record_index_;
};

}  // namespace detail

/// Runs one simulation to completion. Pure in its inputs: the same trace,
/// cluster, and policy produce the same SimResult, bit for bit.
[[nodiscard]] inline SimResult run(const std::vector<Job>& trace, const ClusterConfig& cluster,
                                   const PolicyConfig& policy, const RunOptions& options = {}) {
    return detail::SimulationEngine(trace, cluster, policy, options).run();
}

}  // namespace libra
