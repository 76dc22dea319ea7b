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

#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>

#include "libra/errors.hpp"

namespace libra {

using JobId = std::uint64_t;
using NodeId = std::uint32_t;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/// Share sums up to 1 + kShareEpsilon count as within capacity.
inline constexpr double kShareEpsilon = 1e-9;

/// Slack on time comparisons against analytically computed completion times.
inline constexpr double kTimeEpsilon = 1e-9;

/// Remaining work below this many MI counts as finished.
inline constexpr double kWorkEpsilon = 1e-6;

/// How surplus CPU beyond the jobs' minimum shares is handled on a node.
enum class AllocationMode {
    DeadlineExact,        ///< each job gets exactly its minimum share; slack idles
    ProportionalScaleup,  ///< slack redistributed proportional to minimum shares
    EqualQuantized,       ///< n running jobs get 1/n each (plain timesharing)
};

/// Which accepting node wins a multi-node admission query.
enum class SelectionRule {
    MaxLoadfree,  ///< least loaded node (most idle share left)
    MinLoadfree,  ///< most loaded node that still fits (best-fit packing)
};

/// One batch job as submitted: work amount plus the user's QoS terms.
/// `deadline` is relative to `arrival`; the standalone runtime E is derived
/// as length_mi / node capacity (homogeneous cluster).
struct Job {
    JobId id = 0;
    double arrival = 0.0;    // seconds
    double length_mi = 0.0;  // million instructions
    double deadline = 0.0;   // seconds, relative to arrival
    double budget = 0.0;     // currency units
};

/// Standalone runtime E in seconds on one dedicated node.
[[nodiscard]] inline double estimate(const Job& job, double capacity_mips) {
    return job.length_mi / capacity_mips;
}

/// Deadline converted to simulation time: arrival + deadline.
[[nodiscard]] inline double absolute_deadline(const Job& job) {
    return job.arrival + job.deadline;
}

/// Throws ValidationError naming the first violated field.
inline void validate_job(const Job& job) {
    if (!(job.length_mi > 0.0)) throw ValidationError("length_mi", job.length_mi);
    if (!(job.deadline > 0.0)) throw ValidationError("deadline", job.deadline);
    if (!(job.budget >= 0.0)) throw ValidationError("budget", job.budget);
    if (!(job.arrival >= 0.0)) throw ValidationError("arrival", job.arrival);
}

/// Execution progress of one dispatched job.
struct JobProgress {
    double cpu_done = 0.0;      // CPU-seconds consumed
    double wall_elapsed = 0.0;  // wall-clock seconds since dispatch
    double share = 0.0;         // currently allocated CPU fraction, in [0, 1]
};

/// Identical-node cluster description.
struct ClusterConfig {
    std::uint32_t node_count = 1;
    double node_capacity_mips = 100.0;
};

inline void validate_cluster(const ClusterConfig& cluster) {
    if (cluster.node_count < 1) throw ConfigError("cluster: node_count must be >= 1");
    if (!(cluster.node_capacity_mips > 0.0))
        throw ConfigError("cluster: node_capacity_mips must be > 0");
}

/// Coefficients of the cost function alpha*E + beta*E/D.
struct PricingParams {
    double alpha = 1.0;   // currency per CPU-second of work
    double beta = 100.0;  // currency weight on urgency (E/D)
};

inline void validate_pricing(const PricingParams& params) {
    if (!(params.alpha >= 0.0)) throw ValidationError("alpha", params.alpha);
    if (!(params.beta >= 0.0)) throw ValidationError("beta", params.beta);
    if (params.alpha == 0.0 && params.beta == 0.0)
        throw ValidationError("alpha", 0.0);  // degenerate pricing: both coefficients zero
}

enum class JobPhase { Pending, Running, Completed, Rejected };

enum class RejectReason { Budget, Deadline };

/// Lifecycle tracker enforcing pending -> running -> completed and
/// pending -> rejected as the only legal paths.
class JobState {
public:
    [[nodiscard]] JobPhase phase() const noexcept { return phase_; }
    [[nodiscard]] NodeId node() const noexcept { return node_; }
    [[nodiscard]] double completed_at() const noexcept { return completed_at_; }
    [[nodiscard]] RejectReason reject_reason() const noexcept { return reason_; }

    void to_running(NodeId node) {
        if (phase_ != JobPhase::Pending)
            throw InternalError("job state: running is only reachable from pending");
        phase_ = JobPhase::Running;
        node_ = node;
    }

    void to_completed(double at) {
        if (phase_ != JobPhase::Running)
            throw InternalError("job state: completed is only reachable from running");
        phase_ = JobPhase::Completed;
        completed_at_ = at;
    }

    void to_rejected(RejectReason reason) {
        if (phase_ != JobPhase::Pending)
            throw InternalError("job state: rejected is only reachable from pending");
        phase_ = JobPhase::Rejected;
        reason_ = reason;
    }

    [[nodiscard]] bool terminal() const noexcept {
        return phase_ == JobPhase::Completed || phase_ == JobPhase::Rejected;
    }

private:
    JobPhase phase_ = JobPhase::Pending;
    NodeId node_ = kNoNode;
    double completed_at_ = std::numeric_limits<double>::quiet_NaN();
    RejectReason reason_ = RejectReason::Deadline;
};

// Enum <-> name mappings used by the CLI and the report writers.

[[nodiscard]] constexpr std::string_view to_string(AllocationMode mode) noexcept {
    switch (mode) {
        case AllocationMode::DeadlineExact: return "deadline-exact";
        case AllocationMode::ProportionalScaleup: return "proportional-scaleup";
        case AllocationMode::EqualQuantized: return "equal-quantized";
    }
    return "?";
}

[[nodiscard]] constexpr std::string_view to_string(SelectionRule rule) noexcept {
    switch (rule) {
        case SelectionRule::MaxLoadfree: return "max-loadfree";
        case SelectionRule::MinLoadfree: return "min-loadfree";
    }
    return "?";
}

[[nodiscard]] inline std::optional<AllocationMode> parse_allocation_mode(std::string_view s) {
    if (s == "deadline-exact") return AllocationMode::DeadlineExact;
    if (s == "proportional-scaleup") return AllocationMode::ProportionalScaleup;
    if (s == "equal-quantized") return AllocationMode::EqualQuantized;
    return std::nullopt;
}

[[nodiscard]] inline std::optional<SelectionRule> parse_selection_rule(std::string_view s) {
    if (s == "max-loadfree") return SelectionRule::MaxLoadfree;
    if (s == "min-loadfree") return SelectionRule::MinLoadfree;
    return std::nullopt;
}

}  // namespace libra
