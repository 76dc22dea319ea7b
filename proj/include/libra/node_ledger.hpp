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
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "libra/types.hpp"

namespace libra {

/// Minimum CPU fraction that finishes `remaining_work_mi` exactly at the
/// deadline: (remaining / capacity) / time_to_deadline.
///
/// Returns 0 when no work remains and +inf when work remains but the deadline
/// has passed; infeasibility is a value, not an error, so admission can
/// reject uniformly.
[[nodiscard]] inline double min_share(double remaining_work_mi, double capacity_mips,
                                      double time_to_deadline_s) {
    if (remaining_work_mi <= 0.0) return 0.0;
    if (time_to_deadline_s <= 0.0) return std::numeric_limits<double>::infinity();
    return (remaining_work_mi / capacity_mips) / time_to_deadline_s;
}

/// One dispatched job and its progress on a node.
///
/// actual_length_mi equals the stated length unless the run models wrong
/// user estimates; the node's bookkeeping always sees true progress.
struct RunningJob {
    Job job;
    double actual_length_mi = 0.0;
    double dispatched_at = 0.0;
    JobProgress progress;

    [[nodiscard]] double remaining_mi(double capacity_mips) const {
        return actual_length_mi - progress.cpu_done * capacity_mips;
    }
};

/// Capacity promised to an admitted-but-not-dispatched job.
struct Reservation {
    JobId job_id = 0;
    double share = 0.0;
};

/// The share each running job holds, frozen at one instant. Shares stay
/// constant until the next assignment, so progress between events is linear.
struct ShareAssignment {
    enum class Mode { DeadlineExact, ProportionalScaleup, EqualQuantized, FullShare };

    std::vector<std::pair<JobId, double>> shares;  // in running order
    Mode mode = Mode::DeadlineExact;
    double at = 0.0;

    [[nodiscard]] double share_of(JobId id) const {
        for (const auto& [job_id, share] : shares)
            if (job_id == id) return share;
        return 0.0;
    }

    [[nodiscard]] double sum() const {
        double total = 0.0;
        for (const auto& [job_id, share] : shares) total += share;
        return total;
    }
};

[[nodiscard]] constexpr ShareAssignment::Mode to_share_mode(AllocationMode mode) noexcept {
    switch (mode) {
        case AllocationMode::DeadlineExact: return ShareAssignment::Mode::DeadlineExact;
        case AllocationMode::ProportionalScaleup:
            return ShareAssignment::Mode::ProportionalScaleup;
        case AllocationMode::EqualQuantized: return ShareAssignment::Mode::EqualQuantized;
    }
    return ShareAssignment::Mode::DeadlineExact;
}

/// Per-node bookkeeping: running jobs with their minimum shares, reserved
/// capacity for admitted jobs, and the current share assignment.
///
/// Invariant at every event time: sum of running jobs' minimum shares plus
/// reserved_load() <= 1 + kShareEpsilon. Admission (can_accept/reserve)
/// maintains it; reallocate() re-checks it.
class NodeState {
public:
    NodeState(NodeId id, double capacity_mips) : id_(id), capacity_(capacity_mips) {}

    [[nodiscard]] NodeId node_id() const noexcept { return id_; }
    [[nodiscard]] double capacity_mips() const noexcept { return capacity_; }
    [[nodiscard]] const std::vector<RunningJob>& running() const noexcept { return running_; }
    [[nodiscard]] const std::vector<Reservation>& reservations() const noexcept {
        return reservations_;
    }
    [[nodiscard]] const ShareAssignment& assignment() const noexcept { return assignment_; }

    [[nodiscard]] double reserved_load() const {
        double total = 0.0;
        for (const auto& r : reservations_) total += r.share;
        return total;
    }

    /// Minimum share of one running job at `now`.
    [[nodiscard]] double min_share_of(const RunningJob& rj, double now) const {
        return min_share(rj.remaining_mi(capacity_), capacity_,
                         absolute_deadline(rj.job) - now);
    }

    [[nodiscard]] double min_share_sum(double now) const {
        double total = 0.0;
        for (const auto& rj : running_) total += min_share_of(rj, now);
        return total;
    }

    /// Idle CPU share left after the running jobs' minimum shares and the
    /// reserved load. Negative values are returned as-is; they can only
    /// appear when runtime estimates were violated, and the engine's audit
    /// flags them rather than clamping here.
    [[nodiscard]] double loadfree(double now) const {
        return 1.0 - min_share_sum(now) - reserved_load();
    }

    /// Admission query: would this job fit, adding its minimum share at `now`
    /// to everything already promised? Returns the projected loadfree on
    /// acceptance, nullopt on rejection.
    ///
    /// Under equal-quantized allocation the equal split must also cover every
    /// job's minimum, so the query additionally requires
    /// 1/(running + reserved + 1) >= each minimum share involved.
    [[nodiscard]] std::optional<double> can_accept(const Job& job, double now,
                                                   AllocationMode mode) const {
        const double candidate =
            min_share(job.length_mi, capacity_, absolute_deadline(job) - now);
        const double total = candidate + min_share_sum(now) + reserved_load();
        bool fits = total <= 1.0 + kShareEpsilon;
        if (fits && mode == AllocationMode::EqualQuantized) {
            const std::size_t n = running_.size() + reservations_.size() + 1;
            const double slot = 1.0 / static_cast<double>(n);
            fits = candidate <= slot + kShareEpsilon;
            for (const auto& rj : running_)
                fits = fits && min_share_of(rj, now) <= slot + kShareEpsilon;
            for (const auto& r : reservations_)
                fits = fits && r.share <= slot + kShareEpsilon;
        }
        if (!fits) return std::nullopt;
        return 1.0 - total;
    }

    /// Records the job's minimum share as promised capacity. One reserve per
    /// admission; released only by the matching dispatch. `enforce_capacity`
    /// is dropped only for exploratory runs with wrong estimates, where a
    /// queued job can legitimately start later than its admission projected.
    void reserve(const Job& job, double now, bool enforce_capacity = true) {
        const double share =
            min_share(job.length_mi, capacity_, absolute_deadline(job) - now);
        const double total = share + min_share_sum(now) + reserved_load();
        if (enforce_capacity && !(total <= 1.0 + kShareEpsilon))
            throw LedgerError("reservation-overflow: node " + std::to_string(id_) +
                              " would be promised " + std::to_string(total) +
                              " of its CPU");
        reservations_.push_back(Reservation{job.id, share});
    }

    /// Moves a reserved job into the running set with zero progress and
    /// releases exactly the share that was reserved for it. The caller is
    /// expected to reallocate immediately afterwards.
    void dispatch(const Job& job, double now,
                  std::optional<double> actual_length_mi = std::nullopt) {
        const auto it = std::find_if(reservations_.begin(), reservations_.end(),
                                     [&](const Reservation& r) { return r.job_id == job.id; });
        if (it == reservations_.end())
            throw LedgerError("missing-reservation: job " + std::to_string(job.id) +
                              " was never reserved on node " + std::to_string(id_));
        reservations_.erase(it);
        running_.push_back(
            RunningJob{job, actual_length_mi.value_or(job.length_mi), now, JobProgress{}});
    }

    /// Recomputes every running job's share from its current minimum share.
    ///
    ///   deadline-exact:       share_i = min_share_i (slack idles)
    ///   proportional-scaleup: share_i = min_share_i / sum(min_share), the
    ///                         work-conserving split; never below min_share_i
    ///   equal-quantized:      share_i = 1/n; throws quantized-infeasible if
    ///                         the split breaks some job's minimum
    ///
    /// With `strict` (the default, valid when estimates are exact) an
    /// infeasible job or an over-full share sum throws InternalError. The
    /// lenient form caps each demand at 1 and rescales an over-full sum, so
    /// exploratory runs with wrong estimates degrade instead of aborting.
    ShareAssignment reallocate(double now, AllocationMode mode, bool strict = true) {
        ShareAssignment next;
        next.mode = to_share_mode(mode);
        next.at = now;
        if (running_.empty()) {
            set_assignment(std::move(next));
            return assignment_;
        }

        std::vector<double> demand;
        demand.reserve(running_.size());
        for (const auto& rj : running_) {
            double ms = min_share_of(rj, now);
            if (std::isinf(ms)) {
                if (strict)
                    throw InternalError(
                        "reallocate: job " + std::to_string(rj.job.id) + " on node " +
                        std::to_string(id_) +
                        " is past its deadline with work remaining");
                ms = 1.0;  // overdue job runs as fast as a whole node allows
            }
            demand.push_back(std::min(ms, 1.0));
        }
        double total = 0.0;
        for (double d : demand) total += d;

        next.shares.reserve(running_.size());
        switch (mode) {
            case AllocationMode::DeadlineExact: {
                double scale = 1.0;
                if (total > 1.0 + kShareEpsilon) {
                    if (strict)
                        throw InternalError("reallocate: node " + std::to_string(id_) +
                                            " minimum shares sum to " + std::to_string(total));
                    scale = 1.0 / total;
                }
                for (std::size_t i = 0; i < running_.size(); ++i)
                    next.shares.emplace_back(running_[i].job.id, demand[i] * scale);
                break;
            }
            case AllocationMode::ProportionalScaleup: {
                if (strict && total > 1.0 + kShareEpsilon)
                    throw InternalError("reallocate: node " + std::to_string(id_) +
                                        " minimum shares sum to " + std::to_string(total));
                // Scale up to the whole node, never down: a boundary admission
                // with total in (1, 1 + eps] keeps plain minimum shares so no
                // job receives less than it needs.
                double factor = 0.0;
                if (total > 0.0) {
                    if (total <= 1.0) factor = 1.0 / total;
                    else if (total <= 1.0 + kShareEpsilon) factor = 1.0;
                    else factor = 1.0 / total;  // lenient overload: fair squeeze
                }
                for (std::size_t i = 0; i < running_.size(); ++i)
                    next.shares.emplace_back(running_[i].job.id, demand[i] * factor);
                break;
            }
            case AllocationMode::EqualQuantized: {
                const double slot = 1.0 / static_cast<double>(running_.size());
                if (strict) {
                    for (std::size_t i = 0; i < running_.size(); ++i)
                        if (demand[i] > slot + kShareEpsilon)
                            throw LedgerError(
                                "quantized-infeasible: equal split " + std::to_string(slot) +
                                " breaks job " + std::to_string(running_[i].job.id) +
                                "'s minimum share " + std::to_string(demand[i]));
                }
                for (const auto& rj : running_) next.shares.emplace_back(rj.job.id, slot);
                break;
            }
        }

        if (next.sum() > 1.0 + kShareEpsilon)
            throw InternalError("reallocate: assignment on node " + std::to_string(id_) +
                                " sums to " + std::to_string(next.sum()));
        set_assignment(std::move(next));
        return assignment_;
    }

    /// FIFO path: the single running job gets the whole CPU.
    ShareAssignment assign_full_share(double now) {
        if (running_.size() != 1)
            throw InternalError("assign_full_share: node " + std::to_string(id_) + " has " +
                                std::to_string(running_.size()) + " running jobs");
        ShareAssignment next;
        next.mode = ShareAssignment::Mode::FullShare;
        next.at = now;
        next.shares.emplace_back(running_.front().job.id, 1.0);
        set_assignment(std::move(next));
        return assignment_;
    }

    /// Drops the assignment on an idle node.
    void clear_assignment(double now) {
        if (!running_.empty())
            throw InternalError("clear_assignment: node " + std::to_string(id_) +
                                " still has running jobs");
        ShareAssignment next;
        next.at = now;
        set_assignment(std::move(next));
    }

    /// Advances every running job by dt under the given shares:
    /// cpu_done += share * dt, wall_elapsed += dt. Total delivered work is
    /// bounded by capacity * dt because shares sum to at most 1.
    void advance(double dt, const ShareAssignment& assignment) {
        if (dt < 0.0) throw InternalError("advance: negative dt");
        if (dt == 0.0) return;
        for (auto& rj : running_) {
            const double share = assignment.share_of(rj.job.id);
            rj.progress.cpu_done += share * dt;
            rj.progress.wall_elapsed += dt;
            rj.progress.share = share;
        }
    }

    void advance(double dt) { advance(dt, assignment_); }

    /// Removes a job whose work just reached zero. Progress is snapped to the
    /// exact total so float residue from the analytic completion time does
    /// not leak into delivered-work accounting.
    RunningJob complete(JobId id, double now) {
        const auto it = std::find_if(running_.begin(), running_.end(),
                                     [&](const RunningJob& rj) { return rj.job.id == id; });
        if (it == running_.end())
            throw InternalError("complete: job " + std::to_string(id) +
                                " is not running on node " + std::to_string(id_));
        const double residue = it->remaining_mi(capacity_);
        const double tol = kWorkEpsilon + 1e-9 * it->actual_length_mi;
        if (residue > tol || residue < -tol)
            throw InternalError("complete: job " + std::to_string(id) + " has " +
                                std::to_string(residue) + " MI outstanding at completion");
        it->progress.cpu_done = it->actual_length_mi / capacity_;
        it->progress.wall_elapsed = now - it->dispatched_at;
        RunningJob finished = std::move(*it);
        running_.erase(it);
        return finished;
    }

private:
    void set_assignment(ShareAssignment next) {
        assignment_ = std::move(next);
        for (auto& rj : running_) rj.progress.share = assignment_.share_of(rj.job.id);
    }

    NodeId id_;
    double capacity_;
    std::vector<RunningJob> running_;
    std::vector<Reservation> reservations_;
    ShareAssignment assignment_;
};

}  // namespace libra
