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

#include <cstddef>
#include <vector>

namespace libra::test {

/// One job as the oracle sees it: released at dispatch, due at its absolute
/// deadline, carrying a fixed amount of work.
struct OracleJob {
    double release = 0.0;   // dispatch time
    double deadline = 0.0;  // absolute
    double work_mi = 0.0;
};

/// Processor-demand feasibility check for a fluid (arbitrarily divisible)
/// single-node schedule: over every window [release_i, deadline_j], the work
/// of jobs fully contained in the window must fit in capacity * width.
///
/// Deliberately brute force and independent of the scheduler: it never looks
/// at shares or allocations, only at what was admitted.
inline bool fluid_feasible(const std::vector<OracleJob>& jobs, double capacity_mips) {
    for (const OracleJob& lo : jobs) {
        for (const OracleJob& hi : jobs) {
            const double t1 = lo.release;
            const double t2 = hi.deadline;
            if (t2 <= t1) continue;
            double contained = 0.0;
            for (const OracleJob& j : jobs)
                if (j.release >= t1 && j.deadline <= t2) contained += j.work_mi;
            const double budget = capacity_mips * (t2 - t1);
            if (contained > budget * (1.0 + 1e-9) + 1e-6) return false;
        }
    }
    return true;
}

}  // namespace libra::test
