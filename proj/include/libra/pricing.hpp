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

#include <stdexcept>

#include "libra/types.hpp"

namespace libra {

/// Result of the budget gate for one job.
struct CostQuote {
    double cost = 0.0;
    bool accepted = false;
    double shortfall = 0.0;  // cost - budget when rejected, else 0
};

/// Cost of running a job: alpha*E + beta*E/D.
///
/// The first term charges for the cluster time used; the second prices
/// urgency, so a longer deadline means a cheaper job. Strictly increasing
/// in E, strictly decreasing in D when beta > 0.
[[nodiscard]] inline double cost(double estimate_s, double deadline_s,
                                 const PricingParams& params) {
    if (deadline_s == 0.0) throw std::domain_error("cost: deadline must be nonzero");
    return params.alpha * estimate_s + params.beta * (estimate_s / deadline_s);
}

/// Budget gate. Accepts iff cost <= budget (boundary inclusive).
[[nodiscard]] inline CostQuote admit_budget(double estimate_s, double deadline_s,
                                            double budget, const PricingParams& params) {
    const double c = cost(estimate_s, deadline_s, params);
    const bool accepted = c <= budget;
    return CostQuote{c, accepted, accepted ? 0.0 : c - budget};
}

[[nodiscard]] inline CostQuote admit_budget(const Job& job, double capacity_mips,
                                            const PricingParams& params) {
    return admit_budget(estimate(job, capacity_mips), job.deadline, job.budget, params);
}

}  // namespace libra
