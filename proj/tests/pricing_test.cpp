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

#include <cmath>
#include <stdexcept>

#include "libra/pricing.hpp"
#include "libra/rng.hpp"

using namespace libra;

TEST_CASE("cost evaluates alpha*E + beta*E/D") {
    CHECK(cost(10, 20, {1, 0}) == 10.0);
    CHECK(cost(10, 20, {1, 100}) == 60.0);  // 10 + 100 * 0.5
    CHECK(cost(50, 50, {0, 1}) == 1.0);
}

TEST_CASE("cost rejects a zero deadline") {
    CHECK_THROWS_AS(cost(10, 0, {1, 100}), std::domain_error);
}

TEST_CASE("budget gate boundary is inclusive") {
    const CostQuote at = admit_budget(10, 20, 60, {1, 100});
    CHECK(at.accepted);
    CHECK(at.cost == 60.0);
    CHECK(at.shortfall == 0.0);

    const CostQuote under = admit_budget(10, 20, 59, {1, 100});
    CHECK_FALSE(under.accepted);
    CHECK(under.shortfall == 1.0);
}

TEST_CASE("admit_budget is pure") {
    const Job job{7, 3, 4321, 77, 500};
    const CostQuote a = admit_budget(job, 100.0, {1, 100});
    const CostQuote b = admit_budget(job, 100.0, {1, 100});
    CHECK(a.cost == b.cost);
    CHECK(a.accepted == b.accepted);
    CHECK(a.shortfall == b.shortfall);
}

TEST_CASE("cost decreases in deadline and scales in estimate") {
    Rng rng(4242);
    for (int i = 0; i < 5000; ++i) {
        const double e = rng.uniform(0.1, 500.0);
        const double d = rng.uniform(0.1, 2000.0);
        const double alpha = rng.uniform(0.0, 10.0);
        const double beta = rng.uniform(0.001, 500.0);  // beta > 0 for strictness
        const PricingParams p{alpha, beta};

        CHECK(cost(e, 2 * d, p) < cost(e, d, p));
        CHECK(cost(2 * e, d, p) == Approx(2 * cost(e, d, p)).epsilon(1e-12));
        CHECK(cost(e, d, p) > 0.0);
    }
}

TEST_CASE("quote accepts exactly at its own cost") {
    Rng rng(11);
    for (int i = 0; i < 1000; ++i) {
        const double e = rng.uniform(0.1, 500.0);
        const double d = rng.uniform(0.1, 2000.0);
        const PricingParams p{rng.uniform(0.0, 5.0), rng.uniform(0.001, 200.0)};
        const double c = cost(e, d, p);
        CHECK(admit_budget(e, d, c, p).accepted);
    }
}
