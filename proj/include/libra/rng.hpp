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
#include <random>

namespace libra {

/// Seedable random source with a pinned, portable stream.
///
/// The engine is mt19937_64, whose output sequence is fully specified by the
/// C++ standard, so the raw stream is identical on every conforming
/// implementation. Standard-library *distributions* are not specified, so the
/// uniform mapping is done here by hand:
///
///   u = (next() >> 11) * 2^-53        -- u in [0, 1), 53 random bits
///   uniform(lo, hi) = lo + u * (hi - lo)
///
/// The same seed therefore yields the same draws everywhere, which is what
/// makes generated traces reproducible across machines and languages.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Next raw 64-bit word of the mt19937_64 stream.
    [[nodiscard]] std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 bits of randomness.
    [[nodiscard]] double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi). Requires lo <= hi; lo == hi returns lo.
    [[nodiscard]] double uniform(double lo, double hi) {
        return lo + next_unit() * (hi - lo);
    }

    /// Uniform integer in [lo, hi] via scaled unit draw (one word consumed).
    [[nodiscard]] std::uint64_t uniform_index(std::uint64_t lo, std::uint64_t hi) {
        const double u = next_unit();
        return lo + static_cast<std::uint64_t>(u * static_cast<double>(hi - lo + 1));
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace libra
