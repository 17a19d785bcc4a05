/*
   Copyright 2026 the sisproof authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>

namespace sis {

/// Philox2x64-10 counter-based generator (Salmon et al., SC 2011,
/// "Parallel random numbers: as easy as 1, 2, 3").
///
/// One stream per (key, stream-id) pair; the draw sequence depends only on
/// that pair, never on execution order, which is what makes parallel Monte
/// Carlo runs bit-reproducible. The constants and round count are fixed
/// and must not change across releases.
class PhiloxStream {
public:
    PhiloxStream(std::uint64_t key, std::uint64_t stream)
        : key_(key), stream_(stream) {}

    std::uint64_t next_u64() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        auto [first, second] = block(key_, stream_, block_index_++);
        spare_ = second;
        have_spare_ = true;
        return first;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Exponential variate; never fires (+inf) when the rate is zero.
    double next_exponential(double rate) {
        if (rate <= 0.0) return std::numeric_limits<double>::infinity();
        return -std::log1p(-next_unit()) / rate;
    }

private:
    static constexpr std::uint64_t kMultiplier = 0xD2B74407B1CE6E93ull;
    static constexpr std::uint64_t kWeyl = 0x9E3779B97F4A7C15ull;

    static std::pair<std::uint64_t, std::uint64_t> block(std::uint64_t key,
                                                         std::uint64_t c0,
                                                         std::uint64_t c1) {
        for (int round = 0; round < 10; ++round) {
            const unsigned __int128 product =
                static_cast<unsigned __int128>(kMultiplier) * c0;
            const std::uint64_t hi = static_cast<std::uint64_t>(product >> 64);
            const std::uint64_t lo = static_cast<std::uint64_t>(product);
            c0 = hi ^ key ^ c1;
            c1 = lo;
            key += kWeyl;
        }
        return {c0, c1};
    }

    std::uint64_t key_;
    std::uint64_t stream_;
    std::uint64_t block_index_ = 0;
    std::uint64_t spare_ = 0;
    bool have_spare_ = false;
};

}  // namespace sis
