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

#include <cstdint>
#include <vector>

namespace sis {

/// Exact C(n, k) in 64-bit integers. Supported for 0 <= k <= n <= 62;
/// beyond that the exact value may not fit and an error is thrown.
std::int64_t binomial(int n, int k);

/// The alternating availability-expansion coefficients
///   S(M, N, x) = sum_{k=M..x} C(N,x) C(x,k) (-1)^{x-k},  x = M..N,
/// kept as exact integers: they feed alternating sums where any rounding
/// of a coefficient is catastrophic. Supported for N <= 30.
class SCoefficients {
public:
    SCoefficients(int m, int n_components, std::vector<std::int64_t> values);

    int m() const { return m_; }
    int n_components() const { return n_; }
    const std::vector<std::int64_t>& values() const { return values_; }

    /// S(M, N, x) for x in [M, N].
    std::int64_t at(int x) const;

private:
    int m_;
    int n_;
    std::vector<std::int64_t> values_;
};

SCoefficients s_coefficients(int m, int n_components);

}  // namespace sis
