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

#include "sisproof/combinatorics.hpp"

#include <array>
#include <stdexcept>
#include <utility>

namespace sis {

namespace {

constexpr int kMaxBinomialN = 62;   // C(62, 31) still fits in int64_t
constexpr int kMaxArchitectureN = 30;

// Pascal's triangle: addition only, so no intermediate overflow for n <= 62.
const std::array<std::array<std::int64_t, kMaxBinomialN + 1>,
                 kMaxBinomialN + 1>&
pascal_table() {
    static const auto table = [] {
        std::array<std::array<std::int64_t, kMaxBinomialN + 1>,
                   kMaxBinomialN + 1>
            t{};
        for (int n = 0; n <= kMaxBinomialN; ++n) {
            t[n][0] = 1;
            for (int k = 1; k <= n; ++k) {
                t[n][k] = t[n - 1][k - 1] + (k <= n - 1 ? t[n - 1][k] : 0);
            }
        }
        return t;
    }();
    return table;
}

}  // namespace

std::int64_t binomial(int n, int k) {
    if (n < 0 || k < 0) {
        throw std::invalid_argument("binomial arguments must be nonnegative");
    }
    if (k > n) {
        throw std::invalid_argument("binomial: k exceeds n");
    }
    if (n > kMaxBinomialN) {
        throw std::invalid_argument(
            "binomial: n beyond exact 64-bit range (max 62)");
    }
    return pascal_table()[n][k];
}

SCoefficients::SCoefficients(int m, int n_components,
                             std::vector<std::int64_t> values)
    : m_(m), n_(n_components), values_(std::move(values)) {}

std::int64_t SCoefficients::at(int x) const {
    if (x < m_ || x > n_) {
        throw std::out_of_range("S(M, N, x): x outside [M, N]");
    }
    return values_[static_cast<std::size_t>(x - m_)];
}

SCoefficients s_coefficients(int m, int n_components) {
    if (m < 1 || n_components < 1 || m > n_components) {
        throw std::invalid_argument("invalid MooN architecture");
    }
    if (n_components > kMaxArchitectureN) {
        throw std::invalid_argument(
            "architecture too large for exact coefficients (max N = 30)");
    }
    std::vector<std::int64_t> values;
    values.reserve(static_cast<std::size_t>(n_components - m + 1));
    for (int x = m; x <= n_components; ++x) {
        // |C(N,x) C(x,k)| <= C(30,15)^2 ~ 2.4e16, and at most 30 summands,
        // so the exact sum stays well inside int64_t for N <= 30.
        std::int64_t s = 0;
        const std::int64_t outer = binomial(n_components, x);
        for (int k = m; k <= x; ++k) {
            const std::int64_t term = outer * binomial(x, k);
            s += ((x - k) % 2 == 0) ? term : -term;
        }
        values.push_back(s);
    }
    return SCoefficients(m, n_components, std::move(values));
}

}  // namespace sis
