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

#include <algorithm>
#include <cmath>

namespace sis {

/// Neumaier-compensated accumulator for sums with heavy cancellation.
class CompensatedSum {
public:
    void add(double value) {
        const double t = sum_ + value;
        if (std::abs(sum_) >= std::abs(value)) {
            comp_ += (sum_ - t) + value;
        } else {
            comp_ += (value - t) + sum_;
        }
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// (1 - e^{-u}) / u for u >= 0, stable down to u = 0 (limit 1).
/// Small arguments use the Taylor series; otherwise expm1 keeps the
/// subtraction exact.
inline double one_minus_exp_over(double u) {
    if (u < 1e-5) {
        return 1.0 - u / 2.0 + u * u / 6.0 - u * u * u / 24.0;
    }
    return -std::expm1(-u) / u;
}

/// Clamp a computed probability into [0, 1].
inline double clamp_unit(double p) {
    return std::clamp(p, 0.0, 1.0);
}

}  // namespace sis
