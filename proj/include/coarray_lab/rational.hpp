// SPDX-License-Identifier: Apache-2.0
//
// coarray-lab: sparse sensor array design and Tx-Rx beampattern synthesis
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef COARRAY_LAB_RATIONAL_HPP
#define COARRAY_LAB_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <string>

#include "coarray_lab/errors.hpp"

namespace calab {

/// Exact rational number. Redundancy values are returned as rationals so
/// tests can compare them without floating-point tolerances.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (den == 0)
            throw invalid_parameter("rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    bool operator==(const Rational &o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational &o) const { return !(*this == o); }

    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

} // namespace calab

#endif
