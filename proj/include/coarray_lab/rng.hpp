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

#ifndef COARRAY_LAB_RNG_HPP
#define COARRAY_LAB_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace calab {

/// SplitMix64 step, used only to derive well-separated substream seeds.
inline std::uint64_t splitmix64_next(std::uint64_t &state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Independent engine for substream `stream` of a master seed. Components
/// and batches that must draw independent noise each get their own stream
/// index, so parallel evaluation order cannot change the results.
inline std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream = 0) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64_next(s);
    s ^= 0x6a09e667f3bcc909ull + stream * 0x9e3779b97f4a7c15ull;
    std::uint64_t b = splitmix64_next(s);
    return std::mt19937_64(a ^ (b + 0x2545f4914f6cdd1dull * (stream + 1)));
}

/// Standard normal variates via Box-Muller on explicit 53-bit uniforms.
/// std::normal_distribution is implementation-defined, so results would not
/// reproduce across standard libraries; this sampler is pinned down by the
/// engine's bit stream alone.
class NormalSampler {
  public:
    explicit NormalSampler(std::mt19937_64 engine) : eng_(std::move(engine)) {}
    NormalSampler(std::uint64_t seed, std::uint64_t stream) : eng_(make_engine(seed, stream)) {}

    double operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1] so the log is finite; u2 in [0, 1)
        const double u1 = (static_cast<double>(eng_() >> 11) + 1.0) * 0x1p-53;
        const double u2 = static_cast<double>(eng_() >> 11) * 0x1p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * M_PI * u2;
        spare_ = r * std::sin(phi);
        have_spare_ = true;
        return r * std::cos(phi);
    }

    /// Circularly symmetric complex normal with E|z|^2 = variance.
    std::complex<double> complex_normal(double variance = 1.0) {
        const double s = std::sqrt(variance / 2.0);
        const double re = s * (*this)();
        const double im = s * (*this)();
        return {re, im};
    }

  private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace calab

#endif
