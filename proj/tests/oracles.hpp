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
//
// Brute-force reference implementations the tests compare against. These are
// deliberately written as plainly as possible, independent of the library's
// data structures and algorithms.

#ifndef COARRAY_LAB_TESTS_ORACLES_HPP
#define COARRAY_LAB_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Pos = std::int64_t;

inline std::map<Pos, std::int64_t> sum_histogram(const std::vector<Pos> &a,
                                                 const std::vector<Pos> &b) {
    std::map<Pos, std::int64_t> h;
    for (Pos x : a)
        for (Pos y : b)
            ++h[x + y];
    return h;
}

inline std::map<Pos, std::int64_t> difference_histogram(const std::vector<Pos> &a) {
    std::map<Pos, std::int64_t> h;
    for (Pos x : a)
        for (Pos y : a)
            ++h[x - y];
    return h;
}

inline bool covers_exact_range(const std::map<Pos, std::int64_t> &h, Pos lo, Pos hi) {
    if (h.empty())
        return false;
    if (h.begin()->first != lo || h.rbegin()->first != hi)
        return false;
    return static_cast<Pos>(h.size()) == hi - lo + 1;
}

/// Exhaustive minimum-redundancy search for a shared tx/rx array of n
/// sensors: scan apertures downward, enumerate every placement of the
/// interior sensors, keep configurations whose pairwise sums cover
/// [0 : 2 aperture]. Returns the optimal aperture and the mirror-canonical
/// solutions (config lexicographically <= its reversal-complement), sorted.
inline std::pair<Pos, std::vector<std::vector<Pos>>> exhaustive_mra(int n) {
    if (n == 1)
        return {0, {{0}}};
    const Pos ub = (static_cast<Pos>(n) * (n + 1) / 2 - 1) / 2;
    for (Pos aperture = ub; aperture >= 1; --aperture) {
        if (aperture - 1 < n - 2)
            break; // not enough interior slots; optimum was found earlier
        std::vector<std::vector<Pos>> found;
        std::vector<int> pick(static_cast<std::size_t>(aperture - 1), 0);
        std::fill(pick.begin(), pick.begin() + (n - 2), 1);
        std::sort(pick.begin(), pick.end(), std::greater<int>());
        // iterate all combinations of n-2 interior positions from [1 : aperture-1]
        do {
            std::vector<Pos> cfg{0};
            for (std::size_t i = 0; i < pick.size(); ++i)
                if (pick[i])
                    cfg.push_back(static_cast<Pos>(i) + 1);
            cfg.push_back(aperture);
            if (covers_exact_range(sum_histogram(cfg, cfg), 0, 2 * aperture))
                found.push_back(cfg);
        } while (std::prev_permutation(pick.begin(), pick.end()));
        if (!found.empty()) {
            std::vector<std::vector<Pos>> canon;
            for (const auto &cfg : found) {
                std::vector<Pos> mirror;
                for (auto it = cfg.rbegin(); it != cfg.rend(); ++it)
                    mirror.push_back(aperture - *it);
                if (cfg <= mirror)
                    canon.push_back(cfg);
            }
            std::sort(canon.begin(), canon.end());
            return {aperture, canon};
        }
    }
    return {0, {}};
}

/// |sin(n x / 2) / sin(x / 2)| with x = pi u: the magnitude of the uniform
/// n-element pattern as a function of u = sin(theta).
inline double dirichlet_magnitude(int n, double u) {
    const double x = M_PI * u;
    if (std::abs(std::sin(x / 2)) < 1e-12)
        return static_cast<double>(n);
    return std::abs(std::sin(n * x / 2) / std::sin(x / 2));
}

/// Small deterministic helper for test draws.
class Draw {
  public:
    explicit Draw(std::uint64_t seed) : eng_(seed) {}

    std::int64_t upto(std::int64_t n) { return static_cast<std::int64_t>(eng_() % static_cast<std::uint64_t>(n)); }

    double unit() { return static_cast<double>(eng_() >> 11) * 0x1p-53; }

    /// Random sorted positions starting at 0 with the given count and
    /// maximum aperture.
    std::vector<Pos> positions(std::size_t count, Pos max_aperture) {
        std::set<Pos> s{0};
        while (s.size() < count)
            s.insert(1 + upto(max_aperture));
        return {s.begin(), s.end()};
    }

  private:
    std::mt19937_64 eng_;
};

} // namespace oracle

#endif
