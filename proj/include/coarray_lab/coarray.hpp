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

#ifndef COARRAY_LAB_COARRAY_HPP
#define COARRAY_LAB_COARRAY_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "coarray_lab/geometry.hpp"
#include "coarray_lab/rational.hpp"

namespace calab {

enum class CoArrayKind { sum, difference };

/// Virtual array positions with their multiplicities. Multiplicities count
/// ordered (tx, rx) pairs for the sum kind and ordered (d1, d2) pairs for the
/// difference kind, so the weight at lag 0 of a difference co-array is N.
struct CoArraySummary {
    CoArrayKind kind;
    std::vector<Position> positions;          // strictly increasing
    std::vector<std::int64_t> multiplicities; // aligned with positions
    bool contiguous = false;
    std::int64_t contiguous_prefix_len = 0; // largest L with [0 : L-1] covered

    std::size_t size() const { return positions.size(); }
};

namespace detail {

inline CoArraySummary summarize(CoArrayKind kind, const std::map<Position, std::int64_t> &hist) {
    CoArraySummary s;
    s.kind = kind;
    s.positions.reserve(hist.size());
    s.multiplicities.reserve(hist.size());
    for (const auto &[p, m] : hist) {
        s.positions.push_back(p);
        s.multiplicities.push_back(m);
    }
    // contiguous <=> positions form the unbroken interval [min : max]
    s.contiguous = static_cast<Position>(s.positions.size()) ==
                   s.positions.back() - s.positions.front() + 1;
    std::int64_t len = 0;
    auto it = std::lower_bound(s.positions.begin(), s.positions.end(), Position{0});
    while (it != s.positions.end() && *it == len) {
        ++len;
        ++it;
    }
    s.contiguous_prefix_len = len;
    return s;
}

} // namespace detail

/// Sum co-array of a Tx/Rx pair: all pairwise position sums with ordered-pair
/// multiplicities.
inline CoArraySummary sum_coarray(const ActiveArrayPair &pair) {
    std::map<Position, std::int64_t> hist;
    for (Position t : pair.tx.positions())
        for (Position r : pair.rx.positions())
            ++hist[t + r];
    return detail::summarize(CoArrayKind::sum, hist);
}

/// Difference co-array of a single configuration, symmetric about 0.
inline CoArraySummary difference_coarray(const ArrayConfig &config) {
    std::map<Position, std::int64_t> hist;
    for (Position a : config.positions())
        for (Position b : config.positions())
            ++hist[a - b];
    return detail::summarize(CoArrayKind::difference, hist);
}

/// Redundancy of a pair with contiguous sum co-array:
///   R = |D|(|D|+1) / (2 |D+D|)        for fully overlapping arrays,
///   R = |Dtx||Drx| / |Dtx+Drx|        otherwise.
/// R = 1 means every virtual sensor is hit exactly once (up to the shared
/// tx/rx pair symmetry in the fully overlapping case).
inline Rational redundancy(const ActiveArrayPair &pair) {
    const CoArraySummary sum = sum_coarray(pair);
    if (!sum.contiguous)
        throw unsupported_configuration("redundancy: sum co-array is not contiguous");
    const auto n_sigma = static_cast<std::int64_t>(sum.size());
    if (pair.tx == pair.rx) {
        const auto n = static_cast<std::int64_t>(pair.tx.size());
        return Rational(n * (n + 1), 2 * n_sigma);
    }
    const auto nt = static_cast<std::int64_t>(pair.tx.size());
    const auto nr = static_cast<std::int64_t>(pair.rx.size());
    return Rational(nt * nr, n_sigma);
}

/// Evaluate R(N) = N(N+1) / (2 |D+D|) for a fully overlapping family of
/// configurations indexed by sensor count. Each family member must have a
/// contiguous sum co-array.
inline std::vector<std::pair<std::size_t, Rational>>
asymptotic_redundancy_estimate(const std::function<ArrayConfig(std::size_t)> &family,
                               const std::vector<std::size_t> &sizes) {
    std::vector<std::pair<std::size_t, Rational>> out;
    out.reserve(sizes.size());
    for (std::size_t n : sizes) {
        const ArrayConfig d = family(n);
        out.emplace_back(n, redundancy(ActiveArrayPair(d)));
    }
    return out;
}

/// Binary redundancy pattern: the one-to-many map from unique sum co-array
/// positions (rows) to physical Tx-Rx sensor pairs (columns). Column i,
/// 0-based, pairs tx index floor(i / N_rx) with rx index i mod N_rx; this is
/// the column-major vec() ordering of an N_rx x N_tx weight matrix. Each
/// column has exactly one nonzero, so the pattern is stored as one row index
/// per column.
struct RedundancyPattern {
    std::size_t n_tx = 0;
    std::size_t n_rx = 0;
    std::vector<Position> coarray;            // d_sigma, ascending
    std::vector<std::size_t> row_of_col;      // size n_tx * n_rx
    std::vector<std::int64_t> multiplicities; // row sums (upsilon_sigma)

    std::size_t rows() const { return coarray.size(); }
    std::size_t cols() const { return n_tx * n_rx; }

    /// w_sigma = Upsilon * v for a length n_tx*n_rx vector.
    template <typename Vec> Vec apply(const Vec &v) const {
        Vec out = Vec::Zero(static_cast<Eigen::Index>(rows()));
        for (std::size_t i = 0; i < row_of_col.size(); ++i)
            out[static_cast<Eigen::Index>(row_of_col[i])] += v[static_cast<Eigen::Index>(i)];
        return out;
    }

    /// v = Upsilon^T * w for a length N_sigma vector.
    template <typename Vec> Vec apply_transpose(const Vec &w) const {
        Vec out(static_cast<Eigen::Index>(cols()));
        for (std::size_t i = 0; i < row_of_col.size(); ++i)
            out[static_cast<Eigen::Index>(i)] = w[static_cast<Eigen::Index>(row_of_col[i])];
        return out;
    }

    Eigen::MatrixXd dense() const {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows()),
                                                  static_cast<Eigen::Index>(cols()));
        for (std::size_t i = 0; i < row_of_col.size(); ++i)
            m(static_cast<Eigen::Index>(row_of_col[i]), static_cast<Eigen::Index>(i)) = 1.0;
        return m;
    }
};

/// Build the redundancy pattern of a pair.
inline RedundancyPattern redundancy_pattern(const ActiveArrayPair &pair) {
    RedundancyPattern up;
    up.n_tx = pair.tx.size();
    up.n_rx = pair.rx.size();
    const CoArraySummary sum = sum_coarray(pair);
    up.coarray = sum.positions;
    up.multiplicities = sum.multiplicities;
    up.row_of_col.resize(up.n_tx * up.n_rx);
    for (std::size_t c = 0; c < up.n_tx; ++c)
        for (std::size_t r = 0; r < up.n_rx; ++r) {
            const Position d = pair.tx.positions()[c] + pair.rx.positions()[r];
            const auto it = std::lower_bound(up.coarray.begin(), up.coarray.end(), d);
            up.row_of_col[c * up.n_rx + r] = static_cast<std::size_t>(it - up.coarray.begin());
        }
    return up;
}

} // namespace calab

#endif
