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

#ifndef COARRAY_LAB_GEOMETRY_HPP
#define COARRAY_LAB_GEOMETRY_HPP

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "coarray_lab/errors.hpp"

namespace calab {

using Position = std::int64_t; // half-wavelength grid index

/// Sensor positions on the half-wavelength grid. Values are kept exact
/// (integers); wavelength scaling only enters at manifold evaluation.
///
/// Invariants: non-empty, strictly increasing, first element 0. Any input is
/// normalized on construction: sorted, duplicates merged, shifted so the
/// first sensor sits at the origin.
class ArrayConfig {
  public:
    ArrayConfig() = default;

    explicit ArrayConfig(std::vector<Position> positions) : pos_(std::move(positions)) {
        if (pos_.empty())
            throw invalid_parameter("ArrayConfig: empty position set");
        std::sort(pos_.begin(), pos_.end());
        pos_.erase(std::unique(pos_.begin(), pos_.end()), pos_.end());
        const Position origin = pos_.front();
        if (origin != 0)
            for (auto &p : pos_)
                p -= origin;
    }

    ArrayConfig(std::initializer_list<Position> positions)
        : ArrayConfig(std::vector<Position>(positions)) {}

    const std::vector<Position> &positions() const { return pos_; }
    std::size_t size() const { return pos_.size(); }
    Position aperture() const { return pos_.back(); }
    bool contains(Position p) const {
        return std::binary_search(pos_.begin(), pos_.end(), p);
    }

    /// True when the array equals its own mirror image, S = max S - S.
    bool is_symmetric() const {
        const Position m = aperture();
        for (std::size_t i = 0, j = pos_.size(); i < j; ++i)
            if (pos_[i] != m - pos_[pos_.size() - 1 - i])
                return false;
        return true;
    }

    bool operator==(const ArrayConfig &o) const { return pos_ == o.pos_; }
    bool operator!=(const ArrayConfig &o) const { return !(*this == o); }
    bool operator<(const ArrayConfig &o) const { return pos_ < o.pos_; }

  private:
    std::vector<Position> pos_;
};

/// Tx/Rx array pair, both normalized to start at 0.
struct ActiveArrayPair {
    ArrayConfig tx;
    ArrayConfig rx;

    ActiveArrayPair(ArrayConfig tx_cfg, ArrayConfig rx_cfg)
        : tx(std::move(tx_cfg)), rx(std::move(rx_cfg)) {}

    /// Convenience for fully overlapping (monostatic) geometries.
    explicit ActiveArrayPair(const ArrayConfig &shared) : tx(shared), rx(shared) {}
};

enum class OverlapCategory { fully_overlapping, partially_overlapping, non_overlapping };

struct OverlapInfo {
    OverlapCategory category;
    std::size_t union_size;
    std::size_t intersection_size;
};

inline const char *to_string(OverlapCategory c) {
    switch (c) {
    case OverlapCategory::fully_overlapping: return "fully_overlapping";
    case OverlapCategory::partially_overlapping: return "partially_overlapping";
    default: return "non_overlapping";
    }
}

/// Classify the Tx/Rx overlap of a normalized pair. Both arrays share at
/// least the origin, so the intersection is never empty. Fully overlapping
/// takes precedence over non-overlapping for the degenerate single-sensor
/// pair {0},{0}.
inline OverlapInfo overlap_category(const ActiveArrayPair &pair) {
    std::vector<Position> inter, uni;
    std::set_intersection(pair.tx.positions().begin(), pair.tx.positions().end(),
                          pair.rx.positions().begin(), pair.rx.positions().end(),
                          std::back_inserter(inter));
    std::set_union(pair.tx.positions().begin(), pair.tx.positions().end(),
                   pair.rx.positions().begin(), pair.rx.positions().end(),
                   std::back_inserter(uni));
    OverlapCategory cat;
    if (pair.tx == pair.rx)
        cat = OverlapCategory::fully_overlapping;
    else if (inter.size() == 1) // normalized pairs always share {0}
        cat = OverlapCategory::non_overlapping;
    else
        cat = OverlapCategory::partially_overlapping;
    return {cat, uni.size(), inter.size()};
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

/// Uniform linear array {0, 1, ..., n-1}.
inline ArrayConfig ula(std::size_t n) {
    if (n == 0)
        throw invalid_parameter("ula: n must be >= 1");
    std::vector<Position> p(n);
    for (std::size_t i = 0; i < n; ++i)
        p[i] = static_cast<Position>(i);
    return ArrayConfig(std::move(p));
}

/// Nested array: dense segment [0 : n1-1] followed by the sparse segment
/// {0, n1+1, ..., (n2-1)(n1+1)} shifted by n1. Either parameter may be zero
/// as long as the union is non-empty; overlaps are merged.
inline ArrayConfig nested(std::size_t n1, std::size_t n2) {
    if (n1 + n2 == 0)
        throw invalid_parameter("nested: n1 + n2 must be >= 1");
    std::vector<Position> p;
    p.reserve(n1 + n2);
    for (std::size_t i = 0; i < n1; ++i)
        p.push_back(static_cast<Position>(i));
    const Position step = static_cast<Position>(n1) + 1;
    for (std::size_t i = 0; i < n2; ++i)
        p.push_back(static_cast<Position>(n1) + static_cast<Position>(i) * step);
    return ArrayConfig(std::move(p));
}

/// Symmetric array from a generator: S(G, l) = G u (max G - G + l).
/// Any offset l >= 0 is accepted; whether the sum co-array stays contiguous
/// is a queryable property of the result, not a constructor constraint.
inline ArrayConfig symmetric_from_generator(const ArrayConfig &g, Position offset) {
    if (offset < 0)
        throw invalid_parameter("symmetric_from_generator: offset must be >= 0");
    std::vector<Position> p(g.positions());
    const Position m = g.aperture();
    for (Position d : g.positions())
        p.push_back(m - d + offset);
    return ArrayConfig(std::move(p));
}

/// Concatenated nested array: the symmetric NA with offset l = n1,
/// D1 u (D2 + n1) u (D1 + (n1+1) n2). Symmetric with contiguous sum and
/// difference co-arrays for n1, n2 >= 1.
inline ArrayConfig cna(std::size_t n1, std::size_t n2) {
    if (n1 + n2 == 0)
        throw invalid_parameter("cna: n1 + n2 must be >= 1");
    return symmetric_from_generator(nested(n1, n2), static_cast<Position>(n1));
}

/// Parameters of the closed-form minimum-redundancy symmetric NA.
struct SymmetricNaParams {
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    Position offset = 0;    // equals n1
    int alpha = 0;          // in {-1, 0, 1, 2}
    std::size_t n_total = 0;
};

/// Closed-form minimum-redundancy symmetric nested array with exactly n
/// sensors: n = 4m + k, alpha = (k+1) mod 4 - 1, n1 = (n-alpha)/4,
/// n2 = (n+alpha)/2, offset = n1.
inline std::pair<SymmetricNaParams, ArrayConfig> symmetric_na_min_redundancy(std::size_t n) {
    if (n < 2)
        throw invalid_parameter("symmetric_na_min_redundancy: n must be >= 2");
    const int k = static_cast<int>(n % 4);
    const int alpha = (k + 1) % 4 - 1;
    const auto sn = static_cast<std::int64_t>(n);
    const std::size_t n1 = static_cast<std::size_t>((sn - alpha) / 4);
    const std::size_t n2 = static_cast<std::size_t>((sn + alpha) / 2);
    SymmetricNaParams params{n1, n2, static_cast<Position>(n1), alpha, n};
    return {params, cna(n1, n2)};
}

/// Non-redundant non-overlapping pair: tx = {0, n_rx, ..., (n_tx-1) n_rx},
/// rx = {0, ..., n_rx-1}. The sum co-array is exactly [0 : n_tx*n_rx - 1].
inline ActiveArrayPair nonoverlapping_mra(std::size_t n_tx, std::size_t n_rx) {
    if (n_tx == 0 || n_rx == 0)
        throw invalid_parameter("nonoverlapping_mra: counts must be >= 1");
    std::vector<Position> tx(n_tx);
    for (std::size_t i = 0; i < n_tx; ++i)
        tx[i] = static_cast<Position>(i) * static_cast<Position>(n_rx);
    return ActiveArrayPair(ArrayConfig(std::move(tx)), ula(n_rx));
}

} // namespace calab

#endif
