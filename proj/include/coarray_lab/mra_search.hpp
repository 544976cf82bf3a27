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

#ifndef COARRAY_LAB_MRA_SEARCH_HPP
#define COARRAY_LAB_MRA_SEARCH_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "coarray_lab/coarray.hpp"
#include "coarray_lab/geometry.hpp"

namespace calab {

struct SearchStats {
    std::int64_t nodes = 0;
    double wall_ms = 0.0;
};

/// Hard limits for the combinatorial searches. A search that runs out of
/// budget reports complete = false on its solution instead of throwing; the
/// partial solution set is still a valid lower bound.
struct SearchBudget {
    std::int64_t max_nodes = 100'000'000;
    double max_seconds = 60.0;
};

/// Result of a minimum-redundancy search. For the shared tx/rx problem the
/// optima are in `configs`, reduced to mirror-canonical representatives
/// (config lexicographically <= its reversal-complement). For the two-array
/// problem the optima are in `pairs`, with both (tx, rx) orientations kept.
struct MraSolution {
    std::size_t n_sensors = 0;
    Position aperture = 0;        // largest physical sensor position
    std::int64_t coarray_size = 0; // contiguous sum co-array [0 : size-1]
    std::vector<ArrayConfig> configs;
    std::vector<ActiveArrayPair> pairs;
    bool complete = true;
    SearchStats stats;
};

struct CertifyResult {
    bool ok = true;
    std::optional<Position> witness; // first uncovered virtual position
};

namespace detail {

using clock = std::chrono::steady_clock;

// Depth-first search for n-element position sets D with 0 = min D whose
// pairwise sums cover the unbroken range [0 : 2 max D], maximizing max D.
// Positions are placed in increasing order. Two prunes keep the tree small:
// the next position can exceed the currently covered prefix by at most one
// (a larger choice strands an uncovered sum forever), and the number of
// sums still creatable from the remaining placements must reach the target
// coverage. Ties with the incumbent are never pruned, so all optima survive.
class fully_overlapping_dfs {
  public:
    fully_overlapping_dfs(int n, std::int64_t max_nodes, clock::time_point deadline)
        : n_(n), ub_(n <= 1 ? 0 : (n * (n + 1) / 2 - 1) / 2), max_nodes_(max_nodes),
          deadline_(deadline), counts_(static_cast<std::size_t>(2 * ub_ + 2), 0) {
        placed_.reserve(static_cast<std::size_t>(n));
    }

    // Run from a frontier prefix (first element must be 0).
    void run(const std::vector<int> &prefix) {
        placed_.clear();
        std::fill(counts_.begin(), counts_.end(), 0);
        int distinct = 0;
        int covered = -1;
        for (int q : prefix) {
            const auto state = add(q, distinct, covered);
            distinct = state.first;
            covered = state.second;
        }
        dfs(static_cast<int>(prefix.size()), placed_.back(), covered, distinct);
    }

    // Enumerate all prefixes of the given length in DFS order without
    // descending further. Used to build a deterministic work list.
    void enumerate_prefixes(int length, std::vector<std::vector<int>> &out) {
        placed_.clear();
        std::fill(counts_.begin(), counts_.end(), 0);
        int distinct = 0;
        int covered = -1;
        const auto state = add(0, distinct, covered);
        expand(1, 0, state.second, state.first, length, out);
    }

    Position best() const { return best_; }
    const std::vector<std::vector<int>> &solutions() const { return sols_; }
    std::int64_t nodes() const { return nodes_; }
    bool exhausted() const { return exhausted_; }

  private:
    std::pair<int, int> add(int q, int distinct, int covered) {
        for (int p : placed_) {
            if (counts_[static_cast<std::size_t>(p + q)]++ == 0)
                ++distinct;
        }
        if (counts_[static_cast<std::size_t>(2 * q)]++ == 0)
            ++distinct;
        placed_.push_back(q);
        while (counts_[static_cast<std::size_t>(covered + 1)] > 0)
            ++covered;
        return {distinct, covered};
    }

    void remove(int q) {
        placed_.pop_back();
        for (int p : placed_)
            --counts_[static_cast<std::size_t>(p + q)];
        --counts_[static_cast<std::size_t>(2 * q)];
    }

    bool out_of_budget() {
        if (nodes_ >= max_nodes_)
            return true;
        if ((nodes_ & 0xfff) == 0 && clock::now() > deadline_)
            return true;
        return false;
    }

    void dfs(int j, int m, int covered, int distinct) {
        ++nodes_;
        if (exhausted_ || (exhausted_ = out_of_budget()))
            return;
        if (j == n_) {
            if (covered >= 2 * m) {
                if (m > best_) {
                    best_ = m;
                    sols_.clear();
                }
                if (m == best_)
                    sols_.push_back(placed_);
            }
            return;
        }
        const std::int64_t r = n_ - j;
        const std::int64_t reachable = distinct + r * j + r * (r + 1) / 2;
        if ((reachable - 1) / 2 < best_)
            return; // cannot beat or tie the incumbent
        const int hi = std::min(covered + 1, static_cast<int>(ub_));
        for (int q = hi; q > m; --q) {
            const auto state = add(q, distinct, covered);
            dfs(j + 1, q, state.second, state.first);
            remove(q);
            if (exhausted_)
                return;
        }
    }

    void expand(int j, int m, int covered, int distinct, int length,
                std::vector<std::vector<int>> &out) {
        ++nodes_;
        if (j == length || j == n_) {
            out.push_back(placed_);
            return;
        }
        const int hi = std::min(covered + 1, static_cast<int>(ub_));
        for (int q = hi; q > m; --q) {
            const auto state = add(q, distinct, covered);
            expand(j + 1, q, state.second, state.first, length, out);
            remove(q);
        }
    }

    int n_;
    Position ub_;
    std::int64_t max_nodes_;
    clock::time_point deadline_;
    std::vector<int> counts_;
    std::vector<int> placed_;
    Position best_ = 0;
    std::vector<std::vector<int>> sols_;
    std::int64_t nodes_ = 0;
    bool exhausted_ = false;
};

inline std::vector<Position> mirrored(const std::vector<Position> &p) {
    std::vector<Position> m(p.size());
    const Position a = p.back();
    for (std::size_t i = 0; i < p.size(); ++i)
        m[p.size() - 1 - i] = a - p[i];
    return m;
}

inline bool mirror_canonical(const std::vector<Position> &p) {
    const std::vector<Position> m = mirrored(p);
    return !std::lexicographical_compare(m.begin(), m.end(), p.begin(), p.end());
}

} // namespace detail

/// Search for all n-sensor transceiver configurations whose sum co-array is
/// the largest achievable unbroken range [0 : 2A]. Work can be split across
/// threads; the work list and per-item node budgets are fixed up front, so
/// the outcome does not depend on thread count or scheduling (wall-clock
/// limits excepted).
inline MraSolution search_fully_overlapping(std::size_t n, const SearchBudget &budget = {},
                                            unsigned threads = 1) {
    if (n < 1)
        throw invalid_parameter("search_fully_overlapping: n must be >= 1");
    if (n > 24)
        throw invalid_parameter("search_fully_overlapping: n too large for exact search");
    const auto t0 = detail::clock::now();
    const auto deadline =
        t0 + std::chrono::duration_cast<detail::clock::duration>(
                 std::chrono::duration<double>(budget.max_seconds));

    // Deterministic work list: all search-tree prefixes at a fixed depth.
    const int split_depth = std::min<int>(6, static_cast<int>(n));
    detail::fully_overlapping_dfs lister(static_cast<int>(n), budget.max_nodes, deadline);
    std::vector<std::vector<int>> work;
    lister.enumerate_prefixes(split_depth, work);
    const std::int64_t list_nodes = lister.nodes();

    const std::int64_t remaining = budget.max_nodes - list_nodes;
    const auto per_item =
        remaining > 0 ? std::max<std::int64_t>(remaining / static_cast<std::int64_t>(work.size()), 1)
                      : 0;

    struct item_result {
        Position best = 0;
        std::vector<std::vector<int>> sols;
        std::int64_t nodes = 0;
        bool exhausted = false;
    };
    std::vector<item_result> results(work.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= work.size())
                return;
            detail::fully_overlapping_dfs run(static_cast<int>(n), per_item, deadline);
            if (per_item > 0)
                run.run(work[i]);
            results[i] = {run.best(), run.solutions(), run.nodes(), per_item == 0 || run.exhausted()};
        }
    };
    const unsigned pool = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(work.size())));
    if (pool == 1) {
        worker();
    } else {
        std::vector<std::thread> ts;
        ts.reserve(pool);
        for (unsigned t = 0; t < pool; ++t)
            ts.emplace_back(worker);
        for (auto &t : ts)
            t.join();
    }

    MraSolution sol;
    sol.n_sensors = n;
    sol.stats.nodes = list_nodes;
    sol.complete = true;
    Position best = 0;
    for (const auto &r : results) {
        sol.stats.nodes += r.nodes;
        sol.complete = sol.complete && !r.exhausted;
        best = std::max(best, r.best);
    }
    std::vector<std::vector<Position>> raw;
    for (const auto &r : results)
        if (r.best == best)
            for (const auto &s : r.sols)
                raw.emplace_back(s.begin(), s.end());
    std::vector<std::vector<Position>> canon;
    for (auto &p : raw)
        if (detail::mirror_canonical(p))
            canon.push_back(std::move(p));
    std::sort(canon.begin(), canon.end());
    sol.aperture = best;
    sol.coarray_size = 2 * best + 1;
    sol.configs.reserve(canon.size());
    for (const auto &p : canon)
        sol.configs.emplace_back(p);
    sol.stats.wall_ms =
        std::chrono::duration<double, std::milli>(detail::clock::now() - t0).count();
    return sol;
}

/// Search for tx/rx configuration pairs maximizing the contiguous sum
/// co-array [0 : h-1], subject to exact sensor counts and an exact number of
/// shared (transceiving) positions. Plain bounded enumeration: every
/// position is at most n_tx*n_rx - 1, the largest conceivable sum. All
/// optimal ordered (tx, rx) pairs are returned.
inline MraSolution search_general(std::size_t n_tx, std::size_t n_rx, std::size_t n_shared,
                                  const SearchBudget &budget = {}) {
    if (n_tx < 1 || n_rx < 1)
        throw invalid_parameter("search_general: sensor counts must be >= 1");
    if (n_shared < 1 || n_shared > std::min(n_tx, n_rx))
        throw invalid_parameter("search_general: need 1 <= n_shared <= min(n_tx, n_rx)");
    if (n_tx * n_rx > 36)
        throw invalid_parameter("search_general: n_tx * n_rx too large for exact search");

    const auto t0 = detail::clock::now();
    const auto deadline =
        t0 + std::chrono::duration_cast<detail::clock::duration>(
                 std::chrono::duration<double>(budget.max_seconds));
    const int pos_ub = static_cast<int>(n_tx * n_rx) - 1;
    const int sum_ub = 2 * pos_ub;

    std::vector<int> tx{0};
    std::vector<int> rx;
    std::vector<int> counts(static_cast<std::size_t>(sum_ub + 2), 0);
    std::int64_t nodes = 0;
    bool exhausted = false;
    int best_h = 0;
    std::vector<std::pair<std::vector<int>, std::vector<int>>> sols;

    auto out_of_budget = [&]() {
        if (nodes >= budget.max_nodes)
            return true;
        if ((nodes & 0xfff) == 0 && detail::clock::now() > deadline)
            return true;
        return false;
    };

    // Inner enumeration over rx for a fixed, complete tx.
    auto rx_dfs = [&](auto &&self, int covered, int distinct, int shared) -> void {
        ++nodes;
        if (exhausted || (exhausted = out_of_budget()))
            return;
        if (rx.size() == n_rx) {
            if (shared != static_cast<int>(n_shared))
                return;
            const int h = covered + 1;
            if (h - 1 != tx.back() + rx.back())
                return; // sum co-array has a hole below its top
            if (h > best_h) {
                best_h = h;
                sols.clear();
            }
            if (h == best_h)
                sols.emplace_back(tx, rx);
            return;
        }
        const auto r = static_cast<std::int64_t>(n_rx - rx.size());
        if (distinct + r * static_cast<std::int64_t>(n_tx) < best_h)
            return;
        if (shared + r < static_cast<std::int64_t>(n_shared))
            return;
        const int m = rx.empty() ? -1 : rx.back();
        const int hi = std::min(covered + 1, pos_ub);
        for (int q = hi; q > m; --q) {
            if (rx.empty() && q != 0)
                continue; // min rx position is pinned to 0
            int d2 = distinct;
            for (int t : tx)
                if (counts[static_cast<std::size_t>(t + q)]++ == 0)
                    ++d2;
            rx.push_back(q);
            int c2 = covered;
            while (counts[static_cast<std::size_t>(c2 + 1)] > 0)
                ++c2;
            const bool is_shared = std::find(tx.begin(), tx.end(), q) != tx.end();
            self(self, c2, d2, shared + (is_shared ? 1 : 0));
            rx.pop_back();
            for (int t : tx)
                --counts[static_cast<std::size_t>(t + q)];
            if (exhausted)
                return;
        }
    };

    auto tx_dfs = [&](auto &&self) -> void {
        ++nodes;
        if (exhausted || (exhausted = out_of_budget()))
            return;
        if (tx.size() == n_tx) {
            rx_dfs(rx_dfs, -1, 0, 0);
            return;
        }
        for (int q = tx.back() + 1; q <= pos_ub; ++q) {
            tx.push_back(q);
            self(self);
            tx.pop_back();
            if (exhausted)
                return;
        }
    };
    tx_dfs(tx_dfs);

    MraSolution sol;
    sol.n_sensors = n_tx + n_rx - n_shared;
    sol.complete = !exhausted;
    sol.stats.nodes = nodes;
    if (sols.empty() && sol.complete)
        throw no_solution("search_general: no configuration satisfies the constraints");
    std::sort(sols.begin(), sols.end());
    sol.coarray_size = best_h;
    Position max_pos = 0;
    for (const auto &[t, r] : sols) {
        max_pos = std::max<Position>(max_pos, t.back());
        max_pos = std::max<Position>(max_pos, r.back());
    }
    sol.aperture = max_pos;
    for (const auto &[t, r] : sols)
        sol.pairs.emplace_back(ArrayConfig(std::vector<Position>(t.begin(), t.end())),
                               ArrayConfig(std::vector<Position>(r.begin(), r.end())));
    sol.stats.wall_ms =
        std::chrono::duration<double, std::milli>(detail::clock::now() - t0).count();
    return sol;
}

/// Check by enumeration that the sum co-array of a pair covers [0 : h-1].
/// On failure the witness is the smallest uncovered virtual position.
inline CertifyResult certify(const ActiveArrayPair &pair, std::int64_t claimed_h) {
    const CoArraySummary sum = sum_coarray(pair);
    std::size_t i = 0;
    for (Position v = 0; v < claimed_h; ++v) {
        while (i < sum.positions.size() && sum.positions[i] < v)
            ++i;
        if (i == sum.positions.size() || sum.positions[i] != v)
            return {false, v};
    }
    return {true, std::nullopt};
}

inline CertifyResult certify(const ArrayConfig &config, std::int64_t claimed_h) {
    return certify(ActiveArrayPair(config), claimed_h);
}

} // namespace calab

#endif
