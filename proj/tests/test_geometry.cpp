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

#include <catch2/catch_amalgamated.hpp>

#include <coarray_lab/geometry.hpp>

#include "oracles.hpp"

using namespace calab;

TEST_CASE("positions are normalized on construction") {
    const ArrayConfig a({7, 3, 5, 3});
    CHECK(a.positions() == std::vector<Position>{0, 2, 4});
    CHECK(a.size() == 3);
    CHECK(a.aperture() == 4);
    CHECK(a.contains(2));
    CHECK_FALSE(a.contains(3));
    CHECK_THROWS_AS(ArrayConfig(std::vector<Position>{}), invalid_parameter);
}

TEST_CASE("mirror symmetry detection") {
    CHECK(ArrayConfig({0, 1, 3, 4}).is_symmetric());
    CHECK(ArrayConfig({0}).is_symmetric());
    CHECK_FALSE(ArrayConfig({0, 1, 4}).is_symmetric());
}

TEST_CASE("uniform linear array") {
    CHECK(ula(1).positions() == std::vector<Position>{0});
    CHECK(ula(4).positions() == std::vector<Position>{0, 1, 2, 3});
    CHECK_THROWS_AS(ula(0), invalid_parameter);
}

TEST_CASE("nested array layout") {
    CHECK(nested(4, 4).positions() == std::vector<Position>{0, 1, 2, 3, 4, 9, 14, 19});
    CHECK(nested(2, 6).positions() == std::vector<Position>{0, 1, 2, 5, 8, 11, 14, 17});
    CHECK(nested(0, 5) == ula(5)); // degenerate dense part leaves a unit-step grid
    CHECK_THROWS_AS(nested(0, 0), invalid_parameter);
}

TEST_CASE("symmetric extension of a generator") {
    CHECK(symmetric_from_generator(ArrayConfig({0, 1}), 0).positions() ==
          std::vector<Position>{0, 1});
    CHECK(symmetric_from_generator(ArrayConfig({0, 1}), 1).positions() ==
          std::vector<Position>{0, 1, 2});
    CHECK(symmetric_from_generator(ArrayConfig({0, 1, 4}), 2).positions() ==
          std::vector<Position>{0, 1, 2, 4, 5, 6});
    CHECK_THROWS_AS(symmetric_from_generator(ArrayConfig({0, 1}), -1), invalid_parameter);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        oracle::Draw draw(seed);
        const ArrayConfig g(draw.positions(4, 12));
        const Position offset = draw.upto(5);
        const ArrayConfig s = symmetric_from_generator(g, offset);
        CHECK(s.is_symmetric());
        CHECK(s.aperture() == g.aperture() + offset);
    }
}

TEST_CASE("concatenated nested array layouts") {
    CHECK(cna(1, 2).positions() == std::vector<Position>{0, 1, 3, 4});
    CHECK(cna(2, 4).positions() == std::vector<Position>{0, 1, 2, 5, 8, 11, 12, 13});
    CHECK(cna(2, 6).positions() ==
          std::vector<Position>{0, 1, 2, 5, 8, 11, 14, 17, 18, 19});
}

TEST_CASE("closed-form minimum-redundancy symmetric nested array") {
    SECTION("parameter selection") {
        const auto [p10, c10] = symmetric_na_min_redundancy(10);
        CHECK(p10.n1 == 2);
        CHECK(p10.n2 == 6);
        CHECK(p10.alpha == 2);
        CHECK(c10.positions() == cna(2, 6).positions());

        const auto [p8, c8] = symmetric_na_min_redundancy(8);
        CHECK(p8.n1 == 2);
        CHECK(p8.n2 == 4);
        CHECK(p8.alpha == 0);

        const auto [p4, c4] = symmetric_na_min_redundancy(4);
        CHECK(p4.n1 == 1);
        CHECK(p4.n2 == 2);
        CHECK(p4.alpha == 0);
        CHECK(c4.positions() == std::vector<Position>{0, 1, 3, 4});
    }
    SECTION("sensor count and symmetry hold across the range") {
        for (std::size_t n = 2; n <= 64; ++n) {
            const auto [params, config] = symmetric_na_min_redundancy(n);
            CHECK(config.size() == n);
            CHECK(config.is_symmetric());
            CHECK(params.offset == static_cast<Position>(params.n1));
        }
    }
    SECTION("rejects degenerate sizes") {
        CHECK_THROWS_AS(symmetric_na_min_redundancy(0), invalid_parameter);
        CHECK_THROWS_AS(symmetric_na_min_redundancy(1), invalid_parameter);
    }
}

TEST_CASE("non-overlapping pair with non-redundant sum co-array") {
    const ActiveArrayPair p = nonoverlapping_mra(3, 3);
    CHECK(p.tx.positions() == std::vector<Position>{0, 3, 6});
    CHECK(p.rx.positions() == std::vector<Position>{0, 1, 2});
    CHECK_THROWS_AS(nonoverlapping_mra(0, 3), invalid_parameter);
}

TEST_CASE("overlap classification") {
    const ArrayConfig u4 = ula(4);
    CHECK(overlap_category(ActiveArrayPair(u4)).category == OverlapCategory::fully_overlapping);
    const OverlapInfo non = overlap_category(nonoverlapping_mra(3, 4));
    CHECK(non.category == OverlapCategory::non_overlapping);
    CHECK(non.intersection_size == 1);
    CHECK(non.union_size == 6);
    const OverlapInfo part =
        overlap_category({ArrayConfig({0, 1, 2}), ArrayConfig({0, 1, 5})});
    CHECK(part.category == OverlapCategory::partially_overlapping);
    CHECK(part.intersection_size == 2);
    const OverlapInfo single = overlap_category(ActiveArrayPair(ArrayConfig({0})));
    CHECK(single.category == OverlapCategory::fully_overlapping);
}
