// Copyright 2026 The qvlbi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qvlbi/protocols.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "gtest/gtest.h"

using namespace qvlbi;
using namespace qvlbi::protocols;

TEST(protocols, trace_construction_validates) {
    EXPECT_THROW(ArrivalTrace(4, {{5, Shared{}}}), std::invalid_argument);
    EXPECT_THROW(ArrivalTrace(4, {{0, Shared{}}}), std::invalid_argument);
    EXPECT_THROW(ArrivalTrace(4, {{3, Shared{}}, {2, Shared{}}}), std::invalid_argument);
    EXPECT_THROW(ArrivalTrace(4, {{2, Shared{2, 0.0}}}), std::invalid_argument);
    EXPECT_THROW(ArrivalTrace(4, {{2, Vacuum{}}}), std::invalid_argument);
    const auto t = ArrivalTrace::from_bins({Vacuum{}, Shared{-1, 0.5}, Vacuum{}, Multi{}});
    EXPECT_EQ(t.size(), 4u);
    EXPECT_EQ(t.count_shared(), 1u);
    EXPECT_EQ(t.count_multi(), 1u);
    EXPECT_TRUE(is_vacuum(t.at(1)));
    EXPECT_EQ(std::get<Shared>(t.at(2)).sign, -1);
    EXPECT_EQ(t.dense().size(), 4u);
}

TEST(protocols, zero_epsilon_gives_vacuum) {
    const auto t = sample_arrivals(0.0, 10000, 0.5, 0.0, 1);
    EXPECT_TRUE(t.occupied().empty());
}

TEST(protocols, sampling_is_reproducible) {
    const auto a = sample_arrivals(0.01, 5000, 0.3, 1.0, 42);
    const auto b = sample_arrivals(0.01, 5000, 0.3, 1.0, 42);
    const auto c = sample_arrivals(0.01, 5000, 0.3, 1.0, 43);
    EXPECT_EQ(a, b);
    EXPECT_FALSE(a == c);
    EXPECT_EQ(a.seed(), 42u);
    EXPECT_DOUBLE_EQ(a.epsilon(), 0.01);
}

TEST(protocols, bin_frequencies_follow_bose_einstein) {
    const std::size_t m = 1000000;
    const auto t = sample_arrivals(1.0, m, 1.0, 0.0, 7);
    const double n = static_cast<double>(m);
    const double shared = static_cast<double>(t.count_shared()) / n;
    const double multi = static_cast<double>(t.count_multi()) / n;
    const double vac = 1.0 - shared - multi;
    auto sigma = [n](double p) { return std::sqrt(p * (1 - p) / n); };
    EXPECT_NEAR(vac, 0.5, 3 * sigma(0.5));
    EXPECT_NEAR(shared, 0.25, 3 * sigma(0.25));
    EXPECT_NEAR(multi, 0.25, 3 * sigma(0.25));
}

TEST(protocols, full_visibility_never_gives_minus_sign) {
    const auto t = sample_arrivals(0.2, 20000, 1.0, 0.3, 11);
    ASSERT_GT(t.count_shared(), 100u);
    for (const auto& o : t.occupied()) {
        if (const auto* s = std::get_if<Shared>(&o.state)) {
            EXPECT_EQ(s->sign, +1);
            EXPECT_DOUBLE_EQ(s->phase, 0.3);
        }
    }
}

TEST(protocols, sign_fraction_tracks_visibility) {
    const auto t = sample_arrivals(0.05, 400000, 0.4, 0.0, 3);
    std::size_t plus = 0;
    for (const auto& o : t.occupied()) {
        if (const auto* s = std::get_if<Shared>(&o.state)) {
            plus += s->sign > 0 ? 1 : 0;
        }
    }
    const double n = static_cast<double>(t.count_shared());
    const double p = 0.7;
    EXPECT_NEAR(plus / n, p, 3 * std::sqrt(p * (1 - p) / n));
}

TEST(protocols, unary_example_with_photon_in_bin_five) {
    const auto r = unary_run(ArrivalTrace::single_photon(6, 5));
    ASSERT_EQ(r.ledger.consumed(), 6u);
    const std::vector<Parity> expect{Parity::Kept, Parity::Kept, Parity::Kept,
                                     Parity::Kept, Parity::Flipped, Parity::Kept};
    EXPECT_EQ(r.ledger.outcomes(), expect);
    EXPECT_EQ(r.located, std::vector<std::size_t>{5});
}

TEST(protocols, unary_all_vacuum_and_flip_positions) {
    const auto v = unary_run(ArrivalTrace(9, {}));
    EXPECT_EQ(v.ledger.consumed(), 9u);
    EXPECT_EQ(v.ledger.flips(), 0u);
    const auto t = sample_arrivals(0.3, 500, 0.5, 0.0, 5);
    const auto r = unary_run(t);
    EXPECT_EQ(r.ledger.consumed(), 500u);
    std::vector<std::size_t> occupied;
    for (const auto& o : t.occupied()) {
        occupied.push_back(o.index);
    }
    EXPECT_EQ(r.located, occupied);
    EXPECT_EQ(r.ledger.flips(), occupied.size());
}

TEST(protocols, binary_search_examples) {
    const auto a = binary_search_run(ArrivalTrace::single_photon(4, 2));
    ASSERT_TRUE(a.ok());
    EXPECT_EQ(a.index, 2u);
    EXPECT_EQ(a.ledger.consumed(), 2u);
    const auto b = binary_search_run(ArrivalTrace::single_photon(8, 6));
    EXPECT_EQ(b.index, 6u);
    EXPECT_EQ(b.ledger.consumed(), 3u);
    const auto c = binary_search_run(ArrivalTrace::single_photon(1, 1));
    EXPECT_EQ(c.index, 1u);
    EXPECT_EQ(c.ledger.consumed(), 0u);
}

TEST(protocols, binary_search_random_positions_1024) {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::size_t> pos(1, 1024);
    for (int s = 0; s < 1000; ++s) {
        const std::size_t where = pos(rng);
        const auto r = binary_search_run(ArrivalTrace::single_photon(1024, where));
        ASSERT_TRUE(r.ok());
        EXPECT_EQ(r.index, where);
        EXPECT_LE(r.ledger.consumed(), 10u);
    }
}

TEST(protocols, binary_search_exhaustive_small_blocks) {
    for (std::size_t m = 1; m <= 300; ++m) {
        for (std::size_t where = 1; where <= m; ++where) {
            const auto r = binary_search_run(ArrivalTrace::single_photon(m, where, -1, 0.4));
            ASSERT_TRUE(r.ok());
            ASSERT_EQ(r.index, where) << m;
            ASSERT_EQ(r.ledger.consumed(), search_rounds(m)) << m;
        }
    }
    EXPECT_EQ(search_rounds(1), 0u);
    EXPECT_EQ(search_rounds(5), 3u);
    EXPECT_EQ(search_rounds(1024), 10u);
    EXPECT_EQ(search_rounds(1025), 11u);
}

TEST(protocols, binary_search_precondition) {
    const auto none = binary_search_run(ArrivalTrace(8, {}));
    EXPECT_EQ(none.status, BinarySearchResult::Status::PreconditionViolated);
    EXPECT_NE(none.message.find("precondition"), std::string::npos);
    const auto two = binary_search_run(ArrivalTrace(8, {{2, Shared{}}, {7, Shared{}}}));
    EXPECT_FALSE(two.ok());
    const auto multi = binary_search_run(ArrivalTrace(8, {{3, Multi{}}}));
    EXPECT_FALSE(multi.ok());
}

TEST(protocols, binary_encoding_codewords) {
    EXPECT_EQ(register_width(1), 1u);
    EXPECT_EQ(register_width(7), 3u);
    EXPECT_EQ(register_width(8), 4u);
    EXPECT_EQ(codeword_bits(5, 4), "1010");

    const auto m = binary_encode(ArrivalTrace::single_photon(15, 5, -1, 0.2));
    EXPECT_EQ(m.width, 4u);
    EXPECT_EQ(m.codeword, 5u);
    EXPECT_EQ(m.sign, -1);
    EXPECT_FALSE(m.depolarized);
    const auto a = m.branch(LogicalMemory::Station::A);
    EXPECT_EQ(a.a, "1010");
    EXPECT_EQ(a.b, "0000");
    const auto b = m.branch(LogicalMemory::Station::B);
    EXPECT_EQ(b.a, "0000");
    EXPECT_EQ(b.b, "1010");
}

TEST(protocols, binary_encoding_vacuum_and_depolarization) {
    const auto v = binary_encode(ArrivalTrace(100, {}));
    EXPECT_EQ(v.codeword, 0u);
    EXPECT_FALSE(v.depolarized);
    EXPECT_EQ(v.branch(LogicalMemory::Station::A).a, std::string(7, '0'));

    EXPECT_TRUE(binary_encode(ArrivalTrace(100, {{3, Shared{}}, {40, Shared{}}})).depolarized);
    EXPECT_TRUE(binary_encode(ArrivalTrace(100, {{3, Multi{}}})).depolarized);
}

TEST(protocols, every_bin_has_a_distinct_nonzero_codeword) {
    const std::size_t m = 200;
    std::vector<bool> seen(256, false);
    for (std::size_t k = 1; k <= m; ++k) {
        const auto mem = binary_encode(ArrivalTrace::single_photon(m, k));
        ASSERT_NE(mem.codeword, 0u);
        ASSERT_FALSE(seen[mem.codeword]);
        seen[mem.codeword] = true;
    }
}
