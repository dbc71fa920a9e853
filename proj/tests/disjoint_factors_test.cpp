#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "dynstr/disjoint_factors.hpp"
#include "dynstr/rng.hpp"
#include "oracle/brute_force.hpp"

using namespace dynstr;
using Word = std::vector<DfSymbol>;

namespace {

Word random_word(SplitMix64& rng, std::size_t n, unsigned k) {
    Word w(n);
    for (auto& a : w) a = static_cast<DfSymbol>(rng.below(k)) + 1;
    return w;
}

std::vector<unsigned> to_oracle(const Word& w) { return {w.begin(), w.end()}; }

// every length-n word over [k], visitor returns false to stop
template <typename F>
void for_each_word(std::size_t n, unsigned k, F&& f) {
    Word w(n, 1);
    while (true) {
        f(w);
        std::size_t i = 0;
        while (i < n && w[i] == k) w[i++] = 1;
        if (i == n) return;
        ++w[i];
    }
}

}  // namespace

TEST_CASE("init examples") {
    CHECK(DfState({1, 1, 2, 2}, 2).query());
    CHECK_FALSE(DfState({1, 2, 2, 1}, 2).query());
    CHECK(DfState({1, 1}, 1).query());
    CHECK_FALSE(DfState({1}, 1).query());
    CHECK_THROWS_AS(DfState({1, 3}, 2), std::out_of_range);
}

TEST_CASE("next_factor follows occurrence structure") {
    DfState s({1, 2, 1, 1}, 2);
    CHECK(s.next_factor(1, 0) == 3);  // factor spans positions 1..3
    CHECK(s.next_factor(1, 1) == 4);  // next one starts at 3
    CHECK_FALSE(s.next_factor(1, 4).has_value());
    CHECK_FALSE(s.next_factor(2, 0).has_value());  // single occurrence
    CHECK_THROWS_AS(s.next_factor(1, 5), std::out_of_range);
}

TEST_CASE("next table invariants") {
    const Word w{2, 1, 2, 2, 1};
    NextTable t(w, 2);
    CHECK_FALSE(t.next(1, 6).has_value());
    for (DfPos l = 1; l <= 5; ++l) {
        for (DfSymbol s = 1; s <= 2; ++s) {
            const auto expected = (w[l - 1] == s) ? std::optional<DfPos>(l) : t.next(s, l + 1);
            CHECK(t.next(s, l) == expected);
        }
    }
    CHECK(t.next_factor(2, 0) == 3);
    CHECK(t.next_factor(2, 3) == std::nullopt);
}

TEST_CASE("update examples") {
    DfState s({1, 2, 2, 1}, 2);
    CHECK_FALSE(s.query());
    s.update(4, 1);  // identity write
    CHECK_FALSE(s.query());
    s.update(4, 2);  // word becomes 1 2 2 2: only one occurrence of 1
    CHECK_FALSE(s.query());
    CHECK(oracle::df_greedy(to_oracle(s.word()), 2) == s.query());
    s.update(1, 2);
    s.update(2, 1);
    s.update(3, 1);  // word 2 1 1 2
    CHECK_FALSE(s.query());
    s.update(4, 1);  // 2 1 1 1 still needs two 2s
    CHECK_FALSE(s.query());
}

TEST_CASE("eager and lazy policies agree under updates") {
    SplitMix64 rng(404);
    Word w = random_word(rng, 30, 3);
    DfState eager(w, 3, DfUpdatePolicy::kEager);
    DfState lazy(w, 3, DfUpdatePolicy::kLazy);
    for (int t = 0; t < 300; ++t) {
        const DfPos pos = rng.below(30) + 1;
        const DfSymbol a = static_cast<DfSymbol>(rng.below(3)) + 1;
        eager.update(pos, a);
        lazy.update(pos, a);
        REQUIRE(eager.query() == lazy.query());
    }
}

TEST_CASE("dynamic structure tracks the greedy oracle on random update streams") {
    SplitMix64 rng(808);
    for (int round = 0; round < 20; ++round) {
        const unsigned k = 1 + rng.below(4);
        const std::size_t n = 1 + rng.below(50);
        DfState s(random_word(rng, n, k), k);
        for (int t = 0; t < 50; ++t) {
            s.update(rng.below(n) + 1, static_cast<DfSymbol>(rng.below(k)) + 1);
            REQUIRE(s.query() == oracle::df_greedy(to_oracle(s.word()), k));
        }
    }
}

TEST_CASE("subset table is monotone under inclusion") {
    SplitMix64 rng(111);
    auto value = [](const std::optional<DfPos>& v) {
        return v ? *v : ~std::uint64_t{0};
    };
    for (int t = 0; t < 50; ++t) {
        const unsigned k = 2 + rng.below(3);
        DfState s(random_word(rng, 4 + rng.below(20), k), k);
        const std::uint32_t full = (1u << k) - 1;
        for (std::uint32_t mask = 0; mask <= full; ++mask) {
            for (unsigned b = 0; b < k; ++b) {
                if (mask & (1u << b)) {
                    REQUIRE(value(s.table_entry(mask & ~(1u << b))) <=
                            value(s.table_entry(mask)));
                }
            }
        }
    }
}

TEST_CASE("static solver matches the dynamic structure and both oracles exhaustively") {
    for (unsigned k = 1; k <= 3; ++k) {
        for (std::size_t n = 1; n <= 9; ++n) {
            for_each_word(n, k, [&](const Word& w) {
                const bool expected = oracle::df_greedy(to_oracle(w), k);
                REQUIRE(oracle::df_intervals(to_oracle(w), k) == expected);
                REQUIRE(df_static(w, k) == expected);
                DfState s(w, k);
                REQUIRE(s.query() == expected);
            });
        }
    }
}

TEST_CASE("words where every symbol occurs at least k+1 times are always yes") {
    SplitMix64 rng(321);
    for (int t = 0; t < 300; ++t) {
        const unsigned k = 1 + rng.below(4);
        const std::size_t n = k * (k + 1) + rng.below(20);
        Word w;
        for (unsigned s = 1; s <= k; ++s) {
            w.insert(w.end(), k + 1, s);
        }
        while (w.size() < n) w.push_back(static_cast<DfSymbol>(rng.below(k)) + 1);
        // random shuffle via rng
        for (std::size_t i = w.size(); i > 1; --i) {
            std::swap(w[i - 1], w[rng.below(i)]);
        }
        REQUIRE(DfState(w, k).query());
        REQUIRE(df_static(w, k));
    }
}

TEST_CASE("binary structure examples") {
    CHECK(DfBinary({1, 1, 2, 2}).query());
    CHECK_FALSE(DfBinary({1, 2, 2, 1}).query());
    CHECK_FALSE(DfBinary({1}).query());
    CHECK_FALSE(DfBinary({1, 2}).query());
    // both symbols at least three times
    CHECK(DfBinary({1, 2, 1, 2, 1, 2}).query());
}

TEST_CASE("binary structure matches the general one on all words up to length 12") {
    for (std::size_t n = 1; n <= 12; ++n) {
        for_each_word(n, 2, [&](const Word& w) {
            REQUIRE(DfBinary(w).query() == DfState(w, 2).query());
        });
    }
}

TEST_CASE("binary structure under updates") {
    SplitMix64 rng(77);
    Word w = random_word(rng, 10, 2);
    DfBinary fast(w);
    DfState slow(w, 2);
    for (int t = 0; t < 500; ++t) {
        const DfPos pos = rng.below(10) + 1;
        const DfSymbol a = static_cast<DfSymbol>(rng.below(2)) + 1;
        fast.update(pos, a);
        slow.update(pos, a);
        REQUIRE(fast.query() == slow.query());
    }
}
