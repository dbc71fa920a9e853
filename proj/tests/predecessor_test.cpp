#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>

#include "dynstr/predecessor_set.hpp"
#include "dynstr/rng.hpp"

using dynstr::PredecessorSet;
using dynstr::SplitMix64;

namespace {

// sorted-list reference
struct SetOracle {
    std::set<std::uint64_t> s;

    void insert(std::uint64_t x) { s.insert(x); }
    void erase(std::uint64_t x) { s.erase(x); }
    std::optional<std::uint64_t> predecessor(std::uint64_t x) const {
        auto it = s.upper_bound(x);
        if (it == s.begin()) return std::nullopt;
        return *std::prev(it);
    }
    std::optional<std::uint64_t> successor(std::uint64_t x) const {
        auto it = s.lower_bound(x);
        if (it == s.end()) return std::nullopt;
        return *it;
    }
};

}  // namespace

TEST_CASE("singleton insert and idempotence") {
    PredecessorSet s(16);
    s.insert(5);
    CHECK(s.size() == 1);
    CHECK(s.contains(5));
    s.insert(5);
    CHECK(s.size() == 1);
    s.erase(5);
    CHECK(s.size() == 0);
    CHECK_FALSE(s.contains(5));
    s.erase(5);  // absent delete is a no-op
    CHECK(s.size() == 0);
}

TEST_CASE("membership matches a sorted-list oracle after inserts") {
    PredecessorSet s(16);
    for (std::uint64_t x : {3, 9, 1}) s.insert(x);
    std::set<std::uint64_t> ref{3, 9, 1};
    for (std::uint64_t x = 1; x <= 16; ++x) CHECK(s.contains(x) == (ref.count(x) > 0));
    CHECK(s.min() == 1);
    CHECK(s.max() == 9);
}

TEST_CASE("predecessor and successor basics") {
    PredecessorSet s(32);
    s.insert(3);
    s.insert(9);
    CHECK(s.predecessor(8) == 3);
    CHECK_FALSE(s.predecessor(2).has_value());
    CHECK(s.predecessor(3) == 3);  // self
    CHECK(s.successor(4) == 9);
    CHECK_FALSE(s.successor(10).has_value());

    PredecessorSet empty(32);
    CHECK_FALSE(empty.successor(1).has_value());
    CHECK_FALSE(empty.predecessor(32).has_value());
}

TEST_CASE("out-of-universe arguments are rejected") {
    PredecessorSet s(10);
    CHECK_THROWS_AS(s.insert(0), std::out_of_range);
    CHECK_THROWS_AS(s.insert(11), std::out_of_range);
    CHECK_THROWS_AS(s.erase(0), std::out_of_range);
    CHECK_THROWS_AS(s.predecessor(11), std::out_of_range);
    CHECK_THROWS_AS(s.successor(0), std::out_of_range);
    CHECK_THROWS_AS(PredecessorSet(0), std::out_of_range);
}

TEST_CASE("random mixed ops agree with the oracle") {
    for (std::uint64_t universe : {2ull, 7ull, 64ull, 100ull, 1ull << 12, 1ull << 20}) {
        PredecessorSet s(universe);
        SetOracle ref;
        SplitMix64 rng(0xC0FFEE ^ universe);
        const int ops = universe > 4096 ? 20000 : 100000;
        for (int t = 0; t < ops; ++t) {
            const std::uint64_t x = rng.below(universe) + 1;
            switch (rng.below(4)) {
                case 0:
                    s.insert(x);
                    ref.insert(x);
                    break;
                case 1:
                    s.erase(x);
                    ref.erase(x);
                    break;
                case 2:
                    REQUIRE(s.predecessor(x) == ref.predecessor(x));
                    break;
                default:
                    REQUIRE(s.successor(x) == ref.successor(x));
                    break;
            }
            REQUIRE(s.size() == ref.s.size());
        }
    }
}

TEST_CASE("insert then successor hits itself; delete pushes predecessor below") {
    SplitMix64 rng(42);
    PredecessorSet s(1 << 16);
    for (int t = 0; t < 2000; ++t) {
        const std::uint64_t x = rng.below(1 << 16) + 1;
        s.insert(x);
        REQUIRE(s.successor(x) == x);
        if (rng.below(2) == 0) {
            s.erase(x);
            const auto p = s.predecessor(x);
            REQUIRE((!p || *p < x));
        }
    }
}

TEST_CASE("recursion depth stays within the doubly logarithmic bound") {
    for (std::uint64_t universe : {2ull, 64ull, 1ull << 10, 1ull << 16, 1ull << 20}) {
        PredecessorSet s(universe);
        SplitMix64 rng(7 * universe + 1);
        for (int t = 0; t < 5000; ++t) {
            const std::uint64_t x = rng.below(universe) + 1;
            switch (rng.below(4)) {
                case 0: s.insert(x); break;
                case 1: s.erase(x); break;
                case 2: (void)s.predecessor(x); break;
                default: (void)s.successor(x); break;
            }
        }
        const double loglog = std::log2(std::max(2.0, std::log2(double(universe))));
        const double bound = 3.0 * std::max(1.0, loglog) + 3.0;
        CHECK(double(s.max_depth()) <= bound);
    }
}
