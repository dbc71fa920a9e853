#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dynstr/predecessor_set.hpp"

namespace dynstr {

using DfSymbol = unsigned;  // symbols 1..k
using DfPos = std::uint64_t;

enum class DfUpdatePolicy {
    kEager,  // recompute the subset table inside update(), query is O(1)
    kLazy,   // mark dirty, recompute on the next query
};

// Dynamic Disjoint Factors: does the word contain pairwise disjoint factors
// w_1..w_k, where w_i has length >= 2 and begins and ends with symbol i?
//
// Maintains one predecessor set of occurrence positions per symbol and a
// 2^k subset table DF[S] = least prefix end that accommodates disjoint
// factors for every symbol in S (absent when impossible, DF[empty] = 0).
class DfState {
public:
    DfState(std::vector<DfSymbol> word, unsigned k,
            DfUpdatePolicy policy = DfUpdatePolicy::kEager);

    unsigned k() const noexcept { return k_; }
    std::size_t n() const noexcept { return word_.size(); }
    const std::vector<DfSymbol>& word() const noexcept { return word_; }

    void update(DfPos pos, DfSymbol a);
    bool query();

    // Right endpoint of the first a-factor lying strictly after position l
    // (l in [0, n]); the factor spans two occurrences of a.
    std::optional<DfPos> next_factor(DfSymbol a, DfPos l) const;

    // DF[S] for a subset mask over symbols {1..k}; absent means impossible.
    std::optional<DfPos> table_entry(std::uint32_t subset_mask) const;

    unsigned max_pred_depth() const noexcept;

private:
    void check_pos(DfPos pos) const;
    void check_symbol(DfSymbol a) const;
    void recompute();

    std::vector<DfSymbol> word_;
    unsigned k_;
    DfUpdatePolicy policy_;
    std::vector<PredecessorSet> occ_;          // [1..k]
    std::vector<std::optional<DfPos>> table_;  // 2^k entries
    bool answer_ = false;
    bool dirty_ = false;
};

// next[s][l]: least position >= l holding symbol s (absent past the end).
// Backs the static algorithm; no predecessor sets involved.
class NextTable {
public:
    NextTable(const std::vector<DfSymbol>& word, unsigned k);
    std::optional<DfPos> next(DfSymbol s, DfPos l) const;  // l in [1, n+1]
    std::optional<DfPos> next_factor(DfSymbol s, DfPos l) const;  // l in [0, n]

private:
    std::size_t n_;
    unsigned k_;
    std::vector<DfPos> table_;  // (s-1)*(n+2) + l, 0 = absent
};

// One-shot static solver over the same subset recurrence.
bool df_static(const std::vector<DfSymbol>& word, unsigned k);

// Binary-alphabet Disjoint Factors (k = 2) with O(1) updates and queries:
// symbol counts plus direct reads of the two first and two last cells decide
// the answer.
class DfBinary {
public:
    explicit DfBinary(std::vector<DfSymbol> word);

    std::size_t n() const noexcept { return word_.size(); }
    const std::vector<DfSymbol>& word() const noexcept { return word_; }

    void update(DfPos pos, DfSymbol a);
    bool query() const;

private:
    std::vector<DfSymbol> word_;
    std::size_t count_[3] = {0, 0, 0};
};

}  // namespace dynstr
