#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dynstr/predecessor_set.hpp"

namespace dynstr {

using EdSymbol = std::uint32_t;
using EdPos = std::uint64_t;

// Longest-common-extension queries restricted to diagonals |i - j| <= k,
// maintained under single-symbol substitutions. For each diagonal offset p
// the set S_p = { i : x[i] != y[i+p] } lives in a predecessor set; an LCE is
// one successor query plus end-of-string clamping.
class DiagonalLce {
public:
    enum class Side { kX, kY };

    DiagonalLce(std::vector<EdSymbol> x, std::vector<EdSymbol> y, unsigned k);

    unsigned k() const noexcept { return k_; }
    const std::vector<EdSymbol>& x() const noexcept { return x_; }
    const std::vector<EdSymbol>& y() const noexcept { return y_; }

    void update(Side side, EdPos pos, EdSymbol a);

    // Length of the longest common prefix of x[i..] and y[j..].
    // Requires |i - j| <= k; one-past-the-end arguments return 0.
    std::size_t lce(EdPos i, EdPos j) const;

    std::vector<EdPos> mismatch_positions(int p) const;  // S_p, for validation
    unsigned max_pred_depth() const noexcept;

private:
    PredecessorSet& set_for(int p) { return sets_[static_cast<std::size_t>(p + k_)]; }
    const PredecessorSet& set_for(int p) const {
        return sets_[static_cast<std::size_t>(p + k_)];
    }
    void set_membership(int p, EdPos i, bool mismatched);

    std::vector<EdSymbol> x_, y_;
    unsigned k_;
    std::vector<PredecessorSet> sets_;  // 2k+1 diagonals, index p + k
};

// Dynamic bounded edit distance via the diagonal frontier: f[b][t] is the
// furthest row reachable on diagonal t with b edits, advanced greedily by
// LCE jumps. Lengths are fixed; updates substitute single symbols.
class EdState {
public:
    EdState(std::vector<EdSymbol> x, std::vector<EdSymbol> y, unsigned k);

    unsigned k() const noexcept { return lce_.k(); }
    const DiagonalLce& lce() const noexcept { return lce_; }

    void update(DiagonalLce::Side side, EdPos pos, EdSymbol a);

    // Exact distance when it is <= k, absent otherwise.
    std::optional<unsigned> distance() const { return run(nullptr); }
    bool within_k() const { return distance().has_value(); }

    // Test hook: also emits the frontier rows, frontier[b][t + k].
    std::optional<unsigned> distance_with_frontier(
        std::vector<std::vector<long long>>& frontier) const {
        return run(&frontier);
    }

    unsigned max_pred_depth() const noexcept { return lce_.max_pred_depth(); }

private:
    std::optional<unsigned> run(std::vector<std::vector<long long>>* frontier) const;

    DiagonalLce lce_;
};

}  // namespace dynstr
