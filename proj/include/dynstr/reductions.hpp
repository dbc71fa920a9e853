#pragma once

#include <cstddef>
#include <vector>

#include "dynstr/disjoint_factors.hpp"
#include "dynstr/edit_distance.hpp"
#include "dynstr/predecessor_set.hpp"

namespace dynstr {

// prefix-U1: maintain S subset of [n] under insert/delete and answer
// threshold queries "does S contain an element <= i". Three interchangeable
// backends: a predecessor-set baseline and two that route the query through
// the dynamic Disjoint Factors (k = 3) and Edit Distance (k = 2) structures.

class PrefixU1Direct {
public:
    explicit PrefixU1Direct(std::size_t n);

    std::size_t n() const noexcept { return n_; }
    void insert(std::size_t i);
    void erase(std::size_t i);
    bool query(std::size_t i) const;

private:
    std::size_t n_;
    PredecessorSet set_;
};

// Backing word: 1 a_1 ... a_n 0 # 0 0  over {0, 1, #} mapped to {1, 2, 3},
// a_i = 1 iff i is a member. A query plants a temporary # at position i + 2.
class PrefixU1ViaDf {
public:
    explicit PrefixU1ViaDf(std::size_t n);

    std::size_t n() const noexcept { return n_; }
    void insert(std::size_t i);
    void erase(std::size_t i);
    bool query(std::size_t i);

    const std::vector<DfSymbol>& backing_word() const noexcept { return df_.word(); }

    static constexpr DfSymbol kZero = 1, kOne = 2, kHash = 3;

private:
    void check(std::size_t i) const;

    std::size_t n_;
    DfState df_;
};

// Backing words: x = aca a_1 ... a_n AAA aaa and y = cac a_1 ... a_n AAA aaa
// over {a, b, c} mapped to {1, 2, 3}, a_i = b iff i is a member. AAA is a
// reserved all-a extension so the query window a_(i+1) .. a_(i+3) exists for
// every i in [n]; a query swaps in cac/aca there and asks whether the edit
// distance exceeds 2.
class PrefixU1ViaEd {
public:
    explicit PrefixU1ViaEd(std::size_t n);

    std::size_t n() const noexcept { return n_; }
    void insert(std::size_t i);
    void erase(std::size_t i);
    bool query(std::size_t i);

    const std::vector<EdSymbol>& backing_x() const noexcept { return ed_.lce().x(); }
    const std::vector<EdSymbol>& backing_y() const noexcept { return ed_.lce().y(); }

    static constexpr EdSymbol kA = 1, kB = 2, kC = 3;

private:
    void check(std::size_t i) const;
    void set_alpha(std::size_t i, EdSymbol a);

    std::size_t n_;
    EdState ed_;
};

}  // namespace dynstr
