#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "dynstr/errors.hpp"

namespace dynstr {

using Symbol = std::uint32_t;   // 1-based symbol, in [1, sigma]
using Pos = std::uint32_t;      // 1-based position, in [1, L]
using WordIdx = std::uint32_t;  // 1-based word index, in [1, n]

// The dictionary: n words of common length L over {1..sigma}, mutable one
// symbol at a time. n, L, sigma and the distance bound d are fixed for the
// life of the structure.
class Dictionary {
public:
    Dictionary(std::vector<std::vector<Symbol>> words, Symbol sigma, unsigned d);

    WordIdx n() const noexcept { return static_cast<WordIdx>(words_.size()); }
    Pos length() const noexcept { return length_; }
    Symbol sigma() const noexcept { return sigma_; }
    unsigned d() const noexcept { return d_; }

    Symbol at(WordIdx i, Pos pos) const;
    void set(WordIdx i, Pos pos, Symbol a);
    const std::vector<Symbol>& word(WordIdx i) const;

private:
    void check_word(WordIdx i) const;
    void check_pos(Pos pos) const;
    void check_symbol(Symbol a) const;

    std::vector<std::vector<Symbol>> words_;
    Pos length_ = 0;
    Symbol sigma_ = 0;
    unsigned d_ = 0;
};

// Set of colors as a 128-bit mask; supports palettes up to 128 colors,
// which covers the 17d palette for every d <= 7.
struct ColorMask {
    std::array<std::uint64_t, 2> w{0, 0};

    void set(unsigned c) noexcept { w[(c - 1) >> 6] |= std::uint64_t{1} << ((c - 1) & 63); }
    void reset(unsigned c) noexcept { w[(c - 1) >> 6] &= ~(std::uint64_t{1} << ((c - 1) & 63)); }
    bool test(unsigned c) const noexcept {
        return (w[(c - 1) >> 6] >> ((c - 1) & 63)) & 1u;
    }
    unsigned popcount() const noexcept {
        return static_cast<unsigned>(std::popcount(w[0]) + std::popcount(w[1]));
    }
    friend ColorMask operator^(const ColorMask& a, const ColorMask& b) noexcept {
        return ColorMask{{a.w[0] ^ b.w[0], a.w[1] ^ b.w[1]}};
    }
    friend bool operator==(const ColorMask& a, const ColorMask& b) noexcept {
        return a.w == b.w;
    }
    friend bool operator<(const ColorMask& a, const ColorMask& b) noexcept {
        return a.w[1] != b.w[1] ? a.w[1] < b.w[1] : a.w[0] < b.w[0];
    }
};

// One sampled (h, pi) pair: a per-(position, symbol) bit hash and a
// per-position coloring with max(1, 17d) colors. Immutable once built.
class HashPair {
public:
    static HashPair sample(Pos length, Symbol sigma, unsigned d, std::uint64_t seed,
                           unsigned copy_index);
    // Test fixture: h(i, a) = (a - 1) & 1, colors assigned round-robin.
    static HashPair identity(Pos length, Symbol sigma, unsigned d);
    static HashPair from_tables(Pos length, Symbol sigma, unsigned d,
                                std::vector<std::uint8_t> h, std::vector<unsigned> pi);

    unsigned colors() const noexcept { return colors_; }
    std::uint8_t bit(Pos i, Symbol a) const noexcept {
        return h_[static_cast<std::size_t>(i - 1) * sigma_ + (a - 1)];
    }
    unsigned color(Pos i) const noexcept { return pi_[i - 1]; }

    static unsigned palette_size(unsigned d);

private:
    HashPair(Pos length, Symbol sigma, unsigned colors, std::vector<std::uint8_t> h,
             std::vector<unsigned> pi);

    Pos length_;
    Symbol sigma_;
    unsigned colors_;
    std::vector<std::uint8_t> h_;
    std::vector<unsigned> pi_;
};

// Intrusive doubly-linked list over positions 1..universe with O(1) insert,
// erase, and membership, plus O(|list|) traversal.
class PositionList {
public:
    explicit PositionList(Pos universe)
        : next_(universe + 1, 0), prev_(universe + 1, 0), in_(universe + 1, 0) {}

    bool contains(Pos p) const noexcept { return in_[p]; }
    Pos size() const noexcept { return size_; }
    Pos first() const noexcept { return next_[0]; }
    Pos next(Pos p) const noexcept { return next_[p]; }

    void insert(Pos p) noexcept {
        if (in_[p]) return;
        in_[p] = 1;
        next_[p] = next_[0];
        prev_[p] = 0;
        if (next_[0] != 0) prev_[next_[0]] = p;
        next_[0] = p;
        ++size_;
    }

    void erase(Pos p) noexcept {
        if (!in_[p]) return;
        in_[p] = 0;
        next_[prev_[p]] = next_[p];
        if (next_[p] != 0) prev_[next_[p]] = prev_[p];
        --size_;
    }

    std::vector<Pos> to_vector() const {
        std::vector<Pos> out;
        out.reserve(size_);
        for (Pos p = first(); p != 0; p = next(p)) out.push_back(p);
        return out;
    }

private:
    std::vector<Pos> next_, prev_;
    std::vector<std::uint8_t> in_;
    Pos size_ = 0;
};

struct FarPairResult {
    enum class Kind { kNoFarPair, kFarPairExists, kInstanceNegative };
    Kind kind = Kind::kNoFarPair;
    WordIdx a = 0, b = 0;  // witness word indices when kFarPairExists
};

struct FarWordResult {
    enum class Kind { kNone, kFound, kInstanceNegative };
    Kind kind = Kind::kNone;
    WordIdx word = 0;
    std::vector<Pos> positions;  // hash-visible differences, > d of them when found
    unsigned copy = 0;           // index of the reporting copy
};

struct QueryStats {
    std::uint64_t nodes = 0;
    std::uint64_t far_word_calls = 0;
    std::uint64_t far_pair_calls = 0;
};

// Budget transitions (parent, child) recorded by the small-alphabet search.
struct BranchTrace {
    std::vector<std::pair<int, int>> transitions;
};

// One independent randomized copy: hashed view of the dictionary, origin
// word with per-position bit counters, per-word mismatch lists, the color
// class index, and the implicit candidate word.
class FarWordCopy {
public:
    FarWordCopy(const Dictionary& dict, HashPair hash);

    // The shared dictionary must already hold new_sym at (word, pos);
    // old_sym is the symbol it replaced. Resets the candidate.
    void apply_update(WordIdx word, Pos pos, Symbol old_sym, Symbol new_sym);

    FarPairResult query_far_pair();
    void reset_candidate();
    void update_candidate(Pos pos, Symbol a);
    FarWordResult query_far_word() const;

    bool candidate_defined() const noexcept { return cand_defined_; }
    Symbol candidate_value(Pos pos) const;
    std::vector<Symbol> materialize_candidate() const;
    std::vector<Pos> candidate_diff_positions() const;

    // Positions where the hashed candidate and hashed word i differ.
    std::vector<Pos> hashed_diff_positions(WordIdx i) const;

    std::uint8_t origin_bit(Pos pos) const { return origin_[pos]; }
    std::size_t delta_size(WordIdx i) const { return deltas_[i].size(); }
    std::vector<Pos> delta_positions(WordIdx i) const { return deltas_[i].to_vector(); }
    std::size_t bad_count() const noexcept { return bad_count_; }
    std::uint64_t rebuild_charge() const noexcept { return rebuild_charge_; }
    std::uint64_t rebuild_events() const noexcept { return rebuild_events_; }
    const HashPair& hash() const noexcept { return hash_; }

    unsigned color_count(WordIdx i, unsigned c) const {
        return color_table_[static_cast<std::size_t>(i - 1) * hash_.colors() + (c - 1)];
    }
    ColorMask word_colors(WordIdx i) const { return word_mask_[i]; }
    std::vector<ColorMask> nonempty_classes() const;
    std::vector<WordIdx> class_members(const ColorMask& mask) const;

private:
    struct ClassEntry {
        WordIdx head = 0, tail = 0;
        std::uint32_t count = 0;
    };

    std::uint8_t word_bit(WordIdx w, Pos pos) const noexcept {
        return origin_[pos] ^ static_cast<std::uint8_t>(deltas_[w].contains(pos));
    }
    std::uint8_t cand_bit(Pos pos) const;
    ColorMask cand_colors() const;
    void set_delta(WordIdx w, Pos pos, bool in_delta);
    void move_class(WordIdx w, const ColorMask& new_mask);
    void rebuild_origin(Pos pos);

    const Dictionary* dict_;
    HashPair hash_;
    WordIdx n_;
    Pos length_;
    unsigned bad_threshold_;  // 8d: goodness bound for the binary hashed alphabet

    std::vector<std::uint8_t> origin_;       // [1..L]
    std::vector<std::uint32_t> zero_count_;  // [1..L], words whose hashed bit is 0
    std::vector<PositionList> deltas_;       // [1..n]
    std::size_t bad_count_ = 0;

    std::vector<std::uint32_t> color_table_;  // (i-1)*colors + (c-1)
    std::vector<ColorMask> word_mask_;        // [1..n]
    std::map<ColorMask, ClassEntry> classes_; // nonempty classes only
    std::vector<WordIdx> word_next_, word_prev_;

    bool cand_defined_ = false;
    bool reset_armed_ = false;
    std::vector<std::pair<Pos, Symbol>> cand_diffs_;

    std::uint64_t rebuild_charge_ = 0;
    std::uint64_t rebuild_events_ = 0;
};

// The full dynamic structure: one shared dictionary plus R independent
// copies. Far-pair / far-word answers are OR-ed across copies; queries run
// the two branching algorithms on top of the composite.
class ClosestStringDyn {
public:
    ClosestStringDyn(Dictionary dict, std::uint64_t seed, unsigned copies);

    static unsigned default_copies(unsigned d);  // 3 * 4^d

    const Dictionary& dictionary() const noexcept { return *dict_; }
    unsigned copy_count() const noexcept { return static_cast<unsigned>(copies_.size()); }
    const FarWordCopy& copy(unsigned idx) const { return copies_.at(idx); }

    void update_symbol(WordIdx i, Pos pos, Symbol a);

    FarPairResult query_far_pair();
    void reset_candidate();
    void update_candidate(Pos pos, Symbol a);
    FarWordResult query_far_word() const;

    bool query_branching(QueryStats* stats = nullptr);
    bool query_small_alphabet(QueryStats* stats = nullptr, BranchTrace* trace = nullptr);
    bool query(QueryStats* stats = nullptr);

    std::uint64_t max_rebuild_charge_per_copy() const;
    std::uint64_t total_rebuild_charge() const;

private:
    bool branch_rec(unsigned budget, QueryStats& stats);
    bool small_rec(int budget, QueryStats& stats, BranchTrace* trace);

    std::unique_ptr<Dictionary> dict_;
    std::vector<FarWordCopy> copies_;
    std::vector<std::uint8_t> fixed_;  // scratch F for the small-alphabet search
};

}  // namespace dynstr
