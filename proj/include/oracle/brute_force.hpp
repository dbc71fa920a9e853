#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

// Brute-force reference implementations used to validate the dynamic
// structures. Everything here is written independently of the main library:
// plain loops, plain containers, no shared helpers. Performance is explicitly
// not a goal; each entry point guards its enumeration size instead.
namespace oracle {

struct bound_exceeded : std::runtime_error {
    explicit bound_exceeded(const char* what) : std::runtime_error(what) {}
};

struct Config {
    // Enumeration guards, checked before any work is done.
    std::uint64_t max_ed_cells = 1u << 26;         // |x| * |y|
    std::uint64_t max_cs_candidates = 1u << 22;    // sigma^L
    std::uint64_t max_df_greedy_work = 1u << 27;   // k! * k * n
    std::size_t max_df_interval_len = 16;          // n for interval enumeration
};

// Hamming distance of two equal-length symbol sequences.
std::size_t hamming(const std::vector<unsigned>& u, const std::vector<unsigned>& v);

// Full quadratic edit-distance DP (insert/delete/substitute, unit costs).
std::size_t ed_dp(const std::vector<unsigned>& x, const std::vector<unsigned>& y,
                  const Config& cfg = {});

// Exhaustive Closest String: true iff some c in {1..sigma}^L is within
// Hamming distance d of every word.
bool cs_exhaustive(const std::vector<std::vector<unsigned>>& words, unsigned sigma,
                   unsigned d, const Config& cfg = {});

// Disjoint Factors by greedy left-to-right placement over all k! symbol
// orders. Symbols are 1..k.
bool df_greedy(const std::vector<unsigned>& word, unsigned k, const Config& cfg = {});

// Disjoint Factors by exhaustive placement of one (start, end) occurrence
// pair per symbol, with pairwise-disjointness checked on a position mask.
bool df_intervals(const std::vector<unsigned>& word, unsigned k, const Config& cfg = {});

}  // namespace oracle
