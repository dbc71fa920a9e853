#include "oracle/brute_force.hpp"

#include <algorithm>
#include <numeric>

namespace oracle {

std::size_t hamming(const std::vector<unsigned>& u, const std::vector<unsigned>& v) {
    if (u.size() != v.size()) throw std::invalid_argument("hamming: length mismatch");
    std::size_t d = 0;
    for (std::size_t i = 0; i < u.size(); ++i) d += (u[i] != v[i]);
    return d;
}

std::size_t ed_dp(const std::vector<unsigned>& x, const std::vector<unsigned>& y,
                  const Config& cfg) {
    const std::size_t n = x.size(), m = y.size();
    if (static_cast<std::uint64_t>(n) * std::max<std::size_t>(m, 1) > cfg.max_ed_cells) {
        throw bound_exceeded("ed_dp: table too large");
    }
    std::vector<std::size_t> prev(m + 1), cur(m + 1);
    std::iota(prev.begin(), prev.end(), std::size_t{0});
    for (std::size_t i = 1; i <= n; ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= m; ++j) {
            const std::size_t sub = prev[j - 1] + (x[i - 1] != y[j - 1] ? 1 : 0);
            cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
        }
        std::swap(prev, cur);
    }
    return prev[m];
}

bool cs_exhaustive(const std::vector<std::vector<unsigned>>& words, unsigned sigma,
                   unsigned d, const Config& cfg) {
    if (words.empty()) return true;
    const std::size_t len = words[0].size();
    for (const auto& w : words) {
        if (w.size() != len) throw std::invalid_argument("cs_exhaustive: ragged words");
    }
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < len; ++i) {
        total *= sigma;
        if (total > cfg.max_cs_candidates) throw bound_exceeded("cs_exhaustive: sigma^L too large");
    }
    std::vector<unsigned> c(len, 1);
    while (true) {
        bool ok = true;
        for (const auto& w : words) {
            unsigned dist = 0;
            for (std::size_t i = 0; i < len && dist <= d; ++i) dist += (c[i] != w[i]);
            if (dist > d) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
        // next candidate in lexicographic order
        std::size_t i = 0;
        while (i < len && c[i] == sigma) {
            c[i] = 1;
            ++i;
        }
        if (i == len) return false;
        ++c[i];
    }
}

namespace {

// One greedy pass for a fixed symbol order: repeatedly take the shortest
// factor of the next symbol that starts after the last consumed position.
bool greedy_pass(const std::vector<unsigned>& word, const std::vector<unsigned>& order) {
    std::size_t consumed = 0;  // everything at position <= consumed is used up
    for (unsigned s : order) {
        unsigned found = 0;
        std::size_t end = 0;
        for (std::size_t p = consumed + 1; p <= word.size() && found < 2; ++p) {
            if (word[p - 1] == s) {
                ++found;
                end = p;
            }
        }
        if (found < 2) return false;
        consumed = end;
    }
    return true;
}

bool intervals_rec(const std::vector<unsigned>& word, unsigned k, unsigned s,
                   std::uint32_t used_mask) {
    if (s > k) return true;
    // occurrences of s
    std::vector<std::size_t> occ;
    for (std::size_t p = 1; p <= word.size(); ++p) {
        if (word[p - 1] == s) occ.push_back(p);
    }
    for (std::size_t a = 0; a < occ.size(); ++a) {
        for (std::size_t b = a + 1; b < occ.size(); ++b) {
            std::uint32_t span = 0;
            for (std::size_t p = occ[a]; p <= occ[b]; ++p) span |= (std::uint32_t{1} << (p - 1));
            if (span & used_mask) continue;
            if (intervals_rec(word, k, s + 1, used_mask | span)) return true;
        }
    }
    return false;
}

}  // namespace

bool df_greedy(const std::vector<unsigned>& word, unsigned k, const Config& cfg) {
    std::uint64_t fact = 1;
    for (unsigned i = 2; i <= k; ++i) fact *= i;
    if (fact * k * std::max<std::size_t>(word.size(), 1) > cfg.max_df_greedy_work) {
        throw bound_exceeded("df_greedy: k! too large");
    }
    std::vector<unsigned> order(k);
    std::iota(order.begin(), order.end(), 1u);
    do {
        if (greedy_pass(word, order)) return true;
    } while (std::next_permutation(order.begin(), order.end()));
    return false;
}

bool df_intervals(const std::vector<unsigned>& word, unsigned k, const Config& cfg) {
    if (word.size() > cfg.max_df_interval_len) {
        throw bound_exceeded("df_intervals: word too long");
    }
    return intervals_rec(word, k, 1, 0);
}

}  // namespace oracle
