#include "dynstr/disjoint_factors.hpp"

#include <algorithm>
#include <stdexcept>

#include "dynstr/errors.hpp"

namespace dynstr {

namespace {
constexpr unsigned kMaxK = 20;  // 2^k subset table
}

DfState::DfState(std::vector<DfSymbol> word, unsigned k, DfUpdatePolicy policy)
    : word_(std::move(word)), k_(k), policy_(policy) {
    if (k_ < 1 || k_ > kMaxK) throw std::out_of_range("disjoint factors: k out of range");
    for (DfSymbol a : word_) check_symbol(a);
    occ_.reserve(k_ + 1);
    for (unsigned s = 0; s <= k_; ++s) {
        occ_.emplace_back(std::max<std::uint64_t>(word_.size(), 1));
    }
    for (std::size_t p = 1; p <= word_.size(); ++p) occ_[word_[p - 1]].insert(p);
    table_.assign(std::size_t{1} << k_, std::nullopt);
    recompute();
}

void DfState::check_pos(DfPos pos) const {
    if (pos < 1 || pos > word_.size()) {
        throw std::out_of_range("disjoint factors: position out of range");
    }
}

void DfState::check_symbol(DfSymbol a) const {
    if (a < 1 || a > k_) throw std::out_of_range("disjoint factors: symbol out of range");
}

void DfState::update(DfPos pos, DfSymbol a) {
    check_pos(pos);
    check_symbol(a);
    const DfSymbol old = word_[pos - 1];
    if (old != a) {
        occ_[old].erase(pos);
        occ_[a].insert(pos);
        word_[pos - 1] = a;
    }
    if (policy_ == DfUpdatePolicy::kEager) {
        recompute();
    } else {
        dirty_ = true;
    }
}

bool DfState::query() {
    if (dirty_) {
        recompute();
        dirty_ = false;
    }
    return answer_;
}

std::optional<DfPos> DfState::next_factor(DfSymbol a, DfPos l) const {
    if (a < 1 || a > k_) throw std::out_of_range("disjoint factors: symbol out of range");
    if (l > word_.size()) throw std::out_of_range("disjoint factors: l out of range");
    const std::size_t n = word_.size();
    if (l >= n) return std::nullopt;
    const auto start = occ_[a].successor(l + 1);
    if (!start || *start >= n) return std::nullopt;
    return occ_[a].successor(*start + 1);
}

std::optional<DfPos> DfState::table_entry(std::uint32_t subset_mask) const {
    if (subset_mask >= table_.size()) {
        throw std::out_of_range("disjoint factors: subset mask out of range");
    }
    return table_[subset_mask];
}

void DfState::recompute() {
    table_[0] = 0;
    const std::uint32_t full = static_cast<std::uint32_t>(table_.size() - 1);
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        std::optional<DfPos> best;
        for (unsigned s = 1; s <= k_; ++s) {
            const std::uint32_t bit = std::uint32_t{1} << (s - 1);
            if (!(mask & bit)) continue;
            const auto& prev = table_[mask & ~bit];
            if (!prev) continue;
            const auto end = next_factor(s, *prev);
            if (end && (!best || *end < *best)) best = end;
        }
        table_[mask] = best;
    }
    answer_ = table_[full].has_value();
}

unsigned DfState::max_pred_depth() const noexcept {
    unsigned best = 0;
    for (unsigned s = 1; s <= k_; ++s) best = std::max(best, occ_[s].max_depth());
    return best;
}

// ---------------------------------------------------------------------------

NextTable::NextTable(const std::vector<DfSymbol>& word, unsigned k)
    : n_(word.size()), k_(k) {
    table_.assign(static_cast<std::size_t>(k_) * (n_ + 2), 0);
    for (unsigned s = 1; s <= k_; ++s) {
        DfPos* row = table_.data() + static_cast<std::size_t>(s - 1) * (n_ + 2);
        row[n_ + 1] = 0;  // absent
        for (std::size_t l = n_; l >= 1; --l) {
            row[l] = (word[l - 1] == s) ? l : row[l + 1];
        }
    }
}

std::optional<DfPos> NextTable::next(DfSymbol s, DfPos l) const {
    if (s < 1 || s > k_) throw std::out_of_range("next table: symbol out of range");
    if (l < 1 || l > n_ + 1) throw std::out_of_range("next table: l out of range");
    const DfPos v = table_[static_cast<std::size_t>(s - 1) * (n_ + 2) + l];
    if (v == 0) return std::nullopt;
    return v;
}

std::optional<DfPos> NextTable::next_factor(DfSymbol s, DfPos l) const {
    if (l > n_) throw std::out_of_range("next table: l out of range");
    if (l >= n_) return std::nullopt;
    const auto start = next(s, l + 1);
    if (!start || *start >= n_) return std::nullopt;
    return next(s, *start + 1);
}

bool df_static(const std::vector<DfSymbol>& word, unsigned k) {
    if (k < 1 || k > kMaxK) throw std::out_of_range("disjoint factors: k out of range");
    for (DfSymbol a : word) {
        if (a < 1 || a > k) throw std::out_of_range("disjoint factors: symbol out of range");
    }
    const NextTable next(word, k);
    std::vector<std::optional<DfPos>> table(std::size_t{1} << k);
    table[0] = 0;
    const std::uint32_t full = static_cast<std::uint32_t>(table.size() - 1);
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        std::optional<DfPos> best;
        for (unsigned s = 1; s <= k; ++s) {
            const std::uint32_t bit = std::uint32_t{1} << (s - 1);
            if (!(mask & bit)) continue;
            const auto& prev = table[mask & ~bit];
            if (!prev) continue;
            const auto end = next.next_factor(s, *prev);
            if (end && (!best || *end < *best)) best = end;
        }
        table[mask] = best;
    }
    return table[full].has_value();
}

// ---------------------------------------------------------------------------

DfBinary::DfBinary(std::vector<DfSymbol> word) : word_(std::move(word)) {
    for (DfSymbol a : word_) {
        if (a < 1 || a > 2) throw std::out_of_range("binary disjoint factors: symbol");
        ++count_[a];
    }
}

void DfBinary::update(DfPos pos, DfSymbol a) {
    if (pos < 1 || pos > word_.size()) {
        throw std::out_of_range("binary disjoint factors: position");
    }
    if (a < 1 || a > 2) throw std::out_of_range("binary disjoint factors: symbol");
    --count_[word_[pos - 1]];
    word_[pos - 1] = a;
    ++count_[a];
}

bool DfBinary::query() const {
    const std::size_t n = word_.size();
    for (DfSymbol s = 1; s <= 2; ++s) {
        if (count_[s] < 2) return false;
    }
    for (DfSymbol s = 1; s <= 2; ++s) {
        if (count_[s] != 2) continue;
        // the s-factor is forced onto the two occurrences; the other factor
        // survives iff one side of it still has room
        const bool first_low = word_[0] == s || (n >= 2 && word_[1] == s);
        const bool second_high = word_[n - 1] == s || (n >= 2 && word_[n - 2] == s);
        if (first_low && second_high) return false;
    }
    return true;
}

}  // namespace dynstr
