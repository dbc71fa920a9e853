#include "dynstr/closest_string.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "dynstr/rng.hpp"

namespace dynstr {

// ---------------------------------------------------------------------------
// Dictionary

Dictionary::Dictionary(std::vector<std::vector<Symbol>> words, Symbol sigma, unsigned d)
    : words_(std::move(words)), sigma_(sigma), d_(d) {
    if (words_.empty()) throw format_error("dictionary: need at least one word");
    if (sigma_ == 0) throw format_error("dictionary: alphabet must be nonempty");
    length_ = static_cast<Pos>(words_[0].size());
    if (length_ == 0) throw format_error("dictionary: words must be nonempty");
    for (const auto& w : words_) {
        if (w.size() != length_) throw format_error("dictionary: ragged word lengths");
        for (Symbol a : w) {
            if (a < 1 || a > sigma_) throw format_error("dictionary: symbol out of range");
        }
    }
}

void Dictionary::check_word(WordIdx i) const {
    if (i < 1 || i > n()) throw std::out_of_range("dictionary: word index out of range");
}

void Dictionary::check_pos(Pos pos) const {
    if (pos < 1 || pos > length_) throw std::out_of_range("dictionary: position out of range");
}

void Dictionary::check_symbol(Symbol a) const {
    if (a < 1 || a > sigma_) throw std::out_of_range("dictionary: symbol out of range");
}

Symbol Dictionary::at(WordIdx i, Pos pos) const {
    check_word(i);
    check_pos(pos);
    return words_[i - 1][pos - 1];
}

void Dictionary::set(WordIdx i, Pos pos, Symbol a) {
    check_word(i);
    check_pos(pos);
    check_symbol(a);
    words_[i - 1][pos - 1] = a;
}

const std::vector<Symbol>& Dictionary::word(WordIdx i) const {
    check_word(i);
    return words_[i - 1];
}

// ---------------------------------------------------------------------------
// HashPair

unsigned HashPair::palette_size(unsigned d) { return d == 0 ? 1 : 17 * d; }

HashPair::HashPair(Pos length, Symbol sigma, unsigned colors, std::vector<std::uint8_t> h,
                   std::vector<unsigned> pi)
    : length_(length), sigma_(sigma), colors_(colors), h_(std::move(h)), pi_(std::move(pi)) {
    if (colors_ > 128) {
        throw std::out_of_range("closest string: palette exceeds 128 colors (d too large)");
    }
}

HashPair HashPair::sample(Pos length, Symbol sigma, unsigned d, std::uint64_t seed,
                          unsigned copy_index) {
    const unsigned colors = palette_size(d);
    SplitMix64 rng(SplitMix64::stream_seed(seed, copy_index));
    std::vector<std::uint8_t> h(static_cast<std::size_t>(length) * sigma);
    for (auto& b : h) b = static_cast<std::uint8_t>(rng.next() & 1u);
    std::vector<unsigned> pi(length);
    for (auto& c : pi) c = static_cast<unsigned>(rng.below(colors)) + 1;
    return HashPair(length, sigma, colors, std::move(h), std::move(pi));
}

HashPair HashPair::identity(Pos length, Symbol sigma, unsigned d) {
    const unsigned colors = palette_size(d);
    std::vector<std::uint8_t> h(static_cast<std::size_t>(length) * sigma);
    for (Pos i = 1; i <= length; ++i) {
        for (Symbol a = 1; a <= sigma; ++a) {
            h[static_cast<std::size_t>(i - 1) * sigma + (a - 1)] =
                static_cast<std::uint8_t>((a - 1) & 1u);
        }
    }
    std::vector<unsigned> pi(length);
    for (Pos i = 1; i <= length; ++i) pi[i - 1] = ((i - 1) % colors) + 1;
    return HashPair(length, sigma, colors, std::move(h), std::move(pi));
}

HashPair HashPair::from_tables(Pos length, Symbol sigma, unsigned d,
                               std::vector<std::uint8_t> h, std::vector<unsigned> pi) {
    const unsigned colors = palette_size(d);
    if (h.size() != static_cast<std::size_t>(length) * sigma || pi.size() != length) {
        throw format_error("hash tables have wrong dimensions");
    }
    for (unsigned c : pi) {
        if (c < 1 || c > colors) throw format_error("color out of palette");
    }
    return HashPair(length, sigma, colors, std::move(h), std::move(pi));
}

// ---------------------------------------------------------------------------
// FarWordCopy

FarWordCopy::FarWordCopy(const Dictionary& dict, HashPair hash)
    : dict_(&dict),
      hash_(std::move(hash)),
      n_(dict.n()),
      length_(dict.length()),
      bad_threshold_(8 * dict.d()),
      origin_(length_ + 1, 0),
      zero_count_(length_ + 1, 0),
      word_mask_(n_ + 1),
      word_next_(n_ + 1, 0),
      word_prev_(n_ + 1, 0) {
    color_table_.assign(static_cast<std::size_t>(n_) * hash_.colors(), 0);
    deltas_.reserve(n_ + 1);
    for (WordIdx w = 0; w <= n_; ++w) deltas_.emplace_back(length_);

    for (Pos pos = 1; pos <= length_; ++pos) {
        std::uint32_t zeros = 0;
        for (WordIdx w = 1; w <= n_; ++w) {
            zeros += (hash_.bit(pos, dict.at(w, pos)) == 0);
        }
        zero_count_[pos] = zeros;
        // majority bit, ties toward the smaller bit value
        origin_[pos] = (2 * zeros >= n_) ? 0 : 1;
    }

    for (WordIdx w = 1; w <= n_; ++w) {
        ColorMask mask;
        for (Pos pos = 1; pos <= length_; ++pos) {
            if (hash_.bit(pos, dict.at(w, pos)) != origin_[pos]) {
                deltas_[w].insert(pos);
                const unsigned c = hash_.color(pos);
                ++color_table_[static_cast<std::size_t>(w - 1) * hash_.colors() + (c - 1)];
                mask.set(c);
            }
        }
        word_mask_[w] = mask;
        auto& entry = classes_[mask];
        if (entry.tail == 0) {
            entry.head = entry.tail = w;
        } else {
            word_next_[entry.tail] = w;
            word_prev_[w] = entry.tail;
            entry.tail = w;
        }
        ++entry.count;
        if (deltas_[w].size() > bad_threshold_) ++bad_count_;
    }
}

void FarWordCopy::move_class(WordIdx w, const ColorMask& new_mask) {
    const ColorMask old_mask = word_mask_[w];
    if (old_mask == new_mask) return;

    auto it = classes_.find(old_mask);
    ClassEntry& old_entry = it->second;
    const WordIdx nx = word_next_[w], pv = word_prev_[w];
    if (pv != 0) word_next_[pv] = nx; else old_entry.head = nx;
    if (nx != 0) word_prev_[nx] = pv; else old_entry.tail = pv;
    if (--old_entry.count == 0) classes_.erase(it);

    word_mask_[w] = new_mask;
    auto& entry = classes_[new_mask];
    word_next_[w] = 0;
    word_prev_[w] = entry.tail;
    if (entry.tail == 0) {
        entry.head = w;
    } else {
        word_next_[entry.tail] = w;
    }
    entry.tail = w;
    ++entry.count;
}

void FarWordCopy::set_delta(WordIdx w, Pos pos, bool in_delta) {
    PositionList& dl = deltas_[w];
    const bool was = dl.contains(pos);
    if (was == in_delta) return;

    const std::size_t old_size = dl.size();
    const unsigned c = hash_.color(pos);
    auto& cnt = color_table_[static_cast<std::size_t>(w - 1) * hash_.colors() + (c - 1)];
    ColorMask mask = word_mask_[w];
    if (in_delta) {
        dl.insert(pos);
        if (++cnt == 1) mask.set(c);
    } else {
        dl.erase(pos);
        if (--cnt == 0) mask.reset(c);
    }
    move_class(w, mask);

    const std::size_t new_size = dl.size();
    if (old_size <= bad_threshold_ && new_size > bad_threshold_) ++bad_count_;
    if (old_size > bad_threshold_ && new_size <= bad_threshold_) --bad_count_;
}

void FarWordCopy::rebuild_origin(Pos pos) {
    ++rebuild_events_;
    rebuild_charge_ += 2 * static_cast<std::uint64_t>(n_);
    const std::uint8_t new_bit = (2 * zero_count_[pos] >= n_) ? 0 : 1;
    assert(new_bit != origin_[pos]);
    origin_[pos] = new_bit;
    for (WordIdx w = 1; w <= n_; ++w) {
        const std::uint8_t bit = hash_.bit(pos, dict_->at(w, pos));
        set_delta(w, pos, bit != new_bit);
    }
}

void FarWordCopy::apply_update(WordIdx word, Pos pos, Symbol old_sym, Symbol new_sym) {
    if (word < 1 || word > n_) throw std::out_of_range("update: word index out of range");
    if (pos < 1 || pos > length_) throw std::out_of_range("update: position out of range");

    // every dictionary update invalidates the candidate
    cand_defined_ = false;
    cand_diffs_.clear();
    reset_armed_ = false;

    const std::uint8_t b_old = hash_.bit(pos, old_sym);
    const std::uint8_t b_new = hash_.bit(pos, new_sym);
    if (b_old == b_new) return;

    zero_count_[pos] += (b_new == 0) ? 1u : -1u;
    set_delta(word, pos, b_new != origin_[pos]);

    const std::uint32_t matching =
        origin_[pos] == 0 ? zero_count_[pos] : n_ - zero_count_[pos];
    if (4 * matching < n_) rebuild_origin(pos);
}

FarPairResult FarWordCopy::query_far_pair() {
    reset_armed_ = false;
    if (bad_count_ > 0) {
        return {FarPairResult::Kind::kInstanceNegative, 0, 0};
    }
    const unsigned limit = 2 * dict_->d();
    for (auto it1 = classes_.begin(); it1 != classes_.end(); ++it1) {
        for (auto it2 = std::next(it1); it2 != classes_.end(); ++it2) {
            if ((it1->first ^ it2->first).popcount() > limit) {
                return {FarPairResult::Kind::kFarPairExists, it1->second.head,
                        it2->second.head};
            }
        }
    }
    reset_armed_ = true;
    return {FarPairResult::Kind::kNoFarPair, 0, 0};
}

void FarWordCopy::reset_candidate() {
    if (!reset_armed_) {
        throw contract_error(
            "reset_candidate requires a preceding negative far-pair answer");
    }
    cand_defined_ = true;
    cand_diffs_.clear();
}

void FarWordCopy::update_candidate(Pos pos, Symbol a) {
    if (!cand_defined_) throw contract_error("update_candidate: candidate undefined");
    if (pos < 1 || pos > length_) throw std::out_of_range("update_candidate: position");
    if (a < 1 || a > dict_->sigma()) throw std::out_of_range("update_candidate: symbol");

    const Symbol base = dict_->at(1, pos);
    auto it = std::find_if(cand_diffs_.begin(), cand_diffs_.end(),
                           [pos](const auto& e) { return e.first == pos; });
    if (a == base) {
        if (it != cand_diffs_.end()) cand_diffs_.erase(it);
        return;
    }
    if (it != cand_diffs_.end()) {
        it->second = a;
        return;
    }
    if (cand_diffs_.size() >= dict_->d()) {
        throw contract_error("update_candidate: candidate diff budget exceeded");
    }
    cand_diffs_.emplace_back(pos, a);
}

Symbol FarWordCopy::candidate_value(Pos pos) const {
    if (!cand_defined_) throw contract_error("candidate undefined");
    if (pos < 1 || pos > length_) throw std::out_of_range("candidate_value: position");
    for (const auto& [p, sym] : cand_diffs_) {
        if (p == pos) return sym;
    }
    return dict_->at(1, pos);
}

std::vector<Symbol> FarWordCopy::materialize_candidate() const {
    if (!cand_defined_) throw contract_error("candidate undefined");
    std::vector<Symbol> q = dict_->word(1);
    for (const auto& [p, sym] : cand_diffs_) q[p - 1] = sym;
    return q;
}

std::vector<Pos> FarWordCopy::candidate_diff_positions() const {
    std::vector<Pos> out;
    out.reserve(cand_diffs_.size());
    for (const auto& [p, sym] : cand_diffs_) out.push_back(p);
    std::sort(out.begin(), out.end());
    return out;
}

std::uint8_t FarWordCopy::cand_bit(Pos pos) const {
    for (const auto& [p, sym] : cand_diffs_) {
        if (p == pos) return hash_.bit(pos, sym);
    }
    return word_bit(1, pos);
}

ColorMask FarWordCopy::cand_colors() const {
    ColorMask q;
    for (Pos pos = deltas_[1].first(); pos != 0; pos = deltas_[1].next(pos)) {
        if (cand_bit(pos) != origin_[pos]) q.set(hash_.color(pos));
    }
    for (const auto& [pos, sym] : cand_diffs_) {
        if (deltas_[1].contains(pos)) continue;
        if (hash_.bit(pos, sym) != origin_[pos]) q.set(hash_.color(pos));
    }
    return q;
}

std::vector<Pos> FarWordCopy::hashed_diff_positions(WordIdx i) const {
    if (!cand_defined_) throw contract_error("candidate undefined");
    std::vector<Pos> out;
    for (Pos pos = deltas_[i].first(); pos != 0; pos = deltas_[i].next(pos)) {
        if (cand_bit(pos) == origin_[pos]) out.push_back(pos);
    }
    for (Pos pos = deltas_[1].first(); pos != 0; pos = deltas_[1].next(pos)) {
        if (deltas_[i].contains(pos)) continue;
        if (cand_bit(pos) != origin_[pos]) out.push_back(pos);
    }
    for (const auto& [pos, sym] : cand_diffs_) {
        if (deltas_[i].contains(pos) || deltas_[1].contains(pos)) continue;
        if (hash_.bit(pos, sym) != origin_[pos]) out.push_back(pos);
    }
    std::sort(out.begin(), out.end());
    return out;
}

FarWordResult FarWordCopy::query_far_word() const {
    if (!cand_defined_) throw contract_error("query_far_word: candidate undefined");
    if (deltas_[1].size() > bad_threshold_) {
        return {FarWordResult::Kind::kInstanceNegative, 0, {}, 0};
    }
    const ColorMask q = cand_colors();
    const unsigned limit = dict_->d();
    for (const auto& [mask, entry] : classes_) {
        if ((mask ^ q).popcount() > limit) {
            const WordIdx w = entry.head;
            auto positions = hashed_diff_positions(w);
            assert(positions.size() > limit);
            return {FarWordResult::Kind::kFound, w, std::move(positions), 0};
        }
    }
    return {FarWordResult::Kind::kNone, 0, {}, 0};
}

std::vector<ColorMask> FarWordCopy::nonempty_classes() const {
    std::vector<ColorMask> out;
    out.reserve(classes_.size());
    for (const auto& [mask, entry] : classes_) out.push_back(mask);
    return out;
}

std::vector<WordIdx> FarWordCopy::class_members(const ColorMask& mask) const {
    std::vector<WordIdx> out;
    auto it = classes_.find(mask);
    if (it == classes_.end()) return out;
    for (WordIdx w = it->second.head; w != 0; w = word_next_[w]) out.push_back(w);
    return out;
}

// ---------------------------------------------------------------------------
// ClosestStringDyn

unsigned ClosestStringDyn::default_copies(unsigned d) {
    return 3u << (2 * std::min(d, 12u));
}

ClosestStringDyn::ClosestStringDyn(Dictionary dict, std::uint64_t seed, unsigned copies)
    : dict_(std::make_unique<Dictionary>(std::move(dict))) {
    if (copies < 1) throw contract_error("closest string: need at least one copy");
    copies_.reserve(copies);
    for (unsigned i = 0; i < copies; ++i) {
        copies_.emplace_back(*dict_, HashPair::sample(dict_->length(), dict_->sigma(),
                                                      dict_->d(), seed, i));
    }
    fixed_.assign(dict_->length() + 1, 0);
}

void ClosestStringDyn::update_symbol(WordIdx i, Pos pos, Symbol a) {
    const Symbol old_sym = dict_->at(i, pos);
    dict_->set(i, pos, a);
    for (auto& c : copies_) c.apply_update(i, pos, old_sym, a);
}

FarPairResult ClosestStringDyn::query_far_pair() {
    bool saw_negative = false;
    for (auto& c : copies_) {
        const FarPairResult r = c.query_far_pair();
        if (r.kind == FarPairResult::Kind::kFarPairExists) return r;
        if (r.kind == FarPairResult::Kind::kInstanceNegative) saw_negative = true;
    }
    if (saw_negative) return {FarPairResult::Kind::kInstanceNegative, 0, 0};
    return {FarPairResult::Kind::kNoFarPair, 0, 0};
}

void ClosestStringDyn::reset_candidate() {
    for (auto& c : copies_) c.reset_candidate();
}

void ClosestStringDyn::update_candidate(Pos pos, Symbol a) {
    for (auto& c : copies_) c.update_candidate(pos, a);
}

FarWordResult ClosestStringDyn::query_far_word() const {
    for (unsigned i = 0; i < copies_.size(); ++i) {
        FarWordResult r = copies_[i].query_far_word();
        if (r.kind != FarWordResult::Kind::kNone) {
            r.copy = i;
            return r;
        }
    }
    return {FarWordResult::Kind::kNone, 0, {}, 0};
}

bool ClosestStringDyn::branch_rec(unsigned budget, QueryStats& stats) {
    ++stats.nodes;
    ++stats.far_word_calls;
    const FarWordResult fw = query_far_word();
    if (fw.kind == FarWordResult::Kind::kNone) return true;
    if (fw.kind == FarWordResult::Kind::kInstanceNegative) return false;
    if (fw.positions.size() > 3 * static_cast<std::size_t>(dict_->d())) return false;
    if (budget == 0) return false;
    for (Pos pos : fw.positions) {
        const Symbol target = dict_->at(fw.word, pos);
        const Symbol prev = copies_[0].candidate_value(pos);
        update_candidate(pos, target);
        const bool ok = branch_rec(budget - 1, stats);
        update_candidate(pos, prev);
        if (ok) return true;
    }
    return false;
}

bool ClosestStringDyn::query_branching(QueryStats* stats) {
    QueryStats local;
    QueryStats& st = stats ? *stats : local;
    ++st.far_pair_calls;
    const FarPairResult fp = query_far_pair();
    if (fp.kind != FarPairResult::Kind::kNoFarPair) return false;
    reset_candidate();
    return branch_rec(dict_->d(), st);
}

bool ClosestStringDyn::small_rec(int budget, QueryStats& stats, BranchTrace* trace) {
    ++stats.nodes;
    ++stats.far_word_calls;
    const FarWordResult fw = query_far_word();
    if (fw.kind == FarWordResult::Kind::kNone) return true;
    if (fw.kind == FarWordResult::Kind::kInstanceNegative) return false;

    const unsigned d = dict_->d();
    if (fw.positions.size() > 2 * static_cast<std::size_t>(d)) return false;

    std::vector<Pos> open;  // P := D \ F
    for (Pos pos : fw.positions) {
        if (!fixed_[pos]) open.push_back(pos);
    }
    if (open.empty()) return false;

    for (Pos pos : open) fixed_[pos] = 1;
    std::vector<Symbol> before(open.size());
    for (std::size_t i = 0; i < open.size(); ++i) {
        before[i] = copies_[0].candidate_value(open[i]);
    }

    const Symbol sigma = dict_->sigma();
    bool found = false;
    const std::uint32_t subsets = std::uint32_t{1} << open.size();
    for (std::uint32_t mask = 1; mask < subsets && !found; ++mask) {
        const int qsize = std::popcount(mask);
        if (qsize > budget) continue;

        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < open.size(); ++i) {
            if (mask & (std::uint32_t{1} << i)) idx.push_back(i);
        }
        // odometer over symbol guesses, skipping the current candidate symbol
        std::vector<Symbol> guess(idx.size(), 1);
        while (true) {
            bool legal = true;
            for (std::size_t j = 0; j < idx.size(); ++j) {
                if (guess[j] == before[idx[j]]) {
                    legal = false;
                    break;
                }
            }
            if (legal) {
                for (std::size_t j = 0; j < idx.size(); ++j) {
                    update_candidate(open[idx[j]], guess[j]);
                }
                const int hashed_dist = static_cast<int>(
                    copies_[fw.copy].hashed_diff_positions(fw.word).size());
                const int next_budget =
                    std::min(static_cast<int>(d) - hashed_dist, budget - qsize);
                if (trace) trace->transitions.emplace_back(budget, next_budget);
                bool ok = false;
                if (next_budget >= 0) ok = small_rec(next_budget, stats, trace);
                for (std::size_t j = 0; j < idx.size(); ++j) {
                    update_candidate(open[idx[j]], before[idx[j]]);
                }
                if (ok) {
                    found = true;
                    break;
                }
            }
            // advance odometer
            std::size_t j = 0;
            while (j < idx.size() && guess[j] == sigma) {
                guess[j] = 1;
                ++j;
            }
            if (j == idx.size()) break;
            ++guess[j];
        }
    }

    for (Pos pos : open) fixed_[pos] = 0;
    return found;
}

bool ClosestStringDyn::query_small_alphabet(QueryStats* stats, BranchTrace* trace) {
    QueryStats local;
    QueryStats& st = stats ? *stats : local;
    ++st.far_pair_calls;
    const FarPairResult fp = query_far_pair();
    if (fp.kind != FarPairResult::Kind::kNoFarPair) return false;
    reset_candidate();
    std::fill(fixed_.begin(), fixed_.end(), 0);
    return small_rec(static_cast<int>(dict_->d()), st, trace);
}

bool ClosestStringDyn::query(QueryStats* stats) {
    const unsigned d = dict_->d();
    if (d == 0) {
        // degenerate palette: the instance is a yes iff no copy distinguishes
        // any pair of words and no copy flags a bad origin
        QueryStats local;
        QueryStats& st = stats ? *stats : local;
        ++st.far_pair_calls;
        return query_far_pair().kind == FarPairResult::Kind::kNoFarPair;
    }
    // (3d)^d <= (sigma-1)^d * 2^(3d) simplifies to 3d <= 8(sigma-1)
    if (3 * d <= 8 * (dict_->sigma() - 1)) return query_branching(stats);
    return query_small_alphabet(stats, nullptr);
}

std::uint64_t ClosestStringDyn::max_rebuild_charge_per_copy() const {
    std::uint64_t best = 0;
    for (const auto& c : copies_) best = std::max(best, c.rebuild_charge());
    return best;
}

std::uint64_t ClosestStringDyn::total_rebuild_charge() const {
    std::uint64_t sum = 0;
    for (const auto& c : copies_) sum += c.rebuild_charge();
    return sum;
}

}  // namespace dynstr
