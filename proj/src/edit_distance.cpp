#include "dynstr/edit_distance.hpp"

#include <algorithm>
#include <stdexcept>

#include "dynstr/errors.hpp"

namespace dynstr {

DiagonalLce::DiagonalLce(std::vector<EdSymbol> x, std::vector<EdSymbol> y, unsigned k)
    : x_(std::move(x)), y_(std::move(y)), k_(k) {
    const std::uint64_t universe = std::max<std::uint64_t>(x_.size(), 1);
    sets_.reserve(2 * static_cast<std::size_t>(k_) + 1);
    for (int p = -static_cast<int>(k_); p <= static_cast<int>(k_); ++p) {
        sets_.emplace_back(universe);
    }
    for (std::size_t i = 1; i <= x_.size(); ++i) {
        for (int p = -static_cast<int>(k_); p <= static_cast<int>(k_); ++p) {
            const long long j = static_cast<long long>(i) + p;
            if (j < 1 || j > static_cast<long long>(y_.size())) continue;
            if (x_[i - 1] != y_[j - 1]) set_for(p).insert(i);
        }
    }
}

void DiagonalLce::set_membership(int p, EdPos i, bool mismatched) {
    if (mismatched) {
        set_for(p).insert(i);
    } else {
        set_for(p).erase(i);
    }
}

void DiagonalLce::update(Side side, EdPos pos, EdSymbol a) {
    if (side == Side::kX) {
        if (pos < 1 || pos > x_.size()) throw std::out_of_range("lce update: position");
        x_[pos - 1] = a;
        for (int p = -static_cast<int>(k_); p <= static_cast<int>(k_); ++p) {
            const long long j = static_cast<long long>(pos) + p;
            if (j < 1 || j > static_cast<long long>(y_.size())) continue;
            set_membership(p, pos, a != y_[j - 1]);
        }
    } else {
        if (pos < 1 || pos > y_.size()) throw std::out_of_range("lce update: position");
        y_[pos - 1] = a;
        for (int p = -static_cast<int>(k_); p <= static_cast<int>(k_); ++p) {
            const long long i = static_cast<long long>(pos) - p;
            if (i < 1 || i > static_cast<long long>(x_.size())) continue;
            set_membership(p, static_cast<EdPos>(i), x_[i - 1] != a);
        }
    }
}

std::size_t DiagonalLce::lce(EdPos i, EdPos j) const {
    if (i < 1 || i > x_.size() + 1) throw std::out_of_range("lce: i out of range");
    if (j < 1 || j > y_.size() + 1) throw std::out_of_range("lce: j out of range");
    const long long p = static_cast<long long>(j) - static_cast<long long>(i);
    if (p > static_cast<long long>(k_) || -p > static_cast<long long>(k_)) {
        throw contract_error("lce: |i - j| exceeds the diagonal band");
    }
    const long long limit =
        std::min(static_cast<long long>(x_.size()) - static_cast<long long>(i) + 1,
                 static_cast<long long>(y_.size()) - static_cast<long long>(j) + 1);
    if (limit <= 0) return 0;
    std::optional<std::uint64_t> m;
    if (i <= x_.size()) m = set_for(static_cast<int>(p)).successor(i);
    if (!m) return static_cast<std::size_t>(limit);
    const long long to_mismatch = static_cast<long long>(*m) - static_cast<long long>(i);
    return static_cast<std::size_t>(std::min(limit, to_mismatch));
}

std::vector<EdPos> DiagonalLce::mismatch_positions(int p) const {
    if (p < -static_cast<int>(k_) || p > static_cast<int>(k_)) {
        throw std::out_of_range("mismatch_positions: diagonal out of band");
    }
    std::vector<EdPos> out;
    const auto& s = set_for(p);
    for (auto v = s.min(); v; v = (*v < s.universe()) ? s.successor(*v + 1) : std::nullopt) {
        out.push_back(*v);
    }
    return out;
}

unsigned DiagonalLce::max_pred_depth() const noexcept {
    unsigned best = 0;
    for (const auto& s : sets_) best = std::max(best, s.max_depth());
    return best;
}

// ---------------------------------------------------------------------------

EdState::EdState(std::vector<EdSymbol> x, std::vector<EdSymbol> y, unsigned k)
    : lce_(std::move(x), std::move(y), k) {}

void EdState::update(DiagonalLce::Side side, EdPos pos, EdSymbol a) {
    lce_.update(side, pos, a);
}

std::optional<unsigned> EdState::run(std::vector<std::vector<long long>>* frontier) const {
    constexpr long long kUnreachable = -(1LL << 60);
    const long long nx = static_cast<long long>(lce_.x().size());
    const long long ny = static_cast<long long>(lce_.y().size());
    const int k = static_cast<int>(lce_.k());
    const long long shift = ny - nx;
    if (shift > k || -shift > k) return std::nullopt;
    const int target = static_cast<int>(shift);

    // row[t + k] = furthest row reachable on diagonal t with the current
    // number of edits
    std::vector<long long> row(2 * k + 1, kUnreachable);
    row[k] = static_cast<long long>(lce_.lce(1, 1));
    if (frontier) {
        frontier->clear();
        frontier->push_back(row);
    }
    if (row[target + k] >= nx) return 0;

    std::vector<long long> next(2 * k + 1, kUnreachable);
    for (int b = 1; b <= k; ++b) {
        std::fill(next.begin(), next.end(), kUnreachable);
        for (int t = -b; t <= b; ++t) {
            if (t > ny || -t > nx) continue;  // diagonal has no cells
            long long start = kUnreachable;
            if (row[t + k] != kUnreachable) start = row[t + k] + 1;  // substitution
            if (t + 1 <= k && row[t + 1 + k] != kUnreachable) {
                start = std::max(start, row[t + 1 + k] + 1);  // delete from x
            }
            if (t - 1 >= -k && row[t - 1 + k] != kUnreachable) {
                start = std::max(start, row[t - 1 + k]);  // insert into x
            }
            if (start == kUnreachable) continue;
            start = std::min({start, nx, ny - t});
            next[t + k] = start + static_cast<long long>(
                                      lce_.lce(static_cast<EdPos>(start + 1),
                                               static_cast<EdPos>(start + t + 1)));
        }
        row.swap(next);
        if (frontier) frontier->push_back(row);
        if (row[target + k] >= nx) return static_cast<unsigned>(b);
    }
    return std::nullopt;
}

}  // namespace dynstr
