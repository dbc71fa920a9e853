#include "dynstr/reductions.hpp"

#include <algorithm>
#include <stdexcept>

namespace dynstr {

namespace {

std::vector<DfSymbol> df_backing_word(std::size_t n) {
    // 1 a_1 ... a_n 0 # 0 0, members initially empty (all a_i = 0)
    std::vector<DfSymbol> w(n + 5, PrefixU1ViaDf::kZero);
    w[0] = PrefixU1ViaDf::kOne;
    w[n + 2] = PrefixU1ViaDf::kHash;
    return w;
}

std::vector<EdSymbol> ed_backing_word(std::size_t n, bool is_x) {
    // prefix(3) + alpha(n) + reserved(3) + suffix aaa(3)
    std::vector<EdSymbol> w(n + 9, PrefixU1ViaEd::kA);
    if (is_x) {
        w[0] = PrefixU1ViaEd::kA;
        w[1] = PrefixU1ViaEd::kC;
        w[2] = PrefixU1ViaEd::kA;
    } else {
        w[0] = PrefixU1ViaEd::kC;
        w[1] = PrefixU1ViaEd::kA;
        w[2] = PrefixU1ViaEd::kC;
    }
    return w;
}

}  // namespace

PrefixU1Direct::PrefixU1Direct(std::size_t n) : n_(n), set_(std::max<std::size_t>(n, 1)) {
    if (n == 0) throw std::out_of_range("prefix-U1: universe must be positive");
}

void PrefixU1Direct::insert(std::size_t i) {
    if (i < 1 || i > n_) throw std::out_of_range("prefix-U1: element out of range");
    set_.insert(i);
}

void PrefixU1Direct::erase(std::size_t i) {
    if (i < 1 || i > n_) throw std::out_of_range("prefix-U1: element out of range");
    set_.erase(i);
}

bool PrefixU1Direct::query(std::size_t i) const {
    if (i < 1 || i > n_) throw std::out_of_range("prefix-U1: threshold out of range");
    return set_.predecessor(i).has_value();
}

// ---------------------------------------------------------------------------

PrefixU1ViaDf::PrefixU1ViaDf(std::size_t n) : n_(n), df_(df_backing_word(n), 3) {
    if (n == 0) throw std::out_of_range("prefix-U1: universe must be positive");
}

void PrefixU1ViaDf::check(std::size_t i) const {
    if (i < 1 || i > n_) throw std::out_of_range("prefix-U1: element out of range");
}

void PrefixU1ViaDf::insert(std::size_t i) {
    check(i);
    df_.update(i + 1, kOne);
}

void PrefixU1ViaDf::erase(std::size_t i) {
    check(i);
    df_.update(i + 1, kZero);
}

bool PrefixU1ViaDf::query(std::size_t i) {
    check(i);
    const DfSymbol saved = df_.word()[i + 1];  // position i + 2
    df_.update(i + 2, kHash);
    const bool answer = df_.query();
    df_.update(i + 2, saved);
    return answer;
}

// ---------------------------------------------------------------------------

PrefixU1ViaEd::PrefixU1ViaEd(std::size_t n)
    : n_(n), ed_(ed_backing_word(n, true), ed_backing_word(n, false), 2) {
    if (n == 0) throw std::out_of_range("prefix-U1: universe must be positive");
}

void PrefixU1ViaEd::check(std::size_t i) const {
    if (i < 1 || i > n_) throw std::out_of_range("prefix-U1: element out of range");
}

void PrefixU1ViaEd::set_alpha(std::size_t i, EdSymbol a) {
    ed_.update(DiagonalLce::Side::kX, i + 3, a);
    ed_.update(DiagonalLce::Side::kY, i + 3, a);
}

void PrefixU1ViaEd::insert(std::size_t i) {
    check(i);
    set_alpha(i, kB);
}

void PrefixU1ViaEd::erase(std::size_t i) {
    check(i);
    set_alpha(i, kA);
}

bool PrefixU1ViaEd::query(std::size_t i) {
    check(i);
    // swap the window x[i+4 .. i+6] -> cac, y[i+4 .. i+6] -> aca
    const EdSymbol window_x[3] = {kC, kA, kC};
    const EdSymbol window_y[3] = {kA, kC, kA};
    EdSymbol saved_x[3], saved_y[3];
    for (int j = 0; j < 3; ++j) {
        const EdPos pos = static_cast<EdPos>(i + 4 + j);
        saved_x[j] = ed_.lce().x()[pos - 1];
        saved_y[j] = ed_.lce().y()[pos - 1];
        ed_.update(DiagonalLce::Side::kX, pos, window_x[j]);
        ed_.update(DiagonalLce::Side::kY, pos, window_y[j]);
    }
    const bool positive = !ed_.within_k();  // distance > 2 iff some member <= i
    for (int j = 0; j < 3; ++j) {
        const EdPos pos = static_cast<EdPos>(i + 4 + j);
        ed_.update(DiagonalLce::Side::kX, pos, saved_x[j]);
        ed_.update(DiagonalLce::Side::kY, pos, saved_y[j]);
    }
    return positive;
}

}  // namespace dynstr
