#include "dynstr/predecessor_set.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dynstr {

namespace {
constexpr std::uint64_t kNone = ~std::uint64_t{0};
constexpr unsigned kLeafBits = 6;  // recursion bottoms out in one 64-bit word
}  // namespace

struct PredecessorSet::Node {
    explicit Node(unsigned width) : k(width) {
        if (!leaf()) {
            low_bits = k / 2;
            clusters.resize(std::size_t{1} << (k - low_bits));
        }
    }

    bool leaf() const noexcept { return k <= kLeafBits; }
    bool is_empty() const noexcept { return leaf() ? bits == 0 : mn == kNone; }

    std::uint64_t min_value() const noexcept {
        return leaf() ? static_cast<std::uint64_t>(std::countr_zero(bits)) : mn;
    }
    std::uint64_t max_value() const noexcept {
        return leaf() ? static_cast<std::uint64_t>(63 - std::countl_zero(bits)) : mx;
    }

    std::uint64_t high(std::uint64_t x) const noexcept { return x >> low_bits; }
    std::uint64_t low(std::uint64_t x) const noexcept {
        return x & ((std::uint64_t{1} << low_bits) - 1);
    }
    std::uint64_t index(std::uint64_t c, std::uint64_t off) const noexcept {
        return (c << low_bits) | off;
    }

    unsigned k;
    unsigned low_bits = 0;
    std::uint64_t bits = 0;           // leaf payload
    std::uint64_t mn = kNone, mx = 0; // internal node min/max; mn == kNone means empty
    std::unique_ptr<Node> summary;
    std::vector<std::unique_ptr<Node>> clusters;
};

namespace {

using Node = PredecessorSet::Node;

struct DepthProbe {
    unsigned deepest = 0;
    void touch(unsigned d) noexcept {
        if (d > deepest) deepest = d;
    }
};

bool node_contains(const Node& n, std::uint64_t x, unsigned depth, DepthProbe& probe) {
    probe.touch(depth);
    if (n.leaf()) return (n.bits >> x) & 1u;
    if (n.is_empty()) return false;
    if (x == n.mn || x == n.mx) return true;
    if (x < n.mn || x > n.mx) return false;
    const Node* cl = n.clusters[n.high(x)].get();
    if (!cl || cl->is_empty()) return false;
    return node_contains(*cl, n.low(x), depth + 1, probe);
}

bool node_insert(Node& n, std::uint64_t x, unsigned depth, DepthProbe& probe) {
    probe.touch(depth);
    if (n.leaf()) {
        const std::uint64_t bit = std::uint64_t{1} << x;
        const bool present = n.bits & bit;
        n.bits |= bit;
        return !present;
    }
    if (n.is_empty()) {
        n.mn = n.mx = x;
        return true;
    }
    if (x == n.mn || x == n.mx) return false;
    if (x < n.mn) std::swap(x, n.mn);
    if (x > n.mx) n.mx = x;

    const std::uint64_t c = n.high(x);
    auto& cl = n.clusters[c];
    if (!cl) cl = std::make_unique<Node>(n.low_bits);
    if (cl->is_empty()) {
        if (!n.summary) n.summary = std::make_unique<Node>(n.k - n.low_bits);
        node_insert(*n.summary, c, depth + 1, probe);
        // first element of a cluster goes in O(1)
        if (cl->leaf()) {
            cl->bits = std::uint64_t{1} << n.low(x);
        } else {
            cl->mn = cl->mx = n.low(x);
        }
        probe.touch(depth + 1);
        return true;
    }
    return node_insert(*cl, n.low(x), depth + 1, probe);
}

bool node_erase(Node& n, std::uint64_t x, unsigned depth, DepthProbe& probe) {
    probe.touch(depth);
    if (n.leaf()) {
        const std::uint64_t bit = std::uint64_t{1} << x;
        const bool present = n.bits & bit;
        n.bits &= ~bit;
        return present;
    }
    if (n.is_empty()) return false;
    if (n.mn == n.mx) {
        if (x != n.mn) return false;
        n.mn = kNone;
        n.mx = 0;
        return true;
    }
    if (x < n.mn || x > n.mx) return false;
    if (x == n.mn) {
        // Pull the second-smallest element up into mn, then erase its copy below.
        const std::uint64_t c = n.summary->min_value();
        x = n.index(c, n.clusters[c]->min_value());
        n.mn = x;
    }
    const std::uint64_t c = n.high(x);
    Node* cl = n.clusters[c].get();
    if (!cl || cl->is_empty()) return false;
    const bool removed = node_erase(*cl, n.low(x), depth + 1, probe);
    if (!removed) return false;
    if (cl->is_empty()) {
        node_erase(*n.summary, c, depth + 1, probe);
    }
    if (x == n.mx) {
        if (!n.summary || n.summary->is_empty()) {
            n.mx = n.mn;
        } else {
            const std::uint64_t c2 = n.summary->max_value();
            n.mx = n.index(c2, n.clusters[c2]->max_value());
        }
    }
    return true;
}

std::uint64_t leaf_succ(std::uint64_t bits, std::uint64_t x) {
    const std::uint64_t masked = bits & (~std::uint64_t{0} << x);
    if (!masked) return kNone;
    return static_cast<std::uint64_t>(std::countr_zero(masked));
}

std::uint64_t leaf_pred(std::uint64_t bits, std::uint64_t x) {
    const std::uint64_t mask =
        x >= 63 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (x + 1)) - 1);
    const std::uint64_t masked = bits & mask;
    if (!masked) return kNone;
    return static_cast<std::uint64_t>(63 - std::countl_zero(masked));
}

// Smallest member >= x, or kNone.
std::uint64_t node_succ(const Node& n, std::uint64_t x, unsigned depth, DepthProbe& probe) {
    probe.touch(depth);
    if (n.leaf()) return leaf_succ(n.bits, x);
    if (n.is_empty() || x > n.mx) return kNone;
    if (x <= n.mn) return n.mn;
    const std::uint64_t c = n.high(x);
    const std::uint64_t off = n.low(x);
    const Node* cl = n.clusters[c].get();
    if (cl && !cl->is_empty() && off <= cl->max_value()) {
        return n.index(c, node_succ(*cl, off, depth + 1, probe));
    }
    if (n.summary && c + 1 < n.clusters.size()) {
        const std::uint64_t c2 = node_succ(*n.summary, c + 1, depth + 1, probe);
        if (c2 != kNone) return n.index(c2, n.clusters[c2]->min_value());
    }
    return kNone;
}

// Largest member <= x, or kNone.
std::uint64_t node_pred(const Node& n, std::uint64_t x, unsigned depth, DepthProbe& probe) {
    probe.touch(depth);
    if (n.leaf()) return leaf_pred(n.bits, x);
    if (n.is_empty() || x < n.mn) return kNone;
    if (x >= n.mx) return n.mx;
    const std::uint64_t c = n.high(x);
    const std::uint64_t off = n.low(x);
    const Node* cl = n.clusters[c].get();
    if (cl && !cl->is_empty() && off >= cl->min_value()) {
        return n.index(c, node_pred(*cl, off, depth + 1, probe));
    }
    if (n.summary && c > 0) {
        const std::uint64_t c2 = node_pred(*n.summary, c - 1, depth + 1, probe);
        if (c2 != kNone) return n.index(c2, n.clusters[c2]->max_value());
    }
    return n.mn;  // mn is not stored in any cluster
}

}  // namespace

PredecessorSet::PredecessorSet(std::uint64_t universe_size) : universe_(universe_size) {
    if (universe_size == 0) throw std::out_of_range("PredecessorSet: universe must be positive");
    const unsigned width =
        std::max<unsigned>(1, static_cast<unsigned>(std::bit_width(universe_size - 1)));
    root_ = std::make_unique<Node>(width);
}

PredecessorSet::~PredecessorSet() = default;
PredecessorSet::PredecessorSet(PredecessorSet&&) noexcept = default;
PredecessorSet& PredecessorSet::operator=(PredecessorSet&&) noexcept = default;

void PredecessorSet::check_range(std::uint64_t x) const {
    if (x < 1 || x > universe_) {
        throw std::out_of_range("PredecessorSet: position outside [1, U]");
    }
}

void PredecessorSet::touch(unsigned depth) const noexcept {
    last_depth_ = depth;
    if (depth > max_depth_) max_depth_ = depth;
}

void PredecessorSet::insert(std::uint64_t x) {
    check_range(x);
    DepthProbe probe;
    if (node_insert(*root_, x - 1, 1, probe)) ++count_;
    touch(probe.deepest);
}

void PredecessorSet::erase(std::uint64_t x) {
    check_range(x);
    DepthProbe probe;
    if (node_erase(*root_, x - 1, 1, probe)) --count_;
    touch(probe.deepest);
}

bool PredecessorSet::contains(std::uint64_t x) const {
    check_range(x);
    DepthProbe probe;
    const bool r = node_contains(*root_, x - 1, 1, probe);
    touch(probe.deepest);
    return r;
}

std::optional<std::uint64_t> PredecessorSet::predecessor(std::uint64_t x) const {
    check_range(x);
    DepthProbe probe;
    const std::uint64_t r = node_pred(*root_, x - 1, 1, probe);
    touch(probe.deepest);
    if (r == kNone) return std::nullopt;
    return r + 1;
}

std::optional<std::uint64_t> PredecessorSet::successor(std::uint64_t x) const {
    check_range(x);
    DepthProbe probe;
    const std::uint64_t r = node_succ(*root_, x - 1, 1, probe);
    touch(probe.deepest);
    if (r == kNone) return std::nullopt;
    return r + 1;
}

std::optional<std::uint64_t> PredecessorSet::min() const noexcept {
    if (root_->is_empty()) return std::nullopt;
    return root_->min_value() + 1;
}

std::optional<std::uint64_t> PredecessorSet::max() const noexcept {
    if (root_->is_empty()) return std::nullopt;
    return root_->max_value() + 1;
}

}  // namespace dynstr
