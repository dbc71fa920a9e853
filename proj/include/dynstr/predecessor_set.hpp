#pragma once

#include <cstdint>
#include <memory>
#include <optional>

namespace dynstr {

// Dynamic subset of {1, ..., U} with predecessor/successor search, built as a
// recursive cluster/summary decomposition (van Emde Boas). The universe is
// rounded up to a power of two internally; clusters are allocated lazily, so
// construction costs O(U^{1/2}) for the root fan-out rather than O(U).
//
// Positions are 1-based externally. Duplicate insert and absent erase are
// silent no-ops. Arguments outside [1, U] throw std::out_of_range.
class PredecessorSet {
public:
    explicit PredecessorSet(std::uint64_t universe_size);
    ~PredecessorSet();

    PredecessorSet(PredecessorSet&&) noexcept;
    PredecessorSet& operator=(PredecessorSet&&) noexcept;
    PredecessorSet(const PredecessorSet&) = delete;
    PredecessorSet& operator=(const PredecessorSet&) = delete;

    std::uint64_t universe() const noexcept { return universe_; }
    std::size_t size() const noexcept { return count_; }
    bool empty() const noexcept { return count_ == 0; }

    void insert(std::uint64_t x);
    void erase(std::uint64_t x);
    bool contains(std::uint64_t x) const;

    // Largest member y with y <= x.
    std::optional<std::uint64_t> predecessor(std::uint64_t x) const;
    // Smallest member y with y >= x.
    std::optional<std::uint64_t> successor(std::uint64_t x) const;

    std::optional<std::uint64_t> min() const noexcept;
    std::optional<std::uint64_t> max() const noexcept;

    // Recursion-depth instrumentation: nodes visited on the deepest path of
    // the most recent operation, and the running maximum across all ops.
    unsigned last_depth() const noexcept { return last_depth_; }
    unsigned max_depth() const noexcept { return max_depth_; }
    void reset_depth_stats() noexcept { last_depth_ = 0; max_depth_ = 0; }

    struct Node;  // opaque

private:
    void check_range(std::uint64_t x) const;
    void touch(unsigned depth) const noexcept;

    std::unique_ptr<Node> root_;
    std::uint64_t universe_ = 0;
    std::size_t count_ = 0;
    mutable unsigned last_depth_ = 0;
    mutable unsigned max_depth_ = 0;
};

}  // namespace dynstr
