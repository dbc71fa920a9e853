#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "dynstr/errors.hpp"

namespace cli {

// Fixed 62-character symbol table; an instance over sigma symbols uses its
// first sigma characters.
extern const std::string kAlphabet;

struct CsInstance {
    unsigned n = 0, length = 0, sigma = 0, d = 0;
    std::vector<std::string> rows;
};

struct DfInstance {
    unsigned n = 0, k = 0;
    std::vector<unsigned> word;
};

struct EdInstance {
    unsigned k = 0;
    std::string x, y;
};

using Instance = std::variant<CsInstance, DfInstance, EdInstance>;

Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& inst);

struct Op {
    enum class Kind { kUpdate, kQuery };
    Kind kind = Kind::kQuery;
    unsigned line = 0;  // 1-based line number in the ops text
    // update payload: CS (word, pos, sym); DF (pos, sym); ED (side, pos, sym)
    unsigned a = 0, b = 0, c = 0;
};

std::vector<Op> parse_ops(const std::string& text, const Instance& inst);
std::string serialize_ops(const std::vector<Op>& ops, const Instance& inst);

struct RunOptions {
    std::uint64_t seed = 0;
    unsigned copies = 0;  // 0 means the structure default
};

// Executes the op stream, returning one YES/NO line per query op.
std::vector<std::string> run_ops(const Instance& inst, const std::vector<Op>& ops,
                                 const RunOptions& opts);

struct GenOptions {
    std::string kind = "CS";        // CS | DF | ED
    unsigned n = 8;                 // CS words / DF length
    unsigned length = 16;           // CS word length / ED lengths
    unsigned sigma = 2;             // CS / ED alphabet
    unsigned d = 1;                 // CS radius
    unsigned k = 2;                 // DF symbols / ED budget
    std::string mode = "planted";   // CS: planted | adversarial
    unsigned updates = 32;
    unsigned queries = 8;
    std::uint64_t seed = 0;
    bool verified = false;          // cross-check the instance with an oracle
};

std::pair<Instance, std::vector<Op>> generate(const GenOptions& opts);

// Per-op wall-time percentiles across repetitions plus cumulative counters.
// One CSV row per op; includes the fixed header row.
std::string run_bench(const Instance& inst, const std::vector<Op>& ops,
                      unsigned repetitions, const RunOptions& opts);

extern const std::string kBenchCsvHeader;

// prefix-U1 demo: replays a random op stream through all three backends,
// checks agreement and restoration, prints per-query answers.
// Returns 0 on agreement, 1 otherwise.
int reduce_demo(std::size_t n, unsigned op_count, std::uint64_t seed, std::ostream& out);

}  // namespace cli
