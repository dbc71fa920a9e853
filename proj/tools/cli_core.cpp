#include "cli_core.hpp"

#include <algorithm>
#include <chrono>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>

#include "dynstr/closest_string.hpp"
#include "dynstr/disjoint_factors.hpp"
#include "dynstr/edit_distance.hpp"
#include "dynstr/reductions.hpp"
#include "dynstr/rng.hpp"
#include "oracle/brute_force.hpp"

namespace cli {

const std::string kAlphabet =
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";

const std::string kBenchCsvHeader =
    "op_index,op_kind,p50_ns,p90_ns,p99_ns,rebuild_charge,branch_count,pred_depth";

namespace {

using dynstr::contract_error;
using dynstr::format_error;

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

[[noreturn]] void fail_fmt(unsigned line, const std::string& msg) {
    throw format_error("line " + std::to_string(line) + ": " + msg);
}

unsigned symbol_from_char(char c, unsigned sigma, unsigned line, unsigned col) {
    const auto idx = kAlphabet.find(c);
    if (idx == std::string::npos || idx >= sigma) {
        throw format_error("line " + std::to_string(line) + ", col " +
                           std::to_string(col) + ": symbol '" + std::string(1, c) +
                           "' outside the declared alphabet");
    }
    return static_cast<unsigned>(idx) + 1;
}

char char_from_symbol(unsigned sym) { return kAlphabet.at(sym - 1); }

unsigned parse_uint(const std::string& token, unsigned line, const char* what) {
    if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos) {
        fail_fmt(line, std::string("expected a number for ") + what + ", got '" + token + "'");
    }
    unsigned long v = 0;
    try {
        v = std::stoul(token);
    } catch (const std::exception&) {
        fail_fmt(line, std::string("number out of range for ") + what);
    }
    if (v > 0xFFFFFFFFul) fail_fmt(line, std::string("number out of range for ") + what);
    return static_cast<unsigned>(v);
}

std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

}  // namespace

Instance parse_instance(const std::string& text) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw format_error("line 1: empty instance");
    const auto header = tokens_of(lines[0]);
    if (header.empty()) fail_fmt(1, "missing header");

    if (header[0] == "CS") {
        if (header.size() != 5) fail_fmt(1, "CS header needs: CS n L sigma d");
        CsInstance inst;
        inst.n = parse_uint(header[1], 1, "n");
        inst.length = parse_uint(header[2], 1, "L");
        inst.sigma = parse_uint(header[3], 1, "sigma");
        inst.d = parse_uint(header[4], 1, "d");
        if (inst.n == 0 || inst.length == 0) fail_fmt(1, "n and L must be positive");
        if (inst.sigma == 0 || inst.sigma > kAlphabet.size()) {
            fail_fmt(1, "sigma must be in [1, 62]");
        }
        if (lines.size() < 1 + inst.n) {
            fail_fmt(static_cast<unsigned>(lines.size()),
                     "expected " + std::to_string(inst.n) + " word rows");
        }
        if (lines.size() > 1 + inst.n) fail_fmt(2 + inst.n, "trailing content");
        for (unsigned i = 0; i < inst.n; ++i) {
            const std::string& row = lines[1 + i];
            if (row.size() != inst.length) {
                fail_fmt(2 + i, "row has length " + std::to_string(row.size()) +
                                    ", header declares " + std::to_string(inst.length));
            }
            for (unsigned col = 0; col < row.size(); ++col) {
                (void)symbol_from_char(row[col], inst.sigma, 2 + i, col + 1);
            }
            inst.rows.push_back(row);
        }
        return inst;
    }
    if (header[0] == "DF") {
        if (header.size() != 3) fail_fmt(1, "DF header needs: DF n k");
        DfInstance inst;
        inst.n = parse_uint(header[1], 1, "n");
        inst.k = parse_uint(header[2], 1, "k");
        if (inst.k == 0 || inst.k > 20) fail_fmt(1, "k must be in [1, 20]");
        if (lines.size() < 2) fail_fmt(1, "expected a word row");
        if (lines.size() > 2) fail_fmt(3, "trailing content");
        const auto syms = tokens_of(lines[1]);
        if (syms.size() != inst.n) {
            fail_fmt(2, "word has " + std::to_string(syms.size()) +
                            " symbols, header declares " + std::to_string(inst.n));
        }
        for (const auto& t : syms) {
            const unsigned v = parse_uint(t, 2, "symbol");
            if (v < 1 || v > inst.k) fail_fmt(2, "symbol " + t + " outside [1, k]");
            inst.word.push_back(v);
        }
        return inst;
    }
    if (header[0] == "ED") {
        if (header.size() != 2) fail_fmt(1, "ED header needs: ED k");
        EdInstance inst;
        inst.k = parse_uint(header[1], 1, "k");
        if (lines.size() < 3) fail_fmt(1, "expected two word rows");
        if (lines.size() > 3) fail_fmt(4, "trailing content");
        for (int r = 0; r < 2; ++r) {
            const std::string& row = lines[1 + r];
            for (unsigned col = 0; col < row.size(); ++col) {
                (void)symbol_from_char(row[col], static_cast<unsigned>(kAlphabet.size()),
                                       2 + r, col + 1);
            }
        }
        inst.x = lines[1];
        inst.y = lines[2];
        return inst;
    }
    fail_fmt(1, "unknown instance kind '" + header[0] + "'");
}

std::string serialize_instance(const Instance& inst) {
    std::ostringstream out;
    if (const auto* cs = std::get_if<CsInstance>(&inst)) {
        out << "CS " << cs->n << ' ' << cs->length << ' ' << cs->sigma << ' ' << cs->d
            << '\n';
        for (const auto& row : cs->rows) out << row << '\n';
    } else if (const auto* df = std::get_if<DfInstance>(&inst)) {
        out << "DF " << df->n << ' ' << df->k << '\n';
        for (unsigned i = 0; i < df->word.size(); ++i) {
            if (i) out << ' ';
            out << df->word[i];
        }
        out << '\n';
    } else {
        const auto& ed = std::get<EdInstance>(inst);
        out << "ED " << ed.k << '\n' << ed.x << '\n' << ed.y << '\n';
    }
    return out.str();
}

std::vector<Op> parse_ops(const std::string& text, const Instance& inst) {
    const auto lines = split_lines(text);
    std::vector<Op> ops;
    for (unsigned ln = 1; ln <= lines.size(); ++ln) {
        const auto toks = tokens_of(lines[ln - 1]);
        if (toks.empty()) continue;
        Op op;
        op.line = ln;
        if (toks[0] == "Q") {
            if (toks.size() != 1) fail_fmt(ln, "Q takes no arguments");
            op.kind = Op::Kind::kQuery;
            ops.push_back(op);
            continue;
        }
        if (toks[0] != "U") fail_fmt(ln, "expected U or Q, got '" + toks[0] + "'");
        op.kind = Op::Kind::kUpdate;
        if (const auto* cs = std::get_if<CsInstance>(&inst)) {
            if (toks.size() != 4) fail_fmt(ln, "CS update needs: U <word> <pos> <sym>");
            op.a = parse_uint(toks[1], ln, "word index");
            op.b = parse_uint(toks[2], ln, "position");
            if (toks[3].size() != 1) fail_fmt(ln, "symbol must be one character");
            op.c = symbol_from_char(toks[3][0], cs->sigma, ln, 1);
            if (op.a < 1 || op.a > cs->n) {
                throw contract_error("ops line " + std::to_string(ln) +
                                     ": word index out of bounds");
            }
            if (op.b < 1 || op.b > cs->length) {
                throw contract_error("ops line " + std::to_string(ln) +
                                     ": position out of bounds");
            }
        } else if (const auto* df = std::get_if<DfInstance>(&inst)) {
            if (toks.size() != 3) fail_fmt(ln, "DF update needs: U <pos> <sym>");
            op.a = parse_uint(toks[1], ln, "position");
            op.b = parse_uint(toks[2], ln, "symbol");
            if (op.a < 1 || op.a > df->n) {
                throw contract_error("ops line " + std::to_string(ln) +
                                     ": position out of bounds");
            }
            if (op.b < 1 || op.b > df->k) {
                throw contract_error("ops line " + std::to_string(ln) +
                                     ": symbol outside [1, k]");
            }
        } else {
            const auto& ed = std::get<EdInstance>(inst);
            if (toks.size() != 4) fail_fmt(ln, "ED update needs: U x|y <pos> <sym>");
            if (toks[1] != "x" && toks[1] != "y") fail_fmt(ln, "side must be x or y");
            op.a = toks[1] == "x" ? 0 : 1;
            op.b = parse_uint(toks[2], ln, "position");
            if (toks[3].size() != 1) fail_fmt(ln, "symbol must be one character");
            op.c = symbol_from_char(toks[3][0], static_cast<unsigned>(kAlphabet.size()),
                                    ln, 1);
            const std::size_t len = op.a == 0 ? ed.x.size() : ed.y.size();
            if (op.b < 1 || op.b > len) {
                throw contract_error("ops line " + std::to_string(ln) +
                                     ": position out of bounds");
            }
        }
        ops.push_back(op);
    }
    return ops;
}

std::string serialize_ops(const std::vector<Op>& ops, const Instance& inst) {
    std::ostringstream out;
    for (const auto& op : ops) {
        if (op.kind == Op::Kind::kQuery) {
            out << "Q\n";
            continue;
        }
        if (std::holds_alternative<CsInstance>(inst)) {
            out << "U " << op.a << ' ' << op.b << ' ' << char_from_symbol(op.c) << '\n';
        } else if (std::holds_alternative<DfInstance>(inst)) {
            out << "U " << op.a << ' ' << op.b << '\n';
        } else {
            out << "U " << (op.a == 0 ? 'x' : 'y') << ' ' << op.b << ' '
                << char_from_symbol(op.c) << '\n';
        }
    }
    return out.str();
}

namespace {

dynstr::Dictionary cs_dictionary(const CsInstance& cs) {
    std::vector<std::vector<dynstr::Symbol>> words;
    words.reserve(cs.n);
    for (const auto& row : cs.rows) {
        std::vector<dynstr::Symbol> w;
        w.reserve(row.size());
        for (char c : row) {
            w.push_back(static_cast<dynstr::Symbol>(kAlphabet.find(c)) + 1);
        }
        words.push_back(std::move(w));
    }
    return dynstr::Dictionary(std::move(words), cs.sigma, cs.d);
}

std::vector<dynstr::EdSymbol> ed_word(const std::string& row) {
    std::vector<dynstr::EdSymbol> w;
    w.reserve(row.size());
    for (char c : row) w.push_back(static_cast<dynstr::EdSymbol>(kAlphabet.find(c)) + 1);
    return w;
}

// shared by run_ops and run_bench so both execute ops identically
struct Runner {
    virtual ~Runner() = default;
    virtual void update(const Op& op) = 0;
    virtual bool query() = 0;
    virtual std::uint64_t rebuild_charge() const { return 0; }
    virtual std::uint64_t branch_count() const { return 0; }
    virtual unsigned pred_depth() const { return 0; }
};

struct CsRunner : Runner {
    CsRunner(const CsInstance& cs, const RunOptions& opts)
        : ds(cs_dictionary(cs), opts.seed,
             opts.copies ? opts.copies : dynstr::ClosestStringDyn::default_copies(cs.d)) {}
    void update(const Op& op) override { ds.update_symbol(op.a, op.b, op.c); }
    bool query() override {
        dynstr::QueryStats stats;
        const bool r = ds.query(&stats);
        branches += stats.nodes;
        return r;
    }
    std::uint64_t rebuild_charge() const override { return ds.total_rebuild_charge(); }
    std::uint64_t branch_count() const override { return branches; }
    dynstr::ClosestStringDyn ds;
    std::uint64_t branches = 0;
};

struct DfRunner : Runner {
    explicit DfRunner(const DfInstance& df)
        : state(std::vector<dynstr::DfSymbol>(df.word.begin(), df.word.end()), df.k) {}
    void update(const Op& op) override { state.update(op.a, op.b); }
    bool query() override { return state.query(); }
    unsigned pred_depth() const override { return state.max_pred_depth(); }
    dynstr::DfState state;
};

struct EdRunner : Runner {
    explicit EdRunner(const EdInstance& ed) : state(ed_word(ed.x), ed_word(ed.y), ed.k) {}
    void update(const Op& op) override {
        state.update(op.a == 0 ? dynstr::DiagonalLce::Side::kX
                               : dynstr::DiagonalLce::Side::kY,
                     op.b, op.c);
    }
    bool query() override { return state.within_k(); }
    unsigned pred_depth() const override { return state.max_pred_depth(); }
    dynstr::EdState state;
};

std::unique_ptr<Runner> make_runner(const Instance& inst, const RunOptions& opts) {
    if (const auto* cs = std::get_if<CsInstance>(&inst)) {
        return std::make_unique<CsRunner>(*cs, opts);
    }
    if (const auto* df = std::get_if<DfInstance>(&inst)) {
        return std::make_unique<DfRunner>(*df);
    }
    return std::make_unique<EdRunner>(std::get<EdInstance>(inst));
}

[[noreturn]] void rethrow_with_line(const Op& op, const std::exception& e) {
    throw contract_error("ops line " + std::to_string(op.line) + ": " + e.what());
}

}  // namespace

std::vector<std::string> run_ops(const Instance& inst, const std::vector<Op>& ops,
                                 const RunOptions& opts) {
    auto runner = make_runner(inst, opts);
    std::vector<std::string> results;
    for (const auto& op : ops) {
        try {
            if (op.kind == Op::Kind::kUpdate) {
                runner->update(op);
            } else {
                results.push_back(runner->query() ? "YES" : "NO");
            }
        } catch (const contract_error& e) {
            rethrow_with_line(op, e);
        } catch (const std::out_of_range& e) {
            rethrow_with_line(op, e);
        }
    }
    return results;
}

namespace {

std::vector<Op> random_ops(dynstr::SplitMix64& rng, const Instance& inst, unsigned updates,
                           unsigned queries) {
    std::vector<Op> ops;
    const unsigned stride = queries == 0 ? 0 : std::max(1u, updates / std::max(queries, 1u));
    unsigned emitted_q = 0;
    for (unsigned u = 1; u <= updates; ++u) {
        Op op;
        op.kind = Op::Kind::kUpdate;
        if (const auto* cs = std::get_if<CsInstance>(&inst)) {
            op.a = static_cast<unsigned>(rng.below(cs->n)) + 1;
            op.b = static_cast<unsigned>(rng.below(cs->length)) + 1;
            op.c = static_cast<unsigned>(rng.below(cs->sigma)) + 1;
        } else if (const auto* df = std::get_if<DfInstance>(&inst)) {
            op.a = static_cast<unsigned>(rng.below(df->n)) + 1;
            op.b = static_cast<unsigned>(rng.below(df->k)) + 1;
        } else {
            const auto& ed = std::get<EdInstance>(inst);
            op.a = static_cast<unsigned>(rng.below(2));
            const std::size_t len = op.a == 0 ? ed.x.size() : ed.y.size();
            op.b = static_cast<unsigned>(rng.below(len)) + 1;
            const char c = kAlphabet[rng.below(4)];
            op.c = static_cast<unsigned>(kAlphabet.find(c)) + 1;
        }
        ops.push_back(op);
        if (stride && u % stride == 0 && emitted_q < queries) {
            ops.push_back(Op{Op::Kind::kQuery, 0, 0, 0, 0});
            ++emitted_q;
        }
    }
    while (emitted_q < queries) {
        ops.push_back(Op{Op::Kind::kQuery, 0, 0, 0, 0});
        ++emitted_q;
    }
    return ops;
}

}  // namespace

std::pair<Instance, std::vector<Op>> generate(const GenOptions& opts) {
    dynstr::SplitMix64 rng(opts.seed);
    Instance inst;
    if (opts.kind == "CS") {
        if (opts.n == 0 || opts.length == 0) {
            throw format_error("gen: n and L must be positive");
        }
        if (opts.sigma < 1 || opts.sigma > kAlphabet.size()) {
            throw format_error("gen: sigma must be in [1, 62]");
        }
        CsInstance cs;
        cs.n = opts.n;
        cs.length = opts.length;
        cs.sigma = opts.sigma;
        cs.d = opts.d;
        if (opts.mode == "planted") {
            std::string center(opts.length, '?');
            for (auto& c : center) c = kAlphabet[rng.below(opts.sigma)];
            for (unsigned i = 0; i < opts.n; ++i) {
                std::string row = center;
                const unsigned flips = static_cast<unsigned>(rng.below(opts.d + 1));
                std::set<unsigned> used;
                while (used.size() < std::min<std::size_t>(flips, opts.length)) {
                    used.insert(static_cast<unsigned>(rng.below(opts.length)));
                }
                for (unsigned p : used) {
                    char c = kAlphabet[rng.below(opts.sigma)];
                    while (c == row[p] && opts.sigma > 1) {
                        c = kAlphabet[rng.below(opts.sigma)];
                    }
                    row[p] = c;
                }
                cs.rows.push_back(row);
            }
        } else if (opts.mode == "adversarial") {
            if (opts.sigma < 2) throw format_error("gen: adversarial mode needs sigma >= 2");
            if (opts.length < 2 * opts.d + 1) {
                throw format_error("gen: adversarial mode needs L > 2d");
            }
            if (opts.n < 2) throw format_error("gen: adversarial mode needs n >= 2");
            for (unsigned i = 0; i < opts.n; ++i) {
                std::string row(opts.length, '?');
                for (auto& c : row) c = kAlphabet[rng.below(opts.sigma)];
                cs.rows.push_back(row);
            }
            // overwrite the second row with the first's complement
            for (unsigned p = 0; p < opts.length; ++p) {
                const unsigned s = static_cast<unsigned>(kAlphabet.find(cs.rows[0][p]));
                cs.rows[1][p] = kAlphabet[(s + 1) % opts.sigma];
            }
        } else {
            throw format_error("gen: unknown CS mode '" + opts.mode + "'");
        }
        if (opts.verified) {
            std::vector<std::vector<unsigned>> words;
            for (const auto& row : cs.rows) {
                std::vector<unsigned> w;
                for (char c : row) {
                    w.push_back(static_cast<unsigned>(kAlphabet.find(c)) + 1);
                }
                words.push_back(std::move(w));
            }
            const bool yes = oracle::cs_exhaustive(words, opts.sigma, opts.d);
            if (opts.mode == "planted" && !yes) {
                throw format_error("gen: planted instance is not a yes-instance");
            }
            if (opts.mode == "adversarial" && yes) {
                throw format_error("gen: adversarial instance is not a no-instance");
            }
        }
        inst = cs;
    } else if (opts.kind == "DF") {
        if (opts.n == 0) throw format_error("gen: n must be positive");
        if (opts.k < 1 || opts.k > 20) throw format_error("gen: k must be in [1, 20]");
        DfInstance df;
        df.n = opts.n;
        df.k = opts.k;
        for (unsigned i = 0; i < opts.n; ++i) {
            df.word.push_back(static_cast<unsigned>(rng.below(opts.k)) + 1);
        }
        inst = df;
    } else if (opts.kind == "ED") {
        if (opts.length == 0) throw format_error("gen: length must be positive");
        if (opts.sigma < 1 || opts.sigma > kAlphabet.size()) {
            throw format_error("gen: sigma must be in [1, 62]");
        }
        EdInstance ed;
        ed.k = opts.k;
        ed.x.assign(opts.length, '?');
        for (auto& c : ed.x) c = kAlphabet[rng.below(opts.sigma)];
        ed.y = ed.x;
        const unsigned edits = static_cast<unsigned>(rng.below(2 * opts.k + 2));
        for (unsigned e = 0; e < edits; ++e) {
            ed.y[rng.below(opts.length)] = kAlphabet[rng.below(opts.sigma)];
        }
        inst = ed;
    } else {
        throw format_error("gen: unknown kind '" + opts.kind + "'");
    }
    auto ops = random_ops(rng, inst, opts.updates, opts.queries);
    return {std::move(inst), std::move(ops)};
}

std::string run_bench(const Instance& inst, const std::vector<Op>& ops,
                      unsigned repetitions, const RunOptions& opts) {
    using Clock = std::chrono::steady_clock;
    if (repetitions == 0) repetitions = 1;
    std::vector<std::vector<std::uint64_t>> samples(ops.size());
    for (auto& s : samples) s.reserve(repetitions);

    std::vector<std::uint64_t> rebuilds(ops.size()), branches(ops.size());
    std::vector<unsigned> depths(ops.size());

    for (unsigned rep = 0; rep < repetitions; ++rep) {
        auto runner = make_runner(inst, opts);
        for (std::size_t i = 0; i < ops.size(); ++i) {
            const auto start = Clock::now();
            if (ops[i].kind == Op::Kind::kUpdate) {
                runner->update(ops[i]);
            } else {
                (void)runner->query();
            }
            const auto stop = Clock::now();
            samples[i].push_back(static_cast<std::uint64_t>(
                std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start)
                    .count()));
            if (rep + 1 == repetitions) {
                rebuilds[i] = runner->rebuild_charge();
                branches[i] = runner->branch_count();
                depths[i] = runner->pred_depth();
            }
        }
    }

    auto percentile = [](std::vector<std::uint64_t>& v, double q) {
        std::sort(v.begin(), v.end());
        const std::size_t idx = std::min(
            v.size() - 1, static_cast<std::size_t>(q * static_cast<double>(v.size())));
        return v[idx];
    };

    std::ostringstream out;
    out << kBenchCsvHeader << '\n';
    for (std::size_t i = 0; i < ops.size(); ++i) {
        auto& s = samples[i];
        const std::uint64_t p50 = percentile(s, 0.50);
        const std::uint64_t p90 = percentile(s, 0.90);
        const std::uint64_t p99 = percentile(s, 0.99);
        out << i + 1 << ',' << (ops[i].kind == Op::Kind::kUpdate ? 'U' : 'Q') << ',' << p50
            << ',' << p90 << ',' << p99 << ',' << rebuilds[i] << ',' << branches[i] << ','
            << depths[i] << '\n';
    }
    return out.str();
}

int reduce_demo(std::size_t n, unsigned op_count, std::uint64_t seed, std::ostream& out) {
    dynstr::SplitMix64 rng(seed);
    dynstr::PrefixU1Direct direct(n);
    dynstr::PrefixU1ViaDf via_df(n);
    dynstr::PrefixU1ViaEd via_ed(n);
    unsigned disagreements = 0;
    for (unsigned t = 0; t < op_count; ++t) {
        const std::size_t i = rng.below(n) + 1;
        switch (rng.below(3)) {
            case 0:
                direct.insert(i);
                via_df.insert(i);
                via_ed.insert(i);
                out << "I " << i << '\n';
                break;
            case 1:
                direct.erase(i);
                via_df.erase(i);
                via_ed.erase(i);
                out << "D " << i << '\n';
                break;
            default: {
                const bool a = direct.query(i);
                const bool b = via_df.query(i);
                const bool c = via_ed.query(i);
                out << "Q " << i << " -> " << (a ? "YES" : "NO");
                if (a != b || a != c) {
                    ++disagreements;
                    out << "  [mismatch: df=" << (b ? "YES" : "NO")
                        << " ed=" << (c ? "YES" : "NO") << "]";
                }
                out << '\n';
                break;
            }
        }
    }
    out << (disagreements == 0 ? "AGREEMENT OK" : "AGREEMENT FAILED") << '\n';
    return disagreements == 0 ? 0 : 1;
}

}  // namespace cli
