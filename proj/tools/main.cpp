#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cli_core.hpp"
#include "oracle/brute_force.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw dynstr::format_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw dynstr::format_error("cannot open '" + path + "' for writing");
    out << content;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dynamic string data structures: run, generate, benchmark"};
    app.require_subcommand(1);

    std::string instance_path, ops_path, csv_path, out_instance, out_ops;
    cli::RunOptions run_opts;
    cli::GenOptions gen_opts;
    unsigned repetitions = 3;
    std::size_t reduce_n = 64;
    unsigned reduce_ops = 200;
    std::uint64_t reduce_seed = 0;

    auto* run = app.add_subcommand("run", "replay an op stream, print YES/NO per query");
    run->add_option("instance", instance_path)->required();
    run->add_option("ops", ops_path)->required();
    run->add_option("--seed", run_opts.seed, "hash seed for CS structures");
    run->add_option("--copies", run_opts.copies, "CS copy count (0 = 3*4^d)");

    auto* gen = app.add_subcommand("gen", "generate a seeded instance and op stream");
    gen->add_option("--kind", gen_opts.kind, "CS | DF | ED")->required();
    gen->add_option("--n", gen_opts.n, "CS word count / DF word length");
    gen->add_option("--len", gen_opts.length, "CS / ED word length");
    gen->add_option("--sigma", gen_opts.sigma, "alphabet size");
    gen->add_option("--d", gen_opts.d, "CS distance bound");
    gen->add_option("--k", gen_opts.k, "DF symbol count / ED edit budget");
    gen->add_option("--mode", gen_opts.mode, "CS: planted | adversarial");
    gen->add_option("--updates", gen_opts.updates);
    gen->add_option("--queries", gen_opts.queries);
    gen->add_option("--seed", gen_opts.seed);
    gen->add_flag("--verified", gen_opts.verified, "cross-check against the brute-force oracle");
    gen->add_option("--out-instance", out_instance, "write the instance here (default stdout)");
    gen->add_option("--out-ops", out_ops, "write the op stream here (default stdout)");

    auto* bench = app.add_subcommand("bench", "per-op latency percentiles and counters (CSV)");
    bench->add_option("instance", instance_path)->required();
    bench->add_option("ops", ops_path)->required();
    bench->add_option("--repetitions", repetitions);
    bench->add_option("--seed", run_opts.seed);
    bench->add_option("--copies", run_opts.copies);
    bench->add_option("--csv", csv_path, "write CSV here (default stdout)");

    auto* reduce = app.add_subcommand("reduce", "prefix-U1 three-backend demonstration");
    reduce->add_option("--n", reduce_n, "universe size");
    reduce->add_option("--ops", reduce_ops, "operation count");
    reduce->add_option("--seed", reduce_seed);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            const auto inst = cli::parse_instance(read_file(instance_path));
            const auto ops = cli::parse_ops(read_file(ops_path), inst);
            for (const auto& line : cli::run_ops(inst, ops, run_opts)) {
                std::cout << line << '\n';
            }
        } else if (*gen) {
            const auto [inst, ops] = cli::generate(gen_opts);
            const std::string inst_text = cli::serialize_instance(inst);
            const std::string ops_text = cli::serialize_ops(ops, inst);
            if (out_instance.empty()) {
                std::cout << inst_text;
            } else {
                write_file(out_instance, inst_text);
            }
            if (out_ops.empty()) {
                std::cout << "%%\n" << ops_text;
            } else {
                write_file(out_ops, ops_text);
            }
        } else if (*bench) {
            const auto inst = cli::parse_instance(read_file(instance_path));
            const auto ops = cli::parse_ops(read_file(ops_path), inst);
            const std::string csv = cli::run_bench(inst, ops, repetitions, run_opts);
            if (csv_path.empty()) {
                std::cout << csv;
            } else {
                write_file(csv_path, csv);
            }
        } else if (*reduce) {
            return cli::reduce_demo(reduce_n, reduce_ops, reduce_seed, std::cout);
        }
    } catch (const dynstr::format_error& e) {
        std::cerr << "format error: " << e.what() << '\n';
        return 2;
    } catch (const oracle::bound_exceeded& e) {
        std::cerr << "format error: " << e.what() << '\n';
        return 2;
    } catch (const dynstr::contract_error& e) {
        std::cerr << "contract violation: " << e.what() << '\n';
        return 3;
    } catch (const std::out_of_range& e) {
        std::cerr << "contract violation: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
