#include "collatz/cli.hpp"

#include <fstream>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "collatz/core.hpp"
#include "collatz/tree.hpp"
#include "collatz/verify.hpp"

namespace collatz::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Nat parse_nat(const std::string& s, const char* what) {
    try {
        return Nat::from_decimal(s);
    } catch (const std::invalid_argument&) {
        throw UsageError(std::string(what) + ": expected a decimal integer, got '" + s + "'");
    }
}

Nat parse_odd(const std::string& s, const char* what) {
    Nat v = parse_nat(s, what);
    if (v.is_zero() || v.is_even()) {
        throw UsageError(std::string(what) + ": must be a positive odd number, got '" + s + "'");
    }
    return v;
}

std::string join_values(const std::vector<Nat>& vs) {
    std::string line;
    for (size_t i = 0; i < vs.size(); ++i) {
        if (i) line += ' ';
        line += vs[i].to_string();
    }
    return line;
}

tree::ExportFormat format_of(const std::string& name) {
    if (name == "json") return tree::ExportFormat::Json;
    if (name == "csv") return tree::ExportFormat::Csv;
    return tree::ExportFormat::Dot;
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw UsageError("cannot open output file '" + path + "'");
    file << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Odd Collatz tree toolkit: sequences, inverse decomposition, tree export,\n"
                 "range verification and cycle search."};
    app.name("collatz");
    app.require_subcommand(0, 1);

    // seq
    std::string seq_n;
    bool seq_modified = false;
    uint64_t seq_limit = core::kDefaultStepLimit;
    auto* seq = app.add_subcommand("seq", "Print the trajectory of a start value");
    seq->add_option("n", seq_n, "start value")->required();
    seq->add_flag("--modified", seq_modified, "odd-to-odd map (requires an odd start)");
    seq->add_option("--limit", seq_limit, "maximum number of steps")->capture_default_str();

    // decompose
    std::string dec_x;
    auto* dec = app.add_subcommand("decompose", "Resolve an odd value to its generator and parent");
    dec->add_option("x", dec_x, "odd value")->required();

    // children
    std::string ch_x, ch_bound;
    auto* ch = app.add_subcommand("children", "List the children of an odd value up to a bound");
    ch->add_option("x", ch_x, "odd value")->required();
    ch->add_option("--bound", ch_bound, "largest child value to emit")->required();

    // parent
    std::string par_x;
    auto* par = app.add_subcommand("parent", "Print the parent edge of an odd value");
    par->add_option("x", par_x, "odd value")->required();

    // tree
    std::string tree_bound, tree_output;
    uint64_t tree_depth = tree::kUnboundedDepth;
    std::string tree_format = "dot";
    auto* tr = app.add_subcommand("tree", "Expand the tree from the root and export it");
    tr->add_option("--bound", tree_bound, "largest node value")->required();
    tr->add_option("--depth", tree_depth, "maximum depth below the root");
    tr->add_option("--format", tree_format, "dot, json or csv")
        ->check(CLI::IsMember({"dot", "json", "csv"}))
        ->capture_default_str();
    tr->add_option("--output", tree_output, "write to a file instead of stdout");

    // verify
    std::string ver_from, ver_to;
    verify::VerifyOptions ver_opts;
    auto* ver = app.add_subcommand("verify", "Check that every odd start in a range reaches 1");
    ver->add_option("--from", ver_from, "first odd start")->required();
    ver->add_option("--to", ver_to, "last odd start")->required();
    ver->add_option("--step-limit", ver_opts.step_limit, "odd steps allowed per start")->capture_default_str();
    ver->add_option("--memo-cap", ver_opts.memo_cap, "memoize verified starts below this value")
        ->capture_default_str();
    ver->add_option("--workers", ver_opts.workers, "worker threads (0 = all)")->capture_default_str();

    // cycle-search
    std::string cyc_x;
    uint64_t cyc_iters = core::kDefaultStepLimit;
    auto* cyc = app.add_subcommand("cycle-search", "Run cycle detection from an odd start");
    cyc->add_option("x", cyc_x, "odd start")->required();
    cyc->add_option("--max-iters", cyc_iters, "iteration budget")->capture_default_str();

    // table
    uint64_t table_max_p = 6;
    auto* tab = app.add_subcommand("table", "First-step valuation classes as CSV");
    tab->add_option("--max-p", table_max_p, "number of rows")->capture_default_str();

    // density
    uint64_t den_p = 0, den_m = 0;
    auto* den = app.add_subcommand("density", "Count odds below 2^m with first-step valuation p");
    den->add_option("p", den_p, "valuation")->required();
    den->add_option("m", den_m, "exponent of the scan bound")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (app.got_subcommand(seq)) {
            if (seq_modified) {
                auto path = core::odd_sequence(parse_odd(seq_n, "seq"), seq_limit);
                out << join_values(path.values) << "\n";
            } else {
                Nat n = parse_nat(seq_n, "seq");
                if (n.is_zero()) throw UsageError("seq: start must be >= 1");
                out << join_values(core::collatz_sequence(n, seq_limit)) << "\n";
            }
            return 0;
        }

        if (app.got_subcommand(dec)) {
            auto d = tree::decompose(parse_odd(dec_x, "decompose"));
            auto e = tree::parent(parse_odd(dec_x, "decompose"));
            out << "branch=" << (d.branch == tree::Branch::Minus ? "minus" : "plus") << " k=" << d.k
                << " n=" << d.n << " b=" << d.b << " parent=" << e.parent_value << " p=" << e.p << "\n";
            return 0;
        }

        if (app.got_subcommand(ch)) {
            Nat bound = parse_nat(ch_bound, "children --bound");
            if (bound.is_zero()) throw UsageError("children --bound: must be >= 1");
            auto edges = tree::children(parse_odd(ch_x, "children"), bound);
            std::vector<Nat> vals;
            for (auto& e : edges) vals.push_back(std::move(e.child_value));
            out << join_values(vals) << "\n";
            return 0;
        }

        if (app.got_subcommand(par)) {
            auto e = tree::parent(parse_odd(par_x, "parent"));
            out << "parent=" << e.parent_value << " n=" << e.n << " p=" << e.p << "\n";
            return 0;
        }

        if (app.got_subcommand(tr)) {
            Nat bound = parse_nat(tree_bound, "tree --bound");
            if (bound.is_zero()) throw UsageError("tree --bound: must be >= 1");
            auto edges = tree::generate_tree(bound, tree_depth);
            write_output(tree::export_tree(edges, format_of(tree_format)), tree_output, out);
            return 0;
        }

        if (app.got_subcommand(ver)) {
            Nat from = parse_odd(ver_from, "verify --from");
            Nat to = parse_odd(ver_to, "verify --to");
            if (to < from) throw UsageError("verify: --from must not exceed --to");
            auto report = verify::verify_range(from, to, ver_opts);
            out << verify::report_to_json(report);
            return report.all_reached_one ? 0 : 2;
        }

        if (app.got_subcommand(cyc)) {
            auto r = verify::cycle_search(parse_odd(cyc_x, "cycle-search"), cyc_iters);
            switch (r.kind) {
                case verify::CycleResult::Kind::TrivialCycle:
                    out << "result=trivial-cycle\n";
                    return 0;
                case verify::CycleResult::Kind::ReachesOne:
                    out << "result=reaches-one steps=" << r.steps << "\n";
                    return 0;
                case verify::CycleResult::Kind::NontrivialCycle:
                    out << "result=nontrivial-cycle length=" << r.steps << " values=" << join_values(r.cycle)
                        << "\n";
                    return 2;
                case verify::CycleResult::Kind::Inconclusive:
                    out << "result=inconclusive limit=" << r.steps << "\n";
                    return 2;
            }
        }

        if (app.got_subcommand(tab)) {
            out << verify::residue_table_csv(verify::residue_table(table_max_p));
            return 0;
        }

        if (app.got_subcommand(den)) {
            auto d = verify::density_check(den_p, den_m);
            out << "members=" << d.members << " total_odds=" << d.total_odds << "\n";
            return 0;
        }

        err << app.help();
        return 1;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    args.reserve(argc > 0 ? static_cast<size_t>(argc - 1) : 0);
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace collatz::cli
