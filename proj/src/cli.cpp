#include "coax/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "coax/error.hpp"
#include "coax/io.hpp"
#include "coax/lambda.hpp"
#include "coax/prooftree.hpp"
#include "coax/regular.hpp"
#include "coax/systems.hpp"
#include "coax/verify.hpp"

namespace coax::cli {

namespace {

enum class Format { text, json, dot };

struct Options {
    std::string format = "text";
    std::string mode = "gen";
    bool trace = false;

    std::string file;
    std::string judgement;
    std::string candidate;

    bool wf = false;
    int level = -1;
    bool graph = false;
    int unfold = -1;
    int sequence = -1;

    bool bounded = false, closed = false, consistent = false;

    std::string builtin;
    std::vector<std::string> inputs;
    bool emit = false;
    bool compact = false;
    long long elem = 0;
    std::string query;
};

Format format_of(const Options& o) {
    if (o.format == "json") return Format::json;
    if (o.format == "dot") return Format::dot;
    return Format::text;
}

std::size_t oracle_cap() {
    if (const char* env = std::getenv("COAX_ORACLE_CAP")) {
        try {
            return static_cast<std::size_t>(std::stoul(env));
        } catch (const std::exception&) {
            throw InvalidArgument("COAX_ORACLE_CAP must be a non-negative integer");
        }
    }
    return default_oracle_cap;
}

InferenceSystem load_system(const std::string& path, std::ostream& err) {
    std::vector<std::string> warnings;
    auto sys = io::parse_system(io::read_file(path), &warnings);
    for (const auto& w : warnings) err << "warning: " << w << '\n';
    return sys;
}

Interpretation interpret(const InferenceSystem& sys, const std::string& mode) {
    if (mode == "ind") return inductive(sys);
    if (mode == "coind") return coinductive(sys);
    return kernel_below(sys, closure_of(sys));
}

JudgementId lookup(const InferenceSystem& sys, const std::string& j) {
    auto id = sys.universe()->find(j);
    if (!id) throw InvalidArgument("judgement `" + j + "` is not in the universe");
    return *id;
}

void print_interpretation(const InferenceSystem& sys, const Options& o, std::ostream& out) {
    const auto in = interpret(sys, o.mode);
    if (format_of(o) == Format::json) {
        auto j = nlohmann::json::parse(io::interpretation_json(in, o.trace));
        if (o.trace && o.mode == "gen") {
            nlohmann::json steps = nlohmann::json::array();
            for (const auto& s : inductive(with_coaxioms_as_axioms(sys)).trace.steps) steps.push_back(s.strings());
            j["closure_trace"] = std::move(steps);
        }
        out << j.dump(2) << '\n';
        return;
    }
    if (o.trace && o.mode == "gen") {
        const auto up = inductive(with_coaxioms_as_axioms(sys)).trace.steps;
        for (std::size_t i = 0; i < up.size(); ++i) out << "closure " << i << ": " << to_string(up[i]) << '\n';
        for (std::size_t i = 0; i < in.trace.steps.size(); ++i)
            out << "descent " << i << ": " << to_string(in.trace.steps[i]) << '\n';
        out << "result: " << to_string(in.result) << '\n';
        return;
    }
    out << io::interpretation_text(in, o.trace);
}

void print_tree(const PathTree& t, Format f, std::ostream& out) {
    switch (f) {
    case Format::json: out << io::tree_json(t) << '\n'; break;
    case Format::dot: out << io::tree_dot(t); break;
    case Format::text: out << io::tree_text(t); break;
    }
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
    print_interpretation(load_system(o.file, err), o, out);
    return derivable;
}

int cmd_query(const Options& o, std::ostream& out, std::ostream& err) {
    const auto sys = load_system(o.file, err);
    auto id = sys.universe()->find(o.judgement);
    const bool yes = id && interpret(sys, o.mode).result.contains(*id);
    if (format_of(o) == Format::json) out << nlohmann::json{{"judgement", o.judgement}, {"derivable", yes}}.dump() << '\n';
    else out << (yes ? "yes" : "no") << '\n';
    return yes ? derivable : not_derivable;
}

int cmd_prove(const Options& o, std::ostream& out, std::ostream& err) {
    const auto sys = load_system(o.file, err);
    const auto j = lookup(sys, o.judgement);
    const auto f = format_of(o);
    if (o.level >= 0) {
        auto t = approx_proof(sys, j, static_cast<std::size_t>(o.level));
        if (!t) {
            err << "no approximated proof tree of level " << o.level << '\n';
            return not_derivable;
        }
        print_tree(*t, f, out);
        return derivable;
    }
    if (o.sequence >= 0) {
        const auto gen = generated(sys);
        if (!gen.contains(j)) {
            err << o.judgement << " is not in the generated interpretation\n";
            return not_derivable;
        }
        const auto seq = approximating_sequence(sys, j, static_cast<std::size_t>(o.sequence));
        if (f == Format::json) {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& t : seq) arr.push_back(nlohmann::json::parse(io::tree_json(t)));
            out << arr.dump(2) << '\n';
        } else {
            for (std::size_t n = 0; n < seq.size(); ++n) {
                if (f == Format::text) out << "-- level " << n << '\n';
                print_tree(seq[n], f, out);
            }
        }
        return derivable;
    }
    if (o.graph) {
        const auto gen = generated(sys);
        if (!gen.contains(j)) {
            err << o.judgement << " is not in the generated interpretation\n";
            return not_derivable;
        }
        const auto g = proof_graph(sys, gen, j);
        if (o.unfold >= 0) {
            print_tree(unfold(g, static_cast<std::size_t>(o.unfold)), f, out);
        } else if (f == Format::json) {
            out << io::graph_json(g) << '\n';
        } else if (f == Format::dot) {
            out << io::graph_dot(g);
        } else {
            out << io::graph_text(g);
        }
        return derivable;
    }
    auto t = wf_proof_search(sys, j, sys.universe()->size());
    if (!t) {
        err << "no well-founded proof tree\n";
        return not_derivable;
    }
    print_tree(*t, f, out);
    return derivable;
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
    const auto sys = load_system(o.file, err);
    const auto s = io::parse_judgements(io::read_file(o.candidate), sys.universe());
    Verdict v;
    if (o.closed) v = check_closed(sys, s);
    else if (o.consistent) v = check_consistent(sys, s);
    else v = bounded_coinduction(sys, s);
    out << (format_of(o) == Format::json ? io::verdict_json(sys, v) + "\n" : io::verdict_text(sys, v));
    return v.ok ? derivable : not_derivable;
}

int cmd_oracle(const Options& o, std::ostream& out, std::ostream& err) {
    const auto sys = load_system(o.file, err);
    const auto bf = brute_force(sys, oracle_cap());
    const auto ind = inductive(sys).result;
    const auto coind = coinductive(sys).result;
    const auto gen = generated(sys);
    const bool ok = ind == bf.mu && coind == bf.nu && gen == bf.gen;
    if (format_of(o) == Format::json) {
        nlohmann::json j{{"agree", ok},
                         {"fixed_points", bf.fixed_points.size()},
                         {"ind", ind.strings()},
                         {"coind", coind.strings()},
                         {"gen", gen.strings()}};
        out << j.dump(2) << '\n';
    } else {
        out << "fixed points: " << bf.fixed_points.size() << '\n';
        out << "ind   " << (ind == bf.mu ? "agree " : "DIFFER ") << to_string(ind) << '\n';
        out << "coind " << (coind == bf.nu ? "agree " : "DIFFER ") << to_string(coind) << '\n';
        out << "gen   " << (gen == bf.gen ? "agree " : "DIFFER ") << to_string(gen) << '\n';
    }
    return ok ? derivable : not_derivable;
}

std::string term_text(const std::string& arg) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) return io::read_file(arg);
    return arg;
}

InferenceSystem build_builtin(const Options& o) {
    systems::BuildOptions bo;
    bo.compact = o.compact;
    const auto& in = o.inputs;
    auto need = [&](std::size_t n) {
        if (in.size() != n)
            throw InvalidArgument("builtin " + o.builtin + " takes " + std::to_string(n) + " input(s)");
    };
    auto term = [&](std::size_t i) { return regular::parse(io::read_file(in[i])); };
    const auto& name = o.builtin;
    if (name == "reach") { need(1); return systems::build_reach(systems::Graph::parse(io::read_file(in[0])), bo); }
    if (name == "dist") { need(1); return systems::build_dist(systems::Graph::parse(io::read_file(in[0])), bo); }
    if (name == "spath") { need(1); return systems::build_spath(systems::Graph::parse(io::read_file(in[0])), bo); }
    if (name == "first") { need(1); return systems::build_first(systems::Grammar::parse(io::read_file(in[0])), bo); }
    if (name == "member") { need(1); return systems::build_list_systems(term(0), o.elem).member; }
    if (name == "allpos") { need(1); return systems::build_list_systems(term(0), o.elem).all_pos; }
    if (name == "maxelem") { need(1); return systems::build_list_systems(term(0), o.elem).max_elem; }
    if (name == "elems") { need(1); return systems::build_list_systems(term(0), o.elem).elems; }
    if (name == "path0") { need(1); return systems::build_path0(term(0)); }
    if (name == "isin0") { need(1); return systems::build_is_in0(term(0)); }
    if (name == "add") { need(3); return systems::build_add(term(0), term(1), term(2)); }
    if (name == "bigstep") { need(1); return systems::build_bigstep(lambda::parse(term_text(in[0])), bo); }
    throw InvalidArgument("unknown builtin `" + name + "`");
}

int cmd_builtin(const Options& o, std::ostream& out, std::ostream&) {
    const auto sys = build_builtin(o);
    if (o.emit) {
        out << io::emit_system(sys);
        return derivable;
    }
    if (!o.query.empty()) {
        auto id = sys.universe()->find(o.query);
        const bool yes = id && interpret(sys, o.mode).result.contains(*id);
        out << (yes ? "yes" : "no") << '\n';
        return yes ? derivable : not_derivable;
    }
    print_interpretation(sys, o, out);
    return derivable;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"coax: inference systems with coaxioms"};
    app.require_subcommand(1);
    Options o;
    const std::vector<std::string> formats{"text", "json", "dot"};
    const std::vector<std::string> modes{"ind", "coind", "gen"};
    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember(formats));
    };

    auto* solve = app.add_subcommand("solve", "Compute an interpretation");
    solve->add_option("file", o.file, "System file")->required();
    solve->add_option("--mode", o.mode)->check(CLI::IsMember(modes));
    solve->add_flag("--trace", o.trace, "Print the iteration trace");
    common(solve);

    auto* query = app.add_subcommand("query", "Membership query; exit 0 if derivable, 1 if not");
    query->add_option("file", o.file)->required();
    query->add_option("judgement", o.judgement)->required();
    query->add_option("--mode", o.mode)->check(CLI::IsMember(modes));
    common(query);

    auto* prove = app.add_subcommand("prove", "Emit a proof artifact");
    prove->add_option("file", o.file)->required();
    prove->add_option("judgement", o.judgement)->required();
    auto* wf = prove->add_flag("--wf", o.wf, "Well-founded proof tree (default)");
    auto* lvl = prove->add_option("--level", o.level, "Approximated proof tree of this level")->check(CLI::NonNegativeNumber);
    auto* seq = prove->add_option("--sequence", o.sequence, "Approximating sequence up to this level")
                    ->check(CLI::NonNegativeNumber);
    auto* gr = prove->add_flag("--graph", o.graph, "Regular proof graph over the generated interpretation");
    prove->add_option("--unfold", o.unfold, "Unfold the graph to this depth")->check(CLI::NonNegativeNumber)->needs(gr);
    wf->excludes(lvl)->excludes(seq)->excludes(gr);
    lvl->excludes(seq)->excludes(gr);
    seq->excludes(gr);
    common(prove);

    auto* check = app.add_subcommand("check", "Check a candidate set");
    check->add_option("file", o.file)->required();
    check->add_option("candidate", o.candidate, "File listing the candidate judgements")->required();
    auto* bc = check->add_flag("--bounded-coinduction", o.bounded);
    auto* cl = check->add_flag("--closed", o.closed);
    auto* cs = check->add_flag("--consistent", o.consistent);
    bc->excludes(cl)->excludes(cs);
    cl->excludes(cs);
    common(check);

    auto* oracle = app.add_subcommand("oracle", "Compare against brute-force enumeration (cap: COAX_ORACLE_CAP)");
    oracle->add_option("file", o.file)->required();
    common(oracle);

    auto* builtin = app.add_subcommand("builtin", "Build and solve one of the example systems");
    builtin->add_option("name", o.builtin,
                        "reach|first|dist|spath|member|allpos|maxelem|elems|path0|isin0|add|bigstep")
        ->required();
    builtin->add_option("inputs", o.inputs, "Input files (bigstep also takes a term)")->required();
    builtin->add_flag("--emit", o.emit, "Print the system file instead of solving");
    builtin->add_flag("--compact", o.compact, "Use the reduced value domains");
    builtin->add_option("--elem", o.elem, "Queried element for member");
    builtin->add_option("--query", o.query, "Membership query; exit 0 if derivable, 1 if not");
    builtin->add_option("--mode", o.mode)->check(CLI::IsMember(modes));
    builtin->add_flag("--trace", o.trace);
    common(builtin);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : usage;
    }

    try {
        if (*solve) return cmd_solve(o, out, err);
        if (*query) return cmd_query(o, out, err);
        if (*prove) return cmd_prove(o, out, err);
        if (*check) return cmd_check(o, out, err);
        if (*oracle) return cmd_oracle(o, out, err);
        if (*builtin) return cmd_builtin(o, out, err);
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << '\n';
        return cap;
    } catch (const UniverseTooLarge& e) {
        err << "error: " << e.what() << '\n';
        return cap;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    }
    return usage;
}

} // namespace coax::cli
