#include "coax/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "coax/error.hpp"

namespace coax::io {

namespace {

using nlohmann::json;

std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream ls(line);
    std::vector<std::string> out;
    for (std::string t; ls >> t;) out.push_back(t);
    return out;
}

std::string strip_comment(std::string line) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    return line;
}

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

void check_tree_size(const PathTree& t, std::size_t cap) {
    if (t.node_count(cap + 1) > cap) throw CapExceeded(cap, "tree positions");
}

json tree_to_json(const Universe& u, const TreeNode& n) {
    json children = json::array();
    for (const auto& c : n.children) children.push_back(tree_to_json(u, *c));
    return json{{"judgement", u[n.label].str()}, {"children", std::move(children)}};
}

void tree_lines(const Universe& u, const TreeNode& n, std::size_t depth, std::string& out) {
    out.append(2 * depth, ' ');
    out += u[n.label].str();
    out += '\n';
    for (const auto& c : n.children) tree_lines(u, *c, depth + 1, out);
}

std::string witness_kind(Witness::Kind k) {
    switch (k) {
    case Witness::Kind::rule: return "rule";
    case Witness::Kind::unsupported: return "unsupported";
    case Witness::Kind::unbounded: return "unbounded";
    }
    return "?";
}

} // namespace

InferenceSystem parse_system(std::string_view text, std::vector<std::string>* warnings) {
    SystemBuilder b;
    std::set<std::pair<std::string, std::set<std::string>>> seen;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto tok = split_ws(strip_comment(raw));
        if (tok.empty()) continue;
        const auto& kw = tok[0];
        if (kw == "universe") {
            for (std::size_t i = 1; i < tok.size(); ++i) b.declare(tok[i]);
        } else if (kw == "axiom" || kw == "coaxiom") {
            if (tok.size() != 2) throw ParseError(lineno, "expected `" + kw + " <judgement>`");
            if (kw == "coaxiom") {
                b.add_coaxiom(tok[1]);
            } else if (seen.insert({tok[1], {}}).second) {
                b.add_axiom(tok[1]);
            } else if (warnings) {
                warnings->push_back("line " + std::to_string(lineno) + ": duplicate rule for " + tok[1]);
            }
        } else if (kw == "rule") {
            if (tok.size() < 2 || tok[1] == "<-") throw ParseError(lineno, "rule without a conclusion");
            std::vector<std::string> prem;
            if (tok.size() > 2) {
                if (tok[2] != "<-") throw ParseError(lineno, "expected `<-` after the conclusion");
                prem.assign(tok.begin() + 3, tok.end());
            }
            if (seen.insert({tok[1], std::set<std::string>(prem.begin(), prem.end())}).second)
                b.add_rule(tok[1], prem);
            else if (warnings)
                warnings->push_back("line " + std::to_string(lineno) + ": duplicate rule for " + tok[1]);
        } else {
            throw ParseError(lineno, "unknown directive `" + kw + "`");
        }
    }
    return b.build();
}

std::string emit_system(const InferenceSystem& sys) {
    const auto& u = *sys.universe();
    std::ostringstream out;
    for (const auto& j : u.members()) out << "universe " << j.str() << '\n';
    for (const auto& r : sys.rules()) {
        out << "rule " << u[r.conclusion].str();
        if (!r.premises.empty()) {
            out << " <-";
            for (auto p : r.premises) out << ' ' << u[p].str();
        }
        out << '\n';
    }
    for (auto c : sys.coaxioms().ids()) out << "coaxiom " << u[c].str() << '\n';
    return out.str();
}

JudgementSet parse_judgements(std::string_view text, const UniversePtr& u) {
    auto s = JudgementSet::empty(u);
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        for (const auto& t : split_ws(strip_comment(raw))) {
            auto id = u->find(t);
            if (!id) throw ParseError(lineno, "judgement `" + t + "` is not in the universe");
            s.insert(*id);
        }
    }
    return s;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open `" + path + "`");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string set_json(const JudgementSet& s) { return json(s.strings()).dump(); }

std::string set_text(const JudgementSet& s) {
    std::string out;
    for (const auto& j : s.strings()) out += j + '\n';
    return out;
}

std::string interpretation_json(const Interpretation& in, bool with_trace) {
    json j{{"result", in.result.strings()}};
    if (with_trace) {
        json steps = json::array();
        for (const auto& s : in.trace.steps) steps.push_back(s.strings());
        j["trace"] = std::move(steps);
    }
    return j.dump(2);
}

std::string interpretation_text(const Interpretation& in, bool with_trace) {
    std::string out;
    if (with_trace) {
        for (std::size_t i = 0; i < in.trace.steps.size(); ++i)
            out += "step " + std::to_string(i) + ": " + to_string(in.trace.steps[i]) + '\n';
        out += "result: ";
    }
    out += to_string(in.result) + '\n';
    return out;
}

std::string tree_json(const PathTree& t, std::size_t node_cap) {
    check_tree_size(t, node_cap);
    return tree_to_json(*t.universe(), *t.root()).dump(2);
}

std::string tree_text(const PathTree& t, std::size_t node_cap) {
    check_tree_size(t, node_cap);
    std::string out;
    tree_lines(*t.universe(), *t.root(), 0, out);
    return out;
}

std::string tree_dot(const PathTree& t, std::size_t node_cap) {
    check_tree_size(t, node_cap);
    const auto& u = *t.universe();
    std::ostringstream out;
    out << "digraph proof {\n  rankdir=BT;\n";
    std::size_t next = 0;
    // Positions are expanded, so shared subproofs appear once per occurrence.
    auto visit = [&](auto&& self, const TreeNode& n) -> std::size_t {
        const auto id = next++;
        out << "  n" << id << " [label=\"" << dot_escape(u[n.label].str()) << "\"];\n";
        for (const auto& c : n.children) {
            const auto cid = self(self, *c);
            out << "  n" << cid << " -> n" << id << ";\n";
        }
        return id;
    };
    visit(visit, *t.root());
    out << "}\n";
    return out.str();
}

std::string graph_json(const ProofGraph& g) {
    const auto& u = *g.universe;
    json nodes = json::array();
    json choice = json::object();
    for (const auto& [c, ps] : g.choice) {
        nodes.push_back(u[c].str());
        json prem = json::array();
        for (auto p : ps) prem.push_back(u[p].str());
        choice[u[c].str()] = std::move(prem);
    }
    return json{{"nodes", std::move(nodes)}, {"choice", std::move(choice)}, {"root", u[g.root].str()}}.dump(2);
}

std::string graph_text(const ProofGraph& g) {
    const auto& u = *g.universe;
    std::string out = "root " + u[g.root].str() + '\n';
    for (const auto& [c, ps] : g.choice) {
        out += u[c].str() + " <-";
        for (auto p : ps) out += ' ' + u[p].str();
        out += '\n';
    }
    return out;
}

std::string graph_dot(const ProofGraph& g) {
    const auto& u = *g.universe;
    std::ostringstream out;
    out << "digraph proof {\n  rankdir=BT;\n";
    for (const auto& [c, ps] : g.choice) {
        out << "  \"" << dot_escape(u[c].str()) << "\"";
        if (c == g.root) out << " [peripheries=2]";
        out << ";\n";
    }
    for (const auto& [c, ps] : g.choice)
        for (auto p : ps) out << "  \"" << dot_escape(u[p].str()) << "\" -> \"" << dot_escape(u[c].str()) << "\";\n";
    out << "}\n";
    return out.str();
}

std::string verdict_json(const InferenceSystem& sys, const Verdict& v) {
    json j{{"ok", v.ok}};
    if (v.witness) {
        const auto& u = *sys.universe();
        json w{{"kind", witness_kind(v.witness->kind)}, {"judgement", u[v.witness->judgement].str()}};
        if (v.witness->kind == Witness::Kind::rule) {
            json prem = json::array();
            for (auto p : v.witness->premises) prem.push_back(u[p].str());
            w["premises"] = std::move(prem);
        }
        j["witness"] = std::move(w);
    }
    return j.dump(2);
}

std::string verdict_text(const InferenceSystem& sys, const Verdict& v) {
    if (v.ok) return "ok\n";
    const auto& u = *sys.universe();
    std::string out = "fail: " + witness_kind(v.witness->kind) + " " + u[v.witness->judgement].str();
    if (v.witness->kind == Witness::Kind::rule) {
        out += " <-";
        for (auto p : v.witness->premises) out += ' ' + u[p].str();
    }
    return out + '\n';
}

} // namespace coax::io
