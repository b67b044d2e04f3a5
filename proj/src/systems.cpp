#include "coax/systems.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "coax/error.hpp"

namespace coax::systems {

namespace {

bool is_name(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    });
}

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream ls(line);
    std::vector<std::string> out;
    for (std::string t; ls >> t;) out.push_back(t);
    return out;
}

std::string strip_comment(std::string line) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    return line;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

// Calls fn(choice) for every element of the cartesian product of [0, sizes[i]).
void for_each_combination(const std::vector<std::size_t>& sizes,
                          const std::function<void(const std::vector<std::size_t>&)>& fn) {
    if (std::any_of(sizes.begin(), sizes.end(), [](std::size_t s) { return s == 0; })) return;
    std::vector<std::size_t> choice(sizes.size(), 0);
    while (true) {
        fn(choice);
        std::size_t k = 0;
        while (k < sizes.size() && ++choice[k] == sizes[k]) choice[k++] = 0;
        if (k == sizes.size()) return;
    }
}

// Counts combinations and throws before instantiating too many rules.
class RuleBudget {
public:
    explicit RuleBudget(std::size_t cap) : cap_(cap) {}
    void reserve(const std::vector<std::size_t>& sizes) {
        std::size_t n = 1;
        for (auto s : sizes) {
            if (s != 0 && n > cap_ / s) throw CapExceeded(cap_, "rule instances");
            n *= s;
        }
        used_ += n;
        if (used_ > cap_) throw CapExceeded(cap_, "rule instances");
    }

private:
    std::size_t cap_;
    std::size_t used_ = 0;
};

// Rules over string payloads, frozen against an explicit universe.
struct RuleSet {
    std::vector<std::string> universe;
    std::vector<std::pair<std::string, std::vector<std::string>>> rules;
    std::vector<std::string> coaxioms;

    InferenceSystem freeze() const {
        auto u = Universe::make(universe);
        std::vector<Rule> out;
        out.reserve(rules.size());
        for (const auto& [c, ps] : rules) {
            Rule r;
            r.conclusion = u->index_of(c);
            for (const auto& p : ps) r.premises.push_back(u->index_of(p));
            out.push_back(std::move(r));
        }
        return InferenceSystem(u, std::move(out), JudgementSet::of(u, coaxioms));
    }
};

using Mask = std::uint32_t;

std::vector<Mask> submasks(Mask m) {
    std::vector<Mask> out;
    for (Mask s = m;; s = (s - 1) & m) {
        out.push_back(s);
        if (s == 0) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

Mask full_mask(std::size_t n) { return n >= 32 ? ~Mask{0} : (Mask{1} << n) - 1; }

std::string mask_set(Mask m, const std::vector<std::string>& names) {
    std::vector<std::string> in;
    for (std::size_t i = 0; i < names.size(); ++i)
        if ((m >> i) & 1U) in.push_back(names[i]);
    return "{" + join(in, ",") + "}";
}

// Every simple path from `from` to `to` (as node sequences) in a graph.
void simple_paths(const Graph& g, std::size_t from, std::size_t to, std::size_t cap,
                  std::vector<std::vector<std::size_t>>& out) {
    std::vector<std::size_t> path{from};
    std::vector<bool> on(g.nodes.size(), false);
    on[from] = true;
    std::function<void(std::size_t)> dfs = [&](std::size_t v) {
        if (v == to) {
            out.push_back(path);
            if (out.size() > cap) throw CapExceeded(cap, "simple paths");
            return;
        }
        for (auto n : g.adj[v]) {
            if (on[n]) continue;
            on[n] = true;
            path.push_back(n);
            dfs(n);
            path.pop_back();
            on[n] = false;
        }
    };
    dfs(from);
}

std::uint64_t path_weight(const Graph& g, const std::vector<std::size_t>& p) {
    std::uint64_t w = 0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) w += g.weight(p[i], p[i + 1]);
    return w;
}

} // namespace

// ---- graphs ---------------------------------------------------------------

std::size_t Graph::index(const std::string& name) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), name);
    if (it == nodes.end() || *it != name) throw InvalidArgument("unknown node `" + name + "`");
    return static_cast<std::size_t>(it - nodes.begin());
}

std::uint64_t Graph::weight(std::size_t v, std::size_t u) const {
    auto it = weights.find({v, u});
    return it == weights.end() ? 1 : it->second;
}

void Graph::add_edge(std::size_t v, std::size_t u, std::optional<std::uint64_t> w) {
    auto& a = adj.at(v);
    auto pos = std::lower_bound(a.begin(), a.end(), u);
    if (pos == a.end() || *pos != u) a.insert(pos, u);
    if (w) weights[{v, u}] = *w;
}

Graph make_graph(const std::vector<std::string>& nodes,
                 const std::vector<std::tuple<std::string, std::string, std::uint64_t>>& edges) {
    Graph g;
    g.nodes = nodes;
    for (const auto& [a, b, w] : edges) {
        g.nodes.push_back(a);
        g.nodes.push_back(b);
    }
    std::sort(g.nodes.begin(), g.nodes.end());
    g.nodes.erase(std::unique(g.nodes.begin(), g.nodes.end()), g.nodes.end());
    for (const auto& n : g.nodes)
        if (!is_name(n)) throw InvalidArgument("bad node name `" + n + "`");
    g.adj.assign(g.nodes.size(), {});
    for (const auto& [a, b, w] : edges) g.add_edge(g.index(a), g.index(b), w);
    return g;
}

Graph Graph::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<std::string> nodes;
    struct Edge {
        std::string from, to;
        std::optional<std::uint64_t> w;
    };
    std::vector<Edge> edges;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto tok = tokens(strip_comment(raw));
        if (tok.empty()) continue;
        if (tok[0] == "node" && tok.size() == 2) {
            if (!is_name(tok[1])) throw ParseError(lineno, "bad node name `" + tok[1] + "`");
            nodes.push_back(tok[1]);
        } else if (tok[0] == "edge" && (tok.size() == 3 || tok.size() == 4)) {
            if (!is_name(tok[1]) || !is_name(tok[2])) throw ParseError(lineno, "bad node name");
            Edge e{tok[1], tok[2], std::nullopt};
            if (tok.size() == 4) {
                try {
                    std::size_t used = 0;
                    e.w = std::stoull(tok[3], &used);
                    if (used != tok[3].size() || tok[3][0] == '-') throw std::invalid_argument("");
                } catch (const std::exception&) {
                    throw ParseError(lineno, "bad edge weight `" + tok[3] + "`");
                }
            }
            nodes.push_back(e.from);
            nodes.push_back(e.to);
            edges.push_back(std::move(e));
        } else {
            throw ParseError(lineno, "expected `node x` or `edge u v [w]`");
        }
    }
    Graph g;
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    g.nodes = std::move(nodes);
    g.adj.assign(g.nodes.size(), {});
    for (const auto& e : edges) g.add_edge(g.index(e.from), g.index(e.to), e.w);
    return g;
}

// ---- grammars -------------------------------------------------------------

Grammar Grammar::make(std::vector<Production> productions) {
    Grammar gr;
    std::sort(productions.begin(), productions.end());
    productions.erase(std::unique(productions.begin(), productions.end()), productions.end());
    for (const auto& p : productions) {
        if (!is_name(p.head) || p.head == "eps") throw InvalidArgument("bad nonterminal `" + p.head + "`");
        gr.nonterminals.insert(p.head);
    }
    for (const auto& p : productions)
        for (const auto& s : p.body) {
            if (!is_name(s) || s == "eps") throw InvalidArgument("bad grammar symbol `" + s + "`");
            if (!gr.nonterminals.count(s)) gr.terminals.insert(s);
        }
    gr.productions = std::move(productions);
    return gr;
}

Grammar Grammar::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<Production> prods;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto tok = tokens(strip_comment(raw));
        if (tok.empty()) continue;
        if (tok.size() < 3 || tok[1] != "->") throw ParseError(lineno, "expected `A -> symbols...`");
        if (!is_name(tok[0]) || tok[0] == "eps") throw ParseError(lineno, "bad nonterminal `" + tok[0] + "`");
        std::vector<std::string> body;
        auto flush = [&] {
            if (body.empty()) throw ParseError(lineno, "empty alternative; write `.` for the empty string");
            if (body.size() == 1 && body[0] == ".") body.clear();
            for (const auto& s : body)
                if (!is_name(s) || s == "eps") throw ParseError(lineno, "bad grammar symbol `" + s + "`");
            prods.push_back({tok[0], body});
            body.clear();
        };
        for (std::size_t i = 2; i < tok.size(); ++i) {
            if (tok[i] == "|") flush();
            else body.push_back(tok[i]);
        }
        flush();
    }
    return make(std::move(prods));
}

std::set<std::string> nullable(const Grammar& gr) {
    SystemBuilder b;
    for (const auto& a : gr.nonterminals) b.declare("nullable(" + a + ")");
    for (const auto& p : gr.productions) {
        const bool all_nt = std::all_of(p.body.begin(), p.body.end(),
                                        [&](const std::string& s) { return gr.nonterminals.count(s) > 0; });
        if (!all_nt) continue;
        std::vector<std::string> prem;
        for (const auto& s : p.body) prem.push_back("nullable(" + s + ")");
        b.add_rule("nullable(" + p.head + ")", prem);
    }
    std::set<std::string> out;
    if (gr.nonterminals.empty()) return out;
    for (const auto& s : inductive(b.build()).result.strings())
        out.insert(s.substr(9, s.size() - 10));
    return out;
}

// ---- judgement formats ----------------------------------------------------

std::string reach_judgement(const Graph& g, std::size_t v, const std::set<std::size_t>& reached) {
    std::vector<std::string> names;
    for (auto n : reached) names.push_back(g.nodes.at(n));
    return g.nodes.at(v) + "->*{" + join(names, ",") + "}";
}

std::string first_judgement(const std::vector<std::string>& alpha, const std::set<std::string>& first) {
    return "first(" + (alpha.empty() ? std::string("eps") : join(alpha, ".")) + ",{" +
           join(std::vector<std::string>(first.begin(), first.end()), ",") + "})";
}

std::string dist_judgement(const Graph& g, std::size_t v, std::size_t u, ExtCost d) {
    return "dist(" + g.nodes.at(v) + "," + g.nodes.at(u) + "," + d.to_string() + ")";
}

std::string spath_judgement(const Graph& g, std::size_t v, std::size_t u,
                            const std::optional<std::vector<std::size_t>>& path, ExtCost d) {
    std::string p = "bot";
    if (path) {
        std::vector<std::string> names;
        for (auto n : *path) names.push_back(g.nodes.at(n));
        p = join(names, ".");
    }
    return "spath(" + g.nodes.at(v) + "," + g.nodes.at(u) + "," + p + "," + d.to_string() + ")";
}

// ---- reach ----------------------------------------------------------------

InferenceSystem build_reach(const Graph& g, const BuildOptions& opts) {
    const auto n = g.nodes.size();
    if (n > opts.node_cap || n > 20) throw CapExceeded(std::min<std::size_t>(opts.node_cap, 20), "graph nodes");

    // Value domain per node: all subsets, or subsets of the reachable set.
    std::vector<Mask> space(n, full_mask(n));
    if (opts.compact) {
        for (std::size_t v = 0; v < n; ++v) {
            Mask seen = Mask{1} << v;
            std::vector<std::size_t> work{v};
            while (!work.empty()) {
                auto x = work.back();
                work.pop_back();
                for (auto y : g.adj[x])
                    if (!((seen >> y) & 1U)) {
                        seen |= Mask{1} << y;
                        work.push_back(y);
                    }
            }
            space[v] = seen;
        }
    }
    std::vector<std::vector<Mask>> domain(n);
    for (std::size_t v = 0; v < n; ++v) domain[v] = submasks(space[v]);

    auto judgement = [&](std::size_t v, Mask m) { return g.nodes[v] + "->*" + mask_set(m, g.nodes); };

    RuleSet rs;
    for (std::size_t v = 0; v < n; ++v) {
        for (auto m : domain[v]) rs.universe.push_back(judgement(v, m));
        rs.coaxioms.push_back(judgement(v, 0));
    }
    RuleBudget budget(opts.rule_cap);
    for (std::size_t v = 0; v < n; ++v) {
        const auto& adj = g.adj[v];
        std::vector<std::size_t> sizes;
        for (auto a : adj) sizes.push_back(domain[a].size());
        budget.reserve(sizes);
        for_each_combination(sizes, [&](const std::vector<std::size_t>& pick) {
            Mask concl = Mask{1} << v;
            std::vector<std::string> prem;
            for (std::size_t i = 0; i < adj.size(); ++i) {
                const auto m = domain[adj[i]][pick[i]];
                concl |= m;
                prem.push_back(judgement(adj[i], m));
            }
            rs.rules.emplace_back(judgement(v, concl), std::move(prem));
        });
    }
    return rs.freeze();
}

// ---- first ----------------------------------------------------------------

InferenceSystem build_first(const Grammar& gr, const BuildOptions& opts) {
    const std::vector<std::string> terms(gr.terminals.begin(), gr.terminals.end());
    if (terms.size() > opts.terminal_cap || terms.size() > 20)
        throw CapExceeded(std::min<std::size_t>(opts.terminal_cap, 20), "terminals");
    const auto nullable_nts = nullable(gr);
    auto term_index = [&](const std::string& s) {
        return static_cast<std::size_t>(std::lower_bound(terms.begin(), terms.end(), s) - terms.begin());
    };

    using Str = std::vector<std::string>;
    std::set<Str> strings{Str{}};
    for (const auto& a : gr.nonterminals) strings.insert(Str{a});
    for (const auto& p : gr.productions)
        for (std::size_t i = 0; i < p.body.size(); ++i) strings.insert(Str(p.body.begin() + i, p.body.end()));

    // Terminals syntactically reachable from each nonterminal, for the compact domains.
    std::map<std::string, Mask> reach_nt;
    for (const auto& a : gr.nonterminals) reach_nt[a] = 0;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& p : gr.productions) {
            Mask m = reach_nt[p.head];
            for (const auto& s : p.body) m |= gr.nonterminals.count(s) ? reach_nt[s] : Mask{1} << term_index(s);
            if (m != reach_nt[p.head]) {
                reach_nt[p.head] = m;
                changed = true;
            }
        }
    }
    std::map<Str, std::vector<Mask>> domain;
    for (const auto& s : strings) {
        Mask space = full_mask(terms.size());
        if (opts.compact) {
            space = 0;
            for (const auto& x : s) space |= gr.nonterminals.count(x) ? reach_nt[x] : Mask{1} << term_index(x);
        }
        domain[s] = submasks(space);
    }

    auto judgement = [&](const Str& s, Mask m) {
        return "first(" + (s.empty() ? std::string("eps") : join(s, ".")) + "," + mask_set(m, terms) + ")";
    };

    RuleSet rs;
    for (const auto& s : strings)
        for (auto m : domain[s]) rs.universe.push_back(judgement(s, m));
    for (const auto& a : gr.nonterminals) rs.coaxioms.push_back(judgement(Str{a}, 0));

    RuleBudget budget(opts.rule_cap);
    rs.rules.emplace_back(judgement(Str{}, 0), std::vector<std::string>{});
    for (const auto& s : strings) {
        if (s.empty()) continue;
        const auto& head = s.front();
        const Str rest(s.begin() + 1, s.end());
        if (!gr.nonterminals.count(head)) {
            rs.rules.emplace_back(judgement(s, Mask{1} << term_index(head)), std::vector<std::string>{});
            continue;
        }
        // A single nonterminal is defined by its productions only.
        if (rest.empty()) continue;
        const Str a{head};
        if (!nullable_nts.count(head)) {
            budget.reserve({domain[a].size()});
            for (auto m : domain[a]) rs.rules.emplace_back(judgement(s, m), std::vector<std::string>{judgement(a, m)});
        } else {
            budget.reserve({domain[a].size(), domain[rest].size()});
            for (auto m : domain[a])
                for (auto m2 : domain[rest])
                    rs.rules.emplace_back(judgement(s, m | m2),
                                          std::vector<std::string>{judgement(a, m), judgement(rest, m2)});
        }
    }
    for (const auto& a : gr.nonterminals) {
        std::vector<Str> bodies;
        for (const auto& p : gr.productions)
            if (p.head == a) bodies.push_back(p.body);
        std::vector<std::size_t> sizes;
        for (const auto& b : bodies) sizes.push_back(domain[b].size());
        budget.reserve(sizes);
        for_each_combination(sizes, [&](const std::vector<std::size_t>& pick) {
            Mask concl = 0;
            std::vector<std::string> prem;
            for (std::size_t i = 0; i < bodies.size(); ++i) {
                const auto m = domain[bodies[i]][pick[i]];
                concl |= m;
                prem.push_back(judgement(bodies[i], m));
            }
            rs.rules.emplace_back(judgement(Str{a}, concl), std::move(prem));
        });
    }
    return rs.freeze();
}

// ---- dist / spath ---------------------------------------------------------

namespace {

struct PathTable {
    // paths[x][u]: simple paths x -> u, as node sequences; x == u gives {[u]}.
    std::vector<std::vector<std::vector<std::vector<std::size_t>>>> paths;
};

PathTable all_simple_paths(const Graph& g, std::size_t cap) {
    const auto n = g.nodes.size();
    PathTable t;
    t.paths.assign(n, std::vector<std::vector<std::vector<std::size_t>>>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t u = 0; u < n; ++u) {
            if (x == u) t.paths[x][u] = {{u}};
            else simple_paths(g, x, u, cap, t.paths[x][u]);
        }
    return t;
}

void check_graph_size(const Graph& g, const BuildOptions& opts) {
    if (g.nodes.size() > opts.node_cap) throw CapExceeded(opts.node_cap, "graph nodes");
}

} // namespace

InferenceSystem build_dist(const Graph& g, const BuildOptions& opts) {
    check_graph_size(g, opts);
    const auto n = g.nodes.size();
    std::uint64_t total = 0;
    for (std::size_t v = 0; v < n; ++v)
        for (auto u : g.adj[v]) total += g.weight(v, u);

    // domain[x][u]: admissible distance values, infinity last.
    std::vector<std::vector<std::vector<ExtCost>>> domain(n, std::vector<std::vector<ExtCost>>(n));
    if (opts.compact) {
        const auto table = all_simple_paths(g, opts.rule_cap);
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t u = 0; u < n; ++u) {
                std::set<std::uint64_t> ws;
                for (const auto& p : table.paths[x][u]) ws.insert(path_weight(g, p));
                for (auto w : ws) domain[x][u].push_back(ExtCost::of(w));
                if (x != u) domain[x][u].push_back(ExtCost::inf());
            }
    } else {
        if (total + 2 > opts.rule_cap) throw CapExceeded(opts.rule_cap, "distance values");
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t u = 0; u < n; ++u) {
                for (std::uint64_t w = 0; w <= total; ++w) domain[x][u].push_back(ExtCost::of(w));
                domain[x][u].push_back(ExtCost::inf());
            }
    }

    RuleSet rs;
    std::set<std::string> in_universe;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t u = 0; u < n; ++u)
            for (auto d : domain[x][u]) {
                rs.universe.push_back(dist_judgement(g, x, u, d));
                in_universe.insert(rs.universe.back());
            }
    RuleBudget budget(opts.rule_cap);
    for (std::size_t v = 0; v < n; ++v) {
        rs.rules.emplace_back(dist_judgement(g, v, v, ExtCost::of(0)), std::vector<std::string>{});
        for (std::size_t u = 0; u < n; ++u) {
            if (u == v) continue;
            rs.coaxioms.push_back(dist_judgement(g, v, u, ExtCost::inf()));
            const auto& adj = g.adj[v];
            if (adj.empty()) {
                rs.rules.emplace_back(dist_judgement(g, v, u, ExtCost::inf()), std::vector<std::string>{});
                continue;
            }
            std::vector<std::size_t> sizes;
            for (auto a : adj) sizes.push_back(domain[a][u].size());
            budget.reserve(sizes);
            for_each_combination(sizes, [&](const std::vector<std::size_t>& pick) {
                ExtCost best = ExtCost::inf();
                std::vector<std::string> prem;
                for (std::size_t i = 0; i < adj.size(); ++i) {
                    const auto d = domain[adj[i]][u][pick[i]];
                    best = std::min(best, ExtCost::of(g.weight(v, adj[i])) + d);
                    prem.push_back(dist_judgement(g, adj[i], u, d));
                }
                auto concl = dist_judgement(g, v, u, best);
                if (in_universe.count(concl)) rs.rules.emplace_back(std::move(concl), std::move(prem));
            });
        }
    }
    return rs.freeze();
}

InferenceSystem build_spath(const Graph& g, const BuildOptions& opts) {
    check_graph_size(g, opts);
    const auto n = g.nodes.size();
    const auto table = all_simple_paths(g, opts.rule_cap);

    struct Value {
        std::optional<std::vector<std::size_t>> path;
        ExtCost cost;
    };
    std::vector<std::vector<std::vector<Value>>> domain(n, std::vector<std::vector<Value>>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t u = 0; u < n; ++u) {
            for (const auto& p : table.paths[x][u]) domain[x][u].push_back({p, ExtCost::of(path_weight(g, p))});
            if (x != u) domain[x][u].push_back({std::nullopt, ExtCost::inf()});
        }

    RuleSet rs;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t u = 0; u < n; ++u)
            for (const auto& val : domain[x][u]) rs.universe.push_back(spath_judgement(g, x, u, val.path, val.cost));

    RuleBudget budget(opts.rule_cap);
    for (std::size_t v = 0; v < n; ++v) {
        rs.rules.emplace_back(spath_judgement(g, v, v, std::vector<std::size_t>{v}, ExtCost::of(0)),
                              std::vector<std::string>{});
        for (std::size_t u = 0; u < n; ++u) {
            if (u == v) continue;
            const auto bottom = spath_judgement(g, v, u, std::nullopt, ExtCost::inf());
            rs.coaxioms.push_back(bottom);
            const auto& adj = g.adj[v];
            if (adj.empty()) {
                rs.rules.emplace_back(bottom, std::vector<std::string>{});
                continue;
            }
            std::vector<std::size_t> sizes;
            for (auto a : adj) sizes.push_back(domain[a][u].size());
            budget.reserve(sizes);
            for_each_combination(sizes, [&](const std::vector<std::size_t>& pick) {
                std::size_t best = 0;
                ExtCost best_cost = ExtCost::inf();
                std::vector<std::string> prem;
                for (std::size_t i = 0; i < adj.size(); ++i) {
                    const auto& val = domain[adj[i]][u][pick[i]];
                    const auto c = ExtCost::of(g.weight(v, adj[i])) + val.cost;
                    if (c < best_cost) {
                        best_cost = c;
                        best = i;
                    }
                    prem.push_back(spath_judgement(g, adj[i], u, val.path, val.cost));
                }
                if (best_cost.is_inf()) {
                    rs.rules.emplace_back(bottom, std::move(prem));
                    return;
                }
                const auto& tail = *domain[adj[best]][u][pick[best]].path;
                if (std::find(tail.begin(), tail.end(), v) != tail.end()) return;  // not a simple path
                std::vector<std::size_t> path{v};
                path.insert(path.end(), tail.begin(), tail.end());
                rs.rules.emplace_back(spath_judgement(g, v, u, path, best_cost), std::move(prem));
            });
        }
    }
    return rs.freeze();
}

// ---- lists ----------------------------------------------------------------

namespace {

using regular::Atom;
using regular::EqSystem;
using regular::Tag;
using regular::Var;

struct ListView {
    std::vector<std::string> key;  // canonical string per state
    const EqSystem* sys;

    bool is_nil(std::size_t i) const { return sys->states()[i].tag == Tag::nil; }
    Atom head(std::size_t i) const { return std::get<Atom>(sys->states()[i].args[0]); }
    std::size_t tail(std::size_t i) const { return std::get<Var>(sys->states()[i].args[1]).index; }
};

ListView view_list(const EqSystem& l) {
    for (const auto& s : l.states()) {
        if (s.tag == Tag::nil) continue;
        if (s.tag != Tag::cons || !std::holds_alternative<Atom>(s.args[0]))
            throw ShapeMismatch("expected a list of atoms");
    }
    ListView v{{}, &l};
    for (std::size_t i = 0; i < l.size(); ++i) v.key.push_back(l.rooted_at(i).to_string());
    return v;
}

std::string atom_set(const std::set<Atom>& xs) {
    std::vector<std::string> parts;
    for (auto x : xs) parts.push_back(std::to_string(x));
    return "{" + join(parts, ",") + "}";
}

} // namespace

ListSystems build_list_systems(const EqSystem& list, Atom query) {
    const auto lv = view_list(list);
    const auto n = list.size();
    const auto carrier = regular::carrier(list);
    const std::vector<Atom> elems(carrier.begin(), carrier.end());
    if (elems.size() > 16) throw CapExceeded(16, "list carrier");
    const auto q = std::to_string(query);

    ListSystems out;
    {
        RuleSet rs;
        auto j = [&](std::size_t i, const char* b) { return "member(" + q + "," + lv.key[i] + "," + b + ")"; };
        for (std::size_t i = 0; i < n; ++i) {
            rs.universe.push_back(j(i, "T"));
            rs.universe.push_back(j(i, "F"));
            rs.coaxioms.push_back(j(i, "F"));
            if (lv.is_nil(i)) continue;
            if (lv.head(i) == query) {
                rs.rules.emplace_back(j(i, "T"), std::vector<std::string>{});
            } else {
                for (const char* b : {"T", "F"}) rs.rules.emplace_back(j(i, b), std::vector<std::string>{j(lv.tail(i), b)});
            }
        }
        out.member = rs.freeze();
    }
    {
        RuleSet rs;
        auto j = [&](std::size_t i, const char* b) { return "allPos(" + lv.key[i] + "," + b + ")"; };
        for (std::size_t i = 0; i < n; ++i) {
            rs.universe.push_back(j(i, "T"));
            rs.universe.push_back(j(i, "F"));
            rs.coaxioms.push_back(j(i, "T"));
            if (lv.is_nil(i)) {
                rs.rules.emplace_back(j(i, "T"), std::vector<std::string>{});
            } else if (lv.head(i) <= 0) {
                rs.rules.emplace_back(j(i, "F"), std::vector<std::string>{});
            } else {
                for (const char* b : {"T", "F"}) rs.rules.emplace_back(j(i, b), std::vector<std::string>{j(lv.tail(i), b)});
            }
        }
        out.all_pos = rs.freeze();
    }
    {
        RuleSet rs;
        auto j = [&](std::size_t i, Atom x) { return "maxElem(" + lv.key[i] + "," + std::to_string(x) + ")"; };
        for (std::size_t i = 0; i < n; ++i) {
            for (auto x : elems) rs.universe.push_back(j(i, x));
            if (lv.is_nil(i)) continue;
            const auto x = lv.head(i);
            rs.coaxioms.push_back(j(i, x));
            const auto t = lv.tail(i);
            if (lv.is_nil(t)) rs.rules.emplace_back(j(i, x), std::vector<std::string>{});
            for (auto y : elems) rs.rules.emplace_back(j(i, std::max(x, y)), std::vector<std::string>{j(t, y)});
        }
        out.max_elem = rs.freeze();
    }
    {
        RuleSet rs;
        auto j = [&](std::size_t i, const std::set<Atom>& xs) { return "elems(" + lv.key[i] + "," + atom_set(xs) + ")"; };
        const auto subsets = submasks(full_mask(elems.size()));
        auto to_set = [&](Mask m) {
            std::set<Atom> s;
            for (std::size_t k = 0; k < elems.size(); ++k)
                if ((m >> k) & 1U) s.insert(elems[k]);
            return s;
        };
        for (std::size_t i = 0; i < n; ++i) {
            for (auto m : subsets) rs.universe.push_back(j(i, to_set(m)));
            rs.coaxioms.push_back(j(i, {}));
            if (lv.is_nil(i)) {
                rs.rules.emplace_back(j(i, {}), std::vector<std::string>{});
                continue;
            }
            for (auto m : subsets) {
                auto xs = to_set(m);
                auto concl = xs;
                concl.insert(lv.head(i));
                rs.rules.emplace_back(j(i, concl), std::vector<std::string>{j(lv.tail(i), xs)});
            }
        }
        out.elems = rs.freeze();
    }
    return out;
}

InferenceSystem build_member_plain(const EqSystem& list, Atom query) {
    const auto lv = view_list(list);
    RuleSet rs;
    auto j = [&](std::size_t i) { return "member(" + std::to_string(query) + "," + lv.key[i] + ")"; };
    for (std::size_t i = 0; i < list.size(); ++i) {
        rs.universe.push_back(j(i));
        if (lv.is_nil(i)) continue;
        if (lv.head(i) == query) rs.rules.emplace_back(j(i), std::vector<std::string>{});
        rs.rules.emplace_back(j(i), std::vector<std::string>{j(lv.tail(i))});
    }
    return rs.freeze();
}

InferenceSystem build_allpos_plain(const EqSystem& list) {
    const auto lv = view_list(list);
    RuleSet rs;
    auto j = [&](std::size_t i) { return "allPos(" + lv.key[i] + ")"; };
    for (std::size_t i = 0; i < list.size(); ++i) {
        rs.universe.push_back(j(i));
        if (lv.is_nil(i)) rs.rules.emplace_back(j(i), std::vector<std::string>{});
        else if (lv.head(i) > 0) rs.rules.emplace_back(j(i), std::vector<std::string>{j(lv.tail(i))});
    }
    return rs.freeze();
}

// ---- trees ----------------------------------------------------------------

namespace {

struct TreeView {
    std::vector<std::string> key;
    std::vector<std::size_t> trees, lists;
    const EqSystem* sys;

    Atom label(std::size_t i) const { return std::get<Atom>(sys->states()[i].args[0]); }
    std::size_t children(std::size_t i) const { return std::get<Var>(sys->states()[i].args[1]).index; }
    bool is_nil(std::size_t i) const { return sys->states()[i].tag == Tag::nil; }
    std::size_t head(std::size_t i) const { return std::get<Var>(sys->states()[i].args[0]).index; }
    std::size_t tail(std::size_t i) const { return std::get<Var>(sys->states()[i].args[1]).index; }
};

TreeView view_tree(const EqSystem& t) {
    if (t.root().tag != Tag::tree) throw ShapeMismatch("expected a tree");
    TreeView v{{}, {}, {}, &t};
    const auto& st = t.states();
    auto is_list = [&](std::size_t i) { return st[i].tag == Tag::cons || st[i].tag == Tag::nil; };
    for (std::size_t i = 0; i < st.size(); ++i) {
        switch (st[i].tag) {
        case Tag::tree:
            if (!is_list(std::get<Var>(st[i].args[1]).index)) throw ShapeMismatch("tree children must be a list");
            v.trees.push_back(i);
            break;
        case Tag::cons: {
            auto e = std::get_if<Var>(&st[i].args[0]);
            if (!e || st[e->index].tag != Tag::tree) throw ShapeMismatch("child lists must contain trees");
            v.lists.push_back(i);
            break;
        }
        case Tag::nil: v.lists.push_back(i); break;
        case Tag::digit: throw ShapeMismatch("expected a tree, found a digit stream");
        }
    }
    for (std::size_t i = 0; i < st.size(); ++i) v.key.push_back(t.rooted_at(i).to_string());
    return v;
}

} // namespace

InferenceSystem build_path0(const EqSystem& tree) {
    const auto tv = view_tree(tree);
    RuleSet rs;
    auto path0 = [&](std::size_t t) { return "path0(" + tv.key[t] + ")"; };
    auto is_in = [&](std::size_t t, std::size_t l) { return "is_in(" + tv.key[t] + "," + tv.key[l] + ")"; };
    for (auto t : tv.trees) {
        rs.universe.push_back(path0(t));
        rs.coaxioms.push_back(path0(t));
        for (auto l : tv.lists) rs.universe.push_back(is_in(t, l));
    }
    for (auto t : tv.trees) {
        if (tv.label(t) != 0) continue;
        for (auto c : tv.trees) rs.rules.emplace_back(path0(t), std::vector<std::string>{is_in(c, tv.children(t)), path0(c)});
    }
    for (auto l : tv.lists) {
        if (tv.is_nil(l)) continue;
        for (auto t : tv.trees) {
            if (t == tv.head(l)) rs.rules.emplace_back(is_in(t, l), std::vector<std::string>{});
            else rs.rules.emplace_back(is_in(t, l), std::vector<std::string>{is_in(t, tv.tail(l))});
        }
    }
    return rs.freeze();
}

InferenceSystem build_is_in0(const EqSystem& tree) {
    const auto tv = view_tree(tree);
    RuleSet rs;
    auto path0 = [&](std::size_t t) { return "path0(" + tv.key[t] + ")"; };
    auto is_in0 = [&](std::size_t l) { return "is_in0(" + tv.key[l] + ")"; };
    for (auto t : tv.trees) {
        rs.universe.push_back(path0(t));
        rs.coaxioms.push_back(path0(t));
        if (tv.label(t) == 0) rs.rules.emplace_back(path0(t), std::vector<std::string>{is_in0(tv.children(t))});
    }
    for (auto l : tv.lists) {
        rs.universe.push_back(is_in0(l));
        if (tv.is_nil(l)) continue;
        rs.rules.emplace_back(is_in0(l), std::vector<std::string>{path0(tv.head(l))});
        rs.rules.emplace_back(is_in0(l), std::vector<std::string>{is_in0(tv.tail(l))});
    }
    return rs.freeze();
}

// ---- add ------------------------------------------------------------------

namespace {

void require_stream(const EqSystem& r) {
    for (const auto& s : r.states())
        if (s.tag != Tag::digit) throw ShapeMismatch("expected a digit stream");
}

Atom digit(const EqSystem& r, std::size_t i) { return std::get<Atom>(r.states()[i].args[0]); }
std::size_t next(const EqSystem& r, std::size_t i) { return std::get<Var>(r.states()[i].args[1]).index; }

Atom floor_div(Atom a, Atom b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }

} // namespace

std::string add_judgement(const EqSystem& r1, const EqSystem& r2, const EqSystem& r, int carry) {
    return "add(" + r1.to_string() + "," + r2.to_string() + "," + r.to_string() + "," + std::to_string(carry) + ")";
}

InferenceSystem build_add(const EqSystem& r1, const EqSystem& r2, const EqSystem& r) {
    require_stream(r1);
    require_stream(r2);
    require_stream(r);
    std::vector<std::string> k1, k2, k;
    for (std::size_t i = 0; i < r1.size(); ++i) k1.push_back(r1.rooted_at(i).to_string());
    for (std::size_t i = 0; i < r2.size(); ++i) k2.push_back(r2.rooted_at(i).to_string());
    for (std::size_t i = 0; i < r.size(); ++i) k.push_back(r.rooted_at(i).to_string());

    using Triple = std::tuple<std::size_t, std::size_t, std::size_t>;
    std::set<Triple> triples;
    std::vector<Triple> work{{0, 0, 0}};
    triples.insert(work.front());
    while (!work.empty()) {
        auto [a, b, c] = work.back();
        work.pop_back();
        Triple t{next(r1, a), next(r2, b), next(r, c)};
        if (triples.insert(t).second) work.push_back(t);
    }

    auto j = [&](const Triple& t, Atom carry) {
        return "add(" + k1[std::get<0>(t)] + "," + k2[std::get<1>(t)] + "," + k[std::get<2>(t)] + "," +
               std::to_string(carry) + ")";
    };
    RuleSet rs;
    for (const auto& t : triples) {
        for (Atom carry = -1; carry <= 2; ++carry) {
            rs.universe.push_back(j(t, carry));
            rs.coaxioms.push_back(j(t, carry));
        }
        const auto [a, b, c] = t;
        const Triple tail{next(r1, a), next(r2, b), next(r, c)};
        for (Atom carry = -1; carry <= 2; ++carry) {
            const Atom s = digit(r1, a) + digit(r2, b) + carry;
            const Atom d = s - 10 * floor_div(s, 10);
            const Atom out = floor_div(s, 10);
            if (d != digit(r, c) || out < -1 || out > 2) continue;
            rs.rules.emplace_back(j(t, out), std::vector<std::string>{j(tail, carry)});
        }
    }
    return rs.freeze();
}

// ---- big-step evaluation --------------------------------------------------

std::string eval_judgement(const lambda::Term& e, const lambda::Term* value) {
    return lambda::to_string(e) + "=>" + (value ? lambda::to_string(*value) : std::string("inf"));
}

InferenceSystem build_bigstep(const lambda::TermPtr& goal, const BuildOptions& opts) {
    using lambda::Term;
    using lambda::TermPtr;
    if (!goal || !lambda::is_closed(*goal)) throw InvalidArgument("bigstep: goal must be a closed term");

    // Expressions and the values each one is known to evaluate to, grown
    // together to a fixed point: operands of applications, and for e1 e2 the
    // body of every discovered value of e1 instantiated with every discovered
    // value of e2. Only those instances get an (app) rule; any other instance
    // has a premise e1=>f or e2=>v that no finite derivation reaches.
    std::map<std::string, TermPtr> exprs;
    std::map<std::string, std::set<std::string>> vals;
    struct Inst {
        std::string f, v, body;
    };
    std::map<std::string, std::vector<Inst>> insts;
    std::set<std::tuple<std::string, std::string, std::string>> seen;
    bool changed = false;
    auto add = [&](const TermPtr& t) {
        auto k = lambda::to_string(*t);
        if (exprs.emplace(k, t).second) {
            changed = true;
            if (exprs.size() > opts.term_cap) throw CapExceeded(opts.term_cap, "expressions");
            if (lambda::is_value(*t)) vals[k].insert(k);
        }
        return k;
    };
    add(goal);
    do {
        changed = false;
        std::vector<std::pair<std::string, TermPtr>> snapshot(exprs.begin(), exprs.end());
        for (const auto& [ek, e] : snapshot) {
            if (e->kind != Term::Kind::app) continue;
            const auto e1 = add(e->body);
            const auto e2 = add(e->arg);
            const auto fs = vals[e1];
            const auto vs = vals[e2];
            for (const auto& fk : fs)
                for (const auto& vk : vs) {
                    if (seen.emplace(ek, fk, vk).second) {
                        const auto body = add(lambda::substitute(*exprs.at(fk)->body, exprs.at(vk)));
                        insts[ek].push_back({fk, vk, body});
                    }
                }
            for (const auto& in : insts[ek])
                for (const auto& r : std::set<std::string>(vals[in.body]))
                    changed |= vals[ek].insert(r).second;
        }
    } while (changed);

    std::set<std::string> values;
    for (const auto& [k, vs] : vals) values.insert(vs.begin(), vs.end());

    RuleSet rs;
    auto judge = [](const std::string& e, const std::string* v) { return e + "=>" + (v ? *v : std::string("inf")); };
    for (const auto& [ek, e] : exprs) {
        rs.universe.push_back(judge(ek, nullptr));
        rs.coaxioms.push_back(judge(ek, nullptr));
        for (const auto& vk : values) rs.universe.push_back(judge(ek, &vk));
    }
    RuleBudget budget(opts.rule_cap);
    for (const auto& [ek, e] : exprs) {
        if (lambda::is_value(*e)) {
            rs.rules.emplace_back(judge(ek, &ek), std::vector<std::string>{});
            continue;
        }
        const auto e1 = lambda::to_string(*e->body);
        const auto e2 = lambda::to_string(*e->arg);
        budget.reserve({1 + values.size() + insts[ek].size() * (values.size() + 1)});
        // (l-inf)
        rs.rules.emplace_back(judge(ek, nullptr), std::vector<std::string>{judge(e1, nullptr)});
        // (r-inf)
        for (const auto& fk : values)
            rs.rules.emplace_back(judge(ek, nullptr), std::vector<std::string>{judge(e1, &fk), judge(e2, nullptr)});
        // (app)
        for (const auto& in : insts[ek]) {
            std::vector<std::string> prem{judge(e1, &in.f), judge(e2, &in.v), judge(in.body, nullptr)};
            rs.rules.emplace_back(judge(ek, nullptr), prem);
            for (const auto& rk : values) {
                prem.back() = judge(in.body, &rk);
                rs.rules.emplace_back(judge(ek, &rk), prem);
            }
        }
    }
    return rs.freeze();
}

} // namespace coax::systems
