#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "coax/core.hpp"
#include "coax/lambda.hpp"
#include "coax/regular.hpp"

namespace coax::systems {

/// Directed graph with optional non-negative edge weights. Nodes are kept in
/// name order; adjacency lists follow node order.
struct Graph {
    std::vector<std::string> nodes;
    std::vector<std::vector<std::size_t>> adj;
    std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> weights;  // absent edge weight = 1

    /// `node a`, `edge a b [w]`, `#` comments. Edges declare their endpoints.
    static Graph parse(std::string_view text);

    std::size_t index(const std::string& name) const;
    std::uint64_t weight(std::size_t v, std::size_t u) const;
    void add_edge(std::size_t v, std::size_t u, std::optional<std::uint64_t> w = std::nullopt);
};

Graph make_graph(const std::vector<std::string>& nodes,
                 const std::vector<std::tuple<std::string, std::string, std::uint64_t>>& edges);

/// Context-free grammar. Nonterminals are the production heads; every other
/// body symbol is a terminal.
struct Grammar {
    struct Production {
        std::string head;
        std::vector<std::string> body;
        friend auto operator<=>(const Production&, const Production&) = default;
    };
    std::set<std::string> nonterminals;
    std::set<std::string> terminals;
    std::vector<Production> productions;  // sorted, distinct

    /// `A -> B c`, `A -> .` for an empty body, `#` comments.
    static Grammar parse(std::string_view text);
    static Grammar make(std::vector<Production> productions);
};

/// Natural number or infinity.
struct ExtCost {
    std::optional<std::uint64_t> value;

    static ExtCost inf() { return {}; }
    static ExtCost of(std::uint64_t v) { return {v}; }
    bool is_inf() const noexcept { return !value; }
    std::string to_string() const { return value ? std::to_string(*value) : "inf"; }

    friend ExtCost operator+(ExtCost a, ExtCost b) {
        if (!a.value || !b.value) return inf();
        return of(*a.value + *b.value);
    }
    friend bool operator==(const ExtCost&, const ExtCost&) = default;
    friend std::strong_ordering operator<=>(const ExtCost& a, const ExtCost& b) {
        if (a.is_inf() || b.is_inf()) return a.is_inf() <=> b.is_inf();
        return *a.value <=> *b.value;
    }
};

struct BuildOptions {
    /// Use the reduced value domains (reachable subsets, simple-path weights)
    /// instead of the full ones. Generated judgements are unaffected.
    bool compact = false;
    std::size_t node_cap = 10;
    std::size_t terminal_cap = 8;
    std::size_t rule_cap = 2'000'000;
    std::size_t term_cap = 2000;
};

// Judgement payload formats.
std::string reach_judgement(const Graph& g, std::size_t v, const std::set<std::size_t>& reached);
std::string first_judgement(const std::vector<std::string>& alpha, const std::set<std::string>& first);
std::string dist_judgement(const Graph& g, std::size_t v, std::size_t u, ExtCost d);
std::string spath_judgement(const Graph& g, std::size_t v, std::size_t u,
                            const std::optional<std::vector<std::size_t>>& path, ExtCost d);

/// reach(v, S): S is the set of nodes reachable from v. Coaxioms v->*{}.
InferenceSystem build_reach(const Graph& g, const BuildOptions& opts = {});

/// first(alpha, F) over the empty string, the nonterminals and the proper
/// suffixes of production bodies. Coaxioms first(A,{}).
InferenceSystem build_first(const Grammar& gr, const BuildOptions& opts = {});

/// Nullable nonterminals, computed inductively.
std::set<std::string> nullable(const Grammar& gr);

/// dist(v, u, d): shortest-path weight. Coaxioms dist(v,u,inf) for v != u.
InferenceSystem build_dist(const Graph& g, const BuildOptions& opts = {});

/// spath(v, u, path, d): a shortest simple path with ties broken towards the
/// least adjacent node. Paths are written `a.b.c`; `bot` when unreachable.
InferenceSystem build_spath(const Graph& g, const BuildOptions& opts = {});

/// Membership and related predicates over one regular list, judgements over
/// its subterms.
struct ListSystems {
    InferenceSystem member;    // member(x,l,T|F), coaxioms member(x,l,F)
    InferenceSystem all_pos;   // allPos(l,T|F), coaxioms allPos(l,T)
    InferenceSystem max_elem;  // maxElem(l,x), coaxioms maxElem(l,x) for x in l
    InferenceSystem elems;     // elems(l,S), coaxioms elems(l,{})
};
ListSystems build_list_systems(const regular::EqSystem& list, regular::Atom query);

/// Two-argument member and one-argument allPos, no coaxioms.
InferenceSystem build_member_plain(const regular::EqSystem& list, regular::Atom query);
InferenceSystem build_allpos_plain(const regular::EqSystem& list);

/// path0 over a regular tree using an explicit occurrence predicate is_in.
/// Coaxioms: every path0 judgement.
InferenceSystem build_path0(const regular::EqSystem& tree);

/// The variant with an auxiliary predicate is_in0 defined only by the path0
/// premise and the tail rule. It derives judgements the intended predicate
/// does not.
InferenceSystem build_is_in0(const regular::EqSystem& tree);

/// add(r1, r2, r, c) over digit streams with carries in {-1, 0, 1, 2}; every
/// judgement is a coaxiom. Universe: the simultaneously reachable triples.
InferenceSystem build_add(const regular::EqSystem& r1, const regular::EqSystem& r2, const regular::EqSystem& r);
std::string add_judgement(const regular::EqSystem& r1, const regular::EqSystem& r2, const regular::EqSystem& r,
                          int carry);

/// Big-step call-by-value evaluation with divergence: judgements `e=>v` and
/// `e=>inf` over the expressions relevant to the goal. Coaxioms: every
/// `e=>inf`. Throws CapExceeded past opts.term_cap expressions.
InferenceSystem build_bigstep(const lambda::TermPtr& goal, const BuildOptions& opts = {});
std::string eval_judgement(const lambda::Term& e, const lambda::Term* value);

} // namespace coax::systems
