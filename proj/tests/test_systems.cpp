#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "coax/error.hpp"
#include "coax/lambda.hpp"
#include "coax/regular.hpp"
#include "coax/systems.hpp"
#include "support/oracles.hpp"

using namespace coax;
using systems::ExtCost;

namespace {

std::set<std::string> gen_strings(const InferenceSystem& sys) {
    auto v = generated(sys).strings();
    return {v.begin(), v.end()};
}

bool in_gen(const InferenceSystem& sys, const std::string& j) {
    auto id = sys.universe()->find(j);
    if (!id) ADD_FAILURE() << j << " is not in the universe";
    return id && generated(sys).contains(*id);
}

// Generated judgements whose payload starts with `prefix`.
std::vector<std::string> with_prefix(const std::set<std::string>& gen, const std::string& prefix) {
    std::vector<std::string> out;
    for (const auto& j : gen)
        if (j.compare(0, prefix.size(), prefix) == 0) out.push_back(j);
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(item);
    return out;
}

// Random graph with out-degree at most `max_deg`, so full reach domains stay small.
systems::Graph sparse_graph(std::mt19937& rng, std::size_t max_nodes, std::size_t max_deg) {
    std::uniform_int_distribution<std::size_t> nd(1, max_nodes), deg(0, max_deg);
    const auto n = nd(rng);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<std::string> nodes;
    for (std::size_t i = 0; i < n; ++i) nodes.push_back("n" + std::to_string(i));
    std::vector<std::tuple<std::string, std::string, std::uint64_t>> edges;
    for (std::size_t a = 0; a < n; ++a) {
        const auto d = deg(rng);
        for (std::size_t k = 0; k < d; ++k) edges.emplace_back(nodes[a], nodes[pick(rng)], 1);
    }
    return systems::make_graph(nodes, edges);
}

std::string key_of(const regular::EqSystem& sys, std::size_t state) { return sys.rooted_at(state).to_string(); }

// Random regular tree over labels {0,1}: tree states 0..nt-1, list states after them.
regular::EqSystem random_tree(std::mt19937& rng, std::size_t nt, std::size_t nl) {
    using regular::State;
    using regular::Tag;
    using regular::Var;
    std::uniform_int_distribution<std::size_t> tpick(0, nt - 1), lpick(0, nl - 1);
    std::uniform_int_distribution<int> label(0, 1);
    std::bernoulli_distribution nil(0.2);
    std::vector<State> states;
    for (std::size_t i = 0; i < nt; ++i) states.push_back({Tag::tree, {regular::Atom{label(rng)}, Var{nt + lpick(rng)}}});
    for (std::size_t i = 0; i < nl; ++i) {
        if (nil(rng)) {
            states.push_back({Tag::nil, {}});
        } else {
            states.push_back({Tag::cons, {Var{tpick(rng)}, Var{nt + lpick(rng)}}});
        }
    }
    return regular::EqSystem::make(states, 0);
}

// Tree states with an infinite path of 0-labelled nodes, by descending iteration.
std::set<std::size_t> zero_paths(const regular::EqSystem& sys) {
    std::set<std::size_t> s;
    for (std::size_t i = 0; i < sys.size(); ++i) {
        const auto& st = sys.states()[i];
        if (st.tag == regular::Tag::tree && std::get<regular::Atom>(st.args[0]) == 0) s.insert(i);
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (auto it = s.begin(); it != s.end();) {
            const auto l = std::get<regular::Var>(sys.states()[*it].args[1]).index;
            bool child = false;
            for (auto c : s) child = child || fixtures::occurs_in(sys, c, l);
            if (!child) {
                it = s.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
    }
    return s;
}

lambda::TermPtr random_term(std::mt19937& rng, std::size_t depth, std::size_t binders) {
    std::uniform_int_distribution<int> kind(0, 2);
    int k = depth == 0 ? (binders > 0 ? 0 : 1) : kind(rng);
    if (k == 0 && binders == 0) k = 1;
    if (k == 0) {
        std::uniform_int_distribution<std::size_t> ix(0, binders - 1);
        return lambda::var(ix(rng));
    }
    if (k == 1) return lambda::lam(random_term(rng, depth == 0 ? 0 : depth - 1, binders + 1));
    return lambda::app(random_term(rng, depth - 1, binders), random_term(rng, depth - 1, binders));
}

} // namespace

// ---- reach ------------------------------------------------------------------

TEST(Reach, ThreeNodeExample) {
    auto g = systems::make_graph({"a", "b", "c"}, {{"a", "b", 1}, {"b", "a", 1}});
    for (bool compact : {false, true}) {
        systems::BuildOptions opts;
        opts.compact = compact;
        auto sys = systems::build_reach(g, opts);
        EXPECT_EQ(gen_strings(sys), (std::set<std::string>{"a->*{a,b}", "b->*{a,b}", "c->*{c}"}));
    }
    EXPECT_EQ(systems::build_reach(g).universe()->size(), 24u);
}

TEST(Reach, SingleNode) {
    auto sys = systems::build_reach(systems::make_graph({"v"}, {}));
    EXPECT_EQ(gen_strings(sys), (std::set<std::string>{"v->*{v}"}));
}

TEST(Reach, NodeCap) {
    std::vector<std::string> nodes;
    for (int i = 0; i < 11; ++i) nodes.push_back("n" + std::to_string(i));
    EXPECT_THROW(systems::build_reach(systems::make_graph(nodes, {})), CapExceeded);
}

TEST(Reach, RandomGraphsMatchDfs) {
    std::mt19937 rng(61);
    for (int i = 0; i < 60; ++i) {
        auto g = sparse_graph(rng, 6, 2);
        for (bool compact : {false, true}) {
            systems::BuildOptions opts;
            opts.compact = compact;
            auto gen = gen_strings(systems::build_reach(g, opts));
            std::set<std::string> want;
            for (std::size_t v = 0; v < g.nodes.size(); ++v)
                want.insert(systems::reach_judgement(g, v, fixtures::dfs_reach(g, v)));
            EXPECT_EQ(gen, want);
        }
    }
}

// ---- first ------------------------------------------------------------------

TEST(First, SingleTerminal) {
    auto gr = systems::Grammar::parse("A -> s\n");
    auto gen = gen_strings(systems::build_first(gr));
    EXPECT_EQ(with_prefix(gen, "first(A,"), std::vector<std::string>{"first(A,{s})"});
    EXPECT_TRUE(gen.count("first(eps,{})"));
}

TEST(First, MutualRecursion) {
    auto gr = systems::Grammar::parse("A -> B a\nB -> A b | .\n");
    auto gen = gen_strings(systems::build_first(gr));
    EXPECT_EQ(with_prefix(gen, "first(A,"), std::vector<std::string>{"first(A,{a})"});
    EXPECT_EQ(with_prefix(gen, "first(B,"), std::vector<std::string>{"first(B,{a})"});
    EXPECT_EQ(systems::nullable(gr), (std::set<std::string>{"B"}));
}

TEST(First, NullableSideCondition) {
    // B is not nullable, so A's first set must not pick up the a after B.
    auto gr = systems::Grammar::parse("A -> B a\nB -> b\n");
    auto gen = gen_strings(systems::build_first(gr));
    EXPECT_EQ(with_prefix(gen, "first(A,"), std::vector<std::string>{"first(A,{b})"});
    EXPECT_EQ(with_prefix(gen, "first(B.a,"), std::vector<std::string>{"first(B.a,{b})"});

    auto gr2 = systems::Grammar::parse("A -> B a\nB -> b | .\n");
    auto gen2 = gen_strings(systems::build_first(gr2));
    EXPECT_EQ(with_prefix(gen2, "first(A,"), std::vector<std::string>{"first(A,{a,b})"});
}

TEST(First, GrammarParseErrors) {
    EXPECT_THROW(systems::Grammar::parse("A b\n"), ParseError);
    EXPECT_THROW(systems::Grammar::parse("-> b\n"), ParseError);
    EXPECT_THROW(systems::Grammar::parse("eps -> b\n"), ParseError);
}

TEST(First, RandomGrammarsMatchWorklist) {
    std::mt19937 rng(62);
    for (int i = 0; i < 60; ++i) {
        auto gr = fixtures::random_grammar(rng, 4, 3);
        fixtures::ClassicFirst oracle(gr);
        EXPECT_EQ(systems::nullable(gr), oracle.nullable);
        systems::BuildOptions opts;
        opts.compact = true;
        auto gen = gen_strings(systems::build_first(gr, opts));
        for (const auto& a : gr.nonterminals) {
            EXPECT_EQ(with_prefix(gen, "first(" + a + ","),
                      std::vector<std::string>{systems::first_judgement({a}, oracle.first.at(a))});
        }
        for (const auto& p : gr.productions) {
            for (std::size_t k = 0; k + 1 < p.body.size(); ++k) {
                std::vector<std::string> alpha(p.body.begin() + static_cast<std::ptrdiff_t>(k), p.body.end());
                const auto want = systems::first_judgement(alpha, oracle.of(alpha, gr));
                EXPECT_TRUE(gen.count(want)) << want;
            }
        }
        if (gr.terminals.size() <= 2 && gr.nonterminals.size() <= 3) {
            EXPECT_EQ(gen, gen_strings(systems::build_first(gr)));
        }
    }
}

// ---- lists ------------------------------------------------------------------

TEST(Lists, OnesStream) {
    auto l = regular::parse("L = cons 1 L\n");
    const auto k = l.to_string();
    auto ls = systems::build_list_systems(l, 2);
    EXPECT_TRUE(in_gen(ls.all_pos, "allPos(" + k + ",T)"));
    EXPECT_FALSE(in_gen(ls.all_pos, "allPos(" + k + ",F)"));
    EXPECT_TRUE(in_gen(ls.member, "member(2," + k + ",F)"));
    EXPECT_FALSE(in_gen(ls.member, "member(2," + k + ",T)"));
    EXPECT_EQ(with_prefix(gen_strings(ls.elems), "elems(" + k + ","), std::vector<std::string>{"elems(" + k + ",{1})"});
    EXPECT_EQ(gen_strings(ls.max_elem), (std::set<std::string>{"maxElem(" + k + ",1)"}));
}

TEST(Lists, MaxOfAlternatingStream) {
    auto l = regular::parse("L0 = cons 1 L\nL = cons 2 M\nM = cons 1 L\n");
    auto ls = systems::build_list_systems(l, 1);
    const auto k = regular::parse("L = cons 2 M\nM = cons 1 L\n").to_string();
    EXPECT_EQ(with_prefix(gen_strings(ls.max_elem), "maxElem(" + k + ","), std::vector<std::string>{"maxElem(" + k + ",2)"});
    EXPECT_EQ(with_prefix(gen_strings(ls.max_elem), "maxElem(" + l.to_string() + ","),
              std::vector<std::string>{"maxElem(" + l.to_string() + ",2)"});
}

TEST(Lists, ShapeErrors) {
    auto t = regular::parse("T = tree 0 L\nL = cons T L\n");
    EXPECT_THROW(systems::build_list_systems(t, 1), ShapeMismatch);
    EXPECT_THROW(systems::build_add(t, t, t), ShapeMismatch);
    EXPECT_THROW(systems::build_path0(regular::parse("L = cons 1 L\n")), ShapeMismatch);
}

TEST(Lists, RandomListsMatchCarrier) {
    std::mt19937 rng(63);
    for (int i = 0; i < 200; ++i) {
        auto l = fixtures::random_list(rng, 5, -1, 3);
        auto ls = systems::build_list_systems(l, 2);
        auto member = gen_strings(ls.member);
        auto all_pos = gen_strings(ls.all_pos);
        auto max_elem = gen_strings(ls.max_elem);
        auto elems = gen_strings(ls.elems);
        for (const auto& sub : regular::subterms(l)) {
            const auto k = sub.to_string();
            const auto c = regular::carrier(sub);
            bool pos = true;
            for (auto x : c) pos = pos && x > 0;
            EXPECT_EQ(with_prefix(all_pos, "allPos(" + k + ","),
                      std::vector<std::string>{"allPos(" + k + "," + (pos ? "T" : "F") + ")"});

            std::ostringstream set;
            set << "{";
            for (auto it = c.begin(); it != c.end(); ++it) set << (it == c.begin() ? "" : ",") << *it;
            set << "}";
            EXPECT_EQ(with_prefix(elems, "elems(" + k + ","), std::vector<std::string>{"elems(" + k + "," + set.str() + ")"});

            if (sub.root().tag == regular::Tag::nil) {
                EXPECT_TRUE(with_prefix(max_elem, "maxElem(" + k + ",").empty());
            } else {
                EXPECT_EQ(with_prefix(max_elem, "maxElem(" + k + ","),
                          std::vector<std::string>{"maxElem(" + k + "," + std::to_string(*c.rbegin()) + ")"});
            }

            // Without a nil rule only lists that reach nil lose their F answers.
            const bool has = c.count(2) > 0;
            auto got = with_prefix(member, "member(2," + k + ",");
            if (has) {
                EXPECT_EQ(got, std::vector<std::string>{"member(2," + k + ",T)"});
            } else if (std::none_of(sub.states().begin(), sub.states().end(),
                                    [](const regular::State& s) { return s.tag == regular::Tag::nil; })) {
                EXPECT_EQ(got, std::vector<std::string>{"member(2," + k + ",F)"});
            } else {
                EXPECT_TRUE(got.empty());
            }
        }
        // Closure values stay inside the carrier.
        const auto carrier = regular::carrier(l);
        for (const auto& j : closure_of(ls.max_elem).strings()) {
            const auto x = std::stoll(j.substr(j.rfind(',') + 1));
            EXPECT_TRUE(carrier.count(x)) << j;
        }
    }
}

TEST(Lists, PlainSystemsHaveNoCoaxioms) {
    auto l = regular::parse("L = cons 1 L\n");
    EXPECT_TRUE(generated(systems::build_allpos_plain(l)).is_empty());
    EXPECT_TRUE(coinductive(systems::build_allpos_plain(l)).result.size() == 1);
    EXPECT_TRUE(generated(systems::build_member_plain(l, 1)).size() == 1);
}

// ---- dist and spath ---------------------------------------------------------

TEST(Dist, IsolatedNodeAndAxioms) {
    auto g = systems::make_graph({"a", "b", "e"}, {{"a", "b", 2}, {"b", "e", 3}});
    for (bool compact : {false, true}) {
        systems::BuildOptions opts;
        opts.compact = compact;
        auto gen = gen_strings(systems::build_dist(g, opts));
        EXPECT_EQ(with_prefix(gen, "dist(e,"), (std::vector<std::string>{"dist(e,a,inf)", "dist(e,b,inf)", "dist(e,e,0)"}));
        EXPECT_TRUE(gen.count("dist(a,a,0)"));
        EXPECT_TRUE(gen.count("dist(a,e,5)"));
        EXPECT_TRUE(gen.count("dist(b,a,inf)"));
        EXPECT_EQ(gen.size(), 9u);
    }
}

TEST(Dist, CyclesDoNotShortenDistances) {
    // a and b reach each other but neither reaches c.
    auto g = systems::make_graph({"a", "b", "c"}, {{"a", "b", 1}, {"b", "a", 1}});
    auto gen = gen_strings(systems::build_dist(g));
    EXPECT_TRUE(gen.count("dist(a,c,inf)"));
    EXPECT_TRUE(gen.count("dist(b,c,inf)"));
    EXPECT_EQ(with_prefix(gen, "dist(a,c,").size(), 1u);
}

TEST(Dist, FullAndCompactAgree) {
    std::mt19937 rng(64);
    for (int i = 0; i < 40; ++i) {
        auto g = fixtures::random_graph(rng, 3, 0.5, 3);
        systems::BuildOptions compact;
        compact.compact = true;
        EXPECT_EQ(gen_strings(systems::build_dist(g)), gen_strings(systems::build_dist(g, compact)));
        EXPECT_EQ(gen_strings(systems::build_spath(g)), gen_strings(systems::build_spath(g, compact)));
    }
}

TEST(Spath, Examples) {
    auto g = systems::make_graph({"a", "b", "c", "v"}, {{"a", "b", 1}, {"b", "c", 1}, {"a", "c", 2}});
    auto gen = gen_strings(systems::build_spath(g));
    EXPECT_TRUE(gen.count("spath(a,a,a,0)"));
    EXPECT_TRUE(gen.count("spath(v,a,bot,inf)"));
    // Both routes weigh 2; the least adjacent index (b) wins.
    EXPECT_EQ(with_prefix(gen, "spath(a,c,"), std::vector<std::string>{"spath(a,c,a.b.c,2)"});
}

TEST(DistSpath, RandomGraphsMatchShortestPaths) {
    std::mt19937 rng(65);
    systems::BuildOptions opts;
    opts.compact = true;
    for (int i = 0; i < 40; ++i) {
        auto g = fixtures::random_graph(rng, 6, 0.3, 5);
        const auto oracle = fixtures::shortest_paths(g);
        auto dist = gen_strings(systems::build_dist(g, opts));
        auto spath = gen_strings(systems::build_spath(g, opts));
        for (std::size_t v = 0; v < g.nodes.size(); ++v) {
            for (std::size_t u = 0; u < g.nodes.size(); ++u) {
                const auto d = oracle[v][u] ? ExtCost::of(*oracle[v][u]) : ExtCost::inf();
                const auto prefix = g.nodes[v] + "," + g.nodes[u] + ",";
                EXPECT_EQ(with_prefix(dist, "dist(" + prefix), std::vector<std::string>{systems::dist_judgement(g, v, u, d)});
                auto sp = with_prefix(spath, "spath(" + prefix);
                ASSERT_EQ(sp.size(), 1u);
                auto parts = split(sp[0].substr(6, sp[0].size() - 7), ',');
                ASSERT_EQ(parts.size(), 4u);
                EXPECT_EQ(parts[3], d.to_string());
                if (d.is_inf()) {
                    EXPECT_EQ(parts[2], "bot");
                    continue;
                }
                auto walk = split(parts[2], '.');
                ASSERT_FALSE(walk.empty());
                EXPECT_EQ(walk.front(), g.nodes[v]);
                EXPECT_EQ(walk.back(), g.nodes[u]);
                std::uint64_t w = 0;
                for (std::size_t s = 0; s + 1 < walk.size(); ++s) {
                    const auto x = g.index(walk[s]), y = g.index(walk[s + 1]);
                    const auto& a = g.adj[x];
                    ASSERT_TRUE(std::find(a.begin(), a.end(), y) != a.end()) << sp[0];
                    w += g.weight(x, y);
                }
                EXPECT_EQ(ExtCost::of(w), d);
            }
        }
    }
}

// ---- trees ------------------------------------------------------------------

namespace {
const char* const kTrees =
    "T1 = tree 0 L1\nL1 = cons T2 M1\nM1 = cons T1 L1\nT2 = tree 0 L2\nL2 = cons T3 L2\nT3 = tree 1 L1\n";
const char* const kT2 = "T2 = tree 0 L2\nL2 = cons T3 L2\nT3 = tree 1 L1\nL1 = cons T2 M1\nM1 = cons T1 L1\nT1 = tree 0 L1\n";
const char* const kL2 = "L2 = cons T3 L2\nT3 = tree 1 L1\nL1 = cons T2 M1\nM1 = cons T1 L1\nT1 = tree 0 L1\nT2 = tree 0 L2\n";
} // namespace

TEST(Path0, CorrectedSystem) {
    auto t = regular::parse(kTrees);
    auto sys = systems::build_path0(t);
    EXPECT_TRUE(in_gen(sys, "path0(" + t.to_string() + ")"));
    EXPECT_FALSE(in_gen(sys, "path0(" + regular::parse(kT2).to_string() + ")"));

    auto one = regular::parse("T = tree 1 L\nL = cons T L\n");
    EXPECT_FALSE(in_gen(systems::build_path0(one), "path0(" + one.to_string() + ")"));
}

TEST(Path0, UncorrectedSystemOverapproximates) {
    auto t = regular::parse(kTrees);
    auto sys = systems::build_is_in0(t);
    EXPECT_TRUE(in_gen(sys, "is_in0(" + regular::parse(kL2).to_string() + ")"));
    EXPECT_TRUE(in_gen(sys, "path0(" + regular::parse(kT2).to_string() + ")"));
}

TEST(Path0, RandomTreesMatchOracles) {
    std::mt19937 rng(66);
    for (int i = 0; i < 150; ++i) {
        auto t = random_tree(rng, 3, 3);
        auto gen = gen_strings(systems::build_path0(t));
        const auto zero = zero_paths(t);
        for (std::size_t a = 0; a < t.size(); ++a) {
            if (t.states()[a].tag != regular::Tag::tree) continue;
            EXPECT_EQ(gen.count("path0(" + key_of(t, a) + ")") > 0, zero.count(a) > 0);
            for (std::size_t l = 0; l < t.size(); ++l) {
                if (t.states()[l].tag == regular::Tag::tree) continue;
                EXPECT_EQ(gen.count("is_in(" + key_of(t, a) + "," + key_of(t, l) + ")") > 0,
                          fixtures::occurs_in(t, a, l));
            }
        }
    }
}

// ---- add --------------------------------------------------------------------

TEST(Add, Examples) {
    auto zero = regular::parse("Z = digit 0 Z\n");
    auto nine = regular::parse("N = digit 9 N\n");
    auto s1 = systems::build_add(zero, zero, nine);
    EXPECT_TRUE(in_gen(s1, systems::add_judgement(zero, zero, nine, -1)));
    auto s2 = systems::build_add(nine, nine, zero);
    EXPECT_TRUE(in_gen(s2, systems::add_judgement(nine, nine, zero, 2)));
    auto s3 = systems::build_add(zero, zero, zero);
    EXPECT_FALSE(in_gen(s3, systems::add_judgement(zero, zero, zero, 1)));
    EXPECT_TRUE(in_gen(s3, systems::add_judgement(zero, zero, zero, 0)));
    EXPECT_EQ(s3.universe()->size(), 4u);
}

TEST(Add, FiniteDecimals) {
    // 0.25 + 0.5 = 0.75 exactly, and 0.5 + 0.5 = 1.0.
    auto a = regular::parse("A = digit 2 B\nB = digit 5 Z\nZ = digit 0 Z\n");
    auto b = regular::parse("B = digit 5 Z\nZ = digit 0 Z\n");
    auto c = regular::parse("C = digit 7 D\nD = digit 5 Z\nZ = digit 0 Z\n");
    auto zero = regular::parse("Z = digit 0 Z\n");
    auto sys = systems::build_add(a, b, c);
    EXPECT_TRUE(in_gen(sys, systems::add_judgement(a, b, c, 0)));
    for (int carry : {-1, 1, 2}) EXPECT_FALSE(in_gen(sys, systems::add_judgement(a, b, c, carry)));
    auto sys2 = systems::build_add(b, b, zero);
    EXPECT_TRUE(in_gen(sys2, systems::add_judgement(b, b, zero, 1)));
    EXPECT_FALSE(in_gen(sys2, systems::add_judgement(b, b, zero, 0)));
}

// ---- bigstep ----------------------------------------------------------------

TEST(Bigstep, Examples) {
    auto ed = lambda::parse("(\\x. x x) (\\x. x x)");
    auto sys = systems::build_bigstep(ed);
    auto gen = gen_strings(sys);
    EXPECT_TRUE(gen.count("(\\x.x@x)@(\\x.x@x)=>inf"));
    EXPECT_EQ(with_prefix(gen, "(\\x.x@x)@(\\x.x@x)=>"), std::vector<std::string>{"(\\x.x@x)@(\\x.x@x)=>inf"});
    EXPECT_FALSE(in_gen(sys, "(\\x.x@x)@(\\x.x@x)=>\\x.x@x"));

    auto id = systems::build_bigstep(lambda::parse("\\x. x"));
    EXPECT_EQ(gen_strings(id), (std::set<std::string>{"\\x.x=>\\x.x"}));

    auto app = systems::build_bigstep(lambda::parse("(\\x. x) (\\y. y)"));
    EXPECT_TRUE(in_gen(app, "(\\x.x)@(\\x.x)=>\\x.x"));
    EXPECT_FALSE(in_gen(app, "(\\x.x)@(\\x.x)=>inf"));
}

TEST(Bigstep, TermCap) {
    systems::BuildOptions opts;
    opts.term_cap = 1;
    EXPECT_THROW(systems::build_bigstep(lambda::parse("(\\x. x x) (\\x. x x)"), opts), CapExceeded);
}

TEST(Bigstep, RandomTermsMatchEvaluator) {
    std::mt19937 rng(67);
    std::size_t checked = 0;
    systems::BuildOptions opts;
    opts.term_cap = 300;
    for (int i = 0; i < 300; ++i) {
        auto t = random_term(rng, 3, 0);
        InferenceSystem sys;
        try {
            sys = systems::build_bigstep(t, opts);
        } catch (const CapExceeded&) {
            continue;
        }
        const auto e = lambda::to_string(*t);
        auto answers = with_prefix(gen_strings(sys), e + "=>");
        auto v = fixtures::cbv_eval(t, 10000);
        if (v) {
            EXPECT_EQ(answers, std::vector<std::string>{e + "=>" + lambda::to_string(*v)});
        } else {
            EXPECT_EQ(answers, std::vector<std::string>{e + "=>inf"});
        }
        ++checked;
    }
    EXPECT_GT(checked, 200u);
}

// ---- universes --------------------------------------------------------------

TEST(Universe, EmbeddingInALargerUniverseChangesNothing) {
    auto g = systems::make_graph({"a", "b", "c"}, {{"a", "b", 1}, {"b", "a", 1}});
    systems::BuildOptions opts;
    opts.compact = true;
    auto sys = systems::build_reach(g, opts);
    SystemBuilder b;
    for (const auto& j : sys.universe()->members()) b.declare(j.str());
    for (const auto& r : sys.rules()) {
        std::vector<std::string> ps;
        for (auto p : r.premises) ps.push_back((*sys.universe())[p].str());
        b.add_rule((*sys.universe())[r.conclusion].str(), ps);
    }
    for (auto c : sys.coaxioms().ids()) b.add_coaxiom((*sys.universe())[c].str());
    // Extra judgements that depend on the original ones, never the reverse.
    b.add_rule("extra1", {"a->*{a,b}"});
    b.add_rule("extra2", {"extra2"});
    b.add_coaxiom("extra2");
    auto big = b.build();
    ASSERT_GT(big.universe()->size(), sys.universe()->size());
    auto restrict = [&](const JudgementSet& s) {
        std::set<std::string> out;
        for (const auto& j : s.strings())
            if (sys.universe()->find(j)) out.insert(j);
        return out;
    };
    auto strings = [](const JudgementSet& s) {
        auto v = s.strings();
        return std::set<std::string>(v.begin(), v.end());
    };
    EXPECT_EQ(restrict(generated(big)), strings(generated(sys)));
    EXPECT_EQ(restrict(inductive(big).result), strings(inductive(sys).result));
    EXPECT_EQ(restrict(coinductive(big).result), strings(coinductive(sys).result));
}
