#include <gtest/gtest.h>

#include <random>

#include "coax/error.hpp"
#include "coax/lambda.hpp"
#include "coax/prooftree.hpp"
#include "coax/regular.hpp"
#include "coax/systems.hpp"
#include "support/random_system.hpp"

using namespace coax;

namespace {

InferenceSystem reach3() {
    return systems::build_reach(systems::make_graph({"a", "b", "c"}, {{"a", "b", 1}, {"b", "a", 1}}));
}

// A chain tree root <- j1 <- j2 ... given as payloads.
PathTree chain(const InferenceSystem& sys, const std::vector<std::string>& labels) {
    NodePtr n;
    for (auto it = labels.rbegin(); it != labels.rend(); ++it)
        n = make_node(sys.id(*it), n ? std::vector<NodePtr>{n} : std::vector<NodePtr>{});
    return PathTree(sys.universe(), n);
}

// Internal nodes (depth < limit) must be justified by rules of `sys`.
bool internal_nodes_justified(const InferenceSystem& sys, const TreeNode& n, std::size_t depth, std::size_t limit) {
    if (depth >= limit) return true;
    PremiseSet ps;
    for (const auto& c : n.children) ps.push_back(c->label);
    if (!sys.has_rule(ps, n.label)) return false;
    for (const auto& c : n.children)
        if (!internal_nodes_justified(sys, *c, depth + 1, limit)) return false;
    return true;
}

NodePtr random_tree(std::mt19937& rng, std::size_t universe, std::size_t depth) {
    std::uniform_int_distribution<JudgementId> label(0, static_cast<JudgementId>(universe - 1));
    std::uniform_int_distribution<int> width(0, 2);
    std::vector<NodePtr> kids;
    if (depth > 0) {
        std::set<JudgementId> used;
        const auto w = width(rng);
        for (int i = 0; i < w; ++i) {
            auto c = random_tree(rng, universe, depth - 1);
            if (used.insert(c->label).second) kids.push_back(c);
        }
    }
    return make_node(label(rng), std::move(kids));
}

NodePtr prune(std::mt19937& rng, const NodePtr& n) {
    std::bernoulli_distribution keep(0.7);
    std::vector<NodePtr> kids;
    for (const auto& c : n->children)
        if (keep(rng)) kids.push_back(prune(rng, c));
    return make_node(n->label, std::move(kids));
}

} // namespace

TEST(PathTree, FromPathsRequiresPrefixClosure) {
    auto u = Universe::make(std::vector<std::string>{"a", "b", "c"});
    auto t = PathTree::from_paths(u, 0, {{1}, {1, 2}, {2}});
    EXPECT_EQ(t.height(), 2u);
    EXPECT_EQ(t.node_count(), 4u);
    EXPECT_EQ(t.paths(), (std::vector<LabelPath>{{1}, {1, 2}, {2}}));
    EXPECT_THROW(PathTree::from_paths(u, 0, {{1, 2}}), InvalidArgument);
}

TEST(PathTree, ChildrenMustHaveDistinctLabels) {
    EXPECT_THROW(make_node(0, {make_node(1, {}), make_node(1, {})}), InvalidArgument);
}

TEST(ProofTree, ValidatesTheAllPosDerivation) {
    auto l = regular::parse("L0 = cons 1 L1\nL1 = cons 2 L2\nL2 = cons 1 L3\nL3 = nil\n");
    auto sys = systems::build_allpos_plain(l);
    const std::vector<std::string> labels{"allPos(<cons(1,#1),cons(2,#2),cons(1,#3),nil>)",
                                          "allPos(<cons(2,#1),cons(1,#2),nil>)", "allPos(<cons(1,#1),nil>)",
                                          "allPos(<nil>)"};
    auto t = chain(sys, labels);
    EXPECT_EQ(t.height(), 3u);
    EXPECT_TRUE(validate_proof_tree(sys, t).ok);

    EXPECT_TRUE(validate_proof_tree(sys, chain(sys, {"allPos(<nil>)"})).ok);
    auto bad = validate_proof_tree(sys, chain(sys, {labels[1]}));
    EXPECT_FALSE(bad.ok);
    EXPECT_EQ(bad.failing_path, LabelPath{});
}

TEST(ProofTree, WfSearchPrefersTheShortMemberProof) {
    auto l = regular::parse("L0 = cons 1 L1\nL1 = cons 2 L2\nL2 = cons 1 L3\nL3 = nil\n");
    auto sys = systems::build_member_plain(l, 1);
    auto j = sys.id("member(1,<cons(1,#1),cons(2,#2),cons(1,#3),nil>)");
    auto t = wf_proof_search(sys, j, sys.universe()->size());
    ASSERT_TRUE(t);
    EXPECT_EQ(t->height(), 0u);
    EXPECT_TRUE(validate_proof_tree(sys, *t).ok);

    auto sys2 = systems::build_member_plain(l, 3);
    for (JudgementId i = 0; i < sys2.universe()->size(); ++i)
        EXPECT_FALSE(wf_proof_search(sys2, i, sys2.universe()->size()));
}

TEST(ProofTree, WfSearchRespectsTheDepthBound) {
    auto sys = reach3();
    auto j = sys.id("c->*{c}");
    EXPECT_FALSE(wf_proof_search(sys, j, 0));
    EXPECT_TRUE(wf_proof_search(sys, j, 1));
}

TEST(ProofTree, ApproximatedTreesOfTheReachExample) {
    auto sys = reach3();
    const auto j = sys.id("a->*{a,b}");
    const std::vector<std::vector<std::string>> expected{
        {"a->*{a,b}", "b->*{b}", "a->*{}"},
        {"a->*{a,b}", "b->*{a,b}", "a->*{a}", "b->*{}"},
        {"a->*{a,b}", "b->*{a,b}", "a->*{a,b}", "b->*{b}", "a->*{}"},
    };
    for (std::size_t n = 0; n < expected.size(); ++n) {
        auto t = approx_proof(sys, j, n);
        ASSERT_TRUE(t) << "level " << n;
        auto want = chain(sys, expected[n]);
        EXPECT_TRUE(tree_le(*t, want) && tree_le(want, *t)) << "level " << n;
        EXPECT_TRUE(validate_approximated(sys, *t, n).ok);
        // The coaxiom leaf sits at depth n + 2.
        EXPECT_TRUE(validate_approximated(sys, *t, n + 2).ok);
        EXPECT_FALSE(validate_approximated(sys, *t, n + 3).ok);
    }
    EXPECT_FALSE(approx_proof(sys, sys.id("a->*{a}"), 2));
}

TEST(ProofTree, LevelZeroMatchesWfSearchWithCoaxioms) {
    std::mt19937 rng(21);
    for (int i = 0; i < 200; ++i) {
        auto sys = fixtures::random_system(rng, 10);
        auto with = with_coaxioms_as_axioms(sys);
        for (JudgementId j = 0; j < sys.universe()->size(); ++j)
            EXPECT_EQ(approx_proof(sys, j, 0).has_value(), wf_proof_search(with, j, sys.universe()->size()).has_value());
    }
}

TEST(ProofTree, WfSearchAgreesWithInductive) {
    std::mt19937 rng(22);
    for (int i = 0; i < 200; ++i) {
        auto sys = fixtures::random_system(rng, 10);
        const auto ind = inductive(sys).result;
        for (JudgementId j = 0; j < sys.universe()->size(); ++j) {
            auto t = wf_proof_search(sys, j, sys.universe()->size());
            ASSERT_EQ(t.has_value(), ind.contains(j));
            if (t) {
                EXPECT_TRUE(validate_proof_tree(sys, *t).ok);
            }
        }
    }
}

TEST(ProofTree, ApproxProofPresenceMatchesDescent) {
    std::mt19937 rng(23);
    for (int i = 0; i < 200; ++i) {
        auto sys = fixtures::random_system(rng, 10);
        auto level = closure_of(sys);
        const auto gen = generated(sys);
        for (std::size_t n = 0; n <= sys.universe()->size(); ++n) {
            for (JudgementId j = 0; j < sys.universe()->size(); ++j) {
                auto t = approx_proof(sys, j, n);
                ASSERT_EQ(t.has_value(), level.contains(j));
                if (t) {
                    EXPECT_TRUE(validate_approximated(sys, *t, n).ok);
                }
            }
            level = infer_step(sys, level);
        }
        for (JudgementId j = 0; j < sys.universe()->size(); ++j)
            EXPECT_EQ(gen.contains(j), approx_proof(sys, j, sys.universe()->size()).has_value());
    }
}

TEST(ProofGraph, ReachGeneratesATwoCycle) {
    auto sys = reach3();
    const auto gen = generated(sys);
    auto g = proof_graph(sys, gen, sys.id("a->*{a,b}"));
    ASSERT_EQ(g.choice.size(), 2u);
    EXPECT_EQ(g.choice.at(sys.id("a->*{a,b}")), PremiseSet{sys.id("b->*{a,b}")});
    EXPECT_EQ(g.choice.at(sys.id("b->*{a,b}")), PremiseSet{sys.id("a->*{a,b}")});

    auto t = unfold(g, 4);
    auto want = chain(sys, {"a->*{a,b}", "b->*{a,b}", "a->*{a,b}", "b->*{a,b}", "a->*{a,b}"});
    EXPECT_TRUE(tree_le(t, want) && tree_le(want, t));
    EXPECT_EQ(unfold(g, 0).node_count(), 1u);
}

TEST(ProofGraph, AxiomLeafAndErrors) {
    auto sys = reach3();
    const auto c = sys.id("c->*{c}");
    auto g = proof_graph(sys, JudgementSet::of(sys.universe(), std::vector<std::string>{"c->*{c}"}), c);
    EXPECT_TRUE(g.choice.at(c).empty());

    auto bad = JudgementSet::of(sys.universe(), std::vector<std::string>{"a->*{a}"});
    EXPECT_THROW(proof_graph(sys, bad, sys.id("a->*{a}")), NotConsistent);
    EXPECT_THROW(proof_graph(sys, generated(sys), sys.id("a->*{a}")), InvalidArgument);
}

TEST(ProofGraph, UnfoldingsOfCoinductiveSetsValidate) {
    std::mt19937 rng(24);
    for (int i = 0; i < 200; ++i) {
        auto sys = fixtures::random_system(rng, 10);
        const auto nu = coinductive(sys).result;
        for (auto j : nu.ids()) {
            auto g = proof_graph(sys, nu, j);
            auto t3 = unfold(g, 3);
            auto t5 = unfold(g, 5);
            EXPECT_TRUE(internal_nodes_justified(sys, *t5.root(), 0, 5));
            EXPECT_TRUE(tree_le_n(t3, t5, 3));
            EXPECT_TRUE(tree_eq_n(t3, t5, 3));
        }
    }
}

TEST(TreeOrder, Laws) {
    std::mt19937 rng(25);
    const std::size_t n = 6;
    auto u = Universe::make(std::vector<std::string>{"a", "b", "c", "d", "e", "f"});
    for (int i = 0; i < 300; ++i) {
        PathTree t2(u, random_tree(rng, n, 4));
        PathTree t1(u, prune(rng, t2.root()));
        PathTree t3(u, random_tree(rng, n, 4));
        EXPECT_TRUE(tree_le(t1, t2));
        for (std::size_t k = 0; k <= 5; ++k) {
            EXPECT_TRUE(tree_le_n(t1, t1, k));
            EXPECT_TRUE(tree_eq_n(t3, t3, k));
            EXPECT_TRUE(tree_le_n(t1, t2, k));
            EXPECT_EQ(tree_eq_n(t1, t3, k), tree_eq_n(t3, t1, k));
            if (tree_le_n(t3, t2, k + 1)) {
                EXPECT_TRUE(tree_le_n(t3, t2, k));
            }
            if (tree_le_n(t1, t2, k) && tree_le_n(t2, t3, k)) {
                EXPECT_TRUE(tree_le_n(t1, t3, k));
            }
        }
        // Full order is the conjunction over all levels up to the height.
        bool all = true;
        for (std::size_t k = 0; k <= std::max(t3.height(), t2.height()); ++k) all = all && tree_le_n(t3, t2, k);
        EXPECT_EQ(all, tree_le(t3, t2));
    }
}

TEST(ApproximatingSequence, DivergenceOfSelfApplication) {
    auto goal = lambda::parse("(\\x. x x) (\\x. x x)");
    auto sys = systems::build_bigstep(goal);
    const auto ed = sys.id("(\\x.x@x)@(\\x.x@x)=>inf");
    const auto delta = sys.id("\\x.x@x=>\\x.x@x");
    auto seq = approximating_sequence(sys, ed, 3);
    ASSERT_EQ(seq.size(), 4u);
    EXPECT_EQ(seq[0].node_count(), 1u);
    EXPECT_EQ(seq[0].root_label(), ed);
    EXPECT_EQ(seq[1].paths(), (std::vector<LabelPath>{{ed}, {delta}}));
    for (std::size_t n = 0; n < seq.size(); ++n) {
        EXPECT_TRUE(validate_approximated(sys, seq[n], n).ok) << n;
        if (n + 1 < seq.size()) {
            EXPECT_TRUE(tree_eq_n(seq[n], seq[n + 1], n));
        }
    }
    EXPECT_THROW(approximating_sequence(sys, sys.id("(\\x.x@x)@(\\x.x@x)=>\\x.x@x"), 2), NotInGenerated);
}

TEST(ApproximatingSequence, AxiomIsConstant) {
    auto sys = reach3();
    auto seq = approximating_sequence(sys, sys.id("c->*{c}"), 4);
    for (const auto& t : seq) EXPECT_EQ(t.node_count(), 1u);
}

TEST(ApproximatingSequence, RandomSystemsAndGraphAgreement) {
    std::mt19937 rng(26);
    for (int i = 0; i < 200; ++i) {
        auto sys = fixtures::random_system(rng, 10);
        const auto gen = generated(sys);
        for (auto j : gen.ids()) {
            const std::size_t upto = 5;
            auto seq = approximating_sequence(sys, j, upto);
            ASSERT_EQ(seq.size(), upto + 1);
            for (std::size_t n = 0; n <= upto; ++n) {
                EXPECT_TRUE(validate_approximated(sys, seq[n], n).ok);
                if (n < upto) {
                    EXPECT_TRUE(tree_eq_n(seq[n], seq[n + 1], n));
                }
            }
            EXPECT_TRUE(tree_eq_n(unfold(proof_graph(sys, gen, j), upto), seq[upto], upto));
        }
    }
}
