#include "coax/prooftree.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "coax/error.hpp"

namespace coax {

namespace {

void check_children(const TreeNode& n) {
    for (std::size_t i = 1; i < n.children.size(); ++i)
        if (!(n.children[i - 1]->label < n.children[i]->label))
            throw InvalidArgument("tree node children must have distinct labels in increasing order");
}

struct PairHash {
    std::size_t operator()(const std::tuple<const TreeNode*, const TreeNode*, std::size_t>& k) const noexcept {
        auto h = std::hash<const void*>{}(std::get<0>(k));
        h ^= std::hash<const void*>{}(std::get<1>(k)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= std::get<2>(k) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

struct NodeDepthHash {
    std::size_t operator()(const std::pair<const TreeNode*, std::size_t>& k) const noexcept {
        auto h = std::hash<const void*>{}(k.first);
        return h ^ (k.second * 0x9e3779b97f4a7c15ULL);
    }
};

bool subset_of_set(const PremiseSet& ps, const JudgementSet& s) {
    return std::all_of(ps.begin(), ps.end(), [&](JudgementId p) { return s.contains(p); });
}

PremiseSet child_labels(const TreeNode& n) {
    PremiseSet out;
    out.reserve(n.children.size());
    for (const auto& c : n.children) out.push_back(c->label);
    return out;
}

// Canonical well-founded proofs, read off the ascending chain: a judgement
// first inferred at step k gets the least premise set inferred before k.
class WfProofs {
public:
    explicit WfProofs(const InferenceSystem& sys) : sys_(sys), level_(sys.universe()->size(), 0) {
        const auto trace = inductive(sys).trace;
        for (std::size_t k = 1; k < trace.steps.size(); ++k)
            for (auto id : trace.steps[k].ids())
                if (level_[id] == 0) level_[id] = k;
    }

    // Number of levels of the canonical proof of j; 0 when j has none.
    std::size_t levels(JudgementId j) const { return level_[j]; }

    NodePtr build(JudgementId j) {
        if (auto it = memo_.find(j); it != memo_.end()) return it->second;
        const auto lj = level_[j];
        for (const auto& ps : sys_.premise_sets(j)) {
            const bool earlier = std::all_of(ps.begin(), ps.end(), [&](JudgementId p) {
                return level_[p] != 0 && level_[p] < lj;
            });
            if (!earlier) continue;
            std::vector<NodePtr> children;
            for (auto p : ps) children.push_back(build(p));
            auto node = make_node(j, std::move(children));
            memo_.emplace(j, node);
            return node;
        }
        throw std::logic_error("canonical proof lookup failed for a derivable judgement");
    }

private:
    const InferenceSystem& sys_;
    std::vector<std::size_t> level_;
    std::unordered_map<JudgementId, NodePtr> memo_;
};

} // namespace

NodePtr make_node(JudgementId label, std::vector<NodePtr> children) {
    std::sort(children.begin(), children.end(), [](const NodePtr& a, const NodePtr& b) { return a->label < b->label; });
    auto node = std::make_shared<TreeNode>();
    node->label = label;
    node->children = std::move(children);
    check_children(*node);
    return node;
}

PathTree::PathTree(UniversePtr universe, NodePtr root) : universe_(std::move(universe)), root_(std::move(root)) {
    if (!root_) throw InvalidArgument("tree without root");
    std::unordered_set<const TreeNode*> seen;
    std::function<void(const TreeNode&)> check = [&](const TreeNode& n) {
        if (!seen.insert(&n).second) return;
        if (n.label >= universe_->size()) throw InvalidArgument("tree label outside universe");
        check_children(n);
        for (const auto& c : n.children) check(*c);
    };
    check(*root_);
}

PathTree PathTree::from_paths(UniversePtr universe, JudgementId root, std::vector<LabelPath> paths) {
    std::set<LabelPath> all(paths.begin(), paths.end());
    all.erase(LabelPath{});
    for (const auto& p : all) {
        if (p.size() > 1 && !all.count(LabelPath(p.begin(), p.end() - 1)))
            throw InvalidArgument("path set is not prefix-closed");
    }
    // std::set orders each path right after its prefix, so a recursive walk
    // over the sorted range rebuilds the trie.
    std::vector<LabelPath> sorted(all.begin(), all.end());
    std::size_t pos = 0;
    std::function<NodePtr(JudgementId, std::size_t)> build = [&](JudgementId label, std::size_t depth) {
        std::vector<NodePtr> children;
        while (pos < sorted.size() && sorted[pos].size() == depth + 1) {
            const auto child_label = sorted[pos].back();
            ++pos;
            children.push_back(build(child_label, depth + 1));
        }
        return make_node(label, std::move(children));
    };
    auto node = build(root, 0);
    return PathTree(std::move(universe), std::move(node));
}

std::vector<LabelPath> PathTree::paths() const {
    std::vector<LabelPath> out;
    LabelPath cur;
    std::function<void(const TreeNode&)> walk = [&](const TreeNode& n) {
        for (const auto& c : n.children) {
            cur.push_back(c->label);
            out.push_back(cur);
            walk(*c);
            cur.pop_back();
        }
    };
    walk(*root_);
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t PathTree::height() const {
    std::unordered_map<const TreeNode*, std::size_t> memo;
    std::function<std::size_t(const TreeNode&)> h = [&](const TreeNode& n) -> std::size_t {
        if (auto it = memo.find(&n); it != memo.end()) return it->second;
        std::size_t best = 0;
        for (const auto& c : n.children) best = std::max(best, 1 + h(*c));
        memo.emplace(&n, best);
        return best;
    };
    return h(*root_);
}

std::size_t PathTree::node_count(std::size_t cap) const {
    std::unordered_map<const TreeNode*, std::size_t> memo;
    std::function<std::size_t(const TreeNode&)> count = [&](const TreeNode& n) -> std::size_t {
        if (auto it = memo.find(&n); it != memo.end()) return it->second;
        std::size_t total = 1;
        for (const auto& c : n.children) {
            total += count(*c);
            if (total >= cap) {
                total = cap;
                break;
            }
        }
        memo.emplace(&n, total);
        return total;
    };
    return count(*root_);
}

TreeVerdict validate_proof_tree(const InferenceSystem& sys, const PathTree& t) {
    if (!same_universe(sys.universe(), t.universe())) throw UniverseMismatch("validate_proof_tree");
    std::unordered_set<const TreeNode*> ok;
    LabelPath path;
    std::function<bool(const TreeNode&)> check = [&](const TreeNode& n) {
        if (ok.count(&n)) return true;
        if (!sys.has_rule(child_labels(n), n.label)) return false;
        for (const auto& c : n.children) {
            path.push_back(c->label);
            if (!check(*c)) return false;
            path.pop_back();
        }
        ok.insert(&n);
        return true;
    };
    if (check(*t.root())) return {};
    return TreeVerdict{false, path};
}

TreeVerdict validate_approximated(const InferenceSystem& sys, const PathTree& t, std::size_t level) {
    if (!same_universe(sys.universe(), t.universe())) throw UniverseMismatch("validate_approximated");
    std::unordered_set<std::pair<const TreeNode*, std::size_t>, NodeDepthHash> ok;
    LabelPath path;
    std::function<bool(const TreeNode&, std::size_t)> check = [&](const TreeNode& n, std::size_t remaining) {
        if (ok.count({&n, remaining})) return true;
        const bool by_rule = sys.has_rule(child_labels(n), n.label);
        const bool by_coaxiom = remaining == 0 && n.children.empty() && sys.coaxioms().contains(n.label);
        if (!by_rule && !by_coaxiom) return false;
        for (const auto& c : n.children) {
            path.push_back(c->label);
            if (!check(*c, remaining == 0 ? 0 : remaining - 1)) return false;
            path.pop_back();
        }
        ok.insert({&n, remaining});
        return true;
    };
    if (check(*t.root(), level)) return {};
    return TreeVerdict{false, path};
}

std::optional<PathTree> wf_proof_search(const InferenceSystem& sys, JudgementId j, std::size_t depth_bound) {
    if (j >= sys.universe()->size()) throw InvalidArgument("wf_proof_search: judgement outside universe");
    WfProofs proofs(sys);
    const auto levels = proofs.levels(j);
    if (levels == 0 || levels > depth_bound) return std::nullopt;
    return PathTree(sys.universe(), proofs.build(j));
}

std::optional<PathTree> approx_proof(const InferenceSystem& sys, JudgementId j, std::size_t level) {
    if (j >= sys.universe()->size()) throw InvalidArgument("approx_proof: judgement outside universe");
    const auto extended = with_coaxioms_as_axioms(sys);
    const auto descent = kernel_below(sys, closure_of(sys)).trace.steps;
    auto step = [&](std::size_t k) -> const JudgementSet& { return descent[std::min(k, descent.size() - 1)]; };
    if (!step(level).contains(j)) return std::nullopt;

    WfProofs base(extended);
    std::map<std::pair<JudgementId, std::size_t>, NodePtr> memo;
    std::function<NodePtr(JudgementId, std::size_t)> build = [&](JudgementId c, std::size_t n) -> NodePtr {
        if (n == 0) return base.build(c);
        if (auto it = memo.find({c, n}); it != memo.end()) return it->second;
        const auto& below = step(n - 1);
        for (const auto& ps : sys.premise_sets(c)) {
            if (!subset_of_set(ps, below)) continue;
            std::vector<NodePtr> children;
            for (auto p : ps) children.push_back(build(p, n - 1));
            auto node = make_node(c, std::move(children));
            memo.emplace(std::make_pair(c, n), node);
            return node;
        }
        throw std::logic_error("approx_proof: descent member without a supporting rule");
    };
    return PathTree(sys.universe(), build(j, level));
}

ProofGraph proof_graph(const InferenceSystem& sys, const JudgementSet& s, JudgementId j) {
    if (!same_universe(sys.universe(), s.universe())) throw UniverseMismatch("proof_graph");
    std::map<JudgementId, PremiseSet> all;
    for (auto c : s.ids()) {
        const auto& lists = sys.premise_sets(c);
        auto it = std::find_if(lists.begin(), lists.end(), [&](const PremiseSet& ps) { return subset_of_set(ps, s); });
        if (it == lists.end()) throw NotConsistent((*sys.universe())[c].str());
        all.emplace(c, *it);
    }
    if (!s.contains(j)) throw InvalidArgument("proof_graph: root is not a member of the set");

    ProofGraph g;
    g.universe = sys.universe();
    g.support = JudgementSet::empty(sys.universe());
    g.root = j;
    std::deque<JudgementId> work{j};
    g.support.insert(j);
    while (!work.empty()) {
        const auto c = work.front();
        work.pop_front();
        const auto& ps = all.at(c);
        g.choice.emplace(c, ps);
        for (auto p : ps) {
            if (!g.support.contains(p)) {
                g.support.insert(p);
                work.push_back(p);
            }
        }
    }
    return g;
}

PathTree unfold(const ProofGraph& g, std::size_t depth) {
    std::map<std::pair<JudgementId, std::size_t>, NodePtr> memo;
    std::function<NodePtr(JudgementId, std::size_t)> build = [&](JudgementId c, std::size_t d) -> NodePtr {
        if (d == 0) return make_node(c, {});
        if (auto it = memo.find({c, d}); it != memo.end()) return it->second;
        std::vector<NodePtr> children;
        for (auto p : g.choice.at(c)) children.push_back(build(p, d - 1));
        auto node = make_node(c, std::move(children));
        memo.emplace(std::make_pair(c, d), node);
        return node;
    };
    return PathTree(g.universe, build(g.root, depth));
}

namespace {

bool le_nodes(const TreeNode& a, const TreeNode& b, std::size_t n,
              std::unordered_map<std::tuple<const TreeNode*, const TreeNode*, std::size_t>, bool, PairHash>& memo) {
    if (n == 0 || a.children.empty()) return true;
    const auto key = std::make_tuple(&a, &b, n);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    bool result = true;
    for (const auto& ca : a.children) {
        auto it = std::lower_bound(b.children.begin(), b.children.end(), ca->label,
                                   [](const NodePtr& x, JudgementId l) { return x->label < l; });
        if (it == b.children.end() || (*it)->label != ca->label || !le_nodes(*ca, **it, n - 1, memo)) {
            result = false;
            break;
        }
    }
    memo.emplace(key, result);
    return result;
}

} // namespace

bool tree_le_n(const PathTree& t1, const PathTree& t2, std::size_t n) {
    if (!same_universe(t1.universe(), t2.universe())) throw UniverseMismatch("tree_le_n");
    if (t1.root_label() != t2.root_label()) return false;
    std::unordered_map<std::tuple<const TreeNode*, const TreeNode*, std::size_t>, bool, PairHash> memo;
    return le_nodes(*t1.root(), *t2.root(), n, memo);
}

bool tree_eq_n(const PathTree& t1, const PathTree& t2, std::size_t n) {
    return tree_le_n(t1, t2, n) && tree_le_n(t2, t1, n);
}

bool tree_le(const PathTree& t1, const PathTree& t2) { return tree_le_n(t1, t2, t1.height()); }

std::vector<PathTree> approximating_sequence(const InferenceSystem& sys, JudgementId j, std::size_t upto) {
    if (j >= sys.universe()->size()) throw InvalidArgument("approximating_sequence: judgement outside universe");
    const auto gen = generated(sys);
    if (!gen.contains(j)) throw NotInGenerated((*sys.universe())[j].str());

    const auto extended = with_coaxioms_as_axioms(sys);
    WfProofs base(extended);
    const auto graph = proof_graph(sys, gen, j);

    std::map<std::pair<JudgementId, std::size_t>, NodePtr> memo;
    std::function<NodePtr(JudgementId, std::size_t)> build = [&](JudgementId c, std::size_t n) -> NodePtr {
        if (n == 0) return base.build(c);
        if (auto it = memo.find({c, n}); it != memo.end()) return it->second;
        std::vector<NodePtr> children;
        for (auto p : graph.choice.at(c)) children.push_back(build(p, n - 1));
        auto node = make_node(c, std::move(children));
        memo.emplace(std::make_pair(c, n), node);
        return node;
    };
    std::vector<PathTree> out;
    out.reserve(upto + 1);
    for (std::size_t n = 0; n <= upto; ++n) out.emplace_back(sys.universe(), build(j, n));
    return out;
}

} // namespace coax
