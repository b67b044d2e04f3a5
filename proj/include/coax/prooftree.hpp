#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "coax/core.hpp"

namespace coax {

/// Children-injective tree node. Children are kept sorted by label and carry
/// distinct labels, so a node is identified by its label path from the root.
/// Nodes are immutable and may be shared between trees (and within one tree),
/// which keeps deep proof trees linear in the number of distinct subproofs.
struct TreeNode {
    JudgementId label = 0;
    std::vector<std::shared_ptr<const TreeNode>> children;
};
using NodePtr = std::shared_ptr<const TreeNode>;

/// A label path below the root (the root itself is the empty path).
using LabelPath = std::vector<JudgementId>;

/// A finite children-injective tree over the judgements of one universe:
/// a root label plus a prefix-closed set of label paths.
class PathTree {
public:
    PathTree() = default;
    PathTree(UniversePtr universe, NodePtr root);

    /// Builds the tree from its root label and path set. Throws
    /// InvalidArgument when the set is not prefix-closed.
    static PathTree from_paths(UniversePtr universe, JudgementId root, std::vector<LabelPath> paths);

    const UniversePtr& universe() const noexcept { return universe_; }
    const NodePtr& root() const noexcept { return root_; }
    JudgementId root_label() const noexcept { return root_->label; }

    /// All non-empty paths, sorted. Exponential in the depth for shared
    /// subtrees; intended for small trees and tests.
    std::vector<LabelPath> paths() const;
    /// Longest root-to-leaf path, in edges.
    std::size_t height() const;
    /// Number of path positions (including the root), saturating at `cap`.
    std::size_t node_count(std::size_t cap = SIZE_MAX) const;

private:
    UniversePtr universe_;
    NodePtr root_;
};

/// Helper for composing trees node by node.
NodePtr make_node(JudgementId label, std::vector<NodePtr> children);

struct TreeVerdict {
    bool ok = true;
    /// Path of the first offending node in depth-first order (children in label order).
    std::optional<LabelPath> failing_path;
};

/// Accepts iff every node with label c has children Pr such that Pr/c is a rule.
TreeVerdict validate_proof_tree(const InferenceSystem& sys, const PathTree& t);

/// Accepts iff t is an approximated proof tree of level n: nodes at depth < n
/// use rules of the system, deeper nodes may also close with a coaxiom leaf.
TreeVerdict validate_approximated(const InferenceSystem& sys, const PathTree& t, std::size_t level);

/// Finite proof tree with at most `depth_bound` levels (height < depth_bound),
/// or nothing. With depth_bound = |U| the result is absent iff j is not in
/// the inductive interpretation.
std::optional<PathTree> wf_proof_search(const InferenceSystem& sys, JudgementId j, std::size_t depth_bound);

/// Approximated proof tree of level n: a well-founded proof in the system with
/// coaxioms as axioms, where coaxioms are used only at depth >= n. Present iff
/// j is in the n-th descent step from the closure.
std::optional<PathTree> approx_proof(const InferenceSystem& sys, JudgementId j, std::size_t level);

/// Rule choice on a consistent set, rooted at one member. Encodes a regular,
/// possibly non-well-founded, proof tree.
struct ProofGraph {
    UniversePtr universe;
    JudgementSet support;
    std::map<JudgementId, PremiseSet> choice;
    JudgementId root = 0;
};

/// Picks, for every member of `s` reachable from j, the least premise set
/// contained in `s`. Throws NotConsistent when s is not contained in
/// infer_step(s), InvalidArgument when j is not in s.
ProofGraph proof_graph(const InferenceSystem& sys, const JudgementSet& s, JudgementId j);

/// Depth-bounded path expansion of the graph; nodes at `depth` are leaves.
PathTree unfold(const ProofGraph& g, std::size_t depth);

/// dom_n(t1) is contained in dom_n(t2) and the roots agree (labels on a path
/// are the path itself, so agreement below the root is automatic).
bool tree_le_n(const PathTree& t1, const PathTree& t2, std::size_t n);
/// Both directions of tree_le_n: the first n levels coincide.
bool tree_eq_n(const PathTree& t1, const PathTree& t2, std::size_t n);
/// Full path-set inclusion.
bool tree_le(const PathTree& t1, const PathTree& t2);

/// Strong approximating proof sequence t_0..t_upto for a judgement of the
/// generated interpretation. Throws NotInGenerated otherwise.
std::vector<PathTree> approximating_sequence(const InferenceSystem& sys, JudgementId j, std::size_t upto);

} // namespace coax
