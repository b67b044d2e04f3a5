#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace coax::regular {

enum class Tag { nil, cons, tree, digit };

/// State reference inside an EqSystem.
struct Var {
    std::size_t index = 0;
    friend auto operator<=>(const Var&, const Var&) = default;
};

using Atom = std::int64_t;
using Arg = std::variant<Atom, Var>;

struct State {
    Tag tag = Tag::nil;
    std::vector<Arg> args;
    friend bool operator==(const State&, const State&) = default;
};

/// A regular term as a finite system of syntactic equations.
///
/// Instances built through `make` or `parse` are canonical: bisimilar states
/// are merged, unreachable ones dropped, and states renumbered breadth-first
/// from the root (index 0). Structural equality of canonical systems is
/// therefore equality of the infinite unfoldings, and `to_string` is a
/// canonical serialization.
class EqSystem {
public:
    EqSystem() = default;

    /// Validates arities and references, then canonicalizes. `root` indexes `states`.
    static EqSystem make(std::vector<State> states, std::size_t root = 0);

    const std::vector<State>& states() const noexcept { return states_; }
    const State& root() const { return states_.front(); }
    std::size_t size() const noexcept { return states_.size(); }

    /// Same system re-rooted at state `i` (canonicalized).
    EqSystem rooted_at(std::size_t i) const;

    friend bool operator==(const EqSystem&, const EqSystem&) = default;
    friend bool operator<(const EqSystem& a, const EqSystem& b) { return a.key() < b.key(); }

    /// Canonical, whitespace-free serialization, e.g. `<cons(1,#1),cons(2,#0)>`.
    std::string to_string() const { return key(); }

private:
    explicit EqSystem(std::vector<State> states) : states_(std::move(states)) {}
    std::string key() const;

    std::vector<State> states_;
};

/// One binding per line: `X = cons 1 Y`, `N = nil`, `T = tree 0 CS`,
/// `S = digit 9 S`. The first bound variable is the root; `#` starts a comment.
/// Throws ParseError.
EqSystem parse(std::string_view text);

/// Equality of the infinite unfoldings by partition refinement over the
/// disjoint union of both state sets. Throws SignatureMismatch when one side
/// is a digit stream and the other is not.
bool bisim_equal(const EqSystem& a, const EqSystem& b);

/// The distinct subterms, one canonical EqSystem per state.
std::vector<EqSystem> subterms(const EqSystem& a);

/// Element atoms of a list or digit stream. Throws ShapeMismatch for trees
/// or lists whose elements are terms.
std::set<Atom> carrier(const EqSystem& a);

} // namespace coax::regular
