#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "coax/judgement.hpp"

namespace coax {

/// Sorted, duplicate-free premise ids. Ordered lexicographically, which is
/// the serialization order on premise sets (the empty set is least).
using PremiseSet = std::vector<JudgementId>;

struct Rule {
    PremiseSet premises;
    JudgementId conclusion = 0;

    bool is_axiom() const noexcept { return premises.empty(); }
    friend bool operator==(const Rule&, const Rule&) = default;
};

/// A finite inference system with coaxioms: a backward index from each
/// conclusion to its premise sets, plus the coaxiom set.
///
/// Premise lists are deduplicated and kept in premise-set order, so the first
/// admissible entry is always the canonical choice.
class InferenceSystem {
public:
    InferenceSystem() = default;
    /// Throws InvalidArgument for ids outside the universe, UniverseMismatch if
    /// the coaxiom set lives elsewhere. Premises of each rule are normalized.
    InferenceSystem(UniversePtr universe, std::vector<Rule> rules, JudgementSet coaxioms);
    InferenceSystem(UniversePtr universe, std::vector<Rule> rules);

    const UniversePtr& universe() const noexcept { return universe_; }
    const JudgementSet& coaxioms() const noexcept { return coaxioms_; }
    const std::vector<PremiseSet>& premise_sets(JudgementId conclusion) const { return backward_[conclusion]; }

    bool has_rule(const PremiseSet& premises, JudgementId conclusion) const;
    std::vector<Rule> rules() const;
    std::size_t rule_count() const noexcept { return rule_count_; }
    /// Every conclusion has at most one premise set.
    bool deterministic() const noexcept;

    /// Number of duplicate rules dropped at construction.
    std::size_t duplicates_dropped() const noexcept { return duplicates_; }

    JudgementId id(const std::string& payload) const { return universe_->index_of(payload); }

private:
    UniversePtr universe_;
    std::vector<std::vector<PremiseSet>> backward_;
    JudgementSet coaxioms_;
    std::size_t rule_count_ = 0;
    std::size_t duplicates_ = 0;
};

/// Collects rules keyed by judgement payloads and freezes them into an
/// InferenceSystem. The universe is every judgement mentioned plus any
/// declared explicitly.
class SystemBuilder {
public:
    void declare(const std::string& j);
    void add_rule(const std::string& conclusion, std::vector<std::string> premises);
    void add_axiom(const std::string& conclusion) { add_rule(conclusion, {}); }
    void add_coaxiom(const std::string& j);

    std::size_t rule_count() const noexcept { return rules_.size(); }

    InferenceSystem build() const;
    /// Builds over a fixed universe; every mentioned judgement must belong to it.
    InferenceSystem build(UniversePtr universe) const;

private:
    std::vector<std::string> declared_;
    std::vector<std::pair<std::string, std::vector<std::string>>> rules_;
    std::vector<std::string> coaxioms_;
};

/// Kleene chain S0, S1, ..., Sk with S(k) == S(k-1).
struct IterationTrace {
    std::vector<JudgementSet> steps;
};

struct Interpretation {
    JudgementSet result;
    IterationTrace trace;
};

/// One application of the inference operator; coaxioms are not used.
JudgementSet infer_step(const InferenceSystem& sys, const JudgementSet& s);

/// Coaxioms become axioms; the result has no coaxioms.
InferenceSystem with_coaxioms_as_axioms(const InferenceSystem& sys);

/// Keeps only rules whose conclusion lies in `s`. Coaxioms are kept.
InferenceSystem restrict_to(const InferenceSystem& sys, const JudgementSet& s);

/// Least fixed point, ascending from the empty set.
Interpretation inductive(const InferenceSystem& sys);

/// Greatest fixed point, descending from the whole universe.
Interpretation coinductive(const InferenceSystem& sys);

/// Least closed set containing the coaxioms.
JudgementSet closure_of(const InferenceSystem& sys);

/// Greatest fixed point below `beta`. Throws BetaNotClosed unless
/// infer_step(sys, beta) is contained in beta.
Interpretation kernel_below(const InferenceSystem& sys, const JudgementSet& beta);

/// The interpretation generated by the coaxioms: kernel of the closure.
JudgementSet generated(const InferenceSystem& sys);

/// Returns a copy of `sys` with the coaxiom set replaced.
InferenceSystem with_coaxioms(const InferenceSystem& sys, JudgementSet coaxioms);

/// Enumerates the premise sets of every rule concluding a judgement.
using BackwardProvider = std::function<std::vector<std::vector<Judgement>>(const Judgement&)>;

/// Least set containing `goals` and closed under adding every premise of every
/// rule concluding a member. Throws CapExceeded when it grows beyond `cap`.
UniversePtr reachable_universe(const BackwardProvider& provider, const std::vector<Judgement>& goals,
                               std::size_t cap);

/// Instantiates the provider's rules over a universe it is backward-closed on.
InferenceSystem system_from_provider(const BackwardProvider& provider, UniversePtr universe,
                                     const JudgementSet& coaxioms);

} // namespace coax
