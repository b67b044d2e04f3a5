#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "coax/core.hpp"

namespace coax {

/// Counterexample attached to a failed check.
struct Witness {
    enum class Kind {
        rule,         // a rule whose premises are in the set but conclusion is not
        unsupported,  // a member with no rule whose premises are all in the set
        unbounded,    // a member outside the closure of the coaxioms
    };
    Kind kind = Kind::rule;
    JudgementId judgement = 0;
    PremiseSet premises;  // only for Kind::rule
};

struct Verdict {
    bool ok = true;
    std::optional<Witness> witness;
};

Verdict check_closed(const InferenceSystem& sys, const JudgementSet& s);
Verdict check_consistent(const InferenceSystem& sys, const JudgementSet& s);

/// s contained in the closure of the coaxioms and consistent. An ok verdict
/// entails s is contained in generated(sys).
Verdict bounded_coinduction(const InferenceSystem& sys, const JudgementSet& s);

/// Re-runs the single-rule or single-judgement check a witness names.
bool witness_reproduces(const InferenceSystem& sys, const JudgementSet& s, const Witness& w);

/// Smallest n with j outside the n-th descent step from the closure, or
/// nothing when j survives the whole descent.
std::optional<std::size_t> refute_level(const InferenceSystem& sys, JudgementId j);

inline constexpr std::size_t default_oracle_cap = 16;

struct BruteForceResult {
    std::vector<JudgementSet> fixed_points;
    JudgementSet mu;
    JudgementSet nu;
    JudgementSet gen;
};

/// Exhaustive subset enumeration, independent of the iterative engine:
/// mu is the meet of pre-fixed points, nu the join of post-fixed points, gen
/// the join of fixed points below the least pre-fixed point containing the
/// coaxioms. Throws UniverseTooLarge beyond `cap` judgements (at most 30).
BruteForceResult brute_force(const InferenceSystem& sys, std::size_t cap = default_oracle_cap);

} // namespace coax
