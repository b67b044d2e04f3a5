#include "coax/core.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "coax/error.hpp"

namespace coax {

InferenceSystem::InferenceSystem(UniversePtr universe, std::vector<Rule> rules, JudgementSet coaxioms)
    : universe_(std::move(universe)), backward_(universe_->size()), coaxioms_(std::move(coaxioms)) {
    if (!same_universe(universe_, coaxioms_.universe())) throw UniverseMismatch("InferenceSystem coaxioms");
    const auto n = universe_->size();
    for (auto& r : rules) {
        if (r.conclusion >= n) throw InvalidArgument("rule conclusion outside universe");
        std::sort(r.premises.begin(), r.premises.end());
        r.premises.erase(std::unique(r.premises.begin(), r.premises.end()), r.premises.end());
        if (!r.premises.empty() && r.premises.back() >= n) throw InvalidArgument("rule premise outside universe");
        backward_[r.conclusion].push_back(std::move(r.premises));
    }
    for (auto& list : backward_) {
        std::sort(list.begin(), list.end());
        const auto before = list.size();
        list.erase(std::unique(list.begin(), list.end()), list.end());
        duplicates_ += before - list.size();
        rule_count_ += list.size();
    }
}

InferenceSystem::InferenceSystem(UniversePtr universe, std::vector<Rule> rules)
    : InferenceSystem(universe, std::move(rules), JudgementSet::empty(universe)) {}

bool InferenceSystem::has_rule(const PremiseSet& premises, JudgementId conclusion) const {
    if (conclusion >= backward_.size()) return false;
    const auto& list = backward_[conclusion];
    return std::binary_search(list.begin(), list.end(), premises);
}

std::vector<Rule> InferenceSystem::rules() const {
    std::vector<Rule> out;
    out.reserve(rule_count_);
    for (JudgementId c = 0; c < backward_.size(); ++c)
        for (const auto& ps : backward_[c]) out.push_back(Rule{ps, c});
    return out;
}

bool InferenceSystem::deterministic() const noexcept {
    return std::all_of(backward_.begin(), backward_.end(), [](const auto& l) { return l.size() <= 1; });
}

void SystemBuilder::declare(const std::string& j) { declared_.push_back(j); }

void SystemBuilder::add_rule(const std::string& conclusion, std::vector<std::string> premises) {
    rules_.emplace_back(conclusion, std::move(premises));
}

void SystemBuilder::add_coaxiom(const std::string& j) { coaxioms_.push_back(j); }

InferenceSystem SystemBuilder::build() const {
    std::vector<std::string> all = declared_;
    for (const auto& [c, ps] : rules_) {
        all.push_back(c);
        all.insert(all.end(), ps.begin(), ps.end());
    }
    all.insert(all.end(), coaxioms_.begin(), coaxioms_.end());
    return build(Universe::make(all));
}

InferenceSystem SystemBuilder::build(UniversePtr universe) const {
    std::vector<Rule> rules;
    rules.reserve(rules_.size());
    for (const auto& [c, ps] : rules_) {
        Rule r;
        r.conclusion = universe->index_of(c);
        r.premises.reserve(ps.size());
        for (const auto& p : ps) r.premises.push_back(universe->index_of(p));
        rules.push_back(std::move(r));
    }
    auto gamma = JudgementSet::of(universe, coaxioms_);
    return InferenceSystem(universe, std::move(rules), std::move(gamma));
}

JudgementSet infer_step(const InferenceSystem& sys, const JudgementSet& s) {
    if (!same_universe(sys.universe(), s.universe())) throw UniverseMismatch("infer_step");
    auto out = JudgementSet::empty(sys.universe());
    const auto n = static_cast<JudgementId>(sys.universe()->size());
    for (JudgementId c = 0; c < n; ++c) {
        for (const auto& ps : sys.premise_sets(c)) {
            if (std::all_of(ps.begin(), ps.end(), [&](JudgementId p) { return s.contains(p); })) {
                out.insert(c);
                break;
            }
        }
    }
    return out;
}

InferenceSystem with_coaxioms_as_axioms(const InferenceSystem& sys) {
    auto rules = sys.rules();
    for (auto c : sys.coaxioms().ids()) rules.push_back(Rule{{}, c});
    return InferenceSystem(sys.universe(), std::move(rules));
}

InferenceSystem restrict_to(const InferenceSystem& sys, const JudgementSet& s) {
    if (!same_universe(sys.universe(), s.universe())) throw UniverseMismatch("restrict_to");
    auto rules = sys.rules();
    std::erase_if(rules, [&](const Rule& r) { return !s.contains(r.conclusion); });
    return InferenceSystem(sys.universe(), std::move(rules), sys.coaxioms());
}

InferenceSystem with_coaxioms(const InferenceSystem& sys, JudgementSet coaxioms) {
    return InferenceSystem(sys.universe(), sys.rules(), std::move(coaxioms));
}

namespace {

// Kleene iteration from `start`; monotone chains on a finite lattice
// stabilize within |U| + 1 applications.
Interpretation iterate_from(const InferenceSystem& sys, JudgementSet start) {
    Interpretation out;
    out.trace.steps.push_back(std::move(start));
    const auto limit = sys.universe()->size() + 2;
    while (true) {
        auto next = infer_step(sys, out.trace.steps.back());
        const bool stable = next == out.trace.steps.back();
        out.trace.steps.push_back(std::move(next));
        if (stable) break;
        if (out.trace.steps.size() > limit + 1)
            throw std::logic_error("iteration did not stabilize; operator is not monotone on this chain");
    }
    out.result = out.trace.steps.back();
    return out;
}

} // namespace

Interpretation inductive(const InferenceSystem& sys) {
    return iterate_from(sys, JudgementSet::empty(sys.universe()));
}

Interpretation coinductive(const InferenceSystem& sys) {
    return iterate_from(sys, JudgementSet::full(sys.universe()));
}

JudgementSet closure_of(const InferenceSystem& sys) {
    return inductive(with_coaxioms_as_axioms(sys)).result;
}

Interpretation kernel_below(const InferenceSystem& sys, const JudgementSet& beta) {
    if (!same_universe(sys.universe(), beta.universe())) throw UniverseMismatch("kernel_below");
    const auto step = infer_step(sys, beta);
    for (auto id : step.ids())
        if (!beta.contains(id)) throw BetaNotClosed((*sys.universe())[id].str());
    return iterate_from(sys, beta);
}

JudgementSet generated(const InferenceSystem& sys) {
    const auto beta = closure_of(sys);
    auto descended = kernel_below(sys, beta).result;
    const auto restricted = coinductive(restrict_to(sys, beta)).result;
    if (!(descended == restricted))
        throw std::logic_error("generated: descent from the closure and the restricted coinductive "
                               "interpretation disagree");
    return descended;
}

UniversePtr reachable_universe(const BackwardProvider& provider, const std::vector<Judgement>& goals,
                               std::size_t cap) {
    std::set<Judgement> seen;
    std::deque<Judgement> work;
    auto visit = [&](const Judgement& j) {
        if (seen.insert(j).second) {
            if (seen.size() > cap) throw CapExceeded(cap, "backward-reachable universe");
            work.push_back(j);
        }
    };
    for (const auto& g : goals) visit(g);
    while (!work.empty()) {
        auto j = std::move(work.front());
        work.pop_front();
        for (const auto& premises : provider(j))
            for (const auto& p : premises) visit(p);
    }
    return Universe::make(std::vector<Judgement>(seen.begin(), seen.end()));
}

InferenceSystem system_from_provider(const BackwardProvider& provider, UniversePtr universe,
                                     const JudgementSet& coaxioms) {
    std::vector<Rule> rules;
    for (JudgementId c = 0; c < universe->size(); ++c) {
        for (const auto& premises : provider((*universe)[c])) {
            Rule r;
            r.conclusion = c;
            for (const auto& p : premises) {
                auto id = universe->find(p);
                if (!id) throw InvalidArgument("provider premise outside universe: " + p.str());
                r.premises.push_back(*id);
            }
            rules.push_back(std::move(r));
        }
    }
    return InferenceSystem(universe, std::move(rules), coaxioms);
}

} // namespace coax
