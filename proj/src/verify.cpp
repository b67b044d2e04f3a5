#include "coax/verify.hpp"

#include <algorithm>
#include <cstdint>

#include "coax/error.hpp"

namespace coax {

namespace {

bool within(const PremiseSet& ps, const JudgementSet& s) {
    return std::all_of(ps.begin(), ps.end(), [&](JudgementId p) { return s.contains(p); });
}

bool supported(const InferenceSystem& sys, const JudgementSet& s, JudgementId c) {
    const auto& lists = sys.premise_sets(c);
    return std::any_of(lists.begin(), lists.end(), [&](const PremiseSet& ps) { return within(ps, s); });
}

void require_same(const InferenceSystem& sys, const JudgementSet& s, const char* where) {
    if (!same_universe(sys.universe(), s.universe())) throw UniverseMismatch(where);
}

} // namespace

Verdict check_closed(const InferenceSystem& sys, const JudgementSet& s) {
    require_same(sys, s, "check_closed");
    const auto n = static_cast<JudgementId>(sys.universe()->size());
    for (JudgementId c = 0; c < n; ++c) {
        if (s.contains(c)) continue;
        for (const auto& ps : sys.premise_sets(c))
            if (within(ps, s)) return Verdict{false, Witness{Witness::Kind::rule, c, ps}};
    }
    return {};
}

Verdict check_consistent(const InferenceSystem& sys, const JudgementSet& s) {
    require_same(sys, s, "check_consistent");
    for (auto c : s.ids())
        if (!supported(sys, s, c)) return Verdict{false, Witness{Witness::Kind::unsupported, c, {}}};
    return {};
}

Verdict bounded_coinduction(const InferenceSystem& sys, const JudgementSet& s) {
    require_same(sys, s, "bounded_coinduction");
    const auto beta = closure_of(sys);
    for (auto c : s.ids())
        if (!beta.contains(c)) return Verdict{false, Witness{Witness::Kind::unbounded, c, {}}};
    return check_consistent(sys, s);
}

bool witness_reproduces(const InferenceSystem& sys, const JudgementSet& s, const Witness& w) {
    switch (w.kind) {
    case Witness::Kind::rule:
        return sys.has_rule(w.premises, w.judgement) && within(w.premises, s) && !s.contains(w.judgement);
    case Witness::Kind::unsupported:
        return s.contains(w.judgement) && !supported(sys, s, w.judgement);
    case Witness::Kind::unbounded:
        return s.contains(w.judgement) && !closure_of(sys).contains(w.judgement);
    }
    return false;
}

std::optional<std::size_t> refute_level(const InferenceSystem& sys, JudgementId j) {
    if (j >= sys.universe()->size()) throw InvalidArgument("refute_level: judgement outside universe");
    const auto steps = kernel_below(sys, closure_of(sys)).trace.steps;
    for (std::size_t n = 0; n < steps.size(); ++n)
        if (!steps[n].contains(j)) return n;
    return std::nullopt;
}

BruteForceResult brute_force(const InferenceSystem& sys, std::size_t cap) {
    const auto size = sys.universe()->size();
    if (size > cap || size > 30) throw UniverseTooLarge(size, std::min<std::size_t>(cap, 30));

    // Flag-vector form of the rules: a rule fires on S iff its premise mask is
    // inside S.
    struct MaskRule {
        std::uint32_t premises;
        std::uint32_t conclusion;
    };
    std::vector<MaskRule> rules;
    for (const auto& r : sys.rules()) {
        std::uint32_t m = 0;
        for (auto p : r.premises) m |= std::uint32_t{1} << p;
        rules.push_back({m, std::uint32_t{1} << r.conclusion});
    }
    std::uint32_t gamma = 0;
    for (auto c : sys.coaxioms().ids()) gamma |= std::uint32_t{1} << c;

    const std::uint32_t top = size == 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << size) - 1);
    auto apply = [&](std::uint32_t s) {
        std::uint32_t out = 0;
        for (const auto& r : rules)
            if ((r.premises & ~s) == 0) out |= r.conclusion;
        return out;
    };

    std::uint32_t mu = top, nu = 0, closure = top;
    std::vector<std::uint32_t> fixed;
    const std::uint64_t count = std::uint64_t{1} << size;
    for (std::uint64_t i = 0; i < count; ++i) {
        const auto s = static_cast<std::uint32_t>(i);
        const auto fs = apply(s);
        const bool pre = (fs & ~s) == 0;
        const bool post = (s & ~fs) == 0;
        if (pre) {
            mu &= s;
            if ((gamma & ~s) == 0) closure &= s;
        }
        if (post) nu |= s;
        if (pre && post) fixed.push_back(s);
    }
    std::uint32_t gen = 0;
    for (auto z : fixed)
        if ((z & ~closure) == 0) gen |= z;

    auto to_set = [&](std::uint32_t m) {
        auto out = JudgementSet::empty(sys.universe());
        for (JudgementId id = 0; id < size; ++id)
            if ((m >> id) & 1U) out.insert(id);
        return out;
    };
    BruteForceResult res;
    for (auto z : fixed) res.fixed_points.push_back(to_set(z));
    res.mu = to_set(mu);
    res.nu = to_set(nu);
    res.gen = to_set(gen);
    return res;
}

} // namespace coax
