#include "coax/judgement.hpp"

#include <algorithm>
#include <bit>

#include "coax/error.hpp"

namespace coax {

Universe::Universe(std::vector<Judgement> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    index_.reserve(members_.size());
    for (std::size_t i = 0; i < members_.size(); ++i)
        index_.emplace(members_[i].str(), static_cast<JudgementId>(i));
}

UniversePtr Universe::make(std::vector<Judgement> members) {
    return UniversePtr(new Universe(std::move(members)));
}

UniversePtr Universe::make(const std::vector<std::string>& payloads) {
    std::vector<Judgement> members;
    members.reserve(payloads.size());
    for (const auto& p : payloads) members.emplace_back(p);
    return make(std::move(members));
}

std::optional<JudgementId> Universe::find(const std::string& payload) const {
    auto it = index_.find(payload);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<JudgementId> Universe::find(const Judgement& j) const { return find(j.str()); }

JudgementId Universe::index_of(const std::string& payload) const {
    if (auto id = find(payload)) return *id;
    throw InvalidArgument("judgement not in universe: " + payload);
}

JudgementId Universe::index_of(const Judgement& j) const { return index_of(j.str()); }

bool same_universe(const UniversePtr& a, const UniversePtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

namespace {
std::size_t word_count(std::size_t n) { return (n + 63) / 64; }
} // namespace

JudgementSet JudgementSet::empty(UniversePtr u) {
    const auto n = word_count(u->size());
    return JudgementSet(std::move(u), std::vector<std::uint64_t>(n, 0));
}

JudgementSet JudgementSet::full(UniversePtr u) {
    const auto size = u->size();
    std::vector<std::uint64_t> words(word_count(size), ~std::uint64_t{0});
    if (size % 64 != 0) words.back() = (std::uint64_t{1} << (size % 64)) - 1;
    return JudgementSet(std::move(u), std::move(words));
}

JudgementSet JudgementSet::of(UniversePtr u, std::span<const JudgementId> ids) {
    auto s = empty(std::move(u));
    for (auto id : ids) {
        if (id >= s.capacity()) throw InvalidArgument("judgement id out of range");
        s.insert(id);
    }
    return s;
}

JudgementSet JudgementSet::of(UniversePtr u, const std::vector<std::string>& payloads) {
    auto s = empty(u);
    for (const auto& p : payloads) s.insert(u->index_of(p));
    return s;
}

bool JudgementSet::contains(const std::string& payload) const {
    auto id = universe_->find(payload);
    return id && contains(*id);
}

std::size_t JudgementSet::size() const noexcept {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

bool JudgementSet::is_empty() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
}

std::vector<JudgementId> JudgementSet::ids() const {
    std::vector<JudgementId> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        auto bits = words_[w];
        while (bits) {
            const auto b = static_cast<std::size_t>(std::countr_zero(bits));
            out.push_back(static_cast<JudgementId>(w * 64 + b));
            bits &= bits - 1;
        }
    }
    return out;
}

std::vector<std::string> JudgementSet::strings() const {
    std::vector<std::string> out;
    for (auto id : ids()) out.push_back((*universe_)[id].str());
    return out;
}

void JudgementSet::check_same(const JudgementSet& other, const char* where) const {
    if (!same_universe(universe_, other.universe_)) throw UniverseMismatch(where);
}

bool JudgementSet::subset_of(const JudgementSet& other) const {
    check_same(other, "subset_of");
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~other.words_[i]) return false;
    return true;
}

JudgementSet JudgementSet::complement() const {
    auto out = full(universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] &= ~words_[i];
    return out;
}

JudgementSet& JudgementSet::operator|=(const JudgementSet& other) {
    check_same(other, "union");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
}

JudgementSet& JudgementSet::operator&=(const JudgementSet& other) {
    check_same(other, "intersection");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
}

bool operator==(const JudgementSet& a, const JudgementSet& b) {
    if (!same_universe(a.universe_, b.universe_)) return false;
    return a.words_ == b.words_;
}

std::string to_string(const JudgementSet& s) {
    std::string out = "{";
    bool first = true;
    for (auto id : s.ids()) {
        if (!first) out += ", ";
        out += (*s.universe())[id].str();
        first = false;
    }
    return out + "}";
}

} // namespace coax
