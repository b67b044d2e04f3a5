#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace coax {

/// An opaque judgement. Its serialized payload is canonical: two judgements
/// are equal iff their payloads are, and the payload order is the total order
/// every set, trace and emission in the library follows.
class Judgement {
public:
    Judgement() = default;
    explicit Judgement(std::string payload) : payload_(std::move(payload)) {}

    const std::string& str() const noexcept { return payload_; }

    friend bool operator==(const Judgement&, const Judgement&) = default;
    friend std::strong_ordering operator<=>(const Judgement& a, const Judgement& b) {
        return a.payload_.compare(b.payload_) <=> 0;
    }

private:
    std::string payload_;
};

/// Position of a judgement inside its Universe.
using JudgementId = std::uint32_t;

class Universe;
using UniversePtr = std::shared_ptr<const Universe>;

/// Finite, ordered universe of distinct judgements. Positions follow the
/// serialization order, so comparing ids compares judgements.
class Universe {
public:
    /// Sorts and deduplicates.
    static UniversePtr make(std::vector<Judgement> members);
    static UniversePtr make(const std::vector<std::string>& payloads);

    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    const Judgement& operator[](JudgementId id) const { return members_[id]; }
    const std::vector<Judgement>& members() const noexcept { return members_; }

    std::optional<JudgementId> find(const Judgement& j) const;
    std::optional<JudgementId> find(const std::string& payload) const;
    /// Throws InvalidArgument when `j` is not a member.
    JudgementId index_of(const Judgement& j) const;
    JudgementId index_of(const std::string& payload) const;

    friend bool operator==(const Universe& a, const Universe& b) { return a.members_ == b.members_; }

private:
    explicit Universe(std::vector<Judgement> members);

    std::vector<Judgement> members_;
    std::unordered_map<std::string, JudgementId> index_;
};

/// Same object, or same members.
bool same_universe(const UniversePtr& a, const UniversePtr& b);

/// A subset of a universe, one bit per position. All binary operations
/// require both operands to live over the same universe.
class JudgementSet {
public:
    JudgementSet() = default;
    static JudgementSet empty(UniversePtr u);
    static JudgementSet full(UniversePtr u);
    static JudgementSet of(UniversePtr u, std::span<const JudgementId> ids);
    static JudgementSet of(UniversePtr u, const std::vector<std::string>& payloads);

    const UniversePtr& universe() const noexcept { return universe_; }
    std::size_t capacity() const noexcept { return universe_ ? universe_->size() : 0; }

    bool contains(JudgementId id) const noexcept {
        return (words_[id >> 6] >> (id & 63)) & 1U;
    }
    bool contains(const std::string& payload) const;
    void insert(JudgementId id) noexcept { words_[id >> 6] |= std::uint64_t{1} << (id & 63); }
    void erase(JudgementId id) noexcept { words_[id >> 6] &= ~(std::uint64_t{1} << (id & 63)); }

    std::size_t size() const noexcept;
    bool is_empty() const noexcept;
    /// Members in serialization order.
    std::vector<JudgementId> ids() const;
    std::vector<std::string> strings() const;

    bool subset_of(const JudgementSet& other) const;
    JudgementSet complement() const;

    JudgementSet& operator|=(const JudgementSet& other);
    JudgementSet& operator&=(const JudgementSet& other);
    friend JudgementSet operator|(JudgementSet a, const JudgementSet& b) { return a |= b; }
    friend JudgementSet operator&(JudgementSet a, const JudgementSet& b) { return a &= b; }
    friend bool operator==(const JudgementSet& a, const JudgementSet& b);

    const std::vector<std::uint64_t>& words() const noexcept { return words_; }

private:
    JudgementSet(UniversePtr u, std::vector<std::uint64_t> words)
        : universe_(std::move(u)), words_(std::move(words)) {}
    void check_same(const JudgementSet& other, const char* where) const;

    UniversePtr universe_;
    std::vector<std::uint64_t> words_;
};

/// Renders `{a, b, c}` using judgement payloads.
std::string to_string(const JudgementSet& s);

} // namespace coax
