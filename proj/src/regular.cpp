#include "coax/regular.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>

#include "coax/error.hpp"

namespace coax::regular {

namespace {

const char* tag_name(Tag t) {
    switch (t) {
    case Tag::nil: return "nil";
    case Tag::cons: return "cons";
    case Tag::tree: return "tree";
    case Tag::digit: return "digit";
    }
    return "?";
}

// Validates one state of a system with `n` states.
void check_state(const State& s, std::size_t n) {
    auto is_var = [&](const Arg& a) {
        auto v = std::get_if<Var>(&a);
        if (v && v->index >= n) throw InvalidArgument("state reference out of range");
        return v != nullptr;
    };
    switch (s.tag) {
    case Tag::nil:
        if (!s.args.empty()) throw InvalidArgument("nil takes no arguments");
        break;
    case Tag::cons:
        if (s.args.size() != 2 || !is_var(s.args[1])) throw InvalidArgument("cons takes an element and a list state");
        is_var(s.args[0]);
        break;
    case Tag::tree:
        if (s.args.size() != 2 || is_var(s.args[0]) || !is_var(s.args[1]))
            throw InvalidArgument("tree takes a label atom and a child-list state");
        break;
    case Tag::digit: {
        if (s.args.size() != 2 || is_var(s.args[0]) || !is_var(s.args[1]))
            throw InvalidArgument("digit takes a digit atom and a stream state");
        const auto d = std::get<Atom>(s.args[0]);
        if (d < 0 || d > 9) throw InvalidArgument("digit out of range 0-9");
        break;
    }
    }
}

void check_arity(const std::vector<State>& states) {
    for (const auto& s : states) check_state(s, states.size());
}

// Coarsest stable partition of `states`: states with equal tags, equal atom
// arguments and pairwise-equivalent successors share a block.
std::vector<std::size_t> refine(const std::vector<State>& states) {
    using Sig = std::pair<std::vector<std::int64_t>, std::vector<std::size_t>>;
    const auto n = states.size();
    std::vector<std::size_t> block(n, 0);
    std::size_t blocks = 0;
    {
        std::map<std::vector<std::int64_t>, std::size_t> ids;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<std::int64_t> shape{static_cast<std::int64_t>(states[i].tag)};
            for (const auto& a : states[i].args) {
                if (auto atom = std::get_if<Atom>(&a)) {
                    shape.push_back(0);
                    shape.push_back(*atom);
                } else {
                    shape.push_back(1);
                }
            }
            block[i] = ids.try_emplace(shape, ids.size()).first->second;
        }
        blocks = ids.size();
    }
    while (true) {
        std::map<Sig, std::size_t> ids;
        std::vector<std::size_t> next(n);
        for (std::size_t i = 0; i < n; ++i) {
            Sig sig{{static_cast<std::int64_t>(block[i])}, {}};
            for (const auto& a : states[i].args)
                if (auto v = std::get_if<Var>(&a)) sig.second.push_back(block[v->index]);
            next[i] = ids.try_emplace(sig, ids.size()).first->second;
        }
        block = std::move(next);
        if (ids.size() == blocks) break;
        blocks = ids.size();
    }
    return block;
}

std::vector<State> canonicalize(const std::vector<State>& states, std::size_t root) {
    const auto block = refine(states);
    // One representative per block, then breadth-first renumbering from root.
    std::unordered_map<std::size_t, std::size_t> rep;
    for (std::size_t i = 0; i < states.size(); ++i) rep.try_emplace(block[i], i);

    std::unordered_map<std::size_t, std::size_t> renamed;
    std::vector<std::size_t> order;
    std::deque<std::size_t> work{block[root]};
    renamed.emplace(block[root], 0);
    order.push_back(block[root]);
    while (!work.empty()) {
        const auto b = work.front();
        work.pop_front();
        for (const auto& a : states[rep.at(b)].args) {
            if (auto v = std::get_if<Var>(&a)) {
                const auto nb = block[v->index];
                if (renamed.try_emplace(nb, order.size()).second) {
                    order.push_back(nb);
                    work.push_back(nb);
                }
            }
        }
    }
    std::vector<State> out;
    out.reserve(order.size());
    for (auto b : order) {
        State s = states[rep.at(b)];
        for (auto& a : s.args)
            if (auto v = std::get_if<Var>(&a)) v->index = renamed.at(block[v->index]);
        out.push_back(std::move(s));
    }
    return out;
}

bool is_stream(const EqSystem& a) {
    return std::any_of(a.states().begin(), a.states().end(), [](const State& s) { return s.tag == Tag::digit; });
}

} // namespace

EqSystem EqSystem::make(std::vector<State> states, std::size_t root) {
    if (states.empty()) throw InvalidArgument("empty equation system");
    if (root >= states.size()) throw InvalidArgument("root out of range");
    check_arity(states);
    return EqSystem(canonicalize(states, root));
}

EqSystem EqSystem::rooted_at(std::size_t i) const {
    if (i >= states_.size()) throw InvalidArgument("root out of range");
    return EqSystem(canonicalize(states_, i));
}

std::string EqSystem::key() const {
    std::string out = "<";
    for (std::size_t i = 0; i < states_.size(); ++i) {
        if (i) out += ',';
        const auto& s = states_[i];
        out += tag_name(s.tag);
        if (s.args.empty()) continue;
        out += '(';
        for (std::size_t k = 0; k < s.args.size(); ++k) {
            if (k) out += ',';
            if (auto atom = std::get_if<Atom>(&s.args[k]))
                out += std::to_string(*atom);
            else
                out += '#' + std::to_string(std::get<Var>(s.args[k]).index);
        }
        out += ')';
    }
    return out + ">";
}

EqSystem parse(std::string_view text) {
    struct Binding {
        std::size_t line;
        Tag tag;
        std::vector<std::string> args;
    };
    std::vector<std::pair<std::string, Binding>> bindings;
    std::map<std::string, std::size_t> index;

    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        // Accept both `X = cons 1 Y` and `X=cons 1 Y`.
        if (tok[0].size() > 1 && tok[0].find('=') != std::string::npos) {
            auto head = tok[0];
            const auto eq = head.find('=');
            std::vector<std::string> split{head.substr(0, eq), "="};
            if (eq + 1 < head.size()) split.push_back(head.substr(eq + 1));
            tok.erase(tok.begin());
            tok.insert(tok.begin(), split.begin(), split.end());
        }
        if (tok.size() < 3 || tok[1] != "=") throw ParseError(lineno, "expected `VAR = constructor args...`");
        Tag tag;
        if (tok[2] == "nil") tag = Tag::nil;
        else if (tok[2] == "cons") tag = Tag::cons;
        else if (tok[2] == "tree") tag = Tag::tree;
        else if (tok[2] == "digit") tag = Tag::digit;
        else throw ParseError(lineno, "unknown constructor `" + tok[2] + "`");
        if (index.count(tok[0])) throw ParseError(lineno, "variable `" + tok[0] + "` bound twice");
        index.emplace(tok[0], bindings.size());
        bindings.push_back({tok[0], Binding{lineno, tag, std::vector<std::string>(tok.begin() + 3, tok.end())}});
    }
    if (bindings.empty()) throw ParseError(lineno, "no bindings");

    std::vector<State> states;
    for (const auto& [name, b] : bindings) {
        State s{b.tag, {}};
        for (const auto& a : b.args) {
            Atom value{};
            auto [ptr, ec] = std::from_chars(a.data(), a.data() + a.size(), value);
            if (ec == std::errc() && ptr == a.data() + a.size()) {
                s.args.emplace_back(value);
            } else {
                auto it = index.find(a);
                if (it == index.end()) throw ParseError(b.line, "unbound variable `" + a + "`");
                s.args.emplace_back(Var{it->second});
            }
        }
        states.push_back(std::move(s));
    }
    for (std::size_t i = 0; i < states.size(); ++i) {
        try {
            check_state(states[i], states.size());
        } catch (const InvalidArgument& e) {
            throw ParseError(bindings[i].second.line, e.what());
        }
    }
    return EqSystem::make(std::move(states), 0);
}

bool bisim_equal(const EqSystem& a, const EqSystem& b) {
    if (is_stream(a) != is_stream(b)) throw SignatureMismatch("cannot compare a digit stream with a list or tree");
    std::vector<State> all = a.states();
    const auto offset = all.size();
    for (auto s : b.states()) {
        for (auto& arg : s.args)
            if (auto v = std::get_if<Var>(&arg)) v->index += offset;
        all.push_back(std::move(s));
    }
    const auto block = refine(all);
    return block[0] == block[offset];
}

std::vector<EqSystem> subterms(const EqSystem& a) {
    std::vector<EqSystem> out;
    out.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a.rooted_at(i));
    return out;
}

std::set<Atom> carrier(const EqSystem& a) {
    std::set<Atom> out;
    for (const auto& s : a.states()) {
        switch (s.tag) {
        case Tag::nil: break;
        case Tag::cons:
            if (!std::holds_alternative<Atom>(s.args[0])) throw ShapeMismatch("carrier: list elements must be atoms");
            out.insert(std::get<Atom>(s.args[0]));
            break;
        case Tag::digit: out.insert(std::get<Atom>(s.args[0])); break;
        case Tag::tree: throw ShapeMismatch("carrier: expected a list or stream, found a tree");
        }
    }
    return out;
}

} // namespace coax::regular
