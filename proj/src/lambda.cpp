#include "coax/lambda.hpp"

#include <cctype>
#include <vector>

#include "coax/error.hpp"

namespace coax::lambda {

TermPtr var(std::size_t index) {
    auto t = std::make_shared<Term>();
    t->kind = Term::Kind::var;
    t->index = index;
    return t;
}

TermPtr lam(TermPtr body) {
    auto t = std::make_shared<Term>();
    t->kind = Term::Kind::lam;
    t->body = std::move(body);
    return t;
}

TermPtr app(TermPtr fn, TermPtr arg) {
    auto t = std::make_shared<Term>();
    t->kind = Term::Kind::app;
    t->body = std::move(fn);
    t->arg = std::move(arg);
    return t;
}

bool is_value(const Term& t) noexcept { return t.kind == Term::Kind::lam; }

namespace {

bool closed_at(const Term& t, std::size_t depth) noexcept {
    switch (t.kind) {
    case Term::Kind::var: return t.index < depth;
    case Term::Kind::lam: return closed_at(*t.body, depth + 1);
    case Term::Kind::app: return closed_at(*t.body, depth) && closed_at(*t.arg, depth);
    }
    return false;
}

std::string binder_name(std::size_t depth) {
    static const char* names[] = {"x", "y", "z", "w"};
    if (depth < 4) return names[depth];
    return "x" + std::to_string(depth);
}

void render(const Term& t, std::size_t depth, std::string& out) {
    switch (t.kind) {
    case Term::Kind::var:
        out += binder_name(depth - 1 - t.index);
        break;
    case Term::Kind::lam:
        out += '\\';
        out += binder_name(depth);
        out += '.';
        render(*t.body, depth + 1, out);
        break;
    case Term::Kind::app: {
        const bool paren_fn = t.body->kind == Term::Kind::lam;
        const bool paren_arg = t.arg->kind != Term::Kind::var;
        if (paren_fn) out += '(';
        render(*t.body, depth, out);
        if (paren_fn) out += ')';
        out += '@';
        if (paren_arg) out += '(';
        render(*t.arg, depth, out);
        if (paren_arg) out += ')';
        break;
    }
    }
}

TermPtr subst(const Term& t, std::size_t depth, const TermPtr& value) {
    switch (t.kind) {
    case Term::Kind::var:
        if (t.index == depth) return value;
        return var(t.index > depth ? t.index - 1 : t.index);
    case Term::Kind::lam: return lam(subst(*t.body, depth + 1, value));
    case Term::Kind::app: return app(subst(*t.body, depth, value), subst(*t.arg, depth, value));
    }
    return nullptr;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    TermPtr parse_all() {
        auto t = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected input");
        return t;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(1, what + " at column " + std::to_string(pos_ + 1));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool at_lambda() {
        if (pos_ < text_.size() && text_[pos_] == '\\') return true;
        return text_.substr(pos_, 2) == "\xCE\xBB";  // UTF-8 lambda
    }

    static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    }

    std::string ident() {
        skip_ws();
        const auto start = pos_;
        while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
        if (start == pos_) fail("expected identifier");
        return std::string(text_.substr(start, pos_ - start));
    }

    TermPtr parse_lambda() {
        pos_ += text_[pos_] == '\\' ? 1 : 2;
        auto name = ident();
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != '.') fail("expected `.` after binder");
        ++pos_;
        scope_.push_back(name);
        auto body = parse_expr();
        scope_.pop_back();
        return lam(std::move(body));
    }

    // Atom: variable, parenthesized expression, or a lambda (which swallows
    // the rest of the application chain).
    TermPtr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of term");
        if (at_lambda()) return parse_lambda();
        if (text_[pos_] == '(') {
            ++pos_;
            auto t = parse_expr();
            skip_ws();
            if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected `)`");
            ++pos_;
            return t;
        }
        auto name = ident();
        for (std::size_t i = scope_.size(); i-- > 0;)
            if (scope_[i] == name) return var(scope_.size() - 1 - i);
        fail("free variable `" + name + "`");
    }

    bool at_atom_start() {
        skip_ws();
        if (pos_ >= text_.size()) return false;
        const char c = text_[pos_];
        return c == '(' || at_lambda() || ident_char(c);
    }

    TermPtr parse_expr() {
        auto t = parse_atom();
        while (true) {
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '@') {
                ++pos_;
                t = app(t, parse_atom());
            } else if (at_atom_start()) {
                t = app(t, parse_atom());
            } else {
                break;
            }
        }
        return t;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::vector<std::string> scope_;
};

} // namespace

bool is_closed(const Term& t) noexcept { return closed_at(t, 0); }

bool equal(const Term& a, const Term& b) noexcept {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case Term::Kind::var: return a.index == b.index;
    case Term::Kind::lam: return equal(*a.body, *b.body);
    case Term::Kind::app: return equal(*a.body, *b.body) && equal(*a.arg, *b.arg);
    }
    return false;
}

TermPtr parse(std::string_view text) { return Parser(text).parse_all(); }

std::string to_string(const Term& t) {
    std::string out;
    render(t, 0, out);
    return out;
}

TermPtr substitute(const Term& body, const TermPtr& value) { return subst(body, 0, value); }

} // namespace coax::lambda
