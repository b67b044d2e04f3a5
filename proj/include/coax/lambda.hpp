#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

namespace coax::lambda {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

/// Untyped lambda term with de Bruijn indices, so alpha-equivalent terms are
/// structurally equal.
struct Term {
    enum class Kind { var, lam, app };
    Kind kind = Kind::var;
    std::size_t index = 0;  // var only
    TermPtr body;           // lam body, or app function
    TermPtr arg;            // app argument
};

TermPtr var(std::size_t index);
TermPtr lam(TermPtr body);
TermPtr app(TermPtr fn, TermPtr arg);

bool is_value(const Term& t) noexcept;
bool is_closed(const Term& t) noexcept;
bool equal(const Term& a, const Term& b) noexcept;

/// Parses `(\x. x x) (\x. x x)`: `\` or `λ` binders whose body extends as far
/// right as possible, application by juxtaposition (or `@`), left-associative.
/// Throws ParseError on syntax errors or free variables.
TermPtr parse(std::string_view text);

/// Canonical whitespace-free rendering, binders named by depth (x, y, z, w,
/// x4, ...) and application written `f@a`: `(\x.x@x)@(\x.x@x)`. Parses back
/// to an equal term.
std::string to_string(const Term& t);

/// body[0 <- value] for the body of an abstraction and a closed value.
TermPtr substitute(const Term& body, const TermPtr& value);

} // namespace coax::lambda
