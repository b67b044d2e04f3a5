#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coax {

enum class ErrorKind {
    universe_mismatch,
    beta_not_closed,
    cap_exceeded,
    not_consistent,
    not_in_generated,
    universe_too_large,
    signature_mismatch,
    shape_mismatch,
    parse_error,
    invalid_argument,
};

// Base for every error raised by the library. `kind()` lets callers (the CLI
// in particular) map failures onto exit codes without RTTI ladders.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class UniverseMismatch : public Error {
public:
    explicit UniverseMismatch(const std::string& where)
        : Error(ErrorKind::universe_mismatch, "universe mismatch in " + where) {}
};

class BetaNotClosed : public Error {
public:
    explicit BetaNotClosed(std::string violating)
        : Error(ErrorKind::beta_not_closed,
                "bound is not closed: " + violating + " is inferred but not contained"),
          violating_(std::move(violating)) {}
    const std::string& violating() const noexcept { return violating_; }

private:
    std::string violating_;
};

class CapExceeded : public Error {
public:
    CapExceeded(std::size_t cap, const std::string& what)
        : Error(ErrorKind::cap_exceeded, what + " exceeded cap " + std::to_string(cap)), cap_(cap) {}
    std::size_t cap() const noexcept { return cap_; }

private:
    std::size_t cap_;
};

class NotConsistent : public Error {
public:
    explicit NotConsistent(std::string unsupported)
        : Error(ErrorKind::not_consistent, "set is not consistent: " + unsupported + " has no rule with premises in the set"),
          unsupported_(std::move(unsupported)) {}
    const std::string& unsupported() const noexcept { return unsupported_; }

private:
    std::string unsupported_;
};

class NotInGenerated : public Error {
public:
    explicit NotInGenerated(const std::string& j)
        : Error(ErrorKind::not_in_generated, j + " is not in the generated interpretation") {}
};

class UniverseTooLarge : public Error {
public:
    UniverseTooLarge(std::size_t size, std::size_t cap)
        : Error(ErrorKind::universe_too_large,
                "universe of " + std::to_string(size) + " judgements exceeds oracle cap " + std::to_string(cap)) {}
};

class SignatureMismatch : public Error {
public:
    explicit SignatureMismatch(const std::string& what) : Error(ErrorKind::signature_mismatch, what) {}
};

class ShapeMismatch : public Error {
public:
    explicit ShapeMismatch(const std::string& what) : Error(ErrorKind::shape_mismatch, what) {}
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(ErrorKind::parse_error, "line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what) : Error(ErrorKind::invalid_argument, what) {}
};

} // namespace coax
