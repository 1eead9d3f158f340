#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyinv {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t column)
        : Error(format(msg, line, column)), line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    static std::string format(const std::string& msg, std::size_t line, std::size_t column) {
        return "parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg;
    }
    std::size_t line_;
    std::size_t column_;
};

class ContextMismatch : public Error {
public:
    ContextMismatch() : Error("polynomials live in different variable contexts") {}
};

class ArityError : public Error {
public:
    using Error::Error;
};

class NotLinearError : public Error {
public:
    using Error::Error;
};

// Thrown by the fixpoint when the chain has not stabilized within budget.
class IterationLimitExceeded : public Error {
public:
    explicit IterationLimitExceeded(std::size_t limit, std::vector<std::string> partial_chain = {})
        : Error("invariant-set chain did not stabilize within " + std::to_string(limit) + " iterations"),
          limit_(limit),
          chain_(std::move(partial_chain)) {}
    std::size_t limit() const { return limit_; }
    // Printed polynomials of the chain computed so far.
    const std::vector<std::string>& partial_chain() const { return chain_; }

private:
    std::size_t limit_;
    std::vector<std::string> chain_;
};

class SymbolicInitRequiredConcrete : public Error {
public:
    SymbolicInitRequiredConcrete()
        : Error("this operation needs concrete initial values; use matrix/classify for symbolic ones") {}
};

class ResourceLimit : public Error {
public:
    using Error::Error;
};

}  // namespace polyinv
