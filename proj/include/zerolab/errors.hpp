#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace zerolab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands built over different rings.
class MismatchedRingError : public Error {
public:
    using Error::Error;
};

/// Bad user input: malformed arguments, invalid bases, wrong arity.
class ValidationError : public Error {
public:
    using Error::Error;
};

class NotAFieldError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Grammar error in a ring, space or polynomial string.
class ParseError : public ValidationError {
public:
    ParseError(std::string input, std::size_t position, std::string expected)
        : ValidationError(format(input, position, expected)),
          input_(std::move(input)),
          position_(position),
          expected_(std::move(expected)) {}

    const std::string& input() const noexcept { return input_; }
    std::size_t position() const noexcept { return position_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    static std::string format(const std::string& input, std::size_t pos, const std::string& expected) {
        return "parse error at position " + std::to_string(pos) + " in \"" + input + "\": expected " + expected;
    }

    std::string input_;
    std::size_t position_;
    std::string expected_;
};

/// A mathematical precondition of an operation does not hold (e.g. the
/// space does not contain functions). Distinct from budget failures.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// The closed-form work estimate of an exhaustive computation exceeds the
/// configured budget. `required()` is the estimate as a decimal string.
class BudgetExceededError : public Error {
public:
    BudgetExceededError(const std::string& what, std::string required, std::uint64_t budget)
        : Error(what + " requires " + required + " evaluations, budget is " + std::to_string(budget)),
          required_(std::move(required)),
          budget_(budget) {}

    const std::string& required() const noexcept { return required_; }
    std::uint64_t budget() const noexcept { return budget_; }

private:
    std::string required_;
    std::uint64_t budget_;
};

}  // namespace zerolab
