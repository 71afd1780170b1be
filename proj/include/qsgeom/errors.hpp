#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsg {

/// Invalid configuration or input that violates a documented precondition.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Computation reached a numerically undefined state (zero norm, singular
/// metric, non-finite intermediate).
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Syntax error with the byte offset of the failure and the token classes
/// that would have been accepted there.
struct ParseError : std::runtime_error {
    std::size_t offset;
    std::vector<std::string> expected;

    ParseError(const std::string& msg, std::size_t off, std::vector<std::string> exp = {})
        : std::runtime_error(msg), offset(off), expected(std::move(exp)) {}
};

}  // namespace qsg
