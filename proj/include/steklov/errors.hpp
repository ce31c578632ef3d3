#pragma once

#include <stdexcept>
#include <string>

namespace steklov {

/// Invalid argument or precondition violation (maps to CLI exit code 2).
class domain_error : public std::invalid_argument {
public:
    explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Numerical failure: bracket not found, resolution insufficient, overflow
/// (maps to CLI exit code 3).
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

/// Input is formally valid but so close to a singular configuration that the
/// closed forms lose all accuracy (e.g. annulus outer radius R -> 1).
class ill_conditioned_error : public numerical_error {
public:
    explicit ill_conditioned_error(const std::string& what) : numerical_error(what) {}
};

/// Integer overflow in an exact computation; never wraps silently.
class arithmetic_error : public numerical_error {
public:
    explicit arithmetic_error(const std::string& what) : numerical_error(what) {}
};

/// A requested computation exceeds a configured limit (mode cap, grid size).
class resource_error : public numerical_error {
public:
    explicit resource_error(const std::string& what) : numerical_error(what) {}
};

/// Violation of an internally checked assumption; indicates a bug or a broken
/// heuristic, not bad user input.
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

} // namespace steklov
