#pragma once

#include <stdexcept>
#include <string>

namespace chang {

// Malformed value: mismatched lengths, invalid coefficients, bad literals.
struct StructuralError : std::runtime_error {
    explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

// A homotopy-group table was requested outside the shipped range.
struct UnsupportedTable : std::runtime_error {
    explicit UnsupportedTable(const std::string& what) : std::runtime_error(what) {}
};

// A (morphism, class) pair is not in the shipped composition table.
struct UnknownComposite : std::runtime_error {
    explicit UnknownComposite(const std::string& what) : std::runtime_error(what) {}
};

// Splitting data violates its defining constraints.
struct InvalidSplitting : std::runtime_error {
    explicit InvalidSplitting(const std::string& what) : std::runtime_error(what) {}
};

// Operation flags contradict the supplied coefficients or selection.
struct FlagMismatch : std::runtime_error {
    explicit FlagMismatch(const std::string& what) : std::runtime_error(what) {}
};

// A bounded search ran out of budget; distinct from a negative answer.
struct Indeterminate : std::runtime_error {
    explicit Indeterminate(const std::string& what) : std::runtime_error(what) {}
};

// The classification needs a carrier summand that the wedge does not have.
struct NoCarrier : std::runtime_error {
    explicit NoCarrier(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : StructuralError {
    ParseError(const std::string& what, std::size_t position)
        : StructuralError(what + " (at position " + std::to_string(position) + ")"),
          position(position) {}
    std::size_t position;
};

}  // namespace chang
