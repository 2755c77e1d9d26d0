#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cctopos {

enum class ErrorKind {
    // fincat
    MissingIdentity,
    NonAssociative,
    PartialComposition,
    DomCodMismatch,
    ConflictingComposition,
    DuplicateName,
    UnknownObject,
    UnknownMorphism,
    InvalidMonoid,
    CyclicGraph,
    InvalidFunctor,
    // presheaf
    NotFunctorial,
    MissingAction,
    UnknownElement,
    NotNatural,
    InvalidDiagram,
    SizeGuardExceeded,
    // toposcalc / family
    NotCompletelyConnected,
    NotLocal,
    WrongBase,
    // sitespace
    NotASieve,
    MissingMaximal,
    NotStable,
    NotTransitive,
    InvalidSpace,
    NotT0,
    // cli
    SyntaxError,
    UnresolvedReference,
    ValidationError,
    UnknownCommand,
    UnknownName,
    InternalInvariant,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string & message);

    [[nodiscard]] ErrorKind kind() const noexcept { return _kind; }

private:
    ErrorKind _kind;
};

// A precondition the mathematics rules out (no container object, no
// terminal idempotent, a non-T0 space). Not a failure of the input.
class Refusal : public Error {
public:
    using Error::Error;
};

class SizeGuardExceeded : public Error {
public:
    SizeGuardExceeded(std::string_view what, std::uint64_t budget);

    [[nodiscard]] std::uint64_t budget() const noexcept { return _budget; }

private:
    std::uint64_t _budget;
};

struct SourceLocation {
    std::size_t line = 0;
    std::size_t column = 0;

    bool operator==(const SourceLocation &) const = default;
};

class SyntaxError : public Error {
public:
    SyntaxError(SourceLocation where, const std::string & found, std::vector<std::string> expected);

    [[nodiscard]] SourceLocation where() const noexcept { return _where; }
    [[nodiscard]] const std::vector<std::string> & expected() const noexcept { return _expected; }

private:
    SourceLocation _where;
    std::vector<std::string> _expected;
};

// Wraps an error raised while resolving or validating a declaration.
class LocatedError : public Error {
public:
    LocatedError(ErrorKind kind, SourceLocation where, const std::string & message);

    [[nodiscard]] SourceLocation where() const noexcept { return _where; }

private:
    SourceLocation _where;
};

/// Exhaustive searches count decision nodes against this limit and throw
/// SizeGuardExceeded when it runs out.
struct SearchBudget {
    std::uint64_t max_nodes = 1'000'000;
};

class NodeCounter {
public:
    NodeCounter(const SearchBudget & budget, std::string_view what) : _limit(budget.max_nodes), _what(what) {}

    void tick()
    {
        if (++_nodes > _limit)
            throw SizeGuardExceeded(_what, _limit);
    }

    [[nodiscard]] std::uint64_t nodes() const noexcept { return _nodes; }

private:
    std::uint64_t _limit;
    std::uint64_t _nodes = 0;
    std::string_view _what;
};

} // namespace cctopos
