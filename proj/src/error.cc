#include <cctopos/error.hh>

namespace cctopos {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::MissingIdentity: return "MissingIdentity";
    case ErrorKind::NonAssociative: return "NonAssociative";
    case ErrorKind::PartialComposition: return "PartialComposition";
    case ErrorKind::DomCodMismatch: return "DomCodMismatch";
    case ErrorKind::ConflictingComposition: return "ConflictingComposition";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::UnknownObject: return "UnknownObject";
    case ErrorKind::UnknownMorphism: return "UnknownMorphism";
    case ErrorKind::InvalidMonoid: return "InvalidMonoid";
    case ErrorKind::CyclicGraph: return "CyclicGraph";
    case ErrorKind::InvalidFunctor: return "InvalidFunctor";
    case ErrorKind::NotFunctorial: return "NotFunctorial";
    case ErrorKind::MissingAction: return "MissingAction";
    case ErrorKind::UnknownElement: return "UnknownElement";
    case ErrorKind::NotNatural: return "NotNatural";
    case ErrorKind::InvalidDiagram: return "InvalidDiagram";
    case ErrorKind::SizeGuardExceeded: return "SizeGuardExceeded";
    case ErrorKind::NotCompletelyConnected: return "NotCompletelyConnected";
    case ErrorKind::NotLocal: return "NotLocal";
    case ErrorKind::WrongBase: return "WrongBase";
    case ErrorKind::NotASieve: return "NotASieve";
    case ErrorKind::MissingMaximal: return "MissingMaximal";
    case ErrorKind::NotStable: return "NotStable";
    case ErrorKind::NotTransitive: return "NotTransitive";
    case ErrorKind::InvalidSpace: return "InvalidSpace";
    case ErrorKind::NotT0: return "NotT0";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnresolvedReference: return "UnresolvedReference";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::UnknownCommand: return "UnknownCommand";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::InternalInvariant: return "InternalInvariant";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string & message) :
    std::runtime_error(message),
    _kind(kind)
{
}

SizeGuardExceeded::SizeGuardExceeded(std::string_view what, std::uint64_t budget) :
    Error(ErrorKind::SizeGuardExceeded,
        std::string(what) + ": search exceeded the node budget of " + std::to_string(budget)),
    _budget(budget)
{
}

namespace {
    std::string describe_syntax_error(SourceLocation where, const std::string & found, const std::vector<std::string> & expected)
    {
        std::string msg = std::to_string(where.line) + ":" + std::to_string(where.column) + ": unexpected " + found;
        if (! expected.empty()) {
            msg += ", expected one of:";
            for (auto & e : expected)
                msg += " " + e;
        }
        return msg;
    }
}

SyntaxError::SyntaxError(SourceLocation where, const std::string & found, std::vector<std::string> expected) :
    Error(ErrorKind::SyntaxError, describe_syntax_error(where, found, expected)),
    _where(where),
    _expected(std::move(expected))
{
}

LocatedError::LocatedError(ErrorKind kind, SourceLocation where, const std::string & message) :
    Error(kind, std::to_string(where.line) + ":" + std::to_string(where.column) + ": " + message),
    _where(where)
{
}

} // namespace cctopos
