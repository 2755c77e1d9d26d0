#pragma once

#include <cctopos/error.hh>

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cctopos::dsl {

/// An identifier with the place it was written. Equality ignores the
/// location so that a reparsed pretty-print compares equal.
struct Name {
    std::string text;
    SourceLocation where;

    bool operator==(const Name & other) const { return text == other.text; }
};

struct CategoryDecl {
    struct Arrow {
        Name name, dom, cod;
        bool operator==(const Arrow &) const = default;
    };
    struct Compose {
        Name g, f, result;
        bool operator==(const Compose &) const = default;
    };
    Name name;
    std::vector<Name> objects;
    std::vector<Arrow> arrows;
    std::vector<Compose> composites;
    bool operator==(const CategoryDecl &) const = default;
};

struct FreecatDecl {
    struct Edge {
        std::optional<Name> label;
        Name source, target;
        bool operator==(const Edge &) const = default;
    };
    Name name;
    std::vector<Edge> edges;
    bool operator==(const FreecatDecl &) const = default;
};

struct MonoidDecl {
    struct Entry {
        Name left, right, product;
        bool operator==(const Entry &) const = default;
    };
    Name name;
    std::vector<Name> elements;
    std::optional<Name> unit;
    std::vector<Entry> table;
    bool operator==(const MonoidDecl &) const = default;
};

struct PosetDecl {
    struct Relation {
        Name lower, upper;
        bool operator==(const Relation &) const = default;
    };
    Name name;
    std::vector<Name> elements;
    std::vector<Relation> relations;
    bool operator==(const PosetDecl &) const = default;
};

struct SpaceDecl {
    Name name;
    std::vector<Name> points;
    std::vector<std::vector<Name>> opens;
    bool operator==(const SpaceDecl &) const = default;
};

struct SiteDecl {
    struct Cover {
        Name object;
        std::vector<Name> morphisms;
        bool operator==(const Cover &) const = default;
    };
    Name name, over;
    std::vector<Cover> covers;
    bool operator==(const SiteDecl &) const = default;
};

struct PresheafDecl {
    struct At {
        Name object;
        std::vector<Name> elements;
        bool operator==(const At &) const = default;
    };
    struct Act {
        Name morphism, from, to;
        bool operator==(const Act &) const = default;
    };
    Name name, over;
    std::vector<At> carriers;
    std::vector<Act> actions;
    bool operator==(const PresheafDecl &) const = default;
};

/// `cone N of M` (M with an initial object adjoined) and `opposite N of M`.
struct DerivedDecl {
    enum class Kind { cone, opposite };
    Kind kind;
    Name name, of;
    bool operator==(const DerivedDecl &) const = default;
};

struct FamilyDecl {
    struct Member {
        Name index, presheaf;
        bool operator==(const Member &) const = default;
    };
    Name name, over;
    std::vector<Name> index;
    std::vector<Member> members;
    bool operator==(const FamilyDecl &) const = default;
};

using Declaration = std::variant<CategoryDecl, FreecatDecl, MonoidDecl, PosetDecl, SpaceDecl, SiteDecl, PresheafDecl, DerivedDecl, FamilyDecl>;

[[nodiscard]] const Name & declared_name(const Declaration & d);
[[nodiscard]] std::string_view keyword(const Declaration & d);

struct Document {
    std::vector<Declaration> declarations;
    bool operator==(const Document &) const = default;
};

/// Throws SyntaxError with the location and the set of expected tokens.
[[nodiscard]] Document parse(std::string_view source);

/// Canonical text; parse(print(d)) == d.
[[nodiscard]] std::string print(const Document & document);

} // namespace cctopos::dsl
