#pragma once

#include <cctopos/presheaf.hh>

#include <optional>
#include <string>
#include <vector>

namespace cctopos {

/// A finite Grothendieck site. covers[c] lists the covering sieves on c in
/// sieves_on order.
struct FiniteSite {
    CategoryPtr category;
    std::vector<std::vector<Sieve>> covers;
};

/// Checks the sieve, maximality, stability and transitivity axioms
/// exhaustively and returns the site with its covers put in canonical order.
[[nodiscard]] FiniteSite validate_topology(const CategoryPtr & category, std::vector<std::vector<Sieve>> covers,
    const SearchBudget & budget = {});

/// Name-level covers; maximal sieves are added for every object.
struct RawSite {
    struct Cover {
        std::string object;
        std::vector<std::string> morphisms;
    };
    std::vector<Cover> covers;
};

[[nodiscard]] FiniteSite validate_site(const CategoryPtr & category, const RawSite & raw, const SearchBudget & budget = {});

/// Only maximal sieves cover.
[[nodiscard]] FiniteSite trivial_topology(const CategoryPtr & category);

/// Objects covered only by their maximal sieve.
[[nodiscard]] std::vector<ObjectId> irreducible_objects(const FiniteSite & site);

struct SiteClass {
    bool completely_connected = false;
    bool local = false;
};

/// Completely connected: some initial object is irreducible. Local: some
/// terminal object is irreducible.
[[nodiscard]] SiteClass site_class(const FiniteSite & site);

struct ConeSite {
    InitialExtension extension;
    FiniteSite site;
};

/// J^◁ on C^◁: ∅ is covered only maximally, and S covers c in C exactly when
/// S ∪ {! : ∅ → c} covers c in C^◁.
[[nodiscard]] ConeSite cone_topology(const FiniteSite & site, const SearchBudget & budget = {});

// ---------------------------------------------------------------------------
// Finite spaces

/// Sorted point indices.
using PointSet = std::vector<std::size_t>;

struct FinSpace {
    std::vector<std::string> points;
    /// Opens ordered by size, then lexicographically.
    std::vector<PointSet> opens;
};

struct RawSpace {
    std::vector<std::string> points;
    std::vector<std::vector<std::string>> opens;
};

/// Requires ∅ and the whole space among the opens and closure under binary
/// unions and intersections. Throws InvalidSpace.
[[nodiscard]] FinSpace validate_space(const RawSpace & raw);

/// Distinct points are separated by some open.
[[nodiscard]] bool is_t0(const FinSpace & space);

/// The nonempty open contained in every nonempty open, if any.
[[nodiscard]] std::optional<PointSet> min_nonempty_open(const FinSpace & space);

/// A point x with {x} open and x in every nonempty open. Throws
/// Refusal(NotT0) on non-T0 input.
[[nodiscard]] std::optional<std::size_t> open_dense_point(const FinSpace & space);

[[nodiscard]] std::string point_set_name(const FinSpace & space, const PointSet & set);

} // namespace cctopos
