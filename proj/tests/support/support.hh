#pragma once

// Test-only generators and brute-force oracles. Nothing here calls the
// library's search routines it is meant to check.

#include <cctopos/presheaf.hh>

#include <functional>
#include <string>
#include <vector>

namespace support {

using cctopos::CategoryPtr;
using cctopos::Presheaf;

/// Categories with 1..max_objects objects, at most max_morphisms morphisms and
/// hom-sets of size at most max_hom, found by backtracking over composition
/// tables with associativity pruning. Hom-size matrices are taken up to
/// object permutation; at most per_matrix tables are kept for each.
std::vector<CategoryPtr> small_categories(std::size_t max_objects, std::size_t max_morphisms, std::size_t max_hom, std::size_t per_matrix);

/// Non-identity morphisms that are not a composite of two non-identities.
std::vector<cctopos::MorphismId> generators(const cctopos::FinCategory & c);

/// Upper bound on the number of action tables for the given carrier sizes:
/// the product over generators of |P(dom)|^|P(cod)|.
double presheaf_search_size(const cctopos::FinCategory & c, const std::vector<std::size_t> & sizes);

/// Every presheaf with the given carrier sizes (elements named "0", "1", …).
/// The visitor returns false to stop.
void for_each_presheaf(const CategoryPtr & c, const std::vector<std::size_t> & sizes, const std::function<bool(const Presheaf &)> & visit);

/// All carrier-size vectors with entries in 0..bound, ordered by total then lexicographically.
std::vector<std::vector<std::size_t>> size_vectors(std::size_t objects, std::size_t bound);

// Oracles --------------------------------------------------------------------

/// Counts natural transformations by trying every family of functions.
std::size_t brute_hom_count(const Presheaf & p, const Presheaf & q);

/// Connected components of the category of elements by graph search.
std::size_t brute_pi0(const Presheaf & p);

/// Compatible families by trying every tuple.
std::size_t brute_sections(const Presheaf & p);

/// Subpresheaves by trying every subset of elements.
std::size_t brute_subobjects(const Presheaf & p);

/// Sieves on c by trying every subset of morphisms into c.
std::size_t brute_sieves(const cctopos::FinCategory & c, cctopos::ObjectId target);

/// Brute-force search for a presheaf R with carriers ≤ bound that represents
/// π₀ on `battery`: R is connected, maps uniquely to every representable, and
/// α ↦ [α(r)] is a bijection hom(R, X) → π₀(X) for every X in the battery.
struct RepresentingSearch {
    bool found = false;
    /// True when the search space exceeded `limit` and was not attempted.
    bool skipped = false;
    std::vector<std::size_t> sizes;
};

RepresentingSearch search_pi0_representative(const CategoryPtr & c, const std::vector<Presheaf> & battery, std::size_t bound, double limit);

} // namespace support
