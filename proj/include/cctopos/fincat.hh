#pragma once

#include <cctopos/error.hh>

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cctopos {

using ObjectId = std::size_t;
using MorphismId = std::size_t;

/// Index-level description of a finite category. `table[g * n + f]` holds
/// g∘f for composable pairs (dom g = cod f) and is empty otherwise.
struct CategoryData {
    std::vector<std::string> objects;
    std::vector<std::string> morphisms;
    std::vector<ObjectId> dom;
    std::vector<ObjectId> cod;
    std::vector<MorphismId> identity;
    std::vector<std::optional<MorphismId>> table;
};

/// A finite category with a total composition table. Immutable once built;
/// the constructor checks the identity laws, associativity and that the
/// table is defined on exactly the composable pairs.
class FinCategory {
public:
    explicit FinCategory(CategoryData data);

    [[nodiscard]] std::size_t object_count() const noexcept { return _objects.size(); }
    [[nodiscard]] std::size_t morphism_count() const noexcept { return _morphisms.size(); }

    [[nodiscard]] const std::string & object_name(ObjectId c) const { return _objects.at(c); }
    [[nodiscard]] const std::string & morphism_name(MorphismId f) const { return _morphisms.at(f); }
    [[nodiscard]] const std::vector<std::string> & object_names() const noexcept { return _objects; }
    [[nodiscard]] const std::vector<std::string> & morphism_names() const noexcept { return _morphisms; }

    [[nodiscard]] ObjectId dom(MorphismId f) const { return _dom.at(f); }
    [[nodiscard]] ObjectId cod(MorphismId f) const { return _cod.at(f); }
    [[nodiscard]] MorphismId identity(ObjectId c) const { return _identity.at(c); }
    [[nodiscard]] bool is_identity(MorphismId f) const { return _identity[_dom.at(f)] == f; }

    /// g∘f; requires dom g = cod f.
    [[nodiscard]] MorphismId compose(MorphismId g, MorphismId f) const;
    [[nodiscard]] std::optional<MorphismId> try_compose(MorphismId g, MorphismId f) const;

    /// Morphisms a → b in morphism order.
    [[nodiscard]] const std::vector<MorphismId> & hom(ObjectId a, ObjectId b) const { return _hom[a * object_count() + b]; }
    /// Morphisms with codomain c, in morphism order.
    [[nodiscard]] const std::vector<MorphismId> & into(ObjectId c) const { return _into.at(c); }
    /// Morphisms with domain c, in morphism order.
    [[nodiscard]] const std::vector<MorphismId> & out_of(ObjectId c) const { return _out_of.at(c); }

    [[nodiscard]] std::optional<ObjectId> find_object(std::string_view name) const;
    [[nodiscard]] std::optional<MorphismId> find_morphism(std::string_view name) const;
    [[nodiscard]] ObjectId object(std::string_view name) const;
    [[nodiscard]] MorphismId morphism(std::string_view name) const;

    [[nodiscard]] CategoryData data() const;

    bool operator==(const FinCategory & other) const;

private:
    std::vector<std::string> _objects;
    std::vector<std::string> _morphisms;
    std::vector<ObjectId> _dom;
    std::vector<ObjectId> _cod;
    std::vector<MorphismId> _identity;
    std::vector<std::optional<MorphismId>> _table;
    std::vector<std::vector<MorphismId>> _hom;
    std::vector<std::vector<MorphismId>> _into;
    std::vector<std::vector<MorphismId>> _out_of;
    std::map<std::string, ObjectId, std::less<>> _object_index;
    std::map<std::string, MorphismId, std::less<>> _morphism_index;
};

using CategoryPtr = std::shared_ptr<const FinCategory>;

[[nodiscard]] CategoryPtr make_category(CategoryData data);

/// Same category, or structurally identical tables.
[[nodiscard]] bool same_category(const CategoryPtr & a, const CategoryPtr & b);

/// Name-level description, as written by a user.
struct RawCategory {
    struct Arrow {
        std::string name;
        std::string dom;
        std::string cod;
    };
    struct Composite {
        std::string g;
        std::string f;
        std::string result;
    };

    std::vector<std::string> objects;
    std::vector<Arrow> arrows;
    /// object → arrow name; identities may be listed among `arrows`.
    std::map<std::string, std::string> identities;
    /// Objects without an entry in `identities` get a fresh `id_<object>`.
    bool implicit_identities = true;
    std::vector<Composite> composites;
};

[[nodiscard]] CategoryPtr validate_category(const RawCategory & raw);

[[nodiscard]] CategoryPtr opposite(const FinCategory & c);

// ---------------------------------------------------------------------------
// Monoids

class FinMonoid {
public:
    FinMonoid(std::vector<std::string> elements, std::size_t unit, std::vector<std::size_t> table);

    [[nodiscard]] std::size_t size() const noexcept { return _elements.size(); }
    [[nodiscard]] std::size_t unit() const noexcept { return _unit; }
    [[nodiscard]] std::size_t mult(std::size_t a, std::size_t b) const { return _table[a * size() + b]; }
    [[nodiscard]] const std::string & element_name(std::size_t a) const { return _elements.at(a); }
    [[nodiscard]] const std::vector<std::string> & element_names() const noexcept { return _elements; }
    [[nodiscard]] std::optional<std::size_t> find_element(std::string_view name) const;

    bool operator==(const FinMonoid &) const = default;

private:
    std::vector<std::string> _elements;
    std::size_t _unit;
    std::vector<std::size_t> _table;
};

struct RawMonoid {
    struct Entry {
        std::string left;
        std::string right;
        std::string product;
    };
    std::vector<std::string> elements;
    std::string unit;
    /// Products involving the unit may be omitted.
    std::vector<Entry> table;
};

[[nodiscard]] FinMonoid validate_monoid(const RawMonoid & raw);

/// Name of the single object of a monoid viewed as a category.
inline constexpr std::string_view monoid_object_name = "pt";

/// One object; compose(g, f) = g·f; identity = unit.
[[nodiscard]] CategoryPtr monoid_to_category(const FinMonoid & m);

/// {z | m·z = z for every m}, in element order.
[[nodiscard]] std::vector<std::size_t> right_zero_elements(const FinMonoid & m);

// ---------------------------------------------------------------------------
// Graphs and posets

struct FinGraph {
    struct Edge {
        std::string name;
        std::string source;
        std::string target;
    };
    std::vector<std::string> vertices;
    std::vector<Edge> edges;
};

/// Morphisms are directed paths; a composite path g∘f is named "g.f".
[[nodiscard]] CategoryPtr free_path_category(const FinGraph & graph);

struct RawPoset {
    std::vector<std::string> elements;
    std::vector<std::pair<std::string, std::string>> relations;
};

/// Thin category on the reflexive-transitive closure; a ≤ b is named "a_b".
[[nodiscard]] CategoryPtr poset_category(const RawPoset & raw);

// ---------------------------------------------------------------------------
// Functors

struct FinFunctor {
    CategoryPtr source;
    CategoryPtr target;
    std::vector<ObjectId> object_map;
    std::vector<MorphismId> morphism_map;
};

/// Throws InvalidFunctor unless identities, dom/cod and composition are preserved.
void validate_functor(const FinFunctor & functor);

[[nodiscard]] bool is_full_and_faithful(const FinFunctor & functor);

/// Bijective on objects and morphisms.
[[nodiscard]] bool is_isomorphism(const FinFunctor & functor);

// ---------------------------------------------------------------------------
// Extremal objects

[[nodiscard]] std::vector<ObjectId> initial_objects(const FinCategory & c);
[[nodiscard]] std::vector<ObjectId> terminal_objects(const FinCategory & c);
[[nodiscard]] std::vector<ObjectId> zero_objects(const FinCategory & c);

/// Nonempty and zig-zag connected.
[[nodiscard]] bool is_connected_category(const FinCategory & c);

// ---------------------------------------------------------------------------
// Idempotents and the Cauchy completion

struct SplitIdempotent {
    ObjectId carrier;
    MorphismId idempotent;

    bool operator==(const SplitIdempotent &) const = default;
};

/// All idempotent endomorphisms, identities included, ordered by
/// (object, morphism).
[[nodiscard]] std::vector<SplitIdempotent> idempotents(const FinCategory & c);

[[nodiscard]] std::string split_name(const FinCategory & c, const SplitIdempotent & s);

struct CauchyCompletion {
    CategoryPtr category;
    /// c ↦ (c @ id_c).
    FinFunctor embedding;
    /// The idempotent each completion object splits.
    std::vector<SplitIdempotent> splits;
    /// The underlying morphism of the base for each completion morphism.
    std::vector<MorphismId> underlying;
};

/// Objects are the idempotents (c, e); Hom((c,e),(c',e')) = {f : c → c' | e'∘f∘e = f}.
[[nodiscard]] CauchyCompletion cauchy_completion(const CategoryPtr & c);

/// True when every idempotent u : x → x has some y with r : x → y, s : y → x,
/// s∘r = u and r∘s = id_y.
[[nodiscard]] bool all_idempotents_split(const FinCategory & c);

// ---------------------------------------------------------------------------
// Freely adjoined strict initial object

inline constexpr std::string_view adjoined_initial_name = "∅";

struct InitialExtension {
    CategoryPtr category;
    FinFunctor embedding;
    ObjectId apex;
    /// The unique ∅ → c, indexed by objects of the extended category.
    std::vector<MorphismId> bang;
    CategoryPtr base;
};

/// C^◁: a new object ∅ (listed first) with exactly one morphism to every object
/// and none back.
[[nodiscard]] InitialExtension adjoin_initial(const CategoryPtr & c);

// ---------------------------------------------------------------------------
// Standard shapes

[[nodiscard]] CategoryPtr empty_category();
[[nodiscard]] CategoryPtr terminal_category();
[[nodiscard]] CategoryPtr discrete_category(const std::vector<std::string> & objects);
/// Objects "0" < "1" < … < "n".
[[nodiscard]] CategoryPtr chain_category(std::size_t n);
/// a → b with the arrow named f.
[[nodiscard]] CategoryPtr walking_arrow();
/// One object with {id, e}, e∘e = e.
[[nodiscard]] CategoryPtr walking_idempotent();
/// Objects 0, 1 and two arrows s, t : 0 → 1.
[[nodiscard]] CategoryPtr parallel_pair_shape();
/// l ← apex → r, arrows named "left" and "right".
[[nodiscard]] CategoryPtr span_shape();

/// The monoid ({1, 0}, 1, ×).
[[nodiscard]] FinMonoid multiplicative_f2();

} // namespace cctopos
