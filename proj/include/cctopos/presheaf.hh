#pragma once

#include <cctopos/error.hh>
#include <cctopos/fincat.hh>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace cctopos {

using ElementId = std::size_t;

/// A finite presheaf: a set per object and, for each f : a → b, a function
/// P(b) → P(a). The constructor checks the identity and contravariance laws.
class Presheaf {
public:
    Presheaf(CategoryPtr base, std::vector<std::vector<std::string>> elements, std::vector<std::vector<ElementId>> action);

    [[nodiscard]] const CategoryPtr & base() const noexcept { return _base; }
    [[nodiscard]] const FinCategory & category() const noexcept { return *_base; }

    [[nodiscard]] std::size_t size(ObjectId c) const { return _elements.at(c).size(); }
    [[nodiscard]] std::size_t total_size() const;
    [[nodiscard]] std::vector<std::size_t> carrier_sizes() const;
    [[nodiscard]] bool is_empty() const { return total_size() == 0; }

    [[nodiscard]] const std::vector<std::string> & elements(ObjectId c) const { return _elements.at(c); }
    [[nodiscard]] const std::string & element_name(ObjectId c, ElementId x) const { return _elements.at(c).at(x); }
    [[nodiscard]] std::optional<ElementId> find_element(ObjectId c, std::string_view name) const;

    /// x ∈ P(cod f) ↦ x·f ∈ P(dom f).
    [[nodiscard]] ElementId act(MorphismId f, ElementId x) const { return _action[f][x]; }
    [[nodiscard]] const std::vector<ElementId> & action(MorphismId f) const { return _action.at(f); }

    /// Structural equality; isomorphism is `is_isomorphic`.
    bool operator==(const Presheaf & other) const;

private:
    CategoryPtr _base;
    std::vector<std::vector<std::string>> _elements;
    std::vector<std::vector<ElementId>> _action;
};

struct RawPresheaf {
    struct Carrier {
        std::string object;
        std::vector<std::string> elements;
    };
    struct Action {
        std::string morphism;
        std::string from;
        std::string to;
    };
    /// Objects that are not listed get an empty carrier.
    std::vector<Carrier> carriers;
    /// Identity actions are implicit. A morphism with no entries at all is
    /// inferred from a factorisation through morphisms whose actions are known.
    std::vector<Action> actions;
};

[[nodiscard]] Presheaf validate_presheaf(const CategoryPtr & base, const RawPresheaf & raw);

/// Components indexed by object; component c maps P(c) → Q(c).
struct NatTrans {
    std::vector<std::vector<ElementId>> components;

    [[nodiscard]] ElementId operator()(ObjectId c, ElementId x) const { return components[c][x]; }
    bool operator==(const NatTrans &) const = default;
};

[[nodiscard]] bool is_natural(const Presheaf & source, const Presheaf & target, const NatTrans & alpha);
/// Throws NotNatural with the offending square.
void check_natural(const Presheaf & source, const Presheaf & target, const NatTrans & alpha);

[[nodiscard]] NatTrans identity_transformation(const Presheaf & p);
/// beta ∘ alpha.
[[nodiscard]] NatTrans compose(const NatTrans & beta, const NatTrans & alpha);
[[nodiscard]] bool is_epimorphism(const NatTrans & alpha, const Presheaf & target);
[[nodiscard]] bool is_monomorphism(const NatTrans & alpha);

[[nodiscard]] bool same_base(const Presheaf & p, const Presheaf & q);

// ---------------------------------------------------------------------------
// Standard presheaves

/// y(c): Hom(−, c) with action by precomposition.
[[nodiscard]] Presheaf yoneda(const CategoryPtr & base, ObjectId c);
/// The constant presheaf on S with identity actions.
[[nodiscard]] Presheaf constant_presheaf(const CategoryPtr & base, const std::vector<std::string> & set);
[[nodiscard]] Presheaf terminal_presheaf(const CategoryPtr & base);
[[nodiscard]] Presheaf initial_presheaf(const CategoryPtr & base);

// ---------------------------------------------------------------------------
// Natural transformations

/// Visits every natural transformation source → target in canonical order;
/// the visitor returns false to stop early.
void for_each_hom(const Presheaf & source, const Presheaf & target, const SearchBudget & budget,
    const std::function<bool(const NatTrans &)> & visit);

[[nodiscard]] std::vector<NatTrans> hom_set(const Presheaf & source, const Presheaf & target, const SearchBudget & budget = {});
[[nodiscard]] std::size_t count_homs(const Presheaf & source, const Presheaf & target, const SearchBudget & budget = {});
[[nodiscard]] std::optional<NatTrans> first_hom(const Presheaf & source, const Presheaf & target, const SearchBudget & budget = {});

struct Isomorphism {
    NatTrans forward;
    NatTrans backward;
};

[[nodiscard]] std::optional<Isomorphism> is_isomorphic(const Presheaf & p, const Presheaf & q, const SearchBudget & budget = {});

// ---------------------------------------------------------------------------
// Limits and colimits

/// A covariant diagram of presheaves over a common base. `arrows[s]` is the
/// transformation D(dom s) → D(cod s).
struct Diagram {
    CategoryPtr base;
    CategoryPtr shape;
    std::vector<Presheaf> objects;
    std::vector<NatTrans> arrows;
};

void validate_diagram(const Diagram & diagram);

/// For a limit the legs run apex → D(i); for a colimit they run D(i) → apex.
struct Cone {
    Presheaf apex;
    std::vector<NatTrans> legs;
};

[[nodiscard]] Cone limit(const Diagram & diagram, const SearchBudget & budget = {});
[[nodiscard]] Cone colimit(const Diagram & diagram, const SearchBudget & budget = {});

[[nodiscard]] Cone product(const std::vector<Presheaf> & factors, const CategoryPtr & base, const SearchBudget & budget = {});
[[nodiscard]] Presheaf product(const Presheaf & p, const Presheaf & q, const SearchBudget & budget = {});
/// Summand i is labelled labels[i] (default "0", "1", ...) in element names.
[[nodiscard]] Cone coproduct(const std::vector<Presheaf> & summands, const CategoryPtr & base, const std::vector<std::string> & labels = {});
[[nodiscard]] Presheaf coproduct(const Presheaf & p, const Presheaf & q);
/// Legs: the inclusion E → source.
[[nodiscard]] Cone equalizer(const Presheaf & source, const Presheaf & target, const NatTrans & alpha, const NatTrans & beta,
    const SearchBudget & budget = {});
/// Colimit of left ← apex → right; legs in shape order (left, apex, right).
[[nodiscard]] Cone pushout(const Presheaf & left, const Presheaf & apex, const Presheaf & right, const NatTrans & to_left,
    const NatTrans & to_right);

// ---------------------------------------------------------------------------
// Connected components and global sections

struct Components {
    std::size_t count = 0;
    /// component_of[c][x] for x ∈ P(c).
    std::vector<std::vector<std::size_t>> component_of;
    /// Least element of each component in (object, element) order.
    std::vector<std::pair<ObjectId, ElementId>> representative;
};

/// Components of the category of elements; components are numbered in the
/// order of their least elements.
[[nodiscard]] Components pi0(const Presheaf & p);

/// The induced function π₀(source) → π₀(target).
[[nodiscard]] std::vector<std::size_t> pi0_map(const Components & source, const Components & target, const NatTrans & alpha);

using GlobalSection = std::vector<ElementId>;

/// Compatible families (x_c) with x_b·f = x_a for every f : a → b.
[[nodiscard]] std::vector<GlobalSection> global_sections(const Presheaf & p, const SearchBudget & budget = {});

// ---------------------------------------------------------------------------
// Subobjects and the subobject classifier

/// mask[c][x] says whether x ∈ P(c) is kept.
using ElementMask = std::vector<std::vector<bool>>;

[[nodiscard]] std::vector<ElementMask> subpresheaf_masks(const Presheaf & p, const SearchBudget & budget = {});
[[nodiscard]] Presheaf restrict_presheaf(const Presheaf & p, const ElementMask & mask);
[[nodiscard]] std::vector<Presheaf> subpresheaves(const Presheaf & p, const SearchBudget & budget = {});

/// A sieve is a sorted set of morphism ids with a common codomain.
using Sieve = std::vector<MorphismId>;

[[nodiscard]] bool is_sieve(const FinCategory & c, ObjectId target, const Sieve & sieve);
[[nodiscard]] Sieve maximal_sieve(const FinCategory & c, ObjectId target);
/// f*S = {g | f∘g ∈ S}.
[[nodiscard]] Sieve pullback_sieve(const FinCategory & c, MorphismId f, const Sieve & sieve);
/// All sieves on `target`, ordered by size then lexicographically.
[[nodiscard]] std::vector<Sieve> sieves_on(const FinCategory & c, ObjectId target, const SearchBudget & budget = {});
[[nodiscard]] std::string sieve_name(const FinCategory & c, const Sieve & sieve);

/// Ω(c) = sieves on c, acting by pullback. Element i of Ω(c) is sieves_on(c)[i].
[[nodiscard]] Presheaf omega(const CategoryPtr & base, const SearchBudget & budget = {});

/// χ_A : P → Ω for the subpresheaf A given by `mask`.
[[nodiscard]] NatTrans characteristic_map(const Presheaf & p, const ElementMask & mask, const Presheaf & omega);

} // namespace cctopos
