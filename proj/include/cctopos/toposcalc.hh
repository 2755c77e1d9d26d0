#pragma once

#include <cctopos/check.hh>
#include <cctopos/presheaf.hh>

#include <optional>
#include <string>
#include <vector>

namespace cctopos {

/// The container object □ represents π₀. It exists exactly when the Cauchy
/// completion has an initial object (c₀, e), and then □(c) = {f : c → c₀ | e∘f = f}.
struct ContainerWitness {
    SplitIdempotent initial_split;
    Presheaf container;
};

[[nodiscard]] std::optional<ContainerWitness> container_object(const CategoryPtr & c);
/// Throws Refusal(NotCompletelyConnected) when there is no container.
[[nodiscard]] ContainerWitness require_container(const CategoryPtr & c);

/// γ₂(S): the S-fold copower of □. Element (s, x) sits at index s·|□(c)| + x.
[[nodiscard]] Presheaf gamma2(const CategoryPtr & c, const std::vector<std::string> & s);
/// γ₂ on a function u : S' → S, as a map γ₂(S') → γ₂(S).
[[nodiscard]] NatTrans gamma2_map(const Presheaf & container, const std::vector<std::size_t> & u, std::size_t target_size);

/// The terminal split (c₁, e₁) of the Cauchy completion, if any.
[[nodiscard]] std::optional<SplitIdempotent> terminal_split(const CategoryPtr & c);

/// γ₋₂(S)(c) = functions E(c) → S with E(c) = {f : c₁ → c | f∘e₁ = f}, and
/// (φ·g)(h) = φ(g∘h). Functions are numbered in lexicographic order with the
/// first exponent most significant. Throws Refusal(NotLocal) without a
/// terminal split.
[[nodiscard]] Presheaf gamma_minus2(const CategoryPtr & c, const std::vector<std::string> & s, const SearchBudget & budget = {});

struct AxiomReport {
    bool ax2 = false;
    bool ax_minus2 = false;
    bool ax_inf = false;
    /// Ax(∞) by the second route: □ exists and has a global section.
    bool ax_inf_via_sections = false;
    bool connected = false;
    bool locally_connected = true;
    std::optional<SplitIdempotent> initial;
    std::optional<SplitIdempotent> terminal;
    std::optional<SplitIdempotent> zero;
    std::optional<ContainerWitness> container;
    /// "∞", "5", "4" or "3".
    std::string string_length;
    std::vector<std::string> notes;

    [[nodiscard]] bool ax3() const { return ax_inf; }
    [[nodiscard]] bool ax_minus3() const { return ax_inf; }
};

[[nodiscard]] AxiomReport classify_axioms(const CategoryPtr & c, const SearchBudget & budget = {});

struct DualityReport {
    AxiomReport forward;
    AxiomReport opposite;
    bool holds = false;
};

/// Ax(2) of C against Ax(−2) of C^op, and the other way round.
[[nodiscard]] DualityReport duality_check(const CategoryPtr & c, const SearchBudget & budget = {});

struct Reflection {
    Presheaf reflected;
    NatTrans unit;
};

/// X̄ = pushout of □ ← γ₂γ₁X → X, with η_X the leg out of X.
[[nodiscard]] Reflection connected_reflection(const Presheaf & x, const SearchBudget & budget = {});

// ---------------------------------------------------------------------------
// Batteries and verification

struct BatteryItem {
    std::string name;
    Presheaf presheaf;
};

using Battery = std::vector<BatteryItem>;

/// Representables, 1, 0, Ω and □ (when present), the binary products and
/// coproducts of those, then `extras`.
[[nodiscard]] Battery build_battery(const CategoryPtr & c, const std::vector<BatteryItem> & extras = {}, const SearchBudget & budget = {});

[[nodiscard]] CheckList container_properties(const CategoryPtr & c, const Battery & battery, const SearchBudget & budget = {});

/// π₀(X̄) = 1, η_X natural, and |hom(X̄, Y)| = |hom(X, Y)| for connected Y in the battery.
[[nodiscard]] CheckList reflection_checks(const Presheaf & x, const Battery & battery, const SearchBudget & budget = {});

/// Finite product, terminal and equalizer preservation by π₀. Throws
/// Refusal(NotCompletelyConnected) without a container.
[[nodiscard]] CheckList preservation_report(const CategoryPtr & c, const Battery & battery, const SearchBudget & budget = {});

struct AdjunctionTally {
    std::string name;
    std::size_t checked = 0;
    /// Instances whose Set-side count was past the enumeration cap.
    std::size_t skipped = 0;
    std::size_t naturality_checks = 0;
    std::vector<std::string> violations;
};

struct AdjunctionReport {
    std::vector<AdjunctionTally> tallies;
    CheckList checks;
};

/// Hom-count bijections and naturality spot checks for γ₂⊣γ₁, γ₁⊣γ₀,
/// γ₀⊣Γ and Γ⊣γ₋₂ over |S| ≤ max_set_size. Adjunctions whose functors do
/// not exist are reported as refused.
[[nodiscard]] AdjunctionReport verify_adjunctions(const CategoryPtr & c, const Battery & battery, std::size_t max_set_size = 3,
    std::size_t enumeration_cap = 4096, const SearchBudget & budget = {});

} // namespace cctopos
