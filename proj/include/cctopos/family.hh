#pragma once

#include <cctopos/presheaf.hh>

#include <string>
#include <vector>

namespace cctopos {

/// A finite family of presheaves over a common base C, indexed in order.
struct FamilyObject {
    CategoryPtr base;
    std::vector<std::string> index;
    std::vector<Presheaf> members;
};

/// Splits P over C^◁ into the fibres of x ↦ x·! over P(∅). Throws WrongBase
/// unless P lives on `extension.category`.
[[nodiscard]] FamilyObject decompose_family(const InitialExtension & extension, const Presheaf & p);

/// The inverse construction: P(∅) = index and P(c) = ⊔ members(c). Element
/// names are kept when they do not clash across members, and become
/// "<index>.<name>" otherwise.
[[nodiscard]] Presheaf recompose_family(const InitialExtension & extension, const FamilyObject & family);

struct ClosedSubtoposVerdict {
    /// P × □ ≅ □.
    bool product_iso = false;
    /// |P(∅)| = 1.
    bool singleton_index = false;
    /// π₀(P) = 1.
    bool connected = false;

    [[nodiscard]] bool agree() const { return product_iso == singleton_index && singleton_index == connected; }
    [[nodiscard]] bool value() const { return product_iso; }
};

[[nodiscard]] ClosedSubtoposVerdict closed_subtopos_test(const InitialExtension & extension, const Presheaf & p,
    const SearchBudget & budget = {});

} // namespace cctopos
