#include <cctopos/family.hh>
#include <cctopos/toposcalc.hh>

#include <set>

namespace cctopos {

using std::size_t;
using std::string;
using std::vector;

namespace {
    void require_extension_base(const InitialExtension & extension, const Presheaf & p)
    {
        if (! same_category(p.base(), extension.category))
            throw Error(ErrorKind::WrongBase, "presheaf is not over the category with an adjoined initial object");
    }
}

FamilyObject decompose_family(const InitialExtension & extension, const Presheaf & p)
{
    require_extension_base(extension, p);
    auto & c = *extension.base;
    auto & embed = extension.embedding;
    FamilyObject family{extension.base, p.elements(extension.apex), {}};

    for (size_t i = 0; i < family.index.size(); ++i) {
        vector<vector<string>> elements(c.object_count());
        vector<vector<ElementId>> renumber(c.object_count());
        for (ObjectId x = 0; x < c.object_count(); ++x) {
            auto ex = embed.object_map[x];
            renumber[x].assign(p.size(ex), 0);
            for (ElementId e = 0; e < p.size(ex); ++e)
                if (p.act(extension.bang[ex], e) == i) {
                    renumber[x][e] = elements[x].size();
                    elements[x].push_back(p.element_name(ex, e));
                }
        }
        vector<vector<ElementId>> action(c.morphism_count());
        for (MorphismId f = 0; f < c.morphism_count(); ++f) {
            auto ef = embed.morphism_map[f];
            auto eb = embed.object_map[c.cod(f)];
            for (ElementId e = 0; e < p.size(eb); ++e)
                if (p.act(extension.bang[eb], e) == i)
                    action[f].push_back(renumber[c.dom(f)][p.act(ef, e)]);
        }
        family.members.emplace_back(extension.base, std::move(elements), std::move(action));
    }
    return family;
}

Presheaf recompose_family(const InitialExtension & extension, const FamilyObject & family)
{
    if (! same_category(family.base, extension.base))
        throw Error(ErrorKind::WrongBase, "family is not over the base of the extension");
    for (auto & member : family.members)
        if (! same_category(member.base(), extension.base))
            throw Error(ErrorKind::WrongBase, "family member over a different base");
    if (family.members.size() != family.index.size())
        throw Error(ErrorKind::InvalidDiagram, "family index and members differ in length");

    auto & c = *extension.base;
    auto & ext = *extension.category;
    auto & embed = extension.embedding;
    const size_t k = family.index.size();

    vector<vector<string>> elements(ext.object_count());
    // offset[x][i]: start of member i inside the carrier at base object x.
    vector<vector<size_t>> offset(c.object_count(), vector<size_t>(k + 1, 0));
    elements[extension.apex] = family.index;
    for (ObjectId x = 0; x < c.object_count(); ++x) {
        std::multiset<string> names;
        for (size_t i = 0; i < k; ++i) {
            offset[x][i + 1] = offset[x][i] + family.members[i].size(x);
            names.insert(family.members[i].elements(x).begin(), family.members[i].elements(x).end());
        }
        bool clash = false;
        for (auto & name : names)
            clash = clash || names.count(name) > 1;
        auto & carrier = elements[embed.object_map[x]];
        for (size_t i = 0; i < k; ++i)
            for (auto & name : family.members[i].elements(x))
                carrier.push_back(clash ? family.index[i] + "." + name : name);
    }

    vector<vector<ElementId>> action(ext.morphism_count());
    for (ElementId i = 0; i < k; ++i)
        action[ext.identity(extension.apex)].push_back(i);
    for (ObjectId x = 0; x < c.object_count(); ++x) {
        auto & bang = action[extension.bang[embed.object_map[x]]];
        for (size_t i = 0; i < k; ++i)
            bang.insert(bang.end(), family.members[i].size(x), i);
    }
    for (MorphismId f = 0; f < c.morphism_count(); ++f) {
        auto & out = action[embed.morphism_map[f]];
        for (size_t i = 0; i < k; ++i)
            for (ElementId e = 0; e < family.members[i].size(c.cod(f)); ++e)
                out.push_back(offset[c.dom(f)][i] + family.members[i].act(f, e));
    }
    return Presheaf(extension.category, std::move(elements), std::move(action));
}

ClosedSubtoposVerdict closed_subtopos_test(const InitialExtension & extension, const Presheaf & p, const SearchBudget & budget)
{
    require_extension_base(extension, p);
    auto box = require_container(extension.category).container;
    ClosedSubtoposVerdict verdict;
    verdict.product_iso = is_isomorphic(product(p, box, budget), box, budget).has_value();
    verdict.singleton_index = decompose_family(extension, p).index.size() == 1;
    verdict.connected = pi0(p).count == 1;
    return verdict;
}

} // namespace cctopos
