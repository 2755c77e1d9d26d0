#include <cctopos/toposcalc.hh>

#include <algorithm>
#include <map>
#include <set>

namespace cctopos {

using std::optional;
using std::size_t;
using std::string;
using std::vector;

namespace {
    using Function = vector<size_t>;

    /// Smallest x ∈ □: the first element of the first nonempty carrier.
    std::pair<ObjectId, ElementId> base_point(const Presheaf & box)
    {
        for (ObjectId x = 0; x < box.category().object_count(); ++x)
            if (box.size(x) > 0)
                return {x, 0};
        throw Error(ErrorKind::InternalInvariant, "container object is empty");
    }

    /// E(c) = {f : c₁ → c | f∘e₁ = f} for the terminal split (c₁, e₁).
    vector<vector<MorphismId>> exponents(const FinCategory & c, const SplitIdempotent & split)
    {
        vector<vector<MorphismId>> e(c.object_count());
        for (ObjectId x = 0; x < c.object_count(); ++x)
            for (auto f : c.hom(split.carrier, x))
                if (c.compose(f, split.idempotent) == f)
                    e[x].push_back(f);
        return e;
    }

    size_t power(size_t base, size_t exponent, size_t cap)
    {
        size_t result = 1;
        for (size_t i = 0; i < exponent; ++i) {
            if (base != 0 && result > cap / base)
                return cap + 1;
            result *= base;
        }
        return result;
    }

    Function compose_functions(const Function & g, const Function & f)
    {
        Function result;
        for (auto v : f)
            result.push_back(g[v]);
        return result;
    }

    vector<NatTrans> first_homs(const Presheaf & p, const Presheaf & q, size_t limit, const SearchBudget & budget)
    {
        vector<NatTrans> result;
        if (limit == 0)
            return result;
        for_each_hom(p, q, budget, [&](const NatTrans & alpha) {
            result.push_back(alpha);
            return result.size() < limit;
        });
        return result;
    }

    string set_name(size_t n)
    {
        return "|S|=" + std::to_string(n);
    }

    vector<string> set_of_size(size_t n)
    {
        vector<string> s;
        for (size_t i = 0; i < n; ++i)
            s.push_back("s" + std::to_string(i));
        return s;
    }

    /// A few endofunctions of an n-element set for naturality spot checks.
    vector<Function> sample_functions(size_t n)
    {
        vector<Function> result;
        if (n == 0)
            return {Function{}};
        Function shift(n), constant(n, 0);
        for (size_t i = 0; i < n; ++i)
            shift[i] = (i + 1) % n;
        result.push_back(shift);
        if (n > 1)
            result.push_back(constant);
        return result;
    }
}

// ---------------------------------------------------------------------------

optional<ContainerWitness> container_object(const CategoryPtr & base)
{
    auto completion = cauchy_completion(base);
    auto initial = initial_objects(*completion.category);
    if (initial.empty())
        return std::nullopt;
    auto split = completion.splits[initial.front()];
    auto & c = *base;

    vector<vector<MorphismId>> members(c.object_count());
    vector<vector<string>> elements(c.object_count());
    for (ObjectId x = 0; x < c.object_count(); ++x)
        for (auto f : c.hom(x, split.carrier))
            if (c.compose(split.idempotent, f) == f) {
                members[x].push_back(f);
                elements[x].push_back(c.morphism_name(f));
            }
    vector<vector<ElementId>> action(c.morphism_count());
    for (MorphismId g = 0; g < c.morphism_count(); ++g)
        for (auto f : members[c.cod(g)]) {
            auto & into = members[c.dom(g)];
            auto fg = c.compose(f, g);
            action[g].push_back(ElementId(std::find(into.begin(), into.end(), fg) - into.begin()));
        }
    return ContainerWitness{split, Presheaf(base, std::move(elements), std::move(action))};
}

ContainerWitness require_container(const CategoryPtr & c)
{
    auto witness = container_object(c);
    if (! witness)
        throw Refusal(ErrorKind::NotCompletelyConnected, "the Cauchy completion has no initial object, so there is no container object");
    return std::move(*witness);
}

Presheaf gamma2(const CategoryPtr & c, const vector<string> & s)
{
    auto box = require_container(c).container;
    return coproduct(vector<Presheaf>(s.size(), box), c, s).apex;
}

NatTrans gamma2_map(const Presheaf & container, const vector<size_t> & u, size_t target_size)
{
    NatTrans result;
    for (ObjectId x = 0; x < container.category().object_count(); ++x) {
        auto n = container.size(x);
        result.components.emplace_back();
        for (size_t i = 0; i < u.size(); ++i)
            for (ElementId e = 0; e < n; ++e) {
                if (u[i] >= target_size)
                    throw Error(ErrorKind::InternalInvariant, "gamma2_map: function leaves its codomain");
                result.components.back().push_back(u[i] * n + e);
            }
    }
    return result;
}

optional<SplitIdempotent> terminal_split(const CategoryPtr & c)
{
    auto completion = cauchy_completion(c);
    auto terminal = terminal_objects(*completion.category);
    if (terminal.empty())
        return std::nullopt;
    return completion.splits[terminal.front()];
}

Presheaf gamma_minus2(const CategoryPtr & base, const vector<string> & s, const SearchBudget & budget)
{
    auto split = terminal_split(base);
    if (! split)
        throw Refusal(ErrorKind::NotLocal, "the Cauchy completion has no terminal object, so there is no right adjoint to global sections");
    auto & c = *base;
    auto e = exponents(c, *split);
    NodeCounter counter(budget, "gamma_-2 carrier construction");
    const size_t k = s.size();

    vector<vector<string>> elements(c.object_count());
    for (ObjectId x = 0; x < c.object_count(); ++x) {
        const size_t m = e[x].size();
        Function digits(m, 0);
        const size_t total = power(k, m, budget.max_nodes);
        for (size_t index = 0; index < total; ++index) {
            counter.tick();
            string name = "[";
            for (size_t j = 0, rest = index; j < m; ++j) {
                digits[m - 1 - j] = rest % k;
                rest /= k;
            }
            for (size_t j = 0; j < m; ++j)
                name += (j ? "," : "") + c.morphism_name(e[x][j]) + "->" + s[digits[j]];
            elements[x].push_back(name + "]");
        }
    }

    vector<vector<ElementId>> action(c.morphism_count());
    for (MorphismId g = 0; g < c.morphism_count(); ++g) {
        auto a = c.dom(g), b = c.cod(g);
        // Position in E(b) of g∘h for each h ∈ E(a).
        vector<size_t> position;
        for (auto h : e[a]) {
            auto gh = c.compose(g, h);
            position.push_back(size_t(std::find(e[b].begin(), e[b].end(), gh) - e[b].begin()));
        }
        const size_t mb = e[b].size();
        for (size_t index = 0; index < elements[b].size(); ++index) {
            Function phi(mb);
            for (size_t j = 0, rest = index; j < mb; ++j) {
                phi[mb - 1 - j] = rest % k;
                rest /= k;
            }
            size_t image = 0;
            for (auto p : position)
                image = image * k + phi[p];
            action[g].push_back(image);
        }
    }
    return Presheaf(base, std::move(elements), std::move(action));
}

// ---------------------------------------------------------------------------

AxiomReport classify_axioms(const CategoryPtr & c, const SearchBudget & budget)
{
    AxiomReport report;
    auto completion = cauchy_completion(c);
    auto & cc = *completion.category;
    auto initial = initial_objects(cc);
    auto terminal = terminal_objects(cc);
    auto zero = zero_objects(cc);
    if (! initial.empty())
        report.initial = completion.splits[initial.front()];
    if (! terminal.empty())
        report.terminal = completion.splits[terminal.front()];
    if (! zero.empty())
        report.zero = completion.splits[zero.front()];
    report.ax2 = report.initial.has_value();
    report.ax_minus2 = report.terminal.has_value();
    report.ax_inf = report.zero.has_value();
    report.connected = is_connected_category(*c);

    if (report.ax2) {
        report.container = container_object(c);
        report.ax_inf_via_sections = ! global_sections(report.container->container, budget).empty();
    }

    if (report.ax_inf)
        report.string_length = "∞";
    else if (report.ax2 && report.ax_minus2)
        report.string_length = "5";
    else if (report.ax2 || report.ax_minus2)
        report.string_length = "4";
    else
        report.string_length = "3";

    if (report.ax_inf != report.ax_inf_via_sections)
        report.notes.push_back("zero-object and global-section routes to Ax(inf) disagree");
    report.notes.push_back("Ax(3) and Ax(-3) are reported equal to Ax(inf)");
    report.notes.push_back("strict non-implications between the axioms are not refutable at finite scale");
    return report;
}

DualityReport duality_check(const CategoryPtr & c, const SearchBudget & budget)
{
    DualityReport report{classify_axioms(c, budget), classify_axioms(opposite(*c), budget), false};
    report.holds = report.forward.ax2 == report.opposite.ax_minus2 && report.forward.ax_minus2 == report.opposite.ax2;
    return report;
}

Reflection connected_reflection(const Presheaf & x, const SearchBudget & budget)
{
    auto box = require_container(x.base()).container;
    auto & c = x.category();
    auto components = pi0(x);
    const size_t k = components.count;
    auto copies = coproduct(vector<Presheaf>(k, box), x.base()).apex;

    // γ₂ of the unique map γ₁X → 1.
    NatTrans collapse;
    for (ObjectId o = 0; o < c.object_count(); ++o) {
        collapse.components.emplace_back();
        for (size_t i = 0; i < k; ++i)
            for (ElementId e = 0; e < box.size(o); ++e)
                collapse.components.back().push_back(e);
    }

    // Counit: copy i goes to component i along the unique □ → X landing there.
    auto [x0, e0] = base_point(box);
    vector<optional<NatTrans>> into_component(k);
    for_each_hom(box, x, budget, [&, x0 = x0, e0 = e0](const NatTrans & alpha) {
        auto & slot = into_component[components.component_of[x0][alpha(x0, e0)]];
        if (slot)
            throw Error(ErrorKind::InternalInvariant, "two maps from the container into one component");
        slot = alpha;
        return true;
    });
    NatTrans counit;
    for (ObjectId o = 0; o < c.object_count(); ++o) {
        counit.components.emplace_back();
        for (size_t i = 0; i < k; ++i) {
            if (! into_component[i])
                throw Error(ErrorKind::InternalInvariant, "a component receives no map from the container");
            for (ElementId e = 0; e < box.size(o); ++e)
                counit.components.back().push_back((*into_component[i])(o, e));
        }
    }

    auto cone = pushout(box, copies, x, collapse, counit);
    return {std::move(cone.apex), std::move(cone.legs[2])};
}

// ---------------------------------------------------------------------------

Battery build_battery(const CategoryPtr & c, const vector<BatteryItem> & extras, const SearchBudget & budget)
{
    Battery core;
    for (ObjectId x = 0; x < c->object_count(); ++x)
        core.push_back({"y(" + c->object_name(x) + ")", yoneda(c, x)});
    core.push_back({"1", terminal_presheaf(c)});
    core.push_back({"0", initial_presheaf(c)});
    core.push_back({"Ω", omega(c, budget)});
    if (auto witness = container_object(c))
        core.push_back({"□", witness->container});

    Battery battery = core;
    for (size_t i = 0; i < core.size(); ++i)
        for (size_t j = i; j < core.size(); ++j)
            battery.push_back({core[i].name + "×" + core[j].name, product(core[i].presheaf, core[j].presheaf, budget)});
    for (size_t i = 0; i < core.size(); ++i)
        for (size_t j = i; j < core.size(); ++j)
            battery.push_back({core[i].name + "+" + core[j].name, coproduct(core[i].presheaf, core[j].presheaf)});
    for (auto & extra : extras) {
        if (! same_category(extra.presheaf.base(), c))
            throw Error(ErrorKind::WrongBase, "battery presheaf '" + extra.name + "' is over a different base");
        battery.push_back(extra);
    }
    return battery;
}

CheckList container_properties(const CategoryPtr & c, const Battery & battery, const SearchBudget & budget)
{
    auto box = require_container(c).container;
    CheckList checks;

    checks.add("container connected", pi0(box).count == 1);
    checks.add("container not initial", ! box.is_empty());
    auto endo = count_homs(box, box, budget);
    checks.add("container rigid", endo == 1, endo == 1 ? "" : "|End| = " + std::to_string(endo));

    string unique_witness, nonempty_witness;
    for (auto & item : battery) {
        auto n = count_homs(box, item.presheaf, budget);
        bool connected = pi0(item.presheaf).count == 1;
        if (connected && n != 1 && unique_witness.empty())
            unique_witness = item.name + ": " + std::to_string(n) + " maps";
        if ((n > 0) == item.presheaf.is_empty() && nonempty_witness.empty())
            nonempty_witness = item.name;
    }
    checks.add("unique map to connected objects", unique_witness.empty(), unique_witness);
    checks.add("maps exist exactly to non-initial objects", nonempty_witness.empty(), nonempty_witness);

    auto subs = subpresheaf_masks(box, budget).size();
    checks.add("container is an atom", subs == 2, subs == 2 ? "" : std::to_string(subs) + " subobjects");
    auto omega_components = pi0(omega(c, budget)).count;
    checks.add("pi0(Omega) = 2", omega_components == 2, omega_components == 2 ? "" : std::to_string(omega_components));

    // Lifting against the sampled epis X ⊔ X → X and X → 1.
    string lift_witness;
    auto lifts = [&](const Presheaf & source, const Presheaf & target, const NatTrans & p) {
        std::set<vector<vector<ElementId>>> reached;
        for (auto & beta : hom_set(box, source, budget))
            reached.insert(compose(p, beta).components);
        for (auto & alpha : hom_set(box, target, budget))
            if (! reached.contains(alpha.components))
                return false;
        return true;
    };
    for (auto & item : battery) {
        if (! lift_witness.empty())
            break;
        auto & x = item.presheaf;
        auto sum = coproduct(vector<Presheaf>{x, x}, c);
        NatTrans fold;
        for (ObjectId o = 0; o < c->object_count(); ++o) {
            fold.components.emplace_back();
            for (size_t copy = 0; copy < 2; ++copy)
                for (ElementId e = 0; e < x.size(o); ++e)
                    fold.components.back().push_back(e);
        }
        if (! lifts(sum.apex, x, fold))
            lift_witness = "codiagonal of " + item.name;
        auto sizes = x.carrier_sizes();
        if (std::all_of(sizes.begin(), sizes.end(), [](size_t n) { return n > 0; })) {
            auto one = terminal_presheaf(c);
            NatTrans bang;
            for (auto n : sizes)
                bang.components.emplace_back(n, 0);
            if (! lifts(x, one, bang) && lift_witness.empty())
                lift_witness = item.name + " -> 1";
        }
    }
    checks.add("container projective against sampled epis", lift_witness.empty(), lift_witness);

    auto completion = cauchy_completion(c);
    if (! zero_objects(*completion.category).empty()) {
        string witness;
        for (auto & item : battery) {
            auto components = pi0(item.presheaf).count;
            auto sections = global_sections(item.presheaf, budget).size();
            if (components != sections && witness.empty())
                witness = item.name + ": pi0 " + std::to_string(components) + ", sections " + std::to_string(sections);
        }
        checks.add("pi0 = global sections on battery", witness.empty(), witness);
    }
    return checks;
}

CheckList reflection_checks(const Presheaf & x, const Battery & battery, const SearchBudget & budget)
{
    CheckList checks;
    auto r = connected_reflection(x, budget);
    checks.add("reflection connected", pi0(r.reflected).count == 1);
    checks.add("reflection unit natural", is_natural(x, r.reflected, r.unit));
    string witness;
    size_t skipped = 0;
    for (auto & item : battery) {
        if (pi0(item.presheaf).count != 1)
            continue;
        try {
            // β ↦ β∘η must be a bijection hom(X̄, Y) → hom(X, Y).
            std::set<vector<vector<ElementId>>> images;
            size_t from_reflection = 0;
            for_each_hom(r.reflected, item.presheaf, budget, [&](const NatTrans & beta) {
                ++from_reflection;
                images.insert(compose(beta, r.unit).components);
                return true;
            });
            auto direct = count_homs(x, item.presheaf, budget);
            if ((images.size() != from_reflection || from_reflection != direct) && witness.empty())
                witness = item.name + ": " + std::to_string(from_reflection) + " vs " + std::to_string(direct);
        }
        catch (const SizeGuardExceeded &) {
            ++skipped;
        }
    }
    checks.add("reflection universal against connected battery", witness.empty(),
        witness.empty() && skipped ? std::to_string(skipped) + " skipped by size guard" : witness);
    return checks;
}

CheckList preservation_report(const CategoryPtr & c, const Battery & battery, const SearchBudget & budget)
{
    auto box = require_container(c).container;
    CheckList checks;
    checks.add("pi0 preserves terminal", pi0(terminal_presheaf(c)).count == 1);

    vector<Components> components;
    for (auto & item : battery)
        components.push_back(pi0(item.presheaf));

    string product_witness;
    for (size_t i = 0; i < battery.size() && product_witness.empty(); ++i)
        for (size_t j = i; j < battery.size(); ++j) {
            auto cone = product({battery[i].presheaf, battery[j].presheaf}, c, budget);
            auto pc = pi0(cone.apex);
            auto left = pi0_map(pc, components[i], cone.legs[0]);
            auto right = pi0_map(pc, components[j], cone.legs[1]);
            std::set<std::pair<size_t, size_t>> image;
            for (size_t k = 0; k < pc.count; ++k)
                image.emplace(left[k], right[k]);
            if (image.size() != pc.count || pc.count != components[i].count * components[j].count) {
                product_witness = battery[i].name + " × " + battery[j].name;
                break;
            }
        }
    checks.add("pi0 preserves binary products", product_witness.empty(), product_witness);

    // Parallel pairs P ⇉ Q for Q ∈ {P, 1, Ω}, sampled from the first few maps.
    string equalizer_witness;
    auto omega_item = std::find_if(battery.begin(), battery.end(), [](auto & item) { return item.name == "Ω"; });
    for (size_t i = 0; i < battery.size() && equalizer_witness.empty(); ++i) {
        auto & p = battery[i].presheaf;
        vector<const BatteryItem *> targets{&battery[i]};
        if (omega_item != battery.end())
            targets.push_back(&*omega_item);
        for (auto * target : targets) {
            auto & q = target->presheaf;
            auto qc = pi0(q);
            auto maps = first_homs(p, q, 4, budget);
            for (size_t a = 0; a < maps.size(); ++a)
                for (size_t b = a + 1; b < maps.size(); ++b) {
                    auto cone = equalizer(p, q, maps[a], maps[b], budget);
                    auto ec = pi0(cone.apex);
                    auto inclusion = pi0_map(ec, components[i], cone.legs[0]);
                    auto fa = pi0_map(components[i], qc, maps[a]);
                    auto fb = pi0_map(components[i], qc, maps[b]);
                    std::set<size_t> expected, image(inclusion.begin(), inclusion.end());
                    for (size_t k = 0; k < components[i].count; ++k)
                        if (fa[k] == fb[k])
                            expected.insert(k);
                    bool ok = image.size() == inclusion.size() && image == expected
                        && count_homs(box, cone.apex, budget) == ec.count;
                    if (! ok && equalizer_witness.empty())
                        equalizer_witness = "equalizer of maps " + std::to_string(a) + ", " + std::to_string(b) + " : "
                            + battery[i].name + " -> " + target->name;
                }
        }
    }
    checks.add("pi0 preserves equalizers", equalizer_witness.empty(), equalizer_witness);
    return checks;
}

// ---------------------------------------------------------------------------

namespace {
    struct Prepared {
        Components components;
        vector<GlobalSection> sections;
        std::map<GlobalSection, size_t> section_index;
        vector<NatTrans> endomorphisms;
    };

    Prepared prepare(const Presheaf & p, const SearchBudget & budget)
    {
        Prepared result{pi0(p), global_sections(p, budget), {}, first_homs(p, p, 3, budget)};
        for (size_t i = 0; i < result.sections.size(); ++i)
            result.section_index[result.sections[i]] = i;
        return result;
    }

    /// Γ(h) for h : P → P.
    Function sections_map(const Prepared & prepared, const NatTrans & h)
    {
        Function result;
        for (auto & sigma : prepared.sections) {
            GlobalSection image(sigma.size());
            for (size_t x = 0; x < sigma.size(); ++x)
                image[x] = h(x, sigma[x]);
            result.push_back(prepared.section_index.at(image));
        }
        return result;
    }

    /// Enumerates hom(source, target), checks the count against `expected`
    /// and that `transpose` is injective, then runs the naturality probes on
    /// the first few maps. Returns false when skipped by the size guard.
    template <typename Transpose, typename Probe>
    bool verify_instance(AdjunctionTally & tally, const string & label, const Presheaf & source, const Presheaf & target,
        size_t expected, size_t cap, const SearchBudget & budget, Transpose transpose, Probe probe)
    {
        if (expected > cap)
            return false;
        vector<NatTrans> maps;
        try {
            maps = hom_set(source, target, budget);
        }
        catch (const SizeGuardExceeded &) {
            return false;
        }
        std::set<Function> transposes;
        for (auto & alpha : maps)
            transposes.insert(transpose(alpha));
        if (maps.size() != expected || transposes.size() != maps.size())
            tally.violations.push_back(label + ": " + std::to_string(maps.size()) + " maps, " + std::to_string(transposes.size())
                + " transposes, expected " + std::to_string(expected));
        for (size_t i = 0; i < std::min<size_t>(maps.size(), 3); ++i)
            probe(maps[i]);
        return true;
    }
}

AdjunctionReport verify_adjunctions(const CategoryPtr & c, const Battery & battery, size_t max_set_size, size_t cap,
    const SearchBudget & budget)
{
    AdjunctionReport report;
    for (auto name : {"gamma2 -| gamma1", "gamma1 -| gamma0", "gamma0 -| Gamma", "Gamma -| gamma-2"})
        report.tallies.push_back({name, 0, 0, 0, {}});
    auto & left2 = report.tallies[0];
    auto & pi0_const = report.tallies[1];
    auto & const_sections = report.tallies[2];
    auto & sections_right = report.tallies[3];

    auto witness = container_object(c);
    auto split = terminal_split(c);
    const size_t objects = c->object_count();

    vector<Prepared> prepared;
    vector<bool> usable;
    for (auto & item : battery) {
        try {
            prepared.push_back(prepare(item.presheaf, budget));
            usable.push_back(true);
        }
        catch (const SizeGuardExceeded &) {
            prepared.push_back({});
            usable.push_back(false);
        }
    }

    auto tally_instance = [](AdjunctionTally & tally, bool checked) { ++(checked ? tally.checked : tally.skipped); };
    auto note = [](AdjunctionTally & tally, bool ok, const string & what) {
        ++tally.naturality_checks;
        if (! ok)
            tally.violations.push_back("naturality: " + what);
    };

    for (size_t n = 0; n <= max_set_size; ++n) {
        auto s = set_of_size(n);
        auto functions = sample_functions(n);
        auto constant = constant_presheaf(c, s);
        optional<Presheaf> copower, exponential;
        if (witness)
            copower = gamma2(c, s);
        optional<vector<vector<MorphismId>>> e;
        size_t e1_position = 0;
        if (split) {
            try {
                exponential = gamma_minus2(c, s, budget);
            }
            catch (const SizeGuardExceeded &) {
            }
            e = exponents(*c, *split);
            auto & at = (*e)[split->carrier];
            e1_position = size_t(std::find(at.begin(), at.end(), split->idempotent) - at.begin());
        }

        for (size_t b = 0; b < battery.size(); ++b) {
            auto & item = battery[b];
            auto & p = item.presheaf;
            if (! usable[b]) {
                for (auto & tally : report.tallies)
                    ++tally.skipped;
                continue;
            }
            auto & pp = prepared[b];
            auto label = item.name + ", " + set_name(n);

            // γ₂S → P  ↔  S → π₀P
            if (copower) {
                auto & box = witness->container;
                auto [x0, e0] = base_point(box);
                auto transpose = [&, x0 = x0, e0 = e0](const NatTrans & alpha) {
                    Function f;
                    for (size_t i = 0; i < n; ++i)
                        f.push_back(pp.components.component_of[x0][alpha(x0, i * box.size(x0) + e0)]);
                    return f;
                };
                bool checked = verify_instance(left2, label, *copower, p, power(pp.components.count, n, cap), cap, budget, transpose,
                    [&](const NatTrans & alpha) {
                        for (auto & h : pp.endomorphisms)
                            note(left2, transpose(compose(h, alpha)) == compose_functions(pi0_map(pp.components, pp.components, h), transpose(alpha)),
                                label + " in P");
                        for (auto & u : functions)
                            note(left2, transpose(compose(alpha, gamma2_map(box, u, n))) == compose_functions(transpose(alpha), u), label + " in S");
                    });
                tally_instance(left2, checked);
            }

            // P → γ₀S  ↔  π₀P → S
            {
                auto transpose = [&](const NatTrans & alpha) {
                    Function f;
                    for (auto [x, e] : pp.components.representative)
                        f.push_back(alpha(x, e));
                    return f;
                };
                bool checked = verify_instance(pi0_const, label, p, constant, power(n, pp.components.count, cap), cap, budget, transpose,
                    [&](const NatTrans & alpha) {
                        for (auto & h : pp.endomorphisms)
                            note(pi0_const, transpose(compose(alpha, h)) == compose_functions(transpose(alpha), pi0_map(pp.components, pp.components, h)),
                                label + " in P");
                        for (auto & u : functions) {
                            NatTrans gu{vector<vector<ElementId>>(objects, u)};
                            note(pi0_const, transpose(compose(gu, alpha)) == compose_functions(u, transpose(alpha)), label + " in S");
                        }
                    });
                tally_instance(pi0_const, checked);
            }

            // γ₀S → P  ↔  S → ΓP
            {
                auto transpose = [&](const NatTrans & alpha) {
                    Function f;
                    for (size_t i = 0; i < n; ++i) {
                        GlobalSection sigma(objects);
                        for (ObjectId x = 0; x < objects; ++x)
                            sigma[x] = alpha(x, i);
                        auto found = pp.section_index.find(sigma);
                        f.push_back(found == pp.section_index.end() ? pp.sections.size() : found->second);
                    }
                    return f;
                };
                bool checked = verify_instance(const_sections, label, constant, p, power(pp.sections.size(), n, cap), cap, budget, transpose,
                    [&](const NatTrans & alpha) {
                        for (auto & h : pp.endomorphisms)
                            note(const_sections, transpose(compose(h, alpha)) == compose_functions(sections_map(pp, h), transpose(alpha)),
                                label + " in P");
                        for (auto & u : functions) {
                            NatTrans gu{vector<vector<ElementId>>(objects, u)};
                            note(const_sections, transpose(compose(alpha, gu)) == compose_functions(transpose(alpha), u), label + " in S");
                        }
                    });
                tally_instance(const_sections, checked);
            }

            // P → γ₋₂S  ↔  ΓP → S
            if (split) {
                if (! exponential) {
                    ++sections_right.skipped;
                    continue;
                }
                const size_t c1 = split->carrier;
                const size_t m = (*e)[c1].size();
                auto evaluate = [&](size_t phi) {
                    // Digit of e₁ in the lexicographic numbering of S^E(c₁).
                    for (size_t j = m - 1; j > e1_position; --j)
                        phi /= n;
                    return phi % n;
                };
                auto transpose = [&](const NatTrans & alpha) {
                    Function f;
                    for (auto & sigma : pp.sections)
                        f.push_back(evaluate(alpha(c1, sigma[c1])));
                    return f;
                };
                auto gamma_map = [&](const Function & u) {
                    NatTrans result;
                    for (ObjectId x = 0; x < objects; ++x) {
                        const size_t mx = (*e)[x].size();
                        result.components.emplace_back();
                        for (size_t index = 0; index < exponential->size(x); ++index) {
                            Function digits(mx);
                            for (size_t j = 0, rest = index; j < mx; ++j) {
                                digits[mx - 1 - j] = rest % n;
                                rest /= n;
                            }
                            size_t image = 0;
                            for (auto d : digits)
                                image = image * n + u[d];
                            result.components.back().push_back(image);
                        }
                    }
                    return result;
                };
                bool checked = verify_instance(sections_right, label, p, *exponential, power(n, pp.sections.size(), cap), cap, budget,
                    transpose, [&](const NatTrans & alpha) {
                        for (auto & h : pp.endomorphisms)
                            note(sections_right, transpose(compose(alpha, h)) == compose_functions(transpose(alpha), sections_map(pp, h)),
                                label + " in P");
                        for (auto & u : functions)
                            note(sections_right, transpose(compose(gamma_map(u), alpha)) == compose_functions(u, transpose(alpha)),
                                label + " in S");
                    });
                tally_instance(sections_right, checked);
            }
        }
    }

    auto summarize = [&](const AdjunctionTally & tally, bool exists, const char * reason) {
        if (! exists) {
            report.checks.refuse(tally.name, reason);
            return;
        }
        string witness = tally.violations.empty()
            ? std::to_string(tally.checked) + " checked, " + std::to_string(tally.skipped) + " skipped by size guard"
            : tally.violations.front();
        report.checks.add(tally.name, tally.violations.empty(), witness);
    };
    summarize(left2, witness.has_value(), "no container object");
    summarize(pi0_const, true, "");
    summarize(const_sections, true, "");
    summarize(sections_right, split.has_value(), "no terminal object in the Cauchy completion");
    return report;
}

} // namespace cctopos
