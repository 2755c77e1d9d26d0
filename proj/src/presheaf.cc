#include <cctopos/presheaf.hh>
#include <cctopos/union_find.hh>

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>

namespace cctopos {

using std::optional;
using std::size_t;
using std::string;
using std::vector;

namespace {
    [[noreturn]] void fail(ErrorKind kind, const string & message)
    {
        throw Error(kind, message);
    }

    constexpr size_t unassigned = std::numeric_limits<size_t>::max();

    string join(const vector<string> & parts, const char * sep)
    {
        string out;
        for (size_t i = 0; i < parts.size(); ++i)
            out += (i ? sep : "") + parts[i];
        return out;
    }
}

// ---------------------------------------------------------------------------

Presheaf::Presheaf(CategoryPtr base, vector<vector<string>> elements, vector<vector<ElementId>> action) :
    _base(std::move(base)),
    _elements(std::move(elements)),
    _action(std::move(action))
{
    auto & c = *_base;
    if (_elements.size() != c.object_count() || _action.size() != c.morphism_count())
        fail(ErrorKind::MissingAction, "presheaf tables do not match the base category");
    for (ObjectId x = 0; x < c.object_count(); ++x) {
        std::set<string> seen(_elements[x].begin(), _elements[x].end());
        if (seen.size() != _elements[x].size())
            fail(ErrorKind::DuplicateName, "duplicate element name at object '" + c.object_name(x) + "'");
    }
    for (MorphismId f = 0; f < c.morphism_count(); ++f) {
        if (_action[f].size() != size(c.cod(f)))
            fail(ErrorKind::MissingAction, "action of '" + c.morphism_name(f) + "' is not total");
        for (auto y : _action[f])
            if (y >= size(c.dom(f)))
                fail(ErrorKind::UnknownElement, "action of '" + c.morphism_name(f) + "' leaves the carrier");
    }
    for (ObjectId x = 0; x < c.object_count(); ++x)
        for (ElementId e = 0; e < size(x); ++e)
            if (act(c.identity(x), e) != e)
                fail(ErrorKind::NotFunctorial, "identity '" + c.morphism_name(c.identity(x)) + "' does not act trivially on '" + _elements[x][e] + "'");
    for (MorphismId f = 0; f < c.morphism_count(); ++f)
        for (MorphismId g : c.out_of(c.cod(f))) {
            auto gf = c.compose(g, f);
            for (ElementId e = 0; e < size(c.cod(g)); ++e)
                if (act(gf, e) != act(f, act(g, e)))
                    fail(ErrorKind::NotFunctorial, "action is not functorial on the pair (" + c.morphism_name(g) + ", " + c.morphism_name(f)
                            + "): x·(" + c.morphism_name(g) + "∘" + c.morphism_name(f) + ") ≠ (x·" + c.morphism_name(g) + ")·"
                            + c.morphism_name(f) + " for x = '" + _elements[c.cod(g)][e] + "'");
        }
}

size_t Presheaf::total_size() const
{
    size_t total = 0;
    for (auto & e : _elements)
        total += e.size();
    return total;
}

vector<size_t> Presheaf::carrier_sizes() const
{
    vector<size_t> sizes;
    for (auto & e : _elements)
        sizes.push_back(e.size());
    return sizes;
}

optional<ElementId> Presheaf::find_element(ObjectId c, std::string_view name) const
{
    auto & e = _elements.at(c);
    auto i = std::find(e.begin(), e.end(), name);
    if (i == e.end())
        return std::nullopt;
    return ElementId(i - e.begin());
}

bool Presheaf::operator==(const Presheaf & other) const
{
    return same_category(_base, other._base) && _elements == other._elements && _action == other._action;
}

bool same_base(const Presheaf & p, const Presheaf & q)
{
    return same_category(p.base(), q.base());
}

Presheaf validate_presheaf(const CategoryPtr & base, const RawPresheaf & raw)
{
    auto & c = *base;
    vector<vector<string>> elements(c.object_count());
    vector<bool> listed(c.object_count(), false);
    for (auto & carrier : raw.carriers) {
        auto x = c.find_object(carrier.object);
        if (! x)
            fail(ErrorKind::UnknownObject, "unknown object '" + carrier.object + "'");
        if (listed[*x])
            fail(ErrorKind::DuplicateName, "carrier of '" + carrier.object + "' given twice");
        listed[*x] = true;
        std::set<string> seen;
        for (auto & e : carrier.elements)
            if (! seen.insert(e).second)
                fail(ErrorKind::DuplicateName, "duplicate element '" + e + "' at '" + carrier.object + "'");
        elements[*x] = carrier.elements;
    }

    auto element = [&](ObjectId x, const string & name) {
        auto & e = elements[x];
        auto i = std::find(e.begin(), e.end(), name);
        if (i == e.end())
            fail(ErrorKind::UnknownElement, "'" + name + "' is not an element at '" + c.object_name(x) + "'");
        return ElementId(i - e.begin());
    };

    vector<vector<ElementId>> action(c.morphism_count());
    vector<bool> mentioned(c.morphism_count(), false);
    for (MorphismId f = 0; f < c.morphism_count(); ++f)
        action[f].assign(elements[c.cod(f)].size(), unassigned);
    for (auto & entry : raw.actions) {
        auto f = c.find_morphism(entry.morphism);
        if (! f)
            fail(ErrorKind::UnknownMorphism, "unknown morphism '" + entry.morphism + "'");
        auto from = element(c.cod(*f), entry.from);
        auto to = element(c.dom(*f), entry.to);
        auto & slot = action[*f][from];
        if (slot != unassigned && slot != to)
            fail(ErrorKind::NotFunctorial, "action of '" + entry.morphism + "' on '" + entry.from + "' given twice with different values");
        slot = to;
        mentioned[*f] = true;
    }
    for (ObjectId x = 0; x < c.object_count(); ++x) {
        auto id = c.identity(x);
        for (ElementId e = 0; e < elements[x].size(); ++e) {
            if (action[id][e] != unassigned && action[id][e] != e)
                fail(ErrorKind::NotFunctorial, "identity '" + c.morphism_name(id) + "' must act trivially");
            action[id][e] = e;
        }
        mentioned[id] = true;
    }

    auto complete = [&](MorphismId f) {
        return std::none_of(action[f].begin(), action[f].end(), [](auto v) { return v == unassigned; });
    };
    for (MorphismId f = 0; f < c.morphism_count(); ++f)
        if (mentioned[f] && ! complete(f))
            fail(ErrorKind::MissingAction, "action of '" + c.morphism_name(f) + "' is missing for some elements");

    // Fill unmentioned morphisms from factorisations h = g∘f through known actions.
    bool progress = true;
    while (progress) {
        progress = false;
        for (MorphismId f = 0; f < c.morphism_count(); ++f) {
            if (! mentioned[f])
                continue;
            for (MorphismId g : c.out_of(c.cod(f))) {
                if (! mentioned[g])
                    continue;
                auto h = c.compose(g, f);
                if (mentioned[h])
                    continue;
                for (ElementId e = 0; e < elements[c.cod(h)].size(); ++e)
                    action[h][e] = action[f][action[g][e]];
                mentioned[h] = true;
                progress = true;
            }
        }
    }
    for (MorphismId f = 0; f < c.morphism_count(); ++f)
        if (! complete(f))
            fail(ErrorKind::MissingAction, "no action given for '" + c.morphism_name(f) + "'");

    return Presheaf(base, std::move(elements), std::move(action));
}

// ---------------------------------------------------------------------------

bool is_natural(const Presheaf & source, const Presheaf & target, const NatTrans & alpha)
{
    try {
        check_natural(source, target, alpha);
        return true;
    }
    catch (const Error &) {
        return false;
    }
}

void check_natural(const Presheaf & source, const Presheaf & target, const NatTrans & alpha)
{
    if (! same_base(source, target))
        fail(ErrorKind::WrongBase, "natural transformation between presheaves on different bases");
    auto & c = source.category();
    if (alpha.components.size() != c.object_count())
        fail(ErrorKind::NotNatural, "wrong number of components");
    for (ObjectId x = 0; x < c.object_count(); ++x) {
        if (alpha.components[x].size() != source.size(x))
            fail(ErrorKind::NotNatural, "component at '" + c.object_name(x) + "' is not total");
        for (auto y : alpha.components[x])
            if (y >= target.size(x))
                fail(ErrorKind::NotNatural, "component at '" + c.object_name(x) + "' leaves the target");
    }
    for (MorphismId f = 0; f < c.morphism_count(); ++f)
        for (ElementId e = 0; e < source.size(c.cod(f)); ++e)
            if (alpha(c.dom(f), source.act(f, e)) != target.act(f, alpha(c.cod(f), e)))
                fail(ErrorKind::NotNatural, "naturality square for '" + c.morphism_name(f) + "' fails at '" + source.element_name(c.cod(f), e) + "'");
}

NatTrans identity_transformation(const Presheaf & p)
{
    NatTrans id;
    for (ObjectId x = 0; x < p.category().object_count(); ++x) {
        id.components.emplace_back(p.size(x));
        std::iota(id.components.back().begin(), id.components.back().end(), ElementId{0});
    }
    return id;
}

NatTrans compose(const NatTrans & beta, const NatTrans & alpha)
{
    NatTrans result;
    for (size_t x = 0; x < alpha.components.size(); ++x) {
        result.components.emplace_back();
        for (auto y : alpha.components[x])
            result.components.back().push_back(beta.components[x][y]);
    }
    return result;
}

bool is_epimorphism(const NatTrans & alpha, const Presheaf & target)
{
    for (ObjectId x = 0; x < target.category().object_count(); ++x) {
        std::set<ElementId> image(alpha.components[x].begin(), alpha.components[x].end());
        if (image.size() != target.size(x))
            return false;
    }
    return true;
}

bool is_monomorphism(const NatTrans & alpha)
{
    for (auto & component : alpha.components) {
        std::set<ElementId> image(component.begin(), component.end());
        if (image.size() != component.size())
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

Presheaf yoneda(const CategoryPtr & base, ObjectId target)
{
    auto & c = *base;
    if (target >= c.object_count())
        fail(ErrorKind::UnknownObject, "yoneda: object out of range");
    vector<vector<string>> elements(c.object_count());
    for (ObjectId x = 0; x < c.object_count(); ++x)
        for (auto g : c.hom(x, target))
            elements[x].push_back(c.morphism_name(g));
    vector<vector<ElementId>> action(c.morphism_count());
    for (MorphismId f = 0; f < c.morphism_count(); ++f) {
        auto & into_a = c.hom(c.dom(f), target);
        for (auto g : c.hom(c.cod(f), target)) {
            auto gf = c.compose(g, f);
            action[f].push_back(ElementId(std::find(into_a.begin(), into_a.end(), gf) - into_a.begin()));
        }
    }
    return Presheaf(base, std::move(elements), std::move(action));
}

Presheaf constant_presheaf(const CategoryPtr & base, const vector<string> & set)
{
    auto & c = *base;
    vector<vector<string>> elements(c.object_count(), set);
    vector<ElementId> id(set.size());
    std::iota(id.begin(), id.end(), ElementId{0});
    vector<vector<ElementId>> action(c.morphism_count(), id);
    return Presheaf(base, std::move(elements), std::move(action));
}

Presheaf terminal_presheaf(const CategoryPtr & base)
{
    return constant_presheaf(base, {"*"});
}

Presheaf initial_presheaf(const CategoryPtr & base)
{
    return constant_presheaf(base, {});
}

// ---------------------------------------------------------------------------

namespace {
    /// Backtracking over element images with forward propagation along every
    /// morphism into the element's object. With `injective` set, components
    /// must be injective, which finds isomorphisms when carrier sizes agree.
    class HomSearch {
    public:
        HomSearch(const Presheaf & p, const Presheaf & q, bool injective, const SearchBudget & budget) :
            _p(p),
            _q(q),
            _c(p.category()),
            _injective(injective),
            _counter(budget, "natural transformation search")
        {
            if (! same_base(p, q))
                fail(ErrorKind::WrongBase, "hom-set between presheaves on different bases");
            const size_t n = _c.object_count();
            _offset.resize(n + 1, 0);
            for (ObjectId x = 0; x < n; ++x)
                _offset[x + 1] = _offset[x] + p.size(x);
            _assigned.assign(_offset[n], unassigned);
            _used.resize(n);
            for (ObjectId x = 0; x < n; ++x)
                _used[x].assign(q.size(x), false);

            vector<ObjectId> objects(n);
            std::iota(objects.begin(), objects.end(), ObjectId{0});
            std::stable_sort(objects.begin(), objects.end(),
                [&](ObjectId a, ObjectId b) { return _c.into(a).size() > _c.into(b).size(); });
            for (auto x : objects)
                for (ElementId e = 0; e < p.size(x); ++e)
                    _order.emplace_back(x, e);
        }

        void run(const std::function<bool(const NatTrans &)> & visit)
        {
            _visit = &visit;
            for (ObjectId x = 0; x < _c.object_count(); ++x)
                if (_p.size(x) > 0 && _q.size(x) == 0)
                    return;
            search(0);
        }

    private:
        size_t var(ObjectId x, ElementId e) const { return _offset[x] + e; }

        bool set(ObjectId x, ElementId e, ElementId image)
        {
            auto & slot = _assigned[var(x, e)];
            if (slot != unassigned)
                return slot == image;
            if (_injective && _used[x][image])
                return false;
            slot = image;
            if (_injective)
                _used[x][image] = true;
            _trail.emplace_back(x, e);
            return true;
        }

        bool decide(ObjectId x, ElementId e, ElementId image)
        {
            if (! set(x, e, image))
                return false;
            for (auto f : _c.into(x)) {
                if (_c.is_identity(f))
                    continue;
                if (! set(_c.dom(f), _p.act(f, e), _q.act(f, image)))
                    return false;
            }
            return true;
        }

        void undo(size_t mark)
        {
            while (_trail.size() > mark) {
                auto [x, e] = _trail.back();
                _trail.pop_back();
                auto & slot = _assigned[var(x, e)];
                if (_injective)
                    _used[x][slot] = false;
                slot = unassigned;
            }
        }

        void search(size_t pos)
        {
            while (pos < _order.size() && _assigned[var(_order[pos].first, _order[pos].second)] != unassigned)
                ++pos;
            if (pos == _order.size()) {
                NatTrans alpha;
                for (ObjectId x = 0; x < _c.object_count(); ++x)
                    alpha.components.emplace_back(_assigned.begin() + _offset[x], _assigned.begin() + _offset[x + 1]);
                if (! (*_visit)(alpha))
                    _stopped = true;
                return;
            }
            auto [x, e] = _order[pos];
            for (ElementId image = 0; image < _q.size(x) && ! _stopped; ++image) {
                _counter.tick();
                auto mark = _trail.size();
                if (decide(x, e, image))
                    search(pos + 1);
                undo(mark);
            }
        }

        const Presheaf & _p;
        const Presheaf & _q;
        const FinCategory & _c;
        bool _injective;
        NodeCounter _counter;
        vector<size_t> _offset;
        vector<size_t> _assigned;
        vector<vector<bool>> _used;
        vector<std::pair<ObjectId, ElementId>> _order;
        vector<std::pair<ObjectId, ElementId>> _trail;
        const std::function<bool(const NatTrans &)> * _visit = nullptr;
        bool _stopped = false;
    };
}

void for_each_hom(const Presheaf & source, const Presheaf & target, const SearchBudget & budget,
    const std::function<bool(const NatTrans &)> & visit)
{
    HomSearch(source, target, false, budget).run(visit);
}

vector<NatTrans> hom_set(const Presheaf & source, const Presheaf & target, const SearchBudget & budget)
{
    vector<NatTrans> result;
    for_each_hom(source, target, budget, [&](const NatTrans & alpha) {
        result.push_back(alpha);
        return true;
    });
    return result;
}

size_t count_homs(const Presheaf & source, const Presheaf & target, const SearchBudget & budget)
{
    size_t count = 0;
    for_each_hom(source, target, budget, [&](const NatTrans &) {
        ++count;
        return true;
    });
    return count;
}

optional<NatTrans> first_hom(const Presheaf & source, const Presheaf & target, const SearchBudget & budget)
{
    optional<NatTrans> result;
    for_each_hom(source, target, budget, [&](const NatTrans & alpha) {
        result = alpha;
        return false;
    });
    return result;
}

optional<Isomorphism> is_isomorphic(const Presheaf & p, const Presheaf & q, const SearchBudget & budget)
{
    if (! same_base(p, q))
        fail(ErrorKind::WrongBase, "isomorphism test between presheaves on different bases");
    if (p.carrier_sizes() != q.carrier_sizes())
        return std::nullopt;
    optional<NatTrans> forward;
    HomSearch(p, q, true, budget).run([&](const NatTrans & alpha) {
        forward = alpha;
        return false;
    });
    if (! forward)
        return std::nullopt;
    NatTrans backward;
    for (ObjectId x = 0; x < p.category().object_count(); ++x) {
        backward.components.emplace_back(q.size(x));
        for (ElementId e = 0; e < p.size(x); ++e)
            backward.components[x][(*forward)(x, e)] = e;
    }
    return Isomorphism{std::move(*forward), std::move(backward)};
}

// ---------------------------------------------------------------------------

void validate_diagram(const Diagram & d)
{
    auto & shape = *d.shape;
    if (d.objects.size() != shape.object_count() || d.arrows.size() != shape.morphism_count())
        fail(ErrorKind::InvalidDiagram, "diagram does not match its shape");
    for (auto & p : d.objects)
        if (! same_category(p.base(), d.base))
            fail(ErrorKind::WrongBase, "diagram object over the wrong base");
    for (MorphismId s = 0; s < shape.morphism_count(); ++s)
        check_natural(d.objects[shape.dom(s)], d.objects[shape.cod(s)], d.arrows[s]);
    for (ObjectId i = 0; i < shape.object_count(); ++i)
        if (d.arrows[shape.identity(i)] != identity_transformation(d.objects[i]))
            fail(ErrorKind::InvalidDiagram, "diagram does not send '" + shape.morphism_name(shape.identity(i)) + "' to an identity");
    for (MorphismId s = 0; s < shape.morphism_count(); ++s)
        for (MorphismId t : shape.out_of(shape.cod(s)))
            if (d.arrows[shape.compose(t, s)] != compose(d.arrows[t], d.arrows[s]))
                fail(ErrorKind::InvalidDiagram, "diagram does not preserve " + shape.morphism_name(t) + " . " + shape.morphism_name(s));
}

Cone limit(const Diagram & d, const SearchBudget & budget)
{
    validate_diagram(d);
    auto & c = *d.base;
    auto & shape = *d.shape;
    const size_t k = shape.object_count();
    NodeCounter counter(budget, "limit construction");

    // Shape morphisms checked once both endpoints are chosen.
    vector<vector<MorphismId>> checks(k);
    for (MorphismId s = 0; s < shape.morphism_count(); ++s)
        if (! shape.is_identity(s))
            checks[std::max(shape.dom(s), shape.cod(s))].push_back(s);

    vector<vector<vector<ElementId>>> families(c.object_count());
    for (ObjectId x = 0; x < c.object_count(); ++x) {
        vector<ElementId> family(k);
        std::function<void(size_t)> extend = [&](size_t i) {
            if (i == k) {
                families[x].push_back(family);
                return;
            }
            for (ElementId e = 0; e < d.objects[i].size(x); ++e) {
                counter.tick();
                family[i] = e;
                bool ok = true;
                for (auto s : checks[i])
                    if (d.arrows[s](x, family[shape.dom(s)]) != family[shape.cod(s)]) {
                        ok = false;
                        break;
                    }
                if (ok)
                    extend(i + 1);
            }
        };
        extend(0);
    }

    vector<vector<string>> elements(c.object_count());
    vector<std::map<vector<ElementId>, ElementId>> index(c.object_count());
    for (ObjectId x = 0; x < c.object_count(); ++x)
        for (auto & family : families[x]) {
            vector<string> names;
            for (size_t i = 0; i < k; ++i)
                names.push_back(d.objects[i].element_name(x, family[i]));
            index[x][family] = elements[x].size();
            elements[x].push_back("(" + join(names, ",") + ")");
        }
    vector<vector<ElementId>> action(c.morphism_count());
    for (MorphismId f = 0; f < c.morphism_count(); ++f)
        for (auto & family : families[c.cod(f)]) {
            vector<ElementId> image(k);
            for (size_t i = 0; i < k; ++i)
                image[i] = d.objects[i].act(f, family[i]);
            action[f].push_back(index[c.dom(f)].at(image));
        }

    Cone cone{Presheaf(d.base, std::move(elements), std::move(action)), {}};
    for (size_t i = 0; i < k; ++i) {
        NatTrans leg;
        for (ObjectId x = 0; x < c.object_count(); ++x) {
            leg.components.emplace_back();
            for (auto & family : families[x])
                leg.components.back().push_back(family[i]);
        }
        cone.legs.push_back(std::move(leg));
    }
    return cone;
}

Cone colimit(const Diagram & d, const SearchBudget & budget)
{
    validate_diagram(d);
    auto & c = *d.base;
    auto & shape = *d.shape;
    const size_t k = shape.object_count();
    NodeCounter counter(budget, "colimit construction");

    vector<vector<string>> elements(c.object_count());
    // class_of[x][i][e]: class of e ∈ D_i(x); representative[x][cls] = (i, e).
    vector<vector<vector<ElementId>>> class_of(c.object_count(), vector<vector<ElementId>>(k));
    vector<vector<std::pair<size_t, ElementId>>> representative(c.object_count());
    for (ObjectId x = 0; x < c.object_count(); ++x) {
        vector<size_t> offset(k + 1, 0);
        for (size_t i = 0; i < k; ++i)
            offset[i + 1] = offset[i] + d.objects[i].size(x);
        UnionFind uf(offset[k]);
        for (MorphismId s = 0; s < shape.morphism_count(); ++s) {
            if (shape.is_identity(s))
                continue;
            for (ElementId e = 0; e < d.objects[shape.dom(s)].size(x); ++e) {
                counter.tick();
                uf.unite(offset[shape.dom(s)] + e, offset[shape.cod(s)] + d.arrows[s](x, e));
            }
        }
        std::map<size_t, ElementId> class_index;
        for (size_t i = 0; i < k; ++i)
            for (ElementId e = 0; e < d.objects[i].size(x); ++e) {
                auto root = uf.find(offset[i] + e);
                auto [it, fresh] = class_index.emplace(root, representative[x].size());
                if (fresh) {
                    representative[x].emplace_back(i, e);
                    elements[x].push_back(shape.object_name(i) + "." + d.objects[i].element_name(x, e));
                }
                class_of[x][i].push_back(it->second);
            }
    }

    vector<vector<ElementId>> action(c.morphism_count());
    for (MorphismId f = 0; f < c.morphism_count(); ++f)
        for (auto [i, e] : representative[c.cod(f)])
            action[f].push_back(class_of[c.dom(f)][i][d.objects[i].act(f, e)]);

    Cone cone{Presheaf(d.base, std::move(elements), std::move(action)), {}};
    for (size_t i = 0; i < k; ++i) {
        NatTrans leg;
        for (ObjectId x = 0; x < c.object_count(); ++x)
            leg.components.push_back(class_of[x][i]);
        cone.legs.push_back(std::move(leg));
    }
    return cone;
}

namespace {
    Diagram discrete_diagram(const vector<Presheaf> & objects, const CategoryPtr & base, const vector<string> & labels)
    {
        Diagram d{base, discrete_category(labels), objects, {}};
        for (auto & p : objects)
            d.arrows.push_back(identity_transformation(p));
        return d;
    }

    vector<string> default_labels(size_t n)
    {
        vector<string> labels;
        for (size_t i = 0; i < n; ++i)
            labels.push_back(std::to_string(i));
        return labels;
    }
}

Cone product(const vector<Presheaf> & factors, const CategoryPtr & base, const SearchBudget & budget)
{
    return limit(discrete_diagram(factors, base, default_labels(factors.size())), budget);
}

Presheaf product(const Presheaf & p, const Presheaf & q, const SearchBudget & budget)
{
    return product({p, q}, p.base(), budget).apex;
}

Cone coproduct(const vector<Presheaf> & summands, const CategoryPtr & base, const vector<string> & labels)
{
    return colimit(discrete_diagram(summands, base, labels.empty() ? default_labels(summands.size()) : labels));
}

Presheaf coproduct(const Presheaf & p, const Presheaf & q)
{
    return coproduct({p, q}, p.base()).apex;
}

Cone equalizer(const Presheaf & source, const Presheaf & target, const NatTrans & alpha, const NatTrans & beta, const SearchBudget & budget)
{
    auto shape = parallel_pair_shape();
    Diagram d{source.base(), shape, {source, target}, {}};
    d.arrows.resize(shape->morphism_count());
    d.arrows[shape->identity(0)] = identity_transformation(source);
    d.arrows[shape->identity(1)] = identity_transformation(target);
    d.arrows[shape->morphism("s")] = alpha;
    d.arrows[shape->morphism("t")] = beta;
    auto cone = limit(d, budget);
    cone.legs.resize(1);
    return cone;
}

Cone pushout(const Presheaf & left, const Presheaf & apex, const Presheaf & right, const NatTrans & to_left, const NatTrans & to_right)
{
    auto shape = span_shape();
    Diagram d{apex.base(), shape, {left, apex, right}, {}};
    d.arrows.resize(shape->morphism_count());
    d.arrows[shape->identity(0)] = identity_transformation(left);
    d.arrows[shape->identity(1)] = identity_transformation(apex);
    d.arrows[shape->identity(2)] = identity_transformation(right);
    d.arrows[shape->morphism("left")] = to_left;
    d.arrows[shape->morphism("right")] = to_right;
    return colimit(d);
}

// ---------------------------------------------------------------------------

Components pi0(const Presheaf & p)
{
    auto & c = p.category();
    vector<size_t> offset(c.object_count() + 1, 0);
    for (ObjectId x = 0; x < c.object_count(); ++x)
        offset[x + 1] = offset[x] + p.size(x);
    UnionFind uf(offset.back());
    for (MorphismId f = 0; f < c.morphism_count(); ++f)
        for (ElementId e = 0; e < p.size(c.cod(f)); ++e)
            uf.unite(offset[c.cod(f)] + e, offset[c.dom(f)] + p.act(f, e));

    Components result;
    std::map<size_t, size_t> index;
    result.component_of.resize(c.object_count());
    for (ObjectId x = 0; x < c.object_count(); ++x)
        for (ElementId e = 0; e < p.size(x); ++e) {
            auto [it, fresh] = index.emplace(uf.find(offset[x] + e), result.count);
            if (fresh) {
                ++result.count;
                result.representative.emplace_back(x, e);
            }
            result.component_of[x].push_back(it->second);
        }
    return result;
}

vector<size_t> pi0_map(const Components & source, const Components & target, const NatTrans & alpha)
{
    vector<size_t> result;
    for (auto [x, e] : source.representative)
        result.push_back(target.component_of[x][alpha(x, e)]);
    return result;
}

vector<GlobalSection> global_sections(const Presheaf & p, const SearchBudget & budget)
{
    auto & c = p.category();
    const size_t n = c.object_count();
    NodeCounter counter(budget, "global section search");
    vector<vector<MorphismId>> checks(n);
    for (MorphismId f = 0; f < c.morphism_count(); ++f)
        if (! c.is_identity(f))
            checks[std::max(c.dom(f), c.cod(f))].push_back(f);

    vector<GlobalSection> result;
    GlobalSection section(n);
    std::function<void(ObjectId)> extend = [&](ObjectId x) {
        if (x == n) {
            result.push_back(section);
            return;
        }
        for (ElementId e = 0; e < p.size(x); ++e) {
            counter.tick();
            section[x] = e;
            bool ok = true;
            for (auto f : checks[x])
                if (p.act(f, section[c.cod(f)]) != section[c.dom(f)]) {
                    ok = false;
                    break;
                }
            if (ok)
                extend(x + 1);
        }
    };
    extend(0);
    return result;
}

// ---------------------------------------------------------------------------

vector<ElementMask> subpresheaf_masks(const Presheaf & p, const SearchBudget & budget)
{
    auto & c = p.category();
    const size_t n = c.object_count();
    NodeCounter counter(budget, "subobject enumeration");
    vector<size_t> offset(n + 1, 0);
    for (ObjectId x = 0; x < n; ++x)
        offset[x + 1] = offset[x] + p.size(x);
    const size_t total = offset[n];
    vector<std::pair<ObjectId, ElementId>> element(total);
    vector<vector<size_t>> orbit(total);
    for (ObjectId x = 0; x < n; ++x)
        for (ElementId e = 0; e < p.size(x); ++e) {
            element[offset[x] + e] = {x, e};
            std::set<size_t> reach;
            for (auto f : c.into(x))
                reach.insert(offset[c.dom(f)] + p.act(f, e));
            orbit[offset[x] + e].assign(reach.begin(), reach.end());
        }

    enum : char { unknown, in, out };
    vector<char> state(total, unknown);
    vector<size_t> trail;
    vector<ElementMask> result;

    std::function<void(size_t)> search = [&](size_t i) {
        while (i < total && state[i] != unknown)
            ++i;
        if (i == total) {
            ElementMask mask(n);
            for (ObjectId x = 0; x < n; ++x)
                for (ElementId e = 0; e < p.size(x); ++e)
                    mask[x].push_back(state[offset[x] + e] == in);
            result.push_back(std::move(mask));
            return;
        }
        counter.tick();
        state[i] = out;
        search(i + 1);
        state[i] = unknown;

        counter.tick();
        auto mark = trail.size();
        bool ok = true;
        for (auto y : orbit[i]) {
            if (state[y] == out) {
                ok = false;
                break;
            }
            if (state[y] == unknown) {
                state[y] = in;
                trail.push_back(y);
            }
        }
        if (ok)
            search(i + 1);
        while (trail.size() > mark) {
            state[trail.back()] = unknown;
            trail.pop_back();
        }
    };
    search(0);
    return result;
}

Presheaf restrict_presheaf(const Presheaf & p, const ElementMask & mask)
{
    auto & c = p.category();
    vector<vector<string>> elements(c.object_count());
    vector<vector<ElementId>> renumber(c.object_count());
    for (ObjectId x = 0; x < c.object_count(); ++x)
        for (ElementId e = 0; e < p.size(x); ++e) {
            renumber[x].push_back(elements[x].size());
            if (mask[x][e])
                elements[x].push_back(p.element_name(x, e));
        }
    vector<vector<ElementId>> action(c.morphism_count());
    for (MorphismId f = 0; f < c.morphism_count(); ++f)
        for (ElementId e = 0; e < p.size(c.cod(f)); ++e)
            if (mask[c.cod(f)][e]) {
                auto image = p.act(f, e);
                if (! mask[c.dom(f)][image])
                    fail(ErrorKind::NotFunctorial, "mask is not closed under the action of '" + c.morphism_name(f) + "'");
                action[f].push_back(renumber[c.dom(f)][image]);
            }
    return Presheaf(p.base(), std::move(elements), std::move(action));
}

vector<Presheaf> subpresheaves(const Presheaf & p, const SearchBudget & budget)
{
    vector<Presheaf> result;
    for (auto & mask : subpresheaf_masks(p, budget))
        result.push_back(restrict_presheaf(p, mask));
    return result;
}

bool is_sieve(const FinCategory & c, ObjectId target, const Sieve & sieve)
{
    std::set<MorphismId> members(sieve.begin(), sieve.end());
    for (auto f : sieve) {
        if (f >= c.morphism_count() || c.cod(f) != target)
            return false;
        for (auto g : c.into(c.dom(f)))
            if (! members.contains(c.compose(f, g)))
                return false;
    }
    return true;
}

Sieve maximal_sieve(const FinCategory & c, ObjectId target)
{
    return c.into(target);
}

Sieve pullback_sieve(const FinCategory & c, MorphismId f, const Sieve & sieve)
{
    Sieve result;
    for (auto g : c.into(c.dom(f)))
        if (std::binary_search(sieve.begin(), sieve.end(), c.compose(f, g)))
            result.push_back(g);
    return result;
}

vector<Sieve> sieves_on(const FinCategory & c, ObjectId target, const SearchBudget & budget)
{
    auto base = std::shared_ptr<const FinCategory>(std::shared_ptr<const FinCategory>{}, &c);
    auto y = yoneda(base, target);
    vector<Sieve> result;
    for (auto & mask : subpresheaf_masks(y, budget)) {
        Sieve sieve;
        for (ObjectId x = 0; x < c.object_count(); ++x)
            for (size_t i = 0; i < mask[x].size(); ++i)
                if (mask[x][i])
                    sieve.push_back(c.hom(x, target)[i]);
        std::sort(sieve.begin(), sieve.end());
        result.push_back(std::move(sieve));
    }
    std::sort(result.begin(), result.end(), [](const Sieve & a, const Sieve & b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return result;
}

string sieve_name(const FinCategory & c, const Sieve & sieve)
{
    vector<string> names;
    for (auto f : sieve)
        names.push_back(c.morphism_name(f));
    return "{" + join(names, ",") + "}";
}

Presheaf omega(const CategoryPtr & base, const SearchBudget & budget)
{
    auto & c = *base;
    vector<vector<Sieve>> sieves(c.object_count());
    vector<std::map<Sieve, ElementId>> index(c.object_count());
    vector<vector<string>> elements(c.object_count());
    for (ObjectId x = 0; x < c.object_count(); ++x) {
        sieves[x] = sieves_on(c, x, budget);
        for (auto & s : sieves[x]) {
            index[x][s] = elements[x].size();
            elements[x].push_back(sieve_name(c, s));
        }
    }
    vector<vector<ElementId>> action(c.morphism_count());
    for (MorphismId f = 0; f < c.morphism_count(); ++f)
        for (auto & s : sieves[c.cod(f)])
            action[f].push_back(index[c.dom(f)].at(pullback_sieve(c, f, s)));
    return Presheaf(base, std::move(elements), std::move(action));
}

NatTrans characteristic_map(const Presheaf & p, const ElementMask & mask, const Presheaf & omega)
{
    auto & c = p.category();
    NatTrans chi;
    for (ObjectId x = 0; x < c.object_count(); ++x) {
        chi.components.emplace_back();
        for (ElementId e = 0; e < p.size(x); ++e) {
            Sieve sieve;
            for (auto f : c.into(x))
                if (mask[c.dom(f)][p.act(f, e)])
                    sieve.push_back(f);
            auto index = omega.find_element(x, sieve_name(c, sieve));
            if (! index)
                fail(ErrorKind::InternalInvariant, "characteristic sieve missing from Ω");
            chi.components.back().push_back(*index);
        }
    }
    return chi;
}

} // namespace cctopos
