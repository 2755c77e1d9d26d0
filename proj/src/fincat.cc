#include <cctopos/fincat.hh>
#include <cctopos/union_find.hh>

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>

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

    template <typename Map_>
    void index_names(const vector<string> & names, Map_ & index, const char * what)
    {
        for (size_t i = 0; i < names.size(); ++i)
            if (! index.emplace(names[i], i).second)
                fail(ErrorKind::DuplicateName, string("duplicate ") + what + " name '" + names[i] + "'");
    }

    /// Fills every table entry that involves an identity.
    void fill_identity_composites(CategoryData & d)
    {
        const size_t m = d.morphisms.size();
        d.table.resize(m * m);
        for (MorphismId f = 0; f < m; ++f) {
            d.table[d.identity[d.cod[f]] * m + f] = f;
            d.table[f * m + d.identity[d.dom[f]]] = f;
        }
    }

    CategoryData shape_with_arrows(vector<string> objects, const vector<std::tuple<string, size_t, size_t>> & arrows)
    {
        CategoryData d;
        d.objects = std::move(objects);
        for (size_t c = 0; c < d.objects.size(); ++c) {
            d.identity.push_back(d.morphisms.size());
            d.morphisms.push_back("id_" + d.objects[c]);
            d.dom.push_back(c);
            d.cod.push_back(c);
        }
        for (auto & [name, s, t] : arrows) {
            d.morphisms.push_back(name);
            d.dom.push_back(s);
            d.cod.push_back(t);
        }
        fill_identity_composites(d);
        return d;
    }
}

// ---------------------------------------------------------------------------

FinCategory::FinCategory(CategoryData data) :
    _objects(std::move(data.objects)),
    _morphisms(std::move(data.morphisms)),
    _dom(std::move(data.dom)),
    _cod(std::move(data.cod)),
    _identity(std::move(data.identity)),
    _table(std::move(data.table))
{
    const size_t n = _objects.size(), m = _morphisms.size();
    if (_dom.size() != m || _cod.size() != m || _identity.size() != n || _table.size() != m * m)
        fail(ErrorKind::InternalInvariant, "category data has inconsistent sizes");

    index_names(_objects, _object_index, "object");
    index_names(_morphisms, _morphism_index, "morphism");

    for (MorphismId f = 0; f < m; ++f)
        if (_dom[f] >= n || _cod[f] >= n)
            fail(ErrorKind::UnknownObject, "morphism '" + _morphisms[f] + "' has an unknown endpoint");

    for (ObjectId c = 0; c < n; ++c) {
        auto i = _identity[c];
        if (i >= m)
            fail(ErrorKind::MissingIdentity, "object '" + _objects[c] + "' has no identity");
        if (_dom[i] != c || _cod[i] != c)
            fail(ErrorKind::DomCodMismatch, "identity '" + _morphisms[i] + "' of '" + _objects[c] + "' is not an endomorphism of it");
    }

    for (MorphismId g = 0; g < m; ++g)
        for (MorphismId f = 0; f < m; ++f) {
            auto & entry = _table[g * m + f];
            bool composable = _dom[g] == _cod[f];
            if (entry && ! composable)
                fail(ErrorKind::DomCodMismatch, "composite " + _morphisms[g] + " . " + _morphisms[f] + " declared for a non-composable pair");
            if (! entry && composable)
                fail(ErrorKind::PartialComposition, "missing composite " + _morphisms[g] + " . " + _morphisms[f]);
            if (entry) {
                if (*entry >= m)
                    fail(ErrorKind::UnknownMorphism, "composite " + _morphisms[g] + " . " + _morphisms[f] + " is out of range");
                if (_dom[*entry] != _dom[f] || _cod[*entry] != _cod[g])
                    fail(ErrorKind::DomCodMismatch, "composite " + _morphisms[g] + " . " + _morphisms[f] + " = " + _morphisms[*entry]
                            + " has the wrong domain or codomain");
            }
        }

    for (MorphismId f = 0; f < m; ++f) {
        if (*_table[_identity[_cod[f]] * m + f] != f || *_table[f * m + _identity[_dom[f]]] != f)
            fail(ErrorKind::MissingIdentity, "'" + _morphisms[_identity[_cod[f]]] + "' or '" + _morphisms[_identity[_dom[f]]]
                    + "' does not act as an identity on '" + _morphisms[f] + "'");
    }

    _hom.resize(n * n);
    _into.resize(n);
    _out_of.resize(n);
    for (MorphismId f = 0; f < m; ++f) {
        _hom[_dom[f] * n + _cod[f]].push_back(f);
        _into[_cod[f]].push_back(f);
        _out_of[_dom[f]].push_back(f);
    }

    for (MorphismId f = 0; f < m; ++f)
        for (MorphismId g : _out_of[_cod[f]])
            for (MorphismId h : _out_of[_cod[g]]) {
                auto left = compose(h, compose(g, f));
                auto right = compose(compose(h, g), f);
                if (left != right)
                    fail(ErrorKind::NonAssociative, "composition is not associative on (" + _morphisms[h] + ", " + _morphisms[g] + ", "
                            + _morphisms[f] + ")");
            }
}

MorphismId FinCategory::compose(MorphismId g, MorphismId f) const
{
    auto r = _table.at(g * morphism_count() + f);
    if (! r)
        fail(ErrorKind::DomCodMismatch, "cannot compose " + _morphisms[g] + " . " + _morphisms[f]);
    return *r;
}

optional<MorphismId> FinCategory::try_compose(MorphismId g, MorphismId f) const
{
    return _table.at(g * morphism_count() + f);
}

optional<ObjectId> FinCategory::find_object(std::string_view name) const
{
    auto i = _object_index.find(name);
    if (i == _object_index.end())
        return std::nullopt;
    return i->second;
}

optional<MorphismId> FinCategory::find_morphism(std::string_view name) const
{
    auto i = _morphism_index.find(name);
    if (i == _morphism_index.end())
        return std::nullopt;
    return i->second;
}

ObjectId FinCategory::object(std::string_view name) const
{
    auto c = find_object(name);
    if (! c)
        fail(ErrorKind::UnknownObject, "unknown object '" + string(name) + "'");
    return *c;
}

MorphismId FinCategory::morphism(std::string_view name) const
{
    auto f = find_morphism(name);
    if (! f)
        fail(ErrorKind::UnknownMorphism, "unknown morphism '" + string(name) + "'");
    return *f;
}

CategoryData FinCategory::data() const
{
    return CategoryData{_objects, _morphisms, _dom, _cod, _identity, _table};
}

bool FinCategory::operator==(const FinCategory & other) const
{
    return _objects == other._objects && _morphisms == other._morphisms && _dom == other._dom && _cod == other._cod
        && _identity == other._identity && _table == other._table;
}

CategoryPtr make_category(CategoryData data)
{
    return std::make_shared<const FinCategory>(std::move(data));
}

bool same_category(const CategoryPtr & a, const CategoryPtr & b)
{
    return a == b || (a && b && *a == *b);
}

// ---------------------------------------------------------------------------

CategoryPtr validate_category(const RawCategory & raw)
{
    CategoryData d;
    std::map<string, ObjectId, std::less<>> objects;
    for (auto & o : raw.objects) {
        if (! objects.emplace(o, d.objects.size()).second)
            fail(ErrorKind::DuplicateName, "duplicate object name '" + o + "'");
        d.objects.push_back(o);
    }
    auto object = [&](const string & name, const string & context) {
        auto i = objects.find(name);
        if (i == objects.end())
            fail(ErrorKind::UnknownObject, "unknown object '" + name + "' in " + context);
        return i->second;
    };

    std::map<string, MorphismId, std::less<>> morphisms;
    auto add_morphism = [&](const string & name, ObjectId s, ObjectId t) {
        if (! morphisms.emplace(name, d.morphisms.size()).second)
            fail(ErrorKind::DuplicateName, "duplicate morphism name '" + name + "'");
        d.morphisms.push_back(name);
        d.dom.push_back(s);
        d.cod.push_back(t);
        return d.morphisms.size() - 1;
    };

    d.identity.assign(d.objects.size(), 0);
    vector<bool> has_identity(d.objects.size(), false);
    for (auto & [o, _] : raw.identities)
        object(o, "identity declaration");
    for (ObjectId c = 0; c < d.objects.size(); ++c)
        if (! raw.identities.contains(d.objects[c])) {
            if (! raw.implicit_identities)
                fail(ErrorKind::MissingIdentity, "object '" + d.objects[c] + "' has no identity");
            d.identity[c] = add_morphism("id_" + d.objects[c], c, c);
            has_identity[c] = true;
        }
    for (auto & a : raw.arrows)
        add_morphism(a.name, object(a.dom, "arrow '" + a.name + "'"), object(a.cod, "arrow '" + a.name + "'"));
    for (auto & [o, name] : raw.identities) {
        auto c = objects.find(o)->second;
        auto i = morphisms.find(name);
        if (i == morphisms.end())
            fail(ErrorKind::UnknownMorphism, "identity '" + name + "' of '" + o + "' is not a declared arrow");
        if (d.dom[i->second] != c || d.cod[i->second] != c)
            fail(ErrorKind::DomCodMismatch, "identity '" + name + "' of '" + o + "' is not an endomorphism of it");
        d.identity[c] = i->second;
        has_identity[c] = true;
    }

    fill_identity_composites(d);
    const size_t m = d.morphisms.size();
    auto morphism = [&](const string & name) {
        auto i = morphisms.find(name);
        if (i == morphisms.end())
            fail(ErrorKind::UnknownMorphism, "unknown morphism '" + name + "' in a composition entry");
        return i->second;
    };
    for (auto & e : raw.composites) {
        auto g = morphism(e.g), f = morphism(e.f), h = morphism(e.result);
        if (d.dom[g] != d.cod[f])
            fail(ErrorKind::DomCodMismatch, "composite " + e.g + " . " + e.f + " declared for a non-composable pair");
        if (d.dom[h] != d.dom[f] || d.cod[h] != d.cod[g])
            fail(ErrorKind::DomCodMismatch, "composite " + e.g + " . " + e.f + " = " + e.result + " has the wrong domain or codomain");
        auto & slot = d.table[g * m + f];
        if (slot && *slot != h)
            fail(ErrorKind::ConflictingComposition, "composite " + e.g + " . " + e.f + " declared as both '" + d.morphisms[*slot] + "' and '"
                    + e.result + "'");
        slot = h;
    }

    return make_category(std::move(d));
}

CategoryPtr opposite(const FinCategory & c)
{
    auto d = c.data();
    std::swap(d.dom, d.cod);
    const size_t m = d.morphisms.size();
    vector<optional<MorphismId>> table(m * m);
    for (MorphismId g = 0; g < m; ++g)
        for (MorphismId f = 0; f < m; ++f)
            table[g * m + f] = c.try_compose(f, g);
    d.table = std::move(table);
    return make_category(std::move(d));
}

// ---------------------------------------------------------------------------

FinMonoid::FinMonoid(vector<string> elements, size_t unit, vector<size_t> table) :
    _elements(std::move(elements)),
    _unit(unit),
    _table(std::move(table))
{
    const size_t n = _elements.size();
    if (n == 0)
        fail(ErrorKind::InvalidMonoid, "a monoid needs at least its unit");
    std::map<string, size_t, std::less<>> seen;
    index_names(_elements, seen, "monoid element");
    if (_unit >= n || _table.size() != n * n)
        fail(ErrorKind::InvalidMonoid, "monoid table has inconsistent sizes");
    for (auto v : _table)
        if (v >= n)
            fail(ErrorKind::InvalidMonoid, "monoid table entry out of range");
    for (size_t a = 0; a < n; ++a)
        if (mult(_unit, a) != a || mult(a, _unit) != a)
            fail(ErrorKind::InvalidMonoid, "'" + _elements[_unit] + "' is not a unit for '" + _elements[a] + "'");
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t c = 0; c < n; ++c)
                if (mult(a, mult(b, c)) != mult(mult(a, b), c))
                    fail(ErrorKind::NonAssociative, "multiplication is not associative on (" + _elements[a] + ", " + _elements[b] + ", "
                            + _elements[c] + ")");
}

optional<size_t> FinMonoid::find_element(std::string_view name) const
{
    auto i = std::find(_elements.begin(), _elements.end(), name);
    if (i == _elements.end())
        return std::nullopt;
    return size_t(i - _elements.begin());
}

FinMonoid validate_monoid(const RawMonoid & raw)
{
    const size_t n = raw.elements.size();
    if (n == 0)
        fail(ErrorKind::InvalidMonoid, "a monoid needs at least its unit");
    std::map<string, size_t, std::less<>> index;
    index_names(raw.elements, index, "monoid element");
    auto element = [&](const string & name) {
        auto i = index.find(name);
        if (i == index.end())
            fail(ErrorKind::UnknownElement, "unknown monoid element '" + name + "'");
        return i->second;
    };
    auto unit = element(raw.unit);

    vector<optional<size_t>> table(n * n);
    for (size_t a = 0; a < n; ++a) {
        table[unit * n + a] = a;
        table[a * n + unit] = a;
    }
    for (auto & e : raw.table) {
        auto a = element(e.left), b = element(e.right), c = element(e.product);
        auto & slot = table[a * n + b];
        if (slot && *slot != c)
            fail(ErrorKind::ConflictingComposition, "product " + e.left + "*" + e.right + " declared as both '" + raw.elements[*slot]
                    + "' and '" + e.product + "'");
        slot = c;
    }
    vector<size_t> full(n * n);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            if (! table[a * n + b])
                fail(ErrorKind::PartialComposition, "missing product " + raw.elements[a] + "*" + raw.elements[b]);
            full[a * n + b] = *table[a * n + b];
        }
    return FinMonoid(raw.elements, unit, std::move(full));
}

CategoryPtr monoid_to_category(const FinMonoid & m)
{
    CategoryData d;
    d.objects = {string(monoid_object_name)};
    d.morphisms = m.element_names();
    d.dom.assign(m.size(), 0);
    d.cod.assign(m.size(), 0);
    d.identity = {m.unit()};
    d.table.resize(m.size() * m.size());
    for (size_t g = 0; g < m.size(); ++g)
        for (size_t f = 0; f < m.size(); ++f)
            d.table[g * m.size() + f] = m.mult(g, f);
    return make_category(std::move(d));
}

vector<size_t> right_zero_elements(const FinMonoid & m)
{
    vector<size_t> result;
    for (size_t z = 0; z < m.size(); ++z) {
        bool ok = true;
        for (size_t a = 0; a < m.size() && ok; ++a)
            ok = m.mult(a, z) == z;
        if (ok)
            result.push_back(z);
    }
    return result;
}

// ---------------------------------------------------------------------------

CategoryPtr free_path_category(const FinGraph & graph)
{
    const size_t n = graph.vertices.size();
    std::map<string, size_t, std::less<>> vertex;
    index_names(graph.vertices, vertex, "vertex");

    struct Edge {
        string name;
        size_t source, target;
    };
    vector<Edge> edges;
    std::map<std::pair<size_t, size_t>, size_t> parallel;
    for (auto & e : graph.edges) {
        auto s = vertex.find(e.source), t = vertex.find(e.target);
        if (s == vertex.end() || t == vertex.end())
            fail(ErrorKind::UnknownObject, "edge '" + e.name + "' has an unknown endpoint");
        string name = e.name;
        if (name.empty()) {
            name = e.source + "_" + e.target;
            if (auto k = ++parallel[{s->second, t->second}]; k > 1)
                name += "_" + std::to_string(k);
        }
        edges.push_back({name, s->second, t->second});
    }

    // Kahn's algorithm; leftover vertices sit on a cycle.
    vector<size_t> indegree(n, 0);
    for (auto & e : edges)
        ++indegree[e.target];
    vector<size_t> ready;
    for (size_t v = 0; v < n; ++v)
        if (indegree[v] == 0)
            ready.push_back(v);
    size_t visited = 0;
    while (! ready.empty()) {
        auto v = ready.back();
        ready.pop_back();
        ++visited;
        for (auto & e : edges)
            if (e.source == v && --indegree[e.target] == 0)
                ready.push_back(e.target);
    }
    if (visited != n)
        fail(ErrorKind::CyclicGraph, "the graph has a directed cycle, so its path category is infinite");

    // Paths as edge sequences in traversal order; identities are empty paths.
    CategoryData d;
    d.objects = graph.vertices;
    vector<vector<size_t>> paths;
    std::map<std::pair<size_t, vector<size_t>>, MorphismId> path_index;
    for (size_t v = 0; v < n; ++v) {
        d.identity.push_back(d.morphisms.size());
        d.morphisms.push_back("id_" + graph.vertices[v]);
        d.dom.push_back(v);
        d.cod.push_back(v);
        paths.emplace_back();
        path_index[{v, {}}] = d.identity.back();
    }
    std::function<void(size_t, size_t, vector<size_t> &)> extend = [&](size_t start, size_t at, vector<size_t> & path) {
        for (size_t i = 0; i < edges.size(); ++i) {
            if (edges[i].source != at)
                continue;
            path.push_back(i);
            string name;
            for (auto k = path.rbegin(); k != path.rend(); ++k)
                name += (name.empty() ? "" : ".") + edges[*k].name;
            path_index[{start, path}] = d.morphisms.size();
            d.morphisms.push_back(name);
            d.dom.push_back(start);
            d.cod.push_back(edges[i].target);
            paths.push_back(path);
            extend(start, edges[i].target, path);
            path.pop_back();
        }
    };
    for (size_t v = 0; v < n; ++v) {
        vector<size_t> path;
        extend(v, v, path);
    }

    const size_t m = d.morphisms.size();
    d.table.resize(m * m);
    for (MorphismId g = 0; g < m; ++g)
        for (MorphismId f = 0; f < m; ++f) {
            if (d.dom[g] != d.cod[f])
                continue;
            auto joined = paths[f];
            joined.insert(joined.end(), paths[g].begin(), paths[g].end());
            d.table[g * m + f] = path_index.at({d.dom[f], joined});
        }
    return make_category(std::move(d));
}

CategoryPtr poset_category(const RawPoset & raw)
{
    const size_t n = raw.elements.size();
    std::map<string, size_t, std::less<>> index;
    index_names(raw.elements, index, "poset element");
    vector<char> le(n * n, 0);
    for (size_t a = 0; a < n; ++a)
        le[a * n + a] = 1;
    for (auto & [a, b] : raw.relations) {
        auto i = index.find(a), j = index.find(b);
        if (i == index.end() || j == index.end())
            fail(ErrorKind::UnknownObject, "relation " + a + " <= " + b + " mentions an unknown element");
        le[i->second * n + j->second] = 1;
    }
    for (size_t k = 0; k < n; ++k)
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b)
                if (le[a * n + k] && le[k * n + b])
                    le[a * n + b] = 1;

    CategoryData d;
    d.objects = raw.elements;
    d.identity.resize(n);
    vector<MorphismId> arrow(n * n, 0);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            if (le[a * n + b]) {
                arrow[a * n + b] = d.morphisms.size();
                if (a == b) {
                    d.identity[a] = d.morphisms.size();
                    d.morphisms.push_back("id_" + raw.elements[a]);
                }
                else
                    d.morphisms.push_back(raw.elements[a] + "_" + raw.elements[b]);
                d.dom.push_back(a);
                d.cod.push_back(b);
            }
    const size_t m = d.morphisms.size();
    d.table.resize(m * m);
    for (MorphismId g = 0; g < m; ++g)
        for (MorphismId f = 0; f < m; ++f)
            if (d.dom[g] == d.cod[f])
                d.table[g * m + f] = arrow[d.dom[f] * n + d.cod[g]];
    return make_category(std::move(d));
}

// ---------------------------------------------------------------------------

void validate_functor(const FinFunctor & functor)
{
    auto & s = *functor.source;
    auto & t = *functor.target;
    if (functor.object_map.size() != s.object_count() || functor.morphism_map.size() != s.morphism_count())
        fail(ErrorKind::InvalidFunctor, "functor maps have the wrong size");
    for (auto c : functor.object_map)
        if (c >= t.object_count())
            fail(ErrorKind::InvalidFunctor, "functor sends an object out of range");
    for (auto f : functor.morphism_map)
        if (f >= t.morphism_count())
            fail(ErrorKind::InvalidFunctor, "functor sends a morphism out of range");
    for (ObjectId c = 0; c < s.object_count(); ++c)
        if (functor.morphism_map[s.identity(c)] != t.identity(functor.object_map[c]))
            fail(ErrorKind::InvalidFunctor, "functor does not preserve the identity of '" + s.object_name(c) + "'");
    for (MorphismId f = 0; f < s.morphism_count(); ++f) {
        auto image = functor.morphism_map[f];
        if (t.dom(image) != functor.object_map[s.dom(f)] || t.cod(image) != functor.object_map[s.cod(f)])
            fail(ErrorKind::InvalidFunctor, "functor does not preserve the endpoints of '" + s.morphism_name(f) + "'");
    }
    for (MorphismId f = 0; f < s.morphism_count(); ++f)
        for (MorphismId g : s.out_of(s.cod(f)))
            if (functor.morphism_map[s.compose(g, f)] != t.compose(functor.morphism_map[g], functor.morphism_map[f]))
                fail(ErrorKind::InvalidFunctor, "functor does not preserve " + s.morphism_name(g) + " . " + s.morphism_name(f));
}

bool is_full_and_faithful(const FinFunctor & functor)
{
    auto & s = *functor.source;
    auto & t = *functor.target;
    for (ObjectId a = 0; a < s.object_count(); ++a)
        for (ObjectId b = 0; b < s.object_count(); ++b) {
            std::set<MorphismId> image;
            for (auto f : s.hom(a, b))
                image.insert(functor.morphism_map[f]);
            auto & target = t.hom(functor.object_map[a], functor.object_map[b]);
            if (image.size() != s.hom(a, b).size() || image.size() != target.size())
                return false;
        }
    return true;
}

bool is_isomorphism(const FinFunctor & functor)
{
    auto & s = *functor.source;
    auto & t = *functor.target;
    if (s.object_count() != t.object_count() || s.morphism_count() != t.morphism_count())
        return false;
    std::set<ObjectId> objects(functor.object_map.begin(), functor.object_map.end());
    std::set<MorphismId> morphisms(functor.morphism_map.begin(), functor.morphism_map.end());
    return objects.size() == t.object_count() && morphisms.size() == t.morphism_count();
}

// ---------------------------------------------------------------------------

vector<ObjectId> initial_objects(const FinCategory & c)
{
    vector<ObjectId> result;
    for (ObjectId i = 0; i < c.object_count(); ++i) {
        bool ok = true;
        for (ObjectId x = 0; x < c.object_count() && ok; ++x)
            ok = c.hom(i, x).size() == 1;
        if (ok)
            result.push_back(i);
    }
    return result;
}

vector<ObjectId> terminal_objects(const FinCategory & c)
{
    vector<ObjectId> result;
    for (ObjectId t = 0; t < c.object_count(); ++t) {
        bool ok = true;
        for (ObjectId x = 0; x < c.object_count() && ok; ++x)
            ok = c.hom(x, t).size() == 1;
        if (ok)
            result.push_back(t);
    }
    return result;
}

vector<ObjectId> zero_objects(const FinCategory & c)
{
    auto initial = initial_objects(c);
    auto terminal = terminal_objects(c);
    vector<ObjectId> result;
    std::set_intersection(initial.begin(), initial.end(), terminal.begin(), terminal.end(), std::back_inserter(result));
    return result;
}

bool is_connected_category(const FinCategory & c)
{
    if (c.object_count() == 0)
        return false;
    UnionFind uf(c.object_count());
    for (MorphismId f = 0; f < c.morphism_count(); ++f)
        uf.unite(c.dom(f), c.cod(f));
    for (ObjectId x = 0; x < c.object_count(); ++x)
        if (uf.find(x) != 0)
            return false;
    return true;
}

// ---------------------------------------------------------------------------

vector<SplitIdempotent> idempotents(const FinCategory & c)
{
    vector<SplitIdempotent> result;
    for (ObjectId x = 0; x < c.object_count(); ++x)
        for (auto e : c.hom(x, x))
            if (c.compose(e, e) == e)
                result.push_back({x, e});
    return result;
}

string split_name(const FinCategory & c, const SplitIdempotent & s)
{
    return "(" + c.object_name(s.carrier) + " @ " + c.morphism_name(s.idempotent) + ")";
}

CauchyCompletion cauchy_completion(const CategoryPtr & base)
{
    auto & c = *base;
    CauchyCompletion result;
    result.splits = idempotents(c);
    const size_t n = result.splits.size();

    CategoryData d;
    for (auto & s : result.splits)
        d.objects.push_back(split_name(c, s));
    d.identity.assign(n, 0);
    std::map<std::tuple<size_t, size_t, MorphismId>, MorphismId> lookup;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            auto [ci, ei] = result.splits[i];
            auto [cj, ej] = result.splits[j];
            for (auto f : c.hom(ci, cj)) {
                if (c.compose(ej, c.compose(f, ei)) != f)
                    continue;
                lookup[{i, j, f}] = d.morphisms.size();
                if (i == j && f == ei)
                    d.identity[i] = d.morphisms.size();
                d.morphisms.push_back(c.morphism_name(f) + ":" + d.objects[i] + "->" + d.objects[j]);
                d.dom.push_back(i);
                d.cod.push_back(j);
                result.underlying.push_back(f);
            }
        }
    const size_t m = d.morphisms.size();
    d.table.resize(m * m);
    for (MorphismId g = 0; g < m; ++g)
        for (MorphismId f = 0; f < m; ++f)
            if (d.dom[g] == d.cod[f])
                d.table[g * m + f] = lookup.at({d.dom[f], d.cod[g], c.compose(result.underlying[g], result.underlying[f])});
    result.category = make_category(std::move(d));

    vector<size_t> split_of_object(c.object_count());
    for (size_t i = 0; i < n; ++i)
        if (c.is_identity(result.splits[i].idempotent))
            split_of_object[result.splits[i].carrier] = i;
    result.embedding.source = base;
    result.embedding.target = result.category;
    result.embedding.object_map = split_of_object;
    for (MorphismId f = 0; f < c.morphism_count(); ++f)
        result.embedding.morphism_map.push_back(lookup.at({split_of_object[c.dom(f)], split_of_object[c.cod(f)], f}));
    return result;
}

bool all_idempotents_split(const FinCategory & c)
{
    for (auto [x, u] : idempotents(c)) {
        bool split = false;
        for (ObjectId y = 0; y < c.object_count() && ! split; ++y)
            for (auto r : c.hom(x, y)) {
                for (auto s : c.hom(y, x))
                    if (c.compose(s, r) == u && c.compose(r, s) == c.identity(y)) {
                        split = true;
                        break;
                    }
                if (split)
                    break;
            }
        if (! split)
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

InitialExtension adjoin_initial(const CategoryPtr & base)
{
    auto & c = *base;
    const size_t n = c.object_count(), m = c.morphism_count();

    string apex_name(adjoined_initial_name);
    while (c.find_object(apex_name))
        apex_name += "'";

    CategoryData d;
    d.objects.push_back(apex_name);
    d.objects.insert(d.objects.end(), c.object_names().begin(), c.object_names().end());
    d.morphisms.push_back("id_" + apex_name);
    d.dom.push_back(0);
    d.cod.push_back(0);
    for (ObjectId x = 0; x < n; ++x) {
        string name = "!_" + c.object_name(x);
        while (c.find_morphism(name))
            name += "'";
        d.morphisms.push_back(name);
        d.dom.push_back(0);
        d.cod.push_back(x + 1);
    }
    for (MorphismId f = 0; f < m; ++f) {
        d.morphisms.push_back(c.morphism_name(f));
        d.dom.push_back(c.dom(f) + 1);
        d.cod.push_back(c.cod(f) + 1);
    }
    d.identity.push_back(0);
    for (ObjectId x = 0; x < n; ++x)
        d.identity.push_back(c.identity(x) + 1 + n);

    auto bang = [&](ObjectId extended) -> MorphismId { return extended; };
    const size_t total = d.morphisms.size();
    d.table.resize(total * total);
    for (MorphismId g = 0; g < total; ++g)
        for (MorphismId f = 0; f < total; ++f) {
            if (d.dom[g] != d.cod[f])
                continue;
            if (d.dom[f] == 0)
                d.table[g * total + f] = bang(d.cod[g]);
            else
                d.table[g * total + f] = c.compose(g - 1 - n, f - 1 - n) + 1 + n;
        }

    InitialExtension result;
    result.category = make_category(std::move(d));
    result.apex = 0;
    result.base = base;
    for (ObjectId x = 0; x <= n; ++x)
        result.bang.push_back(bang(x));
    result.embedding.source = base;
    result.embedding.target = result.category;
    for (ObjectId x = 0; x < n; ++x)
        result.embedding.object_map.push_back(x + 1);
    for (MorphismId f = 0; f < m; ++f)
        result.embedding.morphism_map.push_back(f + 1 + n);
    return result;
}

// ---------------------------------------------------------------------------

CategoryPtr empty_category()
{
    return make_category(CategoryData{});
}

CategoryPtr terminal_category()
{
    return make_category(shape_with_arrows({"0"}, {}));
}

CategoryPtr discrete_category(const vector<string> & objects)
{
    return make_category(shape_with_arrows(objects, {}));
}

CategoryPtr chain_category(size_t n)
{
    RawPoset raw;
    for (size_t i = 0; i <= n; ++i) {
        raw.elements.push_back(std::to_string(i));
        if (i > 0)
            raw.relations.emplace_back(std::to_string(i - 1), std::to_string(i));
    }
    return poset_category(raw);
}

CategoryPtr walking_arrow()
{
    return make_category(shape_with_arrows({"a", "b"}, {{"f", 0, 1}}));
}

CategoryPtr walking_idempotent()
{
    auto d = shape_with_arrows({"x"}, {{"e", 0, 0}});
    d.table[1 * 2 + 1] = 1;
    return make_category(std::move(d));
}

CategoryPtr parallel_pair_shape()
{
    return make_category(shape_with_arrows({"0", "1"}, {{"s", 0, 1}, {"t", 0, 1}}));
}

CategoryPtr span_shape()
{
    return make_category(shape_with_arrows({"l", "apex", "r"}, {{"left", 1, 0}, {"right", 1, 2}}));
}

FinMonoid multiplicative_f2()
{
    // elements: 1 (unit), 0
    return FinMonoid({"1", "0"}, 0, {0, 1, 1, 1});
}

} // namespace cctopos
