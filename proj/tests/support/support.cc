#include "support/support.hh"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>

namespace support {

using cctopos::CategoryData;
using cctopos::ElementId;
using cctopos::FinCategory;
using cctopos::MorphismId;
using cctopos::ObjectId;
using std::size_t;
using std::vector;

namespace {
    using Matrix = vector<size_t>;

    Matrix permute(const Matrix & h, size_t n, const vector<size_t> & perm)
    {
        Matrix out(n * n);
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b)
                out[perm[a] * n + perm[b]] = h[a * n + b];
        return out;
    }

    bool is_canonical(const Matrix & h, size_t n)
    {
        vector<size_t> perm(n);
        std::iota(perm.begin(), perm.end(), size_t{0});
        do {
            if (permute(h, n, perm) < h)
                return false;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return true;
    }

    void matrices(size_t n, size_t max_morphisms, size_t max_hom, const std::function<void(const Matrix &)> & visit)
    {
        Matrix h(n * n, 0);
        std::function<void(size_t, size_t)> fill = [&](size_t i, size_t used) {
            if (i == n * n) {
                if (is_canonical(h, n))
                    visit(h);
                return;
            }
            bool diagonal = i / n == i % n;
            for (size_t v = diagonal ? 1 : 0; v <= max_hom && used + v <= max_morphisms; ++v) {
                h[i] = v;
                fill(i + 1, used + v);
            }
            h[i] = 0;
        };
        fill(0, 0);
    }

    /// Composition tables for one hom-size matrix.
    void tables(const Matrix & h, size_t n, size_t keep, vector<CategoryPtr> & out)
    {
        CategoryData d;
        for (size_t a = 0; a < n; ++a)
            d.objects.push_back("o" + std::to_string(a));
        d.identity.assign(n, 0);
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b)
                for (size_t k = 0; k < h[a * n + b]; ++k) {
                    if (a == b && k == 0) {
                        d.identity[a] = d.morphisms.size();
                        d.morphisms.push_back("id_o" + std::to_string(a));
                    }
                    else
                        d.morphisms.push_back("m" + std::to_string(a) + std::to_string(b) + "_" + std::to_string(k));
                    d.dom.push_back(a);
                    d.cod.push_back(b);
                }
        const size_t m = d.morphisms.size();
        auto is_id = [&](MorphismId f) { return d.identity[d.dom[f]] == f; };
        vector<std::optional<MorphismId>> table(m * m);
        vector<std::pair<MorphismId, MorphismId>> pairs;
        for (MorphismId g = 0; g < m; ++g)
            for (MorphismId f = 0; f < m; ++f) {
                if (d.dom[g] != d.cod[f])
                    continue;
                if (is_id(g))
                    table[g * m + f] = f;
                else if (is_id(f))
                    table[g * m + f] = g;
                else
                    pairs.emplace_back(g, f);
            }
        vector<vector<MorphismId>> hom(n * n);
        for (MorphismId f = 0; f < m; ++f)
            hom[d.dom[f] * n + d.cod[f]].push_back(f);
        for (auto [g, f] : pairs)
            if (hom[d.dom[f] * n + d.cod[g]].empty())
                return;

        auto associative = [&] {
            for (MorphismId f = 0; f < m; ++f)
                for (MorphismId g = 0; g < m; ++g) {
                    auto gf = table[g * m + f];
                    if (! gf)
                        continue;
                    for (MorphismId k = 0; k < m; ++k) {
                        if (d.dom[k] != d.cod[g])
                            continue;
                        auto kg = table[k * m + g];
                        if (! kg)
                            continue;
                        auto left = table[k * m + *gf], right = table[*kg * m + f];
                        if (left && right && *left != *right)
                            return false;
                    }
                }
            return true;
        };

        size_t found = 0, nodes = 0;
        std::function<void(size_t)> assign = [&](size_t i) {
            if (found >= keep || ++nodes > 200000)
                return;
            if (i == pairs.size()) {
                auto data = d;
                data.table = table;
                out.push_back(cctopos::make_category(std::move(data)));
                ++found;
                return;
            }
            auto [g, f] = pairs[i];
            for (auto r : hom[d.dom[f] * n + d.cod[g]]) {
                table[g * m + f] = r;
                if (associative())
                    assign(i + 1);
                if (found >= keep)
                    break;
            }
            table[g * m + f].reset();
        };
        assign(0);
    }
}

vector<CategoryPtr> small_categories(size_t max_objects, size_t max_morphisms, size_t max_hom, size_t per_matrix)
{
    vector<CategoryPtr> out;
    for (size_t n = 1; n <= max_objects; ++n)
        matrices(n, max_morphisms, max_hom, [&](const Matrix & h) { tables(h, n, per_matrix, out); });
    return out;
}

vector<MorphismId> generators(const FinCategory & c)
{
    vector<MorphismId> out;
    for (MorphismId f = 0; f < c.morphism_count(); ++f) {
        if (c.is_identity(f))
            continue;
        bool composite = false;
        for (MorphismId g = 0; g < c.morphism_count() && ! composite; ++g)
            for (MorphismId k = 0; k < c.morphism_count() && ! composite; ++k)
                if (! c.is_identity(g) && ! c.is_identity(k) && c.try_compose(g, k) == f)
                    composite = true;
        if (! composite)
            out.push_back(f);
    }
    return out;
}

double presheaf_search_size(const FinCategory & c, const vector<size_t> & sizes)
{
    double total = 1;
    for (auto f : generators(c))
        total *= std::pow(double(sizes[c.dom(f)]), double(sizes[c.cod(f)]));
    return total;
}

void for_each_presheaf(const CategoryPtr & base, const vector<size_t> & sizes, const std::function<bool(const Presheaf &)> & visit)
{
    auto & c = *base;
    const size_t m = c.morphism_count();
    auto gens = generators(c);
    vector<MorphismId> order = gens;
    for (MorphismId f = 0; f < m; ++f)
        if (! c.is_identity(f) && std::find(gens.begin(), gens.end(), f) == gens.end())
            order.push_back(f);

    vector<vector<ElementId>> action(m);
    vector<bool> assigned(m, false);
    for (ObjectId x = 0; x < c.object_count(); ++x) {
        auto id = c.identity(x);
        action[id].resize(sizes[x]);
        std::iota(action[id].begin(), action[id].end(), ElementId{0});
        assigned[id] = true;
    }
    auto consistent = [&] {
        for (MorphismId g = 0; g < m; ++g)
            for (MorphismId h = 0; h < m; ++h) {
                auto k = c.try_compose(g, h);
                if (! k || ! assigned[g] || ! assigned[h] || ! assigned[*k])
                    continue;
                for (ElementId x = 0; x < sizes[c.cod(g)]; ++x)
                    if (action[*k][x] != action[h][action[g][x]])
                        return false;
            }
        return true;
    };

    vector<vector<std::string>> elements(c.object_count());
    for (ObjectId x = 0; x < c.object_count(); ++x)
        for (size_t i = 0; i < sizes[x]; ++i)
            elements[x].push_back(std::to_string(i));

    bool stop = false;
    std::function<void(size_t)> assign = [&](size_t i) {
        if (stop)
            return;
        if (i == order.size()) {
            if (! visit(Presheaf(base, elements, action)))
                stop = true;
            return;
        }
        auto f = order[i];
        const size_t from = sizes[c.cod(f)], to = sizes[c.dom(f)];
        if (from > 0 && to == 0)
            return;
        vector<ElementId> fn(from, 0);
        assigned[f] = true;
        while (! stop) {
            action[f] = fn;
            if (consistent())
                assign(i + 1);
            size_t j = 0;
            while (j < from && ++fn[j] == to)
                fn[j++] = 0;
            if (j == from)
                break;
        }
        assigned[f] = false;
    };
    assign(0);
}

vector<vector<size_t>> size_vectors(size_t objects, size_t bound)
{
    vector<vector<size_t>> out;
    vector<size_t> v(objects, 0);
    std::function<void(size_t)> fill = [&](size_t i) {
        if (i == objects) {
            out.push_back(v);
            return;
        }
        for (size_t s = 0; s <= bound; ++s) {
            v[i] = s;
            fill(i + 1);
        }
    };
    fill(0);
    std::stable_sort(out.begin(), out.end(), [](auto & a, auto & b) {
        return std::accumulate(a.begin(), a.end(), size_t{0}) < std::accumulate(b.begin(), b.end(), size_t{0});
    });
    return out;
}

// ---------------------------------------------------------------------------

size_t brute_hom_count(const Presheaf & p, const Presheaf & q)
{
    auto & c = p.category();
    const size_t n = c.object_count();
    vector<vector<ElementId>> component(n);
    size_t count = 0;
    std::function<void(ObjectId)> fill = [&](ObjectId x) {
        if (x == n) {
            for (MorphismId f = 0; f < c.morphism_count(); ++f)
                for (ElementId e = 0; e < p.size(c.cod(f)); ++e)
                    if (component[c.dom(f)][p.act(f, e)] != q.act(f, component[c.cod(f)][e]))
                        return;
            ++count;
            return;
        }
        const size_t from = p.size(x), to = q.size(x);
        if (from > 0 && to == 0)
            return;
        vector<ElementId> fn(from, 0);
        while (true) {
            component[x] = fn;
            fill(x + 1);
            size_t j = 0;
            while (j < from && ++fn[j] == to)
                fn[j++] = 0;
            if (j == from)
                break;
        }
    };
    fill(0);
    return count;
}

size_t brute_pi0(const Presheaf & p)
{
    auto & c = p.category();
    std::set<std::pair<ObjectId, ElementId>> seen;
    size_t components = 0;
    for (ObjectId x = 0; x < c.object_count(); ++x)
        for (ElementId e = 0; e < p.size(x); ++e) {
            if (seen.contains({x, e}))
                continue;
            ++components;
            std::queue<std::pair<ObjectId, ElementId>> queue;
            queue.push({x, e});
            seen.insert({x, e});
            while (! queue.empty()) {
                auto [y, v] = queue.front();
                queue.pop();
                vector<std::pair<ObjectId, ElementId>> next;
                for (auto f : c.into(y))
                    next.push_back({c.dom(f), p.act(f, v)});
                for (auto f : c.out_of(y))
                    for (ElementId w = 0; w < p.size(c.cod(f)); ++w)
                        if (p.act(f, w) == v)
                            next.push_back({c.cod(f), w});
                for (auto & item : next)
                    if (seen.insert(item).second)
                        queue.push(item);
            }
        }
    return components;
}

size_t brute_sections(const Presheaf & p)
{
    auto & c = p.category();
    const size_t n = c.object_count();
    vector<ElementId> tuple(n, 0);
    size_t count = 0;
    std::function<void(ObjectId)> fill = [&](ObjectId x) {
        if (x == n) {
            for (MorphismId f = 0; f < c.morphism_count(); ++f)
                if (p.act(f, tuple[c.cod(f)]) != tuple[c.dom(f)])
                    return;
            ++count;
            return;
        }
        for (ElementId e = 0; e < p.size(x); ++e) {
            tuple[x] = e;
            fill(x + 1);
        }
    };
    fill(0);
    return count;
}

size_t brute_subobjects(const Presheaf & p)
{
    auto & c = p.category();
    vector<std::pair<ObjectId, ElementId>> all;
    for (ObjectId x = 0; x < c.object_count(); ++x)
        for (ElementId e = 0; e < p.size(x); ++e)
            all.push_back({x, e});
    size_t count = 0;
    for (size_t mask = 0; mask < (size_t{1} << all.size()); ++mask) {
        std::set<std::pair<ObjectId, ElementId>> in;
        for (size_t i = 0; i < all.size(); ++i)
            if (mask >> i & 1)
                in.insert(all[i]);
        bool closed = true;
        for (auto [x, e] : in)
            for (auto f : c.into(x))
                closed = closed && in.contains({c.dom(f), p.act(f, e)});
        count += closed;
    }
    return count;
}

size_t brute_sieves(const FinCategory & c, ObjectId target)
{
    auto & into = c.into(target);
    size_t count = 0;
    for (size_t mask = 0; mask < (size_t{1} << into.size()); ++mask) {
        std::set<MorphismId> s;
        for (size_t i = 0; i < into.size(); ++i)
            if (mask >> i & 1)
                s.insert(into[i]);
        bool closed = true;
        for (auto f : s)
            for (auto g : c.into(c.dom(f)))
                closed = closed && s.contains(c.compose(f, g));
        count += closed;
    }
    return count;
}

RepresentingSearch search_pi0_representative(const CategoryPtr & c, const vector<Presheaf> & battery, size_t bound, double limit)
{
    RepresentingSearch result;
    // R must map to every representable, so R(x) can be nonempty only when x
    // has a morphism to every object.
    auto vectors = size_vectors(c->object_count(), bound);
    std::erase_if(vectors, [&](const vector<size_t> & sizes) {
        for (ObjectId x = 0; x < c->object_count(); ++x)
            for (ObjectId y = 0; y < c->object_count(); ++y)
                if (sizes[x] > 0 && c->hom(x, y).empty())
                    return true;
        return false;
    });
    double total = 0;
    for (auto & sizes : vectors)
        total += presheaf_search_size(*c, sizes);
    if (total > limit) {
        result.skipped = true;
        return result;
    }
    vector<Presheaf> representables;
    for (ObjectId x = 0; x < c->object_count(); ++x)
        representables.push_back(cctopos::yoneda(c, x));
    vector<cctopos::Components> components;
    for (auto & x : battery)
        components.push_back(cctopos::pi0(x));

    for (auto & sizes : vectors) {
        if (std::accumulate(sizes.begin(), sizes.end(), size_t{0}) == 0)
            continue;
        for_each_presheaf(c, sizes, [&](const Presheaf & r) {
            if (brute_pi0(r) != 1)
                return true;
            for (auto & y : representables)
                if (cctopos::count_homs(r, y) != 1)
                    return true;
            ObjectId x0 = 0;
            while (r.size(x0) == 0)
                ++x0;
            for (size_t i = 0; i < battery.size(); ++i) {
                std::set<size_t> image;
                size_t maps = 0;
                cctopos::for_each_hom(r, battery[i], {}, [&](const cctopos::NatTrans & alpha) {
                    ++maps;
                    image.insert(components[i].component_of[x0][alpha(x0, 0)]);
                    return maps <= components[i].count;
                });
                if (maps != components[i].count || image.size() != maps)
                    return true;
            }
            result.found = true;
            result.sizes = sizes;
            return false;
        });
        if (result.found)
            break;
    }
    return result;
}

} // namespace support
