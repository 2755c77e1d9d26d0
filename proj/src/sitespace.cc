#include <cctopos/sitespace.hh>

#include <algorithm>
#include <set>

namespace cctopos {

using std::optional;
using std::size_t;
using std::string;
using std::vector;

namespace {
    bool sieve_order(const Sieve & a, const Sieve & b)
    {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    }

    bool covers_contain(const vector<Sieve> & covers, const Sieve & s)
    {
        return std::find(covers.begin(), covers.end(), s) != covers.end();
    }
}

FiniteSite validate_topology(const CategoryPtr & category, vector<vector<Sieve>> covers, const SearchBudget & budget)
{
    auto & c = *category;
    if (covers.size() != c.object_count())
        throw Error(ErrorKind::NotASieve, "covers must be given for every object");
    for (ObjectId x = 0; x < c.object_count(); ++x) {
        for (auto & s : covers[x]) {
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
            if (! is_sieve(c, x, s))
                throw Error(ErrorKind::NotASieve, sieve_name(c, s) + " is not a sieve on '" + c.object_name(x) + "'");
        }
        std::sort(covers[x].begin(), covers[x].end(), sieve_order);
        covers[x].erase(std::unique(covers[x].begin(), covers[x].end()), covers[x].end());
        if (! covers_contain(covers[x], maximal_sieve(c, x)))
            throw Error(ErrorKind::MissingMaximal, "the maximal sieve on '" + c.object_name(x) + "' does not cover");
    }
    for (ObjectId x = 0; x < c.object_count(); ++x)
        for (auto & s : covers[x])
            for (auto f : c.into(x)) {
                auto pulled = pullback_sieve(c, f, s);
                if (! covers_contain(covers[c.dom(f)], pulled))
                    throw Error(ErrorKind::NotStable, "pullback of " + sieve_name(c, s) + " along '" + c.morphism_name(f) + "' is "
                            + sieve_name(c, pulled) + ", which does not cover '" + c.object_name(c.dom(f)) + "'");
            }
    for (ObjectId x = 0; x < c.object_count(); ++x)
        for (auto & r : sieves_on(c, x, budget)) {
            if (covers_contain(covers[x], r))
                continue;
            for (auto & s : covers[x]) {
                bool locally = std::all_of(s.begin(), s.end(), [&](MorphismId f) {
                    return covers_contain(covers[c.dom(f)], pullback_sieve(c, f, r));
                });
                if (locally)
                    throw Error(ErrorKind::NotTransitive, sieve_name(c, r) + " is covered locally along " + sieve_name(c, s) + " on '"
                            + c.object_name(x) + "' but does not cover");
            }
        }
    return FiniteSite{category, std::move(covers)};
}

FiniteSite validate_site(const CategoryPtr & category, const RawSite & raw, const SearchBudget & budget)
{
    auto & c = *category;
    vector<vector<Sieve>> covers(c.object_count());
    for (ObjectId x = 0; x < c.object_count(); ++x)
        covers[x].push_back(maximal_sieve(c, x));
    for (auto & cover : raw.covers) {
        auto x = c.find_object(cover.object);
        if (! x)
            throw Error(ErrorKind::UnknownObject, "unknown object '" + cover.object + "'");
        Sieve s;
        for (auto & name : cover.morphisms) {
            auto f = c.find_morphism(name);
            if (! f)
                throw Error(ErrorKind::UnknownMorphism, "unknown morphism '" + name + "'");
            s.push_back(*f);
        }
        covers[*x].push_back(std::move(s));
    }
    return validate_topology(category, std::move(covers), budget);
}

FiniteSite trivial_topology(const CategoryPtr & category)
{
    vector<vector<Sieve>> covers;
    for (ObjectId x = 0; x < category->object_count(); ++x)
        covers.push_back({maximal_sieve(*category, x)});
    return FiniteSite{category, std::move(covers)};
}

vector<ObjectId> irreducible_objects(const FiniteSite & site)
{
    vector<ObjectId> result;
    for (ObjectId x = 0; x < site.covers.size(); ++x)
        if (site.covers[x].size() == 1)
            result.push_back(x);
    return result;
}

SiteClass site_class(const FiniteSite & site)
{
    auto irreducible = irreducible_objects(site);
    auto any_irreducible = [&](const vector<ObjectId> & objects) {
        return std::any_of(objects.begin(), objects.end(),
            [&](ObjectId x) { return std::binary_search(irreducible.begin(), irreducible.end(), x); });
    };
    return {any_irreducible(initial_objects(*site.category)), any_irreducible(terminal_objects(*site.category))};
}

ConeSite cone_topology(const FiniteSite & site, const SearchBudget & budget)
{
    auto extension = adjoin_initial(site.category);
    auto & c = *site.category;
    vector<vector<Sieve>> covers(extension.category->object_count());
    covers[extension.apex].push_back(maximal_sieve(*extension.category, extension.apex));
    for (ObjectId x = 0; x < c.object_count(); ++x) {
        auto ex = extension.embedding.object_map[x];
        for (auto & s : site.covers[x]) {
            Sieve lifted{extension.bang[ex]};
            for (auto f : s)
                lifted.push_back(extension.embedding.morphism_map[f]);
            std::sort(lifted.begin(), lifted.end());
            covers[ex].push_back(std::move(lifted));
        }
    }
    auto validated = validate_topology(extension.category, std::move(covers), budget);
    return ConeSite{std::move(extension), std::move(validated)};
}

// ---------------------------------------------------------------------------

namespace {
    PointSet unite(const PointSet & a, const PointSet & b)
    {
        PointSet out;
        std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
        return out;
    }

    PointSet intersect(const PointSet & a, const PointSet & b)
    {
        PointSet out;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
        return out;
    }
}

string point_set_name(const FinSpace & space, const PointSet & set)
{
    string out = "{";
    for (size_t i = 0; i < set.size(); ++i)
        out += (i ? "," : "") + space.points[set[i]];
    return out + "}";
}

FinSpace validate_space(const RawSpace & raw)
{
    FinSpace space{raw.points, {}};
    if (std::set<string>(raw.points.begin(), raw.points.end()).size() != raw.points.size())
        throw Error(ErrorKind::DuplicateName, "duplicate point name");
    std::set<PointSet> opens;
    for (auto & open : raw.opens) {
        PointSet set;
        for (auto & name : open) {
            auto i = std::find(raw.points.begin(), raw.points.end(), name);
            if (i == raw.points.end())
                throw Error(ErrorKind::InvalidSpace, "unknown point '" + name + "'");
            set.push_back(size_t(i - raw.points.begin()));
        }
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
        opens.insert(std::move(set));
    }
    space.opens.assign(opens.begin(), opens.end());
    std::sort(space.opens.begin(), space.opens.end(), sieve_order);

    PointSet everything(raw.points.size());
    for (size_t i = 0; i < everything.size(); ++i)
        everything[i] = i;
    if (! opens.contains(PointSet{}))
        throw Error(ErrorKind::InvalidSpace, "the empty set must be open");
    if (! opens.contains(everything))
        throw Error(ErrorKind::InvalidSpace, "the whole space must be open");
    for (auto & a : space.opens)
        for (auto & b : space.opens) {
            if (! opens.contains(unite(a, b)))
                throw Error(ErrorKind::InvalidSpace, "opens not closed under union: " + point_set_name(space, a) + " ∪ " + point_set_name(space, b));
            if (! opens.contains(intersect(a, b)))
                throw Error(ErrorKind::InvalidSpace,
                    "opens not closed under intersection: " + point_set_name(space, a) + " ∩ " + point_set_name(space, b));
        }
    return space;
}

bool is_t0(const FinSpace & space)
{
    for (size_t x = 0; x < space.points.size(); ++x)
        for (size_t y = x + 1; y < space.points.size(); ++y) {
            bool separated = std::any_of(space.opens.begin(), space.opens.end(), [&](const PointSet & u) {
                return std::binary_search(u.begin(), u.end(), x) != std::binary_search(u.begin(), u.end(), y);
            });
            if (! separated)
                return false;
        }
    return true;
}

optional<PointSet> min_nonempty_open(const FinSpace & space)
{
    optional<PointSet> meet;
    for (auto & u : space.opens)
        if (! u.empty())
            meet = meet ? intersect(*meet, u) : u;
    if (! meet || meet->empty())
        return std::nullopt;
    return meet;
}

optional<size_t> open_dense_point(const FinSpace & space)
{
    if (! is_t0(space))
        throw Refusal(ErrorKind::NotT0, "some pair of points is not separated by an open");
    optional<size_t> found;
    for (size_t x = 0; x < space.points.size() && ! found; ++x) {
        bool open = std::find(space.opens.begin(), space.opens.end(), PointSet{x}) != space.opens.end();
        bool dense = std::all_of(space.opens.begin(), space.opens.end(),
            [&](const PointSet & u) { return u.empty() || std::binary_search(u.begin(), u.end(), x); });
        if (open && dense)
            found = x;
    }
    auto minimum = min_nonempty_open(space);
    if (found.has_value() != (minimum && minimum->size() == 1))
        throw Error(ErrorKind::InternalInvariant, "open dense point and minimum nonempty open disagree");
    return found;
}

} // namespace cctopos
