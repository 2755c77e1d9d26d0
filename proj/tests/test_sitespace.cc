#include <catch_amalgamated.hpp>

#include <cctopos/sitespace.hh>

#include "support/support.hh"

#include <set>

using namespace cctopos;
using std::vector;

namespace {

ErrorKind kind_of(const std::function<void()> & action)
{
    try {
        action();
    }
    catch (const Error & e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::InternalInvariant;
}

/// The walking arrow with {f} also covering b.
FiniteSite arrow_site()
{
    auto c = walking_arrow();
    return validate_site(c, {{{"b", {"f"}}}});
}

/// Every family of covers satisfying the axioms, by brute force over subsets
/// of sieves (small categories only).
vector<vector<vector<Sieve>>> brute_topologies(const FinCategory & c)
{
    vector<vector<Sieve>> sieves;
    for (ObjectId x = 0; x < c.object_count(); ++x)
        sieves.push_back(sieves_on(c, x));
    vector<vector<vector<Sieve>>> out;
    vector<vector<Sieve>> covers(c.object_count());
    std::function<void(ObjectId)> fill = [&](ObjectId x) {
        if (x == c.object_count()) {
            auto covering = [&](ObjectId y, const Sieve & s) {
                return std::find(covers[y].begin(), covers[y].end(), s) != covers[y].end();
            };
            for (ObjectId y = 0; y < c.object_count(); ++y) {
                if (! covering(y, maximal_sieve(c, y)))
                    return;
                for (auto & s : covers[y])
                    for (auto f : c.into(y))
                        if (! covering(c.dom(f), pullback_sieve(c, f, s)))
                            return;
                for (auto & s : covers[y])
                    for (auto & r : sieves[y]) {
                        bool locally = true;
                        for (auto f : s)
                            locally = locally && covering(c.dom(f), pullback_sieve(c, f, r));
                        if (locally && ! covering(y, r))
                            return;
                    }
            }
            out.push_back(covers);
            return;
        }
        auto & all = sieves[x];
        for (size_t mask = 0; mask < (size_t{1} << all.size()); ++mask) {
            covers[x].clear();
            for (size_t i = 0; i < all.size(); ++i)
                if (mask >> i & 1)
                    covers[x].push_back(all[i]);
            fill(x + 1);
        }
    };
    fill(0);
    return out;
}

FinSpace space(vector<std::string> points, vector<vector<std::string>> opens)
{
    return validate_space({std::move(points), std::move(opens)});
}

} // namespace

TEST_CASE("topology validation")
{
    auto c = walking_arrow();
    CHECK_NOTHROW(trivial_topology(c));
    CHECK_NOTHROW(arrow_site());

    auto f = c->morphism("f");
    auto b = c->object("b");
    vector<vector<Sieve>> missing{{maximal_sieve(*c, 0)}, {}};
    CHECK(kind_of([&] { (void)validate_topology(c, missing); }) == ErrorKind::MissingMaximal);
    vector<vector<Sieve>> not_sieve{{maximal_sieve(*c, 0)}, {maximal_sieve(*c, b), Sieve{c->identity(b)}}};
    CHECK(kind_of([&] { (void)validate_topology(c, not_sieve); }) == ErrorKind::NotASieve);
    // The empty sieve on b pulls back along f to the empty sieve on a.
    vector<vector<Sieve>> unstable{{maximal_sieve(*c, 0)}, {maximal_sieve(*c, b), Sieve{}}};
    CHECK(kind_of([&] { (void)validate_topology(c, unstable); }) == ErrorKind::NotStable);
    (void)f;
}

TEST_CASE("validation agrees with brute-force axioms")
{
    size_t checked = 0;
    for (auto & c : support::small_categories(2, 5, 2, 2)) {
        auto valid = brute_topologies(*c);
        std::set<vector<vector<Sieve>>> accepted(valid.begin(), valid.end());
        // Every brute-force topology is accepted; every other cover family is rejected.
        vector<vector<Sieve>> sieves;
        for (ObjectId x = 0; x < c->object_count(); ++x)
            sieves.push_back(sieves_on(*c, x));
        vector<vector<Sieve>> covers(c->object_count());
        std::function<void(ObjectId)> fill = [&](ObjectId x) {
            if (x == c->object_count()) {
                bool ok = true;
                try {
                    (void)validate_topology(c, covers);
                }
                catch (const Error &) {
                    ok = false;
                }
                CHECK(ok == accepted.contains(covers));
                ++checked;
                return;
            }
            for (size_t mask = 0; mask < (size_t{1} << sieves[x].size()); ++mask) {
                covers[x].clear();
                for (size_t i = 0; i < sieves[x].size(); ++i)
                    if (mask >> i & 1)
                        covers[x].push_back(sieves[x][i]);
                fill(x + 1);
            }
        };
        fill(0);
    }
    CHECK(checked > 100);
}

TEST_CASE("irreducible objects and site classes")
{
    auto arrow = walking_arrow();
    CHECK(irreducible_objects(trivial_topology(arrow)).size() == 2);
    auto site = arrow_site();
    CHECK(irreducible_objects(site) == vector<ObjectId>{arrow->object("a")});
    CHECK(irreducible_objects(trivial_topology(empty_category())).empty());

    auto trivial = site_class(trivial_topology(arrow));
    CHECK(trivial.completely_connected);
    CHECK(trivial.local);
    auto cls = site_class(site);
    CHECK(cls.completely_connected);
    CHECK_FALSE(cls.local);
    auto discrete = site_class(trivial_topology(discrete_category({"p", "q"})));
    CHECK_FALSE(discrete.completely_connected);
    CHECK_FALSE(discrete.local);
}

TEST_CASE("finer topologies have fewer irreducible objects")
{
    for (auto & c : support::small_categories(2, 5, 2, 2)) {
        auto all = brute_topologies(*c);
        for (auto & coarse : all)
            for (auto & fine : all) {
                bool finer = true;
                for (ObjectId x = 0; x < c->object_count(); ++x)
                    for (auto & s : coarse[x])
                        finer = finer && std::find(fine[x].begin(), fine[x].end(), s) != fine[x].end();
                if (! finer)
                    continue;
                auto ic = irreducible_objects(validate_topology(c, coarse));
                auto ifine = irreducible_objects(validate_topology(c, fine));
                CHECK(std::includes(ic.begin(), ic.end(), ifine.begin(), ifine.end()));
            }
    }
}

TEST_CASE("cone topology")
{
    auto point = trivial_topology(terminal_category());
    auto cone = cone_topology(point);
    CHECK(cone.site.category->object_count() == 2);
    CHECK(cone.site.category->morphism_count() == 3);
    for (ObjectId x = 0; x < 2; ++x)
        CHECK(cone.site.covers[x] == vector<Sieve>{maximal_sieve(*cone.site.category, x)});

    auto arrow = cone_topology(trivial_topology(walking_arrow()));
    CHECK(irreducible_objects(arrow.site).size() == 3);

    auto site = cone_topology(arrow_site());
    auto & c = *site.site.category;
    auto b = site.extension.embedding.object_map[walking_arrow()->object("b")];
    auto f = site.extension.embedding.morphism_map[walking_arrow()->morphism("f")];
    Sieve extra{f, site.extension.bang[b]};
    std::sort(extra.begin(), extra.end());
    CHECK(site.site.covers[b].size() == 2);
    CHECK(std::find(site.site.covers[b].begin(), site.site.covers[b].end(), extra) != site.site.covers[b].end());
    CHECK_NOTHROW(validate_topology(site.site.category, site.site.covers));
    CHECK(site_class(site.site).completely_connected);
    (void)c;
}

TEST_CASE("cone topology always validates and is completely connected")
{
    for (auto & c : support::small_categories(2, 5, 2, 2))
        for (auto & covers : brute_topologies(*c)) {
            auto cone = cone_topology(validate_topology(c, covers));
            CHECK_NOTHROW(validate_topology(cone.site.category, cone.site.covers));
            CHECK(site_class(cone.site).completely_connected);
        }
}

TEST_CASE("finite spaces")
{
    auto sierpinski = space({"x", "y"}, {{}, {"x"}, {"x", "y"}});
    CHECK(is_t0(sierpinski));
    CHECK(open_dense_point(sierpinski) == std::optional<size_t>{0});
    CHECK(min_nonempty_open(sierpinski) == std::optional<PointSet>{PointSet{0}});

    auto discrete = space({"x", "y"}, {{}, {"x"}, {"y"}, {"x", "y"}});
    CHECK_FALSE(open_dense_point(discrete));
    CHECK_FALSE(min_nonempty_open(discrete));

    auto chain = space({"x0", "x1", "x2"}, {{}, {"x0"}, {"x0", "x1"}, {"x0", "x1", "x2"}});
    CHECK(open_dense_point(chain) == std::optional<size_t>{0});
    CHECK(point_set_name(chain, *min_nonempty_open(chain)) == "{x0}");

    auto indiscrete = space({"x", "y"}, {{}, {"x", "y"}});
    CHECK_FALSE(is_t0(indiscrete));
    try {
        (void)open_dense_point(indiscrete);
        FAIL("no refusal");
    }
    catch (const Refusal & e) {
        CHECK(e.kind() == ErrorKind::NotT0);
    }

    CHECK(kind_of([] { (void)space({"x", "y"}, {{"x"}, {"x", "y"}}); }) == ErrorKind::InvalidSpace);
    CHECK(kind_of([] { (void)space({"x", "y", "z"}, {{}, {"x"}, {"y"}, {"x", "y", "z"}}); }) == ErrorKind::InvalidSpace);
}

TEST_CASE("dense point agrees with a singleton minimal open on every T0 space of three points")
{
    // All families of subsets of {0,1,2} that form a topology.
    size_t spaces = 0;
    for (unsigned family = 0; family < (1u << 8); ++family) {
        vector<unsigned> opens;
        for (unsigned s = 0; s < 8; ++s)
            if (family >> s & 1)
                opens.push_back(s);
        auto has = [&](unsigned s) { return std::find(opens.begin(), opens.end(), s) != opens.end(); };
        bool topology = has(0) && has(7);
        for (auto a : opens)
            for (auto b : opens)
                topology = topology && has(a | b) && has(a & b);
        if (! topology)
            continue;
        RawSpace raw{{"p", "q", "r"}, {}};
        for (auto s : opens) {
            vector<std::string> pts;
            for (unsigned i = 0; i < 3; ++i)
                if (s >> i & 1)
                    pts.push_back(raw.points[i]);
            raw.opens.push_back(pts);
        }
        auto sp = validate_space(raw);
        if (! is_t0(sp))
            continue;
        ++spaces;
        auto min = min_nonempty_open(sp);
        auto dense = open_dense_point(sp);
        CHECK(dense.has_value() == (min && min->size() == 1));
        if (dense)
            CHECK(*min == PointSet{*dense});
    }
    CHECK(spaces == 19);
}
