#include <catch_amalgamated.hpp>

#include <cctopos/fincat.hh>

#include "support/support.hh"

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

RawCategory two_loops()
{
    // One object with a non-identity idempotent e.
    RawCategory raw;
    raw.objects = {"a"};
    raw.arrows = {{"e", "a", "a"}};
    raw.composites = {{"e", "e", "e"}};
    return raw;
}

/// Brute-force associativity over the whole table.
bool associative(const FinCategory & c)
{
    for (MorphismId f = 0; f < c.morphism_count(); ++f)
        for (MorphismId g = 0; g < c.morphism_count(); ++g)
            for (MorphismId h = 0; h < c.morphism_count(); ++h) {
                auto gf = c.try_compose(g, f), hg = c.try_compose(h, g);
                if (gf && hg && c.compose(h, *gf) != c.compose(*hg, f))
                    return false;
            }
    return true;
}

} // namespace

TEST_CASE("walking arrow")
{
    auto c = walking_arrow();
    CHECK(c->object_count() == 2);
    CHECK(c->morphism_count() == 3);
    CHECK(initial_objects(*c) == vector<ObjectId>{c->object("a")});
    CHECK(terminal_objects(*c) == vector<ObjectId>{c->object("b")});
    CHECK(zero_objects(*c).empty());
    CHECK(is_connected_category(*c));
}

TEST_CASE("category validation error kinds")
{
    auto raw = two_loops();
    CHECK_NOTHROW(validate_category(raw));

    auto missing = raw;
    missing.composites.clear();
    CHECK(kind_of([&] { (void)validate_category(missing); }) == ErrorKind::PartialComposition);

    auto conflicting = raw;
    conflicting.composites.push_back({"e", "e", "id_a"});
    CHECK(kind_of([&] { (void)validate_category(conflicting); }) == ErrorKind::ConflictingComposition);

    auto duplicate = raw;
    duplicate.arrows.push_back({"e", "a", "a"});
    CHECK(kind_of([&] { (void)validate_category(duplicate); }) == ErrorKind::DuplicateName);

    auto unknown = raw;
    unknown.arrows.push_back({"g", "a", "c"});
    CHECK(kind_of([&] { (void)validate_category(unknown); }) == ErrorKind::UnknownObject);

    RawCategory mismatch;
    mismatch.objects = {"a", "b"};
    mismatch.arrows = {{"f", "a", "b"}};
    mismatch.composites = {{"f", "f", "f"}};
    CHECK(kind_of([&] { (void)validate_category(mismatch); }) == ErrorKind::DomCodMismatch);

    // A left-zero band is associative.
    RawCategory band;
    band.objects = {"a"};
    band.arrows = {{"e", "a", "a"}, {"f", "a", "a"}};
    band.composites = {{"e", "e", "e"}, {"f", "f", "f"}, {"e", "f", "e"}, {"f", "e", "f"}};
    CHECK_NOTHROW(validate_category(band));
    // e.e = f, e.f = f, f.e = e: (e.e).e = e but e.(e.e) = f.
    band.composites = {{"e", "e", "f"}, {"f", "f", "f"}, {"e", "f", "f"}, {"f", "e", "e"}};
    CHECK(kind_of([&] { (void)validate_category(band); }) == ErrorKind::NonAssociative);
}

TEST_CASE("monoid validation")
{
    auto f2 = multiplicative_f2();
    CHECK(f2.size() == 2);
    auto c = monoid_to_category(f2);
    CHECK(c->object_count() == 1);
    CHECK(c->object_name(0) == monoid_object_name);
    CHECK(right_zero_elements(f2).size() == 1);

    RawMonoid raw{{"u", "z"}, "u", {{"z", "z", "z"}}};
    CHECK(validate_monoid(raw) == validate_monoid(raw));
    RawMonoid partial{{"u", "z", "w"}, "u", {{"z", "z", "z"}}};
    CHECK(kind_of([&] { (void)validate_monoid(partial); }) == ErrorKind::PartialComposition);
    RawMonoid bad_unit{{"u", "z"}, "q", {}};
    CHECK(kind_of([&] { (void)validate_monoid(bad_unit); }) == ErrorKind::UnknownElement);
}

TEST_CASE("right zeros of a small monoid table")
{
    // {1, a, b} with ab = b, ba = a, aa = a, bb = b: both a and b are right zeros.
    RawMonoid raw{{"1", "a", "b"}, "1", {{"a", "a", "a"}, {"a", "b", "b"}, {"b", "a", "a"}, {"b", "b", "b"}}};
    auto m = validate_monoid(raw);
    CHECK(right_zero_elements(m) == vector<std::size_t>{1, 2});
}

TEST_CASE("free path categories")
{
    FinGraph g{{"s", "x", "y"}, {{"l", "s", "x"}, {"r", "s", "y"}}};
    auto c = free_path_category(g);
    CHECK(c->morphism_count() == 5);
    FinGraph path{{"0", "1", "2"}, {{"p", "0", "1"}, {"q", "1", "2"}}};
    auto p = free_path_category(path);
    CHECK(p->morphism_count() == 6);
    CHECK(p->find_morphism("q.p"));
    FinGraph cycle{{"0"}, {{"loop", "0", "0"}}};
    CHECK(kind_of([&] { (void)free_path_category(cycle); }) == ErrorKind::CyclicGraph);
}

TEST_CASE("poset categories")
{
    auto c = poset_category({{"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}});
    CHECK(c->morphism_count() == 6);
    CHECK(c->find_morphism("a_c"));
    CHECK(initial_objects(*c) == vector<ObjectId>{c->object("a")});
}

TEST_CASE("standard shapes")
{
    CHECK(empty_category()->object_count() == 0);
    CHECK_FALSE(is_connected_category(*empty_category()));
    CHECK(terminal_category()->morphism_count() == 1);
    CHECK(discrete_category({"p", "q"})->morphism_count() == 2);
    CHECK_FALSE(is_connected_category(*discrete_category({"p", "q"})));
    for (std::size_t n = 0; n < 5; ++n) {
        auto c = chain_category(n);
        CHECK(c->object_count() == n + 1);
        CHECK(c->morphism_count() == (n + 1) * (n + 2) / 2);
        CHECK(initial_objects(*c).size() == 1);
        CHECK(terminal_objects(*c).size() == 1);
    }
    CHECK(parallel_pair_shape()->morphism_count() == 4);
    CHECK(span_shape()->morphism_count() == 5);
    auto idem = walking_idempotent();
    CHECK(idempotents(*idem).size() == 2);
    CHECK_FALSE(all_idempotents_split(*idem));
}

TEST_CASE("opposite is an involution")
{
    for (auto & c : support::small_categories(3, 8, 3, 2)) {
        auto op = opposite(*c);
        CHECK(associative(*op));
        CHECK(*opposite(*op) == *c);
        CHECK(initial_objects(*op) == terminal_objects(*c));
    }
}

TEST_CASE("cauchy completion of the walking idempotent")
{
    auto c = walking_idempotent();
    auto k = cauchy_completion(c);
    CHECK(k.category->object_count() == 2);
    CHECK(all_idempotents_split(*k.category));
    validate_functor(k.embedding);
    CHECK(is_full_and_faithful(k.embedding));
    // The split object is terminal: e is a right zero for the monoid {id, e}.
    auto terminal = terminal_objects(*k.category);
    REQUIRE(terminal.size() == 1);
    CHECK(k.splits[terminal[0]].idempotent != c->identity(0));
}

TEST_CASE("cauchy completion properties on generated categories")
{
    for (auto & c : support::small_categories(3, 8, 3, 2)) {
        auto k = cauchy_completion(c);
        CHECK(associative(*k.category));
        CHECK(all_idempotents_split(*k.category));
        CHECK(is_full_and_faithful(k.embedding));
        CHECK(k.category->object_count() == idempotents(*c).size());
    }
}

TEST_CASE("adjoining an initial object")
{
    auto c = walking_arrow();
    auto ext = adjoin_initial(c);
    CHECK(ext.category->object_count() == 3);
    CHECK(ext.category->object_name(ext.apex) == adjoined_initial_name);
    CHECK(initial_objects(*ext.category) == vector<ObjectId>{ext.apex});
    validate_functor(ext.embedding);
    CHECK(is_full_and_faithful(ext.embedding));

    // [n]◁ ≅ [n+1].
    for (std::size_t n = 0; n < 4; ++n) {
        auto cone = adjoin_initial(chain_category(n)).category;
        auto chain = chain_category(n + 1);
        REQUIRE(cone->object_count() == chain->object_count());
        REQUIRE(cone->morphism_count() == chain->morphism_count());
        FinFunctor f{cone, chain, {}, {}};
        for (ObjectId x = 0; x < cone->object_count(); ++x)
            f.object_map.push_back(x);
        for (MorphismId m = 0; m < cone->morphism_count(); ++m) {
            auto a = f.object_map[cone->dom(m)], b = f.object_map[cone->cod(m)];
            f.morphism_map.push_back(chain->hom(a, b).at(0));
        }
        validate_functor(f);
        CHECK(is_isomorphism(f));
    }

    auto empty = adjoin_initial(empty_category());
    CHECK(empty.category->object_count() == 1);
}

TEST_CASE("functor validation")
{
    auto c = walking_arrow();
    auto t = terminal_category();
    FinFunctor collapse{c, t, {0, 0}, {0, 0, 0}};
    CHECK_NOTHROW(validate_functor(collapse));
    CHECK_FALSE(is_full_and_faithful(collapse));
    FinFunctor bad{t, c, {0}, {c->morphism("f")}};
    CHECK(kind_of([&] { validate_functor(bad); }) == ErrorKind::InvalidFunctor);
}

TEST_CASE("fixture values")
{
    CHECK(validate_category(RawCategory{})->object_count() == 0);

    auto arrow = walking_arrow();
    auto op = opposite(*arrow);
    auto f = op->morphism("f");
    CHECK(op->object_name(op->dom(f)) == "b");
    CHECK(op->object_name(op->cod(f)) == "a");

    // The trivial monoid is the terminal category.
    auto trivial = monoid_to_category(validate_monoid({{"1"}, "1", {}}));
    CHECK(trivial->morphism_count() == 1);
    CHECK(right_zero_elements(validate_monoid({{"1"}, "1", {}})) == vector<std::size_t>{0});

    // Opposite of a monoid transposes its table.
    RawMonoid left_zeros{{"1", "a", "b"}, "1", {{"a", "a", "a"}, {"a", "b", "a"}, {"b", "a", "b"}, {"b", "b", "b"}}};
    auto m = monoid_to_category(validate_monoid(left_zeros));
    auto mop = opposite(*m);
    for (MorphismId g = 0; g < m->morphism_count(); ++g)
        for (MorphismId h = 0; h < m->morphism_count(); ++h)
            CHECK(m->morphism_name(m->compose(g, h)) == mop->morphism_name(mop->compose(h, g)));

    // Identities only: the completion embedding is bijective.
    auto k = cauchy_completion(arrow);
    CHECK(is_isomorphism(k.embedding));
    CHECK(idempotents(*arrow).size() == 2);

    auto f2 = monoid_to_category(multiplicative_f2());
    CHECK(idempotents(*f2).size() == 2);
    auto kf = cauchy_completion(f2);
    auto zero = zero_objects(*kf.category);
    REQUIRE(zero.size() == 1);
    CHECK(kf.splits[zero[0]].idempotent != f2->identity(0));
    // Direct hom formula: Hom((•,e),(•,e')) = {f | e'∘f∘e = f}.
    for (ObjectId x = 0; x < kf.category->object_count(); ++x)
        for (ObjectId y = 0; y < kf.category->object_count(); ++y) {
            std::size_t expected = 0;
            for (MorphismId g = 0; g < f2->morphism_count(); ++g)
                expected += f2->compose(kf.splits[y].idempotent, f2->compose(g, kf.splits[x].idempotent)) == g;
            CHECK(kf.category->hom(x, y).size() == expected);
        }

    // Terminal category with ∅ adjoined is the walking arrow.
    auto cone = adjoin_initial(terminal_category()).category;
    CHECK(cone->object_count() == 2);
    CHECK(cone->morphism_count() == 3);
    CHECK(initial_objects(*cone).size() == 1);
    CHECK(terminal_objects(*cone).size() == 1);
    CHECK(adjoin_initial(empty_category()).category->morphism_count() == 1);

    CHECK(initial_objects(*discrete_category({"p", "q"})).empty());
    CHECK(terminal_objects(*discrete_category({"p", "q"})).empty());
}
