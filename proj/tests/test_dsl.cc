#include <catch_amalgamated.hpp>

#include <cctopos/workspace.hh>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cctopos;

namespace {

std::string read(const std::filesystem::path & path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

std::vector<std::filesystem::path> corpus_files()
{
    std::vector<std::filesystem::path> out;
    for (auto & entry : std::filesystem::directory_iterator(CCTOPOS_CORPUS))
        if (entry.path().extension() == ".topos")
            out.push_back(entry.path());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("corpus round trips through the printer")
{
    auto files = corpus_files();
    REQUIRE(files.size() >= 5);
    for (auto & path : files) {
        INFO(path.filename().string());
        auto document = dsl::parse(read(path));
        CHECK_FALSE(document.declarations.empty());
        auto printed = dsl::print(document);
        CHECK(dsl::parse(printed) == document);
        // Printing is a fixed point after one pass.
        CHECK(dsl::print(dsl::parse(printed)) == printed);
        CHECK_NOTHROW(load_workspace({{path.string(), read(path)}}));
    }
}

TEST_CASE("declarations resolve to the library objects")
{
    auto ws = load_workspace({{"a", "category A { objects a b; arrow f : a -> b }\n"
                                    "monoid F2 { elements u z; unit u; table { z*z=z; z*u=z; u*z=z; u*u=u } }\n"}});
    CHECK(*ws.categories.at("A") == *walking_arrow());
    auto f2 = ws.monoids.at("F2");
    CHECK(f2.size() == 2);
    CHECK(f2.element_name(f2.unit()) == "u");
    CHECK(f2.mult(1, 1) == 1);
    CHECK(f2.mult(0, 1) == 1);
    CHECK(ws.kinds.at("F2") == "monoid");
}

TEST_CASE("syntax errors carry a location and expected tokens")
{
    try {
        (void)dsl::parse("category A {\n  objects a b\n  arrow f a -> b\n}\n");
        FAIL("parsed");
    }
    catch (const SyntaxError & e) {
        CHECK(e.kind() == ErrorKind::SyntaxError);
        CHECK(e.where().line == 3);
        CHECK(e.where().column == 11);
        CHECK(std::find(e.expected().begin(), e.expected().end(), "':'") != e.expected().end());
    }
    CHECK_THROWS_AS(dsl::parse("widget W { }"), SyntaxError);
    CHECK_THROWS_AS(dsl::parse("category A { objects a"), SyntaxError);
}

TEST_CASE("unresolved references point at the offending token")
{
    try {
        (void)load_workspace({{"f", "category A {\n  objects a b\n  arrow f : a -> c\n}\n"}});
        FAIL("resolved");
    }
    catch (const LocatedError & e) {
        CHECK(e.kind() == ErrorKind::UnresolvedReference);
        CHECK(e.where().line == 3);
        CHECK(e.where().column == 18);
    }
    try {
        (void)load_workspace({{"f", "presheaf P over Nowhere {\n}\n"}});
        FAIL("resolved");
    }
    catch (const LocatedError & e) {
        CHECK(e.kind() == ErrorKind::UnresolvedReference);
        CHECK(e.where().line == 1);
    }
}

TEST_CASE("duplicate and invalid declarations")
{
    try {
        (void)load_workspace({{"f", "poset P { elements a }\nposet P { elements b }\n"}});
        FAIL("resolved");
    }
    catch (const LocatedError & e) {
        CHECK(e.kind() == ErrorKind::DuplicateName);
        CHECK(e.where().line == 2);
    }
    try {
        (void)load_workspace({{"f", "category M { objects a; arrow e : a -> a }\n"}});
        FAIL("resolved");
    }
    catch (const LocatedError & e) {
        CHECK(e.kind() == ErrorKind::ValidationError);
    }
}

TEST_CASE("every declaration form parses")
{
    const char * source = R"(# all forms
category C { objects a b; arrow f : a -> b }
freecat G on { edges l : s -> x; edges s -> y }
monoid M { elements 1 z; unit 1; table { z*z=z } }
poset P { elements p q; le p q }
space S { points x y; opens { } { x } { x y } }
site J over C { cover b : { f } }
presheaf Q over C { at a : { u }; at b : { v }; act f : v -> u }
cone K of C
opposite O of C
family F over C { index i; member i = Q }
)";
    auto document = dsl::parse(source);
    CHECK(document.declarations.size() == 10);
    CHECK(dsl::parse(dsl::print(document)) == document);
    auto ws = resolve(document);
    CHECK(ws.categories.at("G")->morphism_count() == 5);
    CHECK(ws.categories.at("P")->morphism_count() == 3);
    CHECK(ws.categories.at("K")->object_count() == 3);
    CHECK(ws.extensions.contains("K"));
    CHECK(ws.spaces.at("S").opens.size() == 3);
    CHECK(ws.families.at("F").members.size() == 1);
    CHECK(ws.presheaf_base.at("Q") == "C");
}
