#include <cctopos/dsl.hh>

#include <algorithm>
#include <functional>

namespace cctopos::dsl {

using std::string;
using std::string_view;
using std::vector;

namespace {
    enum class Tok { ident, lbrace, rbrace, semi, newline, colon, dot, equals, star, comma, arrow, end };

    struct Token {
        Tok kind;
        string text;
        SourceLocation where;
    };

    string describe(Tok kind)
    {
        switch (kind) {
        case Tok::ident: return "identifier";
        case Tok::lbrace: return "'{'";
        case Tok::rbrace: return "'}'";
        case Tok::semi: return "';'";
        case Tok::newline: return "newline";
        case Tok::colon: return "':'";
        case Tok::dot: return "'.'";
        case Tok::equals: return "'='";
        case Tok::star: return "'*'";
        case Tok::comma: return "','";
        case Tok::arrow: return "'->'";
        case Tok::end: return "end of input";
        }
        return "?";
    }

    string found_text(const Token & t)
    {
        return t.kind == Tok::ident ? "'" + t.text + "'" : describe(t.kind);
    }

    bool ident_byte(unsigned char c)
    {
        return std::isalnum(c) || c == '_' || c == '\'' || c == '!' || c >= 0x80;
    }

    vector<Token> lex(string_view src)
    {
        vector<Token> out;
        size_t line = 1, column = 1, i = 0;
        auto advance = [&](size_t n) {
            for (size_t k = 0; k < n; ++k, ++i) {
                auto c = static_cast<unsigned char>(src[i]);
                if (c == '\n') {
                    ++line;
                    column = 1;
                }
                else if ((c & 0xC0) != 0x80)
                    ++column;
            }
        };
        while (i < src.size()) {
            auto c = static_cast<unsigned char>(src[i]);
            SourceLocation here{line, column};
            if (c == '#') {
                while (i < src.size() && src[i] != '\n')
                    advance(1);
                continue;
            }
            if (c == '\n') {
                out.push_back({Tok::newline, "\n", here});
                advance(1);
                continue;
            }
            if (c == ' ' || c == '\t' || c == '\r') {
                advance(1);
                continue;
            }
            if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
                out.push_back({Tok::arrow, "->", here});
                advance(2);
                continue;
            }
            static constexpr std::pair<char, Tok> punctuation[] = {{'{', Tok::lbrace}, {'}', Tok::rbrace}, {';', Tok::semi},
                {':', Tok::colon}, {'.', Tok::dot}, {'=', Tok::equals}, {'*', Tok::star}, {',', Tok::comma}};
            auto p = std::find_if(std::begin(punctuation), std::end(punctuation), [&](auto & entry) { return entry.first == char(c); });
            if (p != std::end(punctuation)) {
                out.push_back({p->second, string(1, char(c)), here});
                advance(1);
                continue;
            }
            if (ident_byte(c)) {
                size_t j = i;
                // A dot between identifier characters belongs to the name ("g.f").
                while (j < src.size()
                    && (ident_byte(static_cast<unsigned char>(src[j]))
                        || (src[j] == '.' && j > i && j + 1 < src.size() && ident_byte(static_cast<unsigned char>(src[j + 1])))))
                    ++j;
                out.push_back({Tok::ident, string(src.substr(i, j - i)), here});
                advance(j - i);
                continue;
            }
            throw SyntaxError(here, "character '" + string(1, char(c)) + "'", {"identifier", "punctuation"});
        }
        out.push_back({Tok::end, "", {line, column}});
        return out;
    }

    class Parser {
    public:
        explicit Parser(vector<Token> tokens) : _tokens(std::move(tokens)) {}

        Document document()
        {
            Document doc;
            skip_separators();
            while (peek().kind != Tok::end) {
                doc.declarations.push_back(declaration());
                if (peek().kind == Tok::end)
                    break;
                if (! separator())
                    fail({"';'", "newline", "end of input"});
                skip_separators();
            }
            return doc;
        }

    private:
        const Token & peek() const { return _tokens[_pos]; }

        Token next() { return _tokens[_pos++]; }

        [[noreturn]] void fail(vector<string> expected) const { throw SyntaxError(peek().where, found_text(peek()), std::move(expected)); }

        Token expect(Tok kind)
        {
            if (peek().kind != kind)
                fail({describe(kind)});
            return next();
        }

        Name name()
        {
            auto t = expect(Tok::ident);
            return {t.text, t.where};
        }

        void word(string_view w)
        {
            if (peek().kind != Tok::ident || peek().text != w)
                fail({string(w)});
            next();
        }

        bool separator() const { return peek().kind == Tok::semi || peek().kind == Tok::newline; }

        void skip_separators()
        {
            while (separator())
                next();
        }

        void skip_newlines()
        {
            while (peek().kind == Tok::newline)
                next();
        }

        vector<Name> names(bool nonempty)
        {
            vector<Name> out;
            if (nonempty && peek().kind != Tok::ident)
                fail({"identifier"});
            while (peek().kind == Tok::ident)
                out.push_back(name());
            return out;
        }

        /// `{ a b c }`, possibly across lines, possibly empty.
        vector<Name> braced_names()
        {
            expect(Tok::lbrace);
            vector<Name> out;
            for (skip_newlines(); peek().kind == Tok::ident; skip_newlines())
                out.push_back(name());
            if (peek().kind != Tok::rbrace)
                fail({"identifier", "'}'"});
            next();
            return out;
        }

        /// A braced block of keyword-led statements.
        void block(const vector<string> & keywords, const std::function<void(const Name &)> & statement)
        {
            expect(Tok::lbrace);
            skip_separators();
            while (peek().kind != Tok::rbrace) {
                vector<string> expected;
                for (auto & k : keywords)
                    expected.push_back(k);
                expected.push_back("'}'");
                if (peek().kind != Tok::ident || std::find(keywords.begin(), keywords.end(), peek().text) == keywords.end())
                    fail(expected);
                auto keyword = name();
                statement(keyword);
                if (peek().kind == Tok::rbrace)
                    break;
                if (! separator())
                    fail({"';'", "newline", "'}'"});
                skip_separators();
            }
            next();
        }

        Declaration declaration()
        {
            static const vector<string> heads{"category", "cone", "family", "freecat", "monoid", "opposite", "poset", "presheaf", "site", "space"};
            if (peek().kind != Tok::ident || std::find(heads.begin(), heads.end(), peek().text) == heads.end())
                fail(heads);
            auto head = next().text;
            if (head == "category")
                return category();
            if (head == "freecat")
                return freecat();
            if (head == "monoid")
                return monoid();
            if (head == "poset")
                return poset();
            if (head == "space")
                return space();
            if (head == "site")
                return site();
            if (head == "presheaf")
                return presheaf();
            if (head == "family")
                return family();
            DerivedDecl d{head == "cone" ? DerivedDecl::Kind::cone : DerivedDecl::Kind::opposite, name(), {}};
            word("of");
            d.of = name();
            return d;
        }

        CategoryDecl category()
        {
            CategoryDecl d{name(), {}, {}, {}};
            block({"objects", "arrow", "compose"}, [&](const Name & k) {
                if (k.text == "objects") {
                    auto more = names(true);
                    d.objects.insert(d.objects.end(), more.begin(), more.end());
                }
                else if (k.text == "arrow") {
                    CategoryDecl::Arrow a;
                    a.name = name();
                    expect(Tok::colon);
                    a.dom = name();
                    expect(Tok::arrow);
                    a.cod = name();
                    d.arrows.push_back(std::move(a));
                }
                else {
                    CategoryDecl::Compose c;
                    c.g = name();
                    expect(Tok::dot);
                    c.f = name();
                    expect(Tok::equals);
                    c.result = name();
                    d.composites.push_back(std::move(c));
                }
            });
            return d;
        }

        FreecatDecl freecat()
        {
            FreecatDecl d{name(), {}};
            word("on");
            block({"edges"}, [&](const Name &) {
                if (peek().kind != Tok::ident)
                    fail({"identifier"});
                while (peek().kind == Tok::ident) {
                    FreecatDecl::Edge e;
                    auto first = name();
                    if (peek().kind == Tok::colon) {
                        next();
                        e.label = first;
                        e.source = name();
                    }
                    else
                        e.source = first;
                    expect(Tok::arrow);
                    e.target = name();
                    d.edges.push_back(std::move(e));
                    if (peek().kind == Tok::comma)
                        next();
                }
            });
            return d;
        }

        MonoidDecl monoid()
        {
            MonoidDecl d{name(), {}, {}, {}};
            block({"elements", "unit", "table"}, [&](const Name & k) {
                if (k.text == "elements") {
                    auto more = names(true);
                    d.elements.insert(d.elements.end(), more.begin(), more.end());
                }
                else if (k.text == "unit")
                    d.unit = name();
                else {
                    expect(Tok::lbrace);
                    auto skip = [&] {
                        while (separator() || peek().kind == Tok::comma)
                            next();
                    };
                    for (skip(); peek().kind == Tok::ident; skip()) {
                        MonoidDecl::Entry e;
                        e.left = name();
                        expect(Tok::star);
                        e.right = name();
                        expect(Tok::equals);
                        e.product = name();
                        d.table.push_back(std::move(e));
                    }
                    if (peek().kind != Tok::rbrace)
                        fail({"identifier", "'}'"});
                    next();
                }
            });
            return d;
        }

        PosetDecl poset()
        {
            PosetDecl d{name(), {}, {}};
            block({"elements", "le"}, [&](const Name & k) {
                if (k.text == "elements") {
                    auto more = names(true);
                    d.elements.insert(d.elements.end(), more.begin(), more.end());
                }
                else {
                    PosetDecl::Relation r;
                    r.lower = name();
                    r.upper = name();
                    d.relations.push_back(std::move(r));
                }
            });
            return d;
        }

        SpaceDecl space()
        {
            SpaceDecl d{name(), {}, {}};
            block({"points", "opens"}, [&](const Name & k) {
                if (k.text == "points") {
                    auto more = names(true);
                    d.points.insert(d.points.end(), more.begin(), more.end());
                }
                else {
                    if (peek().kind != Tok::lbrace)
                        fail({"'{'"});
                    while (peek().kind == Tok::lbrace)
                        d.opens.push_back(braced_names());
                }
            });
            return d;
        }

        SiteDecl site()
        {
            SiteDecl d{name(), {}, {}};
            word("over");
            d.over = name();
            block({"cover"}, [&](const Name &) {
                SiteDecl::Cover c;
                c.object = name();
                expect(Tok::colon);
                c.morphisms = braced_names();
                d.covers.push_back(std::move(c));
            });
            return d;
        }

        PresheafDecl presheaf()
        {
            PresheafDecl d{name(), {}, {}, {}};
            word("over");
            d.over = name();
            block({"at", "act"}, [&](const Name & k) {
                if (k.text == "at") {
                    PresheafDecl::At a;
                    a.object = name();
                    expect(Tok::colon);
                    a.elements = braced_names();
                    d.carriers.push_back(std::move(a));
                }
                else {
                    PresheafDecl::Act a;
                    a.morphism = name();
                    expect(Tok::colon);
                    a.from = name();
                    expect(Tok::arrow);
                    a.to = name();
                    d.actions.push_back(std::move(a));
                }
            });
            return d;
        }

        FamilyDecl family()
        {
            FamilyDecl d{name(), {}, {}, {}};
            word("over");
            d.over = name();
            block({"index", "member"}, [&](const Name & k) {
                if (k.text == "index") {
                    auto more = names(true);
                    d.index.insert(d.index.end(), more.begin(), more.end());
                }
                else {
                    FamilyDecl::Member m;
                    m.index = name();
                    expect(Tok::equals);
                    m.presheaf = name();
                    d.members.push_back(std::move(m));
                }
            });
            return d;
        }

        vector<Token> _tokens;
        size_t _pos = 0;
    };

    string join(const vector<Name> & names)
    {
        string out;
        for (auto & n : names)
            out += " " + n.text;
        return out;
    }

    string braces(const vector<Name> & names)
    {
        return names.empty() ? "{ }" : "{" + join(names) + " }";
    }

    struct Printer {
        string & out;

        void operator()(const CategoryDecl & d)
        {
            out += "category " + d.name.text + " {\n";
            if (! d.objects.empty())
                out += "  objects" + join(d.objects) + "\n";
            for (auto & a : d.arrows)
                out += "  arrow " + a.name.text + " : " + a.dom.text + " -> " + a.cod.text + "\n";
            for (auto & c : d.composites)
                out += "  compose " + c.g.text + " . " + c.f.text + " = " + c.result.text + "\n";
            out += "}\n";
        }

        void operator()(const FreecatDecl & d)
        {
            out += "freecat " + d.name.text + " on {\n";
            for (auto & e : d.edges)
                out += "  edges " + (e.label ? e.label->text + " : " : string()) + e.source.text + " -> " + e.target.text + "\n";
            out += "}\n";
        }

        void operator()(const MonoidDecl & d)
        {
            out += "monoid " + d.name.text + " {\n";
            if (! d.elements.empty())
                out += "  elements" + join(d.elements) + "\n";
            if (d.unit)
                out += "  unit " + d.unit->text + "\n";
            if (! d.table.empty()) {
                out += "  table {";
                for (size_t i = 0; i < d.table.size(); ++i)
                    out += (i ? "; " : " ") + d.table[i].left.text + "*" + d.table[i].right.text + "=" + d.table[i].product.text;
                out += " }\n";
            }
            out += "}\n";
        }

        void operator()(const PosetDecl & d)
        {
            out += "poset " + d.name.text + " {\n";
            if (! d.elements.empty())
                out += "  elements" + join(d.elements) + "\n";
            for (auto & r : d.relations)
                out += "  le " + r.lower.text + " " + r.upper.text + "\n";
            out += "}\n";
        }

        void operator()(const SpaceDecl & d)
        {
            out += "space " + d.name.text + " {\n";
            if (! d.points.empty())
                out += "  points" + join(d.points) + "\n";
            if (! d.opens.empty()) {
                out += "  opens";
                for (auto & o : d.opens)
                    out += " " + braces(o);
                out += "\n";
            }
            out += "}\n";
        }

        void operator()(const SiteDecl & d)
        {
            out += "site " + d.name.text + " over " + d.over.text + " {\n";
            for (auto & c : d.covers)
                out += "  cover " + c.object.text + " : " + braces(c.morphisms) + "\n";
            out += "}\n";
        }

        void operator()(const PresheafDecl & d)
        {
            out += "presheaf " + d.name.text + " over " + d.over.text + " {\n";
            for (auto & a : d.carriers)
                out += "  at " + a.object.text + " : " + braces(a.elements) + "\n";
            for (auto & a : d.actions)
                out += "  act " + a.morphism.text + " : " + a.from.text + " -> " + a.to.text + "\n";
            out += "}\n";
        }

        void operator()(const DerivedDecl & d)
        {
            out += string(d.kind == DerivedDecl::Kind::cone ? "cone " : "opposite ") + d.name.text + " of " + d.of.text + "\n";
        }

        void operator()(const FamilyDecl & d)
        {
            out += "family " + d.name.text + " over " + d.over.text + " {\n";
            if (! d.index.empty())
                out += "  index" + join(d.index) + "\n";
            for (auto & m : d.members)
                out += "  member " + m.index.text + " = " + m.presheaf.text + "\n";
            out += "}\n";
        }
    };
}

const Name & declared_name(const Declaration & d)
{
    return std::visit([](auto & decl) -> const Name & { return decl.name; }, d);
}

std::string_view keyword(const Declaration & d)
{
    struct Visitor {
        string_view operator()(const CategoryDecl &) const { return "category"; }
        string_view operator()(const FreecatDecl &) const { return "freecat"; }
        string_view operator()(const MonoidDecl &) const { return "monoid"; }
        string_view operator()(const PosetDecl &) const { return "poset"; }
        string_view operator()(const SpaceDecl &) const { return "space"; }
        string_view operator()(const SiteDecl &) const { return "site"; }
        string_view operator()(const PresheafDecl &) const { return "presheaf"; }
        string_view operator()(const DerivedDecl & d) const { return d.kind == DerivedDecl::Kind::cone ? "cone" : "opposite"; }
        string_view operator()(const FamilyDecl &) const { return "family"; }
    };
    return std::visit(Visitor{}, d);
}

Document parse(string_view source)
{
    return Parser(lex(source)).document();
}

string print(const Document & document)
{
    string out;
    for (size_t i = 0; i < document.declarations.size(); ++i) {
        if (i)
            out += "\n";
        std::visit(Printer{out}, document.declarations[i]);
    }
    return out;
}

} // namespace cctopos::dsl
