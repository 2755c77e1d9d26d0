#include <cctopos/toposcalc.hh>
#include <cctopos/workspace.hh>

#include <openssl/evp.h>

#include <algorithm>
#include <set>
#include <sstream>

namespace cctopos {

using nlohmann::json;
using std::string;
using std::vector;

namespace {
    [[noreturn]] void unresolved(const dsl::Name & n, const string & what)
    {
        throw LocatedError(ErrorKind::UnresolvedReference, n.where, what + " '" + n.text + "' is not declared");
    }

    /// Runs a module validator and relocates its error onto the declaration.
    template <typename F>
    auto validated(const dsl::Name & declaration, std::string_view kind, F && f)
    {
        try {
            return f();
        }
        catch (const LocatedError &) {
            throw;
        }
        catch (const Error & e) {
            throw LocatedError(ErrorKind::ValidationError, declaration.where,
                string(kind) + " '" + declaration.text + "' is invalid (" + string(to_string(e.kind())) + "): " + e.what());
        }
    }

    std::vector<string> texts(const vector<dsl::Name> & names)
    {
        vector<string> out;
        for (auto & n : names)
            out.push_back(n.text);
        return out;
    }

    class Resolver {
    public:
        Resolver(Workspace & ws, const SearchBudget & budget) : _ws(ws), _budget(budget) {}

        void operator()(const dsl::CategoryDecl & d)
        {
            claim(d.name, "category");
            std::set<string> objects, morphisms;
            for (auto & o : d.objects) {
                objects.insert(o.text);
                morphisms.insert("id_" + o.text);
            }
            RawCategory raw;
            raw.objects = texts(d.objects);
            for (auto & a : d.arrows) {
                for (auto * end : {&a.dom, &a.cod})
                    if (! objects.contains(end->text))
                        unresolved(*end, "object");
                morphisms.insert(a.name.text);
                raw.arrows.push_back({a.name.text, a.dom.text, a.cod.text});
            }
            for (auto & c : d.composites) {
                for (auto * n : {&c.g, &c.f, &c.result})
                    if (! morphisms.contains(n->text))
                        unresolved(*n, "arrow");
                raw.composites.push_back({c.g.text, c.f.text, c.result.text});
            }
            _ws.categories[d.name.text] = validated(d.name, "category", [&] { return validate_category(raw); });
        }

        void operator()(const dsl::FreecatDecl & d)
        {
            claim(d.name, "freecat");
            FinGraph graph;
            for (auto & e : d.edges) {
                for (auto * v : {&e.source, &e.target})
                    if (std::find(graph.vertices.begin(), graph.vertices.end(), v->text) == graph.vertices.end())
                        graph.vertices.push_back(v->text);
                graph.edges.push_back({e.label ? e.label->text : string(), e.source.text, e.target.text});
            }
            _ws.categories[d.name.text] = validated(d.name, "freecat", [&] { return free_path_category(graph); });
        }

        void operator()(const dsl::MonoidDecl & d)
        {
            claim(d.name, "monoid");
            std::set<string> elements;
            for (auto & e : d.elements)
                elements.insert(e.text);
            if (! d.unit)
                throw LocatedError(ErrorKind::ValidationError, d.name.where, "monoid '" + d.name.text + "' has no unit");
            if (! elements.contains(d.unit->text))
                unresolved(*d.unit, "element");
            RawMonoid raw{texts(d.elements), d.unit->text, {}};
            for (auto & entry : d.table) {
                for (auto * n : {&entry.left, &entry.right, &entry.product})
                    if (! elements.contains(n->text))
                        unresolved(*n, "element");
                raw.table.push_back({entry.left.text, entry.right.text, entry.product.text});
            }
            auto monoid = validated(d.name, "monoid", [&] { return validate_monoid(raw); });
            _ws.categories[d.name.text] = monoid_to_category(monoid);
            _ws.monoids.emplace(d.name.text, std::move(monoid));
        }

        void operator()(const dsl::PosetDecl & d)
        {
            claim(d.name, "poset");
            std::set<string> elements;
            for (auto & e : d.elements)
                elements.insert(e.text);
            RawPoset raw{texts(d.elements), {}};
            for (auto & r : d.relations) {
                for (auto * n : {&r.lower, &r.upper})
                    if (! elements.contains(n->text))
                        unresolved(*n, "element");
                raw.relations.emplace_back(r.lower.text, r.upper.text);
            }
            _ws.categories[d.name.text] = validated(d.name, "poset", [&] { return poset_category(raw); });
        }

        void operator()(const dsl::SpaceDecl & d)
        {
            claim(d.name, "space");
            std::set<string> points;
            for (auto & p : d.points)
                points.insert(p.text);
            RawSpace raw{texts(d.points), {}};
            for (auto & open : d.opens) {
                for (auto & p : open)
                    if (! points.contains(p.text))
                        unresolved(p, "point");
                raw.opens.push_back(texts(open));
            }
            _ws.spaces.emplace(d.name.text, validated(d.name, "space", [&] { return validate_space(raw); }));
        }

        void operator()(const dsl::SiteDecl & d)
        {
            claim(d.name, "site");
            auto c = category(d.over);
            RawSite raw;
            for (auto & cover : d.covers) {
                if (! c->find_object(cover.object.text))
                    unresolved(cover.object, "object");
                for (auto & m : cover.morphisms)
                    if (! c->find_morphism(m.text))
                        unresolved(m, "morphism");
                raw.covers.push_back({cover.object.text, texts(cover.morphisms)});
            }
            _ws.sites.emplace(d.name.text, validated(d.name, "site", [&] { return validate_site(c, raw, _budget); }));
        }

        void operator()(const dsl::PresheafDecl & d)
        {
            claim(d.name, "presheaf");
            auto c = category(d.over);
            std::map<string, std::set<string>> carriers;
            RawPresheaf raw;
            for (auto & at : d.carriers) {
                if (! c->find_object(at.object.text))
                    unresolved(at.object, "object");
                for (auto & e : at.elements)
                    carriers[at.object.text].insert(e.text);
                raw.carriers.push_back({at.object.text, texts(at.elements)});
            }
            for (auto & act : d.actions) {
                auto f = c->find_morphism(act.morphism.text);
                if (! f)
                    unresolved(act.morphism, "morphism");
                if (! carriers[c->object_name(c->cod(*f))].contains(act.from.text))
                    unresolved(act.from, "element of " + c->object_name(c->cod(*f)));
                if (! carriers[c->object_name(c->dom(*f))].contains(act.to.text))
                    unresolved(act.to, "element of " + c->object_name(c->dom(*f)));
                raw.actions.push_back({act.morphism.text, act.from.text, act.to.text});
            }
            _ws.presheaves.emplace(d.name.text, validated(d.name, "presheaf", [&] { return validate_presheaf(c, raw); }));
            _ws.presheaf_base[d.name.text] = d.over.text;
        }

        void operator()(const dsl::DerivedDecl & d)
        {
            bool cone = d.kind == dsl::DerivedDecl::Kind::cone;
            claim(d.name, cone ? "cone" : "opposite");
            auto c = category(d.of);
            if (cone) {
                auto extension = adjoin_initial(c);
                _ws.categories[d.name.text] = extension.category;
                _ws.extensions.emplace(d.name.text, std::move(extension));
            }
            else
                _ws.categories[d.name.text] = opposite(*c);
        }

        void operator()(const dsl::FamilyDecl & d)
        {
            claim(d.name, "family");
            auto c = category(d.over);
            FamilyObject family{c, texts(d.index), {}};
            if (std::set<string>(family.index.begin(), family.index.end()).size() != family.index.size())
                throw LocatedError(ErrorKind::ValidationError, d.name.where, "family '" + d.name.text + "' repeats an index");
            vector<std::optional<Presheaf>> members(family.index.size());
            for (auto & m : d.members) {
                auto i = std::find(family.index.begin(), family.index.end(), m.index.text);
                if (i == family.index.end())
                    unresolved(m.index, "index");
                auto p = _ws.presheaves.find(m.presheaf.text);
                if (p == _ws.presheaves.end())
                    unresolved(m.presheaf, "presheaf");
                if (! same_category(p->second.base(), c))
                    throw LocatedError(ErrorKind::ValidationError, m.presheaf.where, "presheaf '" + m.presheaf.text + "' is not over '" + d.over.text + "'");
                auto & slot = members[size_t(i - family.index.begin())];
                if (slot)
                    throw LocatedError(ErrorKind::ValidationError, m.index.where, "index '" + m.index.text + "' has two members");
                slot = p->second;
            }
            for (size_t i = 0; i < members.size(); ++i) {
                if (! members[i])
                    throw LocatedError(ErrorKind::ValidationError, d.name.where, "index '" + family.index[i] + "' has no member");
                family.members.push_back(*members[i]);
            }
            _ws.families.emplace(d.name.text, std::move(family));
            _ws.family_base[d.name.text] = d.over.text;
        }

    private:
        void claim(const dsl::Name & name, const string & kind)
        {
            if (_ws.kinds.contains(name.text))
                throw LocatedError(ErrorKind::DuplicateName, name.where, "'" + name.text + "' is already declared as a " + _ws.kinds[name.text]);
            _ws.kinds[name.text] = kind;
        }

        CategoryPtr category(const dsl::Name & name)
        {
            auto c = _ws.categories.find(name.text);
            if (c == _ws.categories.end()) {
                if (_ws.kinds.contains(name.text))
                    throw LocatedError(ErrorKind::UnresolvedReference, name.where, "'" + name.text + "' is a " + _ws.kinds[name.text] + ", not a category");
                unresolved(name, "category");
            }
            return c->second;
        }

        Workspace & _ws;
        SearchBudget _budget;
    };
}

Workspace resolve(dsl::Document document, const SearchBudget & budget)
{
    Workspace ws;
    ws.document = std::move(document);
    Resolver resolver(ws, budget);
    for (auto & d : ws.document.declarations)
        std::visit(resolver, d);
    return ws;
}

Workspace load_workspace(const vector<SourceFile> & files, const SearchBudget & budget)
{
    dsl::Document all;
    for (auto & file : files) {
        auto doc = dsl::parse(file.text);
        all.declarations.insert(all.declarations.end(), doc.declarations.begin(), doc.declarations.end());
    }
    return resolve(std::move(all), budget);
}

string input_digest(const vector<SourceFile> & files)
{
    auto * ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    for (auto & file : files) {
        auto length = std::to_string(file.text.size()) + ":";
        EVP_DigestUpdate(ctx, length.data(), length.size());
        EVP_DigestUpdate(ctx, file.text.data(), file.text.size());
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int size = 0;
    EVP_DigestFinal_ex(ctx, digest, &size);
    EVP_MD_CTX_free(ctx);
    static constexpr char hex[] = "0123456789abcdef";
    string out = "sha256:";
    for (unsigned i = 0; i < size; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

int Report::exit_code() const
{
    if (input_error)
        return 3;
    if (checks.count(Status::fail) > 0)
        return 1;
    if (checks.count(Status::refused) > 0)
        return 2;
    return 0;
}

// ---------------------------------------------------------------------------

namespace {
    json presheaf_json(const Presheaf & p)
    {
        auto & c = p.category();
        json carriers = json::array();
        json sizes = json::array();
        for (ObjectId x = 0; x < c.object_count(); ++x) {
            carriers.push_back({{"object", c.object_name(x)}, {"elements", p.elements(x)}});
            sizes.push_back(p.size(x));
        }
        return {{"objects", c.object_names()}, {"carrier_sizes", sizes}, {"carriers", carriers}};
    }

    json split_json(const FinCategory & c, const std::optional<SplitIdempotent> & s)
    {
        return s ? json(split_name(c, *s)) : json(nullptr);
    }

    json sieves_json(const FinCategory & c, const vector<Sieve> & sieves)
    {
        json out = json::array();
        for (auto & s : sieves)
            out.push_back(sieve_name(c, s));
        return out;
    }

    json site_json(const FiniteSite & site)
    {
        auto & c = *site.category;
        json covers = json::array();
        for (ObjectId x = 0; x < c.object_count(); ++x)
            covers.push_back({{"object", c.object_name(x)}, {"sieves", sieves_json(c, site.covers[x])}});
        return covers;
    }

    class Command {
    public:
        Command(const Workspace & ws, Report & report, const vector<string> & args, const CommandOptions & options) :
            _ws(ws),
            _report(report),
            _args(args),
            _options(options)
        {
        }

        void run(const string & name)
        {
            if (name == "validate")
                validate();
            else if (name == "classify")
                classify();
            else if (name == "container")
                container();
            else if (name == "omega")
                omega_command();
            else if (name == "pi0")
                pi0_command();
            else if (name == "sections")
                sections();
            else if (name == "gamma")
                gamma();
            else if (name == "reflect")
                reflect();
            else if (name == "fam")
                fam();
            else if (name == "site")
                site();
            else if (name == "space")
                space();
            else if (name == "props")
                props();
            else if (name == "battery")
                battery_command();
            else
                throw Error(ErrorKind::UnknownCommand, "unknown command '" + name + "'");
        }

    private:
        const string & arg(size_t i) const
        {
            if (i >= _args.size())
                throw Error(ErrorKind::UnknownName, "missing argument " + std::to_string(i + 1));
            return _args[i];
        }

        CategoryPtr category(const string & name) const
        {
            auto c = _ws.categories.find(name);
            if (c == _ws.categories.end())
                throw Error(ErrorKind::UnknownName, "no category named '" + name + "'");
            return c->second;
        }

        const Presheaf & presheaf(const string & name) const
        {
            auto p = _ws.presheaves.find(name);
            if (p == _ws.presheaves.end())
                throw Error(ErrorKind::UnknownName, "no presheaf named '" + name + "'");
            return p->second;
        }

        Battery battery(const CategoryPtr & c) const
        {
            vector<BatteryItem> extras;
            for (auto & name : _options.battery) {
                auto & p = presheaf(name);
                if (! same_category(p.base(), c))
                    throw Error(ErrorKind::WrongBase, "battery presheaf '" + name + "' is over a different category");
                extras.push_back({name, p});
            }
            return build_battery(c, extras, _options.budget);
        }

        json & values() { return _report.values; }
        CheckList & checks() { return _report.checks; }

        void validate()
        {
            json declarations = json::array();
            for (auto & d : _ws.document.declarations) {
                auto & name = dsl::declared_name(d).text;
                json entry{{"name", name}, {"kind", string(dsl::keyword(d))}};
                if (auto c = _ws.categories.find(name); c != _ws.categories.end()) {
                    entry["objects"] = c->second->object_count();
                    entry["morphisms"] = c->second->morphism_count();
                }
                if (auto p = _ws.presheaves.find(name); p != _ws.presheaves.end())
                    entry["carrier_sizes"] = p->second.carrier_sizes();
                declarations.push_back(entry);
                checks().add("valid " + name, true);
            }
            values()["declarations"] = declarations;
        }

        void classify()
        {
            auto c = category(arg(0));
            auto r = classify_axioms(c, _options.budget);
            auto d = duality_check(c, _options.budget);
            auto & base = *c;
            values()["ax2"] = r.ax2;
            values()["ax_minus2"] = r.ax_minus2;
            values()["ax_inf"] = r.ax_inf;
            values()["ax3"] = r.ax3();
            values()["ax_minus3"] = r.ax_minus3();
            values()["ax_inf_via_sections"] = r.ax_inf_via_sections;
            values()["connected"] = r.connected;
            values()["locally_connected"] = r.locally_connected;
            values()["string_length"] = r.string_length;
            values()["witnesses"] = {{"initial", split_json(base, r.initial)}, {"terminal", split_json(base, r.terminal)},
                {"zero", split_json(base, r.zero)}, {"container", r.container ? presheaf_json(r.container->container) : json(nullptr)}};
            values()["notes"] = r.notes;
            values()["opposite"] = {{"ax2", d.opposite.ax2}, {"ax_minus2", d.opposite.ax_minus2}};
            checks().add("ax_inf routes agree", r.ax_inf == r.ax_inf_via_sections);
            bool monotone = (! r.ax_inf || (r.ax2 && r.ax_minus2 && r.connected)) && (! r.ax2 || r.connected) && (! r.ax_minus2 || r.connected);
            checks().add("axiom lattice monotone", monotone);
            checks().add("duality with opposite", d.holds);
        }

        void container()
        {
            auto c = category(arg(0));
            auto w = container_object(c);
            if (! w) {
                checks().refuse("container exists", "the Cauchy completion has no initial object");
                values()["container"] = nullptr;
                return;
            }
            checks().add("container exists", true);
            checks().add("container connected", pi0(w->container).count == 1);
            values()["initial_split"] = split_name(*c, w->initial_split);
            values()["container"] = presheaf_json(w->container);
        }

        void omega_command()
        {
            auto c = category(arg(0));
            auto o = omega(c, _options.budget);
            values()["omega"] = presheaf_json(o);
            values()["pi0"] = pi0(o).count;
        }

        void pi0_command()
        {
            auto & p = presheaf(arg(0));
            auto components = pi0(p);
            auto & c = p.category();
            json list = json::array();
            for (size_t k = 0; k < components.count; ++k) {
                json members = json::array();
                for (ObjectId x = 0; x < c.object_count(); ++x)
                    for (ElementId e = 0; e < p.size(x); ++e)
                        if (components.component_of[x][e] == k)
                            members.push_back(c.object_name(x) + ":" + p.element_name(x, e));
                list.push_back(members);
            }
            values()["count"] = components.count;
            values()["components"] = list;
        }

        void sections()
        {
            auto & p = presheaf(arg(0));
            auto & c = p.category();
            json list = json::array();
            for (auto & s : global_sections(p, _options.budget)) {
                json entry = json::array();
                for (ObjectId x = 0; x < c.object_count(); ++x)
                    entry.push_back(c.object_name(x) + ":" + p.element_name(x, s[x]));
                list.push_back(entry);
            }
            values()["count"] = list.size();
            values()["sections"] = list;
        }

        void gamma()
        {
            auto c = category(arg(0));
            vector<string> s(_args.begin() + 1, _args.end());
            if (std::set<string>(s.begin(), s.end()).size() != s.size())
                throw Error(ErrorKind::ValidationError, "the set S repeats an element");
            values()["set"] = s;
            try {
                values()["gamma2"] = presheaf_json(gamma2(c, s));
                checks().add("gamma2 exists", true);
            }
            catch (const Refusal & r) {
                values()["gamma2"] = nullptr;
                checks().refuse("gamma2 exists", r.what());
            }
            try {
                values()["gamma_minus2"] = presheaf_json(gamma_minus2(c, s, _options.budget));
                checks().add("gamma_minus2 exists", true);
            }
            catch (const Refusal & r) {
                values()["gamma_minus2"] = nullptr;
                checks().refuse("gamma_minus2 exists", r.what());
            }
        }

        void reflect()
        {
            auto & p = presheaf(arg(0));
            auto r = connected_reflection(p, _options.budget);
            values()["reflection"] = presheaf_json(r.reflected);
            checks().append(reflection_checks(p, battery(p.base()), _options.budget));
        }

        void fam()
        {
            auto & name = arg(0);
            if (auto f = _ws.families.find(name); f != _ws.families.end()) {
                auto extension = adjoin_initial(f->second.base);
                auto p = recompose_family(extension, f->second);
                values()["presheaf"] = presheaf_json(p);
                auto back = decompose_family(extension, p);
                bool round_trip = back.index == f->second.index && back.members.size() == f->second.members.size();
                for (size_t i = 0; round_trip && i < back.members.size(); ++i)
                    round_trip = is_isomorphic(back.members[i], f->second.members[i], _options.budget).has_value();
                checks().add("decompose after recompose is the identity", round_trip);
                auto verdict = closed_subtopos_test(extension, p, _options.budget);
                values()["closed_subtopos"] = verdict.value();
                checks().add("closed subtopos criteria agree", verdict.agree());
                return;
            }
            auto & p = presheaf(name);
            auto base = _ws.presheaf_base.at(name);
            auto extension = _ws.extensions.find(base);
            if (extension == _ws.extensions.end())
                throw Error(ErrorKind::WrongBase, "'" + name + "' is not over a category declared with cone");
            auto family = decompose_family(extension->second, p);
            json members = json::array();
            for (size_t i = 0; i < family.index.size(); ++i)
                members.push_back({{"index", family.index[i]}, {"member", presheaf_json(family.members[i])}});
            values()["index"] = family.index;
            values()["members"] = members;
            auto back = recompose_family(extension->second, family);
            checks().add("recompose after decompose is the identity", is_isomorphic(back, p, _options.budget).has_value());
            auto verdict = closed_subtopos_test(extension->second, p, _options.budget);
            values()["closed_subtopos"] = verdict.value();
            checks().add("closed subtopos criteria agree", verdict.agree());
        }

        void site()
        {
            auto s = _ws.sites.find(arg(0));
            if (s == _ws.sites.end())
                throw Error(ErrorKind::UnknownName, "no site named '" + arg(0) + "'");
            auto & c = *s->second.category;
            json irreducible = json::array();
            for (auto x : irreducible_objects(s->second))
                irreducible.push_back(c.object_name(x));
            auto cls = site_class(s->second);
            values()["covers"] = site_json(s->second);
            values()["irreducible"] = irreducible;
            values()["completely_connected"] = cls.completely_connected;
            values()["local"] = cls.local;
            try {
                auto cone = cone_topology(s->second, _options.budget);
                values()["cone_topology"] = site_json(cone.site);
                checks().add("cone topology valid", true);
                checks().add("cone topology completely connected", site_class(cone.site).completely_connected);
            }
            catch (const SizeGuardExceeded &) {
                throw;
            }
            catch (const Error & e) {
                checks().add("cone topology valid", false, e.what());
            }
        }

        void space()
        {
            auto s = _ws.spaces.find(arg(0));
            if (s == _ws.spaces.end())
                throw Error(ErrorKind::UnknownName, "no space named '" + arg(0) + "'");
            auto & x = s->second;
            auto minimum = min_nonempty_open(x);
            values()["min_nonempty_open"] = minimum ? json(point_set_name(x, *minimum)) : json(nullptr);
            values()["t0"] = is_t0(x);
            try {
                auto point = open_dense_point(x);
                values()["open_dense_point"] = point ? json(x.points[*point]) : json(nullptr);
                checks().add("dense point iff singleton minimum open", true);
            }
            catch (const Refusal & r) {
                values()["open_dense_point"] = nullptr;
                checks().refuse("open dense point", r.what());
            }
        }

        void props()
        {
            auto c = category(arg(0));
            auto b = battery(c);
            values()["battery"] = b.size();
            checks().append(container_properties(c, b, _options.budget));
        }

        void battery_command()
        {
            auto c = category(arg(0));
            auto b = battery(c);
            json names = json::array();
            for (auto & item : b)
                names.push_back(item.name);
            values()["battery"] = names;
            auto adjunctions = verify_adjunctions(c, b, 3, 4096, _options.budget);
            json tallies = json::array();
            for (auto & t : adjunctions.tallies)
                tallies.push_back({{"name", t.name}, {"checked", t.checked}, {"skipped", t.skipped}, {"naturality_checks", t.naturality_checks},
                    {"violations", t.violations.size()}});
            values()["adjunctions"] = tallies;
            checks().append(adjunctions.checks);
            try {
                checks().append(preservation_report(c, b, _options.budget));
            }
            catch (const Refusal & r) {
                checks().refuse("pi0 preservation", r.what());
            }
        }

        const Workspace & _ws;
        Report & _report;
        const vector<string> & _args;
        const CommandOptions & _options;
    };
}

Report run_command(const Workspace & workspace, const string & command, const vector<string> & arguments, const CommandOptions & options)
{
    Report report;
    report.command = command;
    report.arguments = arguments;
    try {
        Command(workspace, report, arguments, options).run(command);
    }
    catch (const Refusal & r) {
        report.checks.refuse(command, r.what());
    }
    catch (const SizeGuardExceeded & e) {
        report.checks.refuse("size guard", e.what());
        report.error = e.what();
        report.error_kind = string(to_string(e.kind()));
        report.values["budget"] = e.budget();
    }
    catch (const Error & e) {
        report.error = e.what();
        report.error_kind = string(to_string(e.kind()));
        report.input_error = true;
    }
    return report;
}

Report input_error_report(const string & command, const vector<string> & arguments, const string & digest, const Error & error)
{
    Report report;
    report.command = command;
    report.arguments = arguments;
    report.input_digest = digest;
    report.error = error.what();
    report.error_kind = string(to_string(error.kind()));
    report.input_error = true;
    return report;
}

namespace {
    void flatten(const json & value, const string & prefix, std::ostringstream & out)
    {
        if (value.is_object() && ! value.empty()) {
            for (auto & [key, item] : value.items())
                flatten(item, prefix.empty() ? key : prefix + "." + key, out);
            return;
        }
        out << "  " << prefix << " = " << value.dump() << "\n";
    }
}

string emit_report(const Report & report, Format format)
{
    if (format == Format::json) {
        json checks = json::array();
        for (auto & c : report.checks.items) {
            json entry{{"name", c.name}, {"status", string(to_string(c.status))}};
            if (! c.witness.empty())
                entry["witness"] = c.witness;
            checks.push_back(entry);
        }
        json out{{"command", report.command}, {"arguments", report.arguments}, {"input_digest", report.input_digest},
            {"version", report.version}, {"checks", checks}, {"values", report.values}, {"exit_code", report.exit_code()}};
        if (report.error)
            out["error"] = {{"kind", *report.error_kind}, {"message", *report.error}};
        return out.dump(2) + "\n";
    }

    std::ostringstream out;
    out << "command  " << report.command;
    for (auto & a : report.arguments)
        out << " " << a;
    out << "\nversion  " << report.version << "\ninput    " << report.input_digest << "\n";
    if (! report.checks.items.empty()) {
        out << "\nchecks\n";
        for (auto & c : report.checks.items) {
            string status = c.status == Status::pass ? "ok" : c.status == Status::fail ? "FAIL" : "REFUSED";
            status.resize(9, ' ');
            out << "  " << status << c.name;
            if (! c.witness.empty())
                out << "  [" << c.witness << "]";
            out << "\n";
        }
    }
    if (! report.values.empty()) {
        out << "\nvalues\n";
        flatten(report.values, "", out);
    }
    if (report.error)
        out << "\nerror (" << *report.error_kind << "): " << *report.error << "\n";
    out << "\nexit " << report.exit_code() << "\n";
    return out.str();
}

} // namespace cctopos
