#include "workspace.hpp"

#include "procat/error.hpp"
#include "procat/relkit.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace procat::cli {

using nlohmann::json;

namespace {

template <class Map>
const auto& lookup(const Map& m, const std::string& name, const char* what)
{
    auto it = m.find(name);
    if (it == m.end())
        throw UnknownName(std::string("no ") + what + " named " + name);
    return it->second;
}

const json& field(const json& j, const char* key, const std::string& ctx)
{
    if (!j.is_object() || !j.contains(key))
        throw ValidationError(ctx + ": missing field \"" + key + "\"");
    return j.at(key);
}

std::string str(const json& j, const std::string& ctx)
{
    if (!j.is_string())
        throw ValidationError(ctx + ": expected a string, got " + j.dump());
    return j.get<std::string>();
}

std::string str_field(const json& j, const char* key, const std::string& ctx)
{
    return str(field(j, key, ctx), ctx + "." + key);
}

const json& array_field(const json& j, const char* key, const std::string& ctx)
{
    const json& a = field(j, key, ctx);
    if (!a.is_array())
        throw ValidationError(ctx + "." + key + ": expected an array");
    return a;
}

// A row of n strings.
std::vector<std::string> row(const json& j, std::size_t n, const std::string& ctx)
{
    if (!j.is_array() || j.size() != n)
        throw ValidationError(ctx + ": expected an array of " + std::to_string(n) + ", got " + j.dump());
    std::vector<std::string> out;
    for (const auto& x : j)
        out.push_back(str(x, ctx));
    return out;
}

void expect_keys(const json& j, const std::set<std::string>& allowed, const std::string& ctx)
{
    if (!j.is_object())
        throw ValidationError(ctx + ": expected an object");
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key))
            throw ValidationError(ctx + ": unknown field \"" + key + "\"");
}

void require_valid(const Verdict& v, const std::string& ctx)
{
    if (!v.pass)
        throw ValidationError(ctx + ": " + v.check + " failed at " + v.witness);
}

CatRef load_category(const json& j, const std::string& name)
{
    const std::string ctx = "category " + name;
    expect_keys(j, {"name", "objects", "morphisms", "identities", "composition"}, ctx);
    std::vector<std::string> objects;
    for (const auto& o : array_field(j, "objects", ctx))
        objects.push_back(str(o, ctx + ".objects"));

    std::vector<MorDecl> decls;
    std::map<std::string, std::size_t> id_decl;
    for (const auto& r : array_field(j, "identities", ctx)) {
        auto v = row(r, 2, ctx + ".identities");
        if (!id_decl.emplace(v[0], decls.size()).second)
            throw ValidationError(ctx + ": two identities on " + v[0]);
        decls.push_back({v[1], v[0], v[0]});
    }
    std::vector<std::size_t> identities;
    for (const auto& o : objects) {
        auto it = id_decl.find(o);
        if (it == id_decl.end())
            throw ValidationError(ctx + ": no identity on " + o);
        identities.push_back(it->second);
    }
    if (id_decl.size() != objects.size())
        throw ValidationError(ctx + ": identity on an undeclared object");
    for (const auto& r : array_field(j, "morphisms", ctx)) {
        auto v = row(r, 3, ctx + ".morphisms");
        decls.push_back({v[0], v[1], v[2]});
    }

    std::map<std::string, std::size_t> by_atom;
    for (std::size_t i = 0; i < decls.size(); ++i)
        by_atom[mor_atom(decls[i].label, decls[i].src, decls[i].tgt)] = i;
    auto decl_of = [&](const std::string& atom) {
        auto it = by_atom.find(atom);
        if (it == by_atom.end())
            throw ValidationError(ctx + ": composition mentions undeclared morphism " + atom);
        return it->second;
    };
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> table;
    for (const auto& r : array_field(j, "composition", ctx)) {
        auto v = row(r, 3, ctx + ".composition");
        if (!table.emplace(std::pair{decl_of(v[0]), decl_of(v[1])}, decl_of(v[2])).second)
            throw ValidationError(ctx + ": composite of " + v[0] + " after " + v[1] + " given twice");
    }
    const std::size_t n_ids = id_decl.size();
    FinCat c(objects, decls, identities, [&](std::size_t g, std::size_t f) -> std::size_t {
        if (g < n_ids)
            return f;
        if (f < n_ids)
            return g;
        auto it = table.find({g, f});
        if (it == table.end())
            throw ValidationError(ctx + ": missing composite of " +
                                  mor_atom(decls[g].label, decls[g].src, decls[g].tgt) + " after " +
                                  mor_atom(decls[f].label, decls[f].src, decls[f].tgt));
        return it->second;
    });
    require_valid(validate_cat(c), ctx);
    return make_cat(std::move(c));
}

ObId object_in(const FinCat& c, const std::string& name, const std::string& ctx)
{
    try {
        return c.ob(name);
    } catch (const UnknownName&) {
        throw ValidationError(ctx + ": unknown object " + name);
    }
}

MorId morphism_in(const FinCat& c, const std::string& atom, const std::string& ctx)
{
    try {
        return c.mor(atom);
    } catch (const UnknownName&) {
        throw ValidationError(ctx + ": unknown morphism " + atom);
    }
}

FunctorEntry load_functor(const json& j, const std::string& name, const Workspace& ws)
{
    const std::string ctx = "functor " + name;
    expect_keys(j, {"name", "src", "tgt", "objects", "morphisms"}, ctx);
    FunctorEntry e{str_field(j, "src", ctx), str_field(j, "tgt", ctx), {}};
    const CatRef& c = ws.category(e.src);
    const CatRef& d = ws.category(e.tgt);
    FinFunctor& f = e.functor;
    f.src = c;
    f.tgt = d;
    constexpr auto unset = static_cast<std::size_t>(-1);
    f.ob.assign(c->num_objects(), unset);
    f.mor.assign(c->num_morphisms(), unset);
    for (const auto& r : array_field(j, "objects", ctx)) {
        auto v = row(r, 2, ctx + ".objects");
        f.ob[object_in(*c, v[0], ctx)] = object_in(*d, v[1], ctx);
    }
    for (ObId a = 0; a < c->num_objects(); ++a) {
        if (f.ob[a] == unset)
            throw ValidationError(ctx + ": object " + c->ob_name(a) + " is not mapped");
        f.mor[c->id(a)] = d->id(f.ob[a]);
    }
    for (const auto& r : array_field(j, "morphisms", ctx)) {
        auto v = row(r, 2, ctx + ".morphisms");
        f.mor[morphism_in(*c, v[0], ctx)] = morphism_in(*d, v[1], ctx);
    }
    for (MorId m = 0; m < c->num_morphisms(); ++m)
        if (f.mor[m] == unset)
            throw ValidationError(ctx + ": morphism " + c->mor_name(m) + " is not mapped");
    require_valid(validate_functor(f), ctx);
    return e;
}

ProfunctorEntry load_profunctor(const json& j, const std::string& name, const Workspace& ws)
{
    const std::string ctx = "profunctor " + name;
    expect_keys(j, {"name", "left", "right", "fibers", "left_action", "right_action"}, ctx);
    ProfunctorEntry e{str_field(j, "left", ctx), str_field(j, "right", ctx), {}};
    const CatRef& a = ws.category(e.left);
    const CatRef& b = ws.category(e.right);
    Profunctor::Fibers fibers(a->num_objects(), std::vector<std::vector<std::string>>(b->num_objects()));
    for (const auto& r : array_field(j, "fibers", ctx)) {
        if (!r.is_array() || r.size() != 3 || !r[2].is_array())
            throw ValidationError(ctx + ".fibers: expected [a, b, [elements]], got " + r.dump());
        auto& fib = fibers[object_in(*a, str(r[0], ctx), ctx)][object_in(*b, str(r[1], ctx), ctx)];
        if (!fib.empty())
            throw ValidationError(ctx + ": fiber (" + str(r[0], ctx) + "," + str(r[1], ctx) + ") given twice");
        for (const auto& x : r[2])
            fib.push_back(str(x, ctx + ".fibers"));
    }
    auto position = [&](const std::vector<std::string>& fib, const std::string& x, const std::string& where) {
        auto it = std::find(fib.begin(), fib.end(), x);
        if (it == fib.end())
            throw ValidationError(ctx + ": " + where + " names unknown element " + x);
        return static_cast<std::size_t>(it - fib.begin());
    };
    std::map<std::tuple<MorId, ObId, std::string>, std::string> left;
    for (const auto& r : array_field(j, "left_action", ctx)) {
        auto v = row(r, 4, ctx + ".left_action");
        left[{morphism_in(*a, v[0], ctx), object_in(*b, v[1], ctx), v[2]}] = v[3];
    }
    std::map<std::tuple<ObId, std::string, MorId>, std::string> right;
    for (const auto& r : array_field(j, "right_action", ctx)) {
        auto v = row(r, 4, ctx + ".right_action");
        right[{object_in(*a, v[0], ctx), v[1], morphism_in(*b, v[2], ctx)}] = v[3];
    }
    auto lact = [&](MorId s, ObId y, std::size_t i) -> std::size_t {
        if (a->is_identity(s))
            return i;
        const std::string& x = fibers[a->tgt(s)][y][i];
        auto it = left.find({s, y, x});
        if (it == left.end())
            throw ValidationError(ctx + ": missing left action of " + a->mor_name(s) + " on " + x);
        return position(fibers[a->src(s)][y], it->second, "left action of " + a->mor_name(s));
    };
    auto ract = [&](ObId x0, std::size_t i, MorId t) -> std::size_t {
        if (b->is_identity(t))
            return i;
        const std::string& x = fibers[x0][b->src(t)][i];
        auto it = right.find({x0, x, t});
        if (it == right.end())
            throw ValidationError(ctx + ": missing right action of " + b->mor_name(t) + " on " + x);
        return position(fibers[x0][b->tgt(t)], it->second, "right action of " + b->mor_name(t));
    };
    Profunctor p(a, b, fibers, lact, ract);
    require_valid(validate_prof(p), ctx);
    e.prof = make_prof(std::move(p));
    return e;
}

CellEntry load_cell(const json& j, const std::string& name, const Workspace& ws)
{
    const std::string ctx = "cell " + name;
    expect_keys(j, {"name", "src", "tgt", "left", "right", "map"}, ctx);
    CellEntry e{str_field(j, "src", ctx), str_field(j, "tgt", ctx), str_field(j, "left", ctx),
                str_field(j, "right", ctx), {}};
    ProCell& c = e.cell;
    c.src = ws.profunctor(e.src).prof;
    c.tgt = ws.profunctor(e.tgt).prof;
    c.f = ws.functor(e.left).functor;
    c.g = ws.functor(e.right).functor;
    if (!same_cat(c.f.src, c.src->left()) || !same_cat(c.f.tgt, c.tgt->left()) ||
        !same_cat(c.g.src, c.src->right()) || !same_cat(c.g.tgt, c.tgt->right()))
        throw ValidationError(ctx + ": functors do not match the boundary profunctors");
    constexpr auto unset = static_cast<std::size_t>(-1);
    c.comp.assign(c.src->size(), unset);
    const FinCat& A = *c.src->left();
    const FinCat& B = *c.src->right();
    for (const auto& r : array_field(j, "map", ctx)) {
        auto v = row(r, 4, ctx + ".map");
        const ObId x = object_in(A, v[0], ctx), y = object_in(B, v[1], ctx);
        auto find_in = [&](const Profunctor& p, ObId s, ObId t, const std::string& atom) {
            const FinSet& fib = p.fiber(s, t);
            for (std::size_t i = 0; i < fib.size(); ++i)
                if (fib[i] == atom)
                    return p.elem(s, t, i);
            throw ValidationError(ctx + ": unknown element " + atom);
        };
        c.comp[find_in(*c.src, x, y, v[2])] = find_in(*c.tgt, c.f.on_ob(x), c.g.on_ob(y), v[3]);
    }
    for (ElemId x = 0; x < c.comp.size(); ++x)
        if (c.comp[x] == unset)
            throw ValidationError(ctx + ": element " + c.src->full_name(x) + " is not mapped");
    require_valid(validate_cell(c), ctx);
    return e;
}

AlgebraEntry load_algebra(const json& j, const std::string& name, const Workspace& ws)
{
    const std::string ctx = "algebra " + name;
    expect_keys(j, {"name", "category", "kind", "budget", "structure"}, ctx);
    AlgebraEntry e;
    e.category = str_field(j, "category", ctx);
    const std::string kind = str_field(j, "kind", ctx);
    if (kind != "M" && kind != "S")
        throw ValidationError(ctx + ": kind must be M or S");
    e.kind = kind == "M" ? MonadKind::M : MonadKind::S;
    const json& budget = field(j, "budget", ctx);
    if (!budget.is_number_unsigned())
        throw ValidationError(ctx + ": budget must be a non-negative integer");
    e.budget = budget.get<std::size_t>();
    e.structure = str_field(j, "structure", ctx);
    const CatRef& c = ws.category(e.category);
    try {
        if (e.structure == "join")
            e.algebra = join_algebra(preorder_of(*c), e.kind, ArityBudget(e.budget));
        else if (e.structure == "monoid")
            e.algebra = monoid_algebra(c, e.kind, ArityBudget(e.budget));
        else
            throw ValidationError("structure must be join or monoid");
        require_valid(validate_algebra(*e.algebra), ctx);
    } catch (const ValidationError&) {
        throw;
    } catch (const Error& err) {
        throw ValidationError(ctx + ": " + err.kind() + ": " + err.what());
    }
    return e;
}

std::size_t line_of(const std::string& text, std::size_t byte)
{
    const auto end = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(
                   std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(end), '\n'));
}

json sorted_rows(std::vector<std::vector<std::string>> rows)
{
    std::sort(rows.begin(), rows.end());
    return json(rows);
}

}  // namespace

const CatRef& Workspace::category(const std::string& n) const { return lookup(categories, n, "category"); }
const FunctorEntry& Workspace::functor(const std::string& n) const { return lookup(functors, n, "functor"); }
const ProfunctorEntry& Workspace::profunctor(const std::string& n) const
{
    return lookup(profunctors, n, "profunctor");
}
const CellEntry& Workspace::cell(const std::string& n) const { return lookup(cells, n, "cell"); }
const AlgebraEntry& Workspace::algebra(const std::string& n) const { return lookup(algebras, n, "algebra"); }

std::size_t Workspace::size() const
{
    return categories.size() + functors.size() + profunctors.size() + cells.size() + algebras.size();
}

Workspace load_document(const std::string& text)
{
    Workspace ws;
    if (std::all_of(text.begin(), text.end(), [](unsigned char ch) { return std::isspace(ch); }))
        return ws;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(line_of(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
    }
    expect_keys(doc, {"categories", "functors", "profunctors", "cells", "algebras"}, "document");

    std::set<std::string> names;
    auto each = [&](const char* section, auto load) {
        if (!doc.contains(section))
            return;
        const json& arr = doc.at(section);
        if (!arr.is_array())
            throw ValidationError(std::string(section) + ": expected an array");
        for (const auto& entry : arr) {
            const std::string name = str_field(entry, "name", section);
            if (!names.insert(name).second)
                throw ValidationError("duplicate name " + name);
            load(entry, name);
        }
    };
    each("categories", [&](const json& j, const std::string& n) { ws.categories.emplace(n, load_category(j, n)); });
    each("functors", [&](const json& j, const std::string& n) { ws.functors.emplace(n, load_functor(j, n, ws)); });
    each("profunctors",
         [&](const json& j, const std::string& n) { ws.profunctors.emplace(n, load_profunctor(j, n, ws)); });
    each("cells", [&](const json& j, const std::string& n) { ws.cells.emplace(n, load_cell(j, n, ws)); });
    each("algebras", [&](const json& j, const std::string& n) { ws.algebras.emplace(n, load_algebra(j, n, ws)); });
    return ws;
}

Workspace load_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_document(buf.str());
}

std::string emit_document(const Workspace& ws)
{
    json doc = json::object();
    doc["categories"] = json::array();
    for (const auto& [name, c] : ws.categories) {
        std::vector<std::vector<std::string>> ids, mors, comp;
        for (ObId a = 0; a < c->num_objects(); ++a)
            ids.push_back({c->ob_name(a), c->label(c->id(a))});
        for (MorId m = 0; m < c->num_morphisms(); ++m) {
            if (c->is_identity(m))
                continue;
            mors.push_back({c->label(m), c->ob_name(c->src(m)), c->ob_name(c->tgt(m))});
            for (MorId g : c->out(c->tgt(m)))
                if (!c->is_identity(g))
                    comp.push_back({c->mor_name(g), c->mor_name(m), c->mor_name(c->compose(g, m))});
        }
        doc["categories"].push_back({{"name", name},
                                     {"objects", c->objects().atoms()},
                                     {"identities", sorted_rows(ids)},
                                     {"morphisms", sorted_rows(mors)},
                                     {"composition", sorted_rows(comp)}});
    }
    doc["functors"] = json::array();
    for (const auto& [name, e] : ws.functors) {
        const FinFunctor& f = e.functor;
        std::vector<std::vector<std::string>> obs, mors;
        for (ObId a = 0; a < f.src->num_objects(); ++a)
            obs.push_back({f.src->ob_name(a), f.tgt->ob_name(f.on_ob(a))});
        for (MorId m = 0; m < f.src->num_morphisms(); ++m)
            if (!f.src->is_identity(m))
                mors.push_back({f.src->mor_name(m), f.tgt->mor_name(f.on_mor(m))});
        doc["functors"].push_back({{"name", name},
                                   {"src", e.src},
                                   {"tgt", e.tgt},
                                   {"objects", sorted_rows(obs)},
                                   {"morphisms", sorted_rows(mors)}});
    }
    doc["profunctors"] = json::array();
    for (const auto& [name, e] : ws.profunctors) {
        const Profunctor& p = *e.prof;
        const FinCat& A = *p.left();
        const FinCat& B = *p.right();
        json fibers = json::array();
        for (ObId a = 0; a < A.num_objects(); ++a)
            for (ObId b = 0; b < B.num_objects(); ++b)
                if (p.fiber_size(a, b) > 0)
                    fibers.push_back({A.ob_name(a), B.ob_name(b), p.fiber(a, b).atoms()});
        std::vector<std::vector<std::string>> left, right;
        for (ElemId x = 0; x < p.size(); ++x) {
            for (MorId s : A.in(p.a_of(x)))
                if (!A.is_identity(s))
                    left.push_back({A.mor_name(s), B.ob_name(p.b_of(x)), p.name(x), p.name(p.act_left(s, x))});
            for (MorId t : B.out(p.b_of(x)))
                if (!B.is_identity(t))
                    right.push_back({A.ob_name(p.a_of(x)), p.name(x), B.mor_name(t), p.name(p.act_right(x, t))});
        }
        std::vector<json> fiber_rows(fibers.begin(), fibers.end());
        std::sort(fiber_rows.begin(), fiber_rows.end());
        doc["profunctors"].push_back({{"name", name},
                                      {"left", e.left},
                                      {"right", e.right},
                                      {"fibers", fiber_rows},
                                      {"left_action", sorted_rows(left)},
                                      {"right_action", sorted_rows(right)}});
    }
    doc["cells"] = json::array();
    for (const auto& [name, e] : ws.cells) {
        const ProCell& c = e.cell;
        std::vector<std::vector<std::string>> map;
        for (ElemId x = 0; x < c.src->size(); ++x)
            map.push_back({c.src->left()->ob_name(c.src->a_of(x)), c.src->right()->ob_name(c.src->b_of(x)),
                           c.src->name(x), c.tgt->name(c.comp[x])});
        doc["cells"].push_back({{"name", name},
                                {"src", e.src},
                                {"tgt", e.tgt},
                                {"left", e.left},
                                {"right", e.right},
                                {"map", sorted_rows(map)}});
    }
    doc["algebras"] = json::array();
    for (const auto& [name, e] : ws.algebras)
        doc["algebras"].push_back({{"name", name},
                                   {"category", e.category},
                                   {"kind", kind_name(e.kind)},
                                   {"budget", e.budget},
                                   {"structure", e.structure}});
    return doc.dump(2) + "\n";
}

}  // namespace procat::cli
