#include "procat/fincat.hpp"

#include "procat/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

namespace procat {

std::string mor_atom(std::string_view label, std::string_view src, std::string_view tgt)
{
    std::string out(label);
    out += ':';
    out += src;
    out += "->";
    out += tgt;
    return out;
}

FinCat::FinCat() = default;

FinCat::FinCat(std::vector<std::string> objects, std::vector<MorDecl> morphisms,
               std::vector<std::size_t> identities, const ComposeFn& compose)
    : objects_(objects)
{
    const std::size_t n = objects_.size();
    const std::size_t m = morphisms.size();
    if (identities.size() != objects.size())
        throw ValidationError("one identity per object required");

    std::vector<ObId> dsrc(m), dtgt(m);
    for (std::size_t i = 0; i < m; ++i) {
        auto s = objects_.index_of(morphisms[i].src);
        auto t = objects_.index_of(morphisms[i].tgt);
        if (!s || !t)
            throw ValidationError("morphism " + morphisms[i].label + " has unknown endpoint");
        dsrc[i] = *s;
        dtgt[i] = *t;
    }

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<std::string> atoms(m);
    for (std::size_t i = 0; i < m; ++i)
        atoms[i] = mor_atom(morphisms[i].label, morphisms[i].src, morphisms[i].tgt);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return std::tie(dsrc[x], dtgt[x], atoms[x]) < std::tie(dsrc[y], dtgt[y], atoms[y]);
    });
    std::vector<MorId> new_id(m);
    for (std::size_t k = 0; k < m; ++k)
        new_id[order[k]] = k;
    for (std::size_t k = 1; k < m; ++k)
        if (atoms[order[k]] == atoms[order[k - 1]])
            throw ValidationError("duplicate morphism " + atoms[order[k]]);

    src_.resize(m);
    tgt_.resize(m);
    label_.resize(m);
    name_.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        std::size_t i = order[k];
        src_[k] = dsrc[i];
        tgt_[k] = dtgt[i];
        label_[k] = morphisms[i].label;
        name_[k] = atoms[i];
    }

    hom_.assign(n * n, {});
    out_.assign(n, {});
    in_.assign(n, {});
    out_pos_.resize(m);
    in_pos_.resize(m);
    for (MorId k = 0; k < m; ++k) {
        hom_[src_[k] * n + tgt_[k]].push_back(k);
        out_pos_[k] = out_[src_[k]].size();
        out_[src_[k]].push_back(k);
        in_pos_[k] = in_[tgt_[k]].size();
        in_[tgt_[k]].push_back(k);
    }

    ident_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t d = identities[i];
        if (d >= m)
            throw ValidationError("identity index out of range");
        ObId a = *objects_.index_of(objects[i]);
        MorId k = new_id[d];
        if (src_[k] != a || tgt_[k] != a)
            throw ValidationError("identity " + name_[k] + " is not an endomorphism of " +
                                  objects[i]);
        ident_[a] = k;
    }

    comp_.assign(m, {});
    for (std::size_t fi = 0; fi < m; ++fi) {
        MorId f = new_id[fi];
        comp_[f].resize(out_[tgt_[f]].size());
    }
    for (std::size_t fi = 0; fi < m; ++fi) {
        for (std::size_t gi = 0; gi < m; ++gi) {
            if (dtgt[fi] != dsrc[gi])
                continue;
            std::size_t hi = compose(gi, fi);
            if (hi >= m)
                throw ValidationError("composite index out of range");
            MorId f = new_id[fi], g = new_id[gi], h = new_id[hi];
            if (src_[h] != src_[f] || tgt_[h] != tgt_[g])
                throw ValidationError("composite " + name_[g] + " o " + name_[f] +
                                      " is ill-typed: " + name_[h]);
            comp_[f][out_pos_[g]] = h;
        }
    }
}

ObId FinCat::ob(std::string_view name) const
{
    auto i = objects_.index_of(name);
    if (!i)
        throw UnknownName("no object " + std::string(name));
    return *i;
}

MorId FinCat::mor(std::string_view atom) const
{
    auto it = std::find(name_.begin(), name_.end(), atom);
    if (it == name_.end())
        throw UnknownName("no morphism " + std::string(atom));
    return static_cast<MorId>(it - name_.begin());
}

MorId FinCat::mor(std::string_view label, ObId a, ObId b) const
{
    for (MorId k : hom(a, b))
        if (label_[k] == label)
            return k;
    throw UnknownName("no morphism " + mor_atom(label, objects_[a], objects_[b]));
}

MorId FinCat::compose(MorId g, MorId f) const
{
    if (tgt_[f] != src_[g])
        throw SourceMismatch("cannot compose " + name_[g] + " after " + name_[f]);
    return comp_[f][out_pos_[g]];
}

bool operator==(const FinCat& a, const FinCat& b)
{
    return a.objects_ == b.objects_ && a.name_ == b.name_ && a.ident_ == b.ident_ &&
           a.comp_ == b.comp_;
}

CatRef make_cat(FinCat c) { return std::make_shared<const FinCat>(std::move(c)); }

bool same_cat(const CatRef& a, const CatRef& b) { return a == b || (a && b && *a == *b); }

bool operator==(const FinFunctor& a, const FinFunctor& b)
{
    return same_cat(a.src, b.src) && same_cat(a.tgt, b.tgt) && a.ob == b.ob && a.mor == b.mor;
}

FinFunctor identity_functor(const CatRef& c)
{
    FinFunctor f{c, c, std::vector<ObId>(c->num_objects()),
                 std::vector<MorId>(c->num_morphisms())};
    std::iota(f.ob.begin(), f.ob.end(), ObId{0});
    std::iota(f.mor.begin(), f.mor.end(), MorId{0});
    return f;
}

FinFunctor constant_functor(const CatRef& src, const CatRef& tgt, ObId x)
{
    return FinFunctor{src, tgt, std::vector<ObId>(src->num_objects(), x),
                      std::vector<MorId>(src->num_morphisms(), tgt->id(x))};
}

FinFunctor compose(const FinFunctor& g, const FinFunctor& f)
{
    if (!same_cat(f.tgt, g.src))
        throw SourceMismatch("functor composite with mismatched boundary");
    FinFunctor h{f.src, g.tgt, std::vector<ObId>(f.ob.size()), std::vector<MorId>(f.mor.size())};
    for (std::size_t a = 0; a < f.ob.size(); ++a)
        h.ob[a] = g.ob[f.ob[a]];
    for (std::size_t m = 0; m < f.mor.size(); ++m)
        h.mor[m] = g.mor[f.mor[m]];
    return h;
}

std::string render_functor(const FinFunctor& f)
{
    std::string out = "{";
    for (ObId a = 0; a < f.ob.size(); ++a) {
        if (a)
            out += ',';
        out += f.src->ob_name(a) + "=" + f.tgt->ob_name(f.ob[a]);
    }
    return out + "}";
}

bool operator==(const NatTransf& a, const NatTransf& b)
{
    return a.from == b.from && a.to == b.to && a.comp == b.comp;
}

NatTransf identity_nat(const FinFunctor& f)
{
    NatTransf t{f, f, std::vector<MorId>(f.ob.size())};
    for (ObId a = 0; a < f.ob.size(); ++a)
        t.comp[a] = f.tgt->id(f.ob[a]);
    return t;
}

NatTransf vcompose(const NatTransf& beta, const NatTransf& alpha)
{
    if (!(alpha.to == beta.from))
        throw SourceMismatch("vertical composite of transformations with mismatched boundary");
    NatTransf t{alpha.from, beta.to, std::vector<MorId>(alpha.comp.size())};
    for (ObId a = 0; a < t.comp.size(); ++a)
        t.comp[a] = alpha.from.tgt->compose(beta.comp[a], alpha.comp[a]);
    return t;
}

Verdict validate_cat(const FinCat& c)
{
    const std::string check = "category";
    for (ObId a = 0; a < c.num_objects(); ++a) {
        MorId i = c.id(a);
        for (MorId f : c.out(a))
            if (c.compose_unchecked(f, i) != f)
                return Verdict::fail(check, {}, "identity-left " + c.mor_name(f));
        for (MorId f : c.in(a))
            if (c.compose_unchecked(i, f) != f)
                return Verdict::fail(check, {}, "identity-right " + c.mor_name(f));
    }
    for (MorId f = 0; f < c.num_morphisms(); ++f)
        for (MorId g : c.out(c.tgt(f))) {
            MorId gf = c.compose_unchecked(g, f);
            for (MorId h : c.out(c.tgt(g))) {
                MorId lhs = c.compose_unchecked(h, gf);
                MorId rhs = c.compose_unchecked(c.compose_unchecked(h, g), f);
                if (lhs != rhs)
                    return Verdict::fail(check, {},
                                         "associativity " +
                                             tuple_atom({c.mor_name(f), c.mor_name(g),
                                                         c.mor_name(h)}));
            }
        }
    return Verdict::ok(check, {});
}

Verdict validate_functor(const FinFunctor& f)
{
    const std::string check = "functor";
    const FinCat& c = *f.src;
    const FinCat& d = *f.tgt;
    if (f.ob.size() != c.num_objects() || f.mor.size() != c.num_morphisms())
        return Verdict::fail(check, {}, "table size");
    for (ObId a = 0; a < c.num_objects(); ++a) {
        if (f.ob[a] >= d.num_objects())
            return Verdict::fail(check, {}, "object image " + c.ob_name(a));
        if (f.mor[c.id(a)] != d.id(f.ob[a]))
            return Verdict::fail(check, {}, "identity " + c.mor_name(c.id(a)));
    }
    for (MorId m = 0; m < c.num_morphisms(); ++m) {
        MorId fm = f.mor[m];
        if (fm >= d.num_morphisms() || d.src(fm) != f.ob[c.src(m)] ||
            d.tgt(fm) != f.ob[c.tgt(m)])
            return Verdict::fail(check, {}, "boundary " + c.mor_name(m));
    }
    for (MorId m = 0; m < c.num_morphisms(); ++m)
        for (MorId n : c.out(c.tgt(m)))
            if (f.mor[c.compose_unchecked(n, m)] != d.compose_unchecked(f.mor[n], f.mor[m]))
                return Verdict::fail(check, {},
                                     "composite " + tuple_atom({c.mor_name(m), c.mor_name(n)}));
    return Verdict::ok(check, {});
}

Verdict validate_nat(const NatTransf& t)
{
    const std::string check = "naturality";
    const FinFunctor& f = t.from;
    const FinFunctor& g = t.to;
    if (!same_cat(f.src, g.src) || !same_cat(f.tgt, g.tgt))
        return Verdict::fail(check, {}, "functors not parallel");
    const FinCat& c = *f.src;
    const FinCat& d = *f.tgt;
    if (t.comp.size() != c.num_objects())
        return Verdict::fail(check, {}, "component count");
    for (ObId a = 0; a < c.num_objects(); ++a) {
        MorId k = t.comp[a];
        if (k >= d.num_morphisms() || d.src(k) != f.ob[a] || d.tgt(k) != g.ob[a])
            return Verdict::fail(check, {}, "component boundary at " + c.ob_name(a));
    }
    for (MorId m = 0; m < c.num_morphisms(); ++m) {
        MorId lhs = d.compose_unchecked(g.mor[m], t.comp[c.src(m)]);
        MorId rhs = d.compose_unchecked(t.comp[c.tgt(m)], f.mor[m]);
        if (lhs != rhs)
            return Verdict::fail(check, {}, "square at " + c.mor_name(m));
    }
    return Verdict::ok(check, {});
}

CatRef opposite(const CatRef& c)
{
    std::vector<MorDecl> decls;
    decls.reserve(c->num_morphisms());
    for (MorId m = 0; m < c->num_morphisms(); ++m)
        decls.push_back({c->label(m), c->ob_name(c->tgt(m)), c->ob_name(c->src(m))});
    std::vector<std::size_t> ids(c->num_objects());
    for (ObId a = 0; a < ids.size(); ++a)
        ids[a] = c->id(a);
    return make_cat(FinCat(c->objects().atoms(), std::move(decls), std::move(ids),
                           [&](std::size_t g, std::size_t f) { return c->compose(f, g); }));
}

CatRef product(const CatRef& c, const CatRef& d)
{
    std::vector<std::string> objs;
    for (ObId a = 0; a < c->num_objects(); ++a)
        for (ObId b = 0; b < d->num_objects(); ++b)
            objs.push_back(tuple_atom({c->ob_name(a), d->ob_name(b)}));
    const std::size_t nd = d->num_morphisms();
    std::vector<MorDecl> decls;
    for (MorId f = 0; f < c->num_morphisms(); ++f)
        for (MorId g = 0; g < nd; ++g)
            decls.push_back({tuple_atom({c->label(f), d->label(g)}),
                             tuple_atom({c->ob_name(c->src(f)), d->ob_name(d->src(g))}),
                             tuple_atom({c->ob_name(c->tgt(f)), d->ob_name(d->tgt(g))})});
    std::vector<std::size_t> ids;
    for (ObId a = 0; a < c->num_objects(); ++a)
        for (ObId b = 0; b < d->num_objects(); ++b)
            ids.push_back(c->id(a) * nd + d->id(b));
    return make_cat(FinCat(std::move(objs), std::move(decls), std::move(ids),
                           [&](std::size_t q, std::size_t p) {
                               return c->compose(q / nd, p / nd) * nd +
                                      d->compose(q % nd, p % nd);
                           }));
}

CatRef free_cat_on_dag(const std::vector<std::string>& vertices,
                       const std::vector<MorDecl>& edges)
{
    FinSet vs(vertices);
    const std::size_t n = vs.size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        auto s = vs.index_of(edges[e].src);
        auto t = vs.index_of(edges[e].tgt);
        if (!s || !t)
            throw ValidationError("edge " + edges[e].label + " has unknown endpoint");
        if (edges[e].label.find(';') != std::string::npos || edges[e].label == "id")
            throw ValidationError("edge label " + edges[e].label + " is reserved");
        adj[*s].push_back(e);
    }
    // Kahn's algorithm: leftover vertices lie on a cycle.
    std::vector<std::size_t> indeg(n, 0);
    for (const auto& e : edges)
        ++indeg[*vs.index_of(e.tgt)];
    std::vector<std::size_t> queue;
    for (std::size_t v = 0; v < n; ++v)
        if (indeg[v] == 0)
            queue.push_back(v);
    for (std::size_t qi = 0; qi < queue.size(); ++qi)
        for (std::size_t e : adj[queue[qi]])
            if (--indeg[*vs.index_of(edges[e].tgt)] == 0)
                queue.push_back(*vs.index_of(edges[e].tgt));
    if (queue.size() != n)
        throw CyclicGraph("edge relation has a cycle");

    struct Path {
        std::size_t src, tgt;
        std::vector<std::size_t> edges;
    };
    std::vector<Path> paths;
    std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> index;
    std::vector<std::size_t> ids(n);
    for (std::size_t v = 0; v < n; ++v) {
        std::vector<Path> stack{{v, v, {}}};
        while (!stack.empty()) {
            Path p = std::move(stack.back());
            stack.pop_back();
            if (p.edges.empty())
                ids[v] = paths.size();
            index[{p.src, p.edges}] = paths.size();
            for (std::size_t e : adj[p.tgt]) {
                Path q = p;
                q.tgt = *vs.index_of(edges[e].tgt);
                q.edges.push_back(e);
                stack.push_back(std::move(q));
            }
            paths.push_back(std::move(p));
        }
    }
    std::vector<MorDecl> decls;
    for (const auto& p : paths) {
        std::string label;
        for (std::size_t k = 0; k < p.edges.size(); ++k) {
            if (k)
                label += ';';
            label += edges[p.edges[k]].label;
        }
        decls.push_back({p.edges.empty() ? "id" : label, vs[p.src], vs[p.tgt]});
    }
    std::vector<std::size_t> idents(n);
    std::vector<std::string> names(n);
    for (std::size_t v = 0; v < n; ++v) {
        names[v] = vs[v];
        idents[v] = ids[v];
    }
    return make_cat(FinCat(names, decls, idents, [&](std::size_t g, std::size_t f) {
        std::vector<std::size_t> cat = paths[f].edges;
        cat.insert(cat.end(), paths[g].edges.begin(), paths[g].edges.end());
        return index.at({paths[f].src, cat});
    }));
}

CatRef terminal_cat() { return discrete_cat({"*"}); }

CatRef discrete_cat(const std::vector<std::string>& objects)
{
    return free_cat_on_dag(objects, {});
}

CatRef walking_arrow() { return free_cat_on_dag({"bot", "top"}, {{"u", "bot", "top"}}); }

CatRef preorder_cat(const std::vector<std::string>& elements,
                    const std::vector<std::vector<bool>>& leq)
{
    const std::size_t n = elements.size();
    if (leq.size() != n)
        throw ValidationError("order table has wrong size");
    for (std::size_t i = 0; i < n; ++i) {
        if (leq[i].size() != n || !leq[i][i])
            throw ValidationError("order is not reflexive at " + elements[i]);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (leq[i][j] && leq[j][k] && !leq[i][k])
                    throw ValidationError("order is not transitive at " +
                                          tuple_atom({elements[i], elements[j], elements[k]}));
    }
    std::vector<MorDecl> decls;
    std::vector<std::vector<std::size_t>> at(n, std::vector<std::size_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (leq[i][j]) {
                at[i][j] = decls.size();
                decls.push_back({"le", elements[i], elements[j]});
            }
    std::vector<std::size_t> ids(n);
    std::map<std::string, std::size_t> position;
    for (std::size_t i = 0; i < n; ++i) {
        ids[i] = at[i][i];
        position[elements[i]] = i;
    }
    return make_cat(FinCat(elements, decls, ids, [&](std::size_t g, std::size_t f) {
        return at[position.at(decls[f].src)][position.at(decls[g].tgt)];
    }));
}

namespace {

// Backtracking over an object-by-object schedule: after object a is placed,
// every morphism whose endpoints are both placed and which involves a gets
// a value, and each composable triple is checked as soon as it is complete.
class FunctorSearch {
public:
    FunctorSearch(const FinCat& c, const FinCat& d,
                  const std::function<bool(const std::vector<ObId>&,
                                           const std::vector<MorId>&)>& visit)
        : c_(c), d_(d), visit_(visit), ob_(c.num_objects(), 0),
          mor_(c.num_morphisms(), npos), step_of_(c.num_morphisms())
    {
        for (ObId a = 0; a < c.num_objects(); ++a) {
            std::vector<MorId> ms;
            for (MorId m = 0; m < c.num_morphisms(); ++m)
                if (std::max(c.src(m), c.tgt(m)) == a && !c.is_identity(m))
                    ms.push_back(m);
            batches_.push_back(std::move(ms));
        }
        // Order index of each morphism in the schedule.
        std::size_t k = 0;
        for (ObId a = 0; a < c.num_objects(); ++a) {
            step_of_[c.id(a)] = k++;
            for (MorId m : batches_[a])
                step_of_[m] = k++;
        }
        checks_.assign(k, {});
        for (MorId f = 0; f < c.num_morphisms(); ++f)
            for (MorId g : c.out(c.tgt(f))) {
                MorId h = c.compose_unchecked(g, f);
                std::size_t last = std::max({step_of_[f], step_of_[g], step_of_[h]});
                checks_[last].push_back({f, g, h});
            }
    }

    void run() { place_object(0); }

private:
    static constexpr MorId npos = static_cast<MorId>(-1);
    struct Triple {
        MorId f, g, h;
    };

    bool ok_at(MorId m) const
    {
        for (const auto& t : checks_[step_of_[m]])
            if (d_.compose_unchecked(mor_[t.g], mor_[t.f]) != mor_[t.h])
                return false;
        return true;
    }

    bool place_object(ObId a)
    {
        if (a == c_.num_objects())
            return visit_(ob_, mor_);
        for (ObId x = 0; x < d_.num_objects(); ++x) {
            ob_[a] = x;
            mor_[c_.id(a)] = d_.id(x);
            if (ok_at(c_.id(a)) && !place_morphism(a, 0))
                return false;
        }
        mor_[c_.id(a)] = npos;
        return true;
    }

    bool place_morphism(ObId a, std::size_t k)
    {
        if (k == batches_[a].size())
            return place_object(a + 1);
        MorId m = batches_[a][k];
        for (MorId y : d_.hom(ob_[c_.src(m)], ob_[c_.tgt(m)])) {
            mor_[m] = y;
            if (ok_at(m) && !place_morphism(a, k + 1))
                return false;
        }
        mor_[m] = npos;
        return true;
    }

    const FinCat& c_;
    const FinCat& d_;
    const std::function<bool(const std::vector<ObId>&, const std::vector<MorId>&)>& visit_;
    std::vector<ObId> ob_;
    std::vector<MorId> mor_;
    std::vector<std::vector<MorId>> batches_;
    std::vector<std::size_t> step_of_;
    std::vector<std::vector<Triple>> checks_;
};

}  // namespace

void for_each_functor(const CatRef& c, const CatRef& d,
                      const std::function<bool(const FinFunctor&)>& visit)
{
    std::function<bool(const std::vector<ObId>&, const std::vector<MorId>&)> raw =
        [&](const std::vector<ObId>& ob, const std::vector<MorId>& mor) {
            return visit(FinFunctor{c, d, ob, mor});
        };
    FunctorSearch(*c, *d, raw).run();
}

std::vector<FinFunctor> all_functors(const CatRef& c, const CatRef& d, std::size_t budget)
{
    std::vector<FinFunctor> out;
    for_each_functor(c, d, [&](const FinFunctor& f) {
        if (out.size() == budget)
            throw SearchBudgetExceeded("more than " + std::to_string(budget) + " functors");
        out.push_back(f);
        return true;
    });
    return out;
}

std::vector<NatTransf> all_nat(const FinFunctor& f, const FinFunctor& g)
{
    if (!same_cat(f.src, g.src) || !same_cat(f.tgt, g.tgt))
        throw SourceMismatch("transformations between non-parallel functors");
    const FinCat& c = *f.src;
    const FinCat& d = *f.tgt;
    const std::size_t n = c.num_objects();
    std::vector<std::vector<MorId>> squares(n);
    for (MorId m = 0; m < c.num_morphisms(); ++m)
        squares[std::max(c.src(m), c.tgt(m))].push_back(m);
    std::vector<NatTransf> out;
    std::vector<MorId> comp(n);
    std::function<void(ObId)> go = [&](ObId a) {
        if (a == n) {
            out.push_back(NatTransf{f, g, comp});
            return;
        }
        for (MorId k : d.hom(f.ob[a], g.ob[a])) {
            comp[a] = k;
            bool ok = true;
            for (MorId m : squares[a])
                if (d.compose_unchecked(g.mor[m], comp[c.src(m)]) !=
                    d.compose_unchecked(comp[c.tgt(m)], f.mor[m])) {
                    ok = false;
                    break;
                }
            if (ok)
                go(a + 1);
        }
    };
    go(0);
    return out;
}

}  // namespace procat
