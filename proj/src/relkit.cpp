#include "procat/relkit.hpp"

#include "procat/error.hpp"

#include <functional>
#include <string>

namespace procat {

Preorder::Preorder(const std::vector<std::string>& elements, const Relation& leq)
    : carrier_(elements)
{
    const std::size_t n = elements.size();
    if (leq.size() != n)
        throw ValidationError("order table has wrong size");
    std::vector<std::size_t> pos(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (leq[i].size() != n)
            throw ValidationError("order table has wrong size");
        pos[i] = *carrier_.index_of(elements[i]);
    }
    leq_.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            leq_[pos[i]][pos[j]] = leq[i][j];
    for (std::size_t i = 0; i < n; ++i) {
        if (!leq_[i][i])
            throw ValidationError("order is not reflexive at " + carrier_[i]);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (leq_[i][j] && leq_[j][k] && !leq_[i][k])
                    throw ValidationError("order is not transitive at " +
                                          tuple_atom({carrier_[i], carrier_[j], carrier_[k]}));
    }
}

Preorder preorder_of(const FinCat& c)
{
    const std::size_t n = c.num_objects();
    Relation leq(n, std::vector<bool>(n, false));
    for (ObId x = 0; x < n; ++x)
        for (ObId y = 0; y < n; ++y) {
            if (c.hom(x, y).size() > 1)
                throw ValidationError("category is not thin at " +
                                      tuple_atom({c.ob_name(x), c.ob_name(y)}));
            leq[x][y] = !c.hom(x, y).empty();
        }
    return Preorder(c.objects().atoms(), leq);
}

CatRef as_fincat(const Preorder& p) { return preorder_cat(p.carrier().atoms(), p.table()); }

void validate_modrel(const ModRel& r)
{
    const std::size_t n = r.left.size(), m = r.right.size();
    if (r.rel.size() != n)
        throw ValidationError("relation has wrong size");
    for (const auto& row : r.rel)
        if (row.size() != m)
            throw ValidationError("relation has wrong size");
    for (std::size_t x1 = 0; x1 < n; ++x1)
        for (std::size_t x2 = 0; x2 < n; ++x2) {
            if (!r.left.leq(x1, x2))
                continue;
            for (std::size_t y1 = 0; y1 < m; ++y1) {
                if (!r.rel[x2][y1])
                    continue;
                for (std::size_t y2 = 0; y2 < m; ++y2)
                    if (r.right.leq(y1, y2) && !r.rel[x1][y2])
                        throw ValidationError(
                            "relation is not down-up closed at " +
                            tuple_atom({r.left.carrier()[x1], r.left.carrier()[x2],
                                        r.right.carrier()[y1], r.right.carrier()[y2]}));
            }
        }
}

ModRel down_up_closure(const Preorder& left, const Preorder& right, const Relation& rel)
{
    ModRel out{left, right, Relation(left.size(), std::vector<bool>(right.size(), false))};
    for (std::size_t x1 = 0; x1 < left.size(); ++x1)
        for (std::size_t x2 = 0; x2 < left.size(); ++x2)
            for (std::size_t y1 = 0; y1 < right.size(); ++y1)
                for (std::size_t y2 = 0; y2 < right.size(); ++y2)
                    if (left.leq(x1, x2) && rel[x2][y1] && right.leq(y1, y2))
                        out.rel[x1][y2] = true;
    return out;
}

ModRel identity_rel(const Preorder& p) { return ModRel{p, p, p.table()}; }

ModRel companion_rel(const Preorder& a, const Preorder& b, const std::vector<std::size_t>& f)
{
    check_monotone(a, b, f);
    ModRel out{a, b, Relation(a.size(), std::vector<bool>(b.size(), false))};
    for (std::size_t x = 0; x < a.size(); ++x)
        for (std::size_t z = 0; z < b.size(); ++z)
            out.rel[x][z] = b.leq(f[x], z);
    return out;
}

ModRel compose_rel(const ModRel& j, const ModRel& h)
{
    if (!(j.right == h.left))
        throw BoundaryMismatch("composite of relations over different preorders");
    ModRel out{j.left, h.right, Relation(j.left.size(), std::vector<bool>(h.right.size(), false))};
    for (std::size_t x = 0; x < j.left.size(); ++x)
        for (std::size_t y = 0; y < j.right.size(); ++y)
            if (j.rel[x][y])
                for (std::size_t z = 0; z < h.right.size(); ++z)
                    if (h.rel[y][z])
                        out.rel[x][z] = true;
    return out;
}

ModRel left_hom_rel(const ModRel& j, const ModRel& k)
{
    if (!(j.left == k.left))
        throw BoundaryMismatch("left hom of relations over different preorders");
    ModRel out{j.right, k.right, Relation(j.right.size(), std::vector<bool>(k.right.size(), true))};
    for (std::size_t y = 0; y < j.right.size(); ++y)
        for (std::size_t z = 0; z < k.right.size(); ++z)
            for (std::size_t x = 0; x < j.left.size(); ++x)
                if (j.rel[x][y] && !k.rel[x][z])
                    out.rel[y][z] = false;
    validate_modrel(out);
    return out;
}

void check_monotone(const Preorder& a, const Preorder& b, const std::vector<std::size_t>& f)
{
    if (f.size() != a.size())
        throw ValidationError("map has wrong size");
    for (std::size_t v : f)
        if (v >= b.size())
            throw ValidationError("map value out of range");
    for (std::size_t x = 0; x < a.size(); ++x)
        for (std::size_t y = 0; y < a.size(); ++y)
            if (a.leq(x, y) && !b.leq(f[x], f[y]))
                throw ValidationError("map is not monotone at " +
                                      tuple_atom({a.carrier()[x], a.carrier()[y]}));
}

std::vector<std::vector<std::size_t>> all_monotone(const Preorder& a, const Preorder& b)
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> f(a.size());
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == a.size()) {
            out.push_back(f);
            return;
        }
        for (std::size_t v = 0; v < b.size(); ++v) {
            bool ok = true;
            for (std::size_t x = 0; x < i && ok; ++x)
                ok = (!a.leq(x, i) || b.leq(f[x], v)) && (!a.leq(i, x) || b.leq(v, f[x]));
            if (ok) {
                f[i] = v;
                go(i + 1);
            }
        }
    };
    go(0);
    return out;
}

std::size_t sup(const Preorder& m, const std::vector<std::size_t>& xs)
{
    std::vector<std::size_t> upper;
    for (std::size_t u = 0; u < m.size(); ++u) {
        bool bound = true;
        for (std::size_t x : xs)
            bound = bound && m.leq(x, u);
        if (bound)
            upper.push_back(u);
    }
    for (std::size_t u : upper) {
        bool least = true;
        for (std::size_t v : upper)
            least = least && m.leq(u, v);
        if (least)
            return u;
    }
    throw SupMissing(upper.empty() ? "no upper bound" : "no least upper bound");
}

std::vector<std::size_t> sup_colim(const ModRel& j, const Preorder& m,
                                   const std::vector<std::size_t>& d)
{
    check_monotone(j.left, m, d);
    std::vector<std::size_t> l(j.right.size());
    for (std::size_t y = 0; y < l.size(); ++y) {
        std::vector<std::size_t> xs;
        for (std::size_t x = 0; x < j.left.size(); ++x)
            if (j.rel[x][y])
                xs.push_back(d[x]);
        try {
            l[y] = sup(m, xs);
        } catch (const SupMissing& e) {
            throw SupMissing("at " + j.right.carrier()[y] + ": " + e.what());
        }
    }
    return l;
}

Verdict check_sup_universal(const ModRel& j, const Preorder& m, const std::vector<std::size_t>& d,
                            const std::vector<std::size_t>& l)
{
    const std::string subject = "sup";
    for (std::size_t y = 0; y < l.size(); ++y)
        for (std::size_t z = 0; z < m.size(); ++z) {
            bool bound = true;
            for (std::size_t x = 0; x < j.left.size(); ++x)
                if (j.rel[x][y])
                    bound = bound && m.leq(d[x], z);
            if (m.leq(l[y], z) != bound)
                return Verdict::fail("sup-universal", subject,
                                     "fiber " + tuple_atom({j.right.carrier()[y], m.carrier()[z]}));
        }
    std::size_t scanned = 0;
    for (const auto& e : all_monotone(j.right, m)) {
        ++scanned;
        bool below = true, cocone = true;
        for (std::size_t y = 0; y < l.size(); ++y)
            below = below && m.leq(l[y], e[y]);
        for (std::size_t x = 0; x < j.left.size(); ++x)
            for (std::size_t y = 0; y < l.size(); ++y)
                if (j.rel[x][y])
                    cocone = cocone && m.leq(d[x], e[y]);
        if (below != cocone) {
            std::vector<std::string> names;
            for (std::size_t v : e)
                names.push_back(m.carrier()[v]);
            return Verdict::fail("sup-universal", subject, "e=" + tuple_atom(names));
        }
    }
    return Verdict::ok("sup-universal", subject, "monotone-maps=" + std::to_string(scanned));
}

ProRef as_profunctor(const ModRel& r)
{
    validate_modrel(r);
    Profunctor::Fibers fibers(r.left.size(), std::vector<std::vector<std::string>>(r.right.size()));
    for (std::size_t x = 0; x < r.left.size(); ++x)
        for (std::size_t y = 0; y < r.right.size(); ++y)
            if (r.rel[x][y])
                fibers[x][y].push_back("*");
    return make_prof(Profunctor(
        as_fincat(r.left), as_fincat(r.right), fibers,
        [](MorId, ObId, std::size_t) { return std::size_t{0}; },
        [](ObId, std::size_t, MorId) { return std::size_t{0}; }));
}

FinFunctor as_functor(const Preorder& a, const Preorder& b, const std::vector<std::size_t>& f)
{
    check_monotone(a, b, f);
    CatRef ca = as_fincat(a), cb = as_fincat(b);
    FinFunctor out{ca, cb, f, std::vector<MorId>(ca->num_morphisms())};
    for (MorId u = 0; u < ca->num_morphisms(); ++u)
        out.mor[u] = cb->hom(f[ca->src(u)], f[ca->tgt(u)]).front();
    return out;
}

ColimitCandidate as_candidate(const ModRel& j, const Preorder& m, const std::vector<std::size_t>& d,
                              const std::vector<std::size_t>& l)
{
    ProRef w = as_profunctor(j);
    FinFunctor df = as_functor(j.left, m, d);
    FinFunctor lf = as_functor(j.right, m, l);
    df.src = w->left();
    lf.src = w->right();
    lf.tgt = df.tgt;
    ProRef um = unit_prof(df.tgt);
    ColimitCandidate c{w, df, lf, ProCell{w, um, df, lf, std::vector<ElemId>(w->size())}};
    for (ElemId e = 0; e < w->size(); ++e) {
        const auto& hom = df.tgt->hom(d[w->a_of(e)], l[w->b_of(e)]);
        if (hom.empty())
            throw ValidationError("unit does not exist at " + w->full_name(e));
        c.unit.comp[e] = unit_elem(*um, hom.front());
    }
    return c;
}

}  // namespace procat
