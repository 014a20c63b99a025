#include "procat/closedhom.hpp"

#include "procat/detail/propagate.hpp"
#include "procat/error.hpp"

namespace procat {

namespace {

std::vector<std::size_t> key_of(ObId b, ObId c, const std::vector<ElemId>& fam)
{
    std::vector<std::size_t> key(fam.begin(), fam.end());
    key.push_back(b);
    key.push_back(c);
    return key;
}

std::string render_family(const Profunctor& J, const Profunctor& K, const std::vector<ElemId>& col,
                          const std::vector<ElemId>& fam)
{
    const FinCat& A = *J.left();
    std::string out = "[";
    bool first_group = true;
    for (ObId a = 0; a < A.num_objects(); ++a) {
        std::string group;
        for (std::size_t i = 0; i < col.size(); ++i)
            if (J.a_of(col[i]) == a) {
                if (!group.empty())
                    group += ',';
                group += J.name(col[i]) + "=" + K.name(fam[i]);
            }
        if (group.empty())
            continue;
        if (!first_group)
            out += ',';
        first_group = false;
        out += A.ob_name(a) + ":(" + group + ")";
    }
    return out + "]";
}

ProCell globular(const ProRef& src, const ProRef& tgt)
{
    return ProCell{src, tgt, identity_functor(src->left()), identity_functor(src->right()),
                   std::vector<ElemId>(src->size())};
}

HomIso finish(ProCell cell, const std::string& check)
{
    Verdict v = validate_cell(cell);
    if (v.pass)
        v = fiberwise_bijective(cell, check);
    v.check = check;
    return HomIso{std::move(cell), std::move(v)};
}

}  // namespace

ElemId HomProfunctor::lookup(ObId b, ObId c, const std::vector<ElemId>& fam) const
{
    auto it = index.find(key_of(b, c, fam));
    if (it == index.end())
        throw ValidationError("family is not natural");
    return it->second;
}

HomProfunctor left_hom(const ProRef& jref, const ProRef& kref, std::size_t guard)
{
    if (!same_cat(jref->left(), kref->left()))
        throw BoundaryMismatch("left hom of profunctors with different left bases");
    const Profunctor& J = *jref;
    const Profunctor& K = *kref;
    const FinCat& A = *J.left();
    const FinCat& B = *J.right();
    const FinCat& C = *K.right();
    const std::size_t nb = B.num_objects(), nc = C.num_objects();

    std::vector<std::vector<std::vector<std::vector<ElemId>>>> fams(
        nb, std::vector<std::vector<std::vector<ElemId>>>(nc));
    std::map<std::vector<std::size_t>, std::size_t> local_index;
    Profunctor::Fibers fibers(nb, std::vector<std::vector<std::string>>(nc));
    for (ObId b = 0; b < nb; ++b) {
        const auto& col = J.col(b);
        for (ObId c = 0; c < nc; ++c) {
            detail::Propagation p;
            p.n = col.size();
            p.candidates = [&](std::size_t i) { return K.fiber_range(J.a_of(col[i]), c); };
            p.orbit = [&](std::size_t i, std::size_t y,
                          std::vector<std::pair<std::size_t, std::size_t>>& out) {
                for (MorId s : A.in(J.a_of(col[i])))
                    out.emplace_back(J.col_pos(J.act_left_unchecked(s, col[i])),
                                     K.act_left_unchecked(s, y));
            };
            detail::enumerate(p, guard, [&](const std::vector<std::size_t>& fam) {
                local_index[key_of(b, c, fam)] = fams[b][c].size();
                fams[b][c].push_back(fam);
                fibers[b][c].push_back(render_family(J, K, col, fam));
                return true;
            });
        }
    }

    auto hom = make_prof(Profunctor(
        J.right(), K.right(), std::move(fibers),
        [&](MorId u, ObId c, std::size_t i) {
            // (u.t)(x') = t(x'.u) for u: b' -> b.
            ObId b = B.tgt(u), b2 = B.src(u);
            const auto& t = fams[b][c][i];
            std::vector<ElemId> out;
            for (ElemId x : J.col(b2))
                out.push_back(t[J.col_pos(J.act_right_unchecked(x, u))]);
            return local_index.at(key_of(b2, c, out));
        },
        [&](ObId b, std::size_t i, MorId v) {
            const auto& t = fams[b][C.src(v)][i];
            std::vector<ElemId> out;
            for (ElemId y : t)
                out.push_back(K.act_right_unchecked(y, v));
            return local_index.at(key_of(b, C.tgt(v), out));
        }));

    HomProfunctor h{hom, jref, kref, std::vector<std::vector<ElemId>>(hom->size()), {}};
    for (ObId b = 0; b < nb; ++b)
        for (ObId c = 0; c < nc; ++c)
            for (std::size_t i = 0; i < fams[b][c].size(); ++i) {
                const auto& fam = fams[b][c][i];
                ElemId t = hom->elem(b, c,
                                     *hom->fiber(b, c).index_of(render_family(J, K, J.col(b), fam)));
                h.family[t] = fam;
                h.index[key_of(b, c, fam)] = t;
            }
    return h;
}

RightHomProfunctor right_hom(const ProRef& kref, const ProRef& jref, std::size_t guard)
{
    if (!same_cat(jref->right(), kref->right()))
        throw BoundaryMismatch("right hom of profunctors with different right bases");
    ProRef dj = dual_prof(jref);
    ProRef dk = dual_prof(kref);
    HomProfunctor h = left_hom(dj, dk, guard);  // A^op -|-> C^op
    ProRef hom = dual_prof(h.hom);              // C -|-> A
    const Profunctor& J = *jref;
    const Profunctor& K = *kref;
    RightHomProfunctor out{hom, jref, kref, std::vector<std::vector<ElemId>>(hom->size())};
    for (ElemId t = 0; t < hom->size(); ++t) {
        ObId c = hom->a_of(t), a = hom->b_of(t);
        ElemId td = h.hom->elem(a, c, hom->local(t));
        ElemId lo = J.row_begin(a), hi = J.row_begin(a + 1);
        for (ElemId x = lo; x < hi; ++x) {
            ElemId xd = dj->elem(J.b_of(x), a, J.local(x));
            ElemId yd = h.apply(td, xd);
            out.family[t].push_back(K.elem(c, J.b_of(x), dk->local(yd)));
        }
    }
    return out;
}

ProCell evaluation(const Composite& j_hom, const HomProfunctor& hom)
{
    if (!same_prof(j_hom.first, hom.j) || !same_prof(j_hom.second, hom.hom))
        throw BoundaryMismatch("evaluation composite does not match the hom");
    ProCell c = globular(j_hom.result, hom.k);
    for (ElemId e = 0; e < c.comp.size(); ++e) {
        auto [x, t] = j_hom.rep[e];
        c.comp[e] = hom.apply(t, x);
    }
    return c;
}

ProCell flat(const ProCell& phi, const Composite& jh, const HomProfunctor& hom)
{
    if (!same_prof(phi.src, jh.result) || !same_prof(phi.tgt, hom.k) ||
        !same_prof(jh.first, hom.j))
        throw BoundaryMismatch("flat: cell boundary does not match");
    const Profunctor& H = *jh.second;
    const Profunctor& J = *jh.first;
    ProCell c = globular(jh.second, hom.hom);
    for (ElemId h = 0; h < H.size(); ++h) {
        std::vector<ElemId> fam;
        for (ElemId x : J.col(H.a_of(h)))
            fam.push_back(phi.comp[jh.of(x, h)]);
        c.comp[h] = hom.lookup(H.a_of(h), H.b_of(h), fam);
    }
    return c;
}

ProCell sharp(const ProCell& psi, const Composite& jh, const HomProfunctor& hom)
{
    if (!same_prof(psi.src, jh.second) || !same_prof(psi.tgt, hom.hom) ||
        !same_prof(jh.first, hom.j))
        throw BoundaryMismatch("sharp: cell boundary does not match");
    ProCell c = globular(jh.result, hom.k);
    for (ElemId e = 0; e < c.comp.size(); ++e) {
        auto [x, h] = jh.rep[e];
        c.comp[e] = hom.apply(psi.comp[h], x);
    }
    return c;
}

HomIso companion_hom_iso(const FinFunctor& f, const ProRef& href, const ProRef& lref,
                         std::size_t guard)
{
    const FinCat& C = *f.tgt;
    FinFunctor idc = identity_functor(f.tgt);
    ProRef uc = unit_prof(f.tgt);
    ProRef cf = restrict(uc, f, idc).prof;   // A -|-> C
    ProRef cfo = restrict(uc, idc, f).prof;  // C -|-> A
    Composite cf_l = hcomp(cf, lref);
    HomProfunctor lhs = left_hom(href, cf_l.result, guard);
    Composite cfo_h = hcomp(cfo, href);
    HomProfunctor rhs = left_hom(cfo_h.result, lref, guard);
    const Profunctor& H = *href;
    ProCell cell = globular(rhs.hom, lhs.hom);
    for (ElemId t = 0; t < rhs.hom->size(); ++t) {
        ObId b = rhs.hom->a_of(t), e = rhs.hom->b_of(t);
        std::vector<ElemId> fam;
        for (ElemId h : H.col(b)) {
            ObId a = H.a_of(h);
            ObId fa = f.ob[a];
            ElemId id_left = restricted_elem(C, *cf, f, idc, a, fa, C.id(fa));
            ElemId id_right = restricted_elem(C, *cfo, idc, f, fa, a, C.id(fa));
            fam.push_back(cf_l.of(id_left, rhs.apply(t, cfo_h.of(id_right, h))));
        }
        cell.comp[t] = lhs.lookup(b, e, fam);
    }
    return finish(std::move(cell), "companion-hom-iso");
}

HomIso conjoint_hom_iso(const FinFunctor& g, const ProRef& href, const ProRef& kref,
                        std::size_t guard)
{
    const FinCat& B = *g.tgt;
    FinFunctor idb = identity_functor(g.tgt);
    ProRef ub = unit_prof(g.tgt);
    ProRef bg = restrict(ub, g, idb).prof;   // D -|-> B
    ProRef bgo = restrict(ub, idb, g).prof;  // B -|-> D
    HomProfunctor hk = left_hom(href, kref, guard);
    Composite lhs = hcomp(bg, hk.hom);
    Composite h_bgo = hcomp(href, bgo);
    HomProfunctor rhs = left_hom(h_bgo.result, kref, guard);
    const Profunctor& H = *href;
    ProCell cell = globular(lhs.result, rhs.hom);
    for (ElemId e = 0; e < cell.comp.size(); ++e) {
        auto [u, t] = lhs.rep[e];
        MorId um = restricted_mor(B, *bg, g, idb, u);
        ObId d = lhs.result->a_of(e), c = lhs.result->b_of(e);
        std::vector<ElemId> fam;
        for (ElemId z : h_bgo.result->col(d)) {
            auto [h, v] = h_bgo.rep[z];
            MorId vm = restricted_mor(B, *bgo, idb, g, v);
            fam.push_back(hk.apply(t, H.act_right_unchecked(H.act_right_unchecked(h, vm), um)));
        }
        cell.comp[e] = rhs.lookup(d, c, fam);
    }
    return finish(std::move(cell), "conjoint-hom-iso");
}

std::pair<HomIso, HomIso> filler_isos(const FinFunctor& f, const ProRef& kref, std::size_t guard)
{
    const FinCat& C = *f.tgt;
    const Profunctor& K = *kref;
    FinFunctor idc = identity_functor(f.tgt);
    FinFunctor idd = identity_functor(K.right());
    ProRef uc = unit_prof(f.tgt);
    ProRef cf = restrict(uc, f, idc).prof;
    ProRef cfo = restrict(uc, idc, f).prof;
    ProRef kf = restrict(kref, f, idd).prof;

    Composite cf_k = hcomp(cf, kref);
    ProCell first = globular(cf_k.result, kf);
    for (ElemId e = 0; e < first.comp.size(); ++e) {
        auto [u, k] = cf_k.rep[e];
        ElemId z = K.act_left_unchecked(restricted_mor(C, *cf, f, idc, u), k);
        first.comp[e] = kf->elem(cf_k.result->a_of(e), cf_k.result->b_of(e), K.local(z));
    }

    HomProfunctor hom = left_hom(cfo, kref, guard);
    ProCell second = globular(kf, hom.hom);
    for (ElemId e = 0; e < kf->size(); ++e) {
        ObId a = kf->a_of(e), d = kf->b_of(e);
        ElemId k = K.elem(f.ob[a], d, kf->local(e));
        std::vector<ElemId> fam;
        for (ElemId s : cfo->col(a))
            fam.push_back(K.act_left_unchecked(restricted_mor(C, *cfo, idc, f, s), k));
        second.comp[e] = hom.lookup(a, d, fam);
    }
    return {finish(std::move(first), "filler-iso"), finish(std::move(second), "filler-hom-iso")};
}

HomIso curry_iso(const ProRef& href, const ProRef& kref, const ProRef& mref, std::size_t guard)
{
    Composite hk = hcomp(href, kref);
    HomProfunctor lhs = left_hom(hk.result, mref, guard);
    HomProfunctor hm = left_hom(href, mref, guard);
    HomProfunctor rhs = left_hom(kref, hm.hom, guard);
    const Profunctor& H = *href;
    const Profunctor& K = *kref;
    ProCell cell = globular(lhs.hom, rhs.hom);
    for (ElemId t = 0; t < lhs.hom->size(); ++t) {
        ObId c = lhs.hom->a_of(t), d = lhs.hom->b_of(t);
        std::vector<ElemId> fam;
        for (ElemId k : K.col(c)) {
            ObId b = K.a_of(k);
            std::vector<ElemId> inner;
            for (ElemId h : H.col(b))
                inner.push_back(lhs.apply(t, hk.of(h, k)));
            fam.push_back(hm.lookup(b, d, inner));
        }
        cell.comp[t] = rhs.lookup(c, d, fam);
    }
    return finish(std::move(cell), "curry-iso");
}

HomIso yoneda_iso(const ProRef& kref, std::size_t guard)
{
    ProRef u = unit_prof(kref->left());
    HomProfunctor hom = left_hom(u, kref, guard);
    ProCell cell = globular(hom.hom, kref);
    for (ElemId t = 0; t < hom.hom->size(); ++t)
        cell.comp[t] = hom.apply(t, unit_elem(*u, kref->left()->id(hom.hom->a_of(t))));
    return finish(std::move(cell), "yoneda-iso");
}

ProCell IdentityLax::compositor(const Composite& fj_fh, const Composite&, const ProRef& fjh) const
{
    ProCell c = globular(fj_fh.result, fjh);
    for (ElemId e = 0; e < c.comp.size(); ++e)
        c.comp[e] = e;
    return c;
}

HomCoherence lax_hom_coherence(const LaxFunctor& F, const ProRef& j, const ProRef& h,
                               const ProRef& k, std::size_t guard)
{
    HomProfunctor inner = left_hom(j, h, guard);
    ProRef fj = F.map_prof(j);
    ProRef fh = F.map_prof(h);
    ProRef ft = F.map_prof(inner.hom);
    if (!same_cat(ft->right(), k->left()))
        throw BoundaryMismatch("lax hom coherence: K does not start at the image base");

    Composite jt = hcomp(j, inner.hom);
    ProCell ev = evaluation(jt, inner);
    Composite fj_ft = hcomp(fj, ft);
    ProRef fjt = F.map_prof(jt.result);
    ProCell comp = F.compositor(fj_ft, jt, fjt);
    ProCell fev = F.map_cell(ev, fjt, fh);

    Composite fh_k = hcomp(fh, k);
    HomProfunctor target = left_hom(fj, fh_k.result, guard);
    Composite src = hcomp(ft, k);
    ProCell cell = globular(src.result, target.hom);
    for (ElemId z = 0; z < cell.comp.size(); ++z) {
        auto [y, kk] = src.rep[z];
        ObId b = src.result->a_of(z), e = src.result->b_of(z);
        std::vector<ElemId> fam;
        for (ElemId x : fj->col(b))
            fam.push_back(fh_k.of(fev.comp[comp.comp[fj_ft.of(x, y)]], kk));
        cell.comp[z] = target.lookup(b, e, fam);
    }
    return HomCoherence{std::move(inner), std::move(target), std::move(src), std::move(cell)};
}

}  // namespace procat
