#include "procat/equipment.hpp"

#include "procat/detail/propagate.hpp"
#include "procat/error.hpp"

#include <algorithm>

namespace procat {

Profunctor::Profunctor(CatRef left, CatRef right, Fibers fibers, const LeftFn& lact,
                       const RightFn& ract)
    : left_(std::move(left)), right_(std::move(right))
{
    const FinCat& A = *left_;
    const FinCat& B = *right_;
    const std::size_t na = A.num_objects();
    nb_ = B.num_objects();
    if (fibers.size() != na)
        throw ValidationError("profunctor fiber table has wrong row count");
    for (const auto& row : fibers)
        if (row.size() != nb_)
            throw ValidationError("profunctor fiber table has wrong column count");

    fibers_.reserve(na * nb_);
    offset_.assign(na * nb_ + 1, 0);
    // pos[a*nb+b][i]: sorted position of the i-th atom as passed in.
    std::vector<std::vector<std::size_t>> pos(na * nb_);
    std::vector<std::vector<std::size_t>> orig(na * nb_);
    for (ObId a = 0; a < na; ++a)
        for (ObId b = 0; b < nb_; ++b) {
            const auto& atoms = fibers[a][b];
            FinSet set(atoms);
            auto& p = pos[a * nb_ + b];
            auto& o = orig[a * nb_ + b];
            p.resize(atoms.size());
            o.resize(atoms.size());
            for (std::size_t i = 0; i < atoms.size(); ++i) {
                p[i] = *set.index_of(atoms[i]);
                o[p[i]] = i;
            }
            offset_[a * nb_ + b + 1] = offset_[a * nb_ + b] + set.size();
            fibers_.push_back(std::move(set));
        }

    const std::size_t total = offset_.back();
    a_of_.resize(total);
    b_of_.resize(total);
    lact_.resize(total);
    ract_.resize(total);
    col_.assign(nb_, {});
    col_pos_.resize(total);
    for (ObId a = 0; a < na; ++a)
        for (ObId b = 0; b < nb_; ++b)
            for (std::size_t k = 0; k < fiber_size(a, b); ++k) {
                ElemId e = elem(a, b, k);
                a_of_[e] = a;
                b_of_[e] = b;
            }
    for (ElemId e = 0; e < total; ++e) {
        ObId a = a_of_[e], b = b_of_[e];
        std::size_t i = orig[a * nb_ + b][local(e)];
        col_pos_[e] = col_[b].size();
        col_[b].push_back(e);
        for (MorId s : A.in(a)) {
            ObId a2 = A.src(s);
            std::size_t r = lact(s, b, i);
            if (r >= pos[a2 * nb_ + b].size())
                throw ValidationError("left action of " + A.mor_name(s) + " out of range");
            lact_[e].push_back(elem(a2, b, pos[a2 * nb_ + b][r]));
        }
        for (MorId t : B.out(b)) {
            ObId b2 = B.tgt(t);
            std::size_t r = ract(a, i, t);
            if (r >= pos[a * nb_ + b2].size())
                throw ValidationError("right action of " + B.mor_name(t) + " out of range");
            ract_[e].push_back(elem(a, b2, pos[a * nb_ + b2][r]));
        }
    }
}

std::string Profunctor::full_name(ElemId e) const
{
    return name(e) + "@" + tuple_atom({left_->ob_name(a_of_[e]), right_->ob_name(b_of_[e])});
}

ElemId Profunctor::act_left(MorId s, ElemId e) const
{
    if (left_->tgt(s) != a_of_[e])
        throw SourceMismatch("left action of " + left_->mor_name(s) + " on " + full_name(e));
    return act_left_unchecked(s, e);
}

ElemId Profunctor::act_right(ElemId e, MorId t) const
{
    if (right_->src(t) != b_of_[e])
        throw SourceMismatch("right action of " + right_->mor_name(t) + " on " + full_name(e));
    return act_right_unchecked(e, t);
}

bool operator==(const Profunctor& x, const Profunctor& y)
{
    return same_cat(x.left_, y.left_) && same_cat(x.right_, y.right_) && x.fibers_ == y.fibers_ &&
           x.lact_ == y.lact_ && x.ract_ == y.ract_;
}

// Element of U_C for a morphism m, and back.
ElemId unit_elem(const Profunctor& u, MorId m)
{
    const FinCat& c = *u.left();
    ObId a = c.src(m), b = c.tgt(m);
    return u.elem(a, b, m - c.hom(a, b).front());
}

MorId unit_mor(const Profunctor& u, ElemId e)
{
    return u.left()->hom(u.a_of(e), u.b_of(e))[u.local(e)];
}

// Elements of a restriction U_C(f, g): fiber (x, y) is C(f x, g y).
MorId restricted_mor(const FinCat& c, const Profunctor& r, const FinFunctor& f,
                     const FinFunctor& g, ElemId e)
{
    return c.hom(f.ob[r.a_of(e)], g.ob[r.b_of(e)])[r.local(e)];
}

ElemId restricted_elem(const FinCat& c, const Profunctor& r, const FinFunctor& f,
                       const FinFunctor& g, ObId x, ObId y, MorId m)
{
    const auto& h = c.hom(f.ob[x], g.ob[y]);
    if (h.empty() || c.src(m) != f.ob[x] || c.tgt(m) != g.ob[y])
        throw BoundaryMismatch("morphism " + c.mor_name(m) + " outside restricted fiber");
    return r.elem(x, y, m - h.front());
}

ProRef make_prof(Profunctor p) { return std::make_shared<const Profunctor>(std::move(p)); }

bool same_prof(const ProRef& x, const ProRef& y) { return x == y || (x && y && *x == *y); }

Verdict validate_prof(const Profunctor& j)
{
    const std::string check = "profunctor";
    const FinCat& A = *j.left();
    const FinCat& B = *j.right();
    for (ElemId e = 0; e < j.size(); ++e) {
        ObId a = j.a_of(e), b = j.b_of(e);
        if (j.act_left_unchecked(A.id(a), e) != e || j.act_right_unchecked(e, B.id(b)) != e)
            return Verdict::fail(check, {}, "unit law at " + j.full_name(e));
        for (MorId s : A.in(a))
            for (MorId s2 : A.in(A.src(s)))
                if (j.act_left_unchecked(s2, j.act_left_unchecked(s, e)) !=
                    j.act_left_unchecked(A.compose_unchecked(s, s2), e))
                    return Verdict::fail(check, {},
                                         "left associativity at " + j.full_name(e) + " with " +
                                             tuple_atom({A.mor_name(s2), A.mor_name(s)}));
        for (MorId t : B.out(b))
            for (MorId t2 : B.out(B.tgt(t)))
                if (j.act_right_unchecked(j.act_right_unchecked(e, t), t2) !=
                    j.act_right_unchecked(e, B.compose_unchecked(t2, t)))
                    return Verdict::fail(check, {},
                                         "right associativity at " + j.full_name(e) + " with " +
                                             tuple_atom({B.mor_name(t), B.mor_name(t2)}));
        for (MorId s : A.in(a))
            for (MorId t : B.out(b))
                if (j.act_right_unchecked(j.act_left_unchecked(s, e), t) !=
                    j.act_left_unchecked(s, j.act_right_unchecked(e, t)))
                    return Verdict::fail(check, {},
                                         "actions do not commute at " + j.full_name(e) + " with " +
                                             tuple_atom({A.mor_name(s), B.mor_name(t)}));
    }
    return Verdict::ok(check, {});
}

namespace {

bool is_identity_functor(const FinFunctor& f)
{
    if (!same_cat(f.src, f.tgt))
        return false;
    for (ObId a = 0; a < f.ob.size(); ++a)
        if (f.ob[a] != a)
            return false;
    for (MorId m = 0; m < f.mor.size(); ++m)
        if (f.mor[m] != m)
            return false;
    return true;
}

}  // namespace

ProRef unit_prof(const CatRef& a)
{
    const FinCat& c = *a;
    const std::size_t n = c.num_objects();
    Profunctor::Fibers fibers(n, std::vector<std::vector<std::string>>(n));
    for (ObId x = 0; x < n; ++x)
        for (ObId y = 0; y < n; ++y)
            for (MorId m : c.hom(x, y))
                fibers[x][y].push_back(c.mor_name(m));
    auto index = [&](MorId m) { return m - c.hom(c.src(m), c.tgt(m)).front(); };
    return make_prof(Profunctor(
        a, a, std::move(fibers),
        [&](MorId s, ObId y, std::size_t i) {
            return index(c.compose_unchecked(c.hom(c.tgt(s), y)[i], s));
        },
        [&](ObId x, std::size_t i, MorId t) {
            return index(c.compose_unchecked(t, c.hom(x, c.src(t))[i]));
        }));
}

ProRef empty_prof(const CatRef& a, const CatRef& b)
{
    Profunctor::Fibers fibers(a->num_objects(),
                              std::vector<std::vector<std::string>>(b->num_objects()));
    return make_prof(Profunctor(
        a, b, std::move(fibers), [](MorId, ObId, std::size_t) { return std::size_t{0}; },
        [](ObId, std::size_t, MorId) { return std::size_t{0}; }));
}

ProRef dual_prof(const ProRef& jref)
{
    const Profunctor& j = *jref;
    const FinCat& A = *j.left();
    const FinCat& B = *j.right();
    CatRef bop = opposite(j.right());
    CatRef aop = opposite(j.left());
    Profunctor::Fibers fibers(B.num_objects(),
                              std::vector<std::vector<std::string>>(A.num_objects()));
    for (ObId b = 0; b < B.num_objects(); ++b)
        for (ObId a = 0; a < A.num_objects(); ++a)
            fibers[b][a] = j.fiber(a, b).atoms();
    // An op morphism keeps its label with swapped endpoints.
    auto in_b = [&](MorId s) {
        return B.mor(bop->label(s), bop->tgt(s), bop->src(s));
    };
    auto in_a = [&](MorId t) {
        return A.mor(aop->label(t), aop->tgt(t), aop->src(t));
    };
    return make_prof(Profunctor(
        bop, aop, std::move(fibers),
        [&](MorId s, ObId a, std::size_t i) {
            // s: b' -> b in B^op is b -> b' in B; acts on the right of J(a, b).
            ElemId e = j.elem(a, bop->tgt(s), i);
            return j.local(j.act_right_unchecked(e, in_b(s)));
        },
        [&](ObId b, std::size_t i, MorId t) {
            ElemId e = j.elem(aop->src(t), b, i);
            return j.local(j.act_left_unchecked(in_a(t), e));
        }));
}

bool operator==(const ProCell& x, const ProCell& y)
{
    return same_prof(x.src, y.src) && same_prof(x.tgt, y.tgt) && x.f == y.f && x.g == y.g &&
           x.comp == y.comp;
}

Verdict validate_cell(const ProCell& c)
{
    const std::string check = "cell";
    const Profunctor& J = *c.src;
    const Profunctor& K = *c.tgt;
    if (!same_cat(c.f.src, J.left()) || !same_cat(c.f.tgt, K.left()) ||
        !same_cat(c.g.src, J.right()) || !same_cat(c.g.tgt, K.right()))
        return Verdict::fail(check, {}, "vertical boundary mismatch");
    if (c.comp.size() != J.size())
        return Verdict::fail(check, {}, "component count");
    for (ElemId e = 0; e < J.size(); ++e) {
        ElemId x = c.comp[e];
        if (x >= K.size() || K.a_of(x) != c.f.ob[J.a_of(e)] || K.b_of(x) != c.g.ob[J.b_of(e)])
            return Verdict::fail(check, {}, "component out of fiber at " + J.full_name(e));
    }
    const FinCat& A = *J.left();
    const FinCat& B = *J.right();
    for (ElemId e = 0; e < J.size(); ++e) {
        for (MorId s : A.in(J.a_of(e)))
            if (c.comp[J.act_left_unchecked(s, e)] !=
                K.act_left_unchecked(c.f.mor[s], c.comp[e]))
                return Verdict::fail(check, {},
                                     "left naturality at " + J.full_name(e) + " along " +
                                         A.mor_name(s));
        for (MorId t : B.out(J.b_of(e)))
            if (c.comp[J.act_right_unchecked(e, t)] !=
                K.act_right_unchecked(c.comp[e], c.g.mor[t]))
                return Verdict::fail(check, {},
                                     "right naturality at " + J.full_name(e) + " along " +
                                         B.mor_name(t));
    }
    return Verdict::ok(check, {});
}

ProCell identity_cell(const ProRef& j)
{
    ProCell c{j, j, identity_functor(j->left()), identity_functor(j->right()),
              std::vector<ElemId>(j->size())};
    for (ElemId e = 0; e < j->size(); ++e)
        c.comp[e] = e;
    return c;
}

ProCell unit_cell(const FinFunctor& f)
{
    ProRef ua = unit_prof(f.src);
    ProRef ub = unit_prof(f.tgt);
    ProCell c{ua, ub, f, f, std::vector<ElemId>(ua->size())};
    for (ElemId e = 0; e < ua->size(); ++e)
        c.comp[e] = unit_elem(*ub, f.mor[unit_mor(*ua, e)]);
    return c;
}

ProCell nat_cell(const NatTransf& t)
{
    const FinCat& A = *t.from.src;
    const FinCat& B = *t.from.tgt;
    ProRef ua = unit_prof(t.from.src);
    ProRef ub = unit_prof(t.from.tgt);
    ProCell c{ua, ub, t.from, t.to, std::vector<ElemId>(ua->size())};
    for (ElemId e = 0; e < ua->size(); ++e) {
        MorId s = unit_mor(*ua, e);
        c.comp[e] = unit_elem(*ub, B.compose_unchecked(t.to.mor[s], t.comp[A.src(s)]));
    }
    return c;
}

ProCell vcompose(const ProCell& psi, const ProCell& phi)
{
    if (!same_prof(phi.tgt, psi.src))
        throw BoundaryMismatch("vertical composite of cells with mismatched boundary");
    ProCell c{phi.src, psi.tgt, compose(psi.f, phi.f), compose(psi.g, phi.g),
              std::vector<ElemId>(phi.comp.size())};
    for (ElemId e = 0; e < c.comp.size(); ++e)
        c.comp[e] = psi.comp[phi.comp[e]];
    return c;
}

ProCell inverse(const ProCell& c)
{
    if (!is_identity_functor(c.f) || !is_identity_functor(c.g))
        throw ValidationError("inverse requires identity vertical boundary");
    if (c.tgt->size() != c.src->size())
        throw ValidationError("cell is not bijective");
    ProCell inv{c.tgt, c.src, c.f, c.g, std::vector<ElemId>(c.tgt->size(), c.src->size())};
    for (ElemId e = 0; e < c.comp.size(); ++e) {
        if (inv.comp[c.comp[e]] != c.src->size())
            throw ValidationError("cell is not bijective at " + c.tgt->full_name(c.comp[e]));
        inv.comp[c.comp[e]] = e;
    }
    return inv;
}

Verdict fiberwise_bijective(const ProCell& c, const std::string& check)
{
    const Profunctor& J = *c.src;
    const Profunctor& K = *c.tgt;
    const std::size_t na = J.left()->num_objects(), nb = J.right()->num_objects();
    std::vector<std::size_t> hit(K.size(), 0);
    for (ElemId e = 0; e < J.size(); ++e)
        ++hit[c.comp[e]];
    for (ObId a = 0; a < na; ++a)
        for (ObId b = 0; b < nb; ++b) {
            auto [lo, hi] = K.fiber_range(c.f.ob[a], c.g.ob[b]);
            for (ElemId x = lo; x < hi; ++x)
                if (hit[x] != 1)
                    return Verdict::fail(
                        check, {},
                        "fiber " + tuple_atom({J.left()->ob_name(a), J.right()->ob_name(b)}) +
                            (hit[x] ? " not injective at " : " misses ") + K.full_name(x));
        }
    return Verdict::ok(check, {});
}

Composite hcomp(const ProRef& jref, const ProRef& href)
{
    if (!same_cat(jref->right(), href->left()))
        throw BoundaryMismatch("horizontal composite of profunctors with mismatched boundary");
    const Profunctor& J = *jref;
    const Profunctor& H = *href;
    const FinCat& A = *J.left();
    const FinCat& B = *J.right();
    const FinCat& C = *H.right();
    const std::size_t na = A.num_objects(), nb = B.num_objects(), nc = C.num_objects();

    struct Block {
        std::vector<std::size_t> base;  // b -> first pair index
        std::vector<std::size_t> class_of;
        std::vector<std::pair<ElemId, ElemId>> reps;
        std::vector<std::string> names;
    };
    std::vector<Block> blocks(na * nc);
    auto pair_index = [&](const Block& blk, ElemId j, ElemId h) {
        return blk.base[J.b_of(j)] + J.local(j) * H.fiber_size(H.a_of(h), H.b_of(h)) + H.local(h);
    };

    for (ObId a = 0; a < na; ++a)
        for (ObId c = 0; c < nc; ++c) {
            Block& blk = blocks[a * nc + c];
            blk.base.resize(nb + 1, 0);
            for (ObId b = 0; b < nb; ++b)
                blk.base[b + 1] = blk.base[b] + J.fiber_size(a, b) * H.fiber_size(b, c);
            const std::size_t n = blk.base[nb];
            UnionFind uf(n);
            for (ObId b = 0; b < nb; ++b) {
                auto [jlo, jhi] = J.fiber_range(a, b);
                for (ElemId j = jlo; j < jhi; ++j)
                    for (MorId u : B.out(b)) {
                        ElemId ju = J.act_right_unchecked(j, u);
                        auto [hlo, hhi] = H.fiber_range(B.tgt(u), c);
                        for (ElemId h = hlo; h < hhi; ++h)
                            uf.unite(pair_index(blk, ju, h),
                                     pair_index(blk, j, H.act_left_unchecked(u, h)));
                    }
            }
            std::vector<std::string> render(n);
            std::vector<std::pair<ElemId, ElemId>> pairs(n);
            for (ObId b = 0; b < nb; ++b) {
                auto [jlo, jhi] = J.fiber_range(a, b);
                auto [hlo, hhi] = H.fiber_range(b, c);
                for (ElemId j = jlo; j < jhi; ++j)
                    for (ElemId h = hlo; h < hhi; ++h) {
                        std::size_t p = pair_index(blk, j, h);
                        render[p] = tuple_atom({J.name(j), B.ob_name(b), H.name(h)});
                        pairs[p] = {j, h};
                    }
            }
            // Class numbering by first member, representative by minimal rendering.
            blk.class_of.assign(n, 0);
            std::vector<std::size_t> root_class(n, n);
            for (std::size_t p = 0; p < n; ++p) {
                std::size_t r = uf.find(p);
                if (root_class[r] == n) {
                    root_class[r] = blk.reps.size();
                    blk.reps.push_back(pairs[p]);
                    blk.names.push_back(render[p]);
                } else if (render[p] < blk.names[root_class[r]]) {
                    blk.reps[root_class[r]] = pairs[p];
                    blk.names[root_class[r]] = render[p];
                }
                blk.class_of[p] = root_class[r];
            }
        }

    Profunctor::Fibers fibers(na, std::vector<std::vector<std::string>>(nc));
    for (ObId a = 0; a < na; ++a)
        for (ObId c = 0; c < nc; ++c)
            fibers[a][c] = blocks[a * nc + c].names;
    auto result = make_prof(Profunctor(
        J.left(), H.right(), std::move(fibers),
        [&](MorId s, ObId c, std::size_t i) {
            const auto [j, h] = blocks[A.tgt(s) * nc + c].reps[i];
            const Block& to = blocks[A.src(s) * nc + c];
            return to.class_of[pair_index(to, J.act_left_unchecked(s, j), h)];
        },
        [&](ObId a, std::size_t i, MorId t) {
            const auto [j, h] = blocks[a * nc + C.src(t)].reps[i];
            const Block& to = blocks[a * nc + C.tgt(t)];
            return to.class_of[pair_index(to, j, H.act_right_unchecked(h, t))];
        }));

    Composite out{result, jref, href, std::vector<std::vector<ElemId>>(J.size()),
                  std::vector<std::pair<ElemId, ElemId>>(result->size())};
    for (ObId a = 0; a < na; ++a)
        for (ObId c = 0; c < nc; ++c) {
            const Block& blk = blocks[a * nc + c];
            const FinSet& fib = result->fiber(a, c);
            std::vector<ElemId> global(blk.reps.size());
            for (std::size_t k = 0; k < blk.reps.size(); ++k) {
                global[k] = result->elem(a, c, *fib.index_of(blk.names[k]));
                out.rep[global[k]] = blk.reps[k];
            }
            for (ObId b = 0; b < nb; ++b) {
                auto [jlo, jhi] = J.fiber_range(a, b);
                auto [hlo, hhi] = H.fiber_range(b, c);
                for (ElemId j = jlo; j < jhi; ++j) {
                    auto& row = out.cls[j];
                    row.resize(H.row_begin(b + 1) - H.row_begin(b));
                    for (ElemId h = hlo; h < hhi; ++h)
                        row[H.row_pos(h)] = global[blk.class_of[pair_index(blk, j, h)]];
                }
            }
        }
    return out;
}

ProCell hcomp_cells(const ProCell& phi, const ProCell& psi, const Composite& src,
                    const Composite& tgt)
{
    if (!(phi.g == psi.f))
        throw BoundaryMismatch("horizontal composite of cells with mismatched vertical edge");
    if (!same_prof(src.first, phi.src) || !same_prof(src.second, psi.src) ||
        !same_prof(tgt.first, phi.tgt) || !same_prof(tgt.second, psi.tgt))
        throw BoundaryMismatch("composites do not match the cells' boundaries");
    ProCell c{src.result, tgt.result, phi.f, psi.g, std::vector<ElemId>(src.result->size())};
    for (ElemId e = 0; e < c.comp.size(); ++e) {
        auto [j, h] = src.rep[e];
        c.comp[e] = tgt.of(phi.comp[j], psi.comp[h]);
    }
    return c;
}

ProCell left_unitor(const Composite& uj)
{
    const Profunctor& U = *uj.first;
    const Profunctor& J = *uj.second;
    ProCell c{uj.result, uj.second, identity_functor(J.left()), identity_functor(J.right()),
              std::vector<ElemId>(uj.result->size())};
    for (ElemId e = 0; e < c.comp.size(); ++e) {
        auto [s, j] = uj.rep[e];
        c.comp[e] = J.act_left_unchecked(unit_mor(U, s), j);
    }
    return c;
}

ProCell left_unitor_inv(const Composite& uj)
{
    const Profunctor& U = *uj.first;
    const Profunctor& J = *uj.second;
    ProCell c{uj.second, uj.result, identity_functor(J.left()), identity_functor(J.right()),
              std::vector<ElemId>(J.size())};
    for (ElemId j = 0; j < J.size(); ++j)
        c.comp[j] = uj.of(unit_elem(U, J.left()->id(J.a_of(j))), j);
    return c;
}

ProCell right_unitor(const Composite& ju)
{
    const Profunctor& J = *ju.first;
    const Profunctor& U = *ju.second;
    ProCell c{ju.result, ju.first, identity_functor(J.left()), identity_functor(J.right()),
              std::vector<ElemId>(ju.result->size())};
    for (ElemId e = 0; e < c.comp.size(); ++e) {
        auto [j, t] = ju.rep[e];
        c.comp[e] = J.act_right_unchecked(j, unit_mor(U, t));
    }
    return c;
}

ProCell right_unitor_inv(const Composite& ju)
{
    const Profunctor& J = *ju.first;
    const Profunctor& U = *ju.second;
    ProCell c{ju.first, ju.result, identity_functor(J.left()), identity_functor(J.right()),
              std::vector<ElemId>(J.size())};
    for (ElemId j = 0; j < J.size(); ++j)
        c.comp[j] = ju.of(j, unit_elem(U, J.right()->id(J.b_of(j))));
    return c;
}

ProCell associator(const Composite& jh, const Composite& jh_k, const Composite& hk,
                   const Composite& j_hk)
{
    if (!same_prof(jh_k.first, jh.result) || !same_prof(j_hk.second, hk.result) ||
        !same_prof(jh.first, j_hk.first) || !same_prof(jh.second, hk.first) ||
        !same_prof(jh_k.second, hk.second))
        throw BoundaryMismatch("associator composites do not match");
    ProCell c{jh_k.result, j_hk.result, identity_functor(jh.first->left()),
              identity_functor(hk.second->right()), std::vector<ElemId>(jh_k.result->size())};
    for (ElemId e = 0; e < c.comp.size(); ++e) {
        auto [x, k] = jh_k.rep[e];
        auto [j, h] = jh.rep[x];
        c.comp[e] = j_hk.of(j, hk.of(h, k));
    }
    return c;
}

Restriction restrict(const ProRef& kref, const FinFunctor& f, const FinFunctor& g)
{
    const Profunctor& K = *kref;
    if (!same_cat(f.tgt, K.left()) || !same_cat(g.tgt, K.right()))
        throw BoundaryMismatch("restriction along functors not landing in the profunctor's base");
    const FinCat& A = *f.src;
    const FinCat& B = *g.src;
    Profunctor::Fibers fibers(A.num_objects(),
                              std::vector<std::vector<std::string>>(B.num_objects()));
    for (ObId a = 0; a < A.num_objects(); ++a)
        for (ObId b = 0; b < B.num_objects(); ++b)
            fibers[a][b] = K.fiber(f.ob[a], g.ob[b]).atoms();
    auto prof = make_prof(Profunctor(
        f.src, g.src, std::move(fibers),
        [&](MorId s, ObId b, std::size_t i) {
            return K.local(
                K.act_left_unchecked(f.mor[s], K.elem(f.ob[A.tgt(s)], g.ob[b], i)));
        },
        [&](ObId a, std::size_t i, MorId t) {
            return K.local(
                K.act_right_unchecked(K.elem(f.ob[a], g.ob[B.src(t)], i), g.mor[t]));
        }));
    ProCell filler{prof, kref, f, g, std::vector<ElemId>(prof->size())};
    for (ElemId e = 0; e < prof->size(); ++e)
        filler.comp[e] = K.elem(f.ob[prof->a_of(e)], g.ob[prof->b_of(e)], prof->local(e));
    return Restriction{prof, std::move(filler)};
}

ProCell factor_through_filler(const ProCell& phi, const Restriction& r, const FinFunctor& h,
                              const FinFunctor& k)
{
    if (!same_prof(phi.tgt, r.filler.tgt) || !(phi.f == compose(r.filler.f, h)) ||
        !(phi.g == compose(r.filler.g, k)))
        throw BoundaryMismatch("cell does not factor through the filler's niche");
    const Profunctor& J = *phi.src;
    const Profunctor& K = *phi.tgt;
    ProCell c{phi.src, r.prof, h, k, std::vector<ElemId>(J.size())};
    for (ElemId e = 0; e < J.size(); ++e)
        c.comp[e] = r.prof->elem(h.ob[J.a_of(e)], k.ob[J.b_of(e)], K.local(phi.comp[e]));
    return c;
}

ProCell factor_through_filler(const ProCell& phi, const Restriction& r)
{
    return factor_through_filler(phi, r, identity_functor(phi.src->left()),
                                 identity_functor(phi.src->right()));
}

CompanionPair companion(const FinFunctor& f)
{
    const FinCat& A = *f.src;
    const FinCat& B = *f.tgt;
    FinFunctor ida = identity_functor(f.src);
    FinFunctor idb = identity_functor(f.tgt);
    ProRef ub = unit_prof(f.tgt);
    ProRef ua = unit_prof(f.src);
    Restriction comp = restrict(ub, f, idb);
    Restriction conj = restrict(ub, idb, f);

    CompanionPair out{f, comp.prof, comp.filler, {}, conj.prof, conj.filler, {}};
    out.eta = ProCell{ua, comp.prof, ida, f, std::vector<ElemId>(ua->size())};
    out.eta_c = ProCell{ua, conj.prof, f, ida, std::vector<ElemId>(ua->size())};
    for (ElemId e = 0; e < ua->size(); ++e) {
        MorId s = unit_mor(*ua, e);
        out.eta.comp[e] = restricted_elem(B, *comp.prof, f, idb, A.src(s), f.ob[A.tgt(s)], f.mor[s]);
        out.eta_c.comp[e] =
            restricted_elem(B, *conj.prof, idb, f, f.ob[A.src(s)], A.tgt(s), f.mor[s]);
    }
    return out;
}

Verdict check_companion_identities(const CompanionPair& c)
{
    const std::string check = "companion";
    const std::string subject = render_functor(c.f);
    ProCell uf = unit_cell(c.f);
    if (!(vcompose(c.eps, c.eta) == uf))
        return Verdict::fail(check, subject, "companion vertical identity");
    if (!(vcompose(c.eps_c, c.eta_c) == uf))
        return Verdict::fail(check, subject, "conjoint vertical identity");

    ProRef ua = c.eta.src;
    ProRef ub = c.eps.tgt;
    Composite ua_comp = hcomp(ua, c.companion);
    Composite comp_ub = hcomp(c.companion, ub);
    ProCell horiz = hcomp_cells(c.eta, c.eps, ua_comp, comp_ub);
    if (!(horiz == vcompose(right_unitor_inv(comp_ub), left_unitor(ua_comp))))
        return Verdict::fail(check, subject, "companion horizontal identity");

    Composite conj_ua = hcomp(c.conjoint, ua);
    Composite ub_conj = hcomp(ub, c.conjoint);
    ProCell horiz_c = hcomp_cells(c.eps_c, c.eta_c, conj_ua, ub_conj);
    if (!(horiz_c == vcompose(left_unitor_inv(ub_conj), right_unitor(conj_ua))))
        return Verdict::fail(check, subject, "conjoint horizontal identity");
    return Verdict::ok(check, subject);
}

CompanionAdjunction companion_adjunction(const CompanionPair& c)
{
    const FinCat& A = *c.f.src;
    const FinCat& B = *c.f.tgt;
    FinFunctor idb = identity_functor(c.f.tgt);
    CompanionAdjunction adj{hcomp(c.companion, c.conjoint), hcomp(c.conjoint, c.companion), {}, {}};
    ProRef ua = c.eta.src;
    ProRef ub = c.eps.tgt;
    adj.unit = ProCell{ua, adj.comp_conj.result, identity_functor(c.f.src),
                       identity_functor(c.f.src), std::vector<ElemId>(ua->size())};
    for (ElemId e = 0; e < ua->size(); ++e) {
        MorId s = unit_mor(*ua, e);
        ObId a = A.src(s), a2 = A.tgt(s);
        ObId fa = c.f.ob[a];
        ElemId left = restricted_elem(B, *c.companion, c.f, idb, a, fa, B.id(fa));
        ElemId right = restricted_elem(B, *c.conjoint, idb, c.f, fa, a2, c.f.mor[s]);
        adj.unit.comp[e] = adj.comp_conj.of(left, right);
    }
    adj.counit = ProCell{adj.conj_comp.result, ub, idb, idb,
                         std::vector<ElemId>(adj.conj_comp.result->size())};
    for (ElemId e = 0; e < adj.counit.comp.size(); ++e) {
        auto [u, v] = adj.conj_comp.rep[e];
        MorId um = restricted_mor(B, *c.conjoint, idb, c.f, u);
        MorId vm = restricted_mor(B, *c.companion, c.f, idb, v);
        adj.counit.comp[e] = unit_elem(*ub, B.compose_unchecked(vm, um));
    }
    return adj;
}

Verdict check_triangle_identities(const CompanionPair& c, const CompanionAdjunction& adj)
{
    const std::string check = "adjunction";
    const std::string subject = render_functor(c.f);
    ProRef ua = adj.unit.src;
    ProRef ub = adj.counit.tgt;
    ProRef C = c.companion;
    ProRef D = c.conjoint;

    // U_A . C => (C . D) . C => C . (D . C) => C . U_B
    Composite ua_c = hcomp(ua, C);
    Composite cd_c = hcomp(adj.comp_conj.result, C);
    Composite c_dc = hcomp(C, adj.conj_comp.result);
    Composite c_ub = hcomp(C, ub);
    ProCell step1 = hcomp_cells(adj.unit, identity_cell(C), ua_c, cd_c);
    ProCell step2 = associator(adj.comp_conj, cd_c, adj.conj_comp, c_dc);
    ProCell step3 = hcomp_cells(identity_cell(C), adj.counit, c_dc, c_ub);
    if (!(vcompose(step3, vcompose(step2, step1)) ==
          vcompose(right_unitor_inv(c_ub), left_unitor(ua_c))))
        return Verdict::fail(check, subject, "companion triangle");

    // D . U_A => D . (C . D) => (D . C) . D => U_B . D
    Composite d_ua = hcomp(D, ua);
    Composite d_cd = hcomp(D, adj.comp_conj.result);
    Composite dc_d = hcomp(adj.conj_comp.result, D);
    Composite ub_d = hcomp(ub, D);
    ProCell t1 = hcomp_cells(identity_cell(D), adj.unit, d_ua, d_cd);
    ProCell t2 = inverse(associator(adj.conj_comp, dc_d, adj.comp_conj, d_cd));
    ProCell t3 = hcomp_cells(adj.counit, identity_cell(D), dc_d, ub_d);
    if (!(vcompose(t3, vcompose(t2, t1)) == vcompose(left_unitor_inv(ub_d), right_unitor(d_ua))))
        return Verdict::fail(check, subject, "conjoint triangle");
    return Verdict::ok(check, subject);
}

CompanionCompositor companion_compositor(const FinFunctor& f, const FinFunctor& g)
{
    if (!same_cat(f.tgt, g.src))
        throw BoundaryMismatch("companion compositor of non-composable functors");
    const FinCat& B = *f.tgt;
    const FinCat& C = *g.tgt;
    FinFunctor idb = identity_functor(f.tgt);
    FinFunctor idc = identity_functor(g.tgt);
    FinFunctor gf = compose(g, f);
    ProRef bf = restrict(unit_prof(f.tgt), f, idb).prof;
    ProRef cg = restrict(unit_prof(g.tgt), g, idc).prof;
    ProRef cgf = restrict(unit_prof(g.tgt), gf, idc).prof;
    Composite src = hcomp(bf, cg);
    ProCell cell{src.result, cgf, identity_functor(f.src), idc,
                 std::vector<ElemId>(src.result->size())};
    for (ElemId e = 0; e < cell.comp.size(); ++e) {
        auto [u, v] = src.rep[e];
        MorId um = restricted_mor(B, *bf, f, idb, u);
        MorId vm = restricted_mor(C, *cg, g, idc, v);
        cell.comp[e] = restricted_elem(C, *cgf, gf, idc, src.result->a_of(e),
                                       src.result->b_of(e), C.compose_unchecked(vm, g.mor[um]));
    }
    return CompanionCompositor{std::move(src), cgf, std::move(cell)};
}

SideCell lambda_cell(const ProCell& phi)
{
    const Profunctor& J = *phi.src;
    const Profunctor& K = *phi.tgt;
    const FinCat& C = *phi.f.tgt;
    const FinCat& D = *phi.g.tgt;
    FinFunctor idc = identity_functor(phi.f.tgt);
    FinFunctor idd = identity_functor(phi.g.tgt);
    ProRef dg = restrict(unit_prof(phi.g.tgt), phi.g, idd).prof;
    ProRef cf = restrict(unit_prof(phi.f.tgt), phi.f, idc).prof;
    SideCell s{{}, hcomp(phi.src, dg), hcomp(cf, phi.tgt), phi.f, phi.g};
    s.cell = ProCell{s.src.result, s.tgt.result, identity_functor(J.left()), idd,
                     std::vector<ElemId>(s.src.result->size())};
    for (ElemId e = 0; e < s.cell.comp.size(); ++e) {
        auto [j, t] = s.src.rep[e];
        ObId a = J.a_of(j);
        ElemId idfa = restricted_elem(C, *cf, phi.f, idc, a, phi.f.ob[a], C.id(phi.f.ob[a]));
        ElemId k = K.act_right_unchecked(phi.comp[j], restricted_mor(D, *dg, phi.g, idd, t));
        s.cell.comp[e] = s.tgt.of(idfa, k);
    }
    return s;
}

ProCell lambda_inv(const SideCell& s)
{
    const Profunctor& J = *s.src.first;
    const Profunctor& dg = *s.src.second;
    const Profunctor& cf = *s.tgt.first;
    const Profunctor& K = *s.tgt.second;
    const FinCat& C = *s.f.tgt;
    const FinCat& D = *s.g.tgt;
    FinFunctor idc = identity_functor(s.f.tgt);
    FinFunctor idd = identity_functor(s.g.tgt);
    ProCell phi{s.src.first, s.tgt.second, s.f, s.g, std::vector<ElemId>(J.size())};
    for (ElemId j = 0; j < J.size(); ++j) {
        ObId b = J.b_of(j);
        ObId gb = s.g.ob[b];
        ElemId x = s.cell.comp[s.src.of(j, restricted_elem(D, dg, s.g, idd, b, gb, D.id(gb)))];
        auto [u, k] = s.tgt.rep[x];
        phi.comp[j] = K.act_left_unchecked(restricted_mor(C, cf, s.f, idc, u), k);
    }
    return phi;
}

SideCell rho_cell(const ProCell& phi)
{
    const Profunctor& J = *phi.src;
    const Profunctor& K = *phi.tgt;
    const FinCat& C = *phi.f.tgt;
    const FinCat& D = *phi.g.tgt;
    FinFunctor idc = identity_functor(phi.f.tgt);
    FinFunctor idd = identity_functor(phi.g.tgt);
    ProRef cf = restrict(unit_prof(phi.f.tgt), idc, phi.f).prof;  // C(id, f): C -|-> A
    ProRef dg = restrict(unit_prof(phi.g.tgt), idd, phi.g).prof;  // D(id, g): D -|-> B
    SideCell s{{}, hcomp(cf, phi.src), hcomp(phi.tgt, dg), phi.f, phi.g};
    s.cell = ProCell{s.src.result, s.tgt.result, idc, identity_functor(J.right()),
                     std::vector<ElemId>(s.src.result->size())};
    for (ElemId e = 0; e < s.cell.comp.size(); ++e) {
        auto [u, j] = s.src.rep[e];
        ObId b = J.b_of(j);
        ObId gb = phi.g.ob[b];
        ElemId k = K.act_left_unchecked(restricted_mor(C, *cf, idc, phi.f, u), phi.comp[j]);
        s.cell.comp[e] = s.tgt.of(k, restricted_elem(D, *dg, idd, phi.g, gb, b, D.id(gb)));
    }
    return s;
}

ProCell rho_inv(const SideCell& s)
{
    const Profunctor& cf = *s.src.first;
    const Profunctor& J = *s.src.second;
    const Profunctor& K = *s.tgt.first;
    const Profunctor& dg = *s.tgt.second;
    const FinCat& C = *s.f.tgt;
    const FinCat& D = *s.g.tgt;
    FinFunctor idc = identity_functor(s.f.tgt);
    FinFunctor idd = identity_functor(s.g.tgt);
    ProCell phi{s.src.second, s.tgt.first, s.f, s.g, std::vector<ElemId>(J.size())};
    for (ElemId j = 0; j < J.size(); ++j) {
        ObId a = J.a_of(j);
        ObId fa = s.f.ob[a];
        ElemId x = s.cell.comp[s.src.of(restricted_elem(C, cf, idc, s.f, fa, a, C.id(fa)), j)];
        auto [k, v] = s.tgt.rep[x];
        phi.comp[j] = K.act_right_unchecked(k, restricted_mor(D, dg, idd, s.g, v));
    }
    return phi;
}

Verdict is_left_invertible(const ProCell& phi)
{
    return fiberwise_bijective(lambda_cell(phi).cell, "left-invertible");
}

Verdict is_right_invertible(const ProCell& phi)
{
    return fiberwise_bijective(rho_cell(phi).cell, "right-invertible");
}

void for_each_cell(const ProRef& jref, const ProRef& kref, const FinFunctor& f,
                   const FinFunctor& g, std::size_t guard,
                   const std::function<bool(const ProCell&)>& visit)
{
    const Profunctor& J = *jref;
    const Profunctor& K = *kref;
    if (!same_cat(f.src, J.left()) || !same_cat(f.tgt, K.left()) || !same_cat(g.src, J.right()) ||
        !same_cat(g.tgt, K.right()))
        throw BoundaryMismatch("cell search with mismatched boundary");
    const FinCat& A = *J.left();
    const FinCat& B = *J.right();
    detail::Propagation p;
    p.n = J.size();
    p.candidates = [&](std::size_t x) { return K.fiber_range(f.ob[J.a_of(x)], g.ob[J.b_of(x)]); };
    p.orbit = [&](std::size_t x, std::size_t y, std::vector<std::pair<std::size_t, std::size_t>>& out) {
        for (MorId s : A.in(J.a_of(x))) {
            ElemId sx = J.act_left_unchecked(s, x);
            ElemId sy = K.act_left_unchecked(f.mor[s], y);
            for (MorId t : B.out(J.b_of(x)))
                out.emplace_back(J.act_right_unchecked(sx, t),
                                 K.act_right_unchecked(sy, g.mor[t]));
        }
    };
    ProCell cell{jref, kref, f, g, {}};
    detail::enumerate(p, guard, [&](const std::vector<std::size_t>& comp) {
        cell.comp = comp;
        return visit(cell);
    });
}

std::vector<ProCell> all_cells(const ProRef& j, const ProRef& k, const FinFunctor& f,
                               const FinFunctor& g, std::size_t guard)
{
    std::vector<ProCell> out;
    for_each_cell(j, k, f, g, guard, [&](const ProCell& c) {
        out.push_back(c);
        return true;
    });
    return out;
}

}  // namespace procat
