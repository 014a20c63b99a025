#include "procat/error.hpp"
#include "procat/monalg.hpp"
#include "seqcore.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace procat {

using namespace detail;

const char* kind_name(MonadKind k) { return k == MonadKind::M ? "M" : "S"; }

ArityBudget::ArityBudget(std::size_t n_) : n(n_)
{
    if (n == 0)
        throw ValidationError("arity budget must be positive");
}

Perm identity_perm(std::size_t n)
{
    Perm p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    return p;
}

Perm compose_perm(const Perm& s, const Perm& t)
{
    Perm out(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        out[i] = s[t[i]];
    return out;
}

Perm inverse_perm(const Perm& p)
{
    Perm out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        out[p[i]] = i;
    return out;
}

std::vector<Perm> all_perms(std::size_t n)
{
    std::vector<Perm> out;
    Perm p = identity_perm(n);
    do
        out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

bool is_identity_perm(const Perm& p)
{
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != i)
            return false;
    return true;
}

std::string render_perm(const Perm& p)
{
    std::string s = "<";
    for (std::size_t i = 0; i < p.size(); ++i)
        s += (i ? "," : "") + std::to_string(p[i]);
    return s + ">";
}

std::string render_seq(const FinCat& c, const Seq& x) { return seq_name(c, x); }
std::string render_seq2(const FinCat& c, const Seq2& x) { return seq2_name(c, x); }

std::vector<Seq> all_sequences(std::size_t objects, std::size_t length)
{
    std::vector<std::vector<std::size_t>> choices(length);
    for (auto& c : choices) {
        c.resize(objects);
        std::iota(c.begin(), c.end(), std::size_t{0});
    }
    std::vector<Seq> out;
    for_each_choice(choices, [&](const Seq& x) { out.push_back(x); });
    return out;
}

std::vector<Seq> shapes_in_budget(std::size_t budget)
{
    std::vector<Seq> out;
    Seq cur;
    std::function<void(std::size_t)> grow = [&](std::size_t left) {
        out.push_back(cur);
        if (cur.size() == budget)
            return;
        for (std::size_t k = 0; k <= left; ++k) {
            cur.push_back(k);
            grow(left - k);
            cur.pop_back();
        }
    };
    grow(budget);
    return out;
}

namespace detail {

std::vector<Perm> perms_for(MonadKind kind, std::size_t n)
{
    return kind == MonadKind::M ? std::vector<Perm>{identity_perm(n)} : all_perms(n);
}

std::vector<MorId> hom_list(const FinCat& c, ObId a, ObId b) { return c.hom(a, b); }

std::vector<ElemId> fiber_list(const Profunctor& j, ObId a, ObId b)
{
    auto [lo, hi] = j.fiber_range(a, b);
    std::vector<ElemId> out(hi - lo);
    std::iota(out.begin(), out.end(), lo);
    return out;
}

std::vector<ElemId> row_list(const Profunctor& j, ObId a)
{
    std::vector<ElemId> out(j.row_begin(a + 1) - j.row_begin(a));
    std::iota(out.begin(), out.end(), j.row_begin(a));
    return out;
}

std::vector<SeqArrow> out_arrows(MonadKind kind, const FinCat& a, const Seq& x)
{
    return out_generic<ObId, MorId>(kind, x, [&](ObId o) { return a.out(o); });
}

std::vector<SeqArrow> hom_arrows(MonadKind kind, const FinCat& a, const Seq& x, const Seq& y)
{
    return hom_generic<ObId, ObId, MorId>(kind, x, y,
                                          [&](ObId p, ObId q) { return a.hom(p, q); });
}

std::vector<SeqArrow> elem_arrows(MonadKind kind, const Profunctor& j, const Seq& x,
                                  const Seq& y)
{
    return hom_generic<ObId, ObId, ElemId>(kind, x, y,
                                           [&](ObId p, ObId q) { return fiber_list(j, p, q); });
}

SeqArrow identity_arrow(const FinCat& a, const Seq& x)
{
    SeqArrow out{identity_perm(x.size()), {}};
    for (ObId o : x)
        out.parts.push_back(a.id(o));
    return out;
}

SeqArrow permutation_arrow(const FinCat& a, const Seq& x, const Perm& s)
{
    SeqArrow out{s, {}};
    for (std::size_t i : s)
        out.parts.push_back(a.id(x[i]));
    return out;
}

std::vector<SeqArrow> generators(MonadKind kind, const FinCat& a, const Seq& x)
{
    std::vector<SeqArrow> out;
    for (std::size_t k = 0; k < x.size(); ++k)
        for (MorId m : a.out(x[k]))
            if (!a.is_identity(m)) {
                SeqArrow g = identity_arrow(a, x);
                g.parts[k] = m;
                out.push_back(std::move(g));
            }
    if (kind == MonadKind::S)
        for (std::size_t k = 0; k + 1 < x.size(); ++k) {
            Perm s = identity_perm(x.size());
            std::swap(s[k], s[k + 1]);
            out.push_back(permutation_arrow(a, x, s));
        }
    return out;
}

Seq arrow_src(const FinCat& a, const SeqArrow& f)
{
    Seq out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        out[f.perm[i]] = a.src(f.parts[i]);
    return out;
}

Seq arrow_tgt(const FinCat& a, const SeqArrow& f)
{
    Seq out;
    for (MorId m : f.parts)
        out.push_back(a.tgt(m));
    return out;
}

Seq elem_src(const Profunctor& j, const SeqArrow& e)
{
    Seq out(e.size());
    for (std::size_t i = 0; i < e.size(); ++i)
        out[e.perm[i]] = j.a_of(e.parts[i]);
    return out;
}

Seq elem_tgt(const Profunctor& j, const SeqArrow& e)
{
    Seq out;
    for (ElemId x : e.parts)
        out.push_back(j.b_of(x));
    return out;
}

SeqArrow compose_arrows(const FinCat& a, const SeqArrow& g, const SeqArrow& f)
{
    return seq_compose(g, f, [&](MorId q, MorId p) { return a.compose(q, p); });
}

SeqArrow act_left(const Profunctor& j, const SeqArrow& s, const SeqArrow& e)
{
    return seq_compose(e, s, [&](ElemId x, MorId m) { return j.act_left(m, x); });
}

SeqArrow act_right(const Profunctor& j, const SeqArrow& e, const SeqArrow& t)
{
    return seq_compose(t, e, [&](MorId m, ElemId x) { return j.act_right(x, m); });
}

std::string seq_name(const FinCat& a, const Seq& x)
{
    std::vector<std::string> names;
    for (ObId o : x)
        names.push_back(a.ob_name(o));
    return tuple_atom(names);
}

std::string arrow_label(MonadKind kind, const FinCat& a, const SeqArrow& f)
{
    std::vector<std::string> names;
    for (MorId m : f.parts)
        names.push_back(a.label(m));
    return (kind == MonadKind::S ? render_perm(f.perm) : std::string()) + tuple_atom(names);
}

std::string elem_label(MonadKind kind, const Profunctor& j, const SeqArrow& e)
{
    std::vector<std::string> names;
    for (ElemId x : e.parts)
        names.push_back(j.name(x));
    return (kind == MonadKind::S ? render_perm(e.perm) : std::string()) + tuple_atom(names);
}

std::vector<SeqArrow2> out_arrows2(MonadKind kind, const FinCat& a, const Seq2& x)
{
    return out_generic<Seq, SeqArrow>(kind, x,
                                      [&](const Seq& s) { return out_arrows(kind, a, s); });
}

std::vector<SeqArrow2> hom_arrows2(MonadKind kind, const FinCat& a, const Seq2& x, const Seq2& y)
{
    return hom_generic<Seq, Seq, SeqArrow>(
        kind, x, y, [&](const Seq& p, const Seq& q) { return hom_arrows(kind, a, p, q); });
}

std::vector<SeqArrow2> elem_arrows2(MonadKind kind, const Profunctor& j, const Seq2& x,
                                    const Seq2& y)
{
    return hom_generic<Seq, Seq, SeqArrow>(
        kind, x, y, [&](const Seq& p, const Seq& q) { return elem_arrows(kind, j, p, q); });
}

SeqArrow2 identity_arrow2(const FinCat& a, const Seq2& x)
{
    SeqArrow2 out{identity_perm(x.size()), {}};
    for (const Seq& s : x)
        out.parts.push_back(identity_arrow(a, s));
    return out;
}

std::vector<SeqArrow2> generators2(MonadKind kind, const FinCat& a, const Seq2& x)
{
    std::vector<SeqArrow2> out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        // Inner generators: coordinate morphisms and inner transpositions.
        for (SeqArrow& g : generators(kind, a, x[i])) {
            SeqArrow2 h = identity_arrow2(a, x);
            h.parts[i] = std::move(g);
            out.push_back(std::move(h));
        }
    }
    if (kind == MonadKind::S)
        for (std::size_t k = 0; k + 1 < x.size(); ++k) {
            Perm s = identity_perm(x.size());
            std::swap(s[k], s[k + 1]);
            SeqArrow2 h{s, {}};
            for (std::size_t i : s)
                h.parts.push_back(identity_arrow(a, x[i]));
            out.push_back(std::move(h));
        }
    return out;
}

Seq2 arrow2_src(const FinCat& a, const SeqArrow2& f)
{
    Seq2 out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        out[f.perm[i]] = arrow_src(a, f.parts[i]);
    return out;
}

Seq2 arrow2_tgt(const FinCat& a, const SeqArrow2& f)
{
    Seq2 out;
    for (const SeqArrow& p : f.parts)
        out.push_back(arrow_tgt(a, p));
    return out;
}

SeqArrow2 compose_arrows2(const FinCat& a, const SeqArrow2& g, const SeqArrow2& f)
{
    return seq_compose(g, f, [&](const SeqArrow& q, const SeqArrow& p) {
        return compose_arrows(a, q, p);
    });
}

SeqArrow2 act_left2(const Profunctor& j, const SeqArrow2& s, const SeqArrow2& e)
{
    return seq_compose(e, s, [&](const SeqArrow& x, const SeqArrow& m) {
        return act_left(j, m, x);
    });
}

SeqArrow2 act_right2(const Profunctor& j, const SeqArrow2& e, const SeqArrow2& t)
{
    return seq_compose(t, e, [&](const SeqArrow& m, const SeqArrow& x) {
        return act_right(j, x, m);
    });
}

std::string seq2_name(const FinCat& a, const Seq2& x)
{
    std::vector<std::string> names;
    for (const Seq& s : x)
        names.push_back(seq_name(a, s));
    return tuple_atom(names);
}

std::string arrow2_label(MonadKind kind, const FinCat& a, const SeqArrow2& f)
{
    std::vector<std::string> names;
    for (const SeqArrow& p : f.parts)
        names.push_back(arrow_label(kind, a, p));
    return (kind == MonadKind::S ? render_perm(f.perm) : std::string()) + tuple_atom(names);
}

std::string elem2_label(MonadKind kind, const Profunctor& j, const SeqArrow2& e)
{
    std::vector<std::string> names;
    for (const SeqArrow& p : e.parts)
        names.push_back(elem_label(kind, j, p));
    return (kind == MonadKind::S ? render_perm(e.perm) : std::string()) + tuple_atom(names);
}

Seq2 regroup(const Seq& x, const Seq& lengths)
{
    Seq2 out;
    std::size_t off = 0;
    for (std::size_t n : lengths) {
        if (off + n > x.size())
            throw ValidationError("regroup: lengths exceed the sequence");
        out.emplace_back(x.begin() + static_cast<std::ptrdiff_t>(off),
                         x.begin() + static_cast<std::ptrdiff_t>(off + n));
        off += n;
    }
    if (off != x.size())
        throw ValidationError("regroup: lengths do not cover the sequence");
    return out;
}

Seq lengths_of(const Seq2& x)
{
    Seq out;
    for (const Seq& s : x)
        out.push_back(s.size());
    return out;
}

std::vector<Seq2> double_sequences(MonadKind kind, std::size_t objects, const Seq& lengths)
{
    std::vector<Seq> shapes;
    for (const Perm& p : perms_for(kind, lengths.size()))
        shapes.push_back(permute(lengths, p));
    std::sort(shapes.begin(), shapes.end());
    shapes.erase(std::unique(shapes.begin(), shapes.end()), shapes.end());
    std::size_t total = std::accumulate(lengths.begin(), lengths.end(), std::size_t{0});
    std::vector<Seq2> out;
    for (const Seq& shape : shapes)
        for (const Seq& flat : all_sequences(objects, total))
            out.push_back(regroup(flat, shape));
    return out;
}

bool is_iso(const FinCat& c, MorId m)
{
    for (MorId g : c.hom(c.tgt(m), c.src(m)))
        if (c.is_identity(c.compose(g, m)) && c.is_identity(c.compose(m, g)))
            return true;
    return false;
}

MorId inverse_mor(const FinCat& c, MorId m)
{
    for (MorId g : c.hom(c.tgt(m), c.src(m)))
        if (c.is_identity(c.compose(g, m)) && c.is_identity(c.compose(m, g)))
            return g;
    throw ValidationError("morphism " + c.mor_name(m) + " is not invertible");
}

// Triple-sequence shapes: lists of block-length lists, in budget at every level.
std::vector<std::vector<Seq>> triple_shapes(std::size_t budget)
{
    std::vector<std::vector<Seq>> out;
    std::vector<Seq> doubles = shapes_in_budget(budget);
    std::vector<Seq> cur;
    std::function<void(std::size_t, std::size_t)> grow = [&](std::size_t mid, std::size_t tot) {
        out.push_back(cur);
        if (cur.size() == budget)
            return;
        for (const Seq& d : doubles) {
            std::size_t t = std::accumulate(d.begin(), d.end(), std::size_t{0});
            if (d.size() > mid || t > tot)
                continue;
            cur.push_back(d);
            grow(mid - d.size(), tot - t);
            cur.pop_back();
        }
    };
    grow(budget, budget);
    return out;
}


std::vector<Seq3> triple_sequences(std::size_t objects, std::size_t budget)
{
    std::vector<Seq3> out;
    for (const std::vector<Seq>& shape : triple_shapes(budget)) {
        Seq middle;
        for (const Seq& d : shape)
            middle.insert(middle.end(), d.begin(), d.end());
        std::size_t total = std::accumulate(middle.begin(), middle.end(), std::size_t{0});
        for (const Seq& flat : all_sequences(objects, total)) {
            Seq2 mid = regroup(flat, middle);
            Seq3 x;
            std::size_t off = 0;
            for (const Seq& d : shape) {
                x.emplace_back(mid.begin() + static_cast<std::ptrdiff_t>(off),
                               mid.begin() + static_cast<std::ptrdiff_t>(off + d.size()));
                off += d.size();
            }
            out.push_back(std::move(x));
        }
    }
    return out;
}

std::vector<Seq2> double_sequences_in_budget(std::size_t objects, std::size_t budget)
{
    std::vector<Seq2> out;
    for (const Seq& lengths : shapes_in_budget(budget)) {
        std::size_t total = std::accumulate(lengths.begin(), lengths.end(), std::size_t{0});
        for (const Seq& flat : all_sequences(objects, total))
            out.push_back(regroup(flat, lengths));
    }
    return out;
}

}  // namespace detail

// ---- SeqCat ----

namespace {

struct ArrowTables {
    std::vector<std::string> names;
    std::vector<MorDecl> decls;
    std::vector<std::size_t> identities;
};

}  // namespace

SeqCat::SeqCat(MonadKind kind, CatRef base, std::size_t min_len, std::size_t max_len)
{
    if (min_len > max_len)
        throw ValidationError("empty length range");
    auto d = std::make_shared<Data>();
    d->kind = kind;
    d->base = base;
    d->min_len = min_len;
    d->max_len = max_len;
    const FinCat& a = *base;

    std::vector<Seq> seqs;
    for (std::size_t n = min_len; n <= max_len; ++n)
        for (Seq& x : all_sequences(a.num_objects(), n))
            seqs.push_back(std::move(x));

    ArrowTables t;
    std::vector<SeqArrow> decl_arrows;
    std::map<SeqArrow, std::size_t> decl_index;
    for (const Seq& x : seqs) {
        t.names.push_back(seq_name(a, x));
        for (SeqArrow& f : out_arrows(kind, a, x)) {
            t.decls.push_back(
                {arrow_label(kind, a, f), seq_name(a, x), seq_name(a, arrow_tgt(a, f))});
            decl_index.emplace(f, decl_arrows.size());
            decl_arrows.push_back(std::move(f));
        }
    }
    for (const Seq& x : seqs)
        t.identities.push_back(decl_index.at(identity_arrow(a, x)));
    FinCat cat(t.names, t.decls, t.identities, [&](std::size_t g, std::size_t f) {
        return decl_index.at(compose_arrows(a, decl_arrows[g], decl_arrows[f]));
    });

    d->seqs.resize(seqs.size());
    for (const Seq& x : seqs) {
        ObId o = cat.ob(seq_name(a, x));
        d->seqs[o] = x;
        d->ob_index.emplace(x, o);
    }
    d->arrows.resize(decl_arrows.size());
    for (std::size_t k = 0; k < decl_arrows.size(); ++k) {
        MorId m = cat.mor(t.decls[k].label, cat.ob(t.decls[k].src), cat.ob(t.decls[k].tgt));
        d->arrows[m] = decl_arrows[k];
        d->mor_index.emplace(decl_arrows[k], m);
    }
    d->cat = make_cat(std::move(cat));
    data_ = std::move(d);
}

ObId SeqCat::ob(const Seq& x) const
{
    if (x.size() < data_->min_len || x.size() > data_->max_len)
        throw ArityBudgetExceeded("sequence of length " + std::to_string(x.size()) +
                                  " outside [" + std::to_string(data_->min_len) + ", " +
                                  std::to_string(data_->max_len) + "]");
    auto it = data_->ob_index.find(x);
    if (it == data_->ob_index.end())
        throw UnknownName("sequence not over the base objects");
    return it->second;
}

MorId SeqCat::mor(const SeqArrow& a) const
{
    if (a.size() < data_->min_len || a.size() > data_->max_len)
        throw ArityBudgetExceeded("arrow of length " + std::to_string(a.size()) +
                                  " outside the slice");
    auto it = data_->mor_index.find(a);
    if (it == data_->mor_index.end())
        throw UnknownName("arrow not in the sequence category");
    return it->second;
}

MorId SeqCat::permutation(const Seq& x, const Perm& s) const
{
    if (data_->kind == MonadKind::M && !is_identity_perm(s))
        throw ValidationError("M has no permutation arrows");
    return mor(permutation_arrow(*data_->base, x, s));
}

SeqCat apply_M(const CatRef& a, ArityBudget budget) { return SeqCat(MonadKind::M, a, 0, budget.n); }
SeqCat apply_S(const CatRef& a, ArityBudget budget) { return SeqCat(MonadKind::S, a, 0, budget.n); }
SeqCat arity_slice(MonadKind kind, const CatRef& a, std::size_t n) { return SeqCat(kind, a, n, n); }

// ---- SeqProf ----

namespace {

// Builds a profunctor between two categories whose elements are arrows of
// some type, with actions given on arrows.
template <class Arrow, class ObSeq, class ElemsFn, class LabelFn, class LeftFn, class RightFn>
ProRef build_arrow_prof(const CatRef& left, const CatRef& right, const std::vector<ObSeq>& lseq,
                        const std::vector<ObSeq>& rseq, ElemsFn elems, LabelFn label,
                        LeftFn lact, RightFn ract, std::vector<Arrow>& arrows_out)
{
    const std::size_t na = left->num_objects(), nb = right->num_objects();
    std::vector<std::vector<std::vector<Arrow>>> passed(na, std::vector<std::vector<Arrow>>(nb));
    std::map<Arrow, std::size_t> index;
    Profunctor::Fibers fibers(na, std::vector<std::vector<std::string>>(nb));
    for (ObId x = 0; x < na; ++x)
        for (ObId y = 0; y < nb; ++y) {
            passed[x][y] = elems(lseq[x], rseq[y]);
            for (std::size_t i = 0; i < passed[x][y].size(); ++i) {
                index.emplace(passed[x][y][i], i);
                fibers[x][y].push_back(label(passed[x][y][i]));
            }
        }
    Profunctor p(
        left, right, fibers,
        [&](MorId s, ObId b, std::size_t i) {
            return index.at(lact(s, passed[left->tgt(s)][b][i]));
        },
        [&](ObId a, std::size_t i, MorId t) {
            return index.at(ract(passed[a][right->src(t)][i], t));
        });
    arrows_out.assign(p.size(), Arrow{});
    for (ObId x = 0; x < na; ++x)
        for (ObId y = 0; y < nb; ++y)
            for (std::size_t i = 0; i < passed[x][y].size(); ++i)
                arrows_out[p.elem(x, y, *p.fiber(x, y).index_of(fibers[x][y][i]))] =
                    passed[x][y][i];
    return make_prof(std::move(p));
}

void require_compatible(const SeqCat& l, const SeqCat& r)
{
    if (l.kind() != r.kind() || l.min_len() != r.min_len() || l.max_len() != r.max_len())
        throw BoundaryMismatch("sequence slices differ in kind or length range");
}

}  // namespace

SeqProf::SeqProf(const ProRef& j, const SeqCat& left, const SeqCat& right)
{
    if (!same_cat(j->left(), left.base()) || !same_cat(j->right(), right.base()))
        throw BoundaryMismatch("sequence slices are not over the profunctor's categories");
    require_compatible(left, right);
    const MonadKind kind = left.kind();
    const Profunctor& jp = *j;
    std::vector<Seq> lseq, rseq;
    for (ObId x = 0; x < left.cat()->num_objects(); ++x)
        lseq.push_back(left.seq(x));
    for (ObId y = 0; y < right.cat()->num_objects(); ++y)
        rseq.push_back(right.seq(y));
    std::vector<SeqArrow> arrows;
    ProRef prof = build_arrow_prof<SeqArrow>(
        left.cat(), right.cat(), lseq, rseq,
        [&](const Seq& x, const Seq& y) { return elem_arrows(kind, jp, x, y); },
        [&](const SeqArrow& e) { return elem_label(kind, jp, e); },
        [&](MorId s, const SeqArrow& e) { return act_left(jp, left.arrow(s), e); },
        [&](const SeqArrow& e, MorId t) { return act_right(jp, e, right.arrow(t)); }, arrows);
    auto d = std::make_shared<Data>(Data{j, left, right, prof, std::move(arrows), {}});
    for (ElemId e = 0; e < d->arrows.size(); ++e)
        d->index.emplace(d->arrows[e], e);
    data_ = std::move(d);
}

ElemId SeqProf::elem(const SeqArrow& a) const
{
    auto it = data_->index.find(a);
    if (it == data_->index.end())
        throw UnknownName("element arrow not in the sequence profunctor");
    return it->second;
}

SeqProf apply_M(const ProRef& j, ArityBudget budget)
{
    return SeqProf(j, apply_M(j->left(), budget), apply_M(j->right(), budget));
}

SeqProf apply_S(const ProRef& j, ArityBudget budget)
{
    return SeqProf(j, apply_S(j->left(), budget), apply_S(j->right(), budget));
}

FinFunctor seq_functor(const FinFunctor& f, const SeqCat& src, const SeqCat& tgt)
{
    if (!same_cat(f.src, src.base()) || !same_cat(f.tgt, tgt.base()))
        throw BoundaryMismatch("functor does not match the sequence slices");
    if (src.kind() != tgt.kind())
        throw BoundaryMismatch("sequence slices differ in kind");
    FinFunctor out{src.cat(), tgt.cat(), {}, {}};
    for (ObId x = 0; x < src.cat()->num_objects(); ++x) {
        Seq y;
        for (ObId o : src.seq(x))
            y.push_back(f.ob[o]);
        out.ob.push_back(tgt.ob(y));
    }
    for (MorId m = 0; m < src.cat()->num_morphisms(); ++m)
        out.mor.push_back(tgt.mor(map_parts(src.arrow(m), [&](MorId p) { return f.mor[p]; })));
    return out;
}

ProCell seq_cell(const ProCell& phi, const SeqProf& src, const SeqProf& tgt)
{
    if (!same_prof(phi.src, src.base()) || !same_prof(phi.tgt, tgt.base()))
        throw BoundaryMismatch("cell does not match the sequence profunctors");
    ProCell out{src.prof(), tgt.prof(), seq_functor(phi.f, src.left(), tgt.left()),
                seq_functor(phi.g, src.right(), tgt.right()), {}};
    for (ElemId e = 0; e < src.prof()->size(); ++e)
        out.comp.push_back(
            tgt.elem(map_parts(src.arrow(e), [&](ElemId x) { return phi.comp[x]; })));
    return out;
}

// ---- double sequences ----

SeqCat2::SeqCat2(MonadKind kind, CatRef base, std::size_t outer, std::size_t total)
{
    auto d = std::make_shared<Data>();
    d->kind = kind;
    d->base = base;
    d->outer = outer;
    d->total = total;
    const FinCat& a = *base;

    std::vector<Seq2> seqs;
    for (const Seq& lengths : shapes_in_budget(std::max(outer, total))) {
        if (lengths.size() != outer ||
            std::accumulate(lengths.begin(), lengths.end(), std::size_t{0}) != total)
            continue;
        for (const Seq& flat : all_sequences(a.num_objects(), total))
            seqs.push_back(regroup(flat, lengths));
    }

    std::vector<std::string> names;
    std::vector<MorDecl> decls;
    std::vector<SeqArrow2> decl_arrows;
    std::map<SeqArrow2, std::size_t> decl_index;
    for (const Seq2& x : seqs) {
        names.push_back(seq2_name(a, x));
        for (SeqArrow2& f : out_arrows2(kind, a, x)) {
            decls.push_back(
                {arrow2_label(kind, a, f), seq2_name(a, x), seq2_name(a, arrow2_tgt(a, f))});
            decl_index.emplace(f, decl_arrows.size());
            decl_arrows.push_back(std::move(f));
        }
    }
    std::vector<std::size_t> identities;
    for (const Seq2& x : seqs)
        identities.push_back(decl_index.at(identity_arrow2(a, x)));
    FinCat cat(names, decls, identities, [&](std::size_t g, std::size_t f) {
        return decl_index.at(compose_arrows2(a, decl_arrows[g], decl_arrows[f]));
    });
    d->seqs.resize(seqs.size());
    for (const Seq2& x : seqs) {
        ObId o = cat.ob(seq2_name(a, x));
        d->seqs[o] = x;
        d->ob_index.emplace(x, o);
    }
    d->arrows.resize(decl_arrows.size());
    for (std::size_t k = 0; k < decl_arrows.size(); ++k) {
        MorId m = cat.mor(decls[k].label, cat.ob(decls[k].src), cat.ob(decls[k].tgt));
        d->arrows[m] = decl_arrows[k];
        d->mor_index.emplace(decl_arrows[k], m);
    }
    d->cat = make_cat(std::move(cat));
    data_ = std::move(d);
}

ObId SeqCat2::ob(const Seq2& x) const
{
    auto it = data_->ob_index.find(x);
    if (it == data_->ob_index.end())
        throw ArityBudgetExceeded("double sequence outside the slice");
    return it->second;
}

MorId SeqCat2::mor(const SeqArrow2& a) const
{
    auto it = data_->mor_index.find(a);
    if (it == data_->mor_index.end())
        throw ArityBudgetExceeded("double-sequence arrow outside the slice");
    return it->second;
}

SeqProf2::SeqProf2(const ProRef& j, const SeqCat2& left, const SeqCat2& right)
{
    if (left.kind() != right.kind() || left.total() != right.total())
        throw BoundaryMismatch("double-sequence slices differ");
    const MonadKind kind = left.kind();
    const Profunctor& jp = *j;
    std::vector<Seq2> lseq, rseq;
    for (ObId x = 0; x < left.cat()->num_objects(); ++x)
        lseq.push_back(left.seq(x));
    for (ObId y = 0; y < right.cat()->num_objects(); ++y)
        rseq.push_back(right.seq(y));
    std::vector<SeqArrow2> arrows;
    ProRef prof = build_arrow_prof<SeqArrow2>(
        left.cat(), right.cat(), lseq, rseq,
        [&](const Seq2& x, const Seq2& y) { return elem_arrows2(kind, jp, x, y); },
        [&](const SeqArrow2& e) { return elem2_label(kind, jp, e); },
        [&](MorId s, const SeqArrow2& e) { return act_left2(jp, left.arrow(s), e); },
        [&](const SeqArrow2& e, MorId t) { return act_right2(jp, e, right.arrow(t)); }, arrows);
    data_ = std::make_shared<Data>(Data{j, left, right, prof, std::move(arrows)});
}

// ---- monad structure ----

FinFunctor MonadInstance::mu(const SeqCat2& src, const SeqCat& tgt) const
{
    FinFunctor out{src.cat(), tgt.cat(), {}, {}};
    for (ObId x = 0; x < src.cat()->num_objects(); ++x)
        out.ob.push_back(tgt.ob(concat(src.seq(x))));
    for (MorId m = 0; m < src.cat()->num_morphisms(); ++m)
        out.mor.push_back(tgt.mor(flatten(src.arrow(m))));
    return out;
}

ProCell MonadInstance::mu(const SeqProf2& src, const SeqProf& tgt) const
{
    ProCell out{src.prof(), tgt.prof(), mu(src.left(), tgt.left()), mu(src.right(), tgt.right()),
                {}};
    for (ElemId e = 0; e < src.prof()->size(); ++e)
        out.comp.push_back(tgt.elem(flatten(src.arrow(e))));
    return out;
}

FinFunctor MonadInstance::eta(const SeqCat& tgt) const
{
    FinFunctor out{tgt.base(), tgt.cat(), {}, {}};
    for (ObId x = 0; x < tgt.base()->num_objects(); ++x)
        out.ob.push_back(tgt.ob({x}));
    for (MorId m = 0; m < tgt.base()->num_morphisms(); ++m)
        out.mor.push_back(tgt.mor(singleton(m)));
    return out;
}

ProCell MonadInstance::eta(const SeqProf& tgt) const
{
    ProCell out{tgt.base(), tgt.prof(), eta(tgt.left()), eta(tgt.right()), {}};
    for (ElemId e = 0; e < tgt.base()->size(); ++e)
        out.comp.push_back(tgt.elem(singleton(e)));
    return out;
}

FinFunctor theta_functor(const SeqCat& m_slice, const SeqCat& s_slice)
{
    if (m_slice.kind() != MonadKind::M || s_slice.kind() != MonadKind::S)
        throw BoundaryMismatch("theta runs from an M slice to an S slice");
    FinFunctor out{m_slice.cat(), s_slice.cat(), {}, {}};
    for (ObId x = 0; x < m_slice.cat()->num_objects(); ++x)
        out.ob.push_back(s_slice.ob(m_slice.seq(x)));
    for (MorId m = 0; m < m_slice.cat()->num_morphisms(); ++m)
        out.mor.push_back(s_slice.mor(m_slice.arrow(m)));
    return out;
}

ProCell theta_cell(const SeqProf& m_prof, const SeqProf& s_prof)
{
    ProCell out{m_prof.prof(), s_prof.prof(), theta_functor(m_prof.left(), s_prof.left()),
                theta_functor(m_prof.right(), s_prof.right()), {}};
    for (ElemId e = 0; e < m_prof.prof()->size(); ++e)
        out.comp.push_back(s_prof.elem(m_prof.arrow(e)));
    return out;
}

// ---- monad laws ----

namespace {

using SeqArrow3 = SeqArrowT<SeqArrow2>;

template <class P, class Out>
void monad_law_scan(MonadKind kind, std::size_t objects, std::size_t budget, Out out1,
                    Verdict& v, const std::string& what)
{
    auto fail = [&](const std::string& w) {
        if (v.pass)
            v = Verdict::fail(v.check, v.subject, what + ": " + w, v.scope);
    };
    // Units on level-one arrows.
    for (std::size_t n = 0; n <= budget && v.pass; ++n)
        for (const Seq& x : all_sequences(objects, n))
            for (const SeqArrowT<P>& a : out_generic<std::size_t, P>(kind, x, out1)) {
                if (!(flatten(singleton(a)) == a))
                    fail("mu after eta_T differs at length " + std::to_string(n));
                if (!(flatten(map_parts(a, [](const P& p) { return singleton(p); })) == a))
                    fail("mu after T eta differs at length " + std::to_string(n));
            }
    // Associativity on level-three arrows.
    auto out2 = [&](const Seq& s) { return out_generic<std::size_t, P>(kind, s, out1); };
    auto out3 = [&](const Seq2& s) { return out_generic<Seq, SeqArrowT<P>>(kind, s, out2); };
    for (const Seq3& x : triple_sequences(objects, budget))
        for (const auto& a : out_generic<Seq2, SeqArrowT<SeqArrowT<P>>>(kind, x, out3)) {
            auto lhs = flatten(map_parts(a, [](const auto& p) { return flatten(p); }));
            auto rhs = flatten(flatten(a));
            if (!(lhs == rhs)) {
                fail("mu T mu and mu mu T differ over a triple sequence of length " +
                     std::to_string(x.size()));
                return;
            }
        }
}

}  // namespace

Verdict check_monad_laws(MonadKind kind, const ProRef& j, ArityBudget budget)
{
    const FinCat& a = *j->left();
    const std::size_t n = budget.n;
    Verdict v = Verdict::ok("monad-laws", kind_name(kind),
                            "N=" + std::to_string(n) + " kind=" + kind_name(kind));
    monad_law_scan<MorId>(kind, a.num_objects(), n, [&](ObId o) { return a.out(o); }, v,
                          "morphisms");
    monad_law_scan<ElemId>(kind, a.num_objects(), n, [&](ObId o) { return row_list(*j, o); }, v,
                           "elements");
    if (!v.pass)
        return v;

    // Permutation arrows compose as the permutations do.
    if (kind == MonadKind::S)
        for (std::size_t len = 0; len <= n && v.pass; ++len)
            for (const Seq& x : all_sequences(a.num_objects(), len))
                for (const Perm& s : all_perms(len))
                    for (const Perm& t : all_perms(len)) {
                        SeqArrow lhs = compose_arrows(a, permutation_arrow(a, permute(x, s), t),
                                                      permutation_arrow(a, x, s));
                        if (!(lhs == permutation_arrow(a, x, compose_perm(s, t))))
                            return Verdict::fail(v.check, v.subject,
                                                 "permutation arrows " + render_perm(s) +
                                                     " then " + render_perm(t) + " at " +
                                                     seq_name(a, x),
                                                 v.scope);
                    }

    // The cells mu_J and eta_J are well formed on the slices.
    MonadInstance inst{kind, budget};
    SeqProf one(j, SeqCat(kind, j->left(), 1, 1), SeqCat(kind, j->right(), 1, 1));
    v.absorb(validate_cell(inst.eta(one)));
    for (std::size_t outer = 0; outer <= n && v.pass; ++outer)
        for (std::size_t total = 0; total <= n && v.pass; ++total) {
            if (outer == 0 && total > 0)
                continue;
            SeqCat2 l2(kind, j->left(), outer, total), r2(kind, j->right(), outer, total);
            SeqProf tj(j, SeqCat(kind, j->left(), total, total),
                       SeqCat(kind, j->right(), total, total));
            v.absorb(validate_cell(inst.mu(SeqProf2(j, l2, r2), tj)));
        }
    return v;
}

}  // namespace procat
