#include "procat/matspan.hpp"

#include "procat/error.hpp"

#include <map>
#include <string>
#include <tuple>
#include <utility>

namespace procat {

namespace {

using PairIndex = std::map<std::pair<std::size_t, std::size_t>, std::size_t>;

PairIndex pair_index(const Pullback& p)
{
    PairIndex out;
    for (std::size_t i = 0; i < p.set.size(); ++i)
        out[{p.p1(i), p.p2(i)}] = i;
    return out;
}

std::size_t position(const FinSet& s, const std::string& atom)
{
    auto i = s.index_of(atom);
    if (!i)
        throw UnknownName("no element " + atom);
    return *i;
}

bool same_monoid(const MonoidRef& x, const MonoidRef& y)
{
    if (x == y)
        return true;
    return x->base.rows == y->base.rows && x->base.entry == y->base.entry &&
           x->mult == y->mult && x->unit == y->unit;
}

std::string index_pair(const FinSet& r, std::size_t a, const FinSet& c, std::size_t b)
{
    return tuple_atom({r[a], c[b]});
}

}  // namespace

SetMatrix unit_matrix(const FinSet& index)
{
    SetMatrix m{index, index, std::vector<std::vector<FinSet>>(index.size(),
                                                               std::vector<FinSet>(index.size()))};
    for (std::size_t a = 0; a < index.size(); ++a)
        m.entry[a][a] = FinSet({"*"});
    return m;
}

SetMatrix mat_hcomp(const SetMatrix& j, const SetMatrix& h)
{
    if (!(j.cols == h.rows))
        throw IndexMismatch("matrix product over different index sets");
    SetMatrix out{j.rows, h.cols,
                  std::vector<std::vector<FinSet>>(j.rows.size(), std::vector<FinSet>(h.cols.size()))};
    for (std::size_t a = 0; a < j.rows.size(); ++a)
        for (std::size_t e = 0; e < h.cols.size(); ++e) {
            std::vector<std::string> atoms;
            for (std::size_t b = 0; b < j.cols.size(); ++b)
                for (const auto& x : j.at(a, b).atoms())
                    for (const auto& y : h.at(b, e).atoms())
                        atoms.push_back(tuple_atom({x, j.cols[b], y}));
            out.entry[a][e] = FinSet(std::move(atoms));
        }
    return out;
}

void validate_monoid(const MatMonoid& m)
{
    const std::size_t n = m.n();
    const SetMatrix& base = m.base;
    if (!(base.rows == base.cols) || base.entry.size() != n || m.unit.size() != n ||
        m.mult.size() != n * n * n)
        throw AxiomFailure("monoid tables have the wrong shape");
    for (std::size_t a = 0; a < n; ++a) {
        if (base.entry[a].size() != n)
            throw AxiomFailure("monoid tables have the wrong shape");
        if (m.unit[a] >= base.at(a, a).size())
            throw AxiomFailure("unit missing at " + base.rows[a]);
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                const auto& table = m.mult[(a * n + b) * n + c];
                if (table.size() != base.at(a, b).size() * base.at(b, c).size())
                    throw AxiomFailure("multiplication table has the wrong size at " +
                                       tuple_atom({base.rows[a], base.rows[b], base.rows[c]}));
                for (std::size_t v : table)
                    if (v >= base.at(a, c).size())
                        throw AxiomFailure("product out of range at " +
                                           tuple_atom({base.rows[a], base.rows[b], base.rows[c]}));
            }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t s = 0; s < base.at(a, b).size(); ++s) {
                if (m.multiply(a, a, b, m.unit[a], s) != s || m.multiply(a, b, b, s, m.unit[b]) != s)
                    throw AxiomFailure("unit law fails at " + base.at(a, b)[s]);
            }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t d = 0; d < n; ++d)
                    for (std::size_t s = 0; s < base.at(a, b).size(); ++s)
                        for (std::size_t t = 0; t < base.at(b, c).size(); ++t)
                            for (std::size_t u = 0; u < base.at(c, d).size(); ++u)
                                if (m.multiply(a, c, d, m.multiply(a, b, c, s, t), u) !=
                                    m.multiply(a, b, d, s, m.multiply(b, c, d, t, u)))
                                    throw AxiomFailure(
                                        "associativity fails at " +
                                        tuple_atom({base.at(a, b)[s], base.at(b, c)[t],
                                                    base.at(c, d)[u]}));
}

CatRef monoid_to_fincat(const MatMonoid& m)
{
    validate_monoid(m);
    const std::size_t n = m.n();
    std::vector<MorDecl> decls;
    std::vector<std::size_t> offset(n * n + 1, 0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            offset[a * n + b] = decls.size();
            for (const auto& s : m.base.at(a, b).atoms())
                decls.push_back({s, m.base.rows[a], m.base.rows[b]});
        }
    offset[n * n] = decls.size();
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> where(decls.size());
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t s = 0; s < m.base.at(a, b).size(); ++s)
                where[offset[a * n + b] + s] = {a, b, s};
    std::vector<std::size_t> identities(n);
    for (std::size_t a = 0; a < n; ++a)
        identities[a] = offset[a * n + a] + m.unit[a];
    return make_cat(FinCat(m.base.rows.atoms(), decls, identities, [&](std::size_t g, std::size_t f) {
        auto [a, b, s] = where[f];
        auto [b2, c, t] = where[g];
        (void)b2;
        return offset[a * n + c] + m.multiply(a, b, c, s, t);
    }));
}

MatMonoid fincat_to_monoid(const FinCat& c)
{
    const std::size_t n = c.num_objects();
    MatMonoid m;
    m.base = SetMatrix{c.objects(), c.objects(),
                       std::vector<std::vector<FinSet>>(n, std::vector<FinSet>(n))};
    for (ObId a = 0; a < n; ++a)
        for (ObId b = 0; b < n; ++b) {
            std::vector<std::string> labels;
            for (MorId s : c.hom(a, b))
                labels.push_back(c.label(s));
            m.base.entry[a][b] = FinSet(std::move(labels));
        }
    auto idx = [&](MorId s) { return position(m.base.at(c.src(s), c.tgt(s)), c.label(s)); };
    m.unit.resize(n);
    for (ObId a = 0; a < n; ++a)
        m.unit[a] = idx(c.id(a));
    m.mult.resize(n * n * n);
    for (ObId a = 0; a < n; ++a)
        for (ObId b = 0; b < n; ++b)
            for (ObId cc = 0; cc < n; ++cc) {
                auto& table = m.mult[(a * n + b) * n + cc];
                const std::size_t w = m.base.at(b, cc).size();
                table.assign(m.base.at(a, b).size() * w, 0);
                for (MorId s : c.hom(a, b))
                    for (MorId t : c.hom(b, cc))
                        table[idx(s) * w + idx(t)] = idx(c.compose(t, s));
            }
    return m;
}

std::size_t Bimodule::act_left(std::size_t a2, std::size_t a, std::size_t b, std::size_t s,
                               std::size_t x) const
{
    const std::size_t na = left->n(), nb = right->n();
    return left_act[(a2 * na + a) * nb + b][s * mat.at(a, b).size() + x];
}

std::size_t Bimodule::act_right(std::size_t a, std::size_t b, std::size_t b2, std::size_t x,
                                std::size_t t) const
{
    const std::size_t nb = right->n();
    return right_act[(a * nb + b) * nb + b2][x * right->base.at(b, b2).size() + t];
}

void validate_bimodule(const Bimodule& j)
{
    validate_monoid(*j.left);
    validate_monoid(*j.right);
    const MatMonoid& A = *j.left;
    const MatMonoid& B = *j.right;
    const std::size_t na = A.n(), nb = B.n();
    if (!(j.mat.rows == A.base.rows) || !(j.mat.cols == B.base.rows) ||
        j.left_act.size() != na * na * nb || j.right_act.size() != na * nb * nb)
        throw AxiomFailure("bimodule tables have the wrong shape");
    for (std::size_t a2 = 0; a2 < na; ++a2)
        for (std::size_t a = 0; a < na; ++a)
            for (std::size_t b = 0; b < nb; ++b) {
                const auto& t = j.left_act[(a2 * na + a) * nb + b];
                if (t.size() != A.base.at(a2, a).size() * j.mat.at(a, b).size())
                    throw AxiomFailure("left action table has the wrong size");
                for (std::size_t v : t)
                    if (v >= j.mat.at(a2, b).size())
                        throw AxiomFailure("left action out of range");
            }
    for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < nb; ++b)
            for (std::size_t b2 = 0; b2 < nb; ++b2) {
                const auto& t = j.right_act[(a * nb + b) * nb + b2];
                if (t.size() != j.mat.at(a, b).size() * B.base.at(b, b2).size())
                    throw AxiomFailure("right action table has the wrong size");
                for (std::size_t v : t)
                    if (v >= j.mat.at(a, b2).size())
                        throw AxiomFailure("right action out of range");
            }
    for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < nb; ++b)
            for (std::size_t x = 0; x < j.mat.at(a, b).size(); ++x) {
                const std::string& name = j.mat.at(a, b)[x];
                if (j.act_left(a, a, b, A.unit[a], x) != x || j.act_right(a, b, b, x, B.unit[b]) != x)
                    throw AxiomFailure("unit does not act trivially on " + name);
                for (std::size_t a1 = 0; a1 < na; ++a1)
                    for (std::size_t a0 = 0; a0 < na; ++a0)
                        for (std::size_t s = 0; s < A.base.at(a1, a).size(); ++s)
                            for (std::size_t r = 0; r < A.base.at(a0, a1).size(); ++r)
                                if (j.act_left(a0, a1, b, r, j.act_left(a1, a, b, s, x)) !=
                                    j.act_left(a0, a, b, A.multiply(a0, a1, a, r, s), x))
                                    throw AxiomFailure("left action is not associative at " + name);
                for (std::size_t b1 = 0; b1 < nb; ++b1)
                    for (std::size_t b2 = 0; b2 < nb; ++b2)
                        for (std::size_t t = 0; t < B.base.at(b, b1).size(); ++t)
                            for (std::size_t u = 0; u < B.base.at(b1, b2).size(); ++u)
                                if (j.act_right(a, b1, b2, j.act_right(a, b, b1, x, t), u) !=
                                    j.act_right(a, b, b2, x, B.multiply(b, b1, b2, t, u)))
                                    throw AxiomFailure("right action is not associative at " + name);
                for (std::size_t a0 = 0; a0 < na; ++a0)
                    for (std::size_t b2 = 0; b2 < nb; ++b2)
                        for (std::size_t s = 0; s < A.base.at(a0, a).size(); ++s)
                            for (std::size_t t = 0; t < B.base.at(b, b2).size(); ++t)
                                if (j.act_right(a0, b, b2, j.act_left(a0, a, b, s, x), t) !=
                                    j.act_left(a0, a, b2, s, j.act_right(a, b, b2, x, t)))
                                    throw AxiomFailure("actions do not commute at " + name);
            }
}

ProRef bimodule_to_profunctor(const Bimodule& j)
{
    validate_bimodule(j);
    CatRef a = monoid_to_fincat(*j.left);
    CatRef b = monoid_to_fincat(*j.right);
    const MatMonoid& A = *j.left;
    const MatMonoid& B = *j.right;
    Profunctor::Fibers fibers(A.n(), std::vector<std::vector<std::string>>(B.n()));
    for (std::size_t x = 0; x < A.n(); ++x)
        for (std::size_t y = 0; y < B.n(); ++y)
            fibers[x][y] = j.mat.at(x, y).atoms();
    return make_prof(Profunctor(
        a, b, fibers,
        [&](MorId s, ObId y, std::size_t i) {
            ObId a2 = a->src(s), a1 = a->tgt(s);
            return j.act_left(a2, a1, y, position(A.base.at(a2, a1), a->label(s)), i);
        },
        [&](ObId x, std::size_t i, MorId t) {
            ObId b1 = b->src(t), b2 = b->tgt(t);
            return j.act_right(x, b1, b2, i, position(B.base.at(b1, b2), b->label(t)));
        }));
}

Bimodule profunctor_to_bimodule(const Profunctor& p)
{
    const FinCat& A = *p.left();
    const FinCat& B = *p.right();
    const std::size_t na = A.num_objects(), nb = B.num_objects();
    Bimodule j;
    j.left = std::make_shared<const MatMonoid>(fincat_to_monoid(A));
    j.right = std::make_shared<const MatMonoid>(fincat_to_monoid(B));
    j.mat = SetMatrix{A.objects(), B.objects(),
                      std::vector<std::vector<FinSet>>(na, std::vector<FinSet>(nb))};
    for (ObId a = 0; a < na; ++a)
        for (ObId b = 0; b < nb; ++b)
            j.mat.entry[a][b] = p.fiber(a, b);
    j.left_act.resize(na * na * nb);
    for (ObId a2 = 0; a2 < na; ++a2)
        for (ObId a = 0; a < na; ++a)
            for (ObId b = 0; b < nb; ++b) {
                const FinSet& hom = j.left->base.at(a2, a);
                const std::size_t w = p.fiber_size(a, b);
                auto& t = j.left_act[(a2 * na + a) * nb + b];
                t.resize(hom.size() * w);
                for (std::size_t s = 0; s < hom.size(); ++s) {
                    MorId m = A.mor(hom[s], a2, a);
                    for (std::size_t x = 0; x < w; ++x)
                        t[s * w + x] = p.local(p.act_left(m, p.elem(a, b, x)));
                }
            }
    j.right_act.resize(na * nb * nb);
    for (ObId a = 0; a < na; ++a)
        for (ObId b = 0; b < nb; ++b)
            for (ObId b2 = 0; b2 < nb; ++b2) {
                const FinSet& hom = j.right->base.at(b, b2);
                auto& t = j.right_act[(a * nb + b) * nb + b2];
                t.resize(p.fiber_size(a, b) * hom.size());
                for (std::size_t x = 0; x < p.fiber_size(a, b); ++x)
                    for (std::size_t u = 0; u < hom.size(); ++u)
                        t[x * hom.size() + u] =
                            p.local(p.act_right(p.elem(a, b, x), B.mor(hom[u], b, b2)));
            }
    return j;
}

namespace {

// Per fiber (a, c): the base J x H in canonical order, its quotient, and the
// (b, x, y) triple of each base element.
struct ModFiber {
    FinSet base;
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> triple;
    Quotient q;
};

struct ModComposite {
    Bimodule result;
    std::vector<ModFiber> fiber;  // [a * nc + c]
};

ModComposite mod_composite(const Bimodule& j, const Bimodule& h)
{
    if (!same_monoid(j.right, h.left))
        throw BoundaryMismatch("bimodules over different monoids");
    validate_bimodule(j);
    validate_bimodule(h);
    const MatMonoid& B = *j.right;
    const std::size_t na = j.left->n(), nb = B.n(), nc = h.right->n();
    const FinSet& bnames = B.base.rows;

    ModComposite out;
    out.fiber.resize(na * nc);
    for (std::size_t a = 0; a < na; ++a)
        for (std::size_t c = 0; c < nc; ++c) {
            ModFiber& fib = out.fiber[a * nc + c];
            std::vector<std::string> atoms;
            std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> raw;
            for (std::size_t b = 0; b < nb; ++b)
                for (std::size_t x = 0; x < j.mat.at(a, b).size(); ++x)
                    for (std::size_t y = 0; y < h.mat.at(b, c).size(); ++y) {
                        atoms.push_back(
                            tuple_atom({j.mat.at(a, b)[x], bnames[b], h.mat.at(b, c)[y]}));
                        raw.emplace_back(b, x, y);
                    }
            fib.base = FinSet(atoms);
            fib.triple.resize(raw.size());
            for (std::size_t i = 0; i < raw.size(); ++i)
                fib.triple[position(fib.base, atoms[i])] = raw[i];
            auto at = [&](std::size_t b, std::size_t x, std::size_t y) {
                return position(fib.base, tuple_atom({j.mat.at(a, b)[x], bnames[b],
                                                      h.mat.at(b, c)[y]}));
            };

            std::vector<std::string> datoms;
            std::vector<std::size_t> g0, g1;
            std::vector<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t, std::size_t>>
                draw;
            for (std::size_t b = 0; b < nb; ++b)
                for (std::size_t b2 = 0; b2 < nb; ++b2)
                    for (std::size_t x = 0; x < j.mat.at(a, b).size(); ++x)
                        for (std::size_t t = 0; t < B.base.at(b, b2).size(); ++t)
                            for (std::size_t y = 0; y < h.mat.at(b2, c).size(); ++y) {
                                datoms.push_back(tuple_atom({j.mat.at(a, b)[x], bnames[b],
                                                             B.base.at(b, b2)[t], bnames[b2],
                                                             h.mat.at(b2, c)[y]}));
                                draw.emplace_back(b, b2, x, t, y);
                            }
            FinSet dbl(datoms);
            g0.resize(dbl.size());
            g1.resize(dbl.size());
            for (std::size_t i = 0; i < draw.size(); ++i) {
                auto [b, b2, x, t, y] = draw[i];
                std::size_t k = position(dbl, datoms[i]);
                g0[k] = at(b2, j.act_right(a, b, b2, x, t), y);
                g1[k] = at(b, x, h.act_left(b, b2, c, t, y));
            }
            FinMap d0(dbl, fib.base, g0), d1(dbl, fib.base, g1);
            std::vector<std::size_t> sec(fib.base.size());
            for (std::size_t i = 0; i < sec.size(); ++i) {
                auto [b, x, y] = fib.triple[i];
                sec[i] = position(dbl, tuple_atom({j.mat.at(a, b)[x], bnames[b],
                                                   B.base.at(b, b)[B.unit[b]], bnames[b],
                                                   h.mat.at(b, c)[y]}));
            }
            FinMap section(fib.base, dbl, sec);
            if (!(compose(d0, section) == FinMap::identity(fib.base)) ||
                !(compose(d1, section) == FinMap::identity(fib.base)))
                throw AxiomFailure("coequaliser pair is not reflexive at " +
                                   index_pair(j.mat.rows, a, h.mat.cols, c));
            fib.q = coequalize(d0, d1);
        }

    Bimodule& r = out.result;
    r.left = j.left;
    r.right = h.right;
    r.mat = SetMatrix{j.mat.rows, h.mat.cols,
                      std::vector<std::vector<FinSet>>(na, std::vector<FinSet>(nc))};
    for (std::size_t a = 0; a < na; ++a)
        for (std::size_t c = 0; c < nc; ++c)
            r.mat.entry[a][c] = out.fiber[a * nc + c].q.rep_set();

    const MatMonoid& A = *j.left;
    const MatMonoid& C = *h.right;
    auto class_at = [&](std::size_t a, std::size_t c, std::size_t b, std::size_t x, std::size_t y) {
        const ModFiber& fib = out.fiber[a * nc + c];
        return fib.q.class_of[position(fib.base, tuple_atom({j.mat.at(a, b)[x], bnames[b],
                                                             h.mat.at(b, c)[y]}))];
    };
    r.left_act.resize(na * na * nc);
    for (std::size_t a2 = 0; a2 < na; ++a2)
        for (std::size_t a = 0; a < na; ++a)
            for (std::size_t c = 0; c < nc; ++c) {
                const ModFiber& fib = out.fiber[a * nc + c];
                const std::size_t w = fib.q.size();
                auto& t = r.left_act[(a2 * na + a) * nc + c];
                t.resize(A.base.at(a2, a).size() * w);
                for (std::size_t s = 0; s < A.base.at(a2, a).size(); ++s)
                    for (std::size_t k = 0; k < w; ++k) {
                        auto [b, x, y] = fib.triple[fib.q.reps[k]];
                        t[s * w + k] = class_at(a2, c, b, j.act_left(a2, a, b, s, x), y);
                    }
            }
    r.right_act.resize(na * nc * nc);
    for (std::size_t a = 0; a < na; ++a)
        for (std::size_t c = 0; c < nc; ++c)
            for (std::size_t c2 = 0; c2 < nc; ++c2) {
                const ModFiber& fib = out.fiber[a * nc + c];
                const std::size_t w = C.base.at(c, c2).size();
                auto& t = r.right_act[(a * nc + c) * nc + c2];
                t.resize(fib.q.size() * w);
                for (std::size_t k = 0; k < fib.q.size(); ++k) {
                    auto [b, x, y] = fib.triple[fib.q.reps[k]];
                    for (std::size_t u = 0; u < w; ++u)
                        t[k * w + u] = class_at(a, c2, b, x, h.act_right(b, c, c2, y, u));
                }
            }
    return out;
}

}  // namespace

Bimodule mod_hcomp(const Bimodule& j, const Bimodule& h) { return mod_composite(j, h).result; }

Verdict check_mod_prof_agreement(const Bimodule& j, const Bimodule& h)
{
    const std::string check = "mod-prof", subject = "J(.)H";
    ModComposite mc = mod_composite(j, h);
    ProRef pm = bimodule_to_profunctor(mc.result);
    ProRef pj = bimodule_to_profunctor(j);
    ProRef ph = bimodule_to_profunctor(h);
    Composite comp = hcomp(pj, ph);
    const Profunctor& R = *comp.result;
    const std::size_t na = j.left->n(), nc = h.right->n();

    // Class k of fiber (a, c) |-> the composite element of its representative.
    std::vector<ElemId> image(pm->size());
    bool names_equal = true;
    for (ObId a = 0; a < na; ++a)
        for (ObId c = 0; c < nc; ++c) {
            const ModFiber& fib = mc.fiber[a * nc + c];
            std::vector<bool> hit(R.fiber_size(a, c), false);
            const std::string where = index_pair(j.mat.rows, a, h.mat.cols, c);
            if (fib.q.size() != R.fiber_size(a, c))
                return Verdict::fail(check, subject, "fiber " + where + " sizes differ");
            for (std::size_t k = 0; k < fib.q.size(); ++k) {
                auto [b, x, y] = fib.triple[fib.q.reps[k]];
                ElemId e = comp.of(pj->elem(a, b, x), ph->elem(b, c, y));
                if (hit[R.local(e)])
                    return Verdict::fail(check, subject, "fiber " + where + " not injective");
                hit[R.local(e)] = true;
                image[pm->elem(a, c, k)] = e;
                names_equal = names_equal && R.name(e) == pm->name(pm->elem(a, c, k));
            }
        }
    const FinCat& A = *pm->left();
    const FinCat& C = *pm->right();
    for (ElemId e = 0; e < pm->size(); ++e) {
        for (MorId s : A.in(pm->a_of(e))) {
            MorId s2 = R.left()->mor(A.mor_name(s));
            if (image[pm->act_left(s, e)] != R.act_left(s2, image[e]))
                return Verdict::fail(check, subject,
                                     "left action at " + A.mor_name(s) + " on " + pm->full_name(e));
        }
        for (MorId t : C.out(pm->b_of(e))) {
            MorId t2 = R.right()->mor(C.mor_name(t));
            if (image[pm->act_right(e, t)] != R.act_right(image[e], t2))
                return Verdict::fail(check, subject,
                                     "right action at " + C.mor_name(t) + " on " + pm->full_name(e));
        }
    }
    return Verdict::ok(check, subject,
                       "elements=" + std::to_string(pm->size()) +
                           (names_equal ? " names=equal" : " names=differ"));
}

Span span_compose(const Span& s, const Span& t)
{
    Pullback p = pullback(s.right, t.left);
    return Span{p.set, compose(s.left, p.p1), compose(t.right, p.p2)};
}

FinMap span_associator(const Span& s, const Span& t, const Span& u)
{
    Pullback st = pullback(s.right, t.left);
    Span st_span{st.set, compose(s.left, st.p1), compose(t.right, st.p2)};
    Pullback left = pullback(st_span.right, u.left);
    Pullback tu = pullback(t.right, u.left);
    Span tu_span{tu.set, compose(t.left, tu.p1), compose(u.right, tu.p2)};
    Pullback right = pullback(s.right, tu_span.left);
    PairIndex tu_at = pair_index(tu), right_at = pair_index(right);
    std::vector<std::size_t> graph(left.set.size());
    for (std::size_t i = 0; i < graph.size(); ++i) {
        std::size_t p = left.p1(i);
        std::size_t inner = tu_at.at({st.p2(p), left.p2(i)});
        graph[i] = right_at.at({st.p1(p), inner});
    }
    return FinMap(left.set, right.set, graph);
}

void validate_internal(const InternalCat& c)
{
    const FinSet& O = c.objects;
    const FinSet& M = c.morphisms;
    if (!(c.src.source() == M) || !(c.tgt.source() == M) || !(c.src.target() == O) ||
        !(c.tgt.target() == O) || !(c.ident.source() == O) || !(c.ident.target() == M) ||
        !(c.comp.source() == c.composable.set) || !(c.comp.target() == M))
        throw AxiomFailure("internal category maps have the wrong boundary");
    for (std::size_t o = 0; o < O.size(); ++o)
        if (c.src(c.ident(o)) != o || c.tgt(c.ident(o)) != o)
            throw AxiomFailure("identity has the wrong boundary at " + O[o]);
    PairIndex at = pair_index(c.composable);
    std::size_t pairs = 0;
    for (std::size_t f = 0; f < M.size(); ++f)
        for (std::size_t g = 0; g < M.size(); ++g)
            if (c.tgt(f) == c.src(g)) {
                ++pairs;
                auto it = at.find({f, g});
                if (it == at.end())
                    throw AxiomFailure("composable pair missing: " + tuple_atom({M[f], M[g]}));
                std::size_t gf = c.comp(it->second);
                if (c.src(gf) != c.src(f) || c.tgt(gf) != c.tgt(g))
                    throw AxiomFailure("composite has the wrong boundary: " +
                                       tuple_atom({M[f], M[g]}));
            }
    if (pairs != c.composable.set.size())
        throw AxiomFailure("composable pairs include non-composable ones");
    for (std::size_t f = 0; f < M.size(); ++f) {
        if (c.comp(at.at({c.ident(c.src(f)), f})) != f || c.comp(at.at({f, c.ident(c.tgt(f))})) != f)
            throw AxiomFailure("unit law fails at " + M[f]);
        for (std::size_t g = 0; g < M.size(); ++g) {
            if (c.tgt(f) != c.src(g))
                continue;
            std::size_t gf = c.comp(at.at({f, g}));
            for (std::size_t h = 0; h < M.size(); ++h)
                if (c.tgt(g) == c.src(h) &&
                    c.comp(at.at({gf, h})) != c.comp(at.at({f, c.comp(at.at({g, h}))})))
                    throw AxiomFailure("associativity fails at " + tuple_atom({M[f], M[g], M[h]}));
        }
    }
}

InternalCat fincat_to_internal(const FinCat& c)
{
    std::vector<std::string> names;
    for (MorId m = 0; m < c.num_morphisms(); ++m)
        names.push_back(c.mor_name(m));
    FinSet mors(names);
    std::vector<std::size_t> pos(c.num_morphisms()), id_of(c.num_morphisms());
    for (MorId m = 0; m < c.num_morphisms(); ++m) {
        pos[m] = position(mors, names[m]);
        id_of[pos[m]] = m;
    }
    std::vector<std::size_t> src(mors.size()), tgt(mors.size()), ident(c.num_objects());
    for (MorId m = 0; m < c.num_morphisms(); ++m) {
        src[pos[m]] = c.src(m);
        tgt[pos[m]] = c.tgt(m);
    }
    for (ObId o = 0; o < c.num_objects(); ++o)
        ident[o] = pos[c.id(o)];
    InternalCat out{c.objects(), mors, FinMap(mors, c.objects(), src), FinMap(mors, c.objects(), tgt),
                    FinMap(c.objects(), mors, ident), {}, {}};
    out.composable = pullback(out.tgt, out.src);
    std::vector<std::size_t> comp(out.composable.set.size());
    for (std::size_t i = 0; i < comp.size(); ++i)
        comp[i] = pos[c.compose(id_of[out.composable.p2(i)], id_of[out.composable.p1(i)])];
    out.comp = FinMap(out.composable.set, mors, comp);
    return out;
}

CatRef internal_to_fincat(const InternalCat& c)
{
    validate_internal(c);
    std::vector<MorDecl> decls;
    for (std::size_t m = 0; m < c.morphisms.size(); ++m)
        decls.push_back({c.morphisms[m], c.objects[c.src(m)], c.objects[c.tgt(m)]});
    PairIndex at = pair_index(c.composable);
    return make_cat(FinCat(c.objects.atoms(), decls, c.ident.graph(),
                           [&](std::size_t g, std::size_t f) { return c.comp(at.at({f, g})); }));
}

InternalFunctor functor_to_internal(const FinFunctor& f, const InternalCat& src,
                                    const InternalCat& tgt)
{
    std::vector<std::size_t> ob(src.objects.size()), mor(src.morphisms.size());
    for (std::size_t o = 0; o < ob.size(); ++o)
        ob[o] = position(tgt.objects, f.tgt->ob_name(f.ob[f.src->ob(src.objects[o])]));
    for (std::size_t m = 0; m < mor.size(); ++m)
        mor[m] = position(tgt.morphisms, f.tgt->mor_name(f.mor[f.src->mor(src.morphisms[m])]));
    return InternalFunctor{FinMap(src.objects, tgt.objects, ob),
                           FinMap(src.morphisms, tgt.morphisms, mor)};
}

InternalProf prof_to_internal(const Profunctor& p, const InternalCat& a, const InternalCat& b)
{
    std::vector<std::string> names;
    for (ElemId e = 0; e < p.size(); ++e)
        names.push_back(p.full_name(e));
    FinSet elems(names);
    std::vector<std::size_t> pos(p.size()), id_of(p.size());
    for (ElemId e = 0; e < p.size(); ++e) {
        pos[e] = position(elems, names[e]);
        id_of[pos[e]] = e;
    }
    std::vector<std::size_t> lb(elems.size()), rb(elems.size());
    for (ElemId e = 0; e < p.size(); ++e) {
        lb[pos[e]] = position(a.objects, p.left()->ob_name(p.a_of(e)));
        rb[pos[e]] = position(b.objects, p.right()->ob_name(p.b_of(e)));
    }
    InternalProf out{elems, FinMap(elems, a.objects, lb), FinMap(elems, b.objects, rb), {}, {}, {}, {}};
    out.left_pairs = pullback(a.tgt, out.left_base);
    std::vector<std::size_t> la(out.left_pairs.set.size());
    for (std::size_t i = 0; i < la.size(); ++i) {
        MorId s = p.left()->mor(a.morphisms[out.left_pairs.p1(i)]);
        la[i] = pos[p.act_left(s, id_of[out.left_pairs.p2(i)])];
    }
    out.left_act = FinMap(out.left_pairs.set, elems, la);
    out.right_pairs = pullback(out.right_base, b.src);
    std::vector<std::size_t> ra(out.right_pairs.set.size());
    for (std::size_t i = 0; i < ra.size(); ++i) {
        MorId t = p.right()->mor(b.morphisms[out.right_pairs.p2(i)]);
        ra[i] = pos[p.act_right(id_of[out.right_pairs.p1(i)], t)];
    }
    out.right_act = FinMap(out.right_pairs.set, elems, ra);
    return out;
}

FinMap internal_transformation(const InternalCat& a, const InternalFunctor& f,
                               const InternalFunctor& g, const InternalProf& k,
                               const FinMap& phi0)
{
    if (!(phi0.source() == a.objects) || !(phi0.target() == k.elements))
        throw BoundaryMismatch("component map has the wrong boundary");
    if (!(compose(k.left_base, phi0) == f.on_objects) || !(compose(k.right_base, phi0) == g.on_objects))
        throw BoundaryMismatch("component does not lie over (f, g)");
    PairIndex left = pair_index(k.left_pairs), right = pair_index(k.right_pairs);
    std::vector<std::size_t> cell(a.morphisms.size());
    for (std::size_t s = 0; s < cell.size(); ++s) {
        std::size_t via_left = k.left_act(left.at({f.on_morphisms(s), phi0(a.tgt(s))}));
        std::size_t via_right = k.right_act(right.at({phi0(a.src(s)), g.on_morphisms(s)}));
        if (via_left != via_right)
            throw NaturalityFailure("naturality fails at " + a.morphisms[s] + ": " +
                                    k.elements[via_left] + " vs " + k.elements[via_right]);
        cell[s] = via_left;
    }
    return FinMap(a.morphisms, k.elements, cell);
}

FinMap transformation_component(const InternalCat& a, const FinMap& cell)
{
    return compose(cell, a.ident);
}

FinMap procell_component(const ProCell& c, const InternalCat& a, const InternalProf& k)
{
    const FinCat& A = *c.src->left();
    std::vector<std::size_t> phi0(a.objects.size());
    for (std::size_t o = 0; o < phi0.size(); ++o) {
        ElemId e = c.comp[unit_elem(*c.src, A.id(A.ob(a.objects[o])))];
        phi0[o] = position(k.elements, c.tgt->full_name(e));
    }
    return FinMap(a.objects, k.elements, phi0);
}

ProCell internal_cell_to_procell(const InternalCat& a, const FinMap& cell, const ProRef& k,
                                 const FinFunctor& f, const FinFunctor& g)
{
    std::map<std::string, ElemId> by_name;
    for (ElemId e = 0; e < k->size(); ++e)
        by_name[k->full_name(e)] = e;
    ProRef u = unit_prof(f.src);
    ProCell out{u, k, f, g, std::vector<ElemId>(u->size())};
    for (MorId m = 0; m < f.src->num_morphisms(); ++m)
        out.comp[unit_elem(*u, m)] =
            by_name.at(cell.target()[cell(position(a.morphisms, f.src->mor_name(m)))]);
    return out;
}

InternalComma internal_comma(const InternalProf& j, const InternalCat& a, const InternalCat& c,
                             const InternalCat& b, const InternalFunctor& f)
{
    (void)b;
    Pullback obj = pullback(j.right_base, f.on_objects);  // (x, c)
    FinMap obj_a = compose(j.left_base, obj.p1);
    const FinMap& obj_c = obj.p2;
    Pullback lp = pullback(a.tgt, obj_a);  // (u, o2)
    Pullback rp = pullback(obj_c, c.src);  // (o1, v)
    Product jc = product(j.elements, c.objects);
    PairIndex jl = pair_index(j.left_pairs), jr = pair_index(j.right_pairs);

    std::vector<std::size_t> lg(lp.set.size()), rg(rp.set.size());
    for (std::size_t i = 0; i < lg.size(); ++i) {
        std::size_t o2 = lp.p2(i);
        lg[i] = jc.pair_index[j.left_act(jl.at({lp.p1(i), obj.p1(o2)}))][obj_c(o2)];
    }
    for (std::size_t i = 0; i < rg.size(); ++i) {
        std::size_t v = rp.p2(i);
        rg[i] = jc.pair_index[j.right_act(jr.at({obj.p1(rp.p1(i)), f.on_morphisms(v)}))][c.tgt(v)];
    }
    Pullback mor = pullback(FinMap(lp.set, jc.set, lg), FinMap(rp.set, jc.set, rg));

    InternalComma out;
    const std::size_t nm = mor.set.size();
    std::vector<std::size_t> src(nm), tgt(nm), pa(nm), pc(nm), pi(nm);
    std::map<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>, std::size_t> at;
    out.arrow.resize(nm);
    for (std::size_t m = 0; m < nm; ++m) {
        std::size_t u = lp.p1(mor.p1(m)), o2 = lp.p2(mor.p1(m));
        std::size_t o1 = rp.p1(mor.p2(m)), v = rp.p2(mor.p2(m));
        src[m] = o1;
        tgt[m] = o2;
        pa[m] = u;
        pc[m] = v;
        pi[m] = j.left_act(jl.at({u, obj.p1(o2)}));
        out.arrow[m] = {u, v};
        at[{o1, o2, u, v}] = m;
    }
    const FinSet& O = obj.set;
    std::vector<std::size_t> ident(O.size());
    out.object.resize(O.size());
    for (std::size_t o = 0; o < O.size(); ++o) {
        out.object[o] = {obj.p1(o), obj.p2(o)};
        auto it = at.find({o, o, a.ident(obj_a(o)), c.ident(obj_c(o))});
        if (it == at.end())
            throw AxiomFailure("identity missing from the comma at " + O[o]);
        ident[o] = it->second;
    }
    InternalCat& cat = out.cat;
    cat.objects = O;
    cat.morphisms = mor.set;
    cat.src = FinMap(mor.set, O, src);
    cat.tgt = FinMap(mor.set, O, tgt);
    cat.ident = FinMap(O, mor.set, ident);
    cat.composable = pullback(cat.tgt, cat.src);
    PairIndex acomp = pair_index(a.composable), ccomp = pair_index(c.composable);
    std::vector<std::size_t> comp(cat.composable.set.size());
    for (std::size_t i = 0; i < comp.size(); ++i) {
        std::size_t m1 = cat.composable.p1(i), m2 = cat.composable.p2(i);
        std::size_t u = a.comp(acomp.at({pa[m1], pa[m2]}));
        std::size_t v = c.comp(ccomp.at({pc[m1], pc[m2]}));
        auto it = at.find({src[m1], tgt[m2], u, v});
        if (it == at.end())
            throw AxiomFailure("composite missing from the comma: " +
                               tuple_atom({mor.set[m1], mor.set[m2]}));
        comp[i] = it->second;
    }
    cat.comp = FinMap(cat.composable.set, mor.set, comp);
    validate_internal(cat);
    out.proj_a = InternalFunctor{obj_a, FinMap(mor.set, a.morphisms, pa)};
    out.proj_c = InternalFunctor{obj_c, FinMap(mor.set, c.morphisms, pc)};
    out.pi = FinMap(mor.set, j.elements, pi);
    return out;
}

DoubleComma internal_comma_as_double_comma(const ProRef& jref, const FinFunctor& f)
{
    const Profunctor& J = *jref;
    if (!same_cat(f.tgt, J.right()))
        throw BoundaryMismatch("double comma: functor does not land in the weight's codomain");
    InternalCat ia = fincat_to_internal(*J.left());
    InternalCat ib = fincat_to_internal(*J.right());
    InternalCat ic = fincat_to_internal(*f.src);
    InternalProf ij = prof_to_internal(J, ia, ib);
    InternalComma comma = internal_comma(ij, ia, ic, ib, functor_to_internal(f, ic, ib));
    CatRef cat = internal_to_fincat(comma.cat);

    std::map<std::string, ElemId> by_name;
    for (ElemId e = 0; e < J.size(); ++e)
        by_name[J.full_name(e)] = e;
    const InternalCat& ci = comma.cat;
    DoubleComma dc;
    dc.weight = jref;
    dc.f = f;
    dc.comma = cat;
    dc.triple.resize(ci.objects.size());
    dc.proj_a = FinFunctor{cat, J.left(), std::vector<ObId>(cat->num_objects()),
                           std::vector<MorId>(cat->num_morphisms())};
    dc.proj_c = FinFunctor{cat, f.src, std::vector<ObId>(cat->num_objects()),
                           std::vector<MorId>(cat->num_morphisms())};
    for (std::size_t o = 0; o < ci.objects.size(); ++o) {
        ObId id = cat->ob(ci.objects[o]);
        ElemId x = by_name.at(ij.elements[comma.object[o].first]);
        ObId c = f.src->ob(ic.objects[comma.object[o].second]);
        dc.triple[id] = {J.a_of(x), x, c};
        dc.proj_a.ob[id] = J.a_of(x);
        dc.proj_c.ob[id] = c;
    }
    std::vector<MorId> ids(ci.morphisms.size());
    for (std::size_t m = 0; m < ids.size(); ++m) {
        ids[m] = cat->mor(mor_atom(ci.morphisms[m], ci.objects[ci.src(m)], ci.objects[ci.tgt(m)]));
        dc.proj_a.mor[ids[m]] = J.left()->mor(ia.morphisms[comma.arrow[m].first]);
        dc.proj_c.mor[ids[m]] = f.src->mor(ic.morphisms[comma.arrow[m].second]);
    }
    ProRef uc = unit_prof(cat);
    dc.pi = ProCell{uc, jref, dc.proj_a, compose(f, dc.proj_c), std::vector<ElemId>(uc->size())};
    for (std::size_t m = 0; m < ids.size(); ++m)
        dc.pi.comp[unit_elem(*uc, ids[m])] = by_name.at(ij.elements[comma.pi(m)]);
    return dc;
}

Verdict check_internal_comma_agreement(const ProRef& j, const FinFunctor& f, std::size_t probe_depth)
{
    const std::string check = "internal-comma", subject = "J/f";
    DoubleComma direct = double_comma(j, f);
    DoubleComma internal = internal_comma_as_double_comma(j, f);
    const FinCat& D = *direct.comma;
    const FinCat& I = *internal.comma;
    if (D.num_objects() != I.num_objects() || D.num_morphisms() != I.num_morphisms())
        return Verdict::fail(check, subject,
                             "sizes " + tuple_atom({std::to_string(D.num_objects()),
                                                    std::to_string(D.num_morphisms())}) +
                                 " vs " +
                                 tuple_atom({std::to_string(I.num_objects()),
                                             std::to_string(I.num_morphisms())}));

    std::map<std::tuple<ObId, ElemId, ObId>, ObId> direct_ob;
    for (ObId o = 0; o < D.num_objects(); ++o)
        direct_ob[direct.triple[o]] = o;
    std::vector<ObId> ob(I.num_objects());
    std::vector<bool> ob_hit(D.num_objects(), false);
    for (ObId o = 0; o < I.num_objects(); ++o) {
        auto it = direct_ob.find(internal.triple[o]);
        if (it == direct_ob.end() || ob_hit[it->second])
            return Verdict::fail(check, subject, "object " + I.ob_name(o));
        ob_hit[it->second] = true;
        ob[o] = it->second;
    }

    std::map<std::tuple<ObId, ObId, MorId, MorId>, MorId> direct_mor;
    for (MorId m = 0; m < D.num_morphisms(); ++m)
        direct_mor[{D.src(m), D.tgt(m), direct.proj_a.mor[m], direct.proj_c.mor[m]}] = m;
    std::vector<MorId> mor(I.num_morphisms());
    std::vector<bool> mor_hit(D.num_morphisms(), false);
    for (MorId m = 0; m < I.num_morphisms(); ++m) {
        auto it = direct_mor.find(
            {ob[I.src(m)], ob[I.tgt(m)], internal.proj_a.mor[m], internal.proj_c.mor[m]});
        if (it == direct_mor.end() || mor_hit[it->second])
            return Verdict::fail(check, subject, "morphism " + I.mor_name(m));
        mor_hit[it->second] = true;
        mor[m] = it->second;
    }

    for (ObId o = 0; o < I.num_objects(); ++o)
        if (mor[I.id(o)] != D.id(ob[o]))
            return Verdict::fail(check, subject, "identity at " + I.ob_name(o));
    for (MorId m1 = 0; m1 < I.num_morphisms(); ++m1)
        for (MorId m2 : I.out(I.tgt(m1)))
            if (mor[I.compose(m2, m1)] != D.compose(mor[m2], mor[m1]))
                return Verdict::fail(check, subject,
                                     "composite " + tuple_atom({I.mor_name(m1), I.mor_name(m2)}));
    ProRef ud = unit_prof(direct.comma), ui = unit_prof(internal.comma);
    for (MorId m = 0; m < I.num_morphisms(); ++m)
        if (internal.pi.comp[unit_elem(*ui, m)] != direct.pi.comp[unit_elem(*ud, mor[m])])
            return Verdict::fail(check, subject, "pi at " + I.mor_name(m));

    Verdict v = Verdict::ok(check, subject,
                            "objects=" + std::to_string(I.num_objects()) +
                                " morphisms=" + std::to_string(I.num_morphisms()));
    v.absorb(validate_cell(internal.pi));
    v.absorb(verify_double_comma(internal, probe_sources(probe_depth)));
    return v;
}

Verdict underlying_right_invertible(const ProCell& phi)
{
    const std::string check = "underlying-right-invertible", subject = "phi";
    const Profunctor& J = *phi.src;
    const Profunctor& K = *phi.tgt;
    const FinCat& A = *J.left();
    const FinCat& B = *J.right();
    const FinCat& C = *K.left();
    for (ObId c = 0; c < C.num_objects(); ++c)
        for (ObId b = 0; b < B.num_objects(); ++b) {
            std::vector<std::size_t> hits(K.fiber_size(c, phi.g.ob[b]), 0);
            for (ObId a = 0; a < A.num_objects(); ++a) {
                if (phi.f.ob[a] != c)
                    continue;
                auto [lo, hi] = J.fiber_range(a, b);
                for (ElemId x = lo; x < hi; ++x)
                    ++hits[K.local(phi.comp[x])];
            }
            for (std::size_t n : hits)
                if (n != 1)
                    return Verdict::fail(check, subject,
                                         "fiber " + tuple_atom({C.ob_name(c), B.ob_name(b)}));
        }
    return Verdict::ok(check, subject);
}

Verdict rho_bimodule_check(const ProCell& phi)
{
    const bool on_objects = underlying_right_invertible(unit_cell(phi.f)).pass;
    const bool on_cell = underlying_right_invertible(phi).pass;
    Verdict bimodule = is_right_invertible(phi);
    const std::string scope = std::string("underlying=") + (on_objects && on_cell ? "yes" : "no") +
                              " bimodule=" + (bimodule.pass ? "yes" : "no");
    if (on_objects && on_cell && !bimodule.pass)
        return Verdict::fail("rho-bimodule", "phi", bimodule.witness, scope);
    return Verdict::ok("rho-bimodule", "phi", scope);
}

}  // namespace procat
