#include "procat/error.hpp"
#include "procat/monalg.hpp"
#include "coend.hpp"
#include "seqcore.hpp"

#include <memory>
#include <numeric>

namespace procat {

using namespace detail;

namespace {

std::string scope_of(MonadKind kind, std::size_t n)
{
    return std::string("N=") + std::to_string(n) + " kind=" + kind_name(kind);
}

// Keeps the first failure.
struct Scan {
    Verdict v;
    bool fail(const std::string& w)
    {
        if (v.pass)
            v = Verdict::fail(v.check, v.subject, w, v.scope);
        return false;
    }
};

std::string elem_seq_name(const Profunctor& j, const Seq& elems)
{
    std::vector<std::string> names;
    for (ElemId e : elems)
        names.push_back(j.full_name(e));
    return tuple_atom(names);
}

}  // namespace

// ---- right suitability ----

Verdict check_right_suitable(MonadKind kind, const ProRef& jr, ArityBudget budget,
                             std::size_t guard)
{
    const Profunctor& j = *jr;
    const FinCat& a = *j.left();
    const FinCat& b = *j.right();
    const std::size_t n = budget.n;
    std::size_t bijective = 0, empty = 0;
    auto show = [&](const SeqArrow& e) { return elem_label(kind, j, e); };
    auto fail = [&](const std::string& w) {
        return Verdict::fail("right-suitable", kind_name(kind), w, scope_of(kind, n));
    };

    // rho eta_J at (x, y): the coend over v of T A(x, (v)) x J(v, y) against T J(x, (y)).
    for (std::size_t len = 0; len <= n; ++len)
        for (const Seq& x : all_sequences(a.num_objects(), len))
            for (ObId y = 0; y < b.num_objects(); ++y) {
                CoendQuotient<ObId, SeqArrow, ElemId> q(guard);
                for (ObId v = 0; v < a.num_objects(); ++v)
                    q.add(v, hom_arrows(kind, a, x, {v}), fiber_list(j, v, y));
                for (MorId g = 0; g < a.num_morphisms(); ++g)
                    if (!a.is_identity(g))
                        q.relate(
                            a.src(g), a.tgt(g),
                            [&](const SeqArrow& l) { return compose_arrows(a, singleton(g), l); },
                            [&](ElemId r) { return j.act_left(g, r); });
                auto target = elem_arrows(kind, j, x, {y});
                auto bad = bijection_failure(
                    q, target,
                    [&](ObId, const SeqArrow& l, ElemId r) { return act_left(j, l, singleton(r)); },
                    show);
                if (bad)
                    return fail("rho eta at x=" + seq_name(a, x) + " y=" + b.ob_name(y) + ": " +
                                *bad);
                (target.empty() ? empty : bijective)++;
            }

    // rho mu_J at (x, y): the coend over double sequences v of
    // T A(x, mu v) x T^2 J(v, y) against T J(x, mu y).
    std::vector<Seq2> ys = double_sequences_in_budget(b.num_objects(), n);
    for (std::size_t len = 0; len <= n; ++len)
        for (const Seq& x : all_sequences(a.num_objects(), len))
            for (const Seq2& y : ys) {
                Seq flat_y = concat(y);
                if (flat_y.size() != len) {
                    // Both sides are empty: no arrows between sequences of different lengths.
                    if (!hom_arrows(kind, a, x, flat_y).empty() ||
                        !elem_arrows(kind, j, x, flat_y).empty())
                        return fail("arrows between sequences of different lengths");
                    ++empty;
                    continue;
                }
                CoendQuotient<Seq2, SeqArrow, SeqArrow2> q(guard);
                std::vector<Seq2> meds = double_sequences(kind, a.num_objects(), lengths_of(y));
                for (const Seq2& v : meds)
                    q.add(v, hom_arrows(kind, a, x, concat(v)), elem_arrows2(kind, j, v, y));
                for (const Seq2& v : meds)
                    for (const SeqArrow2& g : generators2(kind, a, v))
                        q.relate(
                            v, arrow2_tgt(a, g),
                            [&](const SeqArrow& l) { return compose_arrows(a, flatten(g), l); },
                            [&](const SeqArrow2& r) { return act_left2(j, g, r); });
                auto target = elem_arrows(kind, j, x, flat_y);
                auto bad = bijection_failure(
                    q, target,
                    [&](const Seq2&, const SeqArrow& l, const SeqArrow2& r) {
                        return act_left(j, l, flatten(r));
                    },
                    show);
                if (bad)
                    return fail("rho mu at x=" + seq_name(a, x) + " y=" + seq2_name(b, y) + ": " +
                                *bad);
                (target.empty() ? empty : bijective)++;
            }
    return Verdict::ok("right-suitable", kind_name(kind),
                       scope_of(kind, n) + " bijections=" + std::to_string(bijective) +
                           " empty=" + std::to_string(empty));
}

Verdict theta_check(const ProRef& jr, ArityBudget budget, std::size_t guard)
{
    const Profunctor& j = *jr;
    const FinCat& a = *j.left();
    const FinCat& b = *j.right();
    std::size_t components = 0;
    for (std::size_t len = 0; len <= budget.n; ++len)
        for (const Seq& x : all_sequences(a.num_objects(), len))
            for (const Seq& z : all_sequences(b.num_objects(), len)) {
                // The coend over y in M A of S A(x, y) x M J(y, z) against S J(x, z).
                CoendQuotient<Seq, SeqArrow, SeqArrow> q(guard);
                std::vector<Seq> meds = all_sequences(a.num_objects(), len);
                for (const Seq& y : meds)
                    q.add(y, hom_arrows(MonadKind::S, a, x, y),
                          elem_arrows(MonadKind::M, j, y, z));
                for (const Seq& y : meds)
                    for (const SeqArrow& g : generators(MonadKind::M, a, y))
                        q.relate(
                            y, arrow_tgt(a, g),
                            [&](const SeqArrow& l) { return compose_arrows(a, g, l); },
                            [&](const SeqArrow& r) { return act_left(j, g, r); });
                auto bad = bijection_failure(
                    q, elem_arrows(MonadKind::S, j, x, z),
                    [&](const Seq&, const SeqArrow& l, const SeqArrow& r) {
                        return act_left(j, l, r);
                    },
                    [&](const SeqArrow& e) { return elem_label(MonadKind::S, j, e); });
                if (bad)
                    return Verdict::fail("theta-right-invertible", "theta",
                                         "x=" + seq_name(a, x) + " z=" + seq_name(b, z) + ": " +
                                             *bad,
                                         "N=" + std::to_string(budget.n));
                ++components;
            }
    return Verdict::ok("theta-right-invertible", "theta",
                       "N=" + std::to_string(budget.n) + " components=" +
                           std::to_string(components));
}

// ---- colax algebras ----

ColaxAlgebra::ColaxAlgebra(MonadKind kind, CatRef cat, ArityBudget budget, Tables tables)
    : kind_(kind), cat_(std::move(cat)), budget_(budget), tables_(std::move(tables))
{
    const FinCat& a = *cat_;
    const std::size_t n = budget_.n;
    auto missing = [&](const std::string& what) {
        throw ValidationError("algebra table misses " + what);
    };
    std::size_t ob_count = 0, mor_count = 0, sym_count = 0;
    for (std::size_t len = 0; len <= n; ++len)
        for (const Seq& x : all_sequences(a.num_objects(), len)) {
            auto it = tables_.tensor_ob.find(x);
            if (it == tables_.tensor_ob.end())
                missing("the tensor of " + seq_name(a, x));
            if (it->second >= a.num_objects())
                throw ValidationError("tensor of " + seq_name(a, x) + " is not an object");
            ++ob_count;
        }
    for (std::size_t len = 0; len <= n; ++len)
        for (const Seq& x : all_sequences(a.num_objects(), len))
            for (const SeqArrow& f : out_arrows(MonadKind::M, a, x)) {
                auto it = tables_.tensor_mor.find(f.parts);
                if (it == tables_.tensor_mor.end())
                    missing("the tensor of morphisms " + arrow_label(MonadKind::M, a, f));
                if (it->second >= a.num_morphisms() || a.src(it->second) != tensor(x) ||
                    a.tgt(it->second) != tensor(arrow_tgt(a, f)))
                    throw ValidationError("tensor of " + arrow_label(MonadKind::M, a, f) +
                                          " is ill-typed");
                ++mor_count;
            }
    for (ObId x = 0; x < a.num_objects(); ++x)
        if (tensor(Seq{x}) != x)
            throw ValidationError("unary tensor moves " + a.ob_name(x) + "; algebra is not normal");
    for (MorId m = 0; m < a.num_morphisms(); ++m)
        if (tensor_parts(Seq{m}) != m)
            throw ValidationError("unary tensor moves " + a.mor_name(m) +
                                  "; algebra is not normal");
    std::size_t assoc_count = 0;
    for (const Seq2& x : double_sequences_in_budget(a.num_objects(), n)) {
        auto it = tables_.assoc.find(x);
        if (it == tables_.assoc.end())
            missing("the associator at " + seq2_name(a, x));
        Seq outer;
        for (const Seq& s : x)
            outer.push_back(tensor(s));
        if (it->second >= a.num_morphisms() || a.src(it->second) != tensor(concat(x)) ||
            a.tgt(it->second) != tensor(outer))
            throw ValidationError("associator at " + seq2_name(a, x) + " is ill-typed");
        ++assoc_count;
    }
    if (kind_ == MonadKind::S) {
        for (std::size_t len = 0; len <= n; ++len)
            for (const Seq& x : all_sequences(a.num_objects(), len))
                for (const Perm& s : all_perms(len)) {
                    auto it = tables_.symmetry.find({s, x});
                    if (it == tables_.symmetry.end())
                        missing("the symmetry " + render_perm(s) + " at " + seq_name(a, x));
                    if (it->second >= a.num_morphisms() || a.src(it->second) != tensor(x) ||
                        a.tgt(it->second) != tensor(permute(x, s)))
                        throw ValidationError("symmetry " + render_perm(s) + " at " +
                                              seq_name(a, x) + " is ill-typed");
                    ++sym_count;
                }
    }
    if (tables_.tensor_ob.size() != ob_count || tables_.tensor_mor.size() != mor_count ||
        tables_.assoc.size() != assoc_count || tables_.symmetry.size() != sym_count)
        throw ValidationError("algebra table has entries beyond the budget");
}

ObId ColaxAlgebra::tensor(const Seq& x) const
{
    if (x.size() > budget_.n)
        throw ArityBudgetExceeded("tensor of " + std::to_string(x.size()) + " objects");
    auto it = tables_.tensor_ob.find(x);
    if (it == tables_.tensor_ob.end())
        throw ValidationError("tensor of a sequence outside the category");
    return it->second;
}

MorId ColaxAlgebra::tensor_parts(const Seq& parts) const
{
    if (parts.size() > budget_.n)
        throw ArityBudgetExceeded("tensor of " + std::to_string(parts.size()) + " morphisms");
    auto it = tables_.tensor_mor.find(parts);
    if (it == tables_.tensor_mor.end())
        throw ValidationError("tensor of morphisms outside the category");
    return it->second;
}

MorId ColaxAlgebra::tensor(const SeqArrow& f) const
{
    MorId parts = tensor_parts(f.parts);
    if (is_identity_perm(f.perm))
        return parts;
    return cat_->compose(parts, symmetry(f.perm, arrow_src(*cat_, f)));
}

MorId ColaxAlgebra::assoc(const Seq2& x) const
{
    std::size_t total = 0;
    for (const Seq& s : x)
        total += s.size();
    if (x.size() > budget_.n || total > budget_.n)
        throw ArityBudgetExceeded("associator beyond the budget");
    auto it = tables_.assoc.find(x);
    if (it == tables_.assoc.end())
        throw ValidationError("associator at a sequence outside the category");
    return it->second;
}

MorId ColaxAlgebra::symmetry(const Perm& s, const Seq& x) const
{
    if (kind_ == MonadKind::M) {
        if (!is_identity_perm(s))
            throw ValidationError("an M-algebra has no symmetries");
        return cat_->id(tensor(x));
    }
    if (x.size() > budget_.n)
        throw ArityBudgetExceeded("symmetry beyond the budget");
    auto it = tables_.symmetry.find({s, x});
    if (it == tables_.symmetry.end())
        throw ValidationError("symmetry at a sequence outside the category");
    return it->second;
}

Verdict validate_algebra(const ColaxAlgebra& alg)
{
    const FinCat& a = *alg.cat();
    const MonadKind kind = alg.kind();
    const std::size_t n = alg.budget();
    Scan s{Verdict::ok("colax-algebra", kind_name(kind), scope_of(kind, n))};

    // Functoriality of each tensor.
    for (std::size_t len = 0; len <= n; ++len)
        for (const Seq& x : all_sequences(a.num_objects(), len)) {
            if (alg.tensor_parts(identity_arrow(a, x).parts) != a.id(alg.tensor(x)))
                return s.fail("tensor of identities at " + seq_name(a, x)), s.v;
            for (const SeqArrow& f : out_arrows(MonadKind::M, a, x))
                for (const SeqArrow& g : out_arrows(MonadKind::M, a, arrow_tgt(a, f)))
                    if (alg.tensor_parts(compose_arrows(a, g, f).parts) !=
                        a.compose(alg.tensor_parts(g.parts), alg.tensor_parts(f.parts)))
                        return s.fail("tensor does not preserve " +
                                      arrow_label(MonadKind::M, a, g) + " after " +
                                      arrow_label(MonadKind::M, a, f)),
                               s.v;
        }

    // Naturality of the associator (and, under S, its compatibility with symmetries).
    auto doubles = double_sequences_in_budget(a.num_objects(), n);
    for (const Seq2& x : doubles)
        for (const SeqArrow2& g : generators2(kind, a, x)) {
            Seq2 y = arrow2_tgt(a, g);
            SeqArrow outer{g.perm, {}};
            for (const SeqArrow& p : g.parts)
                outer.parts.push_back(alg.tensor(p));
            MorId lhs = a.compose(alg.assoc(y), alg.tensor(flatten(g)));
            MorId rhs = a.compose(alg.tensor(outer), alg.assoc(x));
            if (lhs != rhs)
                return s.fail("associator not natural at " + seq2_name(a, x) + " along " +
                              arrow2_label(kind, a, g)),
                       s.v;
        }

    // Unit axioms.
    for (std::size_t len = 0; len <= n; ++len)
        for (const Seq& x : all_sequences(a.num_objects(), len)) {
            if (!a.is_identity(alg.assoc(Seq2{x})))
                return s.fail("associator at the single block " + seq_name(a, x)), s.v;
            Seq2 singles;
            for (ObId o : x)
                singles.push_back({o});
            if (!a.is_identity(alg.assoc(singles)))
                return s.fail("associator at the singletons of " + seq_name(a, x)), s.v;
        }

    // Associativity over triple sequences.
    for (const Seq3& x : triple_sequences(a.num_objects(), n)) {
        Seq2 flat_mid = concat(x);
        Seq2 tensors;
        for (const Seq2& block : x) {
            Seq t;
            for (const Seq& s2 : block)
                t.push_back(alg.tensor(s2));
            tensors.push_back(t);
        }
        MorId path1 = a.compose(alg.assoc(tensors), alg.assoc(flat_mid));
        Seq2 inner_mu;
        Seq inner_assoc;
        for (const Seq2& block : x) {
            inner_mu.push_back(concat(block));
            inner_assoc.push_back(alg.assoc(block));
        }
        MorId path2 = a.compose(alg.tensor_parts(inner_assoc), alg.assoc(inner_mu));
        if (path1 != path2) {
            std::vector<std::string> parts;
            for (const Seq2& block : x)
                parts.push_back(seq2_name(a, block));
            return s.fail("associativity fails at " + tuple_atom(parts)), s.v;
        }
    }

    if (kind == MonadKind::S)
        for (std::size_t len = 0; len <= n; ++len)
            for (const Seq& x : all_sequences(a.num_objects(), len)) {
                if (!a.is_identity(alg.symmetry(identity_perm(len), x)))
                    return s.fail("identity symmetry at " + seq_name(a, x)), s.v;
                for (const Perm& p : all_perms(len))
                    for (const Perm& t : all_perms(len))
                        if (a.compose(alg.symmetry(t, permute(x, p)), alg.symmetry(p, x)) !=
                            alg.symmetry(compose_perm(p, t), x))
                            return s.fail("symmetries " + render_perm(p) + ", " +
                                          render_perm(t) + " do not compose at " +
                                          seq_name(a, x)),
                                   s.v;
                for (const SeqArrow& g : generators(MonadKind::M, a, x)) {
                    Seq y = arrow_tgt(a, g);
                    for (const Perm& p : all_perms(len))
                        if (a.compose(alg.symmetry(p, y), alg.tensor_parts(g.parts)) !=
                            a.compose(alg.tensor_parts(permute(g.parts, p)), alg.symmetry(p, x)))
                            return s.fail("symmetry " + render_perm(p) + " not natural along " +
                                          arrow_label(MonadKind::M, a, g)),
                                   s.v;
                }
            }
    return s.v;
}

bool is_pseudo(const ColaxAlgebra& alg)
{
    for (const auto& [x, m] : alg.tables().assoc)
        if (!is_iso(*alg.cat(), m))
            return false;
    return true;
}

AlgRef thin_algebra(const Preorder& p, MonadKind kind, ArityBudget budget,
                    const std::function<std::size_t(const Seq&)>& tensor)
{
    CatRef cat = as_fincat(p);
    const FinCat& a = *cat;
    std::vector<ObId> ob(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        ob[i] = a.ob(p.carrier()[i]);
    auto unique = [&](ObId x, ObId y, const std::string& what) {
        const auto& h = a.hom(x, y);
        if (h.empty())
            throw AxiomFailure("thin algebra: no " + what + " " + a.ob_name(x) + " <= " +
                               a.ob_name(y));
        return h[0];
    };
    ColaxAlgebra::Tables t;
    for (std::size_t len = 0; len <= budget.n; ++len)
        for (const Seq& x : all_sequences(a.num_objects(), len)) {
            Seq px;
            for (ObId o : x)
                px.push_back(*p.carrier().index_of(a.ob_name(o)));
            t.tensor_ob[x] = ob[tensor(px)];
        }
    for (std::size_t len = 0; len <= budget.n; ++len)
        for (const Seq& x : all_sequences(a.num_objects(), len))
            for (const SeqArrow& f : out_arrows(MonadKind::M, a, x))
                t.tensor_mor[f.parts] =
                    unique(t.tensor_ob.at(x), t.tensor_ob.at(arrow_tgt(a, f)), "tensor of");
    for (const Seq2& x : double_sequences_in_budget(a.num_objects(), budget.n)) {
        Seq outer;
        for (const Seq& s : x)
            outer.push_back(t.tensor_ob.at(s));
        t.assoc[x] = unique(t.tensor_ob.at(concat(x)), t.tensor_ob.at(outer), "associator");
    }
    if (kind == MonadKind::S)
        for (std::size_t len = 0; len <= budget.n; ++len)
            for (const Seq& x : all_sequences(a.num_objects(), len))
                for (const Perm& s : all_perms(len))
                    t.symmetry[{s, x}] =
                        unique(t.tensor_ob.at(x), t.tensor_ob.at(permute(x, s)), "symmetry");
    return std::make_shared<const ColaxAlgebra>(kind, cat, budget, std::move(t));
}

AlgRef join_algebra(const Preorder& p, MonadKind kind, ArityBudget budget)
{
    return thin_algebra(p, kind, budget, [&](const Seq& xs) { return sup(p, xs); });
}

AlgRef monoid_algebra(const CatRef& c, MonadKind kind, ArityBudget budget)
{
    const FinCat& a = *c;
    if (a.num_objects() != 1)
        throw ValidationError("monoid algebra needs exactly one object");
    for (MorId f = 0; f < a.num_morphisms(); ++f)
        for (MorId g = 0; g < a.num_morphisms(); ++g)
            if (a.compose(f, g) != a.compose(g, f))
                throw ValidationError("monoid is not commutative: " + a.mor_name(f) + ", " +
                                      a.mor_name(g));
    ColaxAlgebra::Tables t;
    for (std::size_t len = 0; len <= budget.n; ++len) {
        Seq x(len, 0);
        t.tensor_ob[x] = 0;
        for (const SeqArrow& f : out_arrows(MonadKind::M, a, x)) {
            MorId m = a.id(0);
            for (MorId p : f.parts)
                m = a.compose(p, m);
            t.tensor_mor[f.parts] = m;
        }
        if (kind == MonadKind::S)
            for (const Perm& s : all_perms(len))
                t.symmetry[{s, x}] = a.id(0);
    }
    for (const Seq2& x : double_sequences_in_budget(1, budget.n))
        t.assoc[x] = a.id(0);
    return std::make_shared<const ColaxAlgebra>(kind, c, budget, std::move(t));
}

// ---- colax morphisms ----

MorId ColaxMorphism::at(const Seq& x) const
{
    if (x.size() > src->budget())
        throw ArityBudgetExceeded("compositor of " + std::to_string(x.size()) + " objects");
    auto it = compositor.find(x);
    if (it == compositor.end())
        throw ValidationError("compositor table misses a sequence");
    return it->second;
}

namespace {

Seq map_ob(const FinFunctor& f, const Seq& x)
{
    Seq out;
    for (ObId o : x)
        out.push_back(f.ob[o]);
    return out;
}

void require_same_kind(const ColaxAlgebra& a, const ColaxAlgebra& b, const char* what)
{
    if (a.kind() != b.kind() || a.budget() != b.budget())
        throw BoundaryMismatch(std::string(what) + ": algebras differ in kind or budget");
}

}  // namespace

Verdict validate_morphism(const ColaxMorphism& f)
{
    const ColaxAlgebra& sa = *f.src;
    const ColaxAlgebra& ta = *f.tgt;
    const MonadKind kind = sa.kind();
    Scan s{Verdict::ok("colax-morphism", "f", scope_of(kind, sa.budget()))};
    if (sa.kind() != ta.kind() || sa.budget() != ta.budget() || !same_cat(f.functor.src, sa.cat()) ||
        !same_cat(f.functor.tgt, ta.cat()))
        return s.fail("functor and algebras do not match"), s.v;
    const FinCat& a = *sa.cat();
    const FinCat& b = *ta.cat();
    const FinFunctor& F = f.functor;
    const std::size_t n = sa.budget();
    for (std::size_t len = 0; len <= n; ++len)
        for (const Seq& x : all_sequences(a.num_objects(), len)) {
            auto it = f.compositor.find(x);
            if (it == f.compositor.end())
                return s.fail("no compositor at " + seq_name(a, x)), s.v;
            if (it->second >= b.num_morphisms() || b.src(it->second) != F.ob[sa.tensor(x)] ||
                b.tgt(it->second) != ta.tensor(map_ob(F, x)))
                return s.fail("compositor at " + seq_name(a, x) + " is ill-typed"), s.v;
            if (len == 1 && !b.is_identity(it->second))
                return s.fail("unary compositor at " + seq_name(a, x) + " is not an identity"),
                       s.v;
        }
    for (std::size_t len = 0; len <= n; ++len)
        for (const Seq& x : all_sequences(a.num_objects(), len))
            for (const SeqArrow& g : generators(kind, a, x)) {
                MorId lhs = b.compose(f.at(arrow_tgt(a, g)), F.mor[sa.tensor(g)]);
                MorId rhs = b.compose(ta.tensor(map_parts(g, [&](MorId m) { return F.mor[m]; })),
                                      f.at(x));
                if (lhs != rhs)
                    return s.fail("compositor not natural at " + seq_name(a, x) + " along " +
                                  arrow_label(kind, a, g)),
                           s.v;
            }
    for (const Seq2& x : double_sequences_in_budget(a.num_objects(), n)) {
        Seq outer;
        Seq inner;
        Seq2 fx;
        for (const Seq& blk : x) {
            outer.push_back(sa.tensor(blk));
            inner.push_back(f.at(blk));
            fx.push_back(map_ob(F, blk));
        }
        MorId path1 = b.compose(ta.tensor_parts(inner),
                                b.compose(f.at(outer), F.mor[sa.assoc(x)]));
        MorId path2 = b.compose(ta.assoc(fx), f.at(concat(x)));
        if (path1 != path2)
            return s.fail("compositor associativity fails at " + seq2_name(a, x)), s.v;
    }
    return s.v;
}

bool is_pseudo(const ColaxMorphism& f)
{
    for (const auto& [x, m] : f.compositor)
        if (!is_iso(*f.tgt->cat(), m))
            return false;
    return true;
}

ColaxMorphism identity_morphism(const AlgRef& a)
{
    ColaxMorphism out{a, a, identity_functor(a->cat()), {}};
    for (const auto& [x, o] : a->tables().tensor_ob)
        out.compositor[x] = a->cat()->id(o);
    return out;
}

ColaxMorphism strict_morphism(const FinFunctor& f, const AlgRef& src, const AlgRef& tgt)
{
    require_same_kind(*src, *tgt, "strict morphism");
    ColaxMorphism out{src, tgt, f, {}};
    for (const auto& [x, o] : src->tables().tensor_ob) {
        ObId fo = f.ob[o];
        if (fo != tgt->tensor(map_ob(f, x)))
            throw AxiomFailure("functor does not commute with the tensor at " +
                               seq_name(*src->cat(), x));
        out.compositor[x] = tgt->cat()->id(fo);
    }
    return out;
}

ColaxMorphism thin_morphism(const FinFunctor& f, const AlgRef& src, const AlgRef& tgt)
{
    require_same_kind(*src, *tgt, "thin morphism");
    const FinCat& b = *tgt->cat();
    ColaxMorphism out{src, tgt, f, {}};
    for (const auto& [x, o] : src->tables().tensor_ob) {
        const auto& h = b.hom(f.ob[o], tgt->tensor(map_ob(f, x)));
        if (h.empty())
            throw AxiomFailure("no compositor at " + seq_name(*src->cat(), x));
        if (h.size() > 1)
            throw ValidationError("target of a thin morphism has parallel morphisms");
        out.compositor[x] = h[0];
    }
    return out;
}

ColaxMorphism compose(const ColaxMorphism& g, const ColaxMorphism& f)
{
    if (!same_cat(f.tgt->cat(), g.src->cat()))
        throw SourceMismatch("colax morphisms are not composable");
    const FinCat& c = *g.tgt->cat();
    ColaxMorphism out{f.src, g.tgt, compose(g.functor, f.functor), {}};
    for (const auto& [x, m] : f.compositor)
        out.compositor[x] = c.compose(g.at(map_ob(f.functor, x)), g.functor.mor[m]);
    return out;
}

// ---- lax promorphisms ----

ElemId LaxPromorphism::apply(const Seq& elems) const
{
    if (elems.size() > left->budget())
        throw ArityBudgetExceeded("structure of " + std::to_string(elems.size()) + " elements");
    auto it = structure.find(elems);
    if (it == structure.end())
        throw ValidationError("lax structure misses a sequence");
    return it->second;
}

ElemId LaxPromorphism::apply(const SeqArrow& elems) const
{
    ElemId base = apply(elems.parts);
    if (is_identity_perm(elems.perm))
        return base;
    return prof->act_left(left->symmetry(elems.perm, elem_src(*prof, elems)), base);
}

namespace {

Seq a_seq(const Profunctor& j, const Seq& elems)
{
    Seq out;
    for (ElemId e : elems)
        out.push_back(j.a_of(e));
    return out;
}

Seq b_seq(const Profunctor& j, const Seq& elems)
{
    Seq out;
    for (ElemId e : elems)
        out.push_back(j.b_of(e));
    return out;
}

// Identities everywhere except m at position k.
Seq spike(const FinCat& c, const Seq& obs, std::size_t k, MorId m)
{
    Seq out;
    for (ObId o : obs)
        out.push_back(c.id(o));
    out[k] = m;
    return out;
}

}  // namespace

Verdict validate_lax(const LaxPromorphism& jl)
{
    const Profunctor& j = *jl.prof;
    const ColaxAlgebra& la = *jl.left;
    const ColaxAlgebra& ra = *jl.right;
    const MonadKind kind = la.kind();
    const std::size_t n = la.budget();
    Scan s{Verdict::ok("lax-promorphism", "J", scope_of(kind, n))};
    if (la.kind() != ra.kind() || la.budget() != ra.budget() || !same_cat(j.left(), la.cat()) ||
        !same_cat(j.right(), ra.cat()))
        return s.fail("profunctor and algebras do not match"), s.v;
    const FinCat& a = *la.cat();
    const FinCat& b = *ra.cat();

    for (std::size_t len = 0; len <= n; ++len)
        for (const Seq& e : all_sequences(j.size(), len)) {
            auto it = jl.structure.find(e);
            if (it == jl.structure.end())
                return s.fail("no structure at " + elem_seq_name(j, e)), s.v;
            if (it->second >= j.size() || j.a_of(it->second) != la.tensor(a_seq(j, e)) ||
                j.b_of(it->second) != ra.tensor(b_seq(j, e)))
                return s.fail("structure at " + elem_seq_name(j, e) + " is ill-typed"), s.v;
            if (len == 1 && it->second != e[0])
                return s.fail("unary structure moves " + j.full_name(e[0])), s.v;
        }
    for (std::size_t len = 0; len <= n; ++len)
        for (const Seq& e : all_sequences(j.size(), len)) {
            Seq x = a_seq(j, e), y = b_seq(j, e);
            for (std::size_t k = 0; k < len; ++k) {
                for (MorId m : a.in(x[k]))
                    if (!a.is_identity(m)) {
                        Seq e2 = e;
                        e2[k] = j.act_left(m, e[k]);
                        Seq x2 = x;
                        x2[k] = a.src(m);
                        if (jl.apply(e2) != j.act_left(la.tensor_parts(spike(a, x2, k, m)), jl.apply(e)))
                            return s.fail("structure not natural on the left at " +
                                          elem_seq_name(j, e) + " along " + a.mor_name(m)),
                                   s.v;
                    }
                for (MorId m : b.out(y[k]))
                    if (!b.is_identity(m)) {
                        Seq e2 = e;
                        e2[k] = j.act_right(e[k], m);
                        if (jl.apply(e2) != j.act_right(jl.apply(e), ra.tensor_parts(spike(b, y, k, m))))
                            return s.fail("structure not natural on the right at " +
                                          elem_seq_name(j, e) + " along " + b.mor_name(m)),
                                   s.v;
                    }
            }
            if (kind == MonadKind::S)
                for (std::size_t k = 0; k + 1 < len; ++k) {
                    Perm p = identity_perm(len);
                    std::swap(p[k], p[k + 1]);
                    ElemId lhs = j.act_right(jl.apply(e), ra.symmetry(p, y));
                    ElemId rhs = j.act_left(la.symmetry(p, x), jl.apply(permute(e, p)));
                    if (lhs != rhs)
                        return s.fail("structure not symmetric at " + elem_seq_name(j, e) +
                                      " under " + render_perm(p)),
                               s.v;
                }
        }
    for (const Seq2& shape_src : double_sequences_in_budget(1, n)) {
        Seq lengths = lengths_of(shape_src);
        std::size_t total = concat(shape_src).size();
        for (const Seq& flat : all_sequences(j.size(), total)) {
            Seq2 e = regroup(flat, lengths);
            Seq2 x, y;
            Seq inner;
            for (const Seq& blk : e) {
                x.push_back(a_seq(j, blk));
                y.push_back(b_seq(j, blk));
                inner.push_back(jl.apply(blk));
            }
            ElemId lhs = j.act_right(jl.apply(flat), ra.assoc(y));
            ElemId rhs = j.act_left(la.assoc(x), jl.apply(inner));
            if (lhs != rhs) {
                std::vector<std::string> parts;
                for (const Seq& blk : e)
                    parts.push_back(elem_seq_name(j, blk));
                return s.fail("structure associativity fails at " + tuple_atom(parts)), s.v;
            }
        }
    }
    return s.v;
}

LaxPromorphism companion_lax(const ColaxMorphism& f)
{
    const FinCat& a = *f.src->cat();
    const FinCat& c = *f.tgt->cat();
    CompanionPair cp = companion(f.functor);
    const Profunctor& j = *cp.companion;
    FinFunctor idc = identity_functor(f.tgt->cat());
    LaxPromorphism out{cp.companion, f.src, f.tgt, {}};
    for (std::size_t len = 0; len <= f.src->budget(); ++len)
        for (const Seq& e : all_sequences(j.size(), len)) {
            Seq mors;
            for (ElemId x : e)
                mors.push_back(restricted_mor(c, j, f.functor, idc, x));
            Seq x = a_seq(j, e), y = b_seq(j, e);
            MorId m = c.compose(f.tgt->tensor_parts(mors), f.at(x));
            out.structure[e] =
                restricted_elem(c, j, f.functor, idc, f.src->tensor(x), f.tgt->tensor(y), m);
        }
    (void)a;
    return out;
}

ColaxMorphism lax_to_colax(const LaxPromorphism& jl, const FinFunctor& f)
{
    CompanionPair cp = companion(f);
    if (!(*cp.companion == *jl.prof))
        throw BoundaryMismatch("lax promorphism does not live on the companion of f");
    const FinCat& a = *jl.left->cat();
    const FinCat& c = *jl.right->cat();
    const Profunctor& j = *jl.prof;
    FinFunctor idc = identity_functor(jl.right->cat());
    ColaxMorphism out{jl.left, jl.right, f, {}};
    for (std::size_t len = 0; len <= jl.left->budget(); ++len)
        for (const Seq& x : all_sequences(a.num_objects(), len)) {
            Seq ids;
            for (ObId o : x)
                ids.push_back(restricted_elem(c, j, f, idc, o, f.ob[o], c.id(f.ob[o])));
            out.compositor[x] = restricted_mor(c, j, f, idc, jl.apply(ids));
        }
    return out;
}

LaxPromorphism unit_lax(const AlgRef& a) { return companion_lax(identity_morphism(a)); }

// ---- splittings and their coends ----

namespace {

using SplitQuot = CoendQuotient<Seq, MorId, SeqArrow>;
using Split2Quot = CoendQuotient<Seq2, MorId, SeqArrow2>;

// The coend over y in T_n A of A(x, a y) x T J(y, z).
std::unique_ptr<SplitQuot> split_coend(const ColaxAlgebra& alg, const Profunctor& j, ObId x,
                                       const Seq& z, std::size_t guard)
{
    const FinCat& a = *alg.cat();
    const MonadKind kind = alg.kind();
    auto q = std::make_unique<SplitQuot>(guard);
    std::vector<Seq> meds = all_sequences(a.num_objects(), z.size());
    for (const Seq& y : meds)
        q->add(y, a.hom(x, alg.tensor(y)), elem_arrows(kind, j, y, z));
    for (const Seq& y : meds)
        for (const SeqArrow& g : generators(kind, a, y)) {
            MorId ag = alg.tensor(g);
            q->relate(
                y, arrow_tgt(a, g), [&](MorId l) { return a.compose(ag, l); },
                [&](const SeqArrow& r) { return act_left(j, g, r); });
        }
    return q;
}

// The coend over double sequences v of A(x, a(T a v)) x T^2 J(v, z).
std::unique_ptr<Split2Quot> split_coend2(const ColaxAlgebra& alg, const Profunctor& j, ObId x,
                                         const Seq2& z, std::size_t guard)
{
    const FinCat& a = *alg.cat();
    const MonadKind kind = alg.kind();
    auto tensor2 = [&](const Seq2& v) {
        Seq outer;
        for (const Seq& s : v)
            outer.push_back(alg.tensor(s));
        return alg.tensor(outer);
    };
    auto q = std::make_unique<Split2Quot>(guard);
    std::vector<Seq2> meds = double_sequences(kind, a.num_objects(), lengths_of(z));
    for (const Seq2& v : meds)
        q->add(v, a.hom(x, tensor2(v)), elem_arrows2(kind, j, v, z));
    for (const Seq2& v : meds)
        for (const SeqArrow2& g : generators2(kind, a, v)) {
            SeqArrow outer{g.perm, {}};
            for (const SeqArrow& p : g.parts)
                outer.parts.push_back(alg.tensor(p));
            MorId ag = alg.tensor(outer);
            q->relate(
                v, arrow2_tgt(a, g), [&](MorId l) { return a.compose(ag, l); },
                [&](const SeqArrow2& r) { return act_left2(j, g, r); });
        }
    return q;
}

// Lazily built coends keyed by (x, z).
template <class Key, class Quot, class Build>
class CoendCache {
public:
    explicit CoendCache(Build build) : build_(std::move(build)) {}
    Quot& at(ObId x, const Key& z)
    {
        auto key = std::make_pair(x, z);
        auto it = cache_.find(key);
        if (it == cache_.end())
            it = cache_.emplace(key, build_(x, z)).first;
        return *it->second;
    }

private:
    Build build_;
    std::map<std::pair<ObId, Key>, std::unique_ptr<Quot>> cache_;
};

template <class Key, class Quot, class Build>
CoendCache<Key, Quot, Build> make_cache(Build b)
{
    return CoendCache<Key, Quot, Build>(std::move(b));
}

std::string splitting_name(const FinCat& a, const Profunctor& j, MonadKind kind,
                           const Splitting& s)
{
    return "(" + seq_name(a, s.mediator) + "," + a.mor_name(s.map) + "," +
           elem_label(kind, j, s.parts) + ")";
}

// The canonical map (y, l, r) |-> l . J_y(r) at (x, z).
std::optional<std::string> right_pseudo_failure(const LaxPromorphism& jl, SplitQuot& q, ObId x,
                                                const Seq& z)
{
    const Profunctor& j = *jl.prof;
    ObId bz = jl.right->tensor(z);
    return bijection_failure(
        q, fiber_list(j, x, bz),
        [&](const Seq&, MorId l, const SeqArrow& r) { return j.act_left(l, jl.apply(r)); },
        [&](ElemId e) { return j.full_name(e); });
}

}  // namespace

Verdict check_right_pseudo(const LaxPromorphism& jl, std::size_t guard)
{
    const Profunctor& j = *jl.prof;
    const FinCat& a = *jl.left->cat();
    const FinCat& b = *jl.right->cat();
    const MonadKind kind = jl.left->kind();
    const std::size_t n = jl.left->budget();
    std::size_t components = 0;
    for (std::size_t len = 0; len <= n; ++len)
        for (const Seq& z : all_sequences(b.num_objects(), len))
            for (ObId x = 0; x < a.num_objects(); ++x) {
                auto q = split_coend(*jl.left, j, x, z, guard);
                if (auto bad = right_pseudo_failure(jl, *q, x, z))
                    return Verdict::fail("right-pseudo", "J",
                                         "x=" + a.ob_name(x) + " z=" + seq_name(b, z) + ": " +
                                             *bad,
                                         scope_of(kind, n));
                ++components;
            }
    return Verdict::ok("right-pseudo", "J",
                       scope_of(kind, n) + " components=" + std::to_string(components));
}

const Splitting& RightColaxPromorphism::at(ElemId j, const Seq& z) const
{
    if (z.size() > left->budget())
        throw ArityBudgetExceeded("splitting against " + std::to_string(z.size()) + " objects");
    auto it = split.find({j, z});
    if (it == split.end())
        throw ValidationError("no splitting of " + prof->full_name(j));
    return it->second;
}

RightColaxPromorphism right_colax_of(const LaxPromorphism& jl, std::size_t guard)
{
    const Profunctor& j = *jl.prof;
    const FinCat& a = *jl.left->cat();
    const FinCat& b = *jl.right->cat();
    RightColaxPromorphism out{jl.prof, jl.left, jl.right, {}};
    for (std::size_t len = 0; len <= jl.left->budget(); ++len)
        for (const Seq& z : all_sequences(b.num_objects(), len))
            for (ObId x = 0; x < a.num_objects(); ++x) {
                auto q = split_coend(*jl.left, j, x, z, guard);
                if (auto bad = right_pseudo_failure(jl, *q, x, z))
                    throw ValidationError("not right pseudo at x=" + a.ob_name(x) +
                                          " z=" + seq_name(b, z) + ": " + *bad);
                for (std::size_t c = 0; c < q->classes(); ++c) {
                    auto [y, l, r] = q->rep(c);
                    out.split[{j.act_left(l, jl.apply(r)), z}] = Splitting{y, l, r};
                }
            }
    return out;
}

RightColaxPromorphism unit_right_colax(const AlgRef& alg)
{
    ProRef u = unit_prof(alg->cat());
    const FinCat& a = *alg->cat();
    RightColaxPromorphism out{u, alg, alg, {}};
    for (std::size_t len = 0; len <= alg->budget(); ++len)
        for (const Seq& z : all_sequences(a.num_objects(), len)) {
            SeqArrow parts{identity_perm(len), {}};
            for (ObId o : z)
                parts.parts.push_back(unit_elem(*u, a.id(o)));
            for (ElemId e : u->col(alg->tensor(z)))
                out.split[{e, z}] = Splitting{z, unit_mor(*u, e), parts};
        }
    return out;
}

Verdict validate_right_colax(const RightColaxPromorphism& jr, std::size_t guard)
{
    const Profunctor& j = *jr.prof;
    const ColaxAlgebra& la = *jr.left;
    const ColaxAlgebra& ra = *jr.right;
    const FinCat& a = *la.cat();
    const FinCat& b = *ra.cat();
    const MonadKind kind = la.kind();
    const std::size_t n = la.budget();
    Scan s{Verdict::ok("right-colax", "J", scope_of(kind, n))};
    if (la.kind() != ra.kind() || la.budget() != ra.budget() || !same_cat(j.left(), la.cat()) ||
        !same_cat(j.right(), ra.cat()))
        return s.fail("profunctor and algebras do not match"), s.v;

    auto coends = make_cache<Seq, SplitQuot>(
        [&](ObId x, const Seq& z) { return split_coend(la, j, x, z, guard); });
    auto coends2 = make_cache<Seq2, Split2Quot>(
        [&](ObId x, const Seq2& z) { return split_coend2(la, j, x, z, guard); });
    auto cls = [&](ObId x, const Seq& z, const Splitting& sp) {
        return coends.at(x, z).class_of(sp.mediator, sp.map, sp.parts);
    };

    for (std::size_t len = 0; len <= n; ++len)
        for (const Seq& z : all_sequences(b.num_objects(), len))
            for (ElemId e : j.col(ra.tensor(z))) {
                ObId x = j.a_of(e);
                auto it = jr.split.find({e, z});
                if (it == jr.split.end())
                    return s.fail("no splitting of " + j.full_name(e) + " at " + seq_name(b, z)),
                           s.v;
                const Splitting& sp = it->second;
                if (sp.mediator.size() != len || a.src(sp.map) != x ||
                    a.tgt(sp.map) != la.tensor(sp.mediator) ||
                    elem_src(j, sp.parts) != sp.mediator || elem_tgt(j, sp.parts) != z)
                    return s.fail("splitting of " + j.full_name(e) + " at " + seq_name(b, z) +
                                  " is ill-typed"),
                           s.v;
                if (len == 1 && j.act_left(sp.map, sp.parts.parts[0]) != e)
                    return s.fail("unary splitting of " + j.full_name(e) + " does not recompose"),
                           s.v;
                // Naturality on the left.
                for (MorId m : a.in(x))
                    if (!a.is_identity(m)) {
                        const Splitting& sp2 = jr.at(j.act_left(m, e), z);
                        Splitting moved{sp.mediator, a.compose(sp.map, m), sp.parts};
                        if (cls(a.src(m), z, sp2) != cls(a.src(m), z, moved))
                            return s.fail("splitting not natural on the left at " +
                                          j.full_name(e) + " along " + a.mor_name(m)),
                                   s.v;
                    }
                // Naturality on the right.
                for (const SeqArrow& h : generators(kind, b, z)) {
                    Seq z2 = arrow_tgt(b, h);
                    const Splitting& sp2 = jr.at(j.act_right(e, ra.tensor(h)), z2);
                    Splitting moved{sp.mediator, sp.map, act_right(j, sp.parts, h)};
                    if (cls(x, z2, sp2) != cls(x, z2, moved))
                        return s.fail("splitting not natural on the right at " + j.full_name(e) +
                                      " along " + arrow_label(kind, b, h)),
                               s.v;
                }
            }

    // Associativity: the two double splittings agree in the coend over T^2 A.
    for (const Seq2& z : double_sequences_in_budget(b.num_objects(), n)) {
        Seq flat_z = concat(z);
        Seq lengths = lengths_of(z);
        Seq outer_z;
        for (const Seq& blk : z)
            outer_z.push_back(ra.tensor(blk));
        for (ElemId e : j.col(ra.tensor(flat_z))) {
            ObId x = j.a_of(e);
            const Splitting& sp = jr.at(e, flat_z);
            Seq2 v = regroup(permute(sp.mediator, sp.parts.perm), lengths);
            SeqArrow2 r{identity_perm(z.size()), {}};
            std::size_t off = 0;
            for (std::size_t len : lengths) {
                SeqArrow blk{identity_perm(len), {}};
                for (std::size_t k = 0; k < len; ++k)
                    blk.parts.push_back(sp.parts.parts[off + k]);
                r.parts.push_back(std::move(blk));
                off += len;
            }
            MorId map1 = a.compose(la.assoc(v),
                                   a.compose(la.symmetry(sp.parts.perm, sp.mediator), sp.map));

            const Splitting& sp2 = jr.at(j.act_right(e, ra.assoc(z)), outer_z);
            const std::size_t k = z.size();
            Seq2 v2(k);
            Seq hs(k);
            SeqArrow2 r2{sp2.parts.perm, {}};
            for (std::size_t i = 0; i < k; ++i) {
                const Splitting& spi = jr.at(sp2.parts.parts[i], z[i]);
                v2[sp2.parts.perm[i]] = spi.mediator;
                hs[sp2.parts.perm[i]] = spi.map;
                r2.parts.push_back(spi.parts);
            }
            MorId map2 = a.compose(la.tensor_parts(hs), sp2.map);
            Split2Quot& q = coends2.at(x, z);
            auto c1 = q.class_of(v, map1, r);
            auto c2 = q.class_of(v2, map2, r2);
            if (!c1 || !c2 || *c1 != *c2)
                return s.fail("double splittings of " + j.full_name(e) + " at " +
                              seq2_name(b, z) + " disagree"),
                       s.v;
        }
    }
    return s.v;
}

Verdict is_right_pseudo(const RightColaxPromorphism& jr, std::size_t guard)
{
    const Profunctor& j = *jr.prof;
    const FinCat& a = *jr.left->cat();
    const FinCat& b = *jr.right->cat();
    const MonadKind kind = jr.left->kind();
    const std::size_t n = jr.left->budget();
    for (std::size_t len = 0; len <= n; ++len)
        for (const Seq& z : all_sequences(b.num_objects(), len)) {
            ObId bz = jr.right->tensor(z);
            for (ObId x = 0; x < a.num_objects(); ++x) {
                auto q = split_coend(*jr.left, j, x, z, guard);
                std::vector<bool> hit(q->classes(), false);
                for (ElemId e : fiber_list(j, x, bz)) {
                    const Splitting& sp = jr.at(e, z);
                    auto c = q->class_of(sp.mediator, sp.map, sp.parts);
                    if (!c)
                        return Verdict::fail("right-pseudo", "J",
                                             "splitting of " + j.full_name(e) + " is ill-typed",
                                             scope_of(kind, n));
                    if (hit[*c])
                        return Verdict::fail("right-pseudo", "J",
                                             "two elements split to one class at x=" +
                                                 a.ob_name(x) + " z=" + seq_name(b, z) +
                                                 ", e.g. " + j.full_name(e),
                                             scope_of(kind, n));
                    hit[*c] = true;
                }
                for (std::size_t c = 0; c < hit.size(); ++c)
                    if (!hit[c]) {
                        auto [y, l, r] = q->rep(c);
                        return Verdict::fail(
                            "right-pseudo", "J",
                            "class of " + splitting_name(a, j, kind, Splitting{y, l, r}) +
                                " at x=" + a.ob_name(x) + " z=" + seq_name(b, z) +
                                " is not a splitting",
                            scope_of(kind, n));
                    }
            }
        }
    return Verdict::ok("right-pseudo", "J", scope_of(kind, n));
}

RightColaxComposite rc_compose(const RightColaxPromorphism& jr, const RightColaxPromorphism& hr)
{
    if (!same_cat(jr.right->cat(), hr.left->cat()) || jr.right->kind() != hr.left->kind())
        throw BoundaryMismatch("right colax promorphisms are not composable");
    Composite comp = hcomp(jr.prof, hr.prof);
    const FinCat& c = *hr.right->cat();
    RightColaxPromorphism out{comp.result, jr.left, hr.right, {}};
    for (std::size_t len = 0; len <= hr.left->budget(); ++len)
        for (const Seq& z : all_sequences(c.num_objects(), len))
            for (ElemId e : comp.result->col(hr.right->tensor(z))) {
                auto [j, h] = comp.rep[e];
                const Splitting& sh = hr.at(h, z);
                const Splitting& sj = jr.at(jr.prof->act_right(j, sh.map), sh.mediator);
                SeqArrow parts = seq_compose(sh.parts, sj.parts, [&](ElemId hp, ElemId jp) {
                    return comp.of(jp, hp);
                });
                out.split[{e, z}] = Splitting{sj.mediator, sj.map, std::move(parts)};
            }
    return {std::move(comp), std::move(out)};
}

RightColaxRestriction restrict_right_colax(const RightColaxPromorphism& kr, const ColaxMorphism& g)
{
    const ColaxAlgebra& ba = *g.src;
    const ColaxAlgebra& ca = *g.tgt;
    if (!same_cat(g.functor.tgt, kr.right->cat()))
        throw BoundaryMismatch("restriction along a functor into another category");
    const FinCat& b = *ba.cat();
    const FinCat& c = *ca.cat();
    for (const auto& [z, m] : g.compositor)
        if (!c.is_identity(m))
            throw AxiomFailure("restriction needs a strict morphism; compositor at " +
                               seq_name(b, z) + " is " + c.mor_name(m));
    Restriction r = restrict(kr.prof, identity_functor(kr.left->cat()), g.functor);
    const Profunctor& k = *kr.prof;
    const Profunctor& rk = *r.prof;
    RightColaxPromorphism out{r.prof, kr.left, g.src, {}};
    for (std::size_t len = 0; len <= ba.budget(); ++len)
        for (const Seq& z : all_sequences(b.num_objects(), len)) {
            Seq gz = map_ob(g.functor, z);
            for (ElemId e : rk.col(ba.tensor(z))) {
                const Splitting& sk = kr.at(r.filler.comp[e], gz);
                SeqArrow parts{sk.parts.perm, {}};
                for (std::size_t i = 0; i < len; ++i) {
                    ElemId ki = sk.parts.parts[i];
                    parts.parts.push_back(rk.elem(k.a_of(ki), z[i], k.local(ki)));
                }
                out.split[{e, z}] = Splitting{sk.mediator, sk.map, std::move(parts)};
            }
        }
    return {std::move(r), std::move(out)};
}

Verdict tcell_check(const ProCell& phi, const RightColaxPromorphism& jr,
                    const RightColaxPromorphism& kr, const ColaxMorphism& f,
                    const ColaxMorphism& g, std::size_t guard)
{
    const ColaxAlgebra& ba = *jr.right;
    const ColaxAlgebra& ca = *kr.left;
    const MonadKind kind = ba.kind();
    const std::size_t n = ba.budget();
    const std::string scope = scope_of(kind, n);
    if (!same_prof(phi.src, jr.prof) || !same_prof(phi.tgt, kr.prof) ||
        !same_cat(f.functor.src, jr.left->cat()) || !same_cat(f.functor.tgt, ca.cat()) ||
        !same_cat(g.functor.src, ba.cat()) || !same_cat(g.functor.tgt, kr.right->cat()) ||
        !(phi.f == f.functor) || !(phi.g == g.functor))
        return Verdict::fail("tcell", "phi", "boundaries of the cell and structures differ", scope);
    const Profunctor& j = *jr.prof;
    const Profunctor& k = *kr.prof;
    const FinCat& b = *ba.cat();
    const FinCat& c = *ca.cat();
    auto coends = make_cache<Seq, SplitQuot>(
        [&](ObId x, const Seq& z) { return split_coend(ca, k, x, z, guard); });
    std::size_t checked = 0;
    for (std::size_t len = 0; len <= n; ++len)
        for (const Seq& z : all_sequences(b.num_objects(), len)) {
            Seq gz = map_ob(g.functor, z);
            for (ElemId e : j.col(ba.tensor(z))) {
                ObId fx = f.functor.ob[j.a_of(e)];
                const Splitting& top = kr.at(k.act_right(phi.comp[e], g.at(z)), gz);
                const Splitting& sj = jr.at(e, z);
                Splitting left{map_ob(f.functor, sj.mediator),
                               c.compose(f.at(sj.mediator), f.functor.mor[sj.map]),
                               map_parts(sj.parts, [&](ElemId p) { return phi.comp[p]; })};
                SplitQuot& q = coends.at(fx, gz);
                auto c1 = q.class_of(top.mediator, top.map, top.parts);
                auto c2 = q.class_of(left.mediator, left.map, left.parts);
                if (!c1 || !c2 || *c1 != *c2)
                    return Verdict::fail("tcell", "phi",
                                         "x=" + j.left()->ob_name(j.a_of(e)) + " z=" +
                                             seq_name(b, z) + " j=" + j.full_name(e),
                                         scope);
                ++checked;
            }
        }
    return Verdict::ok("tcell", "phi", scope + " elements=" + std::to_string(checked));
}

LeftHomLax lefthom_lax_structure(const RightColaxPromorphism& jr, const LaxPromorphism& kl,
                                 std::size_t guard)
{
    if (!same_cat(jr.left->cat(), kl.left->cat()))
        throw BoundaryMismatch("left hom needs promorphisms from one algebra");
    HomProfunctor hom = left_hom(jr.prof, kl.prof, guard);
    const Profunctor& j = *jr.prof;
    const Profunctor& k = *kl.prof;
    const Profunctor& h = *hom.hom;
    const ColaxAlgebra& ba = *jr.right;
    const ColaxAlgebra& ca = *kl.right;
    const MonadKind kind = ba.kind();
    LaxPromorphism out{hom.hom, jr.right, kl.right, {}};
    Verdict v = Verdict::ok("lefthom-lax", "J|>K", scope_of(kind, ba.budget()));
    for (std::size_t len = 0; len <= ba.budget(); ++len)
        for (const Seq& t : all_sequences(h.size(), len)) {
            Seq y = a_seq(h, t), z = b_seq(h, t);
            ObId by = ba.tensor(y), cz = ca.tensor(z);
            std::vector<ElemId> fam(j.col(by).size());
            for (ElemId e : j.col(by)) {
                const Splitting& sp = jr.at(e, y);
                SeqArrow kp{sp.parts.perm, {}};
                for (std::size_t i = 0; i < len; ++i)
                    kp.parts.push_back(hom.apply(t[i], sp.parts.parts[i]));
                fam[j.col_pos(e)] = k.act_left(sp.map, kl.apply(kp));
            }
            try {
                out.structure[t] = hom.lookup(by, cz, fam);
            } catch (const ValidationError& err) {
                if (v.pass)
                    v = Verdict::fail(v.check, v.subject,
                                      "family at " + elem_seq_name(h, t) + " is not natural: " +
                                          err.what(),
                                      v.scope);
            }
        }
    if (v.pass)
        v.absorb(validate_lax(out));
    return {std::move(hom), std::move(out), std::move(v)};
}

}  // namespace procat
