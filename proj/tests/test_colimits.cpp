#include "doctest.h"

#include "procat/colimits.hpp"
#include "procat/corpus.hpp"
#include "procat/error.hpp"

using namespace procat;

namespace {

const auto keep = [](MorId, ObId, std::size_t i) { return i; };
const auto keep_r = [](ObId, std::size_t i, MorId) { return i; };

ProRef singleton(const CatRef& one) { return make_prof(Profunctor(one, one, {{{"x"}}}, keep, keep_r)); }

// The unique-or-first cell J => U_M along (d, l).
ProCell first_cell(const ProRef& j, const FinFunctor& d, const FinFunctor& l)
{
    auto cells = all_cells(j, unit_prof(d.tgt), d, l, 100000);
    REQUIRE(!cells.empty());
    return cells.front();
}

// Oracle for a comma category of functors j: A -> B <- f: C: objects (a, u: ja -> fc, c).
std::pair<std::size_t, std::size_t> functor_comma_size(const FinFunctor& j, const FinFunctor& f)
{
    const FinCat& A = *j.src;
    const FinCat& B = *j.tgt;
    const FinCat& C = *f.src;
    struct Ob {
        ObId a;
        MorId u;
        ObId c;
    };
    std::vector<Ob> obs;
    for (ObId a = 0; a < A.num_objects(); ++a)
        for (ObId c = 0; c < C.num_objects(); ++c)
            for (MorId u : B.hom(j.ob[a], f.ob[c]))
                obs.push_back({a, u, c});
    std::size_t mors = 0;
    for (const Ob& p : obs)
        for (const Ob& q : obs)
            for (MorId x : A.hom(p.a, q.a))
                for (MorId y : C.hom(p.c, q.c))
                    if (B.compose(f.mor[y], p.u) == B.compose(q.u, j.mor[x]))
                        ++mors;
    return {obs.size(), mors};
}

// The unit followed by a transformation l => l': x |-> t_b o eta(x).
ProCell postcompose(const NatTransf& t, const ProCell& unit)
{
    const FinCat& M = *t.to.tgt;
    const Profunctor& U = *unit.tgt;
    ProCell out{unit.src, unit.tgt, unit.f, t.to, unit.comp};
    for (ElemId x = 0; x < out.comp.size(); ++x)
        out.comp[x] = unit_elem(U, M.compose(t.comp[unit.src->b_of(x)], unit_mor(U, unit.comp[x])));
    return out;
}

}  // namespace

TEST_CASE("colimit search examples")
{
    CatRef arrow = walking_arrow();
    FinFunctor id = identity_functor(arrow);
    auto unit = colim_search(unit_prof(arrow), id);
    REQUIRE(unit);
    CHECK(unit->apex == id);
    CHECK(unit->unit == identity_cell(unit_prof(arrow)));

    CatRef one = terminal_cat();
    FinFunctor bot = constant_functor(one, arrow, arrow->ob("bot"));
    FinFunctor top = constant_functor(one, arrow, arrow->ob("top"));
    auto point = colim_search(singleton(one), bot);
    REQUIRE(point);
    CHECK(point->apex == bot);
    CHECK(verify_colimit(*point).pass);

    // Empty weight: the colimit is an initial object.
    CatRef two = discrete_cat({"p", "q"});
    FinFunctor dp = constant_functor(arrow, two, 0);
    CHECK_FALSE(colim_search(empty_prof(arrow, one), dp));
    auto initial = colim_search(empty_prof(one, one), constant_functor(one, arrow, 1));
    REQUIRE(initial);
    CHECK(initial->apex == bot);

    // A non-universal apex fails with a fiber witness, on both routes.
    ColimitCandidate wrong{singleton(one), bot, top, first_cell(singleton(one), bot, top)};
    Verdict v = verify_colimit(wrong);
    CHECK_FALSE(v.pass);
    CHECK(v.witness.find("fiber") != std::string::npos);
    CHECK_FALSE(factorization_probe(wrong).pass);

    // The good unit postcomposed with the non-invertible bot => top.
    NatTransf up{bot, top, {arrow->mor("u", 0, 1)}};
    ColimitCandidate pushed{singleton(one), bot, top, postcompose(up, point->unit)};
    CHECK_FALSE(verify_colimit(pushed).pass);

    CHECK_THROWS_AS(colim_search(singleton(one), bot, SearchLimits{0, 100}),
                    SearchBudgetExceeded);
}

TEST_CASE("flat criterion and factorisation probe agree")
{
    Corpus corpus(701);
    int good = 0, bad = 0;
    for (int trial = 0; trial < 40; ++trial) {
        CatRef a = corpus.category(2, 2), b = corpus.category(2, 2), m = corpus.category(3, 2);
        ProRef j = corpus.profunctor(a, b, 2);
        FinFunctor d = corpus.functor(a, m);
        FinFunctor l = corpus.functor(b, m);
        auto eta = corpus.cell(j, unit_prof(m), d, l);
        if (!eta)
            continue;
        ColimitCandidate c{j, d, l, *eta};
        Verdict f = flat_criterion(c);
        Verdict p = factorization_probe(c);
        CHECK(f.pass == p.pass);
        (f.pass ? good : bad) += 1;
    }
    CHECK(good + bad >= 20);
    CHECK(bad > 0);
}

TEST_CASE("colimits are unique up to invertible vertical cells")
{
    Corpus corpus(702);
    int checked = 0;
    for (int trial = 0; trial < 30; ++trial) {
        CatRef a = corpus.category(2, 2), b = corpus.category(2, 2), m = corpus.category(3, 3);
        ProRef j = corpus.profunctor(a, b, 2);
        FinFunctor d = corpus.functor(a, m);
        auto all = all_colimits(j, d);
        for (const auto& c : all) {
            for (const auto& c2 : all) {
                bool related = false;
                for (const NatTransf& t : all_nat(c.apex, c2.apex)) {
                    bool invertible = true;
                    for (MorId x : t.comp) {
                        bool has_inverse = false;
                        for (MorId y : m->hom(m->tgt(x), m->src(x)))
                            has_inverse |= m->is_identity(m->compose(y, x)) &&
                                           m->is_identity(m->compose(x, y));
                        invertible &= has_inverse;
                    }
                    if (invertible && postcompose(t, c.unit) == c2.unit)
                        related = true;
                }
                CHECK(related);
                ++checked;
            }
        }
        if (!all.empty()) {
            auto first = colim_search(j, d);
            REQUIRE(first);
            CHECK(first->apex == all.front().apex);
            CHECK(first->unit == all.front().unit);
        }
    }
    CHECK(checked > 10);
}

TEST_CASE("kan extensions")
{
    Corpus corpus(703);
    for (int trial = 0; trial < 10; ++trial) {
        CatRef a = corpus.category(2, 2);
        CatRef m = corpus.preorder(3);
        FinFunctor d = corpus.functor(a, m);
        auto k = kan_extension(identity_functor(a), d);
        REQUIRE(k);
        CHECK(k->colimit.apex == d);
        CHECK(k->unit == identity_nat(d));
        CHECK(k->ordinary.pass);
    }
    CatRef one = terminal_cat();
    CatRef chain = preorder_cat({"0", "1", "2"}, {{true, true, true}, {false, true, true},
                                                  {false, false, true}});
    FinFunctor d = constant_functor(one, chain, 1);
    auto k = kan_extension(identity_functor(one), d);
    REQUIRE(k);
    CHECK(k->colimit.apex == d);

    // Along the inclusion of the bottom of an arrow, extension into a chain.
    CatRef arrow = walking_arrow();
    FinFunctor j = constant_functor(one, arrow, 0);
    auto lan = kan_extension(j, d);
    REQUIRE(lan);
    CHECK(lan->colimit.apex.ob == std::vector<ObId>{1, 1});
    CHECK(lan->ordinary.pass);
}

TEST_CASE("double comma objects")
{
    CatRef one = terminal_cat();
    ProRef two = make_prof(Profunctor(one, one, {{{"j1", "j2"}}}, keep, keep_r));
    DoubleComma dc = double_comma(two, identity_functor(one));
    CHECK(dc.comma->num_objects() == 2);
    CHECK(dc.comma->num_morphisms() == 2);
    CHECK(dc.comma->ob_name(0) == "(*,j1,*)");
    CHECK(validate_cat(*dc.comma).pass);
    CHECK(validate_cell(dc.pi).pass);
    CHECK(verify_double_comma(dc, probe_sources(3)).pass);

    DoubleComma none = double_comma(empty_prof(one, one), identity_functor(one));
    CHECK(none.comma->num_objects() == 0);

    Corpus corpus(704);
    for (int trial = 0; trial < 12; ++trial) {
        CatRef a = corpus.category(2, 2), b = corpus.category(3, 2), c = corpus.category(2, 2);
        ProRef j = corpus.profunctor(a, b, 2);
        FinFunctor f = corpus.functor(c, b);
        DoubleComma d = double_comma(j, f);
        CHECK(validate_cat(*d.comma).pass);
        CHECK(validate_functor(d.proj_a).pass);
        CHECK(validate_functor(d.proj_c).pass);
        CHECK(validate_cell(d.pi).pass);
        CHECK(verify_double_comma(d, probe_sources(3)).pass);

        // Companion weight: the comma of two functors.
        FinFunctor jf = corpus.functor(a, b);
        DoubleComma dj = double_comma(companion(jf).companion, f);
        auto [obs, mors] = functor_comma_size(jf, f);
        CHECK(dj.comma->num_objects() == obs);
        CHECK(dj.comma->num_morphisms() == mors);
    }
    CHECK_THROWS_AS(double_comma(two, identity_functor(walking_arrow())), BoundaryMismatch);
}

TEST_CASE("pointwise colimits and strong commas")
{
    CatRef one = terminal_cat();
    CatRef arrow = walking_arrow();
    FinFunctor bot = constant_functor(one, arrow, 0);
    auto point = colim_search(singleton(one), bot);
    REQUIRE(point);
    CHECK(check_pointwise(*point, {identity_functor(one)}).pass);
    CHECK(check_pointwise(*point, {}).pass);

    // f = id: the candidate is the original one up to the comma's object names.
    DoubleComma dc = double_comma(point->weight, identity_functor(one));
    ColimitCandidate pc = pointwise_candidate(*point, dc);
    CHECK(verify_colimit(pc).pass == verify_colimit(*point).pass);

    ProRef two = make_prof(Profunctor(one, one, {{{"j1", "j2"}}}, keep, keep_r));
    DoubleComma d2 = double_comma(two, identity_functor(one));
    ProRef single = singleton(one);
    CHECK(check_strong_comma(d2, default_strong_probes(d2, {single}, {arrow})).pass);
    CHECK(check_strong_comma(d2, default_strong_probes(d2, {empty_prof(one, arrow)}, {arrow}))
              .pass);

    Corpus corpus(705);
    int verified = 0;
    for (int trial = 0; trial < 12; ++trial) {
        CatRef a = corpus.category(2, 2), b = corpus.category(2, 2), m = corpus.category(3, 2);
        ProRef j = corpus.profunctor(a, b, 2);
        FinFunctor d = corpus.functor(a, m);
        if (auto c = colim_search(j, d)) {
            CHECK(check_pointwise(*c, probe_functors(b, 4)).pass);
            ++verified;
        }
        CatRef cc = corpus.category(2, 2);
        DoubleComma comma = double_comma(j, corpus.functor(cc, b));
        ProRef h = corpus.profunctor(cc, corpus.category(2, 2), 2);
        CHECK(check_strong_comma(comma, default_strong_probes(comma, {h}, {arrow, m}, 6)).pass);
    }
    CHECK(verified > 3);
}

TEST_CASE("fubini and precomposition")
{
    CatRef arrow = walking_arrow();
    ProRef u = unit_prof(arrow);
    FinFunctor id = identity_functor(arrow);
    auto c = colim_search(u, id);
    REQUIRE(c);
    // Unit weight on both sides: the pasting is the unitor's composite.
    Verdict fub = fubini_check(*c, *c);
    CHECK(fub.pass);
    CHECK(fub.scope == "eta=pass zeta=pass pasted=pass");
    CHECK(precompose_invariance_check(identity_cell(u), *c).pass);

    Corpus corpus(706);
    int pastings = 0;
    for (int trial = 0; trial < 15; ++trial) {
        CatRef a = corpus.category(2, 2), b = corpus.category(2, 2), e = corpus.category(2, 2),
               m = corpus.preorder(3);
        ProRef j = corpus.profunctor(a, b, 2), h = corpus.profunctor(b, e, 2);
        FinFunctor d = corpus.functor(a, m);
        auto eta = colim_search(j, d);
        if (!eta)
            continue;
        auto zeta = colim_search(h, eta->apex);
        if (!zeta)
            continue;
        Verdict v = fubini_check(*eta, *zeta);
        CHECK(v.pass);
        CHECK(v.scope == "eta=pass zeta=pass pasted=pass");
        ++pastings;

        // Precompose with the companion's unit cell, which is right invertible.
        CompanionPair cp = companion(identity_functor(a));
        CHECK(precompose_invariance_check(identity_cell(j), *eta).pass);
        (void)cp;
    }
    CHECK(pastings > 2);
}
