#include "procat/error.hpp"
#include "procat/monalg.hpp"
#include "seqcore.hpp"

namespace procat {

using namespace detail;

namespace {

// a: T_n M -> M on one slice.
FinFunctor tensor_functor(const ColaxAlgebra& alg, const SeqCat& slice)
{
    const FinCat& t = *slice.cat();
    FinFunctor f{slice.cat(), alg.cat(), std::vector<ObId>(t.num_objects()),
                 std::vector<MorId>(t.num_morphisms())};
    for (ObId x = 0; x < t.num_objects(); ++x)
        f.ob[x] = alg.tensor(slice.seq(x));
    for (MorId m = 0; m < t.num_morphisms(); ++m)
        f.mor[m] = alg.tensor(slice.arrow(m));
    return f;
}

Seq map_ob(const FinFunctor& f, const Seq& x)
{
    Seq out;
    for (ObId o : x)
        out.push_back(f.ob[o]);
    return out;
}

MorId unit_arrow(const ColimitCandidate& c, ElemId e) { return unit_mor(*c.unit.tgt, c.unit.comp[e]); }

Verdict invertibility_verdict(const char* check, const std::string& subject, const FinCat& c,
                              const std::vector<MorId>& comp, const std::string& scope)
{
    for (MorId m : comp)
        if (!is_iso(c, m))
            return Verdict::fail(check, subject, "component " + c.mor_name(m) + " is not invertible",
                                 scope);
    return Verdict::ok(check, subject, scope);
}

}  // namespace

MorId factor_cocone(const ColimitCandidate& c, ObId b, ObId target,
                    const std::function<MorId(ElemId)>& cocone)
{
    const FinCat& m = *c.diagram.tgt;
    const Profunctor& j = *c.weight;
    std::optional<MorId> found;
    for (MorId f : m.hom(c.apex.ob[b], target)) {
        bool ok = true;
        for (ElemId e : j.col(b))
            if (m.compose(f, unit_arrow(c, e)) != cocone(e)) {
                ok = false;
                break;
            }
        if (!ok)
            continue;
        if (found)
            throw FactorizationFailure("cocone at " + j.right()->ob_name(b) +
                                       " factors more than once");
        found = f;
    }
    if (!found)
        throw FactorizationFailure("cocone at " + j.right()->ob_name(b) + " into " +
                                   m.ob_name(target) + " does not factor");
    return *found;
}

TComparison canonical_comparison(const ColimitCandidate& base, const AlgRef& target,
                                 std::size_t arity, const SearchLimits& lim)
{
    check_candidate_shape(base);
    if (!same_cat(base.diagram.tgt, target->cat()))
        throw BoundaryMismatch("comparison: colimit does not land in the algebra");
    const MonadKind kind = target->kind();
    SeqCat sa = arity_slice(kind, base.weight->left(), arity);
    SeqCat sb = arity_slice(kind, base.weight->right(), arity);
    SeqCat sm = arity_slice(kind, target->cat(), arity);
    SeqProf tj(base.weight, sa, sb);
    FinFunctor e = compose(tensor_functor(*target, sm), seq_functor(base.diagram, sa, sm));
    auto found = pointwise_colim_search(tj.prof(), e, lim);
    if (!found)
        throw MissingTColimit("no colimit of the tensored diagram at arity " +
                              std::to_string(arity));
    const FinCat& m = *target->cat();
    const FinCat& tb = *sb.cat();
    std::vector<MorId> comp(tb.num_objects());
    for (ObId z = 0; z < tb.num_objects(); ++z) {
        ObId goal = target->tensor(map_ob(base.apex, sb.seq(z)));
        comp[z] = factor_cocone(*found, z, goal, [&](ElemId r) {
            return target->tensor(map_parts(tj.arrow(r), [&](ElemId je) {
                return unit_arrow(base, je);
            }));
        });
    }
    Verdict inv = invertibility_verdict("t-comparison", kind_name(kind), m, comp,
                                        "arity=" + std::to_string(arity));
    return TComparison{arity, sa, sb, std::move(*found), std::move(comp), std::move(inv)};
}

TransformationComparison transformation_comparison(const ProCell& xi,
                                                   const ColimitCandidate& zeta,
                                                   const ColimitCandidate& theta)
{
    check_candidate_shape(zeta);
    check_candidate_shape(theta);
    if (!same_prof(xi.tgt, zeta.weight) || !same_prof(xi.src, theta.weight) ||
        !(theta.diagram == compose(zeta.diagram, xi.f)))
        throw BoundaryMismatch("transformation comparison: colimits do not fit the cell");
    const FinCat& m = *zeta.diagram.tgt;
    const FinCat& fb = *xi.src->right();
    std::vector<MorId> comp(fb.num_objects());
    for (ObId w = 0; w < fb.num_objects(); ++w)
        comp[w] = factor_cocone(theta, w, zeta.apex.ob[xi.g.ob[w]],
                                [&](ElemId r) { return unit_arrow(zeta, xi.comp[r]); });
    Verdict inv = invertibility_verdict("xi-comparison", "xi", m, comp, "");
    Verdict right = is_right_invertible(xi);
    Verdict v = Verdict::ok("xi-comparison-implication", "xi");
    if (right.pass && !inv.pass)
        v = Verdict::fail("xi-comparison-implication", "xi",
                          "right invertible cell with a non-invertible comparison: " + inv.witness);
    return {std::move(comp), std::move(inv), std::move(right), std::move(v)};
}

Lift lift_colimit(const RightColaxPromorphism& j, const ColaxMorphism& d,
                  const ColimitCandidate& base, const SearchLimits& lim)
{
    if (!same_prof(base.weight, j.prof) || !(base.diagram == d.functor))
        throw BoundaryMismatch("lift: colimit does not fit the promorphism and morphism");
    if (!same_cat(j.left->cat(), d.src->cat()) || j.left->kind() != d.src->kind())
        throw BoundaryMismatch("lift: promorphism and morphism start at different algebras");
    Verdict colim = verify_colimit(base, lim);
    if (!colim.pass)
        throw ValidationError("lift: base is not a colimit: " + colim.witness);
    const ColaxAlgebra& ba = *j.right;
    const ColaxAlgebra& ma = *d.tgt;
    const FinCat& b = *ba.cat();
    const FinCat& m = *ma.cat();
    const FinFunctor& l = base.apex;

    ColaxMorphism lm{j.right, d.tgt, l, {}};
    for (std::size_t len = 0; len <= ba.budget(); ++len)
        for (const Seq& z : all_sequences(b.num_objects(), len)) {
            ObId bz = ba.tensor(z);
            lm.compositor[z] = factor_cocone(base, bz, ma.tensor(map_ob(l, z)), [&](ElemId e) {
                const Splitting& sp = j.at(e, z);
                MorId outer = ma.tensor(map_parts(sp.parts, [&](ElemId p) {
                    return unit_arrow(base, p);
                }));
                return m.compose(outer, m.compose(d.at(sp.mediator), d.functor.mor[sp.map]));
            });
        }

    Verdict axioms = validate_morphism(lm);
    RightColaxPromorphism unit = unit_right_colax(d.tgt);
    unit.prof = base.unit.tgt;
    Verdict tcell = tcell_check(base.unit, j, unit, d, lm, lim.size_guard);

    std::vector<TComparison> comparisons;
    bool all_invertible = true;
    for (std::size_t n = 0; n <= ba.budget(); ++n) {
        comparisons.push_back(canonical_comparison(base, d.tgt, n, lim));
        all_invertible = all_invertible && comparisons.back().invertible.pass;
    }
    const std::string scope = "N=" + std::to_string(ba.budget()) + " kind=" + kind_name(ba.kind());
    Verdict inv = Verdict::ok("lift-invertibility", "l", scope + " hypotheses=absent");
    if (is_pseudo(d) && is_right_pseudo(j, lim.size_guard).pass) {
        bool pseudo = is_pseudo(lm);
        inv = Verdict::ok("lift-invertibility", "l", scope);
        if (pseudo != all_invertible)
            inv = Verdict::fail("lift-invertibility", "l",
                                std::string("lift ") + (pseudo ? "is" : "is not") +
                                    " pseudo while the comparisons are " +
                                    (all_invertible ? "" : "not ") + "invertible",
                                scope);
    }
    Verdict verdict = Verdict::ok("lift", "l", scope);
    verdict.absorb(axioms);
    verdict.absorb(tcell);
    verdict.absorb(inv);
    return Lift{std::move(lm), std::move(comparisons), std::move(axioms), std::move(tcell),
                std::move(inv), std::move(verdict)};
}

Verdict coend_route_check(const Lift& lift, const RightColaxPromorphism& j,
                          const ColaxMorphism& d, const ColimitCandidate& base)
{
    const ColaxAlgebra& ba = *j.right;
    const ColaxAlgebra& ma = *d.tgt;
    const FinCat& b = *ba.cat();
    const FinCat& m = *ma.cat();
    const Profunctor& jp = *j.prof;
    Preorder order = preorder_of(m);
    const std::string scope = "N=" + std::to_string(ba.budget());
    std::size_t steps = 0;
    for (std::size_t len = 0; len <= ba.budget(); ++len)
        for (const Seq& z : all_sequences(b.num_objects(), len)) {
            ObId bz = ba.tensor(z);
            // v0: the colimit formula; v1: through the splitting map; v2: through
            // the compositor of d; v3: through the symmetry; v4: the tensor of l.
            std::vector<std::size_t> s0, s1, s2, s3;
            for (ElemId e : jp.col(bz)) {
                const Splitting& sp = j.at(e, z);
                Seq dy = map_ob(d.functor, sp.mediator);
                s0.push_back(d.functor.ob[jp.a_of(e)]);
                s1.push_back(d.functor.ob[j.left->tensor(sp.mediator)]);
                s2.push_back(ma.tensor(dy));
                s3.push_back(ma.tensor(permute(dy, sp.parts.perm)));
            }
            std::vector<std::size_t> v{sup(order, s0), sup(order, s1), sup(order, s2),
                                       sup(order, s3), ma.tensor(map_ob(base.apex, z))};
            MorId lz = lift.l.at(z);
            if (v.front() != m.src(lz) || v.back() != m.tgt(lz))
                return Verdict::fail("coend-route", "l",
                                     "endpoints at " + seq_name(b, z) + " differ from the lift",
                                     scope);
            for (std::size_t k = 0; k + 1 < v.size(); ++k) {
                if (!order.leq(v[k], v[k + 1]))
                    return Verdict::fail("coend-route", "l",
                                         "step " + std::to_string(k) + " at " + seq_name(b, z) +
                                             " is not an inequality",
                                         scope);
                ++steps;
            }
        }
    return Verdict::ok("coend-route", "l", scope + " steps=" + std::to_string(steps));
}

CommaLift comma_lift(const LaxPromorphism& j, const ColaxMorphism& f, std::size_t guard)
{
    if (!same_cat(j.right->cat(), f.tgt->cat()))
        throw BoundaryMismatch("comma lift: f does not land in the target of J");
    const ColaxAlgebra& aa = *j.left;
    const ColaxAlgebra& ca = *f.src;
    const ColaxAlgebra& ba = *f.tgt;
    if (aa.kind() != ca.kind() || aa.budget() != ca.budget())
        throw BoundaryMismatch("comma lift: algebras differ in kind or budget");
    const MonadKind kind = aa.kind();
    const std::size_t n = aa.budget();
    const Profunctor& jp = *j.prof;
    const FinCat& a = *aa.cat();
    const FinCat& b = *ba.cat();
    const FinCat& c = *ca.cat();
    DoubleComma dc = double_comma(j.prof, f.functor);
    const FinCat& k = *dc.comma;

    std::map<std::tuple<ObId, ElemId, ObId>, ObId> triple_index;
    for (ObId o = 0; o < k.num_objects(); ++o)
        triple_index.emplace(dc.triple[o], o);
    auto pair_mor = [&](ObId s, ObId t, MorId u, MorId v) {
        for (MorId m : k.hom(s, t))
            if (dc.proj_a.mor[m] == u && dc.proj_c.mor[m] == v)
                return m;
        throw ValidationError("comma lift: (" + a.mor_name(u) + "," + c.mor_name(v) +
                              ") is not a morphism of the comma category");
    };

    ColaxAlgebra::Tables t;
    for (std::size_t len = 0; len <= n; ++len)
        for (const Seq& x : all_sequences(k.num_objects(), len)) {
            Seq as, cs, xs;
            for (ObId o : x) {
                auto [ao, e, co] = dc.triple[o];
                as.push_back(ao);
                xs.push_back(e);
                cs.push_back(co);
            }
            MorId back = inverse_mor(b, f.at(cs));
            ElemId e = jp.act_right(j.apply(xs), back);
            t.tensor_ob[x] = triple_index.at({aa.tensor(as), e, ca.tensor(cs)});
        }
    for (std::size_t len = 0; len <= n; ++len)
        for (const Seq& x : all_sequences(k.num_objects(), len))
            for (const SeqArrow& g : out_arrows(MonadKind::M, k, x)) {
                Seq us, vs;
                for (MorId m : g.parts) {
                    us.push_back(dc.proj_a.mor[m]);
                    vs.push_back(dc.proj_c.mor[m]);
                }
                t.tensor_mor[g.parts] = pair_mor(t.tensor_ob.at(x), t.tensor_ob.at(arrow_tgt(k, g)),
                                                 aa.tensor_parts(us), ca.tensor_parts(vs));
            }
    for (const Seq2& x : double_sequences_in_budget(k.num_objects(), n)) {
        Seq2 ax, cx;
        Seq outer;
        for (const Seq& blk : x) {
            ax.push_back(map_ob(dc.proj_a, blk));
            cx.push_back(map_ob(dc.proj_c, blk));
            outer.push_back(t.tensor_ob.at(blk));
        }
        t.assoc[x] = pair_mor(t.tensor_ob.at(concat(x)), t.tensor_ob.at(outer), aa.assoc(ax),
                              ca.assoc(cx));
    }
    if (kind == MonadKind::S)
        for (std::size_t len = 0; len <= n; ++len)
            for (const Seq& x : all_sequences(k.num_objects(), len))
                for (const Perm& p : all_perms(len))
                    t.symmetry[{p, x}] =
                        pair_mor(t.tensor_ob.at(x), t.tensor_ob.at(permute(x, p)),
                                 aa.symmetry(p, map_ob(dc.proj_a, x)),
                                 ca.symmetry(p, map_ob(dc.proj_c, x)));

    AlgRef alg = std::make_shared<const ColaxAlgebra>(kind, dc.comma, ArityBudget(n), std::move(t));
    ColaxMorphism pa = strict_morphism(dc.proj_a, alg, j.left);
    ColaxMorphism pc = strict_morphism(dc.proj_c, alg, f.src);
    const std::string scope = "N=" + std::to_string(n) + " kind=" + kind_name(kind);
    Verdict v = Verdict::ok("comma-lift", "J/f", scope);
    v.absorb(validate_algebra(*alg));
    v.absorb(validate_morphism(pa));
    v.absorb(validate_morphism(pc));
    if (check_right_pseudo(j, guard).pass) {
        RightColaxPromorphism unit = unit_right_colax(alg);
        unit.prof = dc.pi.src;
        v.absorb(tcell_check(dc.pi, unit, right_colax_of(j, guard), pa, compose(f, pc), guard));
    } else {
        v.scope += " tcell=skipped";
    }
    if (is_pseudo(aa) && is_pseudo(ca) && !is_pseudo(*alg))
        v.absorb(Verdict::fail("comma-lift", "J/f", "pseudo inputs give a non-pseudo comma", scope));
    return {std::move(dc), std::move(alg), std::move(pa), std::move(pc), std::move(v)};
}

}  // namespace procat
