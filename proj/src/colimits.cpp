#include "procat/colimits.hpp"

#include "procat/error.hpp"
#include "procat/setkit.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>

namespace procat {

namespace {

MorId mor_of(const Profunctor& u, ElemId e) { return unit_mor(u, e); }

std::string count_text(std::size_t n) { return std::to_string(n); }

// Cell comps of every psi: H => U_M along (l, e), pasted with the unit.
// Returns a witness when some cell J (.) H => U_M along (d, e) does not factor
// exactly once.
std::optional<std::string> probe_one(const ColimitCandidate& c, const ProRef& h,
                                     const FinFunctor& e, std::size_t guard)
{
    const FinCat& M = *c.diagram.tgt;
    const ProRef& um = c.unit.tgt;
    Composite jh = hcomp(c.weight, h);
    std::vector<ProCell> phis = all_cells(jh.result, um, c.diagram, e, guard);
    std::map<std::vector<ElemId>, std::size_t> hits;
    for (const ProCell& phi : phis)
        hits.emplace(phi.comp, 0);
    std::optional<std::string> stray;
    for_each_cell(h, um, c.apex, e, guard, [&](const ProCell& psi) {
        std::vector<ElemId> comp(jh.result->size());
        for (ElemId z = 0; z < comp.size(); ++z) {
            auto [x, y] = jh.rep[z];
            comp[z] = unit_elem(*um, M.compose(mor_of(*um, psi.comp[y]),
                                               mor_of(*um, c.unit.comp[x])));
        }
        auto it = hits.find(comp);
        if (it == hits.end()) {
            stray = "pasted cell is not natural";
            return false;
        }
        ++it->second;
        return true;
    });
    if (stray)
        return stray;
    for (std::size_t i = 0; i < phis.size(); ++i) {
        std::size_t n = hits[phis[i].comp];
        if (n != 1)
            return "cell #" + count_text(i) + " has " + count_text(n) + " factorisations";
    }
    return std::nullopt;
}

CatRef one_object(const std::string& label, bool idempotent)
{
    return make_cat(FinCat({"*"}, {{"id", "*", "*"}, {label, "*", "*"}}, {0},
                           [idempotent](std::size_t g, std::size_t f) -> std::size_t {
                               if (idempotent)
                                   return (g == 1 || f == 1) ? 1 : 0;
                               return (g == 1) != (f == 1) ? 1 : 0;
                           }));
}

// Terminal profunctor X -|-> Y: one element per fiber.
ProRef terminal_prof(const CatRef& x, const CatRef& y)
{
    Profunctor::Fibers fibers(x->num_objects(),
                              std::vector<std::vector<std::string>>(y->num_objects(), {"*"}));
    return make_prof(Profunctor(
        x, y, fibers, [](MorId, ObId, std::size_t) { return std::size_t{0}; },
        [](ObId, std::size_t, MorId) { return std::size_t{0}; }));
}

std::vector<std::size_t> functor_key(const FinFunctor& f)
{
    std::vector<std::size_t> key(f.ob);
    key.insert(key.end(), f.mor.begin(), f.mor.end());
    return key;
}

}  // namespace

void check_candidate_shape(const ColimitCandidate& c)
{
    if (!same_cat(c.diagram.src, c.weight->left()) || !same_cat(c.apex.src, c.weight->right()) ||
        !same_cat(c.diagram.tgt, c.apex.tgt))
        throw BoundaryMismatch("colimit candidate: functors do not fit the weight");
    if (!same_prof(c.unit.src, c.weight) || !same_cat(c.unit.tgt->left(), c.diagram.tgt) ||
        !same_cat(c.unit.tgt->right(), c.diagram.tgt) || !(c.unit.f == c.diagram) ||
        !(c.unit.g == c.apex))
        throw BoundaryMismatch("colimit candidate: unit has the wrong boundary");
    if (!(*c.unit.tgt == *unit_prof(c.diagram.tgt)))
        throw BoundaryMismatch("colimit candidate: unit does not land in the unit profunctor");
}

ProCell colimit_comparison(const ColimitCandidate& c, std::size_t guard)
{
    check_candidate_shape(c);
    SideCell s = lambda_cell(c.unit);
    ProCell lam = vcompose(right_unitor(s.tgt), s.cell);
    HomProfunctor hom = left_hom(c.weight, s.tgt.first, guard);
    return flat(lam, s.src, hom);
}

Verdict flat_criterion(const ColimitCandidate& c, std::size_t guard)
{
    Verdict v = fiberwise_bijective(colimit_comparison(c, guard), "colimit-flat");
    v.subject = render_functor(c.apex);
    return v;
}

Verdict factorization_probe(const ColimitCandidate& c, const SearchLimits& lim)
{
    check_candidate_shape(c);
    const CatRef& b = c.weight->right();
    const CatRef& m = c.diagram.tgt;
    const std::string subject = render_functor(c.apex);
    std::size_t unit_probes = 0;
    std::optional<std::string> bad;

    ProRef ub = unit_prof(b);
    std::size_t seen = 0;
    for_each_functor(b, m, [&](const FinFunctor& e) {
        if (++seen > lim.functor_budget)
            throw SearchBudgetExceeded("factorisation probe: more than " +
                                       count_text(lim.functor_budget) + " functors");
        ++unit_probes;
        if (auto w = probe_one(c, ub, e, lim.size_guard)) {
            bad = "H=U e=" + render_functor(e) + " " + *w;
            return false;
        }
        return true;
    });

    CatRef one = terminal_cat();
    std::size_t conjoint_probes = 0;
    for (ObId x = 0; x < b->num_objects() && !bad; ++x) {
        ProRef h = companion(constant_functor(one, b, x)).conjoint;
        for (ObId y = 0; y < m->num_objects() && !bad; ++y) {
            ++conjoint_probes;
            if (auto w = probe_one(c, h, constant_functor(one, m, y), lim.size_guard))
                bad = "H=B(id," + b->ob_name(x) + ") e=" + m->ob_name(y) + " " + *w;
        }
    }
    std::string scope = "unit-probes=" + count_text(unit_probes) +
                        " conjoint-probes=" + count_text(conjoint_probes);
    if (bad)
        return Verdict::fail("colimit-probe", subject, *bad, scope);
    return Verdict::ok("colimit-probe", subject, scope);
}

Verdict verify_colimit(const ColimitCandidate& c, const SearchLimits& lim)
{
    Verdict flat_v = flat_criterion(c, lim.size_guard);
    Verdict probe_v = factorization_probe(c, lim);
    Verdict v = flat_v.pass ? Verdict::ok("colimit", flat_v.subject)
                            : Verdict::fail("colimit", flat_v.subject, flat_v.witness);
    if (flat_v.pass != probe_v.pass)
        v = Verdict::fail("colimit", flat_v.subject,
                          "routes disagree: flat=" + std::string(flat_v.pass ? "pass" : "fail") +
                              " probe=" + (probe_v.pass ? "pass" : "fail"));
    v.scope = probe_v.scope;
    return v;
}

namespace {

template <class Visit>
void scan_candidates(const ProRef& j, const FinFunctor& d, const SearchLimits& lim,
                     const Visit& visit)
{
    const CatRef& b = j->right();
    const CatRef& m = d.tgt;
    if (!same_cat(d.src, j->left()))
        throw BoundaryMismatch("colimit search: diagram does not start at the weight's domain");
    ProRef um = unit_prof(m);
    std::size_t seen = 0;
    for_each_functor(b, m, [&](const FinFunctor& l) {
        if (++seen > lim.functor_budget)
            throw SearchBudgetExceeded("colimit search: more than " +
                                       count_text(lim.functor_budget) + " apex functors");
        bool more = true;
        for_each_cell(j, um, d, l, lim.size_guard, [&](const ProCell& eta) {
            ColimitCandidate c{j, d, l, eta};
            if (flat_criterion(c, lim.size_guard).pass)
                more = visit(c);
            return more;
        });
        return more;
    });
}

}  // namespace

std::optional<ColimitCandidate> colim_search(const ProRef& j, const FinFunctor& d,
                                             const SearchLimits& lim)
{
    std::optional<ColimitCandidate> found;
    scan_candidates(j, d, lim, [&](const ColimitCandidate& c) {
        if (!verify_colimit(c, lim).pass)
            return true;
        found = c;
        return false;
    });
    return found;
}

std::vector<ColimitCandidate> all_colimits(const ProRef& j, const FinFunctor& d,
                                           const SearchLimits& lim)
{
    std::vector<ColimitCandidate> out;
    scan_candidates(j, d, lim, [&](const ColimitCandidate& c) {
        out.push_back(c);
        return true;
    });
    return out;
}

Verdict ordinary_kan_check(const FinFunctor& j, const FinFunctor& d, const FinFunctor& l,
                           const NatTransf& unit, std::size_t functor_budget)
{
    const FinCat& M = *d.tgt;
    const std::string subject = render_functor(l);
    std::size_t seen = 0;
    std::optional<std::string> bad;
    for_each_functor(l.src, l.tgt, [&](const FinFunctor& e) {
        if (++seen > functor_budget)
            throw SearchBudgetExceeded("kan check: more than " + count_text(functor_budget) +
                                       " functors");
        FinFunctor ej = compose(e, j);
        std::map<std::vector<MorId>, std::size_t> hits;
        for (const NatTransf& beta : all_nat(d, ej))
            hits.emplace(beta.comp, 0);
        for (const NatTransf& alpha : all_nat(l, e)) {
            std::vector<MorId> comp(unit.comp.size());
            for (ObId a = 0; a < comp.size(); ++a)
                comp[a] = M.compose(alpha.comp[j.ob[a]], unit.comp[a]);
            ++hits[comp];
        }
        for (const auto& [comp, n] : hits)
            if (n != 1) {
                bad = "e=" + render_functor(e) + " has a transformation with " + count_text(n) +
                      " factorisations";
                return false;
            }
        return true;
    });
    std::string scope = "functors=" + count_text(seen);
    if (bad)
        return Verdict::fail("kan", subject, *bad, scope);
    return Verdict::ok("kan", subject, scope);
}

std::optional<KanExtension> kan_extension(const FinFunctor& j, const FinFunctor& d,
                                          const SearchLimits& lim)
{
    if (!same_cat(j.src, d.src))
        throw BoundaryMismatch("kan extension: functors have different domains");
    CompanionPair cp = companion(j);
    std::optional<ColimitCandidate> c = colim_search(cp.companion, d, lim);
    if (!c)
        return std::nullopt;
    const FinCat& B = *j.tgt;
    FinFunctor idb = identity_functor(j.tgt);
    NatTransf unit{d, compose(c->apex, j), std::vector<MorId>(j.src->num_objects())};
    for (ObId a = 0; a < unit.comp.size(); ++a) {
        ObId ja = j.ob[a];
        ElemId e = restricted_elem(B, *cp.companion, j, idb, a, ja, B.id(ja));
        unit.comp[a] = unit_mor(*c->unit.tgt, c->unit.comp[e]);
    }
    Verdict v = ordinary_kan_check(j, d, c->apex, unit, lim.functor_budget);
    return KanExtension{*c, unit, v};
}

DoubleComma double_comma(const ProRef& jref, const FinFunctor& f)
{
    const Profunctor& J = *jref;
    if (!same_cat(f.tgt, J.right()))
        throw BoundaryMismatch("double comma: functor does not land in the weight's codomain");
    const FinCat& A = *J.left();
    const FinCat& C = *f.src;

    std::vector<std::tuple<ObId, ElemId, ObId>> triples;
    std::vector<std::string> names;
    for (ObId a = 0; a < A.num_objects(); ++a)
        for (ObId c = 0; c < C.num_objects(); ++c) {
            auto [lo, hi] = J.fiber_range(a, f.ob[c]);
            for (ElemId x = lo; x < hi; ++x) {
                triples.emplace_back(a, x, c);
                names.push_back(tuple_atom({A.ob_name(a), J.name(x), C.ob_name(c)}));
            }
        }

    struct Arrow {
        std::size_t from, to;
        MorId u, v;
    };
    std::vector<Arrow> arrows;
    std::vector<MorDecl> decls;
    std::map<std::tuple<std::size_t, std::size_t, MorId, MorId>, std::size_t> index;
    std::vector<std::size_t> identities(triples.size());
    for (std::size_t p = 0; p < triples.size(); ++p) {
        auto [a1, x1, c1] = triples[p];
        for (std::size_t q = 0; q < triples.size(); ++q) {
            auto [a2, x2, c2] = triples[q];
            for (MorId u : A.hom(a1, a2))
                for (MorId v : C.hom(c1, c2)) {
                    if (J.act_right(x1, f.mor[v]) != J.act_left(u, x2))
                        continue;
                    if (p == q && A.is_identity(u) && C.is_identity(v))
                        identities[p] = arrows.size();
                    index[{p, q, u, v}] = arrows.size();
                    arrows.push_back({p, q, u, v});
                    decls.push_back({tuple_atom({A.label(u), C.label(v)}), names[p], names[q]});
                }
        }
    }

    CatRef comma = make_cat(FinCat(names, decls, identities, [&](std::size_t g, std::size_t h) {
        const Arrow& first = arrows[h];
        const Arrow& second = arrows[g];
        return index.at({first.from, second.to, A.compose(second.u, first.u),
                         C.compose(second.v, first.v)});
    }));

    DoubleComma dc;
    dc.weight = jref;
    dc.f = f;
    dc.comma = comma;
    dc.triple.resize(triples.size());
    dc.proj_a = FinFunctor{comma, J.left(), std::vector<ObId>(triples.size()),
                           std::vector<MorId>(arrows.size())};
    dc.proj_c = FinFunctor{comma, f.src, std::vector<ObId>(triples.size()),
                           std::vector<MorId>(arrows.size())};
    for (std::size_t p = 0; p < triples.size(); ++p) {
        ObId o = comma->ob(names[p]);
        dc.triple[o] = triples[p];
        dc.proj_a.ob[o] = std::get<0>(triples[p]);
        dc.proj_c.ob[o] = std::get<2>(triples[p]);
    }
    std::vector<MorId> ids(arrows.size());
    for (std::size_t i = 0; i < arrows.size(); ++i) {
        ids[i] = comma->mor(mor_atom(decls[i].label, decls[i].src, decls[i].tgt));
        dc.proj_a.mor[ids[i]] = arrows[i].u;
        dc.proj_c.mor[ids[i]] = arrows[i].v;
    }
    ProRef uc = unit_prof(comma);
    dc.pi = ProCell{uc, jref, dc.proj_a, compose(f, dc.proj_c),
                    std::vector<ElemId>(arrows.size())};
    for (std::size_t i = 0; i < arrows.size(); ++i) {
        ElemId x = std::get<1>(triples[arrows[i].from]);
        dc.pi.comp[unit_elem(*uc, ids[i])] = J.act_right(x, f.mor[arrows[i].v]);
    }
    return dc;
}

std::vector<CatRef> probe_sources(std::size_t depth)
{
    std::vector<CatRef> all{terminal_cat(),
                            discrete_cat({"x", "y"}),
                            walking_arrow(),
                            one_object("s", false),
                            one_object("e", true),
                            free_cat_on_dag({"x", "y"}, {{"p", "x", "y"}, {"q", "x", "y"}})};
    if (depth < all.size())
        all.resize(depth);
    return all;
}

std::vector<FinFunctor> probe_functors(const CatRef& b, std::size_t depth,
                                       std::size_t functor_budget)
{
    std::vector<FinFunctor> out;
    for (const CatRef& x : probe_sources(depth))
        for (FinFunctor& f : all_functors(x, b, functor_budget))
            out.push_back(std::move(f));
    return out;
}

Verdict verify_double_comma(const DoubleComma& dc, const std::vector<CatRef>& sources,
                            const SearchLimits& lim)
{
    const Profunctor& J = *dc.weight;
    const std::string subject = "J/f";
    const CatRef& comma = dc.comma;
    ProRef uc = unit_prof(comma);

    auto elem_of = [&](const FinFunctor& k, ObId x) { return std::get<1>(dc.triple[k.ob[x]]); };

    // 1-dimensional: functors X -> J/f correspond to triples (phi_A, phi_C, phi).
    std::size_t one_dim = 0;
    for (const CatRef& x : sources) {
        std::map<std::vector<std::size_t>, std::size_t> hits;
        std::vector<FinFunctor> ks = all_functors(x, comma, lim.functor_budget);
        ProRef ux = unit_prof(x);
        for (const FinFunctor& k : ks) {
            std::vector<std::size_t> key = functor_key(compose(dc.proj_a, k));
            auto kc = functor_key(compose(dc.proj_c, k));
            key.insert(key.end(), kc.begin(), kc.end());
            for (MorId m = 0; m < x->num_morphisms(); ++m)
                key.push_back(dc.pi.comp[unit_elem(*uc, k.mor[m])]);
            ++hits[key];
        }
        std::size_t data = 0;
        for (const FinFunctor& pa : all_functors(x, J.left(), lim.functor_budget))
            for (const FinFunctor& pc : all_functors(x, dc.f.src, lim.functor_budget)) {
                for (const ProCell& phi :
                     all_cells(ux, dc.weight, pa, compose(dc.f, pc), lim.size_guard)) {
                    ++data;
                    std::vector<std::size_t> key = functor_key(pa);
                    auto kc = functor_key(pc);
                    key.insert(key.end(), kc.begin(), kc.end());
                    key.insert(key.end(), phi.comp.begin(), phi.comp.end());
                    auto it = hits.find(key);
                    std::size_t n = it == hits.end() ? 0 : it->second;
                    if (n != 1)
                        return Verdict::fail("double-comma", subject,
                                             "1-dim: a cell from " + x->ob_name(0) +
                                                 " has " + count_text(n) + " factorisations");
                }
            }
        if (data != ks.size())
            return Verdict::fail("double-comma", subject,
                                 "1-dim: functor count " + count_text(ks.size()) +
                                     " differs from cell count " + count_text(data));
        ++one_dim;
    }

    // 2-dimensional: for each pair of functors and each probe K, cells
    // K => U_{J/f} correspond to compatible pairs (xi_A, xi_C).
    std::size_t pairs = 0;
    for (const CatRef& x : sources)
        for (const CatRef& y : sources) {
            std::vector<ProRef> ks{empty_prof(x, y), terminal_prof(x, y)};
            if (x == y)
                ks.push_back(unit_prof(x));
            std::vector<FinFunctor> fx = all_functors(x, comma, lim.functor_budget);
            std::vector<FinFunctor> fy = all_functors(y, comma, lim.functor_budget);
            for (const FinFunctor& k1 : fx)
                for (const FinFunctor& k2 : fy)
                    for (const ProRef& kp : ks) {
                        const Profunctor& K = *kp;
                        ++pairs;
                        std::map<std::vector<MorId>, std::size_t> hits;
                        for_each_cell(kp, uc, k1, k2, lim.size_guard, [&](const ProCell& xi) {
                            std::vector<MorId> key;
                            for (ElemId e : xi.comp)
                                key.push_back(dc.proj_a.mor[unit_mor(*uc, e)]);
                            for (ElemId e : xi.comp)
                                key.push_back(dc.proj_c.mor[unit_mor(*uc, e)]);
                            ++hits[key];
                            return true;
                        });
                        ProRef ua = unit_prof(J.left());
                        ProRef ucc = unit_prof(dc.f.src);
                        auto xas = all_cells(kp, ua, compose(dc.proj_a, k1),
                                             compose(dc.proj_a, k2), lim.size_guard);
                        auto xcs = all_cells(kp, ucc, compose(dc.proj_c, k1),
                                             compose(dc.proj_c, k2), lim.size_guard);
                        for (const ProCell& xa : xas)
                            for (const ProCell& xc : xcs) {
                                bool compatible = true;
                                for (ElemId e = 0; e < K.size() && compatible; ++e) {
                                    MorId u = unit_mor(*ua, xa.comp[e]);
                                    MorId v = unit_mor(*ucc, xc.comp[e]);
                                    ElemId lhs = J.act_left(u, elem_of(k2, K.b_of(e)));
                                    ElemId rhs = J.act_right(elem_of(k1, K.a_of(e)), dc.f.mor[v]);
                                    compatible = lhs == rhs;
                                }
                                std::vector<MorId> key;
                                for (ElemId e : xa.comp)
                                    key.push_back(unit_mor(*ua, e));
                                for (ElemId e : xc.comp)
                                    key.push_back(unit_mor(*ucc, e));
                                auto it = hits.find(key);
                                std::size_t n = it == hits.end() ? 0 : it->second;
                                if (n != (compatible ? 1u : 0u))
                                    return Verdict::fail(
                                        "double-comma", subject,
                                        "2-dim: pair k=" + render_functor(k1) +
                                            " k'=" + render_functor(k2) + " has " +
                                            count_text(n) + " lifts");
                            }
                    }
        }
    return Verdict::ok("double-comma", subject,
                       "sources=" + count_text(one_dim) + " pairs=" + count_text(pairs));
}

CommaFactor comma_factor(const DoubleComma& dc)
{
    const Profunctor& J = *dc.weight;
    const FinCat& C = *dc.f.src;
    FinFunctor idc = identity_functor(dc.f.src);
    CommaFactor out{companion(dc.proj_c).companion,
                    restrict(dc.weight, identity_functor(J.left()), dc.f),
                    {}};
    const Profunctor& W = *out.companion;
    out.cell = ProCell{out.companion, out.restr.prof, dc.proj_a, idc,
                       std::vector<ElemId>(W.size())};
    for (ElemId w = 0; w < W.size(); ++w) {
        MorId v = restricted_mor(C, W, dc.proj_c, idc, w);
        auto [a, x, c] = dc.triple[W.a_of(w)];
        ElemId y = J.act_right(x, dc.f.mor[v]);
        out.cell.comp[w] = out.restr.prof->elem(a, W.b_of(w), J.local(y));
    }
    return out;
}

ColimitCandidate pointwise_candidate(const ColimitCandidate& c, const DoubleComma& dc)
{
    check_candidate_shape(c);
    if (!same_prof(dc.weight, c.weight))
        throw BoundaryMismatch("pointwise candidate: comma of a different weight");
    const Profunctor& J = *c.weight;
    const FinCat& C = *dc.f.src;
    FinFunctor idc = identity_functor(dc.f.src);
    ProRef w = companion(dc.proj_c).companion;
    ColimitCandidate out{w, compose(c.diagram, dc.proj_a), compose(c.apex, dc.f), {}};
    out.unit = ProCell{w, c.unit.tgt, out.diagram, out.apex, std::vector<ElemId>(w->size())};
    for (ElemId e = 0; e < w->size(); ++e) {
        MorId v = restricted_mor(C, *w, dc.proj_c, idc, e);
        ElemId x = std::get<1>(dc.triple[w->a_of(e)]);
        out.unit.comp[e] = c.unit.comp[J.act_right(x, dc.f.mor[v])];
    }
    return out;
}

Verdict check_pointwise(const ColimitCandidate& c, const std::vector<FinFunctor>& probes,
                        const SearchLimits& lim)
{
    const std::string subject = render_functor(c.apex);
    const std::string scope = "probes=" + count_text(probes.size());
    for (const FinFunctor& f : probes) {
        DoubleComma dc = double_comma(c.weight, f);
        Verdict v = verify_colimit(pointwise_candidate(c, dc), lim);
        if (!v.pass)
            return Verdict::fail("pointwise", subject, "f=" + render_functor(f) + " " + v.witness,
                                 scope);
    }
    return Verdict::ok("pointwise", subject, scope);
}

std::vector<StrongProbe> default_strong_probes(const DoubleComma& dc,
                                               const std::vector<ProRef>& extra,
                                               const std::vector<CatRef>& targets,
                                               std::size_t max_pairs,
                                               std::size_t functor_budget)
{
    std::vector<ProRef> hs{unit_prof(dc.f.src)};
    for (const ProRef& h : extra)
        if (same_cat(h->left(), dc.f.src))
            hs.push_back(h);
    std::vector<StrongProbe> out;
    for (const ProRef& h : hs)
        for (const CatRef& m : targets) {
            std::vector<FinFunctor> lefts = all_functors(dc.weight->left(), m, functor_budget);
            std::vector<FinFunctor> rights = all_functors(h->right(), m, functor_budget);
            std::size_t taken = 0;
            for (const FinFunctor& l : lefts)
                for (const FinFunctor& r : rights)
                    if (taken++ < max_pairs)
                        out.push_back({h, l, r});
        }
    return out;
}

Verdict check_strong_comma(const DoubleComma& dc, const std::vector<StrongProbe>& probes,
                           std::size_t guard)
{
    CommaFactor cf = comma_factor(dc);
    std::size_t index = 0;
    for (const StrongProbe& p : probes) {
        ++index;
        Composite wh = hcomp(cf.companion, p.h);
        Composite rh = hcomp(cf.restr.prof, p.h);
        ProCell pasted = hcomp_cells(cf.cell, identity_cell(p.h), wh, rh);
        ProRef um = unit_prof(p.left.tgt);
        std::vector<ProCell> phis = all_cells(wh.result, um, compose(p.left, dc.proj_a), p.right,
                                              guard);
        std::map<std::vector<ElemId>, std::size_t> hits;
        for (const ProCell& phi : phis)
            hits.emplace(phi.comp, 0);
        for_each_cell(rh.result, um, p.left, p.right, guard, [&](const ProCell& phi2) {
            ++hits[vcompose(phi2, pasted).comp];
            return true;
        });
        for (std::size_t i = 0; i < phis.size(); ++i) {
            std::size_t n = hits[phis[i].comp];
            if (n != 1)
                return Verdict::fail("strong-comma", "J/f",
                                     "probe #" + count_text(index) + " cell #" + count_text(i) +
                                         " has " + count_text(n) + " factorisations",
                                     "probes=" + count_text(probes.size()));
        }
    }
    return Verdict::ok("strong-comma", "J/f", "probes=" + count_text(probes.size()));
}

ColimitCandidate paste_colimits(const ColimitCandidate& eta, const ColimitCandidate& zeta)
{
    check_candidate_shape(eta);
    check_candidate_shape(zeta);
    if (!(eta.apex == zeta.diagram))
        throw BoundaryMismatch("paste: apex of the first cell is not the diagram of the second");
    const FinCat& M = *eta.diagram.tgt;
    Composite jh = hcomp(eta.weight, zeta.weight);
    const ProRef& um = eta.unit.tgt;
    ColimitCandidate out{jh.result, eta.diagram, zeta.apex, {}};
    out.unit = ProCell{jh.result, um, eta.diagram, zeta.apex,
                       std::vector<ElemId>(jh.result->size())};
    for (ElemId z = 0; z < out.unit.comp.size(); ++z) {
        auto [x, y] = jh.rep[z];
        out.unit.comp[z] = unit_elem(
            *um, M.compose(unit_mor(*um, zeta.unit.comp[y]), unit_mor(*um, eta.unit.comp[x])));
    }
    return out;
}

namespace {

const char* word(bool b) { return b ? "pass" : "fail"; }

}  // namespace

Verdict fubini_check(const ColimitCandidate& eta, const ColimitCandidate& zeta,
                     const SearchLimits& lim)
{
    bool first = verify_colimit(eta, lim).pass;
    bool second = verify_colimit(zeta, lim).pass;
    bool pasted = verify_colimit(paste_colimits(eta, zeta), lim).pass;
    std::string scope = std::string("eta=") + word(first) + " zeta=" + word(second) +
                        " pasted=" + word(pasted);
    const std::string subject = render_functor(zeta.apex);
    if (first && second && !pasted)
        return Verdict::fail("fubini", subject, "pasting of two colimits is not a colimit",
                             scope);
    return Verdict::ok("fubini", subject, scope);
}

Verdict precompose_invariance_check(const ProCell& phi, const ColimitCandidate& zeta,
                                    const SearchLimits& lim)
{
    ColimitCandidate pre{phi.src, compose(zeta.diagram, phi.f), compose(zeta.apex, phi.g),
                         vcompose(zeta.unit, phi)};
    bool invertible = is_right_invertible(phi).pass;
    bool before = verify_colimit(zeta, lim).pass;
    bool after = verify_colimit(pre, lim).pass;
    std::string scope = std::string("right-invertible=") + (invertible ? "yes" : "no") +
                        " zeta=" + word(before) + " precomposed=" + word(after);
    const std::string subject = render_functor(zeta.apex);
    if (invertible && before != after)
        return Verdict::fail("precompose", subject, "verdicts differ under a right invertible cell",
                             scope);
    return Verdict::ok("precompose", subject, scope);
}

}  // namespace procat

namespace procat {

namespace {

// Natural families kappa over one column: kappa[q] : d(a_q) -> m with
// kappa(s . e) = kappa(e) o d(s).
class ColumnCocones {
public:
    ColumnCocones(const Profunctor& j, const FinFunctor& d, ObId b) : j_(j), d_(d), col_(j.col(b))
    {
        const FinCat& a = *j.left();
        checks_.resize(col_.size());
        for (std::size_t q = 0; q < col_.size(); ++q)
            for (MorId s : a.in(j.a_of(col_[q])))
                if (!a.is_identity(s)) {
                    std::size_t r = j.col_pos(j.act_left(s, col_[q]));
                    checks_[std::max(q, r)].push_back({s, q, r});
                }
    }

    std::vector<std::vector<MorId>> at(ObId m, std::size_t guard) const
    {
        const FinCat& c = *d_.tgt;
        std::vector<std::vector<MorId>> out;
        std::vector<MorId> kappa(col_.size());
        auto fill = [&](auto&& self, std::size_t p) -> void {
            if (p == col_.size()) {
                if (out.size() >= guard)
                    throw SizeGuardExceeded("cocone enumeration exceeds the size guard");
                out.push_back(kappa);
                return;
            }
            for (MorId k : c.hom(d_.ob[j_.a_of(col_[p])], m)) {
                kappa[p] = k;
                bool ok = true;
                for (const Check& ch : checks_[p])
                    if (kappa[ch.r] != c.compose(kappa[ch.q], d_.mor[ch.s])) {
                        ok = false;
                        break;
                    }
                if (ok)
                    self(self, p + 1);
            }
        };
        fill(fill, 0);
        return out;
    }

private:
    struct Check {
        MorId s;
        std::size_t q, r;
    };
    const Profunctor& j_;
    const FinFunctor& d_;
    const std::vector<ElemId>& col_;
    std::vector<std::vector<Check>> checks_;
};

std::vector<MorId> postcompose(const FinCat& c, MorId f, const std::vector<MorId>& kappa)
{
    std::vector<MorId> out;
    out.reserve(kappa.size());
    for (MorId k : kappa)
        out.push_back(c.compose(f, k));
    return out;
}

}  // namespace

std::optional<ColimitCandidate> pointwise_colim_search(const ProRef& jr, const FinFunctor& d,
                                                       const SearchLimits& lim)
{
    if (!same_cat(d.src, jr->left()))
        throw BoundaryMismatch("colimit search: diagram does not start at the weight's domain");
    const Profunctor& j = *jr;
    const FinCat& b = *j.right();
    const FinCat& m = *d.tgt;
    FinFunctor apex{j.right(), d.tgt, std::vector<ObId>(b.num_objects()),
                    std::vector<MorId>(b.num_morphisms())};
    std::vector<std::vector<MorId>> unit(b.num_objects());
    for (ObId y = 0; y < b.num_objects(); ++y) {
        ColumnCocones cc(j, d, y);
        std::vector<std::vector<std::vector<MorId>>> per(m.num_objects());
        std::vector<std::map<std::vector<MorId>, std::size_t>> index(m.num_objects());
        for (ObId t = 0; t < m.num_objects(); ++t) {
            per[t] = cc.at(t, lim.size_guard);
            for (std::size_t i = 0; i < per[t].size(); ++i)
                index[t].emplace(per[t][i], i);
        }
        bool found = false;
        for (ObId t = 0; t < m.num_objects() && !found; ++t)
            for (const auto& kappa : per[t]) {
                bool universal = true;
                for (ObId u = 0; u < m.num_objects() && universal; ++u) {
                    if (m.hom(t, u).size() != per[u].size()) {
                        universal = false;
                        break;
                    }
                    std::vector<bool> hit(per[u].size(), false);
                    for (MorId f : m.hom(t, u)) {
                        std::size_t i = index[u].at(postcompose(m, f, kappa));
                        if (hit[i]) {
                            universal = false;
                            break;
                        }
                        hit[i] = true;
                    }
                }
                if (universal) {
                    apex.ob[y] = t;
                    unit[y] = kappa;
                    found = true;
                    break;
                }
            }
        if (!found)
            return std::nullopt;
    }
    for (MorId g = 0; g < b.num_morphisms(); ++g) {
        ObId y = b.src(g), y2 = b.tgt(g);
        const auto& col = j.col(y);
        std::vector<MorId> target(col.size());
        for (std::size_t q = 0; q < col.size(); ++q)
            target[q] = unit[y2][j.col_pos(j.act_right(col[q], g))];
        std::optional<MorId> mediator;
        for (MorId f : m.hom(apex.ob[y], apex.ob[y2]))
            if (postcompose(m, f, unit[y]) == target) {
                mediator = f;
                break;
            }
        if (!mediator)
            throw FactorizationFailure("pointwise colimit: no mediator along " + b.mor_name(g));
        apex.mor[g] = *mediator;
    }
    ProRef um = unit_prof(d.tgt);
    ProCell cell{jr, um, d, apex, std::vector<ElemId>(j.size())};
    for (ObId y = 0; y < b.num_objects(); ++y)
        for (std::size_t q = 0; q < j.col(y).size(); ++q)
            cell.comp[j.col(y)[q]] = unit_elem(*um, unit[y][q]);
    ColimitCandidate c{jr, d, apex, cell};
    if (!flat_criterion(c, lim.size_guard).pass)
        throw ValidationError("pointwise colimit fails the comparison criterion");
    return c;
}

}  // namespace procat
