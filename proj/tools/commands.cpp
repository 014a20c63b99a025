#include "commands.hpp"

#include "workspace.hpp"

#include "procat/closedhom.hpp"
#include "procat/colimits.hpp"
#include "procat/corpus.hpp"
#include "procat/error.hpp"
#include "procat/matspan.hpp"
#include "procat/monalg.hpp"
#include "procat/propdemo.hpp"
#include "procat/relkit.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

namespace procat::cli {

namespace {

struct Options {
    std::string doc;
    std::size_t budget = 2;
    std::size_t size_guard = default_size_guard;
    std::size_t probe_depth = 6;
    std::uint64_t seed = 0;
    std::string format = "text";
    std::string kind = "S";
    std::string emit;
};

// Collects one report; the first line always records the seed.
class Report {
public:
    explicit Report(const Options& opt) : machine_(opt.format == "machine")
    {
        out_ << (machine_ ? "# seed=" : "# procat report, seed=") << opt.seed << '\n';
    }

    void verdict(const Verdict& v)
    {
        failed_ = failed_ || !v.pass;
        out_ << (machine_ ? machine_line(v) : text_line(v)) << '\n';
    }
    void text(const std::string& line)
    {
        if (!machine_)
            out_ << line << '\n';
    }
    bool failed() const { return failed_; }
    std::string str() const { return out_.str(); }

private:
    bool machine_;
    bool failed_ = false;
    std::ostringstream out_;
};

// Errors that stem from the command line or the document, reported with exit code 2.
bool is_input_error(const Error& e)
{
    const std::string k = e.kind();
    return k == "UsageError" || k == "UnknownName" || k == "ParseError" || k == "ValidationError" ||
           k == "BoundaryMismatch" || k == "SourceMismatch" || k == "TargetMismatch" || k == "IndexMismatch";
}

SearchLimits limits(const Options& opt) { return SearchLimits{100'000, opt.size_guard}; }
MonadKind monad(const Options& opt) { return opt.kind == "M" ? MonadKind::M : MonadKind::S; }

void functor_table(Report& r, const std::string& name, const FinFunctor& f)
{
    for (ObId a = 0; a < f.src->num_objects(); ++a)
        r.text("  " + name + "(" + f.src->ob_name(a) + ") = " + f.tgt->ob_name(f.on_ob(a)));
    for (MorId m = 0; m < f.src->num_morphisms(); ++m)
        if (!f.src->is_identity(m))
            r.text("  " + name + "(" + f.src->mor_name(m) + ") = " + f.tgt->mor_name(f.on_mor(m)));
}

void fiber_table(Report& r, const Profunctor& p)
{
    const FinCat& A = *p.left();
    const FinCat& B = *p.right();
    for (ObId a = 0; a < A.num_objects(); ++a)
        for (ObId b = 0; b < B.num_objects(); ++b) {
            std::string line = "  (" + A.ob_name(a) + "," + B.ob_name(b) + "): " +
                               std::to_string(p.fiber_size(a, b));
            for (const auto& atom : p.fiber(a, b).atoms())
                line += " " + atom;
            r.text(line);
        }
}

// f re-expressed between the categories of the algebras; thin algebras are
// matched by object names.
FinFunctor onto_algebras(const FinFunctor& f, const AlgebraEntry& a, const AlgebraEntry& b)
{
    const CatRef& ca = a.algebra->cat();
    const CatRef& cb = b.algebra->cat();
    if (same_cat(f.src, ca) && same_cat(f.tgt, cb))
        return f;
    if (a.structure != "join" || b.structure != "join")
        throw ValidationError("functor does not live on the algebra categories");
    const Preorder p = preorder_of(*ca), q = preorder_of(*cb);
    std::vector<std::size_t> obs(p.size());
    for (ObId x = 0; x < f.src->num_objects(); ++x)
        obs[*p.carrier().index_of(f.src->ob_name(x))] = *q.carrier().index_of(f.tgt->ob_name(f.on_ob(x)));
    return as_functor(p, q, obs);
}

ColaxMorphism colax(const FinFunctor& f, const AlgebraEntry& a, const AlgebraEntry& b)
{
    const FinFunctor g = onto_algebras(f, a, b);
    if (a.structure == "join" && b.structure == "join")
        return thin_morphism(g, a.algebra, b.algebra);
    return strict_morphism(g, a.algebra, b.algebra);
}

// Fixed lattices used by the poset demo.
Preorder chain(std::size_t n)
{
    std::vector<std::string> names;
    Relation leq(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i) {
        names.push_back("c" + std::to_string(i));
        for (std::size_t j = 0; j < n; ++j)
            leq[i][j] = i <= j;
    }
    return Preorder(names, leq);
}

Preorder diamond()
{
    return Preorder({"0", "x", "y", "1"}, {{true, true, true, true},
                                            {false, true, false, true},
                                            {false, false, true, true},
                                            {false, false, false, true}});
}

std::string set_name(const Preorder& p, const std::vector<std::size_t>& xs)
{
    std::string s = "{";
    for (std::size_t i = 0; i < xs.size(); ++i)
        s += (i ? "," : "") + p.carrier()[xs[i]];
    return s + "}";
}

void demo_hopf(Report& r)
{
    const MatProp h(4, 2);
    const Matrix lhs = h.compose(h.mult(), h.compose(h.tensor(h.antipode(), h.identity(1)), h.comult()));
    r.text("  " + render(h.mult()) + " . " + render(h.tensor(h.antipode(), h.identity(1))) + " . " +
           render(h.comult()) + " = " + render(lhs));
    r.verdict(hopf_axiom_check(4, 2));
}

void demo_sigma(Report& r)
{
    const Verdict v = sigma_failure_demo();
    r.text("  decomposition through permutations: " + text_line(v));
    Verdict claim = v.pass ? Verdict::fail("sigma-failure-reproduced", v.subject, "a decomposition exists", v.scope)
                           : Verdict::ok("sigma-failure-reproduced", v.subject, v.scope);
    r.verdict(claim);
}

void demo_poset(Report& r, const Options& opt)
{
    Corpus corpus(opt.seed);
    const std::vector<Preorder> lattices{chain(2), chain(3), diamond()};
    const Preorder& p = lattices[corpus.below(lattices.size())];
    const Preorder& q = lattices[corpus.below(lattices.size())];
    const Preorder& m = lattices[corpus.below(lattices.size())];
    const auto js = all_monotone(p, q);
    const auto ds = all_monotone(p, m);
    const auto& j = js[corpus.below(js.size())];
    const auto& d = ds[corpus.below(ds.size())];
    const ModRel weight = companion_rel(p, q, j);
    const auto l = sup_colim(weight, m, d);
    for (std::size_t z = 0; z < q.size(); ++z) {
        std::vector<std::size_t> images;
        for (std::size_t x = 0; x < p.size(); ++x)
            if (q.leq(j[x], z))
                images.push_back(d[x]);
        std::sort(images.begin(), images.end());
        images.erase(std::unique(images.begin(), images.end()), images.end());
        r.text("  l(" + q.carrier()[z] + ") = sup{d x : j x <= " + q.carrier()[z] + "} = sup " +
               set_name(m, images) + " = " + m.carrier()[l[z]]);
    }
    r.verdict(check_sup_universal(weight, m, d, l));
    r.verdict(verify_colimit(as_candidate(weight, m, d, l), limits(opt)));
}

void demo_modmat(Report& r, const Options& opt)
{
    Corpus corpus(opt.seed);
    const CatRef a = corpus.category(2, 2), b = corpus.category(3, 2), c = corpus.category(2, 2);
    const ProRef j = corpus.profunctor(a, b, 3), h = corpus.profunctor(b, c, 3);
    r.text("  J: " + std::to_string(j->size()) + " elements, H: " + std::to_string(h->size()) + " elements");
    const Composite jh = hcomp(j, h);
    r.text("  J;H: " + std::to_string(jh.result->size()) + " elements");
    r.verdict(check_mod_prof_agreement(profunctor_to_bimodule(*j), profunctor_to_bimodule(*h)));
}

// Each command fills the report; exceptions are classified by run().
using Action = std::function<void(Report&, const Options&, const Workspace&)>;

}  // namespace

Outcome run(const std::vector<std::string>& args)
{
    Options opt;
    CLI::App app{"Finite category, profunctor and colimit checks", "procat"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--doc", opt.doc, "JSON workspace document");
    app.add_option("--budget", opt.budget, "Arity budget N")->check(CLI::PositiveNumber);
    app.add_option("--size-guard", opt.size_guard, "Search space guard")->check(CLI::PositiveNumber);
    app.add_option("--probe-depth", opt.probe_depth, "Probe source depth");
    app.add_option("--seed", opt.seed, "Corpus seed");
    app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "machine"}));
    app.add_option("--kind", opt.kind, "Sequence monad")->check(CLI::IsMember({"M", "S"}));

    Action action;
    std::vector<std::string> names;
    auto named = [&](CLI::App* sub, std::size_t n, const char* what) {
        sub->add_option("names", names, what)->expected(static_cast<int>(n))->required();
    };

    auto* validate = app.add_subcommand("validate", "Load and validate a document");
    validate->add_option("--emit", opt.emit, "Write the canonical document to this path");
    validate->callback([&] {
        action = [&](Report& r, const Options& o, const Workspace& ws) {
            for (const auto& [n, c] : ws.categories)
                r.verdict(Verdict::ok("validate-category", n, std::to_string(c->num_morphisms()) + " morphisms"));
            for (const auto& [n, f] : ws.functors)
                r.verdict(Verdict::ok("validate-functor", n));
            for (const auto& [n, p] : ws.profunctors)
                r.verdict(Verdict::ok("validate-profunctor", n, std::to_string(p.prof->size()) + " elements"));
            for (const auto& [n, c] : ws.cells)
                r.verdict(Verdict::ok("validate-cell", n));
            for (const auto& [n, a] : ws.algebras)
                r.verdict(Verdict::ok("validate-algebra", n, is_pseudo(*a.algebra) ? "pseudo" : "colax"));
            if (!o.emit.empty()) {
                std::ofstream file(o.emit, std::ios::binary);
                if (!(file << emit_document(ws)))
                    throw UsageError("cannot write " + o.emit);
            }
        };
    });

    auto* compose_cmd = app.add_subcommand("compose", "Horizontal composite J;H");
    named(compose_cmd, 2, "J H");
    compose_cmd->callback([&] {
        action = [&](Report& r, const Options&, const Workspace& ws) {
            const Composite c = hcomp(ws.profunctor(names[0]).prof, ws.profunctor(names[1]).prof);
            fiber_table(r, *c.result);
            Verdict v = validate_prof(*c.result);
            v.subject = names[0] + ";" + names[1];
            r.verdict(v);
        };
    });

    auto* hom_cmd = app.add_subcommand("hom", "Left hom J |> K");
    named(hom_cmd, 2, "J K");
    hom_cmd->callback([&] {
        action = [&](Report& r, const Options& o, const Workspace& ws) {
            const HomProfunctor h = left_hom(ws.profunctor(names[0]).prof, ws.profunctor(names[1]).prof, o.size_guard);
            fiber_table(r, *h.hom);
            Verdict v = validate_prof(*h.hom);
            v.subject = names[0] + "|>" + names[1];
            r.verdict(v);
        };
    });

    auto* colim_cmd = app.add_subcommand("colim", "Weighted colimit of d by J");
    named(colim_cmd, 2, "J d");
    colim_cmd->callback([&] {
        action = [&](Report& r, const Options& o, const Workspace& ws) {
            const auto c = colim_search(ws.profunctor(names[0]).prof, ws.functor(names[1]).functor, limits(o));
            const std::string subject = "colim_" + names[0] + "(" + names[1] + ")";
            if (!c) {
                r.verdict(Verdict::fail("colimit", subject, "no colimit"));
                return;
            }
            functor_table(r, "l", c->apex);
            Verdict v = verify_colimit(*c, limits(o));
            v.subject = subject;
            r.verdict(v);
        };
    });

    auto* kan_cmd = app.add_subcommand("kan", "Left Kan extension of d along j");
    named(kan_cmd, 2, "j d");
    kan_cmd->callback([&] {
        action = [&](Report& r, const Options& o, const Workspace& ws) {
            const auto k = kan_extension(ws.functor(names[0]).functor, ws.functor(names[1]).functor, limits(o));
            const std::string subject = "Lan_" + names[0] + "(" + names[1] + ")";
            if (!k) {
                r.verdict(Verdict::fail("kan-extension", subject, "no extension"));
                return;
            }
            functor_table(r, "l", k->colimit.apex);
            Verdict v = k->ordinary;
            v.subject = subject;
            r.verdict(v);
        };
    });

    auto* comma_cmd = app.add_subcommand("comma", "Double comma J/f");
    named(comma_cmd, 2, "J f");
    comma_cmd->callback([&] {
        action = [&](Report& r, const Options& o, const Workspace& ws) {
            const DoubleComma dc = double_comma(ws.profunctor(names[0]).prof, ws.functor(names[1]).functor);
            for (ObId t = 0; t < dc.comma->num_objects(); ++t)
                r.text("  " + dc.comma->ob_name(t));
            Verdict v = verify_double_comma(dc, probe_sources(o.probe_depth), limits(o));
            v.subject = names[0] + "/" + names[1];
            r.verdict(v);
        };
    });

    auto* check = app.add_subcommand("check", "Run one verifier");
    check->require_subcommand(1);
    auto* companion_cmd = check->add_subcommand("companion", "Companion and conjoint identities of f");
    named(companion_cmd, 1, "f");
    companion_cmd->callback([&] {
        action = [&](Report& r, const Options&, const Workspace& ws) {
            const CompanionPair c = companion(ws.functor(names[0]).functor);
            Verdict ids = check_companion_identities(c);
            ids.subject = names[0];
            r.verdict(ids);
            Verdict tri = check_triangle_identities(c, companion_adjunction(c));
            tri.subject = names[0];
            r.verdict(tri);
        };
    });
    auto* rp_cmd = check->add_subcommand("right-pseudo", "Right pseudo companion of w: A -> B");
    named(rp_cmd, 3, "w A B");
    rp_cmd->callback([&] {
        action = [&](Report& r, const Options& o, const Workspace& ws) {
            const ColaxMorphism w = colax(ws.functor(names[0]).functor, ws.algebra(names[1]), ws.algebra(names[2]));
            Verdict v = check_right_pseudo(companion_lax(w), o.size_guard);
            v.subject = names[2] + "(" + names[0] + ",id)";
            r.verdict(v);
        };
    });
    auto* rs_cmd = check->add_subcommand("right-suitable", "Right suitability of the monad at J");
    named(rs_cmd, 1, "J");
    rs_cmd->callback([&] {
        action = [&](Report& r, const Options& o, const Workspace& ws) {
            const ProRef j = ws.profunctor(names[0]).prof;
            Verdict v = check_right_suitable(monad(o), j, ArityBudget(o.budget), o.size_guard);
            v.subject = names[0];
            r.verdict(v);
            Verdict t = theta_check(j, ArityBudget(o.budget), o.size_guard);
            t.subject = names[0];
            r.verdict(t);
        };
    });
    auto* strong_cmd = check->add_subcommand("strong-comma", "Strong double comma J/f");
    named(strong_cmd, 2, "J f");
    strong_cmd->callback([&] {
        action = [&](Report& r, const Options& o, const Workspace& ws) {
            const ProRef j = ws.profunctor(names[0]).prof;
            const DoubleComma dc = double_comma(j, ws.functor(names[1]).functor);
            Verdict v = check_strong_comma(dc, default_strong_probes(dc, {}, {j->left()}), o.size_guard);
            v.subject = names[0] + "/" + names[1];
            r.verdict(v);
        };
    });
    auto* pw_cmd = check->add_subcommand("pointwise", "Pointwise colimit of d by J");
    named(pw_cmd, 2, "J d");
    pw_cmd->callback([&] {
        action = [&](Report& r, const Options& o, const Workspace& ws) {
            const ProRef j = ws.profunctor(names[0]).prof;
            const std::string subject = "colim_" + names[0] + "(" + names[1] + ")";
            const auto c = colim_search(j, ws.functor(names[1]).functor, limits(o));
            if (!c) {
                r.verdict(Verdict::fail("pointwise", subject, "no colimit"));
                return;
            }
            Verdict v = check_pointwise(*c, probe_functors(j->right(), o.probe_depth), limits(o));
            v.subject = subject;
            r.verdict(v);
        };
    });
    auto* colimit_cmd = check->add_subcommand("colimit", "Verify a unit cell J => U_M as a colimit");
    named(colimit_cmd, 1, "cell");
    colimit_cmd->callback([&] {
        action = [&](Report& r, const Options& o, const Workspace& ws) {
            const ProCell& cell = ws.cell(names[0]).cell;
            Verdict v = verify_colimit(ColimitCandidate{cell.src, cell.f, cell.g, cell}, limits(o));
            v.subject = names[0];
            r.verdict(v);
        };
    });
    auto* tcell_cmd = check->add_subcommand("tcell", "Unit cell of f as a T-cell between algebras A and B");
    named(tcell_cmd, 3, "f A B");
    tcell_cmd->callback([&] {
        action = [&](Report& r, const Options& o, const Workspace& ws) {
            const AlgebraEntry& a = ws.algebra(names[1]);
            const AlgebraEntry& b = ws.algebra(names[2]);
            const ColaxMorphism f = colax(ws.functor(names[0]).functor, a, b);
            Verdict m = validate_morphism(f);
            m.subject = names[0];
            r.verdict(m);
            Verdict v = tcell_check(unit_cell(f.functor), unit_right_colax(a.algebra), unit_right_colax(b.algebra),
                                    f, f, o.size_guard);
            v.subject = "U_" + names[0];
            r.verdict(v);
        };
    });

    auto* lift_cmd = app.add_subcommand("lift", "Lift colim of d weighted by the companion of w");
    named(lift_cmd, 5, "w d A B M");
    lift_cmd->callback([&] {
        action = [&](Report& r, const Options& o, const Workspace& ws) {
            const AlgebraEntry& a = ws.algebra(names[2]);
            const AlgebraEntry& b = ws.algebra(names[3]);
            const AlgebraEntry& m = ws.algebra(names[4]);
            const ColaxMorphism w = colax(ws.functor(names[0]).functor, a, b);
            const ColaxMorphism d = colax(ws.functor(names[1]).functor, a, m);
            const LaxPromorphism weight = companion_lax(w);
            Verdict rp = check_right_pseudo(weight, o.size_guard);
            rp.subject = names[3] + "(" + names[0] + ",id)";
            r.verdict(rp);
            if (!rp.pass)
                return;
            const RightColaxPromorphism j = right_colax_of(weight, o.size_guard);
            const std::string subject = "colim_" + names[0] + "(" + names[1] + ")";
            const auto base = pointwise_colim_search(j.prof, d.functor, limits(o));
            if (!base) {
                r.verdict(Verdict::fail("lift", subject, "no colimit in the base"));
                return;
            }
            const Lift lift = lift_colimit(j, d, *base, limits(o));
            functor_table(r, "l", lift.l.functor);
            const FinCat& mc = *m.algebra->cat();
            for (const auto& [z, mor] : lift.l.compositor)
                r.text("  l_" + render_seq(*b.algebra->cat(), z) + " = " + mc.mor_name(mor));
            for (const auto& c : lift.comparisons)
                r.text("  comparison arity " + std::to_string(c.arity) + ": " + (c.invertible.pass ? "invertible" : "not invertible"));
            Verdict v = lift.verdict;
            v.subject = subject;
            r.verdict(v);
            if (a.structure == "join" && b.structure == "join" && m.structure == "join") {
                Verdict route = coend_route_check(lift, j, d, *base);
                route.subject = subject;
                r.verdict(route);
            }
        };
    });

    auto* demo = app.add_subcommand("demo", "Worked examples");
    demo->require_subcommand(1);
    demo->add_subcommand("hopf", "Hopf monoid identities in integer matrices")->callback([&] {
        action = [](Report& r, const Options&, const Workspace&) { demo_hopf(r); };
    });
    demo->add_subcommand("sigma", "No decomposition of the comultiplication through permutations")->callback([&] {
        action = [](Report& r, const Options&, const Workspace&) { demo_sigma(r); };
    });
    demo->add_subcommand("poset", "Suprema as weighted colimits on seeded lattices")->callback([&] {
        action = [](Report& r, const Options& o, const Workspace&) { demo_poset(r, o); };
    });
    demo->add_subcommand("modmat", "Bimodule and profunctor composition on seeded profunctors")->callback([&] {
        action = [](Report& r, const Options& o, const Workspace&) { demo_modmat(r, o); };
    });

    Outcome result;
    std::ostringstream cli_out, cli_err;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, cli_out, cli_err);
        result.out = cli_out.str();
        result.err = cli_err.str();
        result.exit_code = code == 0 ? 0 : 2;
        return result;
    }

    Report report(opt);
    try {
        Workspace ws;
        if (!opt.doc.empty()) {
            try {
                ws = load_file(opt.doc);
            } catch (const ValidationError& e) {
                if (!validate->parsed())
                    throw;
                report.verdict(Verdict::fail("validate", opt.doc, e.what()));
                result.out = report.str();
                result.exit_code = 1;
                return result;
            }
        } else if (validate->parsed()) {
            throw UsageError("validate needs --doc");
        }
        action(report, opt, ws);
        result.out = report.str();
        result.exit_code = report.failed() ? 1 : 0;
    } catch (const Error& e) {
        if (is_input_error(e)) {
            result.out = report.str();
            result.err = std::string(e.kind()) + ": " + e.what() + "\n";
            result.exit_code = 2;
        } else {
            report.verdict(Verdict::fail("error", e.kind(), e.what()));
            result.out = report.str();
            result.exit_code = 1;
        }
    } catch (const std::exception& e) {
        result.out = report.str();
        result.err = std::string("error: ") + e.what() + "\n";
        result.exit_code = 2;
    }
    return result;
}

}  // namespace procat::cli
