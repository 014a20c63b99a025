#pragma once

#include "procat/closedhom.hpp"
#include "procat/colimits.hpp"
#include "procat/equipment.hpp"
#include "procat/fincat.hpp"
#include "procat/relkit.hpp"
#include "procat/verdict.hpp"

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace procat {

// Free strict monoidal (M) or free symmetric strict monoidal (S) construction.
enum class MonadKind { M, S };
const char* kind_name(MonadKind k);

struct ArityBudget {
    std::size_t n = 3;  // longest sequence
    ArityBudget() = default;
    explicit ArityBudget(std::size_t n);  // throws ValidationError when n == 0
};

using Seq = std::vector<std::size_t>;
using Seq2 = std::vector<Seq>;
using Perm = std::vector<std::size_t>;  // (x.p)_i = x_{p[i]}

Perm identity_perm(std::size_t n);
Perm compose_perm(const Perm& s, const Perm& t);  // i |-> s[t[i]]
Perm inverse_perm(const Perm& p);
std::vector<Perm> all_perms(std::size_t n);  // lexicographic
bool is_identity_perm(const Perm& p);

template <class T>
std::vector<T> permute(const std::vector<T>& x, const Perm& p)
{
    std::vector<T> out;
    out.reserve(p.size());
    for (std::size_t i : p)
        out.push_back(x[i]);
    return out;
}

template <class T>
std::vector<T> concat(const std::vector<std::vector<T>>& xs)
{
    std::vector<T> out;
    for (const auto& x : xs)
        out.insert(out.end(), x.begin(), x.end());
    return out;
}

// An arrow of a sequence construction: part i relates position perm[i] of the
// source to position i of the target. Under M the permutation is the identity.
template <class P>
struct SeqArrowT {
    Perm perm;
    std::vector<P> parts;

    std::size_t size() const noexcept { return parts.size(); }
    auto operator<=>(const SeqArrowT&) const = default;
};
using SeqArrow = SeqArrowT<std::size_t>;
using SeqArrow2 = SeqArrowT<SeqArrow>;

// g after f: (s, f) then (t, g) gives (s o t, inner(g_i, f_{t i})).
template <class P, class Inner>
SeqArrowT<P> seq_compose(const SeqArrowT<P>& g, const SeqArrowT<P>& f, Inner inner)
{
    SeqArrowT<P> out{compose_perm(f.perm, g.perm), {}};
    out.parts.reserve(g.parts.size());
    for (std::size_t i = 0; i < g.parts.size(); ++i)
        out.parts.push_back(inner(g.parts[i], f.parts[g.perm[i]]));
    return out;
}

template <class P>
SeqArrowT<P> singleton(const P& p)
{
    return SeqArrowT<P>{{0}, {p}};
}

template <class P>
SeqArrowT<P> plain(std::vector<P> parts)
{
    return SeqArrowT<P>{identity_perm(parts.size()), std::move(parts)};
}

// Multiplication: blocks are concatenated, and position off(i) + j of the
// target reads position off'(perm[i]) + perm_i[j] of the source.
template <class P>
SeqArrowT<P> flatten(const SeqArrowT<SeqArrowT<P>>& a)
{
    const std::size_t n = a.parts.size();
    std::vector<std::size_t> src_len(n);
    for (std::size_t i = 0; i < n; ++i)
        src_len[a.perm[i]] = a.parts[i].size();
    std::vector<std::size_t> src_off(n + 1, 0);
    for (std::size_t k = 0; k < n; ++k)
        src_off[k + 1] = src_off[k] + src_len[k];
    SeqArrowT<P> out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < a.parts[i].size(); ++j) {
            out.perm.push_back(src_off[a.perm[i]] + a.parts[i].perm[j]);
            out.parts.push_back(a.parts[i].parts[j]);
        }
    return out;
}

template <class P, class F>
auto map_parts(const SeqArrowT<P>& a, F f) -> SeqArrowT<decltype(f(a.parts[0]))>
{
    SeqArrowT<decltype(f(a.parts[0]))> out{a.perm, {}};
    out.parts.reserve(a.parts.size());
    for (const P& p : a.parts)
        out.parts.push_back(f(p));
    return out;
}

std::string render_perm(const Perm& p);
std::string render_seq(const FinCat& c, const Seq& x);
std::string render_seq2(const FinCat& c, const Seq2& x);

// Block-length lists with at most budget blocks and total at most budget:
// the shapes of in-budget double sequences.
std::vector<Seq> shapes_in_budget(std::size_t budget);
std::vector<Seq> all_sequences(std::size_t objects, std::size_t length);

// The category T A restricted to sequences with lengths in [min_len, max_len].
class SeqCat {
public:
    SeqCat(MonadKind kind, CatRef base, std::size_t min_len, std::size_t max_len);

    MonadKind kind() const noexcept { return data_->kind; }
    const CatRef& base() const noexcept { return data_->base; }
    const CatRef& cat() const noexcept { return data_->cat; }
    std::size_t min_len() const noexcept { return data_->min_len; }
    std::size_t max_len() const noexcept { return data_->max_len; }

    const Seq& seq(ObId x) const { return data_->seqs[x]; }
    // Throws ArityBudgetExceeded outside the length range, UnknownName otherwise.
    ObId ob(const Seq& x) const;
    const SeqArrow& arrow(MorId m) const { return data_->arrows[m]; }
    MorId mor(const SeqArrow& a) const;
    // sigma_x: x -> x.sigma under S.
    MorId permutation(const Seq& x, const Perm& s) const;

private:
    struct Data {
        MonadKind kind;
        CatRef base;
        std::size_t min_len, max_len;
        CatRef cat;
        std::vector<Seq> seqs;
        std::map<Seq, ObId> ob_index;
        std::vector<SeqArrow> arrows;
        std::map<SeqArrow, MorId> mor_index;
    };
    std::shared_ptr<const Data> data_;
};

SeqCat apply_M(const CatRef& a, ArityBudget budget);
SeqCat apply_S(const CatRef& a, ArityBudget budget);
SeqCat arity_slice(MonadKind kind, const CatRef& a, std::size_t n);

// T J between two sequence categories of the same kind and length range.
class SeqProf {
public:
    SeqProf(const ProRef& j, const SeqCat& left, const SeqCat& right);

    const ProRef& base() const noexcept { return data_->base; }
    const ProRef& prof() const noexcept { return data_->prof; }
    const SeqCat& left() const noexcept { return data_->left; }
    const SeqCat& right() const noexcept { return data_->right; }
    const SeqArrow& arrow(ElemId e) const { return data_->arrows[e]; }
    ElemId elem(const SeqArrow& a) const;  // throws UnknownName

private:
    struct Data {
        ProRef base;
        SeqCat left, right;
        ProRef prof;
        std::vector<SeqArrow> arrows;
        std::map<SeqArrow, ElemId> index;
    };
    std::shared_ptr<const Data> data_;
};

SeqProf apply_M(const ProRef& j, ArityBudget budget);
SeqProf apply_S(const ProRef& j, ArityBudget budget);

FinFunctor seq_functor(const FinFunctor& f, const SeqCat& src, const SeqCat& tgt);
ProCell seq_cell(const ProCell& phi, const SeqProf& src, const SeqProf& tgt);

// T^2 A restricted to double sequences of the given outer length and total.
class SeqCat2 {
public:
    SeqCat2(MonadKind kind, CatRef base, std::size_t outer, std::size_t total);

    MonadKind kind() const noexcept { return data_->kind; }
    const CatRef& cat() const noexcept { return data_->cat; }
    const Seq2& seq(ObId x) const { return data_->seqs[x]; }
    ObId ob(const Seq2& x) const;
    const SeqArrow2& arrow(MorId m) const { return data_->arrows[m]; }
    MorId mor(const SeqArrow2& a) const;
    std::size_t total() const noexcept { return data_->total; }

private:
    struct Data {
        MonadKind kind;
        CatRef base;
        std::size_t outer, total;
        CatRef cat;
        std::vector<Seq2> seqs;
        std::map<Seq2, ObId> ob_index;
        std::vector<SeqArrow2> arrows;
        std::map<SeqArrow2, MorId> mor_index;
    };
    std::shared_ptr<const Data> data_;
};

class SeqProf2 {
public:
    SeqProf2(const ProRef& j, const SeqCat2& left, const SeqCat2& right);

    const ProRef& prof() const noexcept { return data_->prof; }
    const SeqCat2& left() const noexcept { return data_->left; }
    const SeqCat2& right() const noexcept { return data_->right; }
    const SeqArrow2& arrow(ElemId e) const { return data_->arrows[e]; }

private:
    struct Data {
        ProRef base;
        SeqCat2 left, right;
        ProRef prof;
        std::vector<SeqArrow2> arrows;
    };
    std::shared_ptr<const Data> data_;
};

// The monad structure on slices: mu concatenates, eta forms singletons and
// theta includes M into S at the identity permutation.
struct MonadInstance {
    MonadKind kind = MonadKind::M;
    ArityBudget budget;

    FinFunctor mu(const SeqCat2& src, const SeqCat& tgt) const;
    ProCell mu(const SeqProf2& src, const SeqProf& tgt) const;
    FinFunctor eta(const SeqCat& tgt) const;   // base -> slice containing length 1
    ProCell eta(const SeqProf& tgt) const;
};
FinFunctor theta_functor(const SeqCat& m_slice, const SeqCat& s_slice);
ProCell theta_cell(const SeqProf& m_prof, const SeqProf& s_prof);

// Associativity and unit laws of mu and eta on objects, morphisms and elements
// of T^3 and T^2 within the budget, plus the cell axioms of mu_J and eta_J.
Verdict check_monad_laws(MonadKind kind, const ProRef& j, ArityBudget budget);

// Every component of rho(mu_J) and rho(eta_J) is a bijection, computed as a
// quotient by the zig-zag relation over mediating sequences.
Verdict check_right_suitable(MonadKind kind, const ProRef& j, ArityBudget budget,
                             std::size_t guard = default_size_guard);
// Every component of rho(theta_J) is a bijection.
Verdict theta_check(const ProRef& j, ArityBudget budget, std::size_t guard = default_size_guard);

// A normal colax T-algebra: tensors of sequences up to the budget, associator
// components a(concat x) -> a(a x_1, ..., a x_n) and, under S, symmetries
// a(x) -> a(x.sigma).
class ColaxAlgebra {
public:
    struct Tables {
        std::map<Seq, ObId> tensor_ob;
        std::map<Seq, MorId> tensor_mor;  // keyed by the parts of an M-arrow
        std::map<Seq2, MorId> assoc;
        std::map<std::pair<Perm, Seq>, MorId> symmetry;
    };

    // Throws ValidationError on missing or ill-typed entries and when the
    // unary tensor is not the identity.
    ColaxAlgebra(MonadKind kind, CatRef cat, ArityBudget budget, Tables tables);

    MonadKind kind() const noexcept { return kind_; }
    const CatRef& cat() const noexcept { return cat_; }
    std::size_t budget() const noexcept { return budget_.n; }
    const Tables& tables() const noexcept { return tables_; }

    ObId tensor(const Seq& x) const;  // throws ArityBudgetExceeded
    MorId tensor_parts(const Seq& parts) const;
    // The action on a T-arrow: its tensor after the symmetry of its permutation.
    MorId tensor(const SeqArrow& a) const;
    MorId assoc(const Seq2& x) const;
    MorId symmetry(const Perm& s, const Seq& x) const;

private:
    MonadKind kind_;
    CatRef cat_;
    ArityBudget budget_;
    Tables tables_;
};
using AlgRef = std::shared_ptr<const ColaxAlgebra>;

Verdict validate_algebra(const ColaxAlgebra& a);
bool is_pseudo(const ColaxAlgebra& a);

// Thin algebra on a preorder with the given tensor of sequences; the structure
// morphisms are the unique ones. Throws AxiomFailure when one is missing.
AlgRef thin_algebra(const Preorder& p, MonadKind kind, ArityBudget budget,
                    const std::function<std::size_t(const Seq&)>& tensor);
// Tensor = join, unit = bottom. Throws SupMissing.
AlgRef join_algebra(const Preorder& p, MonadKind kind, ArityBudget budget);
// One object, tensor of morphisms = composite; requires commutativity.
AlgRef monoid_algebra(const CatRef& c, MonadKind kind, ArityBudget budget);

struct ColaxMorphism {
    AlgRef src;
    AlgRef tgt;
    FinFunctor functor;
    std::map<Seq, MorId> compositor;  // f(a x) -> b(f x)

    MorId at(const Seq& x) const;  // throws ArityBudgetExceeded
};

Verdict validate_morphism(const ColaxMorphism& f);
bool is_pseudo(const ColaxMorphism& f);
ColaxMorphism identity_morphism(const AlgRef& a);
// Identity compositor; throws AxiomFailure unless f commutes with the tensors.
ColaxMorphism strict_morphism(const FinFunctor& f, const AlgRef& src, const AlgRef& tgt);
// The unique compositor between thin algebras; throws AxiomFailure.
ColaxMorphism thin_morphism(const FinFunctor& f, const AlgRef& src, const AlgRef& tgt);
// (g f)_x = g_{f x} o g(f_x)
ColaxMorphism compose(const ColaxMorphism& g, const ColaxMorphism& f);

// J: A -|-> B with J_x: J(x_1, y_1) x ... x J(x_n, y_n) -> J(a x, b y).
struct LaxPromorphism {
    ProRef prof;
    AlgRef left;
    AlgRef right;
    std::map<Seq, ElemId> structure;  // keyed by element sequences

    ElemId apply(const Seq& elems) const;  // throws ArityBudgetExceeded
    // For a T J element (sigma, j): sigma_x . J_x(j).
    ElemId apply(const SeqArrow& elems) const;
};

Verdict validate_lax(const LaxPromorphism& j);
LaxPromorphism unit_lax(const AlgRef& a);
// On C(f, id): J_x(s_1, ..., s_n) = (s_1 x ... x s_n) o f_x.
LaxPromorphism companion_lax(const ColaxMorphism& f);
// f_x = J_x(id, ..., id); throws BoundaryMismatch unless j lives on C(f, id).
ColaxMorphism lax_to_colax(const LaxPromorphism& j, const FinFunctor& f);

// The canonical maps from the coends over y in T_n A of A(x, a y) x T J(y, z)
// to J(x, b z) are bijective at every x and every z of length at most the budget.
Verdict check_right_pseudo(const LaxPromorphism& j, std::size_t guard = default_size_guard);

// A right splitting (y, f: x -> a y, j: y -> z in T J) of an element of J(x, b z).
struct Splitting {
    Seq mediator;
    MorId map = 0;
    SeqArrow parts;

    auto operator<=>(const Splitting&) const = default;
};

struct RightColaxPromorphism {
    ProRef prof;
    AlgRef left;
    AlgRef right;
    std::map<std::pair<ElemId, Seq>, Splitting> split;  // (j in J(x, b z), z)

    const Splitting& at(ElemId j, const Seq& z) const;  // throws ArityBudgetExceeded
};

// Naturality, associativity and unit axioms up to the coend relation.
Verdict validate_right_colax(const RightColaxPromorphism& j,
                             std::size_t guard = default_size_guard);
// The splitting map into the coends is bijective.
Verdict is_right_pseudo(const RightColaxPromorphism& j, std::size_t guard = default_size_guard);
RightColaxPromorphism unit_right_colax(const AlgRef& a);
// Splittings picked as the minimal representatives of the preimages of the
// canonical maps. Throws ValidationError unless j is right pseudo.
RightColaxPromorphism right_colax_of(const LaxPromorphism& j,
                                     std::size_t guard = default_size_guard);

struct RightColaxComposite {
    Composite composite;
    RightColaxPromorphism result;
};
// Split by H, then by J, then pair the parts. Throws BoundaryMismatch.
RightColaxComposite rc_compose(const RightColaxPromorphism& j, const RightColaxPromorphism& h);

struct RightColaxRestriction {
    Restriction restriction;
    RightColaxPromorphism result;
};
// K(id, g) along a strict g. Throws AxiomFailure unless g is strict.
RightColaxRestriction restrict_right_colax(const RightColaxPromorphism& k, const ColaxMorphism& g);

// phi: J => K along colax (f, g): both ways of splitting phi(j) . g_z agree
// in the coend over T C, at every x, z and j.
Verdict tcell_check(const ProCell& phi, const RightColaxPromorphism& j,
                    const RightColaxPromorphism& k, const ColaxMorphism& f,
                    const ColaxMorphism& g, std::size_t guard = default_size_guard);

struct LeftHomLax {
    HomProfunctor hom;
    LaxPromorphism lax;
    Verdict verdict;
};
// (J |> K)_x(t)(j) = f . K_x(t(j')) where (w, f, j') splits j.
LeftHomLax lefthom_lax_structure(const RightColaxPromorphism& j, const LaxPromorphism& k,
                                 std::size_t guard = default_size_guard);

// The unique m: c.apex(b) -> target with m o unit(e) = cocone(e) for every
// e in J(-, b). Throws FactorizationFailure.
MorId factor_cocone(const ColimitCandidate& c, ObId b, ObId target,
                    const std::function<MorId(ElemId)>& cocone);

// colim_{T_n J}(m_n o T_n d) => m_n o T_n(colim_J d) at one arity.
struct TComparison {
    std::size_t arity = 0;
    SeqCat left_slice;
    SeqCat right_slice;
    ColimitCandidate tcolimit;
    std::vector<MorId> comp;  // per object of the right slice
    Verdict invertible;
};
// Searches the T-colimit; throws MissingTColimit when none exists.
TComparison canonical_comparison(const ColimitCandidate& base, const AlgRef& target,
                                 std::size_t arity, const SearchLimits& lim = {});

struct TransformationComparison {
    std::vector<MorId> comp;  // per object of F B
    Verdict invertible;
    Verdict right_invertible;  // of xi_J
    Verdict verdict;           // right invertibility implies invertibility
};
// xi: F J => G J along (xi_A, xi_B); zeta a G J-colimit of e, theta an
// F J-colimit of e o xi_A.
TransformationComparison transformation_comparison(const ProCell& xi,
                                                   const ColimitCandidate& zeta,
                                                   const ColimitCandidate& theta);

struct Lift {
    ColaxMorphism l;
    std::vector<TComparison> comparisons;  // arities 0..N
    Verdict axioms;
    Verdict tcell;
    Verdict invertibility;
    Verdict verdict;
};
// l_z is the factorisation through the unit of the cocone
// j |-> (x) eta(j') o d_y o d(f) over the splittings (y, f, j') of j.
// Throws ValidationError unless base is a colimit, MissingTColimit,
// FactorizationFailure.
Lift lift_colimit(const RightColaxPromorphism& j, const ColaxMorphism& d,
                  const ColimitCandidate& base, const SearchLimits& lim = {});
// For a thin target with joins: l(b z) = sup d x over J(x, b z) is reached by
// the chain of coend formulas, each step a valid inequality, and its endpoints
// are the source and target of l_z.
Verdict coend_route_check(const Lift& lift, const RightColaxPromorphism& j,
                          const ColaxMorphism& d, const ColimitCandidate& base);

struct CommaLift {
    DoubleComma comma;
    AlgRef algebra;
    ColaxMorphism proj_a;
    ColaxMorphism proj_c;
    Verdict verdict;
};
// Tensor of triples (a_i, x_i, c_i) is (a a, J_x(x) . f_c^-1, c c); the
// associator is the pair of base associators.
CommaLift comma_lift(const LaxPromorphism& j, const ColaxMorphism& f,
                     std::size_t guard = default_size_guard);

}  // namespace procat
