#pragma once

#include "procat/colimits.hpp"
#include "procat/equipment.hpp"
#include "procat/fincat.hpp"
#include "procat/setkit.hpp"
#include "procat/verdict.hpp"

#include <cstddef>
#include <memory>
#include <vector>

namespace procat {

// A matrix of finite sets indexed by rows x cols.
struct SetMatrix {
    FinSet rows;
    FinSet cols;
    std::vector<std::vector<FinSet>> entry;  // entry[r][c]

    const FinSet& at(std::size_t r, std::size_t c) const { return entry[r][c]; }
};

// Singleton "*" on the diagonal.
SetMatrix unit_matrix(const FinSet& index);
// entry(a, e) = the disjoint union over b of J(a, b) x H(b, e), atoms "(x,b,y)".
// Throws IndexMismatch.
SetMatrix mat_hcomp(const SetMatrix& j, const SetMatrix& h);

// A monoid in Mat(Set) on the index set of base.
struct MatMonoid {
    SetMatrix base;
    // mult[(a * n + b) * n + c][s * |A(b, c)| + t] in A(a, c) for s in A(a, b), t in A(b, c):
    // the composite "t after s".
    std::vector<std::vector<std::size_t>> mult;
    std::vector<std::size_t> unit;  // unit[a] in A(a, a)

    std::size_t n() const { return base.rows.size(); }
    std::size_t multiply(std::size_t a, std::size_t b, std::size_t c, std::size_t s,
                         std::size_t t) const
    {
        return mult[(a * n() + b) * n() + c][s * base.at(b, c).size() + t];
    }
};
using MonoidRef = std::shared_ptr<const MatMonoid>;

// Throws AxiomFailure naming the offending indices.
void validate_monoid(const MatMonoid& m);
CatRef monoid_to_fincat(const MatMonoid& m);
// Entries are the morphism labels.
MatMonoid fincat_to_monoid(const FinCat& c);

// A bimodule J: A -|-> B between monoids.
struct Bimodule {
    MonoidRef left;
    MonoidRef right;
    SetMatrix mat;
    // left_act[(a2 * na + a) * nb + b][s * |J(a, b)| + x] in J(a2, b), s in A(a2, a)
    std::vector<std::vector<std::size_t>> left_act;
    // right_act[(a * nb + b) * nb + b2][x * |B(b, b2)| + t] in J(a, b2)
    std::vector<std::vector<std::size_t>> right_act;

    std::size_t act_left(std::size_t a2, std::size_t a, std::size_t b, std::size_t s,
                         std::size_t x) const;
    std::size_t act_right(std::size_t a, std::size_t b, std::size_t b2, std::size_t x,
                          std::size_t t) const;
};
void validate_bimodule(const Bimodule& j);  // throws AxiomFailure
ProRef bimodule_to_profunctor(const Bimodule& j);
Bimodule profunctor_to_bimodule(const Profunctor& p);

// Reflexive coequaliser of J x B x H over the two actions, fiber by fiber;
// classes are named by their minimal "(x,b,y)" atom. Throws BoundaryMismatch.
Bimodule mod_hcomp(const Bimodule& j, const Bimodule& h);
// Per fiber, [(x, y)] |-> the class of (x, y) in the profunctor composite is a
// bijection commuting with both actions.
Verdict check_mod_prof_agreement(const Bimodule& j, const Bimodule& h);

// Spans of finite sets composed by the canonical pullback.
struct Span {
    FinSet apex;
    FinMap left;
    FinMap right;
};
Span span_compose(const Span& s, const Span& t);  // throws TargetMismatch
// (S;T);U => S;(T;U) as the induced map of apexes; bijective.
FinMap span_associator(const Span& s, const Span& t, const Span& u);

// A category internal to Set with a single set of morphisms.
struct InternalCat {
    FinSet objects;
    FinSet morphisms;
    FinMap src;
    FinMap tgt;
    FinMap ident;       // objects -> morphisms
    Pullback composable;  // pairs (f, g) with tgt f = src g
    FinMap comp;        // composable -> morphisms, (f, g) |-> g after f
};
void validate_internal(const InternalCat& c);  // throws AxiomFailure
InternalCat fincat_to_internal(const FinCat& c);
// Labels are the morphism atoms of the internal category.
CatRef internal_to_fincat(const InternalCat& c);

struct InternalFunctor {
    FinMap on_objects;
    FinMap on_morphisms;
};
InternalFunctor functor_to_internal(const FinFunctor& f, const InternalCat& src,
                                    const InternalCat& tgt);

// Elements over A0 x B0 with actions of A on the left and B on the right.
struct InternalProf {
    FinSet elements;
    FinMap left_base;   // elements -> A0
    FinMap right_base;  // elements -> B0
    Pullback left_pairs;   // (s, x) with tgt s = left_base x
    FinMap left_act;
    Pullback right_pairs;  // (x, t) with right_base x = src t
    FinMap right_act;
};
// Element atoms are the profunctor's full names.
InternalProf prof_to_internal(const Profunctor& p, const InternalCat& a, const InternalCat& b);

// phi0: A0 -> K over (f0, g0) with f(s).phi0(d1 s) = phi0(d0 s).g(s) gives the
// cell A -> K, s |-> f(s).phi0(tgt s). Throws NaturalityFailure.
FinMap internal_transformation(const InternalCat& a, const InternalFunctor& f,
                               const InternalFunctor& g, const InternalProf& k,
                               const FinMap& phi0);
// The component phi o e of a cell A -> K.
FinMap transformation_component(const InternalCat& a, const FinMap& cell);
// phi0 recovered from a cell U_A => K on the translated data.
FinMap procell_component(const ProCell& c, const InternalCat& a, const InternalProf& k);
// The same cell read as U_A => K along (f, g) on the translated data.
ProCell internal_cell_to_procell(const InternalCat& a, const FinMap& cell, const ProRef& k,
                                 const FinFunctor& f, const FinFunctor& g);

// Objects (x, c) over the wide pullback A0 x_A0 J x_B0 C0, morphisms the
// pullback of the left and right actions on it.
struct InternalComma {
    InternalCat cat;
    InternalFunctor proj_a;
    InternalFunctor proj_c;
    FinMap pi;  // morphisms -> J
    std::vector<std::pair<std::size_t, std::size_t>> object;  // (x, c) per object
    std::vector<std::pair<std::size_t, std::size_t>> arrow;   // (u, v) per morphism
};
InternalComma internal_comma(const InternalProf& j, const InternalCat& a, const InternalCat& c,
                             const InternalCat& b, const InternalFunctor& f);
// The internal comma with J and f read back in Prof.
DoubleComma internal_comma_as_double_comma(const ProRef& j, const FinFunctor& f);
// The canonical correspondence between the two constructions is an
// isomorphism of categories preserving the projections and pi.
Verdict check_internal_comma_agreement(const ProRef& j, const FinFunctor& f,
                                       std::size_t probe_depth = 6);

// Right invertibility of the underlying Mat(Set) cell implies right
// invertibility of the cell between bimodules.
Verdict rho_bimodule_check(const ProCell& phi);
// The Mat(Set) version of rho: the union over a in f^-1(c) of J(a, b) -> K(c, g b).
Verdict underlying_right_invertible(const ProCell& phi);

}  // namespace procat
