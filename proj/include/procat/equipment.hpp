#pragma once

#include "procat/fincat.hpp"
#include "procat/setkit.hpp"
#include "procat/verdict.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace procat {

using ElemId = std::size_t;

// A profunctor J: A -|-> B. Elements get global ids fiber by fiber, with
// fibers ordered (a, b) lexicographically, so each row J(a, -) is contiguous.
// s . j for s: a' -> a lands in J(a', b); j . t for t: b -> b' lands in J(a, b').
class Profunctor {
public:
    using Fibers = std::vector<std::vector<std::vector<std::string>>>;  // [a][b] -> atoms
    // Indices refer to the atom lists as passed in, which are sorted afterwards.
    using LeftFn = std::function<std::size_t(MorId s, ObId b, std::size_t i)>;
    using RightFn = std::function<std::size_t(ObId a, std::size_t i, MorId t)>;

    Profunctor() = default;
    // Throws ValidationError on duplicate atoms or out-of-range action values.
    Profunctor(CatRef left, CatRef right, Fibers fibers, const LeftFn& lact, const RightFn& ract);

    const CatRef& left() const noexcept { return left_; }
    const CatRef& right() const noexcept { return right_; }
    std::size_t size() const noexcept { return a_of_.size(); }

    const FinSet& fiber(ObId a, ObId b) const { return fibers_[a * nb_ + b]; }
    std::size_t fiber_size(ObId a, ObId b) const { return fiber(a, b).size(); }
    ElemId elem(ObId a, ObId b, std::size_t i) const { return offset_[a * nb_ + b] + i; }
    std::pair<ElemId, ElemId> fiber_range(ObId a, ObId b) const
    {
        return {offset_[a * nb_ + b], offset_[a * nb_ + b + 1]};
    }
    ObId a_of(ElemId e) const { return a_of_[e]; }
    ObId b_of(ElemId e) const { return b_of_[e]; }
    std::size_t local(ElemId e) const { return e - offset_[a_of_[e] * nb_ + b_of_[e]]; }
    const std::string& name(ElemId e) const { return fiber(a_of_[e], b_of_[e])[local(e)]; }
    std::string full_name(ElemId e) const;  // "atom@(a,b)"

    ElemId act_left(MorId s, ElemId e) const;   // throws SourceMismatch
    ElemId act_right(ElemId e, MorId t) const;  // throws SourceMismatch
    ElemId act_left_unchecked(MorId s, ElemId e) const { return lact_[e][left_->in_pos(s)]; }
    ElemId act_right_unchecked(ElemId e, MorId t) const { return ract_[e][right_->out_pos(t)]; }

    // Row J(a, -) is the contiguous range [row_begin(a), row_begin(a+1)).
    ElemId row_begin(ObId a) const { return offset_[a * nb_]; }
    std::size_t row_pos(ElemId e) const { return e - row_begin(a_of_[e]); }
    // Column J(-, b), ascending.
    const std::vector<ElemId>& col(ObId b) const { return col_[b]; }
    std::size_t col_pos(ElemId e) const { return col_pos_[e]; }

    friend bool operator==(const Profunctor& x, const Profunctor& y);

private:
    CatRef left_, right_;
    std::size_t nb_ = 0;
    std::vector<FinSet> fibers_;
    std::vector<std::size_t> offset_;  // one past the end is the total size
    std::vector<ObId> a_of_, b_of_;
    std::vector<std::vector<ElemId>> lact_;  // [e][in_pos(s)]
    std::vector<std::vector<ElemId>> ract_;  // [e][out_pos(t)]
    std::vector<std::vector<ElemId>> col_;
    std::vector<std::size_t> col_pos_;
};

using ProRef = std::shared_ptr<const Profunctor>;

ProRef make_prof(Profunctor p);
bool same_prof(const ProRef& x, const ProRef& y);

Verdict validate_prof(const Profunctor& j);

ProRef unit_prof(const CatRef& a);
// Element of U_C for a morphism m, and back.
ElemId unit_elem(const Profunctor& u, MorId m);
MorId unit_mor(const Profunctor& u, ElemId e);
// Elements of a restriction U_C(f, g), whose fiber (x, y) is C(f x, g y).
MorId restricted_mor(const FinCat& c, const Profunctor& r, const FinFunctor& f,
                     const FinFunctor& g, ElemId e);
// Throws BoundaryMismatch when m does not lie in C(f x, g y).
ElemId restricted_elem(const FinCat& c, const Profunctor& r, const FinFunctor& f,
                       const FinFunctor& g, ObId x, ObId y, MorId m);
ProRef empty_prof(const CatRef& a, const CatRef& b);
// J^op: B^op -|-> A^op with the same fibers; an involution up to equality.
ProRef dual_prof(const ProRef& j);

// A cell J => K along vertical functors f (left) and g (right); comp maps
// elements of J(a, b) to elements of K(fa, gb).
struct ProCell {
    ProRef src;
    ProRef tgt;
    FinFunctor f;
    FinFunctor g;
    std::vector<ElemId> comp;
};

bool operator==(const ProCell& x, const ProCell& y);
Verdict validate_cell(const ProCell& c);
ProCell identity_cell(const ProRef& j);
// Vertical identity of a functor: U_A => U_B, s |-> f(s).
ProCell unit_cell(const FinFunctor& f);
// Vertical cell U_A => U_B along (f, g) of a transformation f => g.
ProCell nat_cell(const NatTransf& t);
// psi after phi; throws BoundaryMismatch.
ProCell vcompose(const ProCell& psi, const ProCell& phi);
// Inverse of a cell with identity verticals; throws ValidationError if not bijective.
ProCell inverse(const ProCell& c);
// Per-fiber bijectivity; the witness names the first offending fiber.
Verdict fiberwise_bijective(const ProCell& c, const std::string& check);

// Horizontal composite with the data needed to address its elements.
struct Composite {
    ProRef result;
    ProRef first;
    ProRef second;
    std::vector<std::vector<ElemId>> cls;         // cls[j][second->row_pos(h)]
    std::vector<std::pair<ElemId, ElemId>> rep;  // result element -> minimal pair

    ElemId of(ElemId j, ElemId h) const { return cls[j][second->row_pos(h)]; }
};

// Fiber (a, c) is the quotient of the disjoint union over b of J(a,b) x H(b,c)
// by (j.u, h) ~ (j, u.h). Pairs render as "(j,b,h)"; each class is named by its
// minimal rendering. Throws BoundaryMismatch.
Composite hcomp(const ProRef& j, const ProRef& h);

// phi (.) psi on representatives; throws BoundaryMismatch.
ProCell hcomp_cells(const ProCell& phi, const ProCell& psi, const Composite& src,
                    const Composite& tgt);

ProCell left_unitor(const Composite& uj);  // U_A (.) J => J
ProCell left_unitor_inv(const Composite& uj);
ProCell right_unitor(const Composite& ju);  // J (.) U_B => J
ProCell right_unitor_inv(const Composite& ju);
// (J (.) H) (.) K => J (.) (H (.) K)
ProCell associator(const Composite& jh, const Composite& jh_k, const Composite& hk,
                   const Composite& j_hk);

struct Restriction {
    ProRef prof;     // K(f, g)
    ProCell filler;  // K(f, g) => K along (f, g), identity on atoms
};

// Throws BoundaryMismatch unless f lands in K's left category and g in its right one.
Restriction restrict(const ProRef& k, const FinFunctor& f, const FinFunctor& g);
// phi: J => K along (f h, g k) factors as J => K(f, g) along (h, k).
ProCell factor_through_filler(const ProCell& phi, const Restriction& r, const FinFunctor& h,
                              const FinFunctor& k);
ProCell factor_through_filler(const ProCell& phi, const Restriction& r);

struct CompanionPair {
    FinFunctor f;              // A -> B
    ProRef companion;          // B(f, id): A -|-> B
    ProCell eps;               // B(f, id) => U_B along (f, id)
    ProCell eta;               // U_A => B(f, id) along (id, f)
    ProRef conjoint;           // B(id, f): B -|-> A
    ProCell eps_c;             // B(id, f) => U_B along (id, f)
    ProCell eta_c;             // U_A => B(id, f) along (f, id)
};

CompanionPair companion(const FinFunctor& f);
// Vertical and horizontal identities for both the companion and the conjoint.
Verdict check_companion_identities(const CompanionPair& c);

struct CompanionAdjunction {
    Composite comp_conj;  // B(f,id) (.) B(id,f)
    Composite conj_comp;  // B(id,f) (.) B(f,id)
    ProCell unit;         // U_A => B(f,id) (.) B(id,f)
    ProCell counit;       // B(id,f) (.) B(f,id) => U_B
};

CompanionAdjunction companion_adjunction(const CompanionPair& c);
Verdict check_triangle_identities(const CompanionPair& c, const CompanionAdjunction& adj);

// B(f,id) (.) C(g,id) => C(g f, id) for f: A -> B, g: B -> C.
struct CompanionCompositor {
    Composite src;
    ProRef tgt;
    ProCell cell;
};
CompanionCompositor companion_compositor(const FinFunctor& f, const FinFunctor& g);

// For phi: J => K along (f, g) with J: A -|-> B, K: C -|-> D:
//   lambda phi: J (.) D(g,id) => C(f,id) (.) K
//   rho phi:    C(id,f) (.) J => K (.) D(id,g)
struct SideCell {
    ProCell cell;
    Composite src;
    Composite tgt;
    FinFunctor f;
    FinFunctor g;
};

SideCell lambda_cell(const ProCell& phi);
SideCell rho_cell(const ProCell& phi);
// Recover phi from a (possibly different) cell with the boundary recorded in s.
ProCell lambda_inv(const SideCell& s);
ProCell rho_inv(const SideCell& s);

Verdict is_left_invertible(const ProCell& phi);
Verdict is_right_invertible(const ProCell& phi);

// All cells J => K along (f, g), by propagation over generators of J.
// Throws SizeGuardExceeded when the generator search space exceeds guard.
void for_each_cell(const ProRef& j, const ProRef& k, const FinFunctor& f, const FinFunctor& g,
                   std::size_t guard, const std::function<bool(const ProCell&)>& visit);
std::vector<ProCell> all_cells(const ProRef& j, const ProRef& k, const FinFunctor& f,
                               const FinFunctor& g, std::size_t guard);

inline constexpr std::size_t default_size_guard = 1'000'000;

}  // namespace procat
