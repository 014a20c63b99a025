#pragma once

#include "procat/equipment.hpp"

#include <map>
#include <memory>
#include <vector>

namespace procat {

// J |> K : B -|-> C for J: A -|-> B and K: A -|-> C. Fiber (b, c) holds the
// natural families t_a: J(a, b) -> K(a, c); t_{a'}(s.x) = s.t_a(x).
struct HomProfunctor {
    ProRef hom;
    ProRef j;
    ProRef k;
    std::vector<std::vector<ElemId>> family;  // family[t][j->col_pos(x)]
    std::map<std::vector<std::size_t>, ElemId> index;

    ElemId apply(ElemId t, ElemId x) const { return family[t][j->col_pos(x)]; }
    // Throws ValidationError when the family is not natural.
    ElemId lookup(ObId b, ObId c, const std::vector<ElemId>& fam) const;
};

// Throws BoundaryMismatch, or SizeGuardExceeded per fiber.
HomProfunctor left_hom(const ProRef& j, const ProRef& k, std::size_t guard = default_size_guard);

// K <| J : C -|-> A for J: A -|-> B and K: C -|-> B. Fiber (c, a) holds the
// natural families t_b: J(a, b) -> K(c, b); t(x.v) = t(x).v.
struct RightHomProfunctor {
    ProRef hom;
    ProRef j;
    ProRef k;
    std::vector<std::vector<ElemId>> family;  // family[t][j->row_pos(x)]

    ElemId apply(ElemId t, ElemId x) const { return family[t][j->row_pos(x)]; }
};

RightHomProfunctor right_hom(const ProRef& k, const ProRef& j,
                             std::size_t guard = default_size_guard);

// ev: J (.) (J |> K) => K
ProCell evaluation(const Composite& j_hom, const HomProfunctor& hom);
// phi: J (.) H => K  |->  H => J |> K, and back. Identity verticals throughout.
ProCell flat(const ProCell& phi, const Composite& jh, const HomProfunctor& hom);
ProCell sharp(const ProCell& psi, const Composite& jh, const HomProfunctor& hom);

struct HomIso {
    ProCell cell;
    Verdict verdict;  // per-fiber bijectivity
};

// For f: A -> C, H: A -|-> B and L: C -|-> E:
//   (C(id,f) (.) H) |> L  =>  H |> (C(f,id) (.) L)
HomIso companion_hom_iso(const FinFunctor& f, const ProRef& h, const ProRef& l,
                         std::size_t guard = default_size_guard);
// For g: D -> B, H: A -|-> B and K: A -|-> C:
//   B(g,id) (.) (H |> K)  =>  (H (.) B(id,g)) |> K
HomIso conjoint_hom_iso(const FinFunctor& g, const ProRef& h, const ProRef& k,
                        std::size_t guard = default_size_guard);
// For f: A -> C and K: C -|-> D: C(f,id) (.) K => K(f,id) and K(f,id) => C(id,f) |> K.
std::pair<HomIso, HomIso> filler_isos(const FinFunctor& f, const ProRef& k,
                                      std::size_t guard = default_size_guard);
// For H: A -|-> B, K: B -|-> C, M: A -|-> D: (H (.) K) |> M => K |> (H |> M).
HomIso curry_iso(const ProRef& h, const ProRef& k, const ProRef& m,
                 std::size_t guard = default_size_guard);
// U_A |> K => K, evaluation at identities.
HomIso yoneda_iso(const ProRef& k, std::size_t guard = default_size_guard);

// A normal lax functor of equipments, given by its action and compositor.
class LaxFunctor {
public:
    virtual ~LaxFunctor() = default;
    virtual CatRef map_cat(const CatRef& c) const = 0;
    virtual FinFunctor map_functor(const FinFunctor& f) const = 0;
    virtual ProRef map_prof(const ProRef& j) const = 0;
    // F(phi): FJ => FK along (Ff, Fg); fj and fk must be map_prof of phi's boundary.
    virtual ProCell map_cell(const ProCell& phi, const ProRef& fj, const ProRef& fk) const = 0;
    // FJ (.) FH => F(J (.) H); fjh must be map_prof(jh.result).
    virtual ProCell compositor(const Composite& fj_fh, const Composite& jh,
                               const ProRef& fjh) const = 0;
};

class IdentityLax final : public LaxFunctor {
public:
    CatRef map_cat(const CatRef& c) const override { return c; }
    FinFunctor map_functor(const FinFunctor& f) const override { return f; }
    ProRef map_prof(const ProRef& j) const override { return j; }
    ProCell map_cell(const ProCell& phi, const ProRef&, const ProRef&) const override { return phi; }
    ProCell compositor(const Composite& fj_fh, const Composite& jh,
                       const ProRef& fjh) const override;
};

struct HomCoherence {
    HomProfunctor inner;   // J |> H
    HomProfunctor target;  // FJ |> (FH (.) K)
    Composite src;         // F(J |> H) (.) K
    ProCell cell;          // F(J |> H) (.) K => FJ |> (FH (.) K)
};

// J: A -|-> B, H: A -|-> C, K: FC -|-> E.
HomCoherence lax_hom_coherence(const LaxFunctor& F, const ProRef& j, const ProRef& h,
                               const ProRef& k, std::size_t guard = default_size_guard);

}  // namespace procat
