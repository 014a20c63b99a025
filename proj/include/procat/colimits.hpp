#pragma once

#include "procat/closedhom.hpp"
#include "procat/equipment.hpp"
#include "procat/fincat.hpp"
#include "procat/verdict.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace procat {

struct SearchLimits {
    std::size_t functor_budget = 100'000;
    std::size_t size_guard = default_size_guard;
};

// A weight J: A -|-> B, a diagram d: A -> M, an apex l: B -> M and a unit
// J => U_M along (d, l).
struct ColimitCandidate {
    ProRef weight;
    FinFunctor diagram;
    FinFunctor apex;
    ProCell unit;
};

// Throws BoundaryMismatch unless the unit has the shape J => U_M along (d, l).
void check_candidate_shape(const ColimitCandidate& c);

// M(l, id) => J |> M(d, id), obtained from the left cell of the unit.
ProCell colimit_comparison(const ColimitCandidate& c, std::size_t guard = default_size_guard);
// Bijectivity of the comparison on every fiber.
Verdict flat_criterion(const ColimitCandidate& c, std::size_t guard = default_size_guard);
// Unique factorisation of every cell J (.) H => U_M along (d, e) through the unit,
// for H = U_B with every e: B -> M, and for the conjoints H = B(id, b) of the
// objects of B with every constant e.
Verdict factorization_probe(const ColimitCandidate& c, const SearchLimits& lim = {});
// Both routes; a disagreement between them is reported as a failure.
Verdict verify_colimit(const ColimitCandidate& c, const SearchLimits& lim = {});

// First candidate in canonical order (apex functors, then unit cells) that
// passes verify_colimit. Throws SearchBudgetExceeded.
std::optional<ColimitCandidate> colim_search(const ProRef& j, const FinFunctor& d,
                                             const SearchLimits& lim = {});
// Every candidate passing the comparison criterion, in canonical order.
std::vector<ColimitCandidate> all_colimits(const ProRef& j, const FinFunctor& d,
                                           const SearchLimits& lim = {});

// Builds l(b) from a universal cocone over the column J(-, b) for each b, and
// l on morphisms by factorisation. Cocones are enumerated per object of M; the
// result is confirmed by the comparison criterion. Empty when some column has
// no universal cocone. Throws SizeGuardExceeded.
std::optional<ColimitCandidate> pointwise_colim_search(const ProRef& j, const FinFunctor& d,
                                                       const SearchLimits& lim = {});

struct KanExtension {
    ColimitCandidate colimit;  // weighted by B(j, id)
    NatTransf unit;            // d => l j
    Verdict ordinary;          // unique factorisation of every d => e j
};
Verdict ordinary_kan_check(const FinFunctor& j, const FinFunctor& d, const FinFunctor& l,
                           const NatTransf& unit, std::size_t functor_budget = 100'000);
std::optional<KanExtension> kan_extension(const FinFunctor& j, const FinFunctor& d,
                                          const SearchLimits& lim = {});

// J/f for J: A -|-> B and f: C -> B. Objects are triples (a, x in J(a, fc), c)
// rendered "(a,x,c)"; morphisms are pairs (u, v) with x.f(v) = u.x'.
struct DoubleComma {
    ProRef weight;
    FinFunctor f;
    CatRef comma;
    FinFunctor proj_a;
    FinFunctor proj_c;
    ProCell pi;  // U_{J/f} => J along (proj_a, f proj_c), (u, v) |-> x.f(v)
    std::vector<std::tuple<ObId, ElemId, ObId>> triple;  // per comma object
};
DoubleComma double_comma(const ProRef& j, const FinFunctor& f);

// Small probe categories with at most two objects, in a fixed order.
std::vector<CatRef> probe_sources(std::size_t depth = 6);
// Every functor from every probe source into b.
std::vector<FinFunctor> probe_functors(const CatRef& b, std::size_t depth = 6,
                                       std::size_t functor_budget = 100'000);

// 1- and 2-dimensional universal properties against functors out of the
// probe sources, with every extra horizontal probe K between them.
Verdict verify_double_comma(const DoubleComma& dc, const std::vector<CatRef>& sources,
                            const SearchLimits& lim = {});

// C(pi_C, id) => J(id, f) along (proj_a, id), x: c -> c' |-> j.f(x).
struct CommaFactor {
    ProRef companion;    // C(pi_C, id)
    Restriction restr;   // J(id, f)
    ProCell cell;
};
CommaFactor comma_factor(const DoubleComma& dc);

// The candidate (C(pi_C, id), d pi_A, l f, eta o pi) induced by a probe f.
ColimitCandidate pointwise_candidate(const ColimitCandidate& c, const DoubleComma& dc);
Verdict check_pointwise(const ColimitCandidate& c, const std::vector<FinFunctor>& probes,
                        const SearchLimits& lim = {});

// H: C -|-> D with h: A -> M and k: D -> M.
struct StrongProbe {
    ProRef h;
    FinFunctor left;
    FinFunctor right;
};
std::vector<StrongProbe> default_strong_probes(const DoubleComma& dc,
                                               const std::vector<ProRef>& extra,
                                               const std::vector<CatRef>& targets,
                                               std::size_t max_pairs = 16,
                                               std::size_t functor_budget = 100'000);
Verdict check_strong_comma(const DoubleComma& dc, const std::vector<StrongProbe>& probes,
                           std::size_t guard = default_size_guard);

// eta (.) zeta along (d, k): [(x, y)] |-> zeta(y) o eta(x).
ColimitCandidate paste_colimits(const ColimitCandidate& eta, const ColimitCandidate& zeta);
// If eta and zeta are colimits then so is their pasting.
Verdict fubini_check(const ColimitCandidate& eta, const ColimitCandidate& zeta,
                     const SearchLimits& lim = {});
// For phi: J => K along (f, g) right invertible, zeta is a colimit exactly
// when zeta o phi is.
Verdict precompose_invariance_check(const ProCell& phi, const ColimitCandidate& zeta,
                                    const SearchLimits& lim = {});

}  // namespace procat
