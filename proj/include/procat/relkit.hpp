#pragma once

#include "procat/colimits.hpp"
#include "procat/equipment.hpp"
#include "procat/fincat.hpp"
#include "procat/setkit.hpp"
#include "procat/verdict.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace procat {

using Relation = std::vector<std::vector<bool>>;

// Elements in canonical order; leq is indexed by that order.
class Preorder {
public:
    Preorder() = default;
    // leq is given in the order of elements; throws ValidationError unless it
    // is reflexive and transitive.
    Preorder(const std::vector<std::string>& elements, const Relation& leq);

    const FinSet& carrier() const noexcept { return carrier_; }
    std::size_t size() const noexcept { return carrier_.size(); }
    bool leq(std::size_t x, std::size_t y) const { return leq_[x][y]; }
    const Relation& table() const noexcept { return leq_; }

    friend bool operator==(const Preorder& a, const Preorder& b)
    {
        return a.carrier_ == b.carrier_ && a.leq_ == b.leq_;
    }

private:
    FinSet carrier_;
    Relation leq_;
};

// Throws ValidationError when c has parallel morphisms.
Preorder preorder_of(const FinCat& c);
CatRef as_fincat(const Preorder& p);

// x ~ y with x1 <= x ~ y <= y2 implying x1 ~ y2.
struct ModRel {
    Preorder left;
    Preorder right;
    Relation rel;  // rel[x][y]
};
// Throws ValidationError when the relation is not down-up closed.
void validate_modrel(const ModRel& r);
// The least down-up closed relation containing rel.
ModRel down_up_closure(const Preorder& left, const Preorder& right, const Relation& rel);
ModRel identity_rel(const Preorder& p);  // <=
// x ~ z when f x <= z, for a monotone f.
ModRel companion_rel(const Preorder& a, const Preorder& b, const std::vector<std::size_t>& f);

ModRel compose_rel(const ModRel& j, const ModRel& h);  // throws BoundaryMismatch
// y ~ z when every x ~_J y has x ~_K z; J and K share their left preorder.
ModRel left_hom_rel(const ModRel& j, const ModRel& k);  // throws BoundaryMismatch

// Throws ValidationError when f is not monotone.
void check_monotone(const Preorder& a, const Preorder& b, const std::vector<std::size_t>& f);
std::vector<std::vector<std::size_t>> all_monotone(const Preorder& a, const Preorder& b);

// The least upper bound of xs; the first in canonical order among equivalent
// least upper bounds. Throws SupMissing when there is none.
std::size_t sup(const Preorder& m, const std::vector<std::size_t>& xs);
// l(y) = sup { d x : x ~ y }; throws SupMissing naming the first failing y.
std::vector<std::size_t> sup_colim(const ModRel& j, const Preorder& m,
                                   const std::vector<std::size_t>& d);
// Fiberwise: l y <= z iff d x <= z for all x ~ y; and for every monotone e,
// l <= e iff d x <= e y whenever x ~ y.
Verdict check_sup_universal(const ModRel& j, const Preorder& m, const std::vector<std::size_t>& d,
                            const std::vector<std::size_t>& l);

// The embedding into categories and profunctors: fibers are "*" or empty.
ProRef as_profunctor(const ModRel& r);
FinFunctor as_functor(const Preorder& a, const Preorder& b, const std::vector<std::size_t>& f);
// The unique unit J => U_M along (d, l); throws ValidationError when some
// d x <= l y fails.
ColimitCandidate as_candidate(const ModRel& j, const Preorder& m, const std::vector<std::size_t>& d,
                              const std::vector<std::size_t>& l);

}  // namespace procat
