#pragma once

#include "procat/equipment.hpp"
#include "procat/fincat.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace procat {

// Seeded generator of small test instances. Identical seeds give identical
// instances on every platform (only integer draws are used).
class Corpus {
public:
    explicit Corpus(std::uint64_t seed) : rng_(seed) {}

    std::size_t below(std::size_t n);  // uniform in [0, n)
    bool coin(std::size_t num, std::size_t den) { return below(den) < num; }

    // A category with at most max_objects objects and hom sets of size at most
    // max_hom: free categories on dags, preorders, or small monoid-like shapes.
    CatRef category(std::size_t max_objects = 3, std::size_t max_hom = 3);
    CatRef preorder(std::size_t max_elements);
    FinFunctor functor(const CatRef& src, const CatRef& tgt);  // throws if none exists
    // A sum of representables A(-, a_k) x B(b_k, -) quotiented by a random
    // congruence; fibers larger than max_fiber are avoided by retrying.
    ProRef profunctor(const CatRef& a, const CatRef& b, std::size_t max_fiber = 4);
    std::optional<ProCell> cell(const ProRef& j, const ProRef& k, const FinFunctor& f,
                                const FinFunctor& g);

private:
    std::mt19937_64 rng_;
};

// Sum of representables quotiented by the congruence generated by merges
// (pairs of element indices in the sum, which must share a fiber).
struct Generator {
    ObId a;  // element (s: x -> a, t: b -> y) lives in fiber (x, y)
    ObId b;
};
ProRef generated_prof(const CatRef& a, const CatRef& b, const std::vector<Generator>& gens,
                      const std::vector<std::pair<std::size_t, std::size_t>>& merges);

}  // namespace procat
