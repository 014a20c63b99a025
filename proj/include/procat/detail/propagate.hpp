#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace procat::detail {

// Enumerates maps x -> y (x < n, y in a per-x candidate range) that are closed
// under a propagation rule: choosing x -> y forces every pair in orbit(x, y).
// The rule must generate all equational constraints, so a conflict-free total
// assignment is exactly a solution. Generators are the elements not reached
// by the orbit of an earlier one; the search space is the product of their
// candidate counts, which is checked against the guard before searching.
struct Propagation {
    std::size_t n = 0;
    std::function<std::pair<std::size_t, std::size_t>(std::size_t)> candidates;
    std::function<void(std::size_t, std::size_t, std::vector<std::pair<std::size_t, std::size_t>>&)>
        orbit;
};

// Product of generator candidate counts, saturating at max.
std::size_t search_space(const Propagation& p, std::vector<std::size_t>* generators = nullptr);

// Throws SizeGuardExceeded when search_space exceeds guard. Visits solutions in
// lexicographic order of generator images until the visitor returns false.
void enumerate(const Propagation& p, std::size_t guard,
               const std::function<bool(const std::vector<std::size_t>&)>& visit);

}  // namespace procat::detail
