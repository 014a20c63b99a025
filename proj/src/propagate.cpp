#include "procat/detail/propagate.hpp"

#include "procat/error.hpp"

#include <limits>
#include <string>

namespace procat::detail {

namespace {

constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();

class Search {
public:
    Search(const Propagation& p, std::vector<std::size_t> gens,
           const std::function<bool(const std::vector<std::size_t>&)>& visit)
        : p_(p), gens_(std::move(gens)), visit_(visit), value_(p.n, unset)
    {
    }

    void run() { step(0); }

private:
    bool step(std::size_t k)
    {
        if (k == gens_.size())
            return visit_(value_);
        std::size_t x = gens_[k];
        if (value_[x] != unset)
            return step(k + 1);
        auto [lo, hi] = p_.candidates(x);
        for (std::size_t y = lo; y < hi; ++y) {
            std::size_t mark = trail_.size();
            if (apply(x, y) && !step(k + 1))
                return false;
            undo(mark);
        }
        return true;
    }

    bool apply(std::size_t x, std::size_t y)
    {
        forced_.clear();
        p_.orbit(x, y, forced_);
        for (auto [u, v] : forced_) {
            if (value_[u] == unset) {
                value_[u] = v;
                trail_.push_back(u);
            } else if (value_[u] != v) {
                return false;
            }
        }
        return true;
    }

    void undo(std::size_t mark)
    {
        while (trail_.size() > mark) {
            value_[trail_.back()] = unset;
            trail_.pop_back();
        }
    }

    const Propagation& p_;
    std::vector<std::size_t> gens_;
    const std::function<bool(const std::vector<std::size_t>&)>& visit_;
    std::vector<std::size_t> value_;
    std::vector<std::size_t> trail_;
    std::vector<std::pair<std::size_t, std::size_t>> forced_;
};

}  // namespace

std::size_t search_space(const Propagation& p, std::vector<std::size_t>* generators)
{
    std::vector<char> covered(p.n, 0);
    std::vector<std::pair<std::size_t, std::size_t>> forced;
    std::size_t space = 1;
    for (std::size_t x = 0; x < p.n; ++x) {
        if (covered[x])
            continue;
        if (generators)
            generators->push_back(x);
        auto [lo, hi] = p.candidates(x);
        std::size_t count = hi - lo;
        if (count == 0)
            return 0;
        space = space > std::numeric_limits<std::size_t>::max() / count
                    ? std::numeric_limits<std::size_t>::max()
                    : space * count;
        forced.clear();
        p.orbit(x, lo, forced);
        for (auto [u, v] : forced)
            covered[u] = 1;
    }
    return space;
}

void enumerate(const Propagation& p, std::size_t guard,
               const std::function<bool(const std::vector<std::size_t>&)>& visit)
{
    std::vector<std::size_t> gens;
    std::size_t space = search_space(p, &gens);
    if (space == 0)
        return;
    if (space > guard)
        throw SizeGuardExceeded("search space " + std::to_string(space) + " exceeds guard " +
                                std::to_string(guard));
    Search(p, std::move(gens), visit).run();
}

}  // namespace procat::detail
