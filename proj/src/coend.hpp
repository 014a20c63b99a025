#pragma once

// Coends over a finite set of mediators: the disjoint union of L(w) x R(w)
// modulo (push(l), r) ~ (l, pull(r)) for each generating arrow v -> w.

#include "procat/error.hpp"
#include "procat/setkit.hpp"

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace procat::detail {

template <class W, class L, class R>
class CoendQuotient {
public:
    explicit CoendQuotient(std::size_t guard) : guard_(guard) {}

    // Mediators with an empty side contribute nothing and are dropped.
    void add(const W& w, std::vector<L> left, std::vector<R> right)
    {
        if (left.empty() || right.empty())
            return;
        Med m{w, std::move(left), std::move(right), {}, {}, total_};
        for (std::size_t i = 0; i < m.left.size(); ++i)
            m.li.emplace(m.left[i], i);
        for (std::size_t i = 0; i < m.right.size(); ++i)
            m.ri.emplace(m.right[i], i);
        total_ += m.left.size() * m.right.size();
        if (total_ > guard_)
            throw SizeGuardExceeded("coend exceeds the size guard " + std::to_string(guard_));
        index_.emplace(w, meds_.size());
        meds_.push_back(std::move(m));
    }

    // push: L(v) -> L(w) and pull: R(w) -> R(v) along one arrow v -> w.
    template <class Push, class Pull>
    void relate(const W& v, const W& w, Push push, Pull pull)
    {
        auto iv = index_.find(v);
        auto iw = index_.find(w);
        if (iv == index_.end() || iw == index_.end())
            return;
        if (uf_.size() != total_)
            uf_ = UnionFind(total_);
        const Med& mv = meds_[iv->second];
        const Med& mw = meds_[iw->second];
        std::vector<std::size_t> pulled(mw.right.size());
        for (std::size_t r = 0; r < mw.right.size(); ++r)
            pulled[r] = locate(mv.ri, pull(mw.right[r]));
        for (std::size_t l = 0; l < mv.left.size(); ++l) {
            std::size_t pushed = locate(mw.li, push(mv.left[l]));
            for (std::size_t r = 0; r < mw.right.size(); ++r)
                uf_.unite(mw.offset + pushed * mw.right.size() + r,
                          mv.offset + l * mv.right.size() + pulled[r]);
        }
        finished_ = false;
    }

    std::size_t elements() const noexcept { return total_; }
    std::size_t classes()
    {
        finish();
        return reps_.size();
    }

    std::optional<std::size_t> class_of(const W& w, const L& l, const R& r)
    {
        finish();
        auto it = index_.find(w);
        if (it == index_.end())
            return std::nullopt;
        const Med& m = meds_[it->second];
        auto li = m.li.find(l);
        auto ri = m.ri.find(r);
        if (li == m.li.end() || ri == m.ri.end())
            return std::nullopt;
        return cls_[m.offset + li->second * m.right.size() + ri->second];
    }

    // Visits (w, l, r, class) over all elements in order.
    template <class F>
    void for_each(F visit)
    {
        finish();
        for (const Med& m : meds_)
            for (std::size_t l = 0; l < m.left.size(); ++l)
                for (std::size_t r = 0; r < m.right.size(); ++r)
                    visit(m.w, m.left[l], m.right[r],
                          cls_[m.offset + l * m.right.size() + r]);
    }

    // The first element of a class in mediator order.
    std::tuple<W, L, R> rep(std::size_t cls)
    {
        finish();
        std::size_t e = reps_[cls];
        auto it = std::upper_bound(meds_.begin(), meds_.end(), e,
                                   [](std::size_t x, const Med& m) { return x < m.offset; });
        const Med& m = *std::prev(it);
        std::size_t local = e - m.offset;
        return {m.w, m.left[local / m.right.size()], m.right[local % m.right.size()]};
    }

private:
    struct Med {
        W w;
        std::vector<L> left;
        std::vector<R> right;
        std::map<L, std::size_t> li;
        std::map<R, std::size_t> ri;
        std::size_t offset;
    };

    template <class K>
    static std::size_t locate(const std::map<K, std::size_t>& m, const K& k)
    {
        auto it = m.find(k);
        if (it == m.end())
            throw AxiomFailure("coend generator leaves its mediator set");
        return it->second;
    }

    void finish()
    {
        if (finished_)
            return;
        if (uf_.size() != total_)
            uf_ = UnionFind(total_);
        cls_.assign(total_, 0);
        reps_.clear();
        std::vector<std::size_t> root_cls(total_, total_);
        for (std::size_t e = 0; e < total_; ++e) {
            std::size_t r = uf_.find(e);
            if (root_cls[r] == total_) {
                root_cls[r] = reps_.size();
                reps_.push_back(e);
            }
            cls_[e] = root_cls[r];
        }
        finished_ = true;
    }

    std::size_t guard_;
    std::size_t total_ = 0;
    std::vector<Med> meds_;
    std::map<W, std::size_t> index_;
    UnionFind uf_;
    std::vector<std::size_t> cls_;
    std::vector<std::size_t> reps_;
    bool finished_ = false;
};

// Checks that (w, l, r) |-> map(w, l, r) is constant on classes and induces a
// bijection onto target. Returns a witness on failure.
template <class Q, class T, class Map, class Show>
std::optional<std::string> bijection_failure(Q& q, const std::vector<T>& target, Map map,
                                             Show show)
{
    std::size_t n = q.classes();
    std::vector<std::optional<T>> image(n);
    std::optional<std::string> bad;
    q.for_each([&](const auto& w, const auto& l, const auto& r, std::size_t c) {
        if (bad)
            return;
        T t = map(w, l, r);
        if (!image[c])
            image[c] = t;
        else if (!(*image[c] == t))
            bad = "class " + std::to_string(c) + " has images " + show(*image[c]) + " and " +
                  show(t);
    });
    if (bad)
        return bad;
    std::map<T, std::size_t> hit;
    for (std::size_t c = 0; c < n; ++c) {
        auto [it, fresh] = hit.emplace(*image[c], c);
        if (!fresh)
            return "classes " + std::to_string(it->second) + " and " + std::to_string(c) +
                   " both map to " + show(*image[c]);
    }
    for (const T& t : target)
        if (!hit.count(t))
            return "no class maps to " + show(t);
    if (hit.size() != target.size())
        return "image leaves the target";
    return std::nullopt;
}

}  // namespace procat::detail
