#include "procat/corpus.hpp"

#include "procat/error.hpp"

#include <algorithm>
#include <deque>

namespace procat {

std::size_t Corpus::below(std::size_t n)
{
    // Rejection sampling keeps draws uniform and platform independent.
    const std::uint64_t limit = (~std::uint64_t{0}) - (~std::uint64_t{0}) % n;
    std::uint64_t x;
    do
        x = rng_();
    while (x >= limit);
    return static_cast<std::size_t>(x % n);
}

namespace {

bool homs_within(const FinCat& c, std::size_t max_hom)
{
    for (ObId a = 0; a < c.num_objects(); ++a)
        for (ObId b = 0; b < c.num_objects(); ++b)
            if (c.hom(a, b).size() > max_hom)
                return false;
    return true;
}

std::vector<std::string> names(std::size_t n)
{
    static const char* pool[] = {"p", "q", "r", "s", "t", "v", "w", "x"};
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(i < 8 ? pool[i] : "o" + std::to_string(i));
    return out;
}

// One object with an idempotent, or two objects with an idempotent on the
// source of an arrow that it fixes.
CatRef idempotent_shape(bool two_objects)
{
    std::vector<MorDecl> ms{{"id", "p", "p"}, {"e", "p", "p"}};
    std::vector<std::size_t> ids{0};
    std::vector<std::string> obs{"p"};
    if (two_objects) {
        ms.push_back({"id", "q", "q"});
        ms.push_back({"k", "p", "q"});
        ids.push_back(2);
        obs.push_back("q");
    }
    return make_cat(FinCat(obs, ms, ids, [](std::size_t g, std::size_t f) {
        if (g == 0 || g == 2)
            return f;
        if (f == 0 || f == 2)
            return g;
        return g == 1 ? std::size_t{1} : std::size_t{3};
    }));
}

// One object whose monoid is the cyclic group of order two.
CatRef involution_shape()
{
    std::vector<MorDecl> ms{{"id", "p", "p"}, {"z", "p", "p"}};
    return make_cat(FinCat({"p"}, ms, {0}, [](std::size_t g, std::size_t f) { return g ^ f; }));
}

}  // namespace

CatRef Corpus::preorder(std::size_t max_elements)
{
    std::size_t n = 1 + below(max_elements);
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            leq[i][j] = i == j || coin(1, 3);
    // Transitive closure.
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (leq[i][k] && leq[k][j])
                    leq[i][j] = true;
    return preorder_cat(names(n), leq);
}

CatRef Corpus::category(std::size_t max_objects, std::size_t max_hom)
{
    for (;;) {
        std::size_t kind = below(6);
        CatRef c;
        if (kind <= 2) {
            std::size_t n = 1 + below(max_objects);
            auto vs = names(n);
            std::vector<MorDecl> edges;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) {
                    std::size_t mult = below(4) == 0 ? 2 : below(2);
                    for (std::size_t m = 0; m < mult; ++m)
                        edges.push_back({"f" + std::to_string(edges.size()), vs[i], vs[j]});
                }
            c = free_cat_on_dag(vs, edges);
        } else if (kind == 3) {
            c = preorder(max_objects);
        } else if (kind == 4) {
            c = idempotent_shape(max_objects >= 2 && coin(1, 2));
        } else {
            c = involution_shape();
        }
        if (c->num_objects() <= max_objects && homs_within(*c, max_hom))
            return c;
    }
}

FinFunctor Corpus::functor(const CatRef& src, const CatRef& tgt)
{
    auto fs = all_functors(src, tgt, 100000);
    if (fs.empty())
        throw ValidationError("no functor exists between the chosen categories");
    return fs[below(fs.size())];
}

ProRef generated_prof(const CatRef& aref, const CatRef& bref, const std::vector<Generator>& gens,
                      const std::vector<std::pair<std::size_t, std::size_t>>& merges)
{
    const FinCat& A = *aref;
    const FinCat& B = *bref;
    struct Raw {
        std::size_t gen;
        MorId s, t;
    };
    std::vector<Raw> raw;
    std::vector<std::vector<std::vector<std::size_t>>> index(gens.size());
    for (std::size_t k = 0; k < gens.size(); ++k) {
        const auto& in = A.in(gens[k].a);
        const auto& out = B.out(gens[k].b);
        index[k].assign(in.size(), std::vector<std::size_t>(out.size()));
        for (std::size_t i = 0; i < in.size(); ++i)
            for (std::size_t o = 0; o < out.size(); ++o) {
                index[k][i][o] = raw.size();
                raw.push_back({k, in[i], out[o]});
            }
    }
    auto at = [&](std::size_t k, MorId s, MorId t) {
        return index[k][A.in_pos(s)][B.out_pos(t)];
    };
    auto left = [&](MorId u, std::size_t x) {
        return at(raw[x].gen, A.compose_unchecked(raw[x].s, u), raw[x].t);
    };
    auto right = [&](std::size_t x, MorId v) {
        return at(raw[x].gen, raw[x].s, B.compose_unchecked(v, raw[x].t));
    };
    auto fiber = [&](std::size_t x) {
        return std::pair{A.src(raw[x].s), B.tgt(raw[x].t)};
    };

    UnionFind uf(raw.size());
    std::deque<std::pair<std::size_t, std::size_t>> todo(merges.begin(), merges.end());
    while (!todo.empty()) {
        auto [x, y] = todo.front();
        todo.pop_front();
        if (fiber(x) != fiber(y))
            throw ValidationError("merge across fibers");
        if (!uf.unite(x, y))
            continue;
        for (MorId u : A.in(fiber(x).first))
            todo.emplace_back(left(u, x), left(u, y));
        for (MorId v : B.out(fiber(x).second))
            todo.emplace_back(right(x, v), right(y, v));
    }

    auto raw_name = [&](std::size_t x) {
        return "g" + std::to_string(raw[x].gen) + "." + A.label(raw[x].s) + "." + B.label(raw[x].t);
    };
    // Classes per fiber in order of first member; named by minimal raw name.
    const std::size_t na = A.num_objects(), nb = B.num_objects();
    std::vector<std::size_t> cls(raw.size()), root_cls(raw.size(), raw.size());
    std::vector<std::vector<std::vector<std::string>>> fibers(
        na, std::vector<std::vector<std::string>>(nb));
    std::vector<std::vector<std::vector<std::size_t>>> reps(
        na, std::vector<std::vector<std::size_t>>(nb));
    for (std::size_t x = 0; x < raw.size(); ++x) {
        std::size_t r = uf.find(x);
        auto [a, b] = fiber(x);
        if (root_cls[r] == raw.size()) {
            root_cls[r] = fibers[a][b].size();
            fibers[a][b].push_back(raw_name(x));
            reps[a][b].push_back(x);
        } else {
            fibers[a][b][root_cls[r]] = std::min(fibers[a][b][root_cls[r]], raw_name(x));
        }
        cls[x] = root_cls[r];
    }
    return make_prof(Profunctor(
        aref, bref, std::move(fibers),
        [&](MorId s, ObId b, std::size_t i) { return cls[left(s, reps[A.tgt(s)][b][i])]; },
        [&](ObId a, std::size_t i, MorId t) { return cls[right(reps[a][B.src(t)][i], t)]; }));
}

ProRef Corpus::profunctor(const CatRef& a, const CatRef& b, std::size_t max_fiber)
{
    for (;;) {
        std::size_t ngen = below(3);
        std::vector<Generator> gens;
        for (std::size_t k = 0; k < ngen; ++k)
            gens.push_back({below(a->num_objects()), below(b->num_objects())});
        // Candidate merges: random pairs sharing a fiber, built from the raw sum.
        ProRef free = generated_prof(a, b, gens, {});
        std::vector<std::pair<std::size_t, std::size_t>> merges;
        if (free->size() > 1 && coin(1, 2)) {
            std::size_t tries = 1 + below(2);
            // Raw indices coincide with free-profunctor construction order, so
            // draw from fibers of the raw sum via its element positions.
            std::vector<std::vector<std::size_t>> by_fiber;
            std::vector<std::pair<ObId, ObId>> keys;
            std::size_t idx = 0;
            for (std::size_t k = 0; k < gens.size(); ++k)
                for (MorId s : a->in(gens[k].a))
                    for (MorId t : b->out(gens[k].b)) {
                        std::pair<ObId, ObId> key{a->src(s), b->tgt(t)};
                        auto it = std::find(keys.begin(), keys.end(), key);
                        if (it == keys.end()) {
                            keys.push_back(key);
                            by_fiber.push_back({});
                            it = keys.end() - 1;
                        }
                        by_fiber[static_cast<std::size_t>(it - keys.begin())].push_back(idx++);
                    }
            for (std::size_t m = 0; m < tries; ++m) {
                const auto& group = by_fiber[below(by_fiber.size())];
                if (group.size() > 1)
                    merges.emplace_back(group[below(group.size())], group[below(group.size())]);
            }
        }
        ProRef j = merges.empty() ? free : generated_prof(a, b, gens, merges);
        bool small = true;
        for (ObId x = 0; x < a->num_objects(); ++x)
            for (ObId y = 0; y < b->num_objects(); ++y)
                small = small && j->fiber_size(x, y) <= max_fiber;
        if (small)
            return j;
    }
}

std::optional<ProCell> Corpus::cell(const ProRef& j, const ProRef& k, const FinFunctor& f,
                                    const FinFunctor& g)
{
    auto cells = all_cells(j, k, f, g, default_size_guard);
    if (cells.empty())
        return std::nullopt;
    return cells[below(cells.size())];
}

}  // namespace procat
