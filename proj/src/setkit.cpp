#include "procat/setkit.hpp"

#include "procat/error.hpp"

#include <algorithm>
#include <numeric>

namespace procat {

std::string tuple_atom(const std::vector<std::string>& parts)
{
    std::string out = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i)
            out += ',';
        out += parts[i];
    }
    out += ')';
    return out;
}

std::string tag_atom(std::string_view tag, std::string_view atom)
{
    std::string out(tag);
    out += ':';
    out += atom;
    return out;
}

FinSet::FinSet() : atoms_(std::make_shared<const std::vector<std::string>>()) {}

FinSet::FinSet(std::vector<std::string> atoms)
{
    std::sort(atoms.begin(), atoms.end());
    auto dup = std::adjacent_find(atoms.begin(), atoms.end());
    if (dup != atoms.end())
        throw ValidationError("duplicate atom " + *dup);
    atoms_ = std::make_shared<const std::vector<std::string>>(std::move(atoms));
}

std::optional<std::size_t> FinSet::index_of(std::string_view atom) const
{
    auto it = std::lower_bound(atoms_->begin(), atoms_->end(), atom);
    if (it == atoms_->end() || *it != atom)
        return std::nullopt;
    return static_cast<std::size_t>(it - atoms_->begin());
}

bool operator==(const FinSet& a, const FinSet& b)
{
    return a.atoms_ == b.atoms_ || *a.atoms_ == *b.atoms_;
}

FinMap::FinMap(FinSet source, FinSet target, std::vector<std::size_t> graph)
    : source_(std::move(source)), target_(std::move(target)), graph_(std::move(graph))
{
    if (graph_.size() != source_.size())
        throw ValidationError("map graph is not total");
    for (std::size_t y : graph_)
        if (y >= target_.size())
            throw ValidationError("map image outside target");
}

FinMap FinMap::identity(const FinSet& s)
{
    std::vector<std::size_t> g(s.size());
    std::iota(g.begin(), g.end(), std::size_t{0});
    return FinMap(s, s, std::move(g));
}

bool FinMap::injective() const
{
    std::vector<char> hit(target_.size(), 0);
    for (std::size_t y : graph_) {
        if (hit[y])
            return false;
        hit[y] = 1;
    }
    return true;
}

bool FinMap::surjective() const
{
    std::vector<char> hit(target_.size(), 0);
    for (std::size_t y : graph_)
        hit[y] = 1;
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

bool operator==(const FinMap& a, const FinMap& b)
{
    return a.source_ == b.source_ && a.target_ == b.target_ && a.graph_ == b.graph_;
}

FinMap compose(const FinMap& g, const FinMap& f)
{
    if (!(f.target() == g.source()))
        throw SourceMismatch("composite of maps with mismatched boundary");
    std::vector<std::size_t> out(f.source().size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = g(f(i));
    return FinMap(f.source(), g.target(), std::move(out));
}

UnionFind::UnionFind(std::size_t n) : parent_(n), rank_(n, 0)
{
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t UnionFind::find(std::size_t x)
{
    std::size_t root = x;
    while (parent_[root] != root)
        root = parent_[root];
    while (parent_[x] != root) {
        std::size_t next = parent_[x];
        parent_[x] = root;
        x = next;
    }
    return root;
}

bool UnionFind::unite(std::size_t a, std::size_t b)
{
    a = find(a);
    b = find(b);
    if (a == b)
        return false;
    if (rank_[a] < rank_[b])
        std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b])
        ++rank_[a];
    return true;
}

std::vector<std::vector<std::size_t>> Quotient::classes() const
{
    std::vector<std::vector<std::size_t>> out(reps.size());
    for (std::size_t i = 0; i < class_of.size(); ++i)
        out[class_of[i]].push_back(i);
    return out;
}

FinSet Quotient::rep_set() const
{
    std::vector<std::string> atoms;
    atoms.reserve(reps.size());
    for (std::size_t r : reps)
        atoms.push_back(base[r]);
    return FinSet(std::move(atoms));
}

FinMap Quotient::projection() const
{
    // reps are increasing, so class index equals position in rep_set().
    return FinMap(base, rep_set(), class_of);
}

Quotient quotient_from_pairs(const FinSet& base,
                             const std::vector<std::pair<std::size_t, std::size_t>>& pairs)
{
    UnionFind uf(base.size());
    for (auto [a, b] : pairs)
        uf.unite(a, b);
    Quotient q;
    q.base = base;
    q.class_of.assign(base.size(), 0);
    std::vector<std::size_t> root_class(base.size(), static_cast<std::size_t>(-1));
    // Ascending scan: the first member met is the order-minimal rep.
    for (std::size_t i = 0; i < base.size(); ++i) {
        std::size_t r = uf.find(i);
        if (root_class[r] == static_cast<std::size_t>(-1)) {
            root_class[r] = q.reps.size();
            q.reps.push_back(i);
        }
        q.class_of[i] = root_class[r];
    }
    return q;
}

Quotient coequalize(const FinMap& f, const FinMap& g)
{
    if (!(f.source() == g.source()) || !(f.target() == g.target()))
        throw SourceMismatch("coequalize: maps disagree on source or target");
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(f.source().size());
    for (std::size_t i = 0; i < f.source().size(); ++i)
        pairs.emplace_back(f(i), g(i));
    return quotient_from_pairs(f.target(), pairs);
}

namespace {

// Positions of rendered atoms after FinSet sorting.
std::vector<std::size_t> positions(const FinSet& s, const std::vector<std::string>& atoms)
{
    std::vector<std::size_t> pos(atoms.size());
    for (std::size_t i = 0; i < atoms.size(); ++i)
        pos[i] = *s.index_of(atoms[i]);
    return pos;
}

}  // namespace

Pullback pullback(const FinMap& f, const FinMap& g)
{
    if (!(f.target() == g.target()))
        throw TargetMismatch("pullback: maps disagree on target");
    std::vector<std::string> atoms;
    std::vector<std::pair<std::size_t, std::size_t>> src;
    for (std::size_t x = 0; x < f.source().size(); ++x)
        for (std::size_t y = 0; y < g.source().size(); ++y)
            if (f(x) == g(y)) {
                atoms.push_back(tuple_atom({f.source()[x], g.source()[y]}));
                src.emplace_back(x, y);
            }
    FinSet set(atoms);
    auto pos = positions(set, atoms);
    std::vector<std::size_t> g1(set.size()), g2(set.size());
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        g1[pos[i]] = src[i].first;
        g2[pos[i]] = src[i].second;
    }
    return Pullback{set, FinMap(set, f.source(), g1), FinMap(set, g.source(), g2)};
}

Product product(const FinSet& a, const FinSet& b)
{
    std::vector<std::string> atoms;
    atoms.reserve(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            atoms.push_back(tuple_atom({a[i], b[j]}));
    FinSet set(atoms);
    auto pos = positions(set, atoms);
    std::vector<std::size_t> g1(set.size()), g2(set.size());
    std::vector<std::vector<std::size_t>> idx(a.size(), std::vector<std::size_t>(b.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::size_t p = pos[i * b.size() + j];
            g1[p] = i;
            g2[p] = j;
            idx[i][j] = p;
        }
    return Product{set, FinMap(set, a, g1), FinMap(set, b, g2), std::move(idx)};
}

Coproduct coproduct(const FinSet& a, const FinSet& b)
{
    std::vector<std::string> atoms;
    for (const auto& x : a.atoms())
        atoms.push_back(tag_atom("inl", x));
    for (const auto& y : b.atoms())
        atoms.push_back(tag_atom("inr", y));
    FinSet set(atoms);
    auto pos = positions(set, atoms);
    std::vector<std::size_t> l(pos.begin(), pos.begin() + static_cast<long>(a.size()));
    std::vector<std::size_t> r(pos.begin() + static_cast<long>(a.size()), pos.end());
    return Coproduct{set, FinMap(a, set, l), FinMap(b, set, r)};
}

Equalizer equalize(const FinMap& f, const FinMap& g)
{
    if (!(f.source() == g.source()) || !(f.target() == g.target()))
        throw SourceMismatch("equalize: maps disagree on source or target");
    std::vector<std::string> atoms;
    std::vector<std::size_t> incl;
    for (std::size_t x = 0; x < f.source().size(); ++x)
        if (f(x) == g(x)) {
            atoms.push_back(f.source()[x]);
            incl.push_back(x);
        }
    // Subset of a sorted set stays sorted.
    FinSet set(atoms);
    return Equalizer{set, FinMap(set, f.source(), incl)};
}

}  // namespace procat
