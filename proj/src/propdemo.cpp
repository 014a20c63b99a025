#include "procat/propdemo.hpp"

#include "procat/error.hpp"
#include "seqcore.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace procat {

Matrix::Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c, 0) {}

Matrix Matrix::from_rows(std::size_t c, const std::vector<std::vector<std::int64_t>>& rs)
{
    Matrix m(rs.size(), c);
    for (std::size_t i = 0; i < rs.size(); ++i) {
        if (rs[i].size() != c)
            throw ValidationError("matrix row " + std::to_string(i) + " has " +
                                  std::to_string(rs[i].size()) + " entries, expected " +
                                  std::to_string(c));
        std::copy(rs[i].begin(), rs[i].end(), m.entries.begin() + static_cast<std::ptrdiff_t>(i * c));
    }
    return m;
}

std::int64_t Matrix::max_abs() const
{
    std::int64_t best = 0;
    for (auto e : entries)
        best = std::max(best, e < 0 ? -e : e);
    return best;
}

Matrix identity_matrix(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

Matrix block_sum(const Matrix& a, const Matrix& b)
{
    Matrix m(a.rows + b.rows, a.cols + b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j)
            m.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows; ++i)
        for (std::size_t j = 0; j < b.cols; ++j)
            m.at(a.rows + i, a.cols + j) = b.at(i, j);
    return m;
}

Matrix row_block(const Matrix& m, std::size_t first, std::size_t count)
{
    Matrix r(count, m.cols);
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            r.at(i, j) = m.at(first + i, j);
    return r;
}

Matrix stack(const std::vector<Matrix>& blocks)
{
    if (blocks.empty())
        return Matrix(0, 0);
    std::size_t rows = 0;
    for (const auto& b : blocks) {
        if (b.cols != blocks.front().cols)
            throw ValidationError("stacked blocks differ in column count");
        rows += b.rows;
    }
    Matrix m(rows, blocks.front().cols);
    std::size_t at = 0;
    for (const auto& b : blocks) {
        std::copy(b.entries.begin(), b.entries.end(),
                  m.entries.begin() + static_cast<std::ptrdiff_t>(at * m.cols));
        at += b.rows;
    }
    return m;
}

std::string render(const Matrix& m)
{
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < m.rows; ++i) {
        if (i > 0)
            out << ';';
        for (std::size_t j = 0; j < m.cols; ++j)
            out << (j > 0 ? " " : "") << m.at(i, j);
    }
    out << ')';
    if (m.rows == 0 || m.cols == 0)
        out << '[' << m.rows << 'x' << m.cols << ']';
    return out.str();
}

namespace {

Matrix multiply(const Matrix& g, const Matrix& f)
{
    if (g.cols != f.rows)
        throw TargetMismatch("cannot compose " + std::to_string(g.rows) + "x" +
                             std::to_string(g.cols) + " after " + std::to_string(f.rows) + "x" +
                             std::to_string(f.cols));
    Matrix m(g.rows, f.cols);
    for (std::size_t i = 0; i < g.rows; ++i)
        for (std::size_t k = 0; k < g.cols; ++k) {
            const auto a = g.at(i, k);
            if (a == 0)
                continue;
            for (std::size_t j = 0; j < f.cols; ++j)
                m.at(i, j) += a * f.at(k, j);
        }
    return m;
}

}  // namespace

MatProp::MatProp(std::size_t dim_bound, std::int64_t entry_bound) : dim_(dim_bound), bound_(entry_bound)
{
    if (entry_bound < 1)
        throw ValidationError("entry bound must be positive");
}

bool MatProp::admits(const Matrix& m) const
{
    return m.rows <= dim_ && m.cols <= dim_ && m.max_abs() <= bound_;
}

Matrix MatProp::checked(Matrix m) const
{
    if (!admits(m))
        throw OverflowBound(render(m) + " leaves the slice dim<=" + std::to_string(dim_) +
                            " |entry|<=" + std::to_string(bound_));
    return m;
}

Matrix MatProp::compose(const Matrix& g, const Matrix& f) const { return checked(multiply(g, f)); }
Matrix MatProp::tensor(const Matrix& f, const Matrix& g) const { return checked(block_sum(f, g)); }
Matrix MatProp::identity(std::size_t n) const { return checked(identity_matrix(n)); }

Matrix MatProp::symmetry(std::size_t m, std::size_t n) const
{
    Matrix s(m + n, m + n);
    for (std::size_t i = 0; i < n; ++i)
        s.at(i, m + i) = 1;
    for (std::size_t i = 0; i < m; ++i)
        s.at(n + i, i) = 1;
    return checked(std::move(s));
}

std::vector<Matrix> MatProp::homs(std::size_t m, std::size_t n) const
{
    if (m > dim_ || n > dim_)
        throw OverflowBound("hom " + std::to_string(m) + "->" + std::to_string(n) +
                            " outside dim bound " + std::to_string(dim_));
    std::vector<Matrix> result;
    Matrix cur(n, m);
    std::fill(cur.entries.begin(), cur.entries.end(), -bound_);
    for (;;) {
        result.push_back(cur);
        std::size_t k = cur.entries.size();
        while (k > 0 && cur.entries[k - 1] == bound_) {
            cur.entries[k - 1] = -bound_;
            --k;
        }
        if (k == 0)
            return result;
        ++cur.entries[k - 1];
    }
}

Matrix MatProp::unit() const { return checked(Matrix(1, 0)); }
Matrix MatProp::counit() const { return checked(Matrix(0, 1)); }
Matrix MatProp::mult() const { return checked(Matrix::from_rows(2, {{1, 1}})); }
Matrix MatProp::comult() const { return checked(Matrix::from_rows(1, {{1}, {1}})); }
Matrix MatProp::antipode() const { return checked(Matrix::from_rows(1, {{-1}})); }

FnProp::FnProp(std::size_t dim_bound) : dim_(dim_bound) {}

FnProp::Fn FnProp::compose(const Fn& g, const Fn& f)
{
    Fn r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] >= g.size())
            throw TargetMismatch("function value " + std::to_string(f[i]) + " outside domain of size " +
                                 std::to_string(g.size()));
        r[i] = g[f[i]];
    }
    return r;
}

FnProp::Fn FnProp::tensor(const Fn& f, std::size_t n1, const Fn& g, std::size_t n2) const
{
    if (f.size() + g.size() > dim_ || n1 + n2 > dim_)
        throw OverflowBound("tensor leaves dim bound " + std::to_string(dim_));
    Fn r;
    r.reserve(f.size() + g.size());
    for (auto v : f)
        r.push_back(v);
    for (auto v : g)
        r.push_back(v + n1);
    return r;
}

std::vector<FnProp::Fn> FnProp::homs(std::size_t m, std::size_t n) const
{
    if (m > dim_ || n > dim_)
        throw OverflowBound("hom " + std::to_string(m) + "->" + std::to_string(n) +
                            " outside dim bound " + std::to_string(dim_));
    std::vector<Fn> result;
    if (n == 0 && m > 0)
        return result;
    Fn cur(m, 0);
    for (;;) {
        result.push_back(cur);
        std::size_t k = m;
        while (k > 0 && cur[k - 1] + 1 == n) {
            cur[k - 1] = 0;
            --k;
        }
        if (k == 0)
            return result;
        ++cur[k - 1];
    }
}

Matrix FnProp::embed_op(const Fn& g, std::size_t v)
{
    Matrix m(g.size(), v);
    for (std::size_t i = 0; i < g.size(); ++i)
        m.at(i, g[i]) = 1;
    return m;
}

FinCat FnProp::as_fincat() const
{
    if (dim_ > 9)
        throw ValidationError("as_fincat supports dim bound <= 9");
    std::vector<std::string> objects;
    for (std::size_t n = 0; n <= dim_; ++n)
        objects.push_back(std::to_string(n));
    std::vector<MorDecl> decls;
    std::vector<Fn> values;
    std::vector<std::size_t> codomain;
    std::map<std::pair<std::size_t, Fn>, std::size_t> index;  // (codomain, values)
    std::vector<std::size_t> identities(dim_ + 1);
    for (std::size_t m = 0; m <= dim_; ++m)
        for (std::size_t n = 0; n <= dim_; ++n)
            for (const Fn& f : homs(m, n)) {
                std::string label = "f";
                for (auto v : f)
                    label += std::to_string(v);
                index[{n, f}] = decls.size();
                if (m == n) {
                    Fn id(m);
                    std::iota(id.begin(), id.end(), std::size_t{0});
                    if (f == id)
                        identities[m] = decls.size();
                }
                decls.push_back({label, std::to_string(m), std::to_string(n)});
                values.push_back(f);
                codomain.push_back(n);
            }
    return FinCat(objects, decls, identities, [&](std::size_t g, std::size_t f) {
        return index.at({codomain[g], compose(values[g], values[f])});
    });
}

Verdict hopf_axiom_check(std::size_t dim_bound, std::int64_t entry_bound)
{
    const MatProp h(dim_bound, entry_bound);
    const Matrix i1 = h.identity(1);
    const Matrix mu = h.mult(), delta = h.comult(), eta = h.unit(), eps = h.counit(),
                 s = h.antipode();
    const Matrix sw = h.symmetry(1, 1);
    auto c = [&](const Matrix& g, const Matrix& f) { return h.compose(g, f); };
    auto t = [&](const Matrix& f, const Matrix& g) { return h.tensor(f, g); };

    struct Law {
        std::string name;
        Matrix lhs, rhs;
    };
    const std::vector<Law> laws = {
        {"antipode-left", c(mu, c(t(s, i1), delta)), c(eta, eps)},
        {"antipode-left-zero", c(mu, c(t(s, i1), delta)), Matrix(1, 1)},
        {"antipode-right", c(mu, c(t(i1, s), delta)), c(eta, eps)},
        {"assoc", c(mu, t(mu, i1)), c(mu, t(i1, mu))},
        {"unit-left", c(mu, t(eta, i1)), i1},
        {"unit-right", c(mu, t(i1, eta)), i1},
        {"coassoc", c(t(delta, i1), delta), c(t(i1, delta), delta)},
        {"counit-left", c(t(eps, i1), delta), i1},
        {"counit-right", c(t(i1, eps), delta), i1},
        {"commutative", c(mu, sw), mu},
        {"cocommutative", c(sw, delta), delta},
        {"bimonoid", c(delta, mu),
         c(t(mu, mu), c(t(i1, t(sw, i1)), t(delta, delta)))},
        {"counit-mult", c(eps, mu), t(eps, eps)},
        {"comult-unit", c(delta, eta), t(eta, eta)},
        {"counit-unit", c(eps, eta), h.identity(0)},
        {"antipode-involution", c(s, s), i1},
    };
    for (const auto& law : laws)
        if (law.lhs != law.rhs)
            return Verdict::fail("hopf-axioms", "H", law.name + ": " + render(law.lhs) +
                                 " != " + render(law.rhs));
    return Verdict::ok("hopf-axioms", "H",
                       "laws=" + std::to_string(laws.size()) + " antipode=" +
                           render(c(mu, c(t(s, i1), delta))));
}

Decomposition canonical_decomposition(const Matrix& f, const std::vector<std::size_t>& partition)
{
    const std::size_t total = std::accumulate(partition.begin(), partition.end(), std::size_t{0});
    if (total != f.rows)
        throw PartitionMismatch("partition sums to " + std::to_string(total) + " but f has " +
                                std::to_string(f.rows) + " rows");
    Decomposition d;
    std::vector<Matrix> ids(partition.size(), identity_matrix(f.cols));
    d.mediator = partition.empty() ? Matrix(0, f.cols) : stack(ids);
    std::size_t at = 0;
    for (auto n : partition) {
        d.blocks.push_back(row_block(f, at, n));
        at += n;
    }
    return d;
}

Matrix recompose(const Decomposition& d)
{
    Matrix sum(0, 0);
    for (const auto& b : d.blocks)
        sum = block_sum(sum, b);
    return multiply(sum, d.mediator);
}

namespace {

using Fn = FnProp::Fn;

// A decomposition of f: mediating sequence y, per-position functions
// fns[k] : [y_k] -> [x], shuffle sigma and blocks[i] : y[sigma i] -> z_i.
struct Element {
    std::vector<std::size_t> y;
    std::vector<Fn> fns;
    Perm sigma;
    std::vector<Matrix> blocks;
    auto operator<=>(const Element&) const = default;
};

// Integer tuples of the given length with entries in [-bound, bound] summing to total.
void sum_tuples(std::size_t len, std::int64_t total, std::int64_t bound, std::vector<std::int64_t>& cur,
                std::vector<std::vector<std::int64_t>>& out)
{
    if (len == 0) {
        if (total == 0)
            out.push_back(cur);
        return;
    }
    const auto rest = static_cast<std::int64_t>(len - 1) * bound;
    for (std::int64_t v = std::max(-bound, total - rest); v <= std::min(bound, total + rest); ++v) {
        cur.push_back(v);
        sum_tuples(len - 1, total - v, bound, cur, out);
        cur.pop_back();
    }
}

bool is_bijection(const Fn& f, std::size_t n)
{
    if (f.size() != n)
        return false;
    std::vector<bool> hit(n, false);
    for (auto v : f) {
        if (hit[v])
            return false;
        hit[v] = true;
    }
    return true;
}

class DecompositionSpace {
public:
    DecompositionSpace(const Matrix& f, const std::vector<std::size_t>& partition, MediatorKind kind,
                       MonadKind monad, const DecompositionBounds& bounds)
        : f_(f), kind_(kind), monad_(monad), bounds_(bounds), fn_(std::max(bounds.max_mediator, f.cols))
    {
        std::size_t at = 0;
        for (auto n : partition) {
            targets_.push_back(row_block(f, at, n));
            at += n;
        }
        if (at != f.rows)
            throw PartitionMismatch("partition sums to " + std::to_string(at) + " but f has " +
                                    std::to_string(f.rows) + " rows");
        enumerate();
    }

    DecompositionClasses classes()
    {
        UnionFind uf(elements_.size());
        for (std::size_t e = 0; e < elements_.size(); ++e) {
            if (monad_ == MonadKind::S)
                for (std::size_t t = 0; t + 1 < elements_[e].y.size(); ++t)
                    relate(uf, e, transposed(elements_[e], t));
            for (std::size_t k = 0; k < elements_[e].y.size(); ++k)
                pull_along_coordinate(uf, e, k);
        }
        std::size_t roots = 0;
        for (std::size_t e = 0; e < elements_.size(); ++e)
            roots += uf.find(e) == e ? 1 : 0;
        return {elements_.size(), roots};
    }

private:
    std::vector<Fn> mediators(std::size_t dim) const
    {
        std::vector<Fn> all = fn_.homs(dim, f_.cols);
        if (kind_ == MediatorKind::FnOp)
            return all;
        // Sigma: per-position pieces are injective; joint bijectivity is checked later.
        std::vector<Fn> inj;
        for (auto& g : all) {
            Fn sorted = g;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end())
                inj.push_back(std::move(g));
        }
        return inj;
    }

    // Blocks h : dim -> rows(target) with h . embed_op(g) == target.
    std::vector<Matrix> solutions(const Matrix& target, const Fn& g) const
    {
        const std::size_t dim = g.size();
        std::vector<std::vector<std::size_t>> fiber(target.cols);
        for (std::size_t i = 0; i < dim; ++i)
            fiber[g[i]].push_back(i);
        std::vector<std::vector<std::vector<std::int64_t>>> choices;  // per (row, column)
        for (std::size_t r = 0; r < target.rows; ++r)
            for (std::size_t c = 0; c < target.cols; ++c) {
                std::vector<std::vector<std::int64_t>> opts;
                std::vector<std::int64_t> cur;
                if (fiber[c].empty()) {
                    if (target.at(r, c) != 0)
                        return {};
                    continue;
                }
                sum_tuples(fiber[c].size(), target.at(r, c), bounds_.entry_bound, cur, opts);
                if (opts.empty())
                    return {};
                choices.push_back(std::move(opts));
            }
        std::vector<Matrix> result;
        Matrix h(target.rows, dim);
        detail::for_each_choice(choices, [&](const std::vector<std::vector<std::int64_t>>& pick) {
            std::size_t p = 0;
            for (std::size_t r = 0; r < target.rows; ++r)
                for (std::size_t c = 0; c < target.cols; ++c) {
                    if (fiber[c].empty())
                        continue;
                    for (std::size_t q = 0; q < fiber[c].size(); ++q)
                        h.at(r, fiber[c][q]) = pick[p][q];
                    ++p;
                }
            result.push_back(h);
            guard(result.size());
        });
        return result;
    }

    void guard(std::size_t extra) const
    {
        if (elements_.size() + extra > bounds_.guard)
            throw SizeGuardExceeded("decompositions of " + render(f_) + " exceed guard " +
                                    std::to_string(bounds_.guard));
    }

    void enumerate()
    {
        const std::size_t s = targets_.size();
        std::vector<std::size_t> dims(bounds_.max_mediator + 1);
        std::iota(dims.begin(), dims.end(), std::size_t{0});
        detail::for_each_choice(std::vector<std::vector<std::size_t>>(s, dims),
                                [&](const std::vector<std::size_t>& y) {
            const std::size_t total = std::accumulate(y.begin(), y.end(), std::size_t{0});
            if (kind_ == MediatorKind::Sigma && total != f_.cols)
                return;
            for (const Perm& sigma : detail::perms_for(monad_, s)) {
                // Position sigma[i] feeds output block i.
                std::vector<std::vector<std::pair<Fn, Matrix>>> per_block(s);
                bool possible = true;
                for (std::size_t i = 0; i < s && possible; ++i) {
                    for (const Fn& g : mediators(y[sigma[i]]))
                        for (auto& h : solutions(targets_[i], g))
                            per_block[i].emplace_back(g, std::move(h));
                    possible = !per_block[i].empty();
                }
                if (!possible)
                    continue;
                detail::for_each_choice(per_block, [&](const std::vector<std::pair<Fn, Matrix>>& pick) {
                    Element e{y, std::vector<Fn>(s), sigma, {}};
                    for (std::size_t i = 0; i < s; ++i) {
                        e.fns[sigma[i]] = pick[i].first;
                        e.blocks.push_back(pick[i].second);
                    }
                    if (kind_ == MediatorKind::Sigma) {
                        Fn whole;
                        for (const auto& g : e.fns)
                            whole.insert(whole.end(), g.begin(), g.end());
                        if (!is_bijection(whole, f_.cols))
                            return;
                    }
                    guard(1);
                    index_.emplace(e, elements_.size());
                    elements_.push_back(std::move(e));
                });
            }
        });
    }

    void relate(UnionFind& uf, std::size_t e, const Element& other)
    {
        if (auto it = index_.find(other); it != index_.end())
            uf.unite(e, it->second);
    }

    // The symmetry swapping positions t and t+1, pushed into the mediator and
    // pulled out of the shuffle.
    static Element transposed(const Element& e, std::size_t t)
    {
        Element r = e;
        std::swap(r.y[t], r.y[t + 1]);
        std::swap(r.fns[t], r.fns[t + 1]);
        for (auto& p : r.sigma)
            p = p == t ? t + 1 : (p == t + 1 ? t : p);
        return r;
    }

    // Relates e, sitting over w = y[k], to every element over v obtained by a
    // mediator morphism psi : [w] -> [v] at coordinate k.
    void pull_along_coordinate(UnionFind& uf, std::size_t e, std::size_t k)
    {
        const Element& at_w = elements_[e];
        const std::size_t w = at_w.y[k];
        const Fn& phi = at_w.fns[k];
        const std::size_t block = static_cast<std::size_t>(
            std::find(at_w.sigma.begin(), at_w.sigma.end(), k) - at_w.sigma.begin());
        for (std::size_t v = 0; v <= bounds_.max_mediator; ++v) {
            if (kind_ == MediatorKind::Sigma && v != w)
                continue;
            for (const Fn& psi : fn_.homs(w, v)) {
                if (kind_ == MediatorKind::Sigma && !is_bijection(psi, v))
                    continue;
                const Matrix pulled = multiply(at_w.blocks[block], FnProp::embed_op(psi, v));
                if (pulled.max_abs() > bounds_.entry_bound)
                    continue;
                // lift . psi == phi: fixed on the image of psi, free elsewhere.
                std::vector<std::vector<std::size_t>> choices(v);
                bool consistent = true;
                for (std::size_t i = 0; i < w && consistent; ++i) {
                    auto& c = choices[psi[i]];
                    if (c.empty())
                        c.push_back(phi[i]);
                    else
                        consistent = c.front() == phi[i];
                }
                if (!consistent)
                    continue;
                for (auto& c : choices)
                    if (c.empty()) {
                        c.resize(f_.cols);
                        std::iota(c.begin(), c.end(), std::size_t{0});
                    }
                Element at_v = at_w;
                at_v.y[k] = v;
                at_v.blocks[block] = pulled;
                detail::for_each_choice(choices, [&](const std::vector<std::size_t>& lift) {
                    at_v.fns[k] = lift;
                    relate(uf, e, at_v);
                });
            }
        }
    }

    Matrix f_;
    MediatorKind kind_;
    MonadKind monad_;
    DecompositionBounds bounds_;
    FnProp fn_;
    std::vector<Matrix> targets_;
    std::vector<Element> elements_;
    std::map<Element, std::size_t> index_;
};

std::string partition_name(const std::vector<std::size_t>& p)
{
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i)
        s += (i ? "," : "") + std::to_string(p[i]);
    return s + ")";
}

}  // namespace

DecompositionClasses decomposition_classes(const Matrix& f, const std::vector<std::size_t>& partition,
                                           MediatorKind kind, MonadKind monad,
                                           const DecompositionBounds& bounds)
{
    return DecompositionSpace(f, partition, kind, monad, bounds).classes();
}

Verdict check_decomposition_equivalence(const Matrix& f, const std::vector<std::size_t>& partition,
                                        const DecompositionBounds& bounds)
{
    const Decomposition canon = canonical_decomposition(f, partition);
    if (recompose(canon) != f)
        return Verdict::fail("decomposition-equivalence", render(f), "canonical decomposition does not recompose");
    // Functions out of a sum form a product, so the coend splits blockwise.
    DecompositionBounds b = bounds;
    b.max_mediator = std::max(b.max_mediator, f.cols);
    b.entry_bound = std::max(b.entry_bound, f.max_abs());
    const std::string subject = render(f) + " " + partition_name(partition);
    std::size_t elements = 0;
    for (std::size_t i = 0; i < partition.size(); ++i) {
        const auto cls = decomposition_classes(canon.blocks[i], {partition[i]}, MediatorKind::FnOp,
                                               MonadKind::M, b);
        elements += cls.elements;
        if (cls.classes != 1)
            return Verdict::fail("decomposition-equivalence", subject,
                                 "block " + std::to_string(i) + " has " + std::to_string(cls.classes) +
                                     " classes");
    }
    return Verdict::ok("decomposition-equivalence", subject,
                       "elements=" + std::to_string(elements) + " mediator<=" +
                           std::to_string(b.max_mediator) + " entries<=" + std::to_string(b.entry_bound));
}

Verdict sigma_failure_demo()
{
    const FnProp fn(2);
    std::size_t bijections = 0;
    for (const auto& g : fn.homs(2, 1))
        bijections += is_bijection(g, 1) ? 1 : 0;
    const Matrix comult = Matrix::from_rows(1, {{1}, {1}});
    const auto cls = decomposition_classes(comult, {1, 1}, MediatorKind::Sigma, MonadKind::S,
                                           DecompositionBounds{2, 1, 10000});
    const std::string scope = "Sigma(1,2)=" + std::to_string(bijections) +
                              " decompositions=" + std::to_string(cls.elements);
    if (bijections == 0 && cls.elements == 0)
        return Verdict::fail("sigma-decomposition", render(comult) + " (1,1)",
                             "no permutation mediator 1->2", scope);
    return Verdict::ok("sigma-decomposition", render(comult) + " (1,1)", scope);
}

Verdict bounded_companion_rightpseudo(MediatorKind kind, MonadKind monad,
                                      const std::vector<CompanionIndex>& indices,
                                      const DecompositionBounds& bounds)
{
    const std::string subject = kind == MediatorKind::FnOp ? "F^op->H" : "Sigma->H";
    std::size_t targets = 0;
    for (const auto& idx : indices) {
        const std::size_t rows = std::accumulate(idx.targets.begin(), idx.targets.end(), std::size_t{0});
        const MatProp slice(std::max(rows, idx.source), bounds.entry_bound);
        for (const Matrix& f : slice.homs(idx.source, rows)) {
            ++targets;
            const auto cls = decomposition_classes(f, idx.targets, kind, monad, bounds);
            if (cls.classes != 1)
                return Verdict::fail("companion-right-pseudo", subject,
                                     "x=" + std::to_string(idx.source) + " z=" +
                                         partition_name(idx.targets) + " f=" + render(f) + " classes=" +
                                         std::to_string(cls.classes));
        }
    }
    return Verdict::ok("companion-right-pseudo", subject,
                       std::string("monad=") + kind_name(monad) + " indices=" +
                           std::to_string(indices.size()) + " targets=" + std::to_string(targets));
}

}  // namespace procat
