#include "doctest.h"

#include "procat/corpus.hpp"
#include "procat/error.hpp"
#include "procat/propdemo.hpp"

using namespace procat;

namespace {

Matrix m(std::size_t cols, std::vector<std::vector<std::int64_t>> rows)
{
    return Matrix::from_rows(cols, rows);
}

Matrix random_matrix(Corpus& corpus, std::size_t rows, std::size_t cols, std::int64_t bound)
{
    Matrix r(rows, cols);
    for (auto& e : r.entries)
        e = static_cast<std::int64_t>(corpus.below(static_cast<std::size_t>(2 * bound + 1))) - bound;
    return r;
}

// Naive triple-loop product, independent of the library.
Matrix naive_product(const Matrix& g, const Matrix& f)
{
    Matrix r(g.rows, f.cols);
    for (std::size_t i = 0; i < g.rows; ++i)
        for (std::size_t j = 0; j < f.cols; ++j) {
            std::int64_t s = 0;
            for (std::size_t k = 0; k < g.cols; ++k)
                s += g.at(i, k) * f.at(k, j);
            r.at(i, j) = s;
        }
    return r;
}

std::vector<std::vector<std::size_t>> compositions(std::size_t n)
{
    if (n == 0)
        return {{}};
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t first = 1; first <= n; ++first)
        for (auto rest : compositions(n - first)) {
            rest.insert(rest.begin(), first);
            out.push_back(rest);
        }
    return out;
}

// Counts decompositions (y, functions, blocks) of f by brute force over all
// block matrices, without a shuffle.
std::size_t brute_force_count(const Matrix& f, const std::vector<std::size_t>& partition,
                              std::size_t max_mediator, std::int64_t bound)
{
    const FnProp fn(max_mediator);
    const MatProp h(max_mediator + f.rows, bound);
    std::size_t count = 0;
    // Only two blocks are needed by the callers.
    REQUIRE(partition.size() == 2);
    for (std::size_t y0 = 0; y0 <= max_mediator; ++y0)
        for (std::size_t y1 = 0; y1 <= max_mediator; ++y1)
            for (const auto& g0 : fn.homs(y0, f.cols))
                for (const auto& g1 : fn.homs(y1, f.cols))
                    for (const auto& h0 : h.homs(y0, partition[0]))
                        for (const auto& h1 : h.homs(y1, partition[1])) {
                            Matrix med = stack({FnProp::embed_op(g0, f.cols), FnProp::embed_op(g1, f.cols)});
                            if (y0 + y1 == 0)
                                med = Matrix(0, f.cols);
                            if (naive_product(block_sum(h0, h1), med) == f)
                                ++count;
                        }
    return count;
}

}  // namespace

TEST_CASE("the antipode identity evaluates to the zero matrix")
{
    const MatProp h(4, 2);
    const Matrix row = m(2, {{1, 1}});
    const Matrix diag = m(2, {{-1, 0}, {0, 1}});
    const Matrix col = m(1, {{1}, {1}});
    CHECK(h.compose(row, h.compose(diag, col)) == Matrix(1, 1));
    CHECK(h.tensor(h.antipode(), h.identity(1)) == diag);
    CHECK(h.compose(h.unit(), h.counit()) == Matrix(1, 1));
    CHECK(h.compose(h.counit(), h.unit()) == Matrix(0, 0));
    const Matrix coassoc = h.compose(h.tensor(h.comult(), h.identity(1)), h.comult());
    CHECK(coassoc == m(1, {{1}, {1}, {1}}));
    CHECK(coassoc == h.compose(h.tensor(h.identity(1), h.comult()), h.comult()));

    const Verdict v = hopf_axiom_check(4, 2);
    CHECK_MESSAGE(v.pass, v.witness);
    CHECK(v.scope.find("antipode=(0)") != std::string::npos);
    CHECK_THROWS_AS(hopf_axiom_check(2, 2), OverflowBound);
}

TEST_CASE("bounded matrix slice")
{
    const MatProp h(3, 1);
    CHECK(h.homs(2, 1).size() == 9);
    CHECK(h.homs(0, 3).size() == 1);
    CHECK_THROWS_AS(h.homs(4, 1), OverflowBound);
    CHECK_THROWS_AS(h.compose(m(2, {{1, 1}}), m(1, {{1}, {1}})), OverflowBound);
    CHECK_THROWS_AS(h.compose(m(1, {{1}}), m(1, {{1}, {1}})), TargetMismatch);
    CHECK_THROWS_AS(h.tensor(h.identity(2), h.identity(2)), OverflowBound);

    SUBCASE("composition is associative and unital where defined")
    {
        const auto a = h.homs(1, 2), b = h.homs(2, 1), c = h.homs(1, 1);
        std::size_t checked = 0;
        for (const auto& f : a)
            for (const auto& g : b)
                for (const auto& k : c) {
                    Matrix gf, kg;
                    try {
                        gf = h.compose(g, f);
                        kg = h.compose(k, g);
                    } catch (const OverflowBound&) {
                        continue;
                    }
                    Matrix left, right;
                    bool left_ok = true, right_ok = true;
                    try { left = h.compose(k, gf); } catch (const OverflowBound&) { left_ok = false; }
                    try { right = h.compose(kg, f); } catch (const OverflowBound&) { right_ok = false; }
                    REQUIRE(left_ok == right_ok);
                    if (left_ok) {
                        CHECK(left == right);
                        CHECK(left == naive_product(k, naive_product(g, f)));
                        ++checked;
                    }
                }
        CHECK(checked > 100);
        for (const auto& f : a) {
            CHECK(h.compose(h.identity(2), f) == f);
            CHECK(h.compose(f, h.identity(1)) == f);
        }
    }
    SUBCASE("block sum is functorial")
    {
        Corpus corpus(11);
        const MatProp wide(6, 100);
        for (int round = 0; round < 50; ++round) {
            const Matrix f1 = random_matrix(corpus, 2, 1, 2), g1 = random_matrix(corpus, 1, 2, 2);
            const Matrix f2 = random_matrix(corpus, 1, 2, 2), g2 = random_matrix(corpus, 2, 1, 2);
            CHECK(wide.compose(wide.tensor(g1, g2), wide.tensor(f1, f2)) ==
                  wide.tensor(wide.compose(g1, f1), wide.compose(g2, f2)));
        }
    }
    SUBCASE("symmetry is a permutation matrix and self-inverse")
    {
        const Matrix s = h.symmetry(1, 2);
        CHECK(s == m(3, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}));
        CHECK(h.compose(h.symmetry(2, 1), s) == h.identity(3));
        const Matrix f = m(1, {{1}}), g = m(2, {{1, -1}, {0, 1}});
        CHECK(h.compose(h.symmetry(1, 2), h.tensor(f, g)) == h.compose(h.tensor(g, f), h.symmetry(1, 2)));
    }
}

TEST_CASE("finite functions")
{
    const FnProp fn(4);
    CHECK(fn.homs(3, 2).size() == 8);
    CHECK(fn.homs(0, 0).size() == 1);
    CHECK(fn.homs(2, 0).empty());

    SUBCASE("tensor follows the case split and embeds as a block sum")
    {
        std::size_t pairs = 0;
        for (std::size_t m1 = 0; m1 <= 2; ++m1)
            for (std::size_t n1 = 0; n1 <= 2; ++n1)
                for (std::size_t m2 = 0; m2 <= 2; ++m2)
                    for (std::size_t n2 = 0; n2 <= 2; ++n2)
                        for (const auto& f : fn.homs(m1, n1))
                            for (const auto& g : fn.homs(m2, n2)) {
                                const auto t = fn.tensor(f, n1, g, n2);
                                REQUIRE(t.size() == m1 + m2);
                                for (std::size_t i = 0; i < t.size(); ++i)
                                    CHECK(t[i] == (i < m1 ? f[i] : g[i - m1] + n1));
                                CHECK(FnProp::embed_op(t, n1 + n2) ==
                                      block_sum(FnProp::embed_op(f, n1), FnProp::embed_op(g, n2)));
                                ++pairs;
                            }
        CHECK(pairs > 100);
        CHECK_THROWS_AS(fn.tensor({0, 0, 0}, 1, {0, 0}, 1), OverflowBound);
    }
    SUBCASE("the opposite embeds contravariantly")
    {
        for (const auto& f : fn.homs(2, 3))
            for (const auto& g : fn.homs(3, 2))
                CHECK(FnProp::embed_op(FnProp::compose(g, f), 2) ==
                      naive_product(FnProp::embed_op(f, 3), FnProp::embed_op(g, 2)));
    }
    SUBCASE("loads as a finite category")
    {
        const FinCat c = FnProp(2).as_fincat();
        CHECK(c.num_objects() == 3);
        // sum over m, n <= 2 of n^m
        CHECK(c.num_morphisms() == 1 + 1 + 1 + 0 + 1 + 2 + 0 + 1 + 4);
        CHECK(validate_cat(c).pass);
    }
}

TEST_CASE("canonical decomposition")
{
    const Matrix comult = m(1, {{1}, {1}});
    const Decomposition d = canonical_decomposition(comult, {1, 1});
    CHECK(d.blocks == std::vector<Matrix>{m(1, {{1}}), m(1, {{1}})});
    CHECK(d.mediator == comult);
    CHECK(recompose(d) == comult);

    const Matrix f = m(3, {{1, -2, 0}, {2, 1, 1}});
    const Decomposition single = canonical_decomposition(f, {2});
    CHECK(single.blocks.front() == f);
    CHECK(single.mediator == identity_matrix(3));

    const Decomposition zero = canonical_decomposition(Matrix(3, 2), {1, 2});
    CHECK(zero.blocks == std::vector<Matrix>{Matrix(1, 2), Matrix(2, 2)});
    CHECK(recompose(zero) == Matrix(3, 2));

    CHECK_THROWS_AS(canonical_decomposition(f, {1}), PartitionMismatch);
    CHECK_THROWS_AS(canonical_decomposition(f, {1, 1, 1}), PartitionMismatch);

    Corpus corpus(5);
    for (int round = 0; round < 40; ++round) {
        const std::size_t rows = 1 + corpus.below(4), cols = 1 + corpus.below(4);
        const Matrix g = random_matrix(corpus, rows, cols, 2);
        for (const auto& p : compositions(rows)) {
            const Decomposition dd = canonical_decomposition(g, p);
            CHECK(recompose(dd) == g);
            Matrix sum(0, 0);
            for (const auto& b : dd.blocks)
                sum = block_sum(sum, b);
            CHECK(naive_product(sum, dd.mediator) == g);
        }
    }
}

TEST_CASE("decomposition coend classes")
{
    const Matrix comult = m(1, {{1}, {1}});
    const DecompositionBounds small{2, 1, 100000};

    SUBCASE("element counts match a brute-force enumeration")
    {
        for (const Matrix& f : {comult, m(1, {{0}, {1}}), m(2, {{1, 0}, {0, -1}}), m(1, {{0}, {0}})}) {
            const auto cls = decomposition_classes(f, {1, 1}, MediatorKind::FnOp, MonadKind::M, small);
            CHECK(cls.elements == brute_force_count(f, {1, 1}, 2, 1));
        }
    }
    SUBCASE("the comultiplication has a single class")
    {
        CHECK(decomposition_classes(comult, {1, 1}, MediatorKind::FnOp, MonadKind::M, small).classes == 1);
        CHECK(decomposition_classes(comult, {1, 1}, MediatorKind::FnOp, MonadKind::S, small).classes == 1);
        CHECK(check_decomposition_equivalence(comult, {1, 1}).pass);
    }
    SUBCASE("zero rows and identities")
    {
        CHECK(check_decomposition_equivalence(m(2, {{0, 0}, {1, 2}}), {1, 1}).pass);
        CHECK(check_decomposition_equivalence(identity_matrix(2), {2}).pass);
        CHECK(check_decomposition_equivalence(identity_matrix(2), {1, 1}).pass);
        CHECK(check_decomposition_equivalence(Matrix(1, 1), {1}).pass);
    }
    SUBCASE("random matrices")
    {
        Corpus corpus(9);
        for (int round = 0; round < 6; ++round) {
            const std::size_t rows = 1 + corpus.below(3), cols = 1 + corpus.below(3);
            const Matrix g = random_matrix(corpus, rows, cols, 2);
            for (const auto& p : compositions(rows)) {
                const Verdict v = check_decomposition_equivalence(g, p);
                CHECK_MESSAGE(v.pass, render(g) << " " << v.witness);
            }
        }
    }
    SUBCASE("guard")
    {
        CHECK_THROWS_AS(check_decomposition_equivalence(Matrix(2, 3), {2}, {3, 2, 50}), SizeGuardExceeded);
        CHECK_THROWS_AS(check_decomposition_equivalence(comult, {3}), PartitionMismatch);
    }
}

TEST_CASE("permutation mediators")
{
    const Verdict v = sigma_failure_demo();
    CHECK_FALSE(v.pass);
    CHECK(v.witness == "no permutation mediator 1->2");
    CHECK(v.scope == "Sigma(1,2)=0 decompositions=0");

    const DecompositionBounds small{2, 1, 100000};
    CHECK(decomposition_classes(m(1, {{1}}), {1}, MediatorKind::Sigma, MonadKind::S, small).classes == 1);
    const Matrix swap = m(2, {{0, 1}, {1, 0}});
    CHECK(decomposition_classes(swap, {1, 1}, MediatorKind::Sigma, MonadKind::S, small).classes == 1);
    CHECK(decomposition_classes(swap, {2}, MediatorKind::Sigma, MonadKind::S, small).classes == 1);
    CHECK(decomposition_classes(identity_matrix(2), {1, 1}, MediatorKind::Sigma, MonadKind::M, small).classes == 1);
}

TEST_CASE("bounded companion right pseudo")
{
    const DecompositionBounds small{2, 1, 100000};
    const std::vector<CompanionIndex> comult_index{{1, {1, 1}}};
    for (auto monad : {MonadKind::M, MonadKind::S}) {
        const Verdict v = bounded_companion_rightpseudo(MediatorKind::FnOp, monad, comult_index, small);
        CHECK_MESSAGE(v.pass, v.witness);
        CHECK(v.scope.find("targets=9") != std::string::npos);
    }
    const Verdict unary = bounded_companion_rightpseudo(MediatorKind::FnOp, MonadKind::S,
                                                        {{1, {1}}, {2, {1}}, {1, {2}}}, small);
    CHECK_MESSAGE(unary.pass, unary.witness);
    const Verdict sigma_unary = bounded_companion_rightpseudo(MediatorKind::Sigma, MonadKind::S, {{1, {1}}}, small);
    CHECK_MESSAGE(sigma_unary.pass, sigma_unary.witness);

    const Verdict sigma = bounded_companion_rightpseudo(MediatorKind::Sigma, MonadKind::S, comult_index, small);
    CHECK_FALSE(sigma.pass);
    CHECK(sigma.witness.find("x=1 z=(1,1)") != std::string::npos);
    CHECK(sigma.witness.find("classes=0") != std::string::npos);
}
