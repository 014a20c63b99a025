#pragma once

#include "procat/fincat.hpp"
#include "procat/monalg.hpp"
#include "procat/verdict.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace procat {

// Exact integer matrix, row-major. A morphism m -> n is an n x m matrix.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::int64_t> entries;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c);  // zero matrix
    // Throws ValidationError unless every row has c entries.
    static Matrix from_rows(std::size_t c, const std::vector<std::vector<std::int64_t>>& rows);

    std::int64_t at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
    std::int64_t& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
    std::int64_t max_abs() const;

    auto operator<=>(const Matrix&) const = default;
};

Matrix identity_matrix(std::size_t n);
Matrix block_sum(const Matrix& a, const Matrix& b);
// Rows [first, first + count) of m.
Matrix row_block(const Matrix& m, std::size_t first, std::size_t count);
Matrix stack(const std::vector<Matrix>& blocks);  // throws ValidationError on column mismatch
std::string render(const Matrix& m);              // "(1 1;0 -1)", "()" for empty shapes

// Bounded slice of the PROP of integer matrices: dimensions <= dim_bound,
// entries with |e| <= entry_bound. Results outside the slice throw OverflowBound.
class MatProp {
public:
    MatProp(std::size_t dim_bound, std::int64_t entry_bound);

    std::size_t dim_bound() const noexcept { return dim_; }
    std::int64_t entry_bound() const noexcept { return bound_; }
    bool admits(const Matrix& m) const;

    Matrix compose(const Matrix& g, const Matrix& f) const;  // g after f; TargetMismatch on shapes
    Matrix tensor(const Matrix& f, const Matrix& g) const;
    Matrix identity(std::size_t n) const;
    Matrix symmetry(std::size_t m, std::size_t n) const;  // m + n -> n + m
    std::vector<Matrix> homs(std::size_t m, std::size_t n) const;  // all n x m in the slice

    Matrix unit() const;      // 0 -> 1
    Matrix counit() const;    // 1 -> 0
    Matrix mult() const;      // 2 -> 1
    Matrix comult() const;    // 1 -> 2
    Matrix antipode() const;  // 1 -> 1

private:
    Matrix checked(Matrix m) const;
    std::size_t dim_;
    std::int64_t bound_;
};

// Functions [m] -> [n] with objects 0..dim_bound; closed under composition.
class FnProp {
public:
    using Fn = std::vector<std::size_t>;  // values in [0, codomain)

    explicit FnProp(std::size_t dim_bound);
    std::size_t dim_bound() const noexcept { return dim_; }

    // g after f, both with explicit codomains.
    static Fn compose(const Fn& g, const Fn& f);
    // (f (x) g)(i) = f(i) for i < m1, g(i - m1) + n1 otherwise; OverflowBound past the bound.
    Fn tensor(const Fn& f, std::size_t n1, const Fn& g, std::size_t n2) const;
    std::vector<Fn> homs(std::size_t m, std::size_t n) const;
    // The embedding of the opposite into matrices: g : [w] -> [v] maps to the
    // w x v matrix with a single 1 per row, at column g(i).
    static Matrix embed_op(const Fn& g, std::size_t v);
    // Objects "0".."dim_bound"; requires dim_bound <= 9 for name order.
    FinCat as_fincat() const;

private:
    std::size_t dim_;
};

// Checks the Hopf monoid identities on the generators at arity <= 2,
// including mult.(antipode (x) id).comult = unit.counit. Throws OverflowBound
// when the slice cannot hold an intermediate matrix (needs dim >= 4).
Verdict hopf_axiom_check(std::size_t dim_bound, std::int64_t entry_bound);

struct Decomposition {
    Matrix mediator;              // image of a function under FnProp::embed_op
    std::vector<Matrix> blocks;  // blocks[i] has partition[i] rows
};

// f = (blocks[0] (+) ... ) . mediator with blocks the row blocks of f and the
// mediator a stack of identities. Throws PartitionMismatch.
Decomposition canonical_decomposition(const Matrix& f, const std::vector<std::size_t>& partition);
Matrix recompose(const Decomposition& d);

// Which category supplies the mediating morphisms.
enum class MediatorKind { FnOp, Sigma };

struct DecompositionBounds {
    std::size_t max_mediator = 2;  // each coordinate of the mediating sequence
    std::int64_t entry_bound = 2;  // entries of the blocks
    std::size_t guard = 200000;    // elements enumerated per coend
};

// Coend classes of the decompositions of f with the given row partition,
// mediators from kind, sequence shuffles from monad.
struct DecompositionClasses {
    std::size_t elements = 0;
    std::size_t classes = 0;
};
DecompositionClasses decomposition_classes(const Matrix& f, const std::vector<std::size_t>& partition,
                                           MediatorKind kind, MonadKind monad,
                                           const DecompositionBounds& bounds);

// Passes when the in-bound decompositions through functions form a single class.
// Throws PartitionMismatch, SizeGuardExceeded.
Verdict check_decomposition_equivalence(const Matrix& f, const std::vector<std::size_t>& partition,
                                        const DecompositionBounds& bounds = {});

// Exhaustive search for permutation mediators 1 -> 2 decomposing (1;1);
// fails with the empty hom set as witness.
Verdict sigma_failure_demo();

struct CompanionIndex {
    std::size_t source = 1;            // x
    std::vector<std::size_t> targets;  // z_1..z_s
};

// Right pseudo condition of the companion of the embedding of kind into matrices,
// at each index: every in-bound x -> sum(z) matrix has exactly one class of decompositions.
Verdict bounded_companion_rightpseudo(MediatorKind kind, MonadKind monad,
                                      const std::vector<CompanionIndex>& indices,
                                      const DecompositionBounds& bounds);

}  // namespace procat
