#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace procat {

// Renders a tuple atom "(a,b,...)".
std::string tuple_atom(const std::vector<std::string>& parts);
// Renders a tag atom "tag:a".
std::string tag_atom(std::string_view tag, std::string_view atom);

// An immutable finite set of atoms, stored in canonical (lexicographic) order.
// Elements are addressed by their position in that order.
class FinSet {
public:
    FinSet();
    // Sorts; throws ValidationError on duplicates.
    explicit FinSet(std::vector<std::string> atoms);

    std::size_t size() const noexcept { return atoms_->size(); }
    bool empty() const noexcept { return atoms_->empty(); }
    const std::string& operator[](std::size_t i) const { return (*atoms_)[i]; }
    const std::vector<std::string>& atoms() const noexcept { return *atoms_; }
    std::optional<std::size_t> index_of(std::string_view atom) const;
    bool contains(std::string_view atom) const { return index_of(atom).has_value(); }

    friend bool operator==(const FinSet& a, const FinSet& b);

private:
    std::shared_ptr<const std::vector<std::string>> atoms_;
};

class FinMap {
public:
    FinMap() = default;
    // Throws ValidationError when an image is out of range or the graph is not total.
    FinMap(FinSet source, FinSet target, std::vector<std::size_t> graph);
    static FinMap identity(const FinSet& s);

    const FinSet& source() const noexcept { return source_; }
    const FinSet& target() const noexcept { return target_; }
    const std::vector<std::size_t>& graph() const noexcept { return graph_; }
    std::size_t operator()(std::size_t i) const { return graph_[i]; }

    bool injective() const;
    bool surjective() const;
    bool bijective() const { return injective() && surjective(); }

    friend bool operator==(const FinMap& a, const FinMap& b);

private:
    FinSet source_;
    FinSet target_;
    std::vector<std::size_t> graph_;
};

// g after f; throws SourceMismatch unless f.target == g.source.
FinMap compose(const FinMap& g, const FinMap& f);

class UnionFind {
public:
    explicit UnionFind(std::size_t n = 0);
    std::size_t find(std::size_t x);
    // Returns true when two distinct classes were merged.
    bool unite(std::size_t a, std::size_t b);
    std::size_t size() const noexcept { return parent_.size(); }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> rank_;
};

// A partition of base with the order-minimal element of each class as rep.
// Classes are numbered by increasing representative.
struct Quotient {
    FinSet base;
    std::vector<std::size_t> class_of;  // element -> class
    std::vector<std::size_t> reps;      // class -> representative element

    std::size_t size() const noexcept { return reps.size(); }
    std::vector<std::vector<std::size_t>> classes() const;
    FinMap projection() const;  // base -> set of representatives
    FinSet rep_set() const;
};

// Builds the quotient of {0..n-1} generated by the given pairs. The rank
// function orders elements; the rep of each class minimises it.
Quotient quotient_from_pairs(const FinSet& base,
                             const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

Quotient coequalize(const FinMap& f, const FinMap& g);

struct Pullback {
    FinSet set;
    FinMap p1;
    FinMap p2;
};
Pullback pullback(const FinMap& f, const FinMap& g);

struct Product {
    FinSet set;
    FinMap p1;
    FinMap p2;
    std::vector<std::vector<std::size_t>> pair_index;  // (i,j) -> element
};
Product product(const FinSet& a, const FinSet& b);

struct Coproduct {
    FinSet set;
    FinMap inl;
    FinMap inr;
};
Coproduct coproduct(const FinSet& a, const FinSet& b);

struct Equalizer {
    FinSet set;
    FinMap inclusion;
};
Equalizer equalize(const FinMap& f, const FinMap& g);

}  // namespace procat
