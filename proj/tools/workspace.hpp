#pragma once

#include "procat/equipment.hpp"
#include "procat/fincat.hpp"
#include "procat/monalg.hpp"

#include <cstddef>
#include <map>
#include <string>

namespace procat::cli {

struct FunctorEntry {
    std::string src, tgt;
    FinFunctor functor;
};

struct ProfunctorEntry {
    std::string left, right;
    ProRef prof;
};

struct CellEntry {
    std::string src, tgt, left, right;  // profunctors, then functors
    ProCell cell;
};

// Structures are "join" (thin categories with all finite joins) or "monoid"
// (one object, commutative).
struct AlgebraEntry {
    std::string category;
    MonadKind kind = MonadKind::S;
    std::size_t budget = 2;
    std::string structure;
    AlgRef algebra;
};

// Every entry is validated on load; names are unique across all sections.
struct Workspace {
    std::map<std::string, CatRef> categories;
    std::map<std::string, FunctorEntry> functors;
    std::map<std::string, ProfunctorEntry> profunctors;
    std::map<std::string, CellEntry> cells;
    std::map<std::string, AlgebraEntry> algebras;

    const CatRef& category(const std::string& name) const;  // all lookups throw UnknownName
    const FunctorEntry& functor(const std::string& name) const;
    const ProfunctorEntry& profunctor(const std::string& name) const;
    const CellEntry& cell(const std::string& name) const;
    const AlgebraEntry& algebra(const std::string& name) const;
    std::size_t size() const;
};

// Throws ParseError on malformed text, ValidationError on ill-formed or
// axiom-violating entries, UnknownName on dangling references.
Workspace load_document(const std::string& text);
// Throws UsageError when the file cannot be read.
Workspace load_file(const std::string& path);

// Canonical form: keys alphabetical, sets and tables sorted, two-space indent,
// trailing newline.
std::string emit_document(const Workspace& ws);

}  // namespace procat::cli
