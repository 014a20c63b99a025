#pragma once

#include "procat/setkit.hpp"
#include "procat/verdict.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace procat {

using ObId = std::size_t;
using MorId = std::size_t;

struct MorDecl {
    std::string label;
    std::string src;
    std::string tgt;
};

// Renders a morphism atom "label:src->tgt"; hom sets are disjoint by construction.
std::string mor_atom(std::string_view label, std::string_view src, std::string_view tgt);

// A finite category given by explicit hom and composition tables.
// Objects are ordered canonically; morphism ids are ordered by (src, tgt, atom),
// so each hom set is a contiguous id range.
class FinCat {
public:
    // g-after-f on indices into the declaration list; only called on composable pairs.
    using ComposeFn = std::function<std::size_t(std::size_t g, std::size_t f)>;

    FinCat();
    // identities[i] is the declaration index of the identity on objects[i].
    // Throws ValidationError on malformed declarations or ill-typed composites.
    // Axioms are not checked here; see validate_cat.
    FinCat(std::vector<std::string> objects, std::vector<MorDecl> morphisms,
           std::vector<std::size_t> identities, const ComposeFn& compose);

    const FinSet& objects() const noexcept { return objects_; }
    std::size_t num_objects() const noexcept { return objects_.size(); }
    const std::string& ob_name(ObId a) const { return objects_[a]; }
    ObId ob(std::string_view name) const;  // throws UnknownName

    std::size_t num_morphisms() const noexcept { return src_.size(); }
    ObId src(MorId m) const { return src_[m]; }
    ObId tgt(MorId m) const { return tgt_[m]; }
    const std::string& label(MorId m) const { return label_[m]; }
    const std::string& mor_name(MorId m) const { return name_[m]; }
    MorId mor(std::string_view atom) const;  // throws UnknownName
    MorId mor(std::string_view label, ObId a, ObId b) const;

    const std::vector<MorId>& hom(ObId a, ObId b) const { return hom_[a * num_objects() + b]; }
    MorId id(ObId a) const { return ident_[a]; }
    bool is_identity(MorId m) const { return ident_[src_[m]] == m; }

    // Morphisms leaving / entering an object, ascending by id.
    const std::vector<MorId>& out(ObId a) const { return out_[a]; }
    const std::vector<MorId>& in(ObId a) const { return in_[a]; }
    std::size_t out_pos(MorId m) const { return out_pos_[m]; }
    std::size_t in_pos(MorId m) const { return in_pos_[m]; }

    // g after f; throws SourceMismatch unless tgt(f) == src(g).
    MorId compose(MorId g, MorId f) const;
    MorId compose_unchecked(MorId g, MorId f) const { return comp_[f][out_pos_[g]]; }

    friend bool operator==(const FinCat& a, const FinCat& b);

private:
    FinSet objects_;
    std::vector<ObId> src_, tgt_;
    std::vector<std::string> label_, name_;
    std::vector<std::vector<MorId>> hom_;
    std::vector<MorId> ident_;
    std::vector<std::vector<MorId>> out_, in_;
    std::vector<std::size_t> out_pos_, in_pos_;
    std::vector<std::vector<MorId>> comp_;  // comp_[f][out_pos(g)] = g after f
};

using CatRef = std::shared_ptr<const FinCat>;

CatRef make_cat(FinCat c);
bool same_cat(const CatRef& a, const CatRef& b);

struct FinFunctor {
    CatRef src;
    CatRef tgt;
    std::vector<ObId> ob;
    std::vector<MorId> mor;

    ObId on_ob(ObId a) const { return ob[a]; }
    MorId on_mor(MorId m) const { return mor[m]; }
};

bool operator==(const FinFunctor& a, const FinFunctor& b);

FinFunctor identity_functor(const CatRef& c);
FinFunctor constant_functor(const CatRef& src, const CatRef& tgt, ObId x);
// G after F; throws SourceMismatch.
FinFunctor compose(const FinFunctor& g, const FinFunctor& f);
std::string render_functor(const FinFunctor& f);

struct NatTransf {
    FinFunctor from;
    FinFunctor to;
    std::vector<MorId> comp;  // object of the source category -> component
};

bool operator==(const NatTransf& a, const NatTransf& b);
NatTransf identity_nat(const FinFunctor& f);
// beta after alpha; throws SourceMismatch.
NatTransf vcompose(const NatTransf& beta, const NatTransf& alpha);

Verdict validate_cat(const FinCat& c);
Verdict validate_functor(const FinFunctor& f);
Verdict validate_nat(const NatTransf& t);

CatRef opposite(const CatRef& c);
CatRef product(const CatRef& c, const CatRef& d);
// Paths of a finite acyclic graph; path labels join edge labels with ';' in
// traversal order, identities are labelled "id". Throws CyclicGraph.
CatRef free_cat_on_dag(const std::vector<std::string>& vertices,
                       const std::vector<MorDecl>& edges);
CatRef terminal_cat();
CatRef discrete_cat(const std::vector<std::string>& objects);
CatRef walking_arrow();  // bot --u--> top
// Thin category of a preorder; leq[i][j] must be reflexive and transitive
// (throws ValidationError otherwise). The unique x -> y is labelled "le".
CatRef preorder_cat(const std::vector<std::string>& elements,
                    const std::vector<std::vector<bool>>& leq);

// Visits functors C -> D in canonical order until the visitor returns false.
void for_each_functor(const CatRef& c, const CatRef& d,
                      const std::function<bool(const FinFunctor&)>& visit);
// Throws SearchBudgetExceeded when more than budget functors exist.
std::vector<FinFunctor> all_functors(const CatRef& c, const CatRef& d, std::size_t budget);
std::vector<NatTransf> all_nat(const FinFunctor& f, const FinFunctor& g);

}  // namespace procat
