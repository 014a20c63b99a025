#pragma once

// Sequence arithmetic shared by the monad, algebra and lifting code.

#include "procat/equipment.hpp"
#include "procat/fincat.hpp"
#include "procat/monalg.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace procat::detail {

std::vector<Perm> perms_for(MonadKind kind, std::size_t n);

// Visits every tuple picking one entry from each list, in lexicographic order.
template <class T, class F>
void for_each_choice(const std::vector<std::vector<T>>& choices, F&& visit)
{
    for (const auto& c : choices)
        if (c.empty())
            return;
    std::vector<std::size_t> pos(choices.size(), 0);
    std::vector<T> pick;
    pick.reserve(choices.size());
    for (const auto& c : choices)
        pick.push_back(c[0]);
    for (;;) {
        visit(pick);
        std::size_t k = choices.size();
        while (k > 0) {
            --k;
            if (++pos[k] < choices[k].size()) {
                pick[k] = choices[k][pos[k]];
                break;
            }
            pos[k] = 0;
            pick[k] = choices[k][0];
            if (k == 0)
                return;
        }
        if (choices.empty())
            return;
    }
}

// Arrows (sigma, parts) out of x with part i drawn from out(x[sigma i]).
template <class X, class P, class Out>
std::vector<SeqArrowT<P>> out_generic(MonadKind kind, const std::vector<X>& x, Out out)
{
    std::vector<SeqArrowT<P>> result;
    for (const Perm& s : perms_for(kind, x.size())) {
        std::vector<std::vector<P>> choices;
        choices.reserve(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            choices.push_back(out(x[s[i]]));
        for_each_choice(choices, [&](const std::vector<P>& parts) {
            result.push_back(SeqArrowT<P>{s, parts});
        });
    }
    return result;
}

// Arrows x -> y with part i drawn from hom(x[sigma i], y[i]).
template <class X, class Y, class P, class Hom>
std::vector<SeqArrowT<P>> hom_generic(MonadKind kind, const std::vector<X>& x,
                                      const std::vector<Y>& y, Hom hom)
{
    std::vector<SeqArrowT<P>> result;
    if (x.size() != y.size())
        return result;
    for (const Perm& s : perms_for(kind, x.size())) {
        std::vector<std::vector<P>> choices;
        choices.reserve(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            choices.push_back(hom(x[s[i]], y[i]));
        for_each_choice(choices, [&](const std::vector<P>& parts) {
            result.push_back(SeqArrowT<P>{s, parts});
        });
    }
    return result;
}

std::vector<MorId> hom_list(const FinCat& c, ObId a, ObId b);
std::vector<ElemId> fiber_list(const Profunctor& j, ObId a, ObId b);
std::vector<ElemId> row_list(const Profunctor& j, ObId a);

// Level one: T A and T J.
std::vector<SeqArrow> out_arrows(MonadKind kind, const FinCat& a, const Seq& x);
std::vector<SeqArrow> hom_arrows(MonadKind kind, const FinCat& a, const Seq& x, const Seq& y);
std::vector<SeqArrow> elem_arrows(MonadKind kind, const Profunctor& j, const Seq& x, const Seq& y);
// Single-coordinate non-identity morphisms and, under S, adjacent transpositions.
std::vector<SeqArrow> generators(MonadKind kind, const FinCat& a, const Seq& x);

Seq arrow_src(const FinCat& a, const SeqArrow& f);
Seq arrow_tgt(const FinCat& a, const SeqArrow& f);
Seq elem_src(const Profunctor& j, const SeqArrow& e);
Seq elem_tgt(const Profunctor& j, const SeqArrow& e);
SeqArrow identity_arrow(const FinCat& a, const Seq& x);
SeqArrow permutation_arrow(const FinCat& a, const Seq& x, const Perm& s);  // x -> x.s
SeqArrow compose_arrows(const FinCat& a, const SeqArrow& g, const SeqArrow& f);
SeqArrow act_left(const Profunctor& j, const SeqArrow& s, const SeqArrow& e);
SeqArrow act_right(const Profunctor& j, const SeqArrow& e, const SeqArrow& t);
std::string arrow_label(MonadKind kind, const FinCat& a, const SeqArrow& f);
std::string elem_label(MonadKind kind, const Profunctor& j, const SeqArrow& e);
std::string seq_name(const FinCat& a, const Seq& x);

// Level two: T^2 A and T^2 J.
std::vector<SeqArrow2> out_arrows2(MonadKind kind, const FinCat& a, const Seq2& x);
std::vector<SeqArrow2> hom_arrows2(MonadKind kind, const FinCat& a, const Seq2& x, const Seq2& y);
std::vector<SeqArrow2> elem_arrows2(MonadKind kind, const Profunctor& j, const Seq2& x,
                                    const Seq2& y);
std::vector<SeqArrow2> generators2(MonadKind kind, const FinCat& a, const Seq2& x);
Seq2 arrow2_src(const FinCat& a, const SeqArrow2& f);
Seq2 arrow2_tgt(const FinCat& a, const SeqArrow2& f);
SeqArrow2 identity_arrow2(const FinCat& a, const Seq2& x);
SeqArrow2 compose_arrows2(const FinCat& a, const SeqArrow2& g, const SeqArrow2& f);
SeqArrow2 act_left2(const Profunctor& j, const SeqArrow2& s, const SeqArrow2& e);
SeqArrow2 act_right2(const Profunctor& j, const SeqArrow2& e, const SeqArrow2& t);
std::string arrow2_label(MonadKind kind, const FinCat& a, const SeqArrow2& f);
std::string elem2_label(MonadKind kind, const Profunctor& j, const SeqArrow2& e);
std::string seq2_name(const FinCat& a, const Seq2& x);

// Splits x into consecutive blocks of the given lengths.
Seq2 regroup(const Seq& x, const Seq& lengths);
Seq lengths_of(const Seq2& x);
// All double sequences over n objects whose block lengths are a permutation
// of lengths (under M: exactly lengths).
std::vector<Seq2> double_sequences(MonadKind kind, std::size_t objects, const Seq& lengths);

using Seq3 = std::vector<Seq2>;
// Shapes of in-budget triple sequences: lists of block-length lists.
std::vector<std::vector<Seq>> triple_shapes(std::size_t budget);
std::vector<Seq3> triple_sequences(std::size_t objects, std::size_t budget);
std::vector<Seq2> double_sequences_in_budget(std::size_t objects, std::size_t budget);

bool is_iso(const FinCat& c, MorId m);
MorId inverse_mor(const FinCat& c, MorId m);  // throws ValidationError

}  // namespace procat::detail
