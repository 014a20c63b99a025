#include "doctest.h"

#include "procat/error.hpp"
#include "procat/fincat.hpp"

using namespace procat;

namespace {

// A two-object category with a non-trivial idempotent e on x and a map p: x->y
// satisfying p o e = p.
CatRef idempotent_cat()
{
    std::vector<MorDecl> ms{{"id", "x", "x"}, {"e", "x", "x"}, {"id", "y", "y"}, {"p", "x", "y"}};
    return make_cat(FinCat({"x", "y"}, ms, {0, 2}, [&](std::size_t g, std::size_t f) {
        if (g == 0 || g == 2)
            return f;
        if (f == 0 || f == 2)
            return g;
        if (g == 1 && f == 1)
            return std::size_t{1};
        return std::size_t{3};  // p o e
    }));
}

}  // namespace

TEST_CASE("basic categories validate")
{
    CHECK(validate_cat(*terminal_cat()).pass);
    CHECK(validate_cat(*walking_arrow()).pass);
    CHECK(validate_cat(*idempotent_cat()).pass);
    // A one-object table with identities intact but (a.a).a != a.(a.a).
    std::vector<MorDecl> ms{{"id", "x", "x"}, {"a", "x", "x"}, {"b", "x", "x"}};
    const std::size_t table[3][3] = {{0, 1, 2}, {1, 2, 1}, {2, 2, 2}};
    FinCat broken({"x"}, ms, {0}, [&](std::size_t g, std::size_t f) { return table[g][f]; });
    Verdict bad = validate_cat(broken);
    CHECK_FALSE(bad.pass);
    CHECK(bad.witness.find("associativity") != std::string::npos);
}

TEST_CASE("free category on a dag")
{
    CHECK(discrete_cat({"a", "b"})->num_morphisms() == 2);
    CatRef arrow = walking_arrow();
    CHECK(arrow->num_morphisms() == 3);
    CatRef chain = free_cat_on_dag({"a", "b", "c"}, {{"f", "a", "b"}, {"g", "b", "c"}});
    CHECK(chain->hom(chain->ob("a"), chain->ob("c")).size() == 1);
    CHECK(chain->mor_name(chain->hom(0, 2)[0]) == "f;g:a->c");
    CHECK(validate_cat(*chain).pass);
    CHECK_THROWS_AS(free_cat_on_dag({"a", "b"}, {{"f", "a", "b"}, {"g", "b", "a"}}), CyclicGraph);
    CHECK_THROWS_AS(free_cat_on_dag({"a"}, {{"f", "a", "a"}}), CyclicGraph);
    CatRef diamond = free_cat_on_dag(
        {"a", "b", "c", "d"}, {{"f", "a", "b"}, {"g", "a", "c"}, {"h", "b", "d"}, {"k", "c", "d"}});
    CHECK(diamond->hom(0, 3).size() == 2);
    CHECK(validate_cat(*diamond).pass);
}

TEST_CASE("opposite and product")
{
    CatRef arrow = walking_arrow();
    CatRef op = opposite(arrow);
    CHECK(op->hom(op->ob("top"), op->ob("bot")).size() == 1);
    CHECK(*opposite(op) == *arrow);
    CatRef idem = idempotent_cat();
    CHECK(*opposite(opposite(idem)) == *idem);
    CHECK(validate_cat(*opposite(idem)).pass);

    CatRef p = product(terminal_cat(), idem);
    CHECK(p->num_morphisms() == idem->num_morphisms());
    CatRef q = product(arrow, idem);
    CHECK(q->num_morphisms() == arrow->num_morphisms() * idem->num_morphisms());
    CHECK(validate_cat(*q).pass);
}

TEST_CASE("functors and transformations")
{
    CatRef arrow = walking_arrow();
    FinFunctor id = identity_functor(arrow);
    CHECK(validate_functor(id).pass);
    CHECK(validate_functor(constant_functor(arrow, arrow, 1)).pass);
    CHECK(compose(id, id) == id);

    auto fs = all_functors(arrow, arrow, 100);
    CHECK(fs.size() == 3);  // bot, top, identity
    CHECK_THROWS_AS(all_functors(arrow, arrow, 2), SearchBudgetExceeded);
    for (const auto& f : fs) {
        CHECK(validate_functor(f).pass);
        for (const auto& g : fs)
            for (const auto& h : fs)
                CHECK(compose(h, compose(g, f)) == compose(compose(h, g), f));
        CHECK(compose(id, f) == f);
        CHECK(compose(f, id) == f);
    }

    FinFunctor bot = constant_functor(arrow, arrow, 0);
    FinFunctor top = constant_functor(arrow, arrow, 1);
    CHECK(all_nat(bot, top).size() == 1);
    CHECK(all_nat(top, bot).empty());
    auto into_id = all_nat(bot, id);
    REQUIRE(into_id.size() == 1);
    CHECK(validate_nat(into_id[0]).pass);

    // Swapping a component breaks a square.
    NatTransf t = identity_nat(id);
    t.comp[0] = arrow->hom(0, 1)[0];
    t.to = top;
    t.comp[1] = arrow->id(1);
    CHECK(validate_nat(t).pass);
    NatTransf broken{id, id, {arrow->id(0), arrow->id(1)}};
    broken.to = top;
    Verdict v = validate_nat(broken);
    CHECK_FALSE(v.pass);
}

TEST_CASE("functor enumeration matches a brute-force oracle")
{
    CatRef idem = idempotent_cat();
    CatRef arrow = walking_arrow();
    // Brute force over all object and morphism tables.
    std::size_t brute = 0;
    const FinCat& c = *idem;
    const FinCat& d = *arrow;
    std::vector<ObId> ob(c.num_objects());
    std::vector<MorId> mor(c.num_morphisms());
    for (std::size_t code = 0; code < 8; ++code) {
        for (ObId a = 0; a < 2; ++a)
            ob[a] = (code >> a) & 1;
        std::size_t total = 1;
        for (std::size_t i = 0; i < c.num_morphisms(); ++i)
            total *= d.num_morphisms();
        for (std::size_t mc = 0; mc < total; ++mc) {
            std::size_t x = mc;
            for (auto& m : mor) {
                m = x % d.num_morphisms();
                x /= d.num_morphisms();
            }
            if (code < 4 && validate_functor(FinFunctor{idem, arrow, ob, mor}).pass)
                ++brute;
        }
    }
    CHECK(all_functors(idem, arrow, 1000).size() == brute);
}
