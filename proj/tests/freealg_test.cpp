#include "qdc/freealg.hpp"

#include <random>

#include "doctest.h"

using namespace qdc;

namespace {

AlphabetRef oq_alphabet() {
    static AlphabetRef a = std::make_shared<Alphabet>(Alphabet::named_grid(
        "OqSL2", {"a", "b", "c", "d"}, 2, 2, Field::symbolic()));
    return a;
}

NCPoly gen(const AlphabetRef& al, const char* n) {
    return NCPoly::generator(al, *al->find(n));
}

// Coproduct of the diagonal 2x2 cell: Delta(a_ij) = sum_k a_ik (x) a_kj.
GenMorphism coproduct(const AlphabetRef& al) {
    GenMorphism f;
    f.name = "Delta";
    f.source = al;
    f.targets = {al, al};
    for (GenId g = 0; g < al->size(); ++g) {
        auto [i, j] = al->grid_pos(g);
        NCPoly img(std::vector<AlphabetRef>{al, al});
        for (int k = 0; k < 2; ++k) {
            img.add_term({Word{al->at_grid(i, k)}, Word{al->at_grid(k, j)}},
                         al->field().one());
        }
        f.images.push_back(img);
    }
    return f;
}

GenMorphism counit(const AlphabetRef& al) {
    GenMorphism f;
    f.name = "eps";
    f.source = al;
    f.targets = {al};
    for (GenId g = 0; g < al->size(); ++g) {
        auto [i, j] = al->grid_pos(g);
        f.images.push_back(NCPoly::constant(
            al, i == j ? al->field().one() : al->field().zero()));
    }
    return f;
}

// S(a)=d, S(b)=-qb, S(c)=-q^-1 c, S(d)=a; antimultiplicative.
GenMorphism antipode(const AlphabetRef& al) {
    const Field& f = al->field();
    GenMorphism s;
    s.name = "S";
    s.source = al;
    s.targets = {al};
    s.antimultiplicative = true;
    s.images.push_back(gen(al, "d"));
    s.images.push_back(gen(al, "b").scaled(-f.q_pow(1)));
    s.images.push_back(gen(al, "c").scaled(-f.q_pow(-1)));
    s.images.push_back(gen(al, "a"));
    return s;
}

NCPoly random_poly(const AlphabetRef& al, std::mt19937& rng, int max_terms = 3,
                   int max_deg = 3) {
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<int> g(0, static_cast<int>(al->size()) - 1);
    NCPoly p(al);
    for (int t = 0; t < max_terms; ++t) {
        Word w;
        int d = deg(rng);
        for (int i = 0; i < d; ++i) w.push_back(static_cast<GenId>(g(rng)));
        p.add_term({w}, al->field().integer(coef(rng)));
    }
    return p;
}

}  // namespace

TEST_CASE("word products and bilinearity") {
    auto al = oq_alphabet();
    const Field& f = al->field();
    NCPoly a = gen(al, "a"), b = gen(al, "b"), c = gen(al, "c"), d = gen(al, "d");

    NCPoly ad = a * d;
    CHECK(ad.term_count() == 1);
    CHECK(ad.coeff({Word{0, 3}}) == f.one());

    CHECK((a + b) * c == a * c + b * c);

    NCPoly aa = a.tensor(a);
    NCPoly bc = b.tensor(c);
    NCPoly prod = aa * bc;
    CHECK(prod.arity() == 2);
    CHECK(prod.coeff({Word{0, 1}, Word{0, 2}}) == f.one());  // ab (x) ac
    CHECK(prod.term_count() == 1);
}

TEST_CASE("multiplication is associative and unital on random samples") {
    auto al = oq_alphabet();
    std::mt19937 rng(99);
    NCPoly one = NCPoly::unit({al});
    for (int it = 0; it < 25; ++it) {
        NCPoly p = random_poly(al, rng);
        NCPoly r = random_poly(al, rng);
        NCPoly t = random_poly(al, rng);
        CHECK((p * r) * t == p * (r * t));
        CHECK(p * one == p);
        CHECK(one * p == p);
    }
}

TEST_CASE("coproduct images match the quantum SL2 formulas") {
    auto al = oq_alphabet();
    auto delta = coproduct(al);
    NCPoly da = delta.apply(gen(al, "a"));
    NCPoly expected(std::vector<AlphabetRef>{al, al});
    expected.add_term({Word{0}, Word{0}}, al->field().one());  // a (x) a
    expected.add_term({Word{1}, Word{2}}, al->field().one());  // b (x) c
    CHECK(da == expected);
}

TEST_CASE("counit kills off-diagonal generators") {
    auto al = oq_alphabet();
    auto eps = counit(al);
    CHECK(eps.apply(gen(al, "b")).is_zero());
    CHECK(eps.apply(gen(al, "a")) == NCPoly::unit({al}));
}

TEST_CASE("antipode of a product reverses factors") {
    auto al = oq_alphabet();
    const Field& f = al->field();
    auto S = antipode(al);
    NCPoly ab = gen(al, "a") * gen(al, "b");
    // S(ab) = S(b) S(a) = (-q b)(d)
    NCPoly expected = gen(al, "b").scaled(-f.q_pow(1)) * gen(al, "d");
    CHECK(S.apply(ab) == expected);
}

TEST_CASE("morphism application is multiplicative (reversed when flagged)") {
    auto al = oq_alphabet();
    auto delta = coproduct(al);
    auto S = antipode(al);
    std::mt19937 rng(7);
    for (int it = 0; it < 15; ++it) {
        NCPoly p = random_poly(al, rng, 2, 2);
        NCPoly r = random_poly(al, rng, 2, 2);
        CHECK(delta.apply(p * r) == delta.apply(p) * delta.apply(r));
        CHECK(S.apply(p * r) == S.apply(r) * S.apply(p));
    }
    CHECK(delta.apply(NCPoly::unit({al})) == NCPoly::unit({al, al}));
}

TEST_CASE("apply_at splices legs and contract_unit_leg drops counit legs") {
    auto al = oq_alphabet();
    auto delta = coproduct(al);
    auto eps = counit(al);
    NCPoly da = delta.apply(gen(al, "a"));

    // coassociativity on the generator a
    NCPoly left = apply_at(delta, da, 0);
    NCPoly right = apply_at(delta, da, 1);
    CHECK(left.arity() == 3);
    CHECK(left == right);

    // (eps (x) id) Delta(a) = a after dropping the scalar leg
    NCPoly e0 = contract_unit_leg(apply_at(eps, da, 0), 0);
    CHECK(e0 == gen(al, "a"));
    NCPoly e1 = contract_unit_leg(apply_at(eps, da, 1), 1);
    CHECK(e1 == gen(al, "a"));
}

TEST_CASE("poly parser") {
    auto al = oq_alphabet();
    const Field& f = al->field();
    NCPoly p = parse_poly(al, "a d - q^-1 b c - 1");
    NCPoly expected = gen(al, "a") * gen(al, "d") -
                      (gen(al, "b") * gen(al, "c")).scaled(f.q_pow(-1)) -
                      NCPoly::unit({al});
    CHECK(p == expected);
    CHECK(parse_poly(al, "b^2 c") ==
          gen(al, "b") * gen(al, "b") * gen(al, "c"));
    CHECK_THROWS_AS(parse_poly(al, "z + 1"), ParseError);
    // round-trip through printing
    CHECK(parse_poly(al, p.to_string().c_str()) == p);
}
