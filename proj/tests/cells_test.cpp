#include "qdc/cells.hpp"

#include "doctest.h"

using namespace qdc;

namespace {

ScalMatrix identity3(const Field& f) { return ScalMatrix::identity(f, 3); }

// word list of all words of the given degree over the alphabet
std::vector<Word> all_words(std::size_t n, int d) {
    std::vector<Word> out{Word{}};
    for (int k = 0; k < d; ++k) {
        std::vector<Word> next;
        for (const auto& w : out)
            for (GenId g = 0; g < n; ++g) {
                Word e = w;
                e.push_back(g);
                next.push_back(std::move(e));
            }
        out = std::move(next);
    }
    return out;
}

}  // namespace

TEST_CASE("generic bilinear cell over E_q has the PBW profile") {
    Field f = Field::symbolic();
    CellRef cell = make_cell("B(Eq,Eq)", eq_matrix(f), eq_matrix(f), 6);
    for (int d = 0; d <= 5; ++d)
        CHECK(cell->system().enumerate_normal_words(d).size() ==
              static_cast<std::size_t>((d + 1) * (d + 1)));
}

TEST_CASE("generic cell and classical presentation define the same algebra") {
    Field f = Field::symbolic();
    CellRef generic = make_cell("B(Eq,Eq)", eq_matrix(f), eq_matrix(f), 6);
    CellRef oq = oq_sl2_cell(f, 6);

    // identify a11,a12,a21,a22 with a,b,c,d
    GenMorphism phi;
    phi.name = "phi";
    phi.source = generic->alphabet();
    phi.targets = {oq->alphabet()};
    for (GenId g = 0; g < 4; ++g) {
        auto [i, j] = generic->alphabet()->grid_pos(g);
        phi.images.push_back(
            NCPoly::generator(oq->alphabet(), oq->alphabet()->at_grid(i, j)));
    }

    for (int d = 0; d <= 4; ++d) {
        for (const auto& w : all_words(4, d)) {
            NCPoly x = NCPoly::monomial(generic->alphabet(), w, f.one());
            NCPoly lhs = oq->nf(phi.apply(generic->nf(x)));
            NCPoly rhs = oq->nf(phi.apply(x));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("antipode images of the quantum SL2 cell") {
    Field f = Field::symbolic();
    Cogroupoid cog = Cogroupoid::hopf(oq_sl2_cell(f, 6));
    const auto& S = cog.antipode(0, 0);
    auto al = cog.cell(0, 0)->alphabet();
    CHECK(S.apply(parse_poly(al, "a")) == parse_poly(al, "d"));
    CHECK(S.apply(parse_poly(al, "b")) == parse_poly(al, "-q b"));
    CHECK(S.apply(parse_poly(al, "c")) == parse_poly(al, "-q^-1 c"));
    CHECK(S.apply(parse_poly(al, "d")) == parse_poly(al, "a"));

    // antipode law on a: S(a)a + S(b)c = da - q bc = 1
    NCPoly lhs = S.apply(parse_poly(al, "a")) * parse_poly(al, "a") +
                 S.apply(parse_poly(al, "b")) * parse_poly(al, "c");
    CHECK(cog.cell(0, 0)->nf(lhs) == NCPoly::unit({al}));
}

TEST_CASE("Hopf axioms pass for the quantum SL2 cell alone") {
    Field f = Field::symbolic();
    Cogroupoid cog = Cogroupoid::hopf(oq_sl2_cell(f, 6));
    Report rep = verify_cogroupoid_axioms(cog, 4);
    CHECK(rep.overall_pass());
    CHECK(!rep.checks.empty());
}

TEST_CASE("mixed cell with a 3x3 object: degree-1 words are the 6 generators") {
    Field f = Field::quadratic(Rational(3));
    CellRef xy = make_cell("B(Eq,I3)", eq_matrix(f), identity3(f), 3);
    CHECK(xy->system().enumerate_normal_words(1).size() == 6);
    CHECK(xy->system().enumerate_normal_words(0).size() == 1);
}

TEST_CASE("all cogroupoid axioms pass over the pair {E_q, I3} at degree 4") {
    Field f = Field::quadratic(Rational(3));
    Cogroupoid cog = Cogroupoid::over_pair(f, identity3(f), PairDegrees(4));
    Report rep = verify_cogroupoid_axioms(cog, 4);
    if (!rep.overall_pass()) {
        for (const auto& c : rep.checks)
            if (c.status == CheckStatus::Fail)
                MESSAGE(c.name, " : ", c.details);
    }
    CHECK(rep.overall_pass());
}

TEST_CASE("solve_q") {
    Field f = Field::symbolic();
    FieldConfig cfg = solve_q(eq_matrix(f));
    CHECK(cfg.mode == FieldMode::Symbolic);

    Field g = quadratic_field_from_trace({{Rational(1), Rational(3)},
                                          {Rational(0), Rational(1)}});
    CHECK(g.tau() == Rational(-7));
    // q^2 = 7q - 1
    CHECK(g.q_pow(2) == g.integer(7) * g.q_pow(1) - g.one());

    CHECK_THROWS_AS(quadratic_field_from_trace(
                        {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}),
                    RootOfUnity);
}

TEST_CASE("trace mismatch between objects is rejected") {
    Field f = Field::quadratic(Rational(3));
    ScalMatrix wrong(f, 2, 2);  // tau would be 2, not 3
    wrong.at(0, 0) = f.one();
    wrong.at(1, 1) = f.one();
    CHECK_THROWS_AS(make_cell("bad", eq_matrix(f), wrong, 3), TraceMismatch);
}

TEST_CASE("matrix file loading") {
    auto in = load_matrix_json(R"({
        "field": {"mode": "quadratic"},
        "rows": [["1","0","0"],["0","1","0"],["0","0","1"]]
    })");
    CHECK(in.field.mode() == FieldMode::Quadratic);
    CHECK(in.field.tau() == Rational(3));
    CHECK(in.matrix.rows() == 3);

    auto sym = load_matrix_json(R"({
        "field": {"mode": "symbolic"},
        "rows": [["1","s + s^-1"],["0","1"]]
    })");
    CHECK(sym.field.mode() == FieldMode::Symbolic);
    FieldConfig cfg = solve_q(sym.matrix);
    CHECK(cfg.mode == FieldMode::Symbolic);

    // symbolic matrix with wrong trace
    CHECK_THROWS_AS(load_matrix_json(R"({
        "field": {"mode": "symbolic"},
        "rows": [["1","0"],["0","1"]]
    })"),
                    TraceMismatch);
    // quadratic root-of-unity trace
    CHECK_THROWS_AS(load_matrix_json(R"({
        "field": {"mode": "quadratic"},
        "rows": [["1","0"],["0","1"]]
    })"),
                    RootOfUnity);
}
