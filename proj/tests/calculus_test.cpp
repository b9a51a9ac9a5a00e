#include "qdc/calculus.hpp"

#include "doctest.h"

using namespace qdc;

namespace {

CellRef oq() {
    static CellRef cell = oq_sl2_cell(Field::symbolic(), 12);
    return cell;
}

YDModuleRef module(int n, int m, int eps) {
    return std::make_shared<YDModule>(yd_module(oq(), n, m, eps));
}

ReducedCalculus omega_n(int n, int eps) {
    auto mod = module(n, n, eps);
    auto coinv = coinvariants(mod->com);
    REQUIRE(coinv.size() == 1);
    ReducedCalculus c = inner_calculus(mod, coinv.front());
    c.parts = {{n, eps}};
    c.label = "omega(" + std::to_string(n) + "," + (eps > 0 ? "+1" : "-1") + ")";
    return c;
}

}  // namespace

TEST_CASE("inner calculus on V_{0,0}^{-1}") {
    const Field& f = oq()->field();
    auto mod = module(0, 0, -1);
    ReducedCalculus c = inner_calculus(mod, {f.one()});
    auto al = oq()->alphabet();
    // omega(a) = omega(d) = -2 theta, omega(b) = omega(c) = 0
    CHECK(c.omega(parse_poly(al, "a"))[0] == -f.integer(2));
    CHECK(c.omega(parse_poly(al, "d"))[0] == -f.integer(2));
    CHECK(c.omega(parse_poly(al, "b"))[0].is_zero());
    CHECK(c.omega(parse_poly(al, "c"))[0].is_zero());
    CHECK(c.cert.rank == 1);
}

TEST_CASE("V_{0,0}^{+1} is C_eps: the inner calculus is not surjective") {
    const Field& f = oq()->field();
    auto mod = module(0, 0, +1);
    try {
        inner_calculus(mod, {f.one()});
        CHECK(false);
    } catch (const NotSurjective& e) {
        CHECK(e.rank_achieved == 0);
    }
}

TEST_CASE("omega_1^{+1} values and saturation") {
    const Field& f = oq()->field();
    ReducedCalculus c = omega_n(1, +1);
    auto al = oq()->alphabet();
    // theta_1 = v0 (x) v1 - q v1 (x) v0 at coordinates (01, 10)
    REQUIRE(c.theta.has_value());
    CHECK((*c.theta)[1] == f.one());
    CHECK((*c.theta)[2] == -f.q_pow(1));
    // omega(a) = (q^-1 - 1) v0 (x) v1 - q(q - 1) v1 (x) v0
    auto wa = c.omega(parse_poly(al, "a"));
    CHECK(wa[0].is_zero());
    CHECK(wa[1] == f.q_pow(-1) - f.one());
    CHECK(wa[2] == -f.q_pow(1) * (f.q_pow(1) - f.one()));
    CHECK(wa[3].is_zero());
    CHECK(c.cert.rank == 4);
}

TEST_CASE("omega is linear, kills 1, and vanishes on relations") {
    ReducedCalculus c = omega_n(1, +1);
    auto al = oq()->alphabet();
    CHECK(c.omega(NCPoly::unit({al})) ==
          std::vector<Scalar>(4, oq()->field().zero()));
    for (const char* rel : {"a d - q^-1 b c - 1", "d a - q b c - 1",
                            "b a - q a b", "b c - c b"}) {
        auto v = c.omega(parse_poly(al, rel));
        for (const auto& x : v) CHECK(x.is_zero());
    }
}

TEST_CASE("inner and table evaluations agree on words of degree <= 3") {
    ReducedCalculus c = omega_n(1, +1);
    auto al = oq()->alphabet();
    std::vector<Word> words{Word{}};
    for (int d = 0; d < 3; ++d) {
        std::vector<Word> next;
        for (const auto& w : words)
            for (GenId g = 0; g < 4; ++g) {
                Word e = w;
                e.push_back(g);
                next.push_back(e);
            }
        words = std::move(next);
        for (const auto& w : words) {
            NCPoly p = NCPoly::monomial(al, w, oq()->field().one());
            CHECK(c.omega(p) == c.omega_inner(p));
        }
    }
}

TEST_CASE("direct sums obey the pairwise non-isomorphism criterion") {
    ReducedCalculus p1 = omega_n(1, +1);
    ReducedCalculus m1 = omega_n(1, -1);
    ReducedCalculus z = omega_n(0, -1);

    ReducedCalculus s = direct_sum({p1, m1});
    CHECK(s.dim() == 8);
    CHECK(s.cert.rank == 8);

    ReducedCalculus t = direct_sum({z, p1, m1});
    CHECK(t.dim() == 9);
    CHECK(t.cert.rank == 9);

    try {
        direct_sum({p1, omega_n(1, +1)});
        CHECK(false);
    } catch (const NotSurjective& e) {
        CHECK(e.part_a == 0);
        CHECK(e.part_b == 1);
    }
}

TEST_CASE("extension and splitting recover the coinvariant") {
    ReducedCalculus c = omega_n(1, +1);
    SplitResult res = extension_and_split(c);
    CHECK(res.verification.overall_pass());
    CHECK(res.extension.dim() == 5);
    // recovered theta is a scalar multiple of theta_1 (here: equal)
    REQUIRE(c.theta.has_value());
    const Field& f = oq()->field();
    // find the scale on the first nonzero coordinate
    Scalar scale = f.zero();
    for (std::size_t i = 0; i < 4; ++i)
        if (!(*c.theta)[i].is_zero()) {
            scale = res.theta[i] / (*c.theta)[i];
            break;
        }
    CHECK(!scale.is_zero());
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(res.theta[i] == scale * (*c.theta)[i]);
}

TEST_CASE("the extension of omega_0^{-1} is a 2-dimensional YD module") {
    ReducedCalculus c = omega_n(0, -1);
    SplitResult res = extension_and_split(c);
    CHECK(res.extension.dim() == 2);
    CHECK(res.verification.overall_pass());
}

TEST_CASE("d_omega and omega_d realize each other at bounded degree") {
    auto al = oq()->alphabet();
    const Field& f = oq()->field();
    ReducedCalculus c = omega_n(1, -1);

    // d(1) = 0
    CHECK(hv_is_zero(d_from_omega(c, NCPoly::unit({al}))));

    auto d = [&](const Word& w) {
        return d_from_omega(c, NCPoly::monomial(al, w, f.one()));
    };

    // roundtrip on all words of degree <= 3
    std::vector<Word> words{Word{}};
    for (int deg = 0; deg < 3; ++deg) {
        std::vector<Word> next;
        for (const auto& w : words)
            for (GenId g = 0; g < 4; ++g) {
                Word e = w;
                e.push_back(g);
                next.push_back(e);
            }
        words = std::move(next);
        for (const auto& w : words) {
            NCPoly p = NCPoly::monomial(al, w, f.one());
            HVElement r = omega_from_d(*c.module, d, p);
            auto flat = hv_constant_part(r);
            REQUIRE(flat.has_value());
            CHECK(*flat == c.omega(p));
        }
    }
}

TEST_CASE("the realized differential satisfies the bimodule Leibniz rule") {
    auto al = oq()->alphabet();
    ReducedCalculus c = omega_n(0, -1);
    NCPoly a = parse_poly(al, "a");
    NCPoly dpoly = parse_poly(al, "d");
    NCPoly prod = oq()->nf(a * dpoly);

    HVElement lhs = d_from_omega(c, prod);
    HVElement rhs_part1 = hv_left_mult(a, d_from_omega(c, dpoly));
    HVElement rhs_part2 = hv_right_mult(d_from_omega(c, a), dpoly, *c.module);
    for (std::size_t p = 0; p < c.dim(); ++p) {
        NCPoly sum = rhs_part1[p] + rhs_part2[p];
        CHECK(oq()->nf(lhs[p] - sum).is_zero());
    }
}

TEST_CASE("classification at max_dim 4 and 9") {
    auto four = classify(oq(), 4);
    REQUIRE(four.size() == 3);
    CHECK(four[0].parts == std::vector<std::pair<int, int>>{{0, -1}});
    CHECK(four[1].parts == std::vector<std::pair<int, int>>{{1, +1}});
    CHECK(four[2].parts == std::vector<std::pair<int, int>>{{1, -1}});
    for (const auto& e : four) CHECK(e.verified);

    auto nine = classify(oq(), 9);
    REQUIRE(nine.size() == 9);
    std::size_t singles = 0, sums = 0;
    for (const auto& e : nine) {
        if (e.parts.size() == 1)
            ++singles;
        else
            ++sums;
        CHECK(e.verified);
        CHECK(e.cert.rank == e.dim);
    }
    CHECK(singles == 5);
    CHECK(sums == 4);
    // the four sums
    CHECK(nine[5].parts == std::vector<std::pair<int, int>>{{0, -1}, {1, +1}});
    CHECK(nine[6].parts == std::vector<std::pair<int, int>>{{0, -1}, {1, -1}});
    CHECK(nine[7].parts == std::vector<std::pair<int, int>>{{1, +1}, {1, -1}});
    CHECK(nine[8].parts ==
          std::vector<std::pair<int, int>>{{0, -1}, {1, +1}, {1, -1}});

    auto with_zero = classify(oq(), 4, /*include_zero=*/true);
    CHECK(with_zero.size() == 4);
    CHECK(with_zero[0].dim == 0);
}

TEST_CASE("the image of a non-surjective omega is a YD submodule") {
    // omega = (0, omega_1) on V_0^{-1} + V_1^{+1}: image should be the
    // second summand, stable under both action and coaction
    ReducedCalculus z = omega_n(0, -1);
    ReducedCalculus p1 = omega_n(1, +1);
    std::vector<const YDModule*> mods{z.module.get(), p1.module.get()};
    auto sum = std::make_shared<YDModule>(yd_direct_sum(mods));
    const Field& f = oq()->field();

    ReducedCalculus partial;
    partial.module = sum;
    for (GenId g = 0; g < 4; ++g) {
        std::vector<Scalar> w(5, f.zero());
        for (std::size_t i = 0; i < 4; ++i) w[1 + i] = p1.table[g][i];
        partial.table.push_back(std::move(w));
    }
    // collect the image span over words of degree <= 3
    EchelonSpan span(f);
    std::vector<Word> words{Word{}};
    for (int d = 0; d < 3; ++d) {
        std::vector<Word> next;
        for (const auto& w : words)
            for (GenId g = 0; g < 4; ++g) {
                Word e = w;
                e.push_back(g);
                next.push_back(e);
            }
        words = std::move(next);
        for (const auto& w : words) {
            auto v = partial.omega_word(w);
            SparseVec s;
            for (std::size_t i = 0; i < v.size(); ++i)
                if (!v[i].is_zero()) s.emplace(i, v[i]);
            span.insert(s);
        }
    }
    CHECK(span.rank() == 4);  // proper submodule

    // stability under the action matrices
    std::vector<std::vector<Scalar>> basis;
    for (const auto& w : {Word{0}, Word{1}, Word{2}, Word{3}}) {
        auto v = partial.omega_word(w);
        basis.push_back(v);
    }
    for (const auto& v : basis)
        for (GenId g = 0; g < 4; ++g) {
            auto img = row_times(v, sum->action[g]);
            SparseVec s;
            for (std::size_t i = 0; i < img.size(); ++i)
                if (!img[i].is_zero()) s.emplace(i, img[i]);
            CHECK(span.contains(s));
        }
    // stability under the coaction: every word-coefficient vector of rho(v)
    // lies in the span
    for (const auto& v : basis) {
        std::map<Word, std::vector<Scalar>> comps;
        for (std::size_t k = 0; k < 5; ++k)
            for (std::size_t p = 0; p < 5; ++p) {
                if (v[p].is_zero()) continue;
                for (const auto& [key, c] : sum->com.C(k, p).terms()) {
                    auto it = comps.try_emplace(key[0],
                                                std::vector<Scalar>(5, f.zero()))
                                  .first;
                    it->second[k] += c * v[p];
                }
            }
        for (const auto& [w, comp] : comps) {
            SparseVec s;
            for (std::size_t i = 0; i < comp.size(); ++i)
                if (!comp[i].is_zero()) s.emplace(i, comp[i]);
            CHECK(span.contains(s));
        }
    }
}
