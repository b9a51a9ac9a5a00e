#include "qdc/yd.hpp"

namespace qdc {

ScalMatrix YDModule::word_action(const Word& w) const {
    ScalMatrix m = ScalMatrix::identity(field(), dim());
    for (GenId g : w) m = m * action.at(g);
    return m;
}

ScalMatrix YDModule::poly_action(const NCPoly& p) const {
    ScalMatrix m(field(), dim(), dim());
    for (const auto& [k, c] : p.terms())
        m = m + word_action(k[0]).scaled(c);
    return m;
}

std::vector<Scalar> YDModule::act(const std::vector<Scalar>& v,
                                  const Word& w) const {
    std::vector<Scalar> out = v;
    for (GenId g : w) out = row_times(out, action.at(g));
    return out;
}

YDModule yd_module(const CellRef& oq, int n, int m, int eps) {
    if (n < 0 || m < 0) throw Error("yd_module: n, m must be >= 0");
    if (eps != 1 && eps != -1) throw Error("yd_module: eps must be +-1");
    const Field& f = oq->field();
    if (f.mode() == FieldMode::Quadratic && (n + m) % 2 != 0)
        throw HalfPowerUnsupported(
            "V_{n,m} with n + m odd needs half-integer powers of q; use the "
            "symbolic field");

    YDModule V;
    V.com = tensor_comodule(spin_comodule(oq, n), spin_comodule(oq, m));
    std::size_t dim = V.com.dim;
    std::size_t md = static_cast<std::size_t>(m) + 1;
    Scalar sgn = f.integer(eps);
    Scalar one_minus = f.one() - f.q_pow(-2);

    const AlphabetRef& al = oq->alphabet();
    GenId ga = al->at_grid(0, 0), gb = al->at_grid(0, 1),
          gc = al->at_grid(1, 0), gd = al->at_grid(1, 1);
    V.action.assign(al->size(), ScalMatrix(f, dim, dim));

    auto idx = [&](int i, int j) {
        return static_cast<std::size_t>(i) * md + static_cast<std::size_t>(j);
    };

    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= m; ++j) {
            std::size_t p = idx(i, j);
            // (v_i (x) v_j).a = eps q^{(m-n)/2 + i - j} v_i (x) v_j
            V.action[ga].at(p, p) =
                sgn * f.s_pow(m - n + 2L * (i - j));
            // .b = -eps q^{-(n+m)/2 + i + j + 1} (1 - q^-2) [j]_q  v_i (x) v_{j-1}
            if (j >= 1)
                V.action[gb].at(p, idx(i, j - 1)) =
                    -sgn * f.s_pow(-(n + m) + 2L * (i + j + 1)) * one_minus *
                    f.q_int(j);
            // .c = eps q^{(m+n)/2 - i - j} (1 - q^-2) [n-i]_q  v_{i+1} (x) v_j
            if (i + 1 <= n)
                V.action[gc].at(p, idx(i + 1, j)) =
                    sgn * f.s_pow((m + n) - 2L * (i + j)) * one_minus *
                    f.q_int(n - i);
            // .d = eps q^{(n-m)/2 + j - i} (v_i (x) v_j
            //        - q (1 - q^-2)^2 [j]_q [n-i]_q  v_{i+1} (x) v_{j-1})
            Scalar dcoef = sgn * f.s_pow((n - m) + 2L * (j - i));
            V.action[gd].at(p, p) = dcoef;
            if (i + 1 <= n && j >= 1)
                V.action[gd].at(p, idx(i + 1, j - 1)) =
                    -dcoef * f.q_pow(1) * one_minus * one_minus * f.q_int(j) *
                    f.q_int(n - i);
        }
    }
    return V;
}

YDModule c_epsilon(const CellRef& cell) {
    YDModule V;
    V.com = trivial_comodule(cell);
    const Field& f = cell->field();
    for (GenId g = 0; g < cell->alphabet()->size(); ++g) {
        ScalMatrix m(f, 1, 1);
        m.at(0, 0) =
            counit_scalar(cell, NCPoly::generator(cell->alphabet(), g));
        V.action.push_back(std::move(m));
    }
    return V;
}

YDModule yd_direct_sum(const std::vector<const YDModule*>& parts) {
    if (parts.empty()) throw Error("yd_direct_sum: no parts");
    const CellRef& cell = parts.front()->cell();
    const Field& f = cell->field();
    for (const auto* p : parts)
        if (!same_alphabet(p->cell()->alphabet(), cell->alphabet()))
            throw Error("yd_direct_sum: cell mismatch");

    std::size_t dim = 0;
    for (const auto* p : parts) dim += p->dim();

    YDModule V;
    V.com.cell = cell;
    V.com.dim = dim;
    V.com.coaction.assign(dim * dim, NCPoly(cell->alphabet()));
    V.action.assign(cell->alphabet()->size(), ScalMatrix(f, dim, dim));

    std::size_t off = 0;
    for (std::size_t pi = 0; pi < parts.size(); ++pi) {
        const YDModule& P = *parts[pi];
        for (std::size_t i = 0; i < P.dim(); ++i)
            V.com.labels.push_back("p" + std::to_string(pi) + ":" +
                                   P.com.labels[i]);
        for (std::size_t k = 0; k < P.dim(); ++k)
            for (std::size_t i = 0; i < P.dim(); ++i)
                V.com.C(off + k, off + i) = P.com.C(k, i);
        for (GenId g = 0; g < V.action.size(); ++g)
            for (std::size_t i = 0; i < P.dim(); ++i)
                for (std::size_t j = 0; j < P.dim(); ++j)
                    V.action[g].at(off + i, off + j) = P.action[g].at(i, j);
        off += P.dim();
    }
    return V;
}

Report verify_yd(const YDModule& V, bool check_degree2,
                 const std::string& suite) {
    Report report;
    const CellRef& cell = V.cell();
    const Field& f = V.field();
    const AlphabetRef& al = cell->alphabet();
    std::size_t ngen = al->size();

    // (i) relations act as zero
    {
        bool ok = true;
        for (const auto& rel : cell->relations())
            if (!V.poly_action(rel).is_zero()) ok = false;
        report.add(suite, "relations annihilate (dim " +
                              std::to_string(V.dim()) + ")",
                   ok);
    }

    GenMorphism delta = diagonal_coproduct(cell);

    // Delta^2 of each generator, legs (H, H, H)
    std::vector<NCPoly> delta2;
    for (GenId g = 0; g < ngen; ++g)
        delta2.push_back(
            apply_at(delta, delta.apply(NCPoly::generator(al, g)), 0));

    auto yd_condition_holds = [&](const NCPoly& d2x, const ScalMatrix& Mx) {
        // For every basis vector v and component k:
        //   sum_p M_x[v][p] C(k,p)  ==  sum terms coef * sum_l M_{w2}[l][k]
        //                                  S(w1) C(l,v) w3
        GenMorphism S = diagonal_antipode(cell);
        for (std::size_t v = 0; v < V.dim(); ++v) {
            std::vector<NCPoly> lhs(V.dim(), NCPoly(al));
            for (std::size_t p = 0; p < V.dim(); ++p) {
                if (Mx.at(v, p).is_zero()) continue;
                for (std::size_t k = 0; k < V.dim(); ++k)
                    lhs[k] = lhs[k] + V.com.C(k, p).scaled(Mx.at(v, p));
            }
            std::vector<NCPoly> rhs(V.dim(), NCPoly(al));
            for (const auto& [key, coef] : d2x.terms()) {
                const Word &w1 = key[0], &w2 = key[1], &w3 = key[2];
                ScalMatrix Mw2 = V.word_action(w2);
                NCPoly sw1 = S.apply_word(w1);
                for (std::size_t l = 0; l < V.dim(); ++l) {
                    NCPoly hpart =
                        sw1 * V.com.C(l, v) *
                        NCPoly::monomial(al, w3, f.one());
                    for (std::size_t k = 0; k < V.dim(); ++k) {
                        if (Mw2.at(l, k).is_zero()) continue;
                        rhs[k] = rhs[k] + hpart.scaled(coef * Mw2.at(l, k));
                    }
                }
            }
            for (std::size_t k = 0; k < V.dim(); ++k)
                if (!cell->nf(lhs[k] - rhs[k]).is_zero()) return false;
        }
        return true;
    };

    // (ii) generators
    {
        bool ok = true;
        for (GenId g = 0; g < ngen && ok; ++g)
            ok = yd_condition_holds(delta2[g], V.action[g]);
        report.add(suite, "yd condition on generators (dim " +
                              std::to_string(V.dim()) + ")",
                   ok);
    }

    // (iii) redundancy check on all degree-2 words
    if (check_degree2) {
        bool ok = true;
        for (GenId g1 = 0; g1 < ngen && ok; ++g1)
            for (GenId g2 = 0; g2 < ngen && ok; ++g2) {
                NCPoly d2 = delta2[g1] * delta2[g2];
                ScalMatrix M = V.action[g1] * V.action[g2];
                ok = yd_condition_holds(d2, M);
            }
        report.add(suite, "yd condition on degree-2 words (dim " +
                              std::to_string(V.dim()) + ")",
                   ok);
    }
    return report;
}

std::vector<ScalMatrix> yd_morphisms(const YDModule& V, const YDModule& W) {
    if (!same_alphabet(V.cell()->alphabet(), W.cell()->alphabet()))
        throw Error("yd_morphisms: cell mismatch");
    const Field& f = V.field();
    std::size_t cols = W.dim() * V.dim();
    std::map<std::pair<std::pair<std::size_t, std::size_t>, Word>, SparseVec>
        corows;
    auto bump = [&](SparseVec& row, std::size_t col, const Scalar& c) {
        auto it = row.find(col);
        if (it == row.end())
            row.emplace(col, c);
        else {
            it->second += c;
            if (it->second.is_zero()) row.erase(it);
        }
    };
    // colinearity, as for comodule morphisms
    for (std::size_t b = 0; b < W.dim(); ++b)
        for (std::size_t i = 0; i < V.dim(); ++i) {
            for (std::size_t k = 0; k < V.dim(); ++k)
                for (const auto& [key, c] : V.com.C(k, i).terms())
                    bump(corows[{{b, i}, key[0]}], b * V.dim() + k, c);
            for (std::size_t a = 0; a < W.dim(); ++a)
                for (const auto& [key, c] : W.com.C(b, a).terms())
                    bump(corows[{{b, i}, key[0]}], a * V.dim() + i, -c);
        }
    std::vector<SparseVec> sys;
    for (auto& [key, row] : corows)
        if (!row.empty()) sys.push_back(std::move(row));

    // equivariance: T(v_p . g) = T(v_p) . g for every generator g
    for (GenId g = 0; g < V.action.size(); ++g) {
        for (std::size_t p = 0; p < V.dim(); ++p)
            for (std::size_t b = 0; b < W.dim(); ++b) {
                SparseVec row;
                for (std::size_t p2 = 0; p2 < V.dim(); ++p2)
                    if (!V.action[g].at(p, p2).is_zero())
                        bump(row, b * V.dim() + p2, V.action[g].at(p, p2));
                for (std::size_t a = 0; a < W.dim(); ++a)
                    if (!W.action[g].at(a, b).is_zero())
                        bump(row, a * V.dim() + p, -W.action[g].at(a, b));
                if (!row.empty()) sys.push_back(std::move(row));
            }
    }

    auto basis = nullspace(f, sys, cols);
    std::vector<ScalMatrix> out;
    for (const auto& x : basis) {
        ScalMatrix T(f, W.dim(), V.dim());
        for (std::size_t a = 0; a < W.dim(); ++a)
            for (std::size_t p = 0; p < V.dim(); ++p)
                T.at(a, p) = x[a * V.dim() + p];
        out.push_back(std::move(T));
    }
    return out;
}

}  // namespace qdc
