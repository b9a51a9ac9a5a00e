#include "qdc/comodule.hpp"

namespace qdc {

Comodule trivial_comodule(const CellRef& cell) {
    Comodule V;
    V.cell = cell;
    V.dim = 1;
    V.labels = {"e"};
    V.coaction = {cell->one()};
    return V;
}

Comodule spin_comodule(const CellRef& oq, int n) {
    if (n < 0) throw Error("spin_comodule: n must be >= 0");
    const AlphabetRef& al = oq->alphabet();
    if (!al->has_grid() || al->rows() != 2 || al->cols() != 2)
        throw Error("spin_comodule needs the quantum SL2 cell");
    const Field& f = oq->field();
    GenId ga = al->at_grid(0, 0), gb = al->at_grid(0, 1),
          gc = al->at_grid(1, 0), gd = al->at_grid(1, 1);

    Comodule V;
    V.cell = oq;
    V.dim = static_cast<std::size_t>(n) + 1;
    for (int i = 0; i <= n; ++i) V.labels.push_back("v" + std::to_string(i));
    V.coaction.assign(V.dim * V.dim, NCPoly(al));

    for (int i = 0; i <= n; ++i) {
        for (int k = 0; k <= n; ++k) {
            NCPoly entry(al);
            for (int r = 0; r <= i; ++r) {
                int s = k - r;
                if (s < 0 || s > n - i) continue;
                Scalar coef = f.q_binomial(i, r) * f.q_binomial(n - i, s) *
                              f.q_pow(static_cast<long>(i - r) * s);
                Word w;
                for (int t = 0; t < r; ++t) w.push_back(ga);
                for (int t = 0; t < s; ++t) w.push_back(gb);
                for (int t = 0; t < i - r; ++t) w.push_back(gc);
                for (int t = 0; t < n - i - s; ++t) w.push_back(gd);
                entry.add_term({w}, coef);
            }
            V.C(static_cast<std::size_t>(k), static_cast<std::size_t>(i)) =
                oq->nf(entry);
        }
    }
    return V;
}

Comodule tensor_comodule(const Comodule& V, const Comodule& W) {
    if (!same_alphabet(V.cell->alphabet(), W.cell->alphabet()))
        throw Error("tensor_comodule: cell mismatch");
    Comodule T;
    T.cell = V.cell;
    T.dim = V.dim * W.dim;
    for (std::size_t i = 0; i < V.dim; ++i)
        for (std::size_t j = 0; j < W.dim; ++j)
            T.labels.push_back(V.labels[i] + "(x)" + W.labels[j]);
    T.coaction.assign(T.dim * T.dim, NCPoly(V.cell->alphabet()));
    for (std::size_t k = 0; k < V.dim; ++k)
        for (std::size_t l = 0; l < W.dim; ++l)
            for (std::size_t i = 0; i < V.dim; ++i)
                for (std::size_t j = 0; j < W.dim; ++j) {
                    const NCPoly& a = V.C(k, i);
                    const NCPoly& b = W.C(l, j);
                    if (a.is_zero() || b.is_zero()) continue;
                    T.C(k * W.dim + l, i * W.dim + j) = T.cell->nf(a * b);
                }
    return T;
}

Report verify_comodule(const Comodule& V, const std::string& suite) {
    Report report;
    GenMorphism delta = diagonal_coproduct(V.cell);
    const RewriteSystem* sys = &V.cell->system();
    std::vector<const RewriteSystem*> two{sys, sys};

    bool coassoc = true;
    for (std::size_t l = 0; l < V.dim && coassoc; ++l) {
        for (std::size_t i = 0; i < V.dim; ++i) {
            NCPoly lhs(std::vector<AlphabetRef>{V.cell->alphabet(),
                                                V.cell->alphabet()});
            for (std::size_t k = 0; k < V.dim; ++k)
                lhs = lhs + V.C(l, k).tensor(V.C(k, i));
            NCPoly rhs = delta.apply(V.C(l, i));
            if (!normal_form_tensor(lhs - rhs, two).is_zero()) {
                coassoc = false;
                break;
            }
        }
    }
    report.add(suite, "coassociativity dim " + std::to_string(V.dim), coassoc);

    bool counit = true;
    for (std::size_t k = 0; k < V.dim && counit; ++k)
        for (std::size_t i = 0; i < V.dim; ++i) {
            Scalar e = counit_scalar(V.cell, V.C(k, i));
            Scalar want = (k == i) ? V.field().one() : V.field().zero();
            if (e != want) {
                counit = false;
                break;
            }
        }
    report.add(suite, "counit law dim " + std::to_string(V.dim), counit);
    return report;
}

std::vector<std::vector<Scalar>> coinvariants(const Comodule& V) {
    const Field& f = V.field();
    // for each k and normal word w: sum_i coeff_w(C(k,i)) x_i - [w = 1] x_k = 0
    std::map<std::pair<std::size_t, Word>, SparseVec> rows;
    Word empty;
    auto bump = [&](SparseVec& row, std::size_t col, const Scalar& c) {
        auto it = row.find(col);
        if (it == row.end())
            row.emplace(col, c);
        else {
            it->second += c;
            if (it->second.is_zero()) row.erase(it);
        }
    };
    for (std::size_t k = 0; k < V.dim; ++k) {
        for (std::size_t i = 0; i < V.dim; ++i)
            for (const auto& [key, c] : V.C(k, i).terms())
                bump(rows[{k, key[0]}], i, c);
        bump(rows[{k, empty}], k, -f.one());
    }
    std::vector<SparseVec> sys;
    sys.reserve(rows.size());
    for (auto& [key, row] : rows)
        if (!row.empty()) sys.push_back(std::move(row));
    return nullspace(f, sys, V.dim);
}

std::vector<ScalMatrix> comodule_morphisms(const Comodule& V,
                                           const Comodule& W) {
    if (!same_alphabet(V.cell->alphabet(), W.cell->alphabet()))
        throw Error("comodule_morphisms: cell mismatch");
    const Field& f = V.field();
    std::size_t cols = W.dim * V.dim;  // unknown T[a][p] at column a * V.dim + p
    std::map<std::pair<std::pair<std::size_t, std::size_t>, Word>, SparseVec>
        rows;
    auto bump = [&](SparseVec& row, std::size_t col, const Scalar& c) {
        auto it = row.find(col);
        if (it == row.end())
            row.emplace(col, c);
        else {
            it->second += c;
            if (it->second.is_zero()) row.erase(it);
        }
    };
    for (std::size_t b = 0; b < W.dim; ++b) {
        for (std::size_t i = 0; i < V.dim; ++i) {
            // sum_k C(k,i) T[b][k] - sum_a D(b,a) T[a][i] = 0
            for (std::size_t k = 0; k < V.dim; ++k)
                for (const auto& [key, c] : V.C(k, i).terms())
                    bump(rows[{{b, i}, key[0]}], b * V.dim + k, c);
            for (std::size_t a = 0; a < W.dim; ++a)
                for (const auto& [key, c] : W.C(b, a).terms())
                    bump(rows[{{b, i}, key[0]}], a * V.dim + i, -c);
        }
    }
    std::vector<SparseVec> sys;
    for (auto& [key, row] : rows)
        if (!row.empty()) sys.push_back(std::move(row));
    auto basis = nullspace(f, sys, cols);
    std::vector<ScalMatrix> out;
    for (const auto& x : basis) {
        ScalMatrix T(f, W.dim, V.dim);
        for (std::size_t a = 0; a < W.dim; ++a)
            for (std::size_t p = 0; p < V.dim; ++p)
                T.at(a, p) = x[a * V.dim + p];
        out.push_back(std::move(T));
    }
    return out;
}

}  // namespace qdc
