#include "qdc/calculus.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace qdc {

namespace {

Scalar gen_counit(const CellRef& cell, GenId g) {
    auto [i, j] = cell->alphabet()->grid_pos(g);
    return i == j ? cell->field().one() : cell->field().zero();
}

std::vector<Scalar> zero_vec(const Field& f, std::size_t n) {
    return std::vector<Scalar>(n, f.zero());
}

void vec_add_scaled(std::vector<Scalar>& a, const std::vector<Scalar>& b,
                    const Scalar& c) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i] * c;
}

bool vec_is_zero(const std::vector<Scalar>& a) {
    for (const auto& x : a)
        if (!x.is_zero()) return false;
    return true;
}

SparseVec to_sparse(const std::vector<Scalar>& v) {
    SparseVec s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) s.emplace(i, v[i]);
    return s;
}

}  // namespace

std::vector<Scalar> ReducedCalculus::omega_word(const Word& w) const {
    const Field& f = module->field();
    std::vector<Scalar> vec = zero_vec(f, dim());
    Scalar eps = f.one();
    for (GenId g : w) {
        vec = row_times(vec, module->action.at(g));
        vec_add_scaled(vec, table.at(g), eps);
        eps *= gen_counit(cell(), g);
    }
    return vec;
}

std::vector<Scalar> ReducedCalculus::omega(const NCPoly& p) const {
    const Field& f = module->field();
    std::vector<Scalar> out = zero_vec(f, dim());
    for (const auto& [k, c] : p.terms()) {
        if (k[0].empty()) continue;  // omega(1) = 0
        vec_add_scaled(out, omega_word(k[0]), c);
    }
    return out;
}

std::vector<Scalar> ReducedCalculus::omega_inner(const NCPoly& p) const {
    if (!theta) throw Error("omega_inner: calculus has no inner form");
    ScalMatrix M = module->poly_action(p);
    std::vector<Scalar> out = row_times(*theta, M);
    Scalar eps = counit_scalar(cell(), p);
    vec_add_scaled(out, *theta, -eps);
    return out;
}

namespace {

// Rank saturation over normal words of increasing degree.
RankCertificate certify_rank(const ReducedCalculus& calc,
                             SurjectivityOptions options) {
    const YDModule& V = *calc.module;
    const RewriteSystem& sys = calc.cell()->system();
    int cap = options.max_degree;
    if (cap < 0) {
        int max_n = -1;
        for (const auto& [n, eps] : calc.parts) max_n = std::max(max_n, n);
        cap = max_n >= 0 ? 2 * max_n + 4 : static_cast<int>(V.dim()) + 4;
    }
    cap = std::min(cap, sys.completed_degree());

    EchelonSpan span(V.field());
    RankCertificate cert;
    int stall = 0;
    for (int d = 1; d <= cap; ++d) {
        std::size_t before = span.rank();
        for (const Word& w : sys.enumerate_normal_words(d))
            span.insert(to_sparse(calc.omega_word(w)));
        cert.rank = span.rank();
        cert.degree_used = d;
        if (cert.rank == V.dim()) break;
        stall = (span.rank() == before) ? stall + 1 : 0;
        if (stall >= options.stable_window) break;
    }
    return cert;
}

void check_well_defined(const ReducedCalculus& calc) {
    for (const auto& rel : calc.cell()->relations())
        if (!vec_is_zero(calc.omega(rel)))
            throw Error(
                "omega does not vanish on a defining relation (not "
                "well-defined on the algebra)");
}

}  // namespace

ReducedCalculus inner_calculus(YDModuleRef module, std::vector<Scalar> theta,
                               SurjectivityOptions options) {
    const YDModule& V = *module;
    if (theta.size() != V.dim())
        throw Error("inner_calculus: theta has the wrong dimension");
    if (vec_is_zero(theta)) throw NotCoinvariant("theta is zero");
    // rho(theta) = theta (x) 1
    for (std::size_t k = 0; k < V.dim(); ++k) {
        NCPoly acc(V.cell()->alphabet());
        for (std::size_t i = 0; i < V.dim(); ++i)
            acc = acc + V.com.C(k, i).scaled(theta[i]);
        NCPoly want = NCPoly::constant(V.cell()->alphabet(), theta[k]);
        if (V.cell()->nf(acc) != want)
            throw NotCoinvariant("rho(theta) differs from theta (x) 1");
    }

    ReducedCalculus calc;
    calc.module = module;
    calc.theta = theta;
    std::size_t ngen = V.cell()->alphabet()->size();
    for (GenId g = 0; g < ngen; ++g) {
        std::vector<Scalar> w = row_times(theta, V.action[g]);
        vec_add_scaled(w, theta, -gen_counit(V.cell(), g));
        calc.table.push_back(std::move(w));
    }
    calc.cert = certify_rank(calc, options);
    if (calc.cert.rank < V.dim())
        throw NotSurjective("inner calculus has rank " +
                                std::to_string(calc.cert.rank) + " < dim " +
                                std::to_string(V.dim()),
                            calc.cert.rank, calc.cert.degree_used);
    return calc;
}

ReducedCalculus table_calculus(YDModuleRef module,
                               std::vector<std::vector<Scalar>> values,
                               SurjectivityOptions options) {
    const YDModule& V = *module;
    if (values.size() != V.cell()->alphabet()->size())
        throw Error("table_calculus: one value per generator required");
    ReducedCalculus calc;
    calc.module = module;
    calc.table = std::move(values);
    check_well_defined(calc);
    calc.cert = certify_rank(calc, options);
    if (calc.cert.rank < V.dim())
        throw NotSurjective("calculus has rank " +
                                std::to_string(calc.cert.rank) + " < dim " +
                                std::to_string(V.dim()),
                            calc.cert.rank, calc.cert.degree_used);
    return calc;
}

ReducedCalculus direct_sum(const std::vector<ReducedCalculus>& parts,
                           SurjectivityOptions options) {
    if (parts.empty()) throw Error("direct_sum: no parts");
    for (const auto& p : parts)
        if (!same_alphabet(p.cell()->alphabet(),
                           parts.front().cell()->alphabet()))
            throw Error("direct_sum: cell mismatch");

    // surjective iff the parts are pairwise non-isomorphic
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
            if (!yd_morphisms(*parts[i].module, *parts[j].module).empty()) {
                NotSurjective err(
                    "parts " + std::to_string(i) + " and " + std::to_string(j) +
                        " are isomorphic YD modules; the sum map cannot be "
                        "surjective",
                    0, 0);
                err.part_a = static_cast<int>(i);
                err.part_b = static_cast<int>(j);
                throw err;
            }
        }

    std::vector<const YDModule*> mods;
    for (const auto& p : parts) mods.push_back(p.module.get());
    auto sum = std::make_shared<YDModule>(yd_direct_sum(mods));

    ReducedCalculus calc;
    calc.module = sum;
    std::size_t ngen = sum->cell()->alphabet()->size();
    bool all_inner = true;
    for (const auto& p : parts) all_inner = all_inner && p.theta.has_value();
    if (all_inner) {
        std::vector<Scalar> theta;
        for (const auto& p : parts)
            theta.insert(theta.end(), p.theta->begin(), p.theta->end());
        calc.theta = std::move(theta);
    }
    for (GenId g = 0; g < ngen; ++g) {
        std::vector<Scalar> w;
        for (const auto& p : parts)
            w.insert(w.end(), p.table[g].begin(), p.table[g].end());
        calc.table.push_back(std::move(w));
    }
    std::vector<std::string> labels;
    for (const auto& p : parts) {
        calc.parts.insert(calc.parts.end(), p.parts.begin(), p.parts.end());
        if (!p.label.empty()) labels.push_back(p.label);
    }
    for (std::size_t i = 0; i < labels.size(); ++i)
        calc.label += (i ? "+" : "") + labels[i];

    calc.cert = certify_rank(calc, options);
    if (calc.cert.rank < sum->dim())
        throw NotSurjective("direct sum has rank " +
                                std::to_string(calc.cert.rank) + " < dim " +
                                std::to_string(sum->dim()),
                            calc.cert.rank, calc.cert.degree_used);
    return calc;
}

SplitResult extension_and_split(const ReducedCalculus& calc) {
    const YDModule& V = *calc.module;
    const CellRef& cell = V.cell();
    const Field& f = V.field();
    std::size_t d = V.dim();
    std::size_t ngen = cell->alphabet()->size();

    // V_omega on V + C: (v, t).x = (v.x + t omega(x), t eps(x))
    YDModule ext;
    ext.com.cell = cell;
    ext.com.dim = d + 1;
    ext.com.labels = V.com.labels;
    ext.com.labels.push_back("e");
    ext.com.coaction.assign((d + 1) * (d + 1), NCPoly(cell->alphabet()));
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t i = 0; i < d; ++i) ext.com.C(k, i) = V.com.C(k, i);
    ext.com.C(d, d) = cell->one();
    for (GenId g = 0; g < ngen; ++g) {
        ScalMatrix m(f, d + 1, d + 1);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                m.at(i, j) = V.action[g].at(i, j);
        for (std::size_t j = 0; j < d; ++j) m.at(d, j) = calc.table[g][j];
        m.at(d, d) = gen_counit(cell, g);
        ext.action.push_back(std::move(m));
    }

    Report verification = verify_yd(ext, true, "extension");

    // A YD retraction r with r j = id is determined by theta = r(0, 1):
    // theta must be coinvariant and satisfy theta.g - eps(g) theta = omega(g).
    std::vector<SparseVec> rows;
    std::vector<Scalar> rhs;
    {
        std::map<std::pair<std::size_t, Word>, SparseVec> acc;
        auto bump = [&](SparseVec& row, std::size_t col, const Scalar& c) {
            auto it = row.find(col);
            if (it == row.end())
                row.emplace(col, c);
            else {
                it->second += c;
                if (it->second.is_zero()) row.erase(it);
            }
        };
        Word empty;
        for (std::size_t k = 0; k < d; ++k) {
            for (std::size_t i = 0; i < d; ++i)
                for (const auto& [key, c] : V.com.C(k, i).terms())
                    bump(acc[{k, key[0]}], i, c);
            bump(acc[{k, empty}], k, -f.one());
        }
        for (auto& [key, row] : acc) {
            if (row.empty()) continue;
            rows.push_back(std::move(row));
            rhs.push_back(f.zero());
        }
    }
    for (GenId g = 0; g < ngen; ++g) {
        Scalar eps = gen_counit(cell, g);
        for (std::size_t p = 0; p < d; ++p) {
            SparseVec row;
            for (std::size_t i = 0; i < d; ++i) {
                Scalar c = V.action[g].at(i, p);
                if (i == p) c -= eps;
                if (!c.is_zero()) row.emplace(i, c);
            }
            rows.push_back(std::move(row));
            rhs.push_back(calc.table[g][p]);
        }
    }
    auto sol = solve_affine(f, rows, rhs, d);
    if (!sol)
        throw NotInner("the short exact sequence of V_omega does not split");

    SplitResult result{std::move(ext), std::move(verification), *sol};

    bool reproduces = true;
    for (GenId g = 0; g < ngen; ++g) {
        std::vector<Scalar> w = row_times(result.theta, V.action[g]);
        vec_add_scaled(w, result.theta, -gen_counit(cell, g));
        for (std::size_t p = 0; p < d; ++p)
            if (w[p] != calc.table[g][p]) reproduces = false;
    }
    result.verification.add("extension", "recovered theta reproduces omega",
                            reproduces);
    return result;
}

// ---------------------------------------------------------------------------
// the H (x) V realization

bool hv_is_zero(const HVElement& e) {
    for (const auto& p : e)
        if (!p.is_zero()) return false;
    return true;
}

std::optional<std::vector<Scalar>> hv_constant_part(const HVElement& e) {
    std::vector<Scalar> out;
    for (const auto& p : e) {
        if (p.leg_degree(0) > 0) return std::nullopt;
        out.push_back(p.constant_coeff());
    }
    return out;
}

HVElement hv_left_mult(const NCPoly& x, const HVElement& e) {
    HVElement out;
    out.reserve(e.size());
    for (const auto& p : e) out.push_back(x * p);
    return out;
}

HVElement hv_right_mult(const HVElement& e, const NCPoly& z,
                        const YDModule& V) {
    const CellRef& cell = V.cell();
    GenMorphism delta = diagonal_coproduct(cell);
    NCPoly dz = delta.apply(z);
    HVElement out(V.dim(), NCPoly(cell->alphabet()));
    for (const auto& [key, c] : dz.terms()) {
        const Word &w1 = key[0], &w2 = key[1];
        ScalMatrix M = V.word_action(w2);
        NCPoly m1 = NCPoly::monomial(cell->alphabet(), w1, c);
        for (std::size_t p = 0; p < V.dim(); ++p) {
            if (e[p].is_zero()) continue;
            NCPoly h = e[p] * m1;
            for (std::size_t k = 0; k < V.dim(); ++k) {
                if (M.at(p, k).is_zero()) continue;
                out[k] = out[k] + h.scaled(M.at(p, k));
            }
        }
    }
    for (auto& p : out) p = cell->nf(p);
    return out;
}

HVElement d_from_omega(const ReducedCalculus& calc, const NCPoly& x) {
    const YDModule& V = *calc.module;
    const CellRef& cell = V.cell();
    GenMorphism delta = diagonal_coproduct(cell);
    NCPoly dx = delta.apply(x);
    HVElement out(V.dim(), NCPoly(cell->alphabet()));
    for (const auto& [key, c] : dx.terms()) {
        std::vector<Scalar> w = calc.omega_word(key[1]);
        NCPoly m1 = NCPoly::monomial(cell->alphabet(), key[0], c);
        for (std::size_t p = 0; p < V.dim(); ++p)
            if (!w[p].is_zero()) out[p] = out[p] + m1.scaled(w[p]);
    }
    for (auto& p : out) p = cell->nf(p);
    return out;
}

HVElement omega_from_d(const YDModule& V,
                       const std::function<HVElement(const Word&)>& d,
                       const NCPoly& x) {
    const CellRef& cell = V.cell();
    GenMorphism delta = diagonal_coproduct(cell);
    GenMorphism S = diagonal_antipode(cell);
    NCPoly dx = delta.apply(x);
    HVElement out(V.dim(), NCPoly(cell->alphabet()));
    for (const auto& [key, c] : dx.terms()) {
        NCPoly sw1 = S.apply_word(key[0]).scaled(c);
        HVElement dv = d(key[1]);
        for (std::size_t p = 0; p < V.dim(); ++p)
            if (!dv[p].is_zero()) out[p] = out[p] + sw1 * dv[p];
    }
    for (auto& p : out) p = cell->nf(p);
    return out;
}

// ---------------------------------------------------------------------------
// verification and classification

Report verify_calculus(const ReducedCalculus& calc, const std::string& suite) {
    Report report;
    const YDModule& V = *calc.module;
    const CellRef& cell = V.cell();
    const Field& f = V.field();
    const AlphabetRef& al = cell->alphabet();
    std::size_t ngen = al->size();

    {
        bool ok = true;
        for (const auto& rel : cell->relations())
            if (!vec_is_zero(calc.omega(rel))) ok = false;
        report.add(suite, "omega vanishes on relations [" + calc.label + "]",
                   ok);
    }

    // omega is constant on rewriting classes: omega(w) = omega(nf(w))
    {
        bool ok = true;
        int depth = ngen <= 4 ? 3 : 2;
        std::vector<Word> words{Word{}};
        for (int d = 0; d < depth && ok; ++d) {
            std::vector<Word> next;
            for (const auto& w : words)
                for (GenId g = 0; g < ngen; ++g) {
                    Word e = w;
                    e.push_back(g);
                    next.push_back(e);
                }
            words = std::move(next);
            for (const auto& w : words) {
                std::vector<Scalar> lhs = calc.omega_word(w);
                std::vector<Scalar> rhs =
                    calc.omega(cell->nf(NCPoly::monomial(al, w, f.one())));
                for (std::size_t p = 0; p < V.dim(); ++p)
                    if (lhs[p] != rhs[p]) ok = false;
                if (!ok) break;
            }
        }
        report.add(suite,
                   "twisted Leibniz consistency up to degree " +
                       std::to_string(depth) + " [" + calc.label + "]",
                   ok);
    }

    // equivariance: rho(omega(g)) = sum omega(g_(2)) (x) S(g_(1)) g_(3)
    {
        GenMorphism delta = diagonal_coproduct(cell);
        GenMorphism S = diagonal_antipode(cell);
        bool ok = true;
        for (GenId g = 0; g < ngen && ok; ++g) {
            NCPoly d2 =
                apply_at(delta, delta.apply(NCPoly::generator(al, g)), 0);
            const std::vector<Scalar>& w = calc.table[g];
            std::vector<NCPoly> lhs(V.dim(), NCPoly(al));
            for (std::size_t p = 0; p < V.dim(); ++p) {
                if (w[p].is_zero()) continue;
                for (std::size_t k = 0; k < V.dim(); ++k)
                    lhs[k] = lhs[k] + V.com.C(k, p).scaled(w[p]);
            }
            std::vector<NCPoly> rhs(V.dim(), NCPoly(al));
            for (const auto& [key, c] : d2.terms()) {
                std::vector<Scalar> w2 = calc.omega_word(key[1]);
                NCPoly h =
                    S.apply_word(key[0]) * NCPoly::monomial(al, key[2], c);
                for (std::size_t k = 0; k < V.dim(); ++k)
                    if (!w2[k].is_zero()) rhs[k] = rhs[k] + h.scaled(w2[k]);
            }
            for (std::size_t k = 0; k < V.dim(); ++k)
                if (!cell->nf(lhs[k] - rhs[k]).is_zero()) ok = false;
        }
        report.add(suite, "equivariance on generators [" + calc.label + "]",
                   ok);
    }

    report.add(suite,
               "surjectivity rank " + std::to_string(calc.cert.rank) +
                   " of dim " + std::to_string(V.dim()) + " [" + calc.label +
                   "]",
               calc.cert.rank == V.dim(), "", calc.cert.degree_used);
    return report;
}

std::vector<ClassifiedCalculus> classify(const CellRef& oq, int max_dim,
                                         bool include_zero) {
    if (max_dim < 1) throw Error("classify: max_dim must be >= 1");
    struct Item {
        int n, eps;
        std::size_t weight;
    };
    std::vector<Item> items;
    for (int n = 0; (n + 1) * (n + 1) <= max_dim; ++n)
        for (int eps : {1, -1}) {
            if (n == 0 && eps == 1) continue;  // V_0^{+1} = C_eps is excluded
            items.push_back(
                {n, eps, static_cast<std::size_t>((n + 1) * (n + 1))});
        }

    std::map<std::pair<int, int>, ReducedCalculus> simples;
    for (const auto& it : items) {
        auto module =
            std::make_shared<YDModule>(yd_module(oq, it.n, it.n, it.eps));
        auto coinv = coinvariants(module->com);
        if (coinv.size() != 1)
            throw Error(
                "classify: coinvariant space of V_n (x) V_n is not a line");
        ReducedCalculus c = inner_calculus(module, coinv.front());
        c.parts = {{it.n, it.eps}};
        std::ostringstream lbl;
        lbl << "omega(" << it.n << "," << (it.eps > 0 ? "+1" : "-1") << ")";
        c.label = lbl.str();
        simples.emplace(std::make_pair(it.n, it.eps), std::move(c));
    }

    std::vector<std::vector<std::size_t>> subsets;
    std::size_t count = items.size();
    for (std::size_t mask = 1; mask < (std::size_t(1) << count); ++mask) {
        std::vector<std::size_t> idx;
        std::size_t total = 0;
        for (std::size_t i = 0; i < count; ++i)
            if (mask & (std::size_t(1) << i)) {
                idx.push_back(i);
                total += items[i].weight;
            }
        if (total <= static_cast<std::size_t>(max_dim))
            subsets.push_back(std::move(idx));
    }
    std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });

    std::vector<ClassifiedCalculus> out;
    if (include_zero)
        out.push_back(ClassifiedCalculus{{}, 0, std::nullopt, {}, true});

    for (const auto& idx : subsets) {
        ClassifiedCalculus entry;
        for (std::size_t i : idx) {
            entry.parts.emplace_back(items[i].n, items[i].eps);
            entry.dim += items[i].weight;
        }
        ReducedCalculus calc = [&] {
            if (idx.size() == 1) {
                const Item& it = items[idx.front()];
                return simples.at({it.n, it.eps});
            }
            std::vector<ReducedCalculus> parts;
            for (std::size_t i : idx)
                parts.push_back(simples.at({items[i].n, items[i].eps}));
            return direct_sum(parts);
        }();
        entry.cert = calc.cert;
        entry.verified = verify_calculus(calc).overall_pass();
        entry.calc = std::move(calc);
        out.push_back(std::move(entry));
    }
    return out;
}

}  // namespace qdc
