#include "qdc/transport.hpp"

#include <sstream>

namespace qdc {

namespace {

void bump(SparseVec& row, std::size_t col, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = row.find(col);
    if (it == row.end())
        row.emplace(col, c);
    else {
        it->second += c;
        if (it->second.is_zero()) row.erase(it);
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// CotensorModule

CotensorModule::CotensorModule(const Cogroupoid& cog, Comodule V, int x, int y,
                               int degree)
    : cog_(&cog),
      source_(std::move(V)),
      x_(x),
      y_(y),
      degree_(degree),
      span_(source_.field(), /*track_combos=*/true) {
    if (!same_alphabet(source_.cell->alphabet(), cog.cell(x, x)->alphabet()))
        throw Error("cotensor: comodule lives over the wrong diagonal cell");

    int filtration = 0;
    for (const auto& p : source_.coaction)
        filtration = std::max(filtration, p.leg_degree(0));
    if (degree_ < 0) degree_ = filtration;
    if (degree_ < filtration)
        throw TruncationExceeded(
            "cotensor truncation is below the coaction filtration level");
    const CellRef& xy = cog.cell(x_, y_);
    if (degree_ + 1 > xy->completed_degree())
        throw TruncationExceeded(
            "cell " + xy->name() +
            " is not completed far enough for the stability probe");

    basis_ = solve(degree_);
    auto probe = solve(degree_ + 1);
    if (probe.size() != basis_.size())
        throw DimensionUnstable(
            "cotensor dimension changed from " + std::to_string(basis_.size()) +
            " to " + std::to_string(probe.size()) + " when probing degree " +
            std::to_string(degree_ + 1));

    for (const auto& b : basis_)
        if (!span_.insert(element_to_sparse(b)))
            throw Error("cotensor basis is not independent");
}

std::size_t CotensorModule::id_for(const Word& w) const {
    auto it = word_ids_.find(w);
    if (it != word_ids_.end()) return it->second;
    std::size_t id = word_ids_.size();
    word_ids_.emplace(w, id);
    return id;
}

SparseVec CotensorModule::element_to_sparse(
    const std::vector<NCPoly>& element) const {
    if (element.size() != source_.dim)
        throw Error("cotensor element has the wrong number of components");
    SparseVec out;
    for (std::size_t i = 0; i < element.size(); ++i) {
        NCPoly p = cog_->cell(x_, y_)->nf(element[i]);
        for (const auto& [key, c] : p.terms())
            bump(out, id_for(key[0]) * source_.dim + i, c);
    }
    return out;
}

std::vector<std::vector<NCPoly>> CotensorModule::solve(int degree) const {
    const CellRef& xy = cog_->cell(x_, y_);
    const Field& f = source_.field();
    std::size_t dimv = source_.dim;

    std::vector<Word> words = xy->system().normal_words_up_to(degree);
    std::size_t ncols = words.size() * dimv;
    auto col = [&](std::size_t i, std::size_t w) { return w * dimv + i; };

    // equation coordinates: (component k, word in B(X,X), word in B(X,Y))
    std::map<std::tuple<std::size_t, Word, Word>, SparseVec> rows;
    const GenMorphism& dxyx = cog_->delta(x_, y_, x_);
    for (std::size_t w = 0; w < words.size(); ++w) {
        NCPoly mono = NCPoly::monomial(xy->alphabet(), words[w], f.one());
        NCPoly dw = cog_->nf_tensor(dxyx.apply(mono));
        for (std::size_t i = 0; i < dimv; ++i) {
            std::size_t c = col(i, w);
            // (rho_V (x) id): sum_k v_k (x) C(k, i) (x) w
            for (std::size_t k = 0; k < dimv; ++k)
                for (const auto& [key, cf] : source_.C(k, i).terms())
                    bump(rows[{k, key[0], words[w]}], c, cf);
            // minus (id (x) Delta_{X,Y}^X) on v_i (x) w
            for (const auto& [key, cf] : dw.terms())
                bump(rows[{i, key[0], key[1]}], c, -cf);
        }
    }
    std::vector<SparseVec> sys;
    sys.reserve(rows.size());
    for (auto& [key, row] : rows)
        if (!row.empty()) sys.push_back(std::move(row));
    auto ns = nullspace(f, sys, ncols);

    std::vector<std::vector<NCPoly>> out;
    for (const auto& vec : ns) {
        std::vector<NCPoly> elem(dimv, NCPoly(xy->alphabet()));
        for (std::size_t w = 0; w < words.size(); ++w)
            for (std::size_t i = 0; i < dimv; ++i) {
                const Scalar& cf = vec[col(i, w)];
                if (!cf.is_zero()) elem[i].add_term({words[w]}, cf);
            }
        out.push_back(std::move(elem));
    }
    return out;
}

std::vector<Scalar> CotensorModule::coordinates(
    const std::vector<NCPoly>& element) const {
    auto coords = span_.coordinates(element_to_sparse(element));
    if (!coords)
        throw BasisEscape(
            "element lies outside the computed cotensor (increase the "
            "truncation degree)");
    return *coords;
}

Comodule CotensorModule::transported_comodule() const {
    const CellRef& yy = cog_->cell(y_, y_);
    const CellRef& xy = cog_->cell(x_, y_);
    Comodule W;
    W.cell = yy;
    W.dim = dim();
    for (std::size_t r = 0; r < W.dim; ++r)
        W.labels.push_back("w" + std::to_string(r));
    W.coaction.assign(W.dim * W.dim, NCPoly(yy->alphabet()));

    const GenMorphism& dxyy = cog_->delta(x_, y_, y_);
    for (std::size_t r = 0; r < dim(); ++r) {
        // rho(B_r) = sum_i v_i (x) Delta_{X,Y}^Y(p_ri), grouped by the
        // B(Y,Y) leg, each group re-expressed in the basis
        std::map<Word, std::vector<NCPoly>> grouped;
        for (std::size_t i = 0; i < source_.dim; ++i) {
            if (basis_[r][i].is_zero()) continue;
            NCPoly d = cog_->nf_tensor(dxyy.apply(basis_[r][i]));
            for (const auto& [key, c] : d.terms()) {
                auto it =
                    grouped
                        .try_emplace(key[1], std::vector<NCPoly>(
                                                 source_.dim,
                                                 NCPoly(xy->alphabet())))
                        .first;
                it->second[i].add_term({key[0]}, c);
            }
        }
        for (const auto& [z, elem] : grouped) {
            std::vector<Scalar> coords = coordinates(elem);
            for (std::size_t t = 0; t < W.dim; ++t)
                if (!coords[t].is_zero()) W.C(t, r).add_term({z}, coords[t]);
        }
    }
    for (auto& p : W.coaction) p = yy->nf(p);
    return W;
}

// ---------------------------------------------------------------------------
// transported YD structure

TransportedYD transport_yd(const Cogroupoid& cog, const YDModule& V, int x,
                           int y, int degree) {
    CotensorModule cot(cog, V.com, x, y, degree);
    const CellRef& yy = cog.cell(y, y);
    const CellRef& xy = cog.cell(x, y);
    const Field& f = V.field();

    auto module = std::make_shared<YDModule>();
    module->com = cot.transported_comodule();

    const GenMorphism& dyyx = cog.delta(y, y, x);
    const GenMorphism& dxyx = cog.delta(x, y, x);
    const GenMorphism& syx = cog.antipode(y, x);

    std::size_t ngen = yy->alphabet()->size();
    for (GenId g = 0; g < ngen; ++g) {
        // b_(1)^{Y,X} (x) b_(2)^{X,X} (x) b_(3)^{X,Y}
        NCPoly d2 = apply_at(
            dxyx, dyyx.apply(NCPoly::generator(yy->alphabet(), g)), 1);
        ScalMatrix M(f, cot.dim(), cot.dim());
        for (std::size_t r = 0; r < cot.dim(); ++r) {
            std::vector<NCPoly> out(V.dim(), NCPoly(xy->alphabet()));
            for (const auto& [key, c] : d2.terms()) {
                const Word &w1 = key[0], &w2 = key[1], &w3 = key[2];
                ScalMatrix Mw2 = V.word_action(w2);
                NCPoly sw1 = syx.apply_word(w1).scaled(c);
                NCPoly tail = NCPoly::monomial(xy->alphabet(), w3, f.one());
                for (std::size_t i = 0; i < V.dim(); ++i) {
                    if (cot.basis()[r][i].is_zero()) continue;
                    NCPoly h = sw1 * cot.basis()[r][i] * tail;
                    for (std::size_t k = 0; k < V.dim(); ++k) {
                        if (Mw2.at(i, k).is_zero()) continue;
                        out[k] = out[k] + h.scaled(Mw2.at(i, k));
                    }
                }
            }
            std::vector<Scalar> coords = cot.coordinates(out);
            for (std::size_t t = 0; t < cot.dim(); ++t) M.at(r, t) = coords[t];
        }
        module->action.push_back(std::move(M));
    }
    return TransportedYD{std::move(cot), std::move(module)};
}

// ---------------------------------------------------------------------------
// calculus transport

CalculusTransport transport_calculus(const ReducedCalculus& calc,
                                     const TransportedYD& target,
                                     SurjectivityOptions options) {
    if (!calc.theta)
        throw Error("transport_calculus needs an inner calculus");
    const CotensorModule& cot = target.cot;
    const Cogroupoid& cog = cot.cogroupoid();
    int x = cot.x(), y = cot.y();
    const CellRef& yy = cog.cell(y, y);
    const CellRef& xy = cog.cell(x, y);
    const Field& f = calc.module->field();
    std::size_t dimv = calc.dim();

    if (dimv != cot.source().dim)
        throw Error("transport_calculus: module mismatch");

    // theta (x) 1 in cotensor coordinates
    std::vector<NCPoly> theta_elem;
    for (std::size_t i = 0; i < dimv; ++i)
        theta_elem.push_back(
            NCPoly::constant(xy->alphabet(), (*calc.theta)[i]));
    std::vector<Scalar> theta_bar = cot.coordinates(theta_elem);

    CalculusTransport result{inner_calculus(target.module, theta_bar, options),
                             {}};
    result.eta.parts = calc.parts;
    result.eta.label = "eta[" + calc.label + "]";

    Report& checks = result.checks;
    const std::string suite = "transport";

    {
        bool ok = true;
        for (const auto& rel : yy->relations())
            if (!target.module->poly_action(rel).is_zero()) ok = false;
        checks.add(suite,
                   "transported action kills relations [" + result.eta.label +
                       "]",
                   ok);
    }

    // the inner form agrees with the omega-bar formula on every generator
    {
        const GenMorphism& dyyx = cog.delta(y, y, x);
        const GenMorphism& dxyx = cog.delta(x, y, x);
        const GenMorphism& syx = cog.antipode(y, x);
        bool ok = true;
        for (GenId g = 0; g < yy->alphabet()->size(); ++g) {
            NCPoly d2 = apply_at(
                dxyx, dyyx.apply(NCPoly::generator(yy->alphabet(), g)), 1);
            std::vector<NCPoly> elem(dimv, NCPoly(xy->alphabet()));
            for (const auto& [key, c] : d2.terms()) {
                std::vector<Scalar> w = calc.omega_word(key[1]);
                NCPoly h = syx.apply_word(key[0]).scaled(c) *
                           NCPoly::monomial(xy->alphabet(), key[2], f.one());
                for (std::size_t i = 0; i < dimv; ++i)
                    if (!w[i].is_zero()) elem[i] = elem[i] + h.scaled(w[i]);
            }
            std::vector<Scalar> coords = cot.coordinates(elem);
            for (std::size_t t = 0; t < cot.dim(); ++t)
                if (coords[t] != result.eta.table[g][t]) ok = false;
        }
        checks.add(suite,
                   "inner form matches the omega-bar formula [" +
                       result.eta.label + "]",
                   ok);
    }

    checks.merge(verify_calculus(result.eta, suite));
    return result;
}

TransportJob transport_calculus(const Cogroupoid& cog,
                                const ReducedCalculus& calc, int x, int y,
                                int degree, SurjectivityOptions options) {
    TransportedYD tyd = transport_yd(cog, *calc.module, x, y, degree);
    CalculusTransport ct = transport_calculus(calc, tyd, options);
    return TransportJob{std::move(tyd), std::move(ct.eta),
                        std::move(ct.checks)};
}

std::vector<std::size_t> cotensor_spin_dims(const Cogroupoid& cog, int kmax) {
    std::vector<std::size_t> dims;
    for (int k = 0; k <= kmax; ++k) {
        Comodule v = spin_comodule(cog.cell(0, 0), k);
        CotensorModule cot(cog, v, 0, 1);
        dims.push_back(cot.dim());
    }
    return dims;
}

// ---------------------------------------------------------------------------
// roundtrip

Report roundtrip_check(const Cogroupoid& cog, const YDModule& V,
                       const ReducedCalculus* calc, int degree) {
    Report report;
    const std::string suite = "roundtrip";
    const CellRef& xx = cog.cell(0, 0);
    const Field& f = V.field();

    TransportedYD W = transport_yd(cog, V, 0, 1, degree);
    TransportedYD W2 = transport_yd(cog, *W.module, 1, 0);

    report.add(suite, "double cotensor dimension matches",
               W2.module->dim() == V.dim(),
               "dim = " + std::to_string(W2.module->dim()));
    if (W2.module->dim() != V.dim()) return report;

    // theta_V(v_p) = sum v_(0) (x) v_(1)^{X,Y} (x) v_(2)^{Y,X}
    const GenMorphism& dxxy = cog.delta(0, 0, 1);
    const CellRef& yx = cog.cell(1, 0);
    ScalMatrix theta(f, W2.module->dim(), V.dim());
    for (std::size_t p = 0; p < V.dim(); ++p) {
        std::map<Word, std::vector<NCPoly>> grouped;
        for (std::size_t k = 0; k < V.dim(); ++k) {
            if (V.com.C(k, p).is_zero()) continue;
            NCPoly d = cog.nf_tensor(dxxy.apply(V.com.C(k, p)));
            for (const auto& [key, c] : d.terms()) {
                auto it =
                    grouped
                        .try_emplace(key[1],
                                     std::vector<NCPoly>(
                                         V.dim(),
                                         NCPoly(cog.cell(0, 1)->alphabet())))
                        .first;
                it->second[k].add_term({key[0]}, c);
            }
        }
        std::vector<NCPoly> w2elem(W.module->dim(), NCPoly(yx->alphabet()));
        for (const auto& [z, elem] : grouped) {
            std::vector<Scalar> coords = W.cot.coordinates(elem);
            for (std::size_t r = 0; r < W.module->dim(); ++r)
                if (!coords[r].is_zero()) w2elem[r].add_term({z}, coords[r]);
        }
        for (auto& pz : w2elem) pz = yx->nf(pz);
        std::vector<Scalar> coords = W2.cot.coordinates(w2elem);
        for (std::size_t t = 0; t < W2.module->dim(); ++t)
            theta.at(t, p) = coords[t];
    }

    report.add(suite, "theta_V is bijective", !theta.det().is_zero());

    // colinearity: (theta (x) id) rho_V = rho_{W2} theta
    {
        bool ok = true;
        for (std::size_t t = 0; t < V.dim() && ok; ++t)
            for (std::size_t p = 0; p < V.dim(); ++p) {
                NCPoly lhs(xx->alphabet());
                for (std::size_t k = 0; k < V.dim(); ++k)
                    if (!theta.at(t, k).is_zero())
                        lhs = lhs + V.com.C(k, p).scaled(theta.at(t, k));
                NCPoly rhs(xx->alphabet());
                for (std::size_t r = 0; r < V.dim(); ++r)
                    if (!theta.at(r, p).is_zero())
                        rhs = rhs +
                              W2.module->com.C(t, r).scaled(theta.at(r, p));
                if (!xx->nf(lhs - rhs).is_zero()) {
                    ok = false;
                    break;
                }
            }
        report.add(suite, "theta_V is colinear", ok);
    }

    // equivariance on generators of B(X,X)
    {
        bool ok = true;
        for (GenId g = 0; g < xx->alphabet()->size() && ok; ++g) {
            for (std::size_t p = 0; p < V.dim() && ok; ++p)
                for (std::size_t t = 0; t < V.dim(); ++t) {
                    Scalar lhs = f.zero();
                    for (std::size_t p2 = 0; p2 < V.dim(); ++p2)
                        lhs += V.action[g].at(p, p2) * theta.at(t, p2);
                    Scalar rhs = f.zero();
                    for (std::size_t r = 0; r < V.dim(); ++r)
                        rhs += theta.at(r, p) * W2.module->action[g].at(r, t);
                    if (lhs != rhs) {
                        ok = false;
                        break;
                    }
                }
        }
        report.add(suite, "theta_V is equivariant on generators", ok);
    }

    if (calc) {
        CalculusTransport eta = transport_calculus(*calc, W);
        report.merge(eta.checks);
        CalculusTransport eta2 = transport_calculus(eta.eta, W2);
        report.merge(eta2.checks);
        bool ok = true;
        for (GenId g = 0; g < xx->alphabet()->size(); ++g) {
            const std::vector<Scalar>& w = calc->table[g];
            for (std::size_t t = 0; t < V.dim(); ++t) {
                Scalar lhs = f.zero();
                for (std::size_t p = 0; p < V.dim(); ++p)
                    lhs += theta.at(t, p) * w[p];
                if (lhs != eta2.eta.table[g][t]) ok = false;
            }
        }
        report.add(suite, "theta_V carries omega to omega-bar-bar", ok);
    }
    return report;
}

}  // namespace qdc
