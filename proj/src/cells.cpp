#include "qdc/cells.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qdc {

Cell::Cell(std::string name, ScalMatrix E, ScalMatrix F, AlphabetRef alphabet,
           RewriteSystem system, std::vector<NCPoly> relations)
    : name_(std::move(name)),
      E_(std::move(E)),
      F_(std::move(F)),
      alphabet_(std::move(alphabet)),
      system_(std::move(system)),
      relations_(std::move(relations)) {
    // the defining relation entries must vanish in the completed system
    for (const auto& rel : relations_)
        if (!system_.normal_form(rel).is_zero())
            throw Error("cell " + name_ +
                        ": defining relation does not reduce to zero");
}

NCPoly Cell::gen(int i, int j) const {
    return NCPoly::generator(alphabet_, alphabet_->at_grid(i, j));
}

ScalMatrix eq_matrix(const Field& f) {
    ScalMatrix m(f, 2, 2);
    m.at(0, 1) = f.one();
    m.at(1, 0) = -f.q_pow(-1);
    return m;
}

std::vector<NCPoly> cell_relations(const ScalMatrix& E, const ScalMatrix& F,
                                   const AlphabetRef& alphabet) {
    const Field& f = alphabet->field();
    std::size_t m = E.rows(), n = F.rows();
    ScalMatrix Finv = F.inverse();
    std::vector<NCPoly> rels;

    // F^-1 a^t E a = I_n
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            NCPoly rel(alphabet);
            for (std::size_t k = 0; k < n; ++k) {
                if (Finv.at(i, k).is_zero()) continue;
                for (std::size_t l = 0; l < m; ++l) {
                    for (std::size_t p = 0; p < m; ++p) {
                        Scalar c = Finv.at(i, k) * E.at(l, p);
                        if (c.is_zero()) continue;
                        Word w{alphabet->at_grid(static_cast<int>(l),
                                                 static_cast<int>(k)),
                               alphabet->at_grid(static_cast<int>(p),
                                                 static_cast<int>(j))};
                        rel.add_term({w}, c);
                    }
                }
            }
            if (i == j) rel.add_term({Word{}}, -f.one());
            rels.push_back(std::move(rel));
        }
    }
    // a F^-1 a^t E = I_m
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            NCPoly rel(alphabet);
            for (std::size_t k = 0; k < n; ++k) {
                for (std::size_t l = 0; l < n; ++l) {
                    if (Finv.at(k, l).is_zero()) continue;
                    for (std::size_t p = 0; p < m; ++p) {
                        Scalar c = Finv.at(k, l) * E.at(p, j);
                        if (c.is_zero()) continue;
                        Word w{alphabet->at_grid(static_cast<int>(i),
                                                 static_cast<int>(k)),
                               alphabet->at_grid(static_cast<int>(p),
                                                 static_cast<int>(l))};
                        rel.add_term({w}, c);
                    }
                }
            }
            if (i == j) rel.add_term({Word{}}, -f.one());
            rels.push_back(std::move(rel));
        }
    }
    return rels;
}

namespace {

Scalar trace_invariant(const ScalMatrix& E) {
    return (E.inverse() * E.transpose()).trace();
}

void validate_cell_objects(const ScalMatrix& E, const ScalMatrix& F) {
    if (E.rows() != E.cols() || F.rows() != F.cols())
        throw Error("cell objects must be square matrices");
    if (E.rows() < 2 || F.rows() < 2)
        throw Error("cell objects must have size >= 2");
    if (E.det().is_zero() || F.det().is_zero())
        throw SingularMatrix("cell object is singular");
    if (trace_invariant(E) != trace_invariant(F))
        throw TraceMismatch(
            "objects have different trace invariants; the cell would be the "
            "zero algebra");
}

}  // namespace

CellRef make_cell(const std::string& name, const ScalMatrix& E,
                  const ScalMatrix& F, int degree, CompletionOptions options) {
    validate_cell_objects(E, F);
    auto alphabet = std::make_shared<Alphabet>(Alphabet::grid(
        name, static_cast<int>(E.rows()), static_cast<int>(F.rows()),
        E.field()));
    std::vector<NCPoly> rels = cell_relations(E, F, alphabet);
    RewriteSystem sys = complete(alphabet, rels,
                                 MonomialOrder::by_index(alphabet->size()),
                                 degree, options);
    return std::make_shared<Cell>(name, E, F, alphabet, std::move(sys),
                                  std::move(rels));
}

CellRef oq_sl2_cell(const Field& f, int degree) {
    ScalMatrix eq = eq_matrix(f);
    auto alphabet = std::make_shared<Alphabet>(Alphabet::named_grid(
        "OqSL2", {"a", "b", "c", "d"}, 2, 2, f));
    std::vector<NCPoly> classical;
    for (const char* t : {"b a - q a b", "c a - q a c", "d b - q b d",
                          "d c - q c d", "b c - c b", "a d - q^-1 b c - 1",
                          "d a - q b c - 1"})
        classical.push_back(parse_poly(alphabet, t));
    RewriteSystem sys =
        complete(alphabet, classical,
                 MonomialOrder::by_names(*alphabet, {"b", "c", "a", "d"}),
                 degree);
    // store the bilinear relation entries; the Cell constructor re-checks
    // that they vanish in the completed classical system
    std::vector<NCPoly> rels = cell_relations(eq, eq, alphabet);
    return std::make_shared<Cell>("OqSL2", eq, eq, alphabet, std::move(sys),
                                  std::move(rels));
}

GenMorphism diagonal_coproduct(const CellRef& cell) {
    if (!cell->diagonal()) throw Error("coproduct needs a diagonal cell");
    const AlphabetRef& al = cell->alphabet();
    GenMorphism d;
    d.name = "Delta";
    d.source = al;
    d.targets = {al, al};
    int n = al->rows();
    for (GenId g = 0; g < al->size(); ++g) {
        auto [i, j] = al->grid_pos(g);
        NCPoly img(std::vector<AlphabetRef>{al, al});
        for (int k = 0; k < n; ++k)
            img.add_term({Word{al->at_grid(i, k)}, Word{al->at_grid(k, j)}},
                         cell->field().one());
        d.images.push_back(std::move(img));
    }
    return d;
}

GenMorphism diagonal_counit(const CellRef& cell) {
    if (!cell->diagonal()) throw Error("counit needs a diagonal cell");
    const AlphabetRef& al = cell->alphabet();
    GenMorphism e;
    e.name = "eps";
    e.source = al;
    e.targets = {al};
    for (GenId g = 0; g < al->size(); ++g) {
        auto [i, j] = al->grid_pos(g);
        e.images.push_back(NCPoly::constant(
            al, i == j ? cell->field().one() : cell->field().zero()));
    }
    return e;
}

GenMorphism diagonal_antipode(const CellRef& cell) {
    if (!cell->diagonal()) throw Error("antipode needs a diagonal cell");
    const AlphabetRef& al = cell->alphabet();
    const ScalMatrix& E = cell->source_matrix();
    ScalMatrix Einv = E.inverse();
    GenMorphism s;
    s.name = "S";
    s.source = al;
    s.targets = {al};
    s.antimultiplicative = true;
    std::size_t n = E.rows();
    for (GenId g = 0; g < al->size(); ++g) {
        auto [i, j] = al->grid_pos(g);
        NCPoly img(al);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = 0; l < n; ++l) {
                Scalar c = Einv.at(static_cast<std::size_t>(i), k) *
                           E.at(l, static_cast<std::size_t>(j));
                if (c.is_zero()) continue;
                img.add_term({Word{al->at_grid(static_cast<int>(l),
                                               static_cast<int>(k))}},
                             c);
            }
        s.images.push_back(std::move(img));
    }
    return s;
}

Scalar counit_scalar(const CellRef& cell, const NCPoly& p) {
    if (p.arity() != 1 || !same_alphabet(p.legs().front(), cell->alphabet()))
        throw Error("counit_scalar: polynomial over the wrong cell");
    const Field& f = p.field();
    const Alphabet& al = *cell->alphabet();
    Scalar acc = f.zero();
    for (const auto& [k, c] : p.terms()) {
        bool diag = true;
        for (GenId g : k[0]) {
            auto [i, j] = al.grid_pos(g);
            if (i != j) {
                diag = false;
                break;
            }
        }
        if (diag) acc += c;
    }
    return acc;
}

FieldConfig solve_q(const ScalMatrix& E) {
    const Field& f = E.field();
    Scalar t = trace_invariant(E);
    Scalar expected = -f.q_pow(1) - f.q_pow(-1);
    if (t != expected)
        throw TraceMismatch("tr(E^-1 E^t) = " + t.to_string() +
                            " differs from -q - q^-1 = " +
                            expected.to_string());
    if (f.mode() == FieldMode::Quadratic)
        return FieldConfig{FieldMode::Quadratic, f.tau()};
    return FieldConfig{FieldMode::Symbolic, Rational(0)};
}

Field quadratic_field_from_trace(
    const std::vector<std::vector<Rational>>& rows) {
    Field probe = Field::symbolic();
    std::vector<std::vector<Scalar>> entries;
    for (const auto& r : rows) {
        std::vector<Scalar> row;
        for (const auto& x : r) row.push_back(probe.rational(x));
        entries.push_back(std::move(row));
    }
    ScalMatrix E = ScalMatrix::from_rows(probe, std::move(entries));
    if (E.rows() != E.cols()) throw Error("matrix must be square");
    if (E.det().is_zero()) throw SingularMatrix("matrix is singular");
    Scalar t = trace_invariant(E);
    if (!t.is_rational())
        throw Error("trace invariant is not rational");
    return Field::quadratic(t.as_rational());
}

MatrixInput load_matrix_json(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    if (!j.contains("field") || !j.contains("rows"))
        throw Error("matrix file needs 'field' and 'rows'");
    std::string mode = j["field"].value("mode", "");
    const auto& rows = j["rows"];
    if (!rows.is_array() || rows.empty())
        throw Error("matrix 'rows' must be a non-empty array");

    if (mode == "quadratic") {
        std::vector<std::vector<Rational>> rat;
        Field probe = Field::symbolic();
        for (const auto& row : rows) {
            std::vector<Rational> r;
            for (const auto& e : row) {
                Scalar v = probe.parse(e.get<std::string>());
                if (!v.is_rational())
                    throw Error(
                        "quadratic-mode matrix entries must be rational "
                        "constants");
                r.push_back(v.as_rational());
            }
            rat.push_back(std::move(r));
        }
        Field f = quadratic_field_from_trace(rat);
        ScalMatrix E(f, rat.size(), rat.front().size());
        for (std::size_t i = 0; i < rat.size(); ++i) {
            if (rat[i].size() != rat.front().size())
                throw Error("ragged matrix rows");
            for (std::size_t k = 0; k < rat[i].size(); ++k)
                E.at(i, k) = f.rational(rat[i][k]);
        }
        return MatrixInput{f, E, "quadratic(tau=" +
                                     [&] {
                                         std::ostringstream os;
                                         os << f.tau();
                                         return os.str();
                                     }() +
                                     ")"};
    }
    if (mode == "symbolic") {
        Field f = Field::symbolic();
        std::vector<std::vector<Scalar>> entries;
        for (const auto& row : rows) {
            std::vector<Scalar> r;
            for (const auto& e : row) r.push_back(f.parse(e.get<std::string>()));
            entries.push_back(std::move(r));
        }
        ScalMatrix E = ScalMatrix::from_rows(f, std::move(entries));
        if (E.rows() != E.cols()) throw Error("matrix must be square");
        if (E.det().is_zero()) throw SingularMatrix("matrix is singular");
        solve_q(E);  // trace admissibility
        return MatrixInput{f, E, "symbolic"};
    }
    throw Error("field mode must be 'symbolic' or 'quadratic'");
}

MatrixInput load_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open matrix file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_matrix_json(ss.str());
}

// ---------------------------------------------------------------------------
// Cogroupoid

Cogroupoid Cogroupoid::hopf(CellRef diagonal) {
    if (!diagonal->diagonal())
        throw Error("hopf cogroupoid needs a diagonal cell");
    Cogroupoid c;
    c.nobj_ = 1;
    c.objects_.push_back(diagonal->source_matrix());
    c.cells_[0][0] = std::move(diagonal);
    c.build_maps();
    return c;
}

Cogroupoid Cogroupoid::over_pair(const Field& f, const ScalMatrix& E,
                                 PairDegrees degrees,
                                 CompletionOptions options) {
    ScalMatrix eq = eq_matrix(f);
    if (trace_invariant(E) != trace_invariant(eq))
        throw TraceMismatch(
            "tr(E^-1 E^t) must equal -q - q^-1 to pair with E_q");
    Cogroupoid c;
    c.nobj_ = 2;
    c.objects_.push_back(eq);
    c.objects_.push_back(E);
    c.cells_[0][0] = oq_sl2_cell(f, degrees.xx);
    c.cells_[0][1] = make_cell("B(Eq,E)", eq, E, degrees.xy, options);
    c.cells_[1][0] = make_cell("B(E,Eq)", E, eq, degrees.yx, options);
    c.cells_[1][1] = make_cell("B(E,E)", E, E, degrees.yy, options);
    c.build_maps();
    return c;
}

void Cogroupoid::build_maps() {
    int n = static_cast<int>(nobj_);
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            const CellRef& uv = cells_[u][v];
            // coproducts through every intermediate
            for (int z = 0; z < n; ++z) {
                const CellRef& uz = cells_[u][z];
                const CellRef& zv = cells_[z][v];
                GenMorphism d;
                d.name = "Delta(" + std::to_string(u) + "," +
                         std::to_string(v) + ";" + std::to_string(z) + ")";
                d.source = uv->alphabet();
                d.targets = {uz->alphabet(), zv->alphabet()};
                int zsize = static_cast<int>(objects_[z].rows());
                for (GenId g = 0; g < uv->alphabet()->size(); ++g) {
                    auto [i, j] = uv->alphabet()->grid_pos(g);
                    NCPoly img(std::vector<AlphabetRef>{uz->alphabet(),
                                                        zv->alphabet()});
                    for (int k = 0; k < zsize; ++k)
                        img.add_term({Word{uz->alphabet()->at_grid(i, k)},
                                      Word{zv->alphabet()->at_grid(k, j)}},
                                     uv->field().one());
                    d.images.push_back(std::move(img));
                }
                deltas_.emplace(std::array<int, 3>{u, v, z}, std::move(d));
            }
            // antipode S_{u,v} : B(u,v) -> B(v,u), a_ij -> (E^-1 a^t F)_ij
            {
                const CellRef& vu = cells_[v][u];
                const ScalMatrix& E = objects_[u];
                const ScalMatrix& F = objects_[v];
                ScalMatrix Einv = E.inverse();
                GenMorphism s;
                s.name = "S(" + std::to_string(u) + "," + std::to_string(v) + ")";
                s.source = uv->alphabet();
                s.targets = {vu->alphabet()};
                s.antimultiplicative = true;
                std::size_t m = E.rows(), nn = F.rows();
                for (GenId g = 0; g < uv->alphabet()->size(); ++g) {
                    auto [i, j] = uv->alphabet()->grid_pos(g);
                    NCPoly img(vu->alphabet());
                    for (std::size_t k = 0; k < m; ++k) {
                        for (std::size_t l = 0; l < nn; ++l) {
                            Scalar c = Einv.at(static_cast<std::size_t>(i), k) *
                                       F.at(l, static_cast<std::size_t>(j));
                            if (c.is_zero()) continue;
                            img.add_term(
                                {Word{vu->alphabet()->at_grid(
                                    static_cast<int>(l), static_cast<int>(k))}},
                                c);
                        }
                    }
                    s.images.push_back(std::move(img));
                }
                antipodes_[u][v] = std::move(s);
            }
        }
        // counit of the diagonal cell
        const CellRef& uu = cells_[u][u];
        GenMorphism e;
        e.name = "eps(" + std::to_string(u) + ")";
        e.source = uu->alphabet();
        e.targets = {uu->alphabet()};
        for (GenId g = 0; g < uu->alphabet()->size(); ++g) {
            auto [i, j] = uu->alphabet()->grid_pos(g);
            e.images.push_back(NCPoly::constant(
                uu->alphabet(),
                i == j ? uu->field().one() : uu->field().zero()));
        }
        counits_[u] = std::move(e);
    }
}

const ScalMatrix& Cogroupoid::object_matrix(int u) const {
    if (u < 0 || static_cast<std::size_t>(u) >= nobj_)
        throw Error("object index out of range");
    return objects_[static_cast<std::size_t>(u)];
}

const CellRef& Cogroupoid::cell(int u, int v) const {
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= nobj_ ||
        static_cast<std::size_t>(v) >= nobj_)
        throw Error("cell index out of range");
    return cells_[u][v];
}

const GenMorphism& Cogroupoid::delta(int u, int v, int z) const {
    auto it = deltas_.find(std::array<int, 3>{u, v, z});
    if (it == deltas_.end()) throw Error("coproduct index out of range");
    return it->second;
}

const GenMorphism& Cogroupoid::counit(int u) const {
    if (u < 0 || static_cast<std::size_t>(u) >= nobj_ || !counits_[u])
        throw Error("counit index out of range");
    return *counits_[u];
}

const GenMorphism& Cogroupoid::antipode(int u, int v) const {
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= nobj_ ||
        static_cast<std::size_t>(v) >= nobj_ || !antipodes_[u][v])
        throw Error("antipode index out of range");
    return *antipodes_[u][v];
}

Scalar Cogroupoid::counit_value(int u, const NCPoly& p) const {
    if (p.arity() != 1 ||
        !same_alphabet(p.legs().front(), cell(u, u)->alphabet()))
        throw Error("counit_value: polynomial over the wrong cell");
    const Field& f = p.field();
    Scalar acc = f.zero();
    const auto& alpha = *cell(u, u)->alphabet();
    for (const auto& [k, c] : p.terms()) {
        bool diag = true;
        for (GenId g : k[0]) {
            auto [i, j] = alpha.grid_pos(g);
            if (i != j) {
                diag = false;
                break;
            }
        }
        if (diag) acc += c;
    }
    return acc;
}

const RewriteSystem* Cogroupoid::system_for(const AlphabetRef& alpha) const {
    for (std::size_t u = 0; u < nobj_; ++u)
        for (std::size_t v = 0; v < nobj_; ++v)
            if (cells_[u][v] && same_alphabet(cells_[u][v]->alphabet(), alpha))
                return &cells_[u][v]->system();
    throw Error("no cell owns alphabet " + alpha->label());
}

NCPoly Cogroupoid::nf_tensor(const NCPoly& p) const {
    std::vector<const RewriteSystem*> systems;
    systems.reserve(p.arity());
    for (const auto& leg : p.legs()) systems.push_back(system_for(leg));
    return normal_form_tensor(p, systems);
}

// ---------------------------------------------------------------------------
// axiom verification

Report verify_cogroupoid_axioms(const Cogroupoid& cog, int degree) {
    Report report;
    const std::string suite = "cogroupoid";
    int n = static_cast<int>(cog.object_count());

    auto gens = [&](int u, int v) {
        std::vector<GenId> g(cog.cell(u, v)->alphabet()->size());
        for (std::size_t i = 0; i < g.size(); ++i) g[i] = static_cast<GenId>(i);
        return g;
    };

    // coassociativity squares
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            for (int z = 0; z < n; ++z)
                for (int t = 0; t < n; ++t) {
                    std::string failing;
                    for (GenId g : gens(u, v)) {
                        NCPoly x = NCPoly::generator(cog.cell(u, v)->alphabet(), g);
                        NCPoly r1 = apply_at(cog.delta(z, v, t),
                                             cog.delta(u, v, z).apply(x), 1);
                        NCPoly r2 = apply_at(cog.delta(u, t, z),
                                             cog.delta(u, v, t).apply(x), 0);
                        if (!cog.nf_tensor(r1 - r2).is_zero())
                            failing += cog.cell(u, v)->alphabet()->name(g) + " ";
                    }
                    report.add(suite,
                               "coassociativity " + cog.cell(u, v)->name() +
                                   " via (" + std::to_string(z) + "," +
                                   std::to_string(t) + ")",
                               failing.empty(), failing, degree);
                }

    // counit triangles
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            std::string failing;
            for (GenId g : gens(u, v)) {
                NCPoly x = NCPoly::generator(cog.cell(u, v)->alphabet(), g);
                NCPoly left = contract_unit_leg(
                    apply_at(cog.counit(u), cog.delta(u, v, u).apply(x), 0), 0);
                NCPoly right = contract_unit_leg(
                    apply_at(cog.counit(v), cog.delta(u, v, v).apply(x), 1), 1);
                if (cog.nf_tensor(left) != cog.nf_tensor(x) ||
                    cog.nf_tensor(right) != cog.nf_tensor(x))
                    failing += cog.cell(u, v)->alphabet()->name(g) + " ";
            }
            report.add(suite, "counit triangles " + cog.cell(u, v)->name(),
                       failing.empty(), failing, degree);
        }

    // antipode diagrams: m(S_{x,y} (x) id)Delta_{x,x}^y = u eps_x
    //                and m(id (x) S_{y,x})Delta_{x,x}^y = u eps_x
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            std::string failing;
            for (GenId g : gens(x, x)) {
                NCPoly xg = NCPoly::generator(cog.cell(x, x)->alphabet(), g);
                Scalar eps = cog.counit_value(x, xg);
                NCPoly d = cog.delta(x, x, y).apply(xg);

                NCPoly left = multiply_legs(apply_at(cog.antipode(x, y), d, 0));
                NCPoly expect_left =
                    NCPoly::constant(cog.cell(y, x)->alphabet(), eps);
                bool ok1 = cog.cell(y, x)->nf(left) == expect_left;

                NCPoly right = multiply_legs(apply_at(cog.antipode(y, x), d, 1));
                NCPoly expect_right =
                    NCPoly::constant(cog.cell(x, y)->alphabet(), eps);
                bool ok2 = cog.cell(x, y)->nf(right) == expect_right;

                if (!ok1 || !ok2)
                    failing += cog.cell(x, x)->alphabet()->name(g) + " ";
            }
            report.add(suite,
                       "antipode diagrams " + cog.cell(x, x)->name() +
                           " via " + std::to_string(y),
                       failing.empty(), failing, degree);
        }

    // structural maps respect the defining relations
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            const auto& rels = cog.cell(u, v)->relations();
            for (int z = 0; z < n; ++z) {
                bool ok = true;
                for (const auto& rel : rels) {
                    NCPoly img = cog.delta(u, v, z).apply(rel);
                    if (!cog.nf_tensor(img).is_zero()) ok = false;
                }
                report.add(suite,
                           "Delta respects relations " +
                               cog.cell(u, v)->name() + " via " +
                               std::to_string(z),
                           ok, "", degree);
            }
            {
                bool ok = true;
                for (const auto& rel : rels) {
                    NCPoly img = cog.antipode(u, v).apply(rel);
                    if (!cog.cell(v, u)->nf(img).is_zero()) ok = false;
                }
                report.add(suite,
                           "S respects relations " + cog.cell(u, v)->name(),
                           ok, "", degree);
            }
            if (u == v) {
                bool ok = true;
                for (const auto& rel : rels)
                    if (!cog.counit_value(u, rel).is_zero()) ok = false;
                report.add(suite,
                           "eps respects relations " + cog.cell(u, u)->name(),
                           ok, "", degree);
            }
        }

    return report;
}

}  // namespace qdc
