#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>

#include "qdc/linalg.hpp"
#include "qdc/report.hpp"
#include "qdc/rewrite.hpp"

namespace qdc {

/// One cell B(E, F) of the bilinear cogroupoid: the universal algebra on an
/// m x n generator grid a_ij subject to F^-1 a^t E a = I_n and
/// a F^-1 a^t E = I_m, carried together with its truncated rewriting system
/// and its defining relation entries.
class Cell {
public:
    Cell(std::string name, ScalMatrix E, ScalMatrix F, AlphabetRef alphabet,
         RewriteSystem system, std::vector<NCPoly> relations);

    const std::string& name() const { return name_; }
    const ScalMatrix& source_matrix() const { return E_; }
    const ScalMatrix& target_matrix() const { return F_; }
    const AlphabetRef& alphabet() const { return alphabet_; }
    const RewriteSystem& system() const { return system_; }
    const std::vector<NCPoly>& relations() const { return relations_; }
    const Field& field() const { return alphabet_->field(); }
    bool diagonal() const { return E_ == F_; }
    int completed_degree() const { return system_.completed_degree(); }

    NCPoly nf(const NCPoly& p) const { return system_.normal_form(p); }
    NCPoly gen(int i, int j) const;
    NCPoly one() const { return NCPoly::unit({alphabet_}); }

private:
    std::string name_;
    ScalMatrix E_, F_;
    AlphabetRef alphabet_;
    RewriteSystem system_;
    std::vector<NCPoly> relations_;
};

using CellRef = std::shared_ptr<const Cell>;

/// E_q = [[0, 1], [-q^-1, 0]]; B(E_q) is the quantum SL_2 algebra.
ScalMatrix eq_matrix(const Field& f);

/// The defining relation entries of B(E, F) as polynomials over the grid.
std::vector<NCPoly> cell_relations(const ScalMatrix& E, const ScalMatrix& F,
                                   const AlphabetRef& alphabet);

/// Completes the relations of B(E, F) to the given degree. Throws
/// SingularMatrix, TraceMismatch, or CoefficientBlowup. Precedence defaults
/// to row-major generator order.
CellRef make_cell(const std::string& name, const ScalMatrix& E,
                  const ScalMatrix& F, int degree,
                  CompletionOptions options = {});

/// The canonical O_q(SL_2) cell: generators a, b, c, d with precedence
/// b < c < a < d, completed from the classical presentation. Its rewriting
/// system has exactly 7 rules and PBW normal words.
CellRef oq_sl2_cell(const Field& f, int degree);

/// Structural maps of a diagonal (Hopf) cell, built on demand.
GenMorphism diagonal_coproduct(const CellRef& cell);
GenMorphism diagonal_counit(const CellRef& cell);
GenMorphism diagonal_antipode(const CellRef& cell);
/// eps evaluated to a scalar on an arity-1 polynomial over the cell.
Scalar counit_scalar(const CellRef& cell, const NCPoly& p);

struct FieldConfig {
    FieldMode mode;
    Rational tau;  // meaningful in quadratic mode
};

/// Computes tr(E^-1 E^t) and verifies it equals -q - q^-1 in E's field
/// (throws TraceMismatch otherwise). RootOfUnity admissibility is enforced
/// when quadratic fields are constructed.
FieldConfig solve_q(const ScalMatrix& E);

/// Builds the quadratic field whose tau is the trace invariant of a rational
/// matrix. Throws RootOfUnity for inadmissible traces.
Field quadratic_field_from_trace(const std::vector<std::vector<Rational>>& rows);

struct MatrixInput {
    Field field;
    ScalMatrix matrix;
    std::string description;
};

/// Reads {"field": {"mode": ...}, "rows": [[expr, ...], ...]}; entries use
/// the scalar grammar. Trace admissibility is checked on load.
MatrixInput load_matrix_json(const std::string& json_text);
MatrixInput load_matrix_file(const std::string& path);

struct PairDegrees {
    int xx, xy, yx, yy;
    PairDegrees(int uniform) : xx(uniform), xy(uniform), yx(uniform), yy(uniform) {}
    PairDegrees(int xx_, int xy_, int yx_, int yy_)
        : xx(xx_), xy(xy_), yx(yx_), yy(yy_) {}
};

/// The cells over an object pair {X, Y} with all structural maps cached:
/// object 0 is X = E_q (the O_q(SL_2) side), object 1 is Y = E. Immutable
/// after construction; safe to share across threads.
class Cogroupoid {
public:
    /// Single-object Hopf case (X = Y = E_q).
    static Cogroupoid hopf(CellRef diagonal);
    static Cogroupoid over_pair(const Field& f, const ScalMatrix& E,
                                PairDegrees degrees,
                                CompletionOptions options = {});

    std::size_t object_count() const { return nobj_; }
    const ScalMatrix& object_matrix(int u) const;
    const CellRef& cell(int u, int v) const;
    /// Delta_{u,v}^z : B(u,v) -> B(u,z) (x) B(z,v)
    const GenMorphism& delta(int u, int v, int z) const;
    /// eps_u as an endomorphism with constant images.
    const GenMorphism& counit(int u) const;
    /// S_{u,v} : B(u,v) -> B(v,u), antimultiplicative.
    const GenMorphism& antipode(int u, int v) const;
    /// eps_u evaluated to a scalar.
    Scalar counit_value(int u, const NCPoly& p) const;

    /// Legwise normal form; each leg is matched to its owning cell.
    NCPoly nf_tensor(const NCPoly& p) const;
    const RewriteSystem* system_for(const AlphabetRef& alpha) const;

private:
    Cogroupoid() = default;
    std::size_t nobj_ = 0;
    std::vector<ScalMatrix> objects_;
    std::array<std::array<CellRef, 2>, 2> cells_;
    std::map<std::array<int, 3>, GenMorphism> deltas_;
    std::array<std::optional<GenMorphism>, 2> counits_;
    std::array<std::array<std::optional<GenMorphism>, 2>, 2> antipodes_;
    void build_maps();
};

/// Machine verification of the cocategory and cogroupoid axioms on all
/// generators, plus relation preservation under Delta, eps, S. Failures are
/// report entries, never exceptions.
Report verify_cogroupoid_axioms(const Cogroupoid& cog, int degree);

}  // namespace qdc
