#pragma once

#include <functional>
#include <optional>

#include "qdc/yd.hpp"

namespace qdc {

struct SurjectivityOptions {
    /// Hard cap on the saturation degree; -1 derives 2n+4 from the parts (or
    /// dim+4 when unknown), clamped to the completed degree of the cell.
    int max_degree = -1;
    /// Stop early after this many consecutive degrees without rank growth.
    int stable_window = 2;
};

struct RankCertificate {
    std::size_t rank = 0;
    int degree_used = 0;
};

/// A reduced differential calculus: a YD module V with a surjective twisted
/// derivation omega. Values on generators are always tabulated; theta is
/// kept when the calculus is inner (omega(x) = theta.x - eps(x) theta).
struct ReducedCalculus {
    YDModuleRef module;
    std::optional<std::vector<Scalar>> theta;
    std::vector<std::vector<Scalar>> table;  // omega(g) per generator
    RankCertificate cert;
    std::vector<std::pair<int, int>> parts;  // (n, eps) descriptors when known
    std::string label;

    std::size_t dim() const { return module->dim(); }
    const CellRef& cell() const { return module->cell(); }

    /// omega on a word, via the twisted Leibniz fold.
    std::vector<Scalar> omega_word(const Word& w) const;
    /// Linear extension to polynomials (constant terms contribute nothing).
    std::vector<Scalar> omega(const NCPoly& p) const;
    /// Direct evaluation theta.p - eps(p) theta; inner form only.
    std::vector<Scalar> omega_inner(const NCPoly& p) const;
};

/// omega(x) = theta.x - eps(x) theta for a nonzero coinvariant theta.
/// Surjectivity is certified by rank saturation over normal words of
/// increasing degree; throws NotCoinvariant / NotSurjective.
ReducedCalculus inner_calculus(YDModuleRef module, std::vector<Scalar> theta,
                               SurjectivityOptions options = {});

/// General (table) form: omega given on generators, extended by the twisted
/// Leibniz rule. Well-definedness on the relations is required and checked.
ReducedCalculus table_calculus(YDModuleRef module,
                               std::vector<std::vector<Scalar>> values,
                               SurjectivityOptions options = {});

/// Componentwise omega on the direct sum; succeeds iff the parts are
/// pairwise non-isomorphic as YD modules (NotSurjective identifies the
/// offending pair otherwise).
ReducedCalculus direct_sum(const std::vector<ReducedCalculus>& parts,
                           SurjectivityOptions options = {});

struct SplitResult {
    YDModule extension;   // V_omega on V + C
    Report verification;  // YD axioms of the extension
    std::vector<Scalar> theta;  // r(0, 1)
};

/// Builds V_omega, verifies it, and solves for a YD retraction r with
/// r j = id. Returns the recovered coinvariant; throws NotInner when the
/// short exact sequence does not split.
SplitResult extension_and_split(const ReducedCalculus& calc);

/// Elements of H (x) V: one H-coefficient per basis vector of V.
using HVElement = std::vector<NCPoly>;

bool hv_is_zero(const HVElement& e);
/// The vector v when the element is 1 (x) v; nullopt otherwise.
std::optional<std::vector<Scalar>> hv_constant_part(const HVElement& e);
/// x.(y (x) v) = xy (x) v
HVElement hv_left_mult(const NCPoly& x, const HVElement& e);
/// (y (x) v).z = sum y z_(1) (x) v.z_(2)
HVElement hv_right_mult(const HVElement& e, const NCPoly& z,
                        const YDModule& V);

/// d_omega(x) = sum x_(1) (x) omega(x_(2)), an element of H (x) V.
HVElement d_from_omega(const ReducedCalculus& calc, const NCPoly& x);
/// omega_d(x) = sum S(x_(1)) d(x_(2)) for a differential d given on words.
HVElement omega_from_d(const YDModule& V,
                       const std::function<HVElement(const Word&)>& d,
                       const NCPoly& x);

/// Leibniz, equivariance, and surjectivity checks as report entries.
Report verify_calculus(const ReducedCalculus& calc,
                       const std::string& suite = "calculus");

struct ClassifiedCalculus {
    std::vector<std::pair<int, int>> parts;  // multiplicity-free (n, eps) set
    std::size_t dim = 0;
    std::optional<ReducedCalculus> calc;     // absent for the zero calculus
    RankCertificate cert;
    bool verified = false;
};

/// Enumerates all multiplicity-free subsets of {(n, eps) != (0, +1)} of total
/// dimension <= max_dim, constructs and verifies each direct-sum calculus.
/// Simples come first (by n, then +1 before -1), then sums by size and
/// lexicographic order. The zero calculus is included only on request.
std::vector<ClassifiedCalculus> classify(const CellRef& oq, int max_dim,
                                         bool include_zero = false);

}  // namespace qdc
