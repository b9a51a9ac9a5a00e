#pragma once

#include <memory>

#include "qdc/comodule.hpp"

namespace qdc {

/// A Yetter-Drinfeld module: a comodule plus one action matrix per algebra
/// generator, row convention (v.x)_j = sum_i v_i M_x[i][j], so the action of
/// a word is the ordered product of generator matrices.
struct YDModule {
    Comodule com;
    std::vector<ScalMatrix> action;  // indexed by GenId

    std::size_t dim() const { return com.dim; }
    const CellRef& cell() const { return com.cell; }
    const Field& field() const { return com.field(); }

    ScalMatrix word_action(const Word& w) const;
    /// Includes the constant term as a multiple of the identity.
    ScalMatrix poly_action(const NCPoly& p) const;
    std::vector<Scalar> act(const std::vector<Scalar>& v, const Word& w) const;
};

using YDModuleRef = std::shared_ptr<const YDModule>;

/// V_{n,m}^eps: the comodule V_n (x) V_m with the sign-twisted action.
/// Quadratic fields require n + m even (all q-exponents integral).
YDModule yd_module(const CellRef& oq, int n, int m, int eps);

/// The one-dimensional module C_eps: trivial coaction, action by the counit.
YDModule c_epsilon(const CellRef& cell);

/// Direct sum with block-diagonal coaction and actions.
YDModule yd_direct_sum(const std::vector<const YDModule*>& parts);

/// Checks that (i) the defining relations act as zero, (ii) the
/// Yetter-Drinfeld compatibility holds on every basis vector and generator,
/// and (iii) optionally the same identity for all degree-2 words.
Report verify_yd(const YDModule& V, bool check_degree2 = true,
                 const std::string& suite = "yd");

/// Basis of YD-Hom(V, W): simultaneously colinear and equivariant maps.
std::vector<ScalMatrix> yd_morphisms(const YDModule& V, const YDModule& W);

}  // namespace qdc
