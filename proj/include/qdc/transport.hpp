#pragma once

#include "qdc/calculus.hpp"

namespace qdc {

/// The cotensor product V box_{B(X,X)} B(X,Y), realized inside
/// V (x) {normal words of degree <= D}. The defining equalizer system is
/// solved exactly; the basis is echelonized and deterministic. A +1 probe
/// guards the truncation (DimensionUnstable).
///
/// The cogroupoid must outlive the module. Instances are not safe for
/// concurrent use (membership queries label fresh words lazily).
class CotensorModule {
public:
    CotensorModule(const Cogroupoid& cog, Comodule V, int x, int y,
                   int degree = -1);

    std::size_t dim() const { return basis_.size(); }
    int degree() const { return degree_; }
    int x() const { return x_; }
    int y() const { return y_; }
    const Cogroupoid& cogroupoid() const { return *cog_; }
    const Comodule& source() const { return source_; }
    /// basis()[r][i] is the B(X,Y)-coefficient of v_i in the r-th element.
    const std::vector<std::vector<NCPoly>>& basis() const { return basis_; }

    /// Coordinates in the cotensor basis of an element of V (x) B(X,Y)
    /// given componentwise; throws BasisEscape when outside the span.
    std::vector<Scalar> coordinates(const std::vector<NCPoly>& element) const;

    /// The transported comodule over B(Y,Y) (coaction id (x) Delta_{X,Y}^Y
    /// re-expressed in the basis).
    Comodule transported_comodule() const;

private:
    const Cogroupoid* cog_;
    Comodule source_;
    int x_, y_, degree_;
    std::vector<std::vector<NCPoly>> basis_;
    EchelonSpan span_;
    mutable std::map<Word, std::size_t> word_ids_;

    std::size_t id_for(const Word& w) const;
    std::vector<std::vector<NCPoly>> solve(int degree) const;
    SparseVec element_to_sparse(const std::vector<NCPoly>& element) const;
};

/// A YD module over B(X,X) pushed through the cotensor functor: the
/// transported comodule together with the transported action matrices of
/// every generator of B(Y,Y).
struct TransportedYD {
    CotensorModule cot;
    YDModuleRef module;  // over B(Y,Y)
};

TransportedYD transport_yd(const Cogroupoid& cog, const YDModule& V, int x,
                           int y, int degree = -1);

struct CalculusTransport {
    ReducedCalculus eta;  // inner, with coinvariant theta (x) 1
    Report checks;        // relation annihilation, omega-bar cross-check,
                          // Leibniz/equivariance/surjectivity
};

/// Transports an inner calculus along the cotensor functor into the given
/// transported module (which must come from calc's module).
CalculusTransport transport_calculus(const ReducedCalculus& calc,
                                     const TransportedYD& target,
                                     SurjectivityOptions options = {});

struct TransportJob {
    TransportedYD tyd;
    ReducedCalculus eta;
    Report checks;
};

/// Convenience: builds the transported module and the calculus on it.
TransportJob transport_calculus(const Cogroupoid& cog,
                                const ReducedCalculus& calc, int x, int y,
                                int degree = -1,
                                SurjectivityOptions options = {});

/// Cotensor dimensions of the spin comodules V_0..V_kmax along (x -> y);
/// the fusion recursion d_{k+1} = m d_k - d_{k-1} is this sequence's oracle.
std::vector<std::size_t> cotensor_spin_dims(const Cogroupoid& cog, int kmax);

/// Computes the double cotensor, the comparison map theta_V, and verifies it
/// is a YD isomorphism; when a calculus is supplied, also checks
/// theta_V omega = omega-bar-bar on generators.
Report roundtrip_check(const Cogroupoid& cog, const YDModule& V,
                       const ReducedCalculus* calc = nullptr,
                       int degree = -1);

}  // namespace qdc
