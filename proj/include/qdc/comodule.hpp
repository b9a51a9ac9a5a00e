#pragma once

#include "qdc/cells.hpp"

namespace qdc {

/// Finite-dimensional right comodule over a diagonal cell, with the basis
/// convention rho(v_i) = sum_k v_k (x) C(k, i).
struct Comodule {
    CellRef cell;
    std::size_t dim = 0;
    std::vector<std::string> labels;
    std::vector<NCPoly> coaction;  // row-major dim x dim, entries reduced

    const NCPoly& C(std::size_t k, std::size_t i) const {
        return coaction.at(k * dim + i);
    }
    NCPoly& C(std::size_t k, std::size_t i) { return coaction.at(k * dim + i); }
    const Field& field() const { return cell->field(); }
};

/// The one-dimensional comodule with trivial coaction.
Comodule trivial_comodule(const CellRef& cell);

/// The spin-n simple comodule V_n over the quantum SL2 cell, with the
/// q^2-binomial coaction coefficients.
Comodule spin_comodule(const CellRef& oq, int n);

/// V (x) W with the product coaction.
Comodule tensor_comodule(const Comodule& V, const Comodule& W);

/// Machine check of coassociativity and the counit law, entrywise after
/// normal form.
Report verify_comodule(const Comodule& V, const std::string& suite = "comodule");

/// Basis of {theta : rho(theta) = theta (x) 1}; echelonized, first nonzero
/// coordinate normalized to 1.
std::vector<std::vector<Scalar>> coinvariants(const Comodule& V);

/// Basis of Hom(V, W): matrices T (dim W x dim V, T(v_i) = sum_a T[a][i] w_a)
/// with (T (x) id) rho_V = rho_W T.
std::vector<ScalMatrix> comodule_morphisms(const Comodule& V, const Comodule& W);

}  // namespace qdc
