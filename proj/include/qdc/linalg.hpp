#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qdc/scalar.hpp"

namespace qdc {

/// Dense matrix over Scalar.
class ScalMatrix {
public:
    ScalMatrix(Field f, std::size_t rows, std::size_t cols);
    static ScalMatrix identity(Field f, std::size_t n);
    static ScalMatrix from_rows(Field f,
                                std::vector<std::vector<Scalar>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Field& field() const { return field_; }
    Scalar& at(std::size_t i, std::size_t j);
    const Scalar& at(std::size_t i, std::size_t j) const;

    ScalMatrix operator*(const ScalMatrix&) const;
    ScalMatrix operator+(const ScalMatrix&) const;
    ScalMatrix operator-(const ScalMatrix&) const;
    ScalMatrix scaled(const Scalar&) const;
    ScalMatrix transpose() const;
    Scalar trace() const;
    bool is_zero() const;
    bool operator==(const ScalMatrix&) const;

    Scalar det() const;
    /// Exact inverse; throws SingularMatrix.
    ScalMatrix inverse() const;

    std::string to_string() const;

private:
    Field field_;
    std::size_t rows_, cols_;
    std::vector<Scalar> a_;
};

/// Row vector times matrix (the action convention for modules).
std::vector<Scalar> row_times(const std::vector<Scalar>& v, const ScalMatrix& m);

using SparseVec = std::map<std::size_t, Scalar>;

/// Canonical reduced-row-echelon elimination over the exact field. The
/// echelon form of a row span is unique, so results do not depend on
/// processing order.
class Rref {
public:
    explicit Rref(Field f) : field_(f) {}
    void add_row(SparseVec row);
    std::size_t rank() const { return rows_.size(); }
    /// Columns seen so far come from the caller; pass the total count.
    std::vector<std::vector<Scalar>> nullspace(std::size_t ncols) const;
    const std::map<std::size_t, std::size_t>& pivots() const { return pivots_; }
    const std::vector<SparseVec>& rows() const { return rows_; }

private:
    Field field_;
    std::vector<SparseVec> rows_;               // pivot-normalized, inter-reduced
    std::map<std::size_t, std::size_t> pivots_;  // pivot column -> row index
};

/// Nullspace basis of the sparse system rows (each row = one equation,
/// coordinates x_0..x_{ncols-1}). Basis vectors are canonical and normalized
/// so that their first nonzero coordinate is 1.
std::vector<std::vector<Scalar>> nullspace(const Field& f,
                                           const std::vector<SparseVec>& rows,
                                           std::size_t ncols);

/// Solves A x = b exactly; returns the particular solution with all free
/// variables set to zero, or nullopt when inconsistent.
std::optional<std::vector<Scalar>> solve_affine(
    const Field& f, const std::vector<SparseVec>& rows,
    const std::vector<Scalar>& rhs, std::size_t ncols);

/// Incremental echelon span with optional tracking of how each member is
/// expressed in the inserted vectors (used for basis coordinates).
class EchelonSpan {
public:
    explicit EchelonSpan(Field f, bool track_combos = false)
        : field_(f), track_(track_combos) {}

    /// Returns true when v was independent of the current span.
    bool insert(const SparseVec& v);
    std::size_t rank() const { return rows_.size(); }
    bool contains(const SparseVec& v) const;
    /// Coordinates of v over the independent inserted vectors, or nullopt if
    /// v is outside the span. Requires track_combos.
    std::optional<std::vector<Scalar>> coordinates(const SparseVec& v) const;

private:
    struct Row {
        SparseVec v;  // min coordinate = pivot, pivot value = 1
        std::vector<Scalar> combo;
    };
    Field field_;
    bool track_;
    std::vector<Row> rows_;
    std::map<std::size_t, std::size_t> by_pivot_;
};

}  // namespace qdc
