#include "qdc/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace qdc {

// ---------------------------------------------------------------------------
// ScalMatrix

ScalMatrix::ScalMatrix(Field f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), a_(rows * cols, f.zero()) {}

ScalMatrix ScalMatrix::identity(Field f, std::size_t n) {
    ScalMatrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
}

ScalMatrix ScalMatrix::from_rows(Field f,
                                 std::vector<std::vector<Scalar>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.front().size();
    ScalMatrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw Error("ragged matrix rows");
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

Scalar& ScalMatrix::at(std::size_t i, std::size_t j) {
    if (i >= rows_ || j >= cols_) throw Error("matrix index out of range");
    return a_[i * cols_ + j];
}

const Scalar& ScalMatrix::at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw Error("matrix index out of range");
    return a_[i * cols_ + j];
}

ScalMatrix ScalMatrix::operator*(const ScalMatrix& o) const {
    if (cols_ != o.rows_) throw Error("matrix shape mismatch");
    ScalMatrix m(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& v = at(i, k);
            if (v.is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                if (o.at(k, j).is_zero()) continue;
                m.at(i, j) += v * o.at(k, j);
            }
        }
    return m;
}

ScalMatrix ScalMatrix::operator+(const ScalMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw Error("matrix shape mismatch");
    ScalMatrix m = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] += o.a_[i];
    return m;
}

ScalMatrix ScalMatrix::operator-(const ScalMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw Error("matrix shape mismatch");
    ScalMatrix m = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] -= o.a_[i];
    return m;
}

ScalMatrix ScalMatrix::scaled(const Scalar& s) const {
    ScalMatrix m = *this;
    for (auto& x : m.a_) x *= s;
    return m;
}

ScalMatrix ScalMatrix::transpose() const {
    ScalMatrix m(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
}

Scalar ScalMatrix::trace() const {
    if (rows_ != cols_) throw Error("trace of non-square matrix");
    Scalar t = field_.zero();
    for (std::size_t i = 0; i < rows_; ++i) t += at(i, i);
    return t;
}

bool ScalMatrix::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

bool ScalMatrix::operator==(const ScalMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

Scalar ScalMatrix::det() const {
    if (rows_ != cols_) throw Error("determinant of non-square matrix");
    ScalMatrix m = *this;
    Scalar d = field_.one();
    for (std::size_t c = 0; c < cols_; ++c) {
        std::size_t piv = rows_;
        for (std::size_t r = c; r < rows_; ++r) {
            if (m.at(r, c).is_zero()) continue;
            if (piv == rows_ ||
                m.at(r, c).complexity() < m.at(piv, c).complexity())
                piv = r;
        }
        if (piv == rows_) return field_.zero();
        if (piv != c) {
            for (std::size_t j = 0; j < cols_; ++j)
                std::swap(m.at(piv, j), m.at(c, j));
            d = -d;
        }
        d *= m.at(c, c);
        Scalar inv = m.at(c, c).inverse();
        for (std::size_t r = c + 1; r < rows_; ++r) {
            if (m.at(r, c).is_zero()) continue;
            Scalar f = m.at(r, c) * inv;
            for (std::size_t j = c; j < cols_; ++j)
                m.at(r, j) -= f * m.at(c, j);
        }
    }
    return d;
}

ScalMatrix ScalMatrix::inverse() const {
    if (rows_ != cols_) throw Error("inverse of non-square matrix");
    ScalMatrix m = *this;
    ScalMatrix inv = identity(field_, rows_);
    for (std::size_t c = 0; c < cols_; ++c) {
        std::size_t piv = rows_;
        for (std::size_t r = c; r < rows_; ++r) {
            if (m.at(r, c).is_zero()) continue;
            if (piv == rows_ ||
                m.at(r, c).complexity() < m.at(piv, c).complexity())
                piv = r;
        }
        if (piv == rows_) throw SingularMatrix("matrix is singular");
        if (piv != c)
            for (std::size_t j = 0; j < cols_; ++j) {
                std::swap(m.at(piv, j), m.at(c, j));
                std::swap(inv.at(piv, j), inv.at(c, j));
            }
        Scalar s = m.at(c, c).inverse();
        for (std::size_t j = 0; j < cols_; ++j) {
            m.at(c, j) *= s;
            inv.at(c, j) *= s;
        }
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == c || m.at(r, c).is_zero()) continue;
            Scalar f = m.at(r, c);
            for (std::size_t j = 0; j < cols_; ++j) {
                m.at(r, j) -= f * m.at(c, j);
                inv.at(r, j) -= f * inv.at(c, j);
            }
        }
    }
    return inv;
}

std::string ScalMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i) os << "; ";
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) os << ", ";
            os << at(i, j).to_string();
        }
    }
    os << "]";
    return os.str();
}

std::vector<Scalar> row_times(const std::vector<Scalar>& v,
                              const ScalMatrix& m) {
    if (v.size() != m.rows()) throw Error("row_times shape mismatch");
    std::vector<Scalar> out(m.cols(), m.field().zero());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m.at(i, j).is_zero()) continue;
            out[j] += v[i] * m.at(i, j);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// sparse row helpers

namespace {

// w -= f * r
void axpy_sub(SparseVec& w, const Scalar& f, const SparseVec& r,
              const Field& field) {
    for (const auto& [c, v] : r) {
        auto it = w.find(c);
        Scalar nv = (it == w.end() ? field.zero() : it->second) - f * v;
        if (nv.is_zero()) {
            if (it != w.end()) w.erase(it);
        } else if (it == w.end()) {
            w.emplace(c, nv);
        } else {
            it->second = nv;
        }
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Rref

void Rref::add_row(SparseVec row) {
    // eliminate every pivot-column entry (stored rows are fully reduced, so
    // one elimination per pivot column suffices)
    for (;;) {
        if (row.empty()) return;
        auto hit = row.end();
        for (auto it = row.begin(); it != row.end(); ++it) {
            if (pivots_.count(it->first)) {
                hit = it;
                break;
            }
        }
        if (hit == row.end()) break;
        Scalar f = hit->second;
        axpy_sub(row, f, rows_[pivots_.at(hit->first)], field_);
    }
    std::size_t pc = row.begin()->first;
    Scalar inv = row.begin()->second.inverse();
    for (auto& [c, v] : row) v *= inv;
    for (auto& r : rows_) {
        auto it = r.find(pc);
        if (it == r.end()) continue;
        Scalar f = it->second;
        axpy_sub(r, f, row, field_);
    }
    pivots_.emplace(pc, rows_.size());
    rows_.push_back(std::move(row));
}

std::vector<std::vector<Scalar>> Rref::nullspace(std::size_t ncols) const {
    std::vector<std::vector<Scalar>> basis;
    for (std::size_t fc = 0; fc < ncols; ++fc) {
        if (pivots_.count(fc)) continue;
        std::vector<Scalar> x(ncols, field_.zero());
        x[fc] = field_.one();
        for (const auto& [pc, ri] : pivots_) {
            auto it = rows_[ri].find(fc);
            if (it != rows_[ri].end()) x[pc] = -it->second;
        }
        for (const auto& v : x) {
            if (v.is_zero()) continue;
            if (!v.is_one()) {
                Scalar inv = v.inverse();
                for (auto& y : x) y *= inv;
            }
            break;
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

std::vector<std::vector<Scalar>> nullspace(const Field& f,
                                           const std::vector<SparseVec>& rows,
                                           std::size_t ncols) {
    Rref r(f);
    for (const auto& row : rows) r.add_row(row);
    return r.nullspace(ncols);
}

std::optional<std::vector<Scalar>> solve_affine(
    const Field& f, const std::vector<SparseVec>& rows,
    const std::vector<Scalar>& rhs, std::size_t ncols) {
    if (rows.size() != rhs.size()) throw Error("solve_affine shape mismatch");
    Rref r(f);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        SparseVec row = rows[i];
        if (!rhs[i].is_zero()) row.emplace(ncols, rhs[i]);
        r.add_row(std::move(row));
    }
    if (r.pivots().count(ncols)) return std::nullopt;
    std::vector<Scalar> x(ncols, f.zero());
    for (const auto& [pc, ri] : r.pivots()) {
        auto it = r.rows()[ri].find(ncols);
        if (it != r.rows()[ri].end()) x[pc] = it->second;
    }
    return x;
}

// ---------------------------------------------------------------------------
// EchelonSpan

bool EchelonSpan::insert(const SparseVec& v) {
    SparseVec w = v;
    std::vector<Scalar> combo;
    if (track_) {
        combo.assign(rows_.size() + 1, field_.zero());
        combo.back() = field_.one();
    }
    while (!w.empty()) {
        auto piv = by_pivot_.find(w.begin()->first);
        if (piv == by_pivot_.end()) break;
        const Row& row = rows_[piv->second];
        Scalar f = w.begin()->second;
        axpy_sub(w, f, row.v, field_);
        if (track_)
            for (std::size_t i = 0; i < row.combo.size(); ++i)
                combo[i] -= f * row.combo[i];
    }
    if (w.empty()) return false;

    Scalar inv = w.begin()->second.inverse();
    for (auto& [c, x] : w) x *= inv;
    if (track_) {
        for (auto& x : combo) x *= inv;
        for (auto& row : rows_) row.combo.resize(combo.size(), field_.zero());
    }
    by_pivot_.emplace(w.begin()->first, rows_.size());
    rows_.push_back(Row{std::move(w), std::move(combo)});
    return true;
}

bool EchelonSpan::contains(const SparseVec& v) const {
    SparseVec w = v;
    while (!w.empty()) {
        auto piv = by_pivot_.find(w.begin()->first);
        if (piv == by_pivot_.end()) return false;
        Scalar f = w.begin()->second;  // copy: axpy_sub erases this entry
        axpy_sub(w, f, rows_[piv->second].v, field_);
    }
    return true;
}

std::optional<std::vector<Scalar>> EchelonSpan::coordinates(
    const SparseVec& v) const {
    if (!track_) throw Error("EchelonSpan built without combo tracking");
    SparseVec w = v;
    std::vector<Scalar> coords(rows_.size(), field_.zero());
    while (!w.empty()) {
        auto piv = by_pivot_.find(w.begin()->first);
        if (piv == by_pivot_.end()) return std::nullopt;
        const Row& row = rows_[piv->second];
        Scalar f = w.begin()->second;
        axpy_sub(w, f, row.v, field_);
        for (std::size_t i = 0; i < row.combo.size() && i < coords.size(); ++i)
            coords[i] += f * row.combo[i];
    }
    return coords;
}

}  // namespace qdc
