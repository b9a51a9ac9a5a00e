#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qdc/scalar.hpp"

namespace qdc {

using GenId = std::uint16_t;
/// A monomial of the free algebra: a finite sequence of generator indices.
using Word = std::vector<GenId>;

inline int word_degree(const Word& w) { return static_cast<int>(w.size()); }

/// Degree-first, then lexicographic by raw generator index. This is the
/// storage order of polynomials, independent of any rewriting order.
bool word_lex_less(const Word& a, const Word& b);

Word word_concat(const Word& a, const Word& b);

/// Ordered generator names of one free algebra; cogroupoid cells carry a
/// grid shape so that a_ij <-> (i, j).
class Alphabet {
public:
    Alphabet(std::string label, std::vector<std::string> names, Field field);
    /// Grid alphabet with names a11, a12, ..., row-major.
    static Alphabet grid(std::string label, int rows, int cols, Field field);
    /// Named grid (used for the a,b,c,d presentation of the diagonal cell).
    static Alphabet named_grid(std::string label, std::vector<std::string> names,
                               int rows, int cols, Field field);

    const std::string& label() const { return label_; }
    std::size_t size() const { return names_.size(); }
    const std::string& name(GenId g) const { return names_.at(g); }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<GenId> find(std::string_view name) const;
    const Field& field() const { return field_; }

    bool has_grid() const { return rows_ > 0; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    GenId at_grid(int i, int j) const;
    std::pair<int, int> grid_pos(GenId g) const;

private:
    std::string label_;
    std::vector<std::string> names_;
    Field field_;
    int rows_ = 0, cols_ = 0;
};

using AlphabetRef = std::shared_ptr<const Alphabet>;

bool same_alphabet(const AlphabetRef& a, const AlphabetRef& b);

/// Finitely supported Word -> Scalar map, or for tensor arity t > 1 a map
/// from t-tuples of Words (elements of A_1 (x) ... (x) A_t). No zero
/// coefficients are stored.
class NCPoly {
public:
    using Key = std::vector<Word>;
    struct KeyLess {
        bool operator()(const Key& a, const Key& b) const;
    };
    using TermMap = std::map<Key, Scalar, KeyLess>;

    explicit NCPoly(AlphabetRef leg);
    explicit NCPoly(std::vector<AlphabetRef> legs);

    static NCPoly unit(std::vector<AlphabetRef> legs);
    static NCPoly constant(AlphabetRef leg, const Scalar& c);
    static NCPoly monomial(AlphabetRef leg, Word w, const Scalar& c);
    static NCPoly generator(AlphabetRef leg, GenId g);

    std::size_t arity() const { return legs_.size(); }
    const std::vector<AlphabetRef>& legs() const { return legs_; }
    const Field& field() const { return legs_.front()->field(); }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    /// Max over terms of the total degree (all legs); -1 for zero.
    int degree() const;
    int leg_degree(std::size_t leg) const;

    void add_term(const Key& k, const Scalar& c);
    Scalar coeff(const Key& k) const;
    /// Coefficient of the all-empty-words key.
    Scalar constant_coeff() const;

    NCPoly operator+(const NCPoly&) const;
    NCPoly operator-(const NCPoly&) const;
    NCPoly operator-() const;
    /// Componentwise concatenation product, bilinear.
    NCPoly operator*(const NCPoly&) const;
    NCPoly scaled(const Scalar&) const;
    /// Tensor product: arities add.
    NCPoly tensor(const NCPoly&) const;

    bool operator==(const NCPoly&) const;
    bool operator!=(const NCPoly& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    std::vector<AlphabetRef> legs_;
    TermMap terms_;
    void require_compatible(const NCPoly&) const;
};

/// An algebra morphism (or antimorphism) given on generators. Images live in
/// a tensor product of target algebras; application extends multiplicatively
/// (reversed per-word for antimultiplicative maps) and linearly.
struct GenMorphism {
    std::string name;
    AlphabetRef source;
    std::vector<AlphabetRef> targets;
    std::vector<NCPoly> images;  // one per source generator
    bool antimultiplicative = false;

    NCPoly apply_word(const Word& w) const;
    /// p must be arity 1 over source.
    NCPoly apply(const NCPoly& p) const;
};

/// Applies f to one tensor leg; the target legs are spliced in place of it.
NCPoly apply_at(const GenMorphism& f, const NCPoly& p, std::size_t leg);

/// Drops a tensor leg whose words are all empty (e.g. after applying a
/// counit); throws if some term has a non-trivial word there.
NCPoly contract_unit_leg(const NCPoly& p, std::size_t leg);

/// Multiplies all legs together left to right. Every leg must live over the
/// same algebra; the result has arity 1.
NCPoly multiply_legs(const NCPoly& p);

/// Parses "scalar-grammar coefficients + generator names" into an arity-1
/// polynomial, e.g. "a d - q^-1 b c - 1".
NCPoly parse_poly(const AlphabetRef& alpha, std::string_view text);

}  // namespace qdc
