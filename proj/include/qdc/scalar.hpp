#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qdc/errors.hpp"

namespace qdc {

using Integer = mpz_class;
using Rational = mpq_class;

/// Dense univariate polynomial over Z in the half-power generator s.
/// Kept free of trailing zero coefficients; the zero polynomial is empty.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(const Integer& constant);
    explicit IntPoly(long constant) : IntPoly(Integer(constant)) {}
    static IntPoly monomial(const Integer& c, std::size_t deg);

    bool is_zero() const { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const Integer& lc() const;
    Integer coeff(std::size_t i) const;
    bool is_constant() const { return c_.size() <= 1; }
    /// True when the polynomial is c*s^k for a single k.
    bool is_monomial() const;

    IntPoly operator-() const;
    IntPoly operator+(const IntPoly&) const;
    IntPoly operator-(const IntPoly&) const;
    IntPoly operator*(const IntPoly&) const;
    IntPoly mul_scalar(const Integer&) const;
    IntPoly shifted(std::size_t k) const;  // * s^k

    /// gcd of all coefficients, with the sign of the leading coefficient.
    Integer content() const;
    IntPoly divexact_scalar(const Integer&) const;
    /// Exact polynomial division; throws Error if not exact.
    IntPoly divexact(const IntPoly&) const;

    /// Positive-leading-coefficient gcd (contents included).
    static IntPoly gcd(IntPoly a, IntPoly b);

    std::size_t max_coeff_bits() const;

    bool operator==(const IntPoly&) const = default;

private:
    std::vector<Integer> c_;
    void trim();
};

enum class FieldMode { Symbolic, Quadratic };

class Field;

/// One exact coefficient: either a reduced fraction of polynomials in s
/// (with q = s^2), or x0 + x1*q over Q with q^2 = -tau*q - 1.
/// Values are immutable; all operations are pure.
class Scalar {
public:
    struct SymbolicRep {
        IntPoly num;
        IntPoly den;  // positive leading coefficient, gcd(num, den) = 1
        bool operator==(const SymbolicRep&) const = default;
    };
    struct QuadraticRep {
        Rational x0, x1;
        Rational tau;
        bool operator==(const QuadraticRep&) const = default;
    };

    /// Default constructs the symbolic zero; prefer Field factories.
    Scalar();

    FieldMode mode() const;
    bool is_zero() const;
    bool is_one() const;
    /// True if the value lies in Q.
    bool is_rational() const;
    Rational as_rational() const;

    Scalar operator+(const Scalar&) const;
    Scalar operator-(const Scalar&) const;
    Scalar operator*(const Scalar&) const;
    Scalar operator/(const Scalar&) const;
    Scalar operator-() const;
    Scalar inverse() const;
    Scalar pow(long e) const;

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    bool operator==(const Scalar&) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// Size proxy used for pivot selection in exact elimination.
    std::size_t complexity() const;

    /// Printed in the scalar expression grammar (re-parseable).
    std::string to_string() const;

    friend class Field;

private:
    static Scalar make_symbolic(IntPoly num, IntPoly den);
    static Scalar make_quadratic(Rational x0, Rational x1, Rational tau);
    const SymbolicRep& sym() const;
    const QuadraticRep& quad() const;
    void require_same_mode(const Scalar&) const;

    std::variant<SymbolicRep, QuadraticRep> rep_;
};

std::ostream& operator<<(std::ostream&, const Scalar&);

/// Coefficient field configuration. Symbolic: Q(s) with q = s^2.
/// Quadratic: Q(q) with q^2 + tau*q + 1 = 0 for a fixed admissible tau.
class Field {
public:
    static Field symbolic();
    /// Throws RootOfUnity for tau in {-2,-1,0,1,2}.
    static Field quadratic(const Rational& tau);

    FieldMode mode() const { return mode_; }
    const Rational& tau() const;
    bool operator==(const Field&) const;
    bool operator!=(const Field& o) const { return !(*this == o); }

    Scalar zero() const;
    Scalar one() const;
    Scalar integer(long v) const;
    Scalar integer(const Integer& v) const;
    Scalar rational(const Rational& v) const;
    /// q^e for any integer e.
    Scalar q_pow(long e) const;
    /// s^e; quadratic mode accepts even e only (s^e = q^(e/2)).
    Scalar s_pow(long e) const;

    /// [k]_q = (q^k - q^-k)/(q - q^-1); [0]_q = 0.
    Scalar q_int(long k) const;
    /// [k]_q! with [0]_q! = 1.
    Scalar q_factorial(long k) const;
    /// q^{k(n-k)} [n]_q! / ([n-k]_q! [k]_q!); out-of-range arguments give 0.
    Scalar q_binomial(long n, long k) const;

    /// Parses the scalar expression grammar. Throws ParseError /
    /// HalfPowerUnsupported.
    Scalar parse(std::string_view text) const;

    std::string describe() const;

private:
    Field(FieldMode m, Rational tau) : mode_(m), tau_(std::move(tau)) {}
    FieldMode mode_;
    Rational tau_;
};

}  // namespace qdc
