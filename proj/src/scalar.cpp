#include "qdc/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>
#include <utility>

namespace qdc {

// ---------------------------------------------------------------------------
// IntPoly

IntPoly::IntPoly(const Integer& constant) {
    if (constant != 0) c_.push_back(constant);
}

IntPoly IntPoly::monomial(const Integer& c, std::size_t deg) {
    IntPoly p;
    if (c != 0) {
        p.c_.assign(deg + 1, Integer(0));
        p.c_[deg] = c;
    }
    return p;
}

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Integer& IntPoly::lc() const {
    static const Integer zero(0);
    return c_.empty() ? zero : c_.back();
}

Integer IntPoly::coeff(std::size_t i) const {
    return i < c_.size() ? c_[i] : Integer(0);
}

bool IntPoly::is_monomial() const {
    if (c_.empty()) return false;
    for (std::size_t i = 0; i + 1 < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

IntPoly IntPoly::operator-() const {
    IntPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    IntPoly r;
    r.c_.resize(std::max(c_.size(), o.c_.size()), Integer(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r.c_[i] += o.c_[i];
    r.trim();
    return r;
}

IntPoly IntPoly::operator-(const IntPoly& o) const { return *this + (-o); }

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    IntPoly r;
    r.c_.assign(c_.size() + o.c_.size() - 1, Integer(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j] == 0) continue;
            r.c_[i + j] += c_[i] * o.c_[j];
        }
    }
    r.trim();
    return r;
}

IntPoly IntPoly::mul_scalar(const Integer& k) const {
    if (k == 0) return {};
    IntPoly r = *this;
    for (auto& x : r.c_) x *= k;
    return r;
}

IntPoly IntPoly::shifted(std::size_t k) const {
    if (is_zero() || k == 0) return *this;
    IntPoly r;
    r.c_.assign(c_.size() + k, Integer(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i + k] = c_[i];
    return r;
}

Integer IntPoly::content() const {
    Integer g(0);
    for (const auto& x : c_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    if (g == 0) return Integer(0);
    if (lc() < 0) g = -g;
    return g;
}

IntPoly IntPoly::divexact_scalar(const Integer& k) const {
    IntPoly r = *this;
    for (auto& x : r.c_) {
        Integer q, rem;
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), x.get_mpz_t(), k.get_mpz_t());
        if (rem != 0) throw Error("divexact_scalar: not exact");
        x = q;
    }
    return r;
}

IntPoly IntPoly::divexact(const IntPoly& d) const {
    if (d.is_zero()) throw Error("division by zero polynomial");
    IntPoly rem = *this;
    IntPoly quot;
    if (rem.is_zero()) return quot;
    if (rem.degree() < d.degree()) throw Error("divexact: not exact");
    quot.c_.assign(rem.c_.size() - d.c_.size() + 1, Integer(0));
    while (!rem.is_zero() && rem.degree() >= d.degree()) {
        Integer q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rem.lc().get_mpz_t(),
                    d.lc().get_mpz_t());
        if (r != 0) throw Error("divexact: not exact");
        std::size_t shift = static_cast<std::size_t>(rem.degree() - d.degree());
        quot.c_[shift] = q;
        rem = rem - d.mul_scalar(q).shifted(shift);
    }
    if (!rem.is_zero()) throw Error("divexact: not exact");
    quot.trim();
    return quot;
}

namespace {
// Pseudo-remainder of a by b (deg a >= deg b assumed handled by caller).
IntPoly prem(IntPoly a, const IntPoly& b) {
    while (!a.is_zero() && a.degree() >= b.degree()) {
        std::size_t shift = static_cast<std::size_t>(a.degree() - b.degree());
        a = a.mul_scalar(b.lc()) - b.mul_scalar(a.lc()).shifted(shift);
    }
    return a;
}
}  // namespace

IntPoly IntPoly::gcd(IntPoly a, IntPoly b) {
    if (a.is_zero() && b.is_zero()) return {};
    if (a.is_zero()) std::swap(a, b);
    if (b.is_zero()) {
        if (a.lc() < 0) a = -a;
        return a;
    }
    Integer ca = a.content(), cb = b.content();
    Integer c;
    mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), ca.get_mpz_t());
    mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), cb.get_mpz_t());
    a = a.divexact_scalar(ca);
    b = b.divexact_scalar(cb);
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IntPoly r = prem(a, b);
        a = std::move(b);
        if (r.is_zero()) {
            b = IntPoly();
        } else {
            b = r.divexact_scalar(r.content());
        }
    }
    if (a.lc() < 0) a = -a;
    return a.mul_scalar(c);
}

std::size_t IntPoly::max_coeff_bits() const {
    std::size_t m = 0;
    for (const auto& x : c_) m = std::max(m, mpz_sizeinbase(x.get_mpz_t(), 2));
    return m;
}

// ---------------------------------------------------------------------------
// Scalar

Scalar::Scalar() : rep_(SymbolicRep{IntPoly(), IntPoly(Integer(1))}) {}

Scalar Scalar::make_symbolic(IntPoly num, IntPoly den) {
    if (den.is_zero()) throw Error("scalar with zero denominator");
    if (num.is_zero()) {
        den = IntPoly(Integer(1));
    } else {
        IntPoly g = IntPoly::gcd(num, den);
        if (!(g.degree() == 0 && g.lc() == 1)) {
            num = num.divexact(g);
            den = den.divexact(g);
        }
        if (den.lc() < 0) {
            num = -num;
            den = -den;
        }
    }
    Scalar s;
    s.rep_ = SymbolicRep{std::move(num), std::move(den)};
    return s;
}

Scalar Scalar::make_quadratic(Rational x0, Rational x1, Rational tau) {
    x0.canonicalize();
    x1.canonicalize();
    Scalar s;
    s.rep_ = QuadraticRep{std::move(x0), std::move(x1), std::move(tau)};
    return s;
}

FieldMode Scalar::mode() const {
    return std::holds_alternative<SymbolicRep>(rep_) ? FieldMode::Symbolic
                                                     : FieldMode::Quadratic;
}

const Scalar::SymbolicRep& Scalar::sym() const {
    return std::get<SymbolicRep>(rep_);
}
const Scalar::QuadraticRep& Scalar::quad() const {
    return std::get<QuadraticRep>(rep_);
}

void Scalar::require_same_mode(const Scalar& o) const {
    if (mode() != o.mode())
        throw Error("scalar mode mismatch (symbolic vs quadratic)");
    if (mode() == FieldMode::Quadratic && quad().tau != o.quad().tau)
        throw Error("scalar tau mismatch between quadratic fields");
}

bool Scalar::is_zero() const {
    if (mode() == FieldMode::Symbolic) return sym().num.is_zero();
    return quad().x0 == 0 && quad().x1 == 0;
}

bool Scalar::is_one() const {
    if (mode() == FieldMode::Symbolic)
        return sym().num == IntPoly(Integer(1)) && sym().den == IntPoly(Integer(1));
    return quad().x0 == 1 && quad().x1 == 0;
}

bool Scalar::is_rational() const {
    if (mode() == FieldMode::Symbolic)
        return sym().num.is_constant() && sym().den.is_constant();
    return quad().x1 == 0;
}

Rational Scalar::as_rational() const {
    if (!is_rational()) throw Error("scalar is not rational");
    if (mode() == FieldMode::Symbolic) {
        Rational r(sym().num.coeff(0), sym().den.coeff(0));
        r.canonicalize();
        return r;
    }
    return quad().x0;
}

Scalar Scalar::operator+(const Scalar& o) const {
    require_same_mode(o);
    if (mode() == FieldMode::Symbolic) {
        const auto &a = sym(), &b = o.sym();
        return make_symbolic(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    const auto &a = quad(), &b = o.quad();
    return make_quadratic(a.x0 + b.x0, a.x1 + b.x1, a.tau);
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
    if (mode() == FieldMode::Symbolic) {
        Scalar s;
        s.rep_ = SymbolicRep{-sym().num, sym().den};
        return s;
    }
    const auto& a = quad();
    return make_quadratic(-a.x0, -a.x1, a.tau);
}

Scalar Scalar::operator*(const Scalar& o) const {
    require_same_mode(o);
    if (mode() == FieldMode::Symbolic) {
        const auto &a = sym(), &b = o.sym();
        return make_symbolic(a.num * b.num, a.den * b.den);
    }
    const auto &a = quad(), &b = o.quad();
    // q^2 = -tau*q - 1
    Rational c2 = a.x1 * b.x1;
    return make_quadratic(a.x0 * b.x0 - c2,
                          a.x0 * b.x1 + a.x1 * b.x0 - a.tau * c2, a.tau);
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw Error("inverse of zero scalar");
    if (mode() == FieldMode::Symbolic) {
        return make_symbolic(sym().den, sym().num);
    }
    // (x0 + x1 q)^-1 = ((x0 - tau x1) - x1 q) / N, N = x0^2 - tau x0 x1 + x1^2
    const auto& a = quad();
    Rational n = a.x0 * a.x0 - a.tau * a.x0 * a.x1 + a.x1 * a.x1;
    if (n == 0) throw Error("inverse of zero scalar");
    return make_quadratic((a.x0 - a.tau * a.x1) / n, -a.x1 / n, a.tau);
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::pow(long e) const {
    if (e == 0) {
        if (mode() == FieldMode::Symbolic)
            return make_symbolic(IntPoly(Integer(1)), IntPoly(Integer(1)));
        return make_quadratic(Rational(1), Rational(0), quad().tau);
    }
    Scalar base = e < 0 ? inverse() : *this;
    unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    Scalar acc = base;
    --n;
    while (n > 0) {
        acc = acc * base;
        --n;
    }
    return acc;
}

bool Scalar::operator==(const Scalar& o) const {
    if (mode() != o.mode()) {
        if (is_zero() && o.is_zero()) return true;
        throw Error("scalar mode mismatch in comparison");
    }
    return rep_ == o.rep_;
}

std::size_t Scalar::complexity() const {
    if (mode() == FieldMode::Symbolic) {
        const auto& a = sym();
        return static_cast<std::size_t>(a.num.degree() + 1) +
               static_cast<std::size_t>(a.den.degree() + 1) +
               (a.num.max_coeff_bits() + a.den.max_coeff_bits()) / 16;
    }
    const auto& a = quad();
    return (a.x1 == 0 ? 0u : 2u) + (a.x0.get_num() == 0 ? 0u : 1u);
}

// ---------------------------------------------------------------------------
// printing

namespace {

std::string rational_str(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

// Sum of coef * sym^exp terms, descending by exponent.
std::string terms_to_string(std::vector<std::pair<Rational, long>> terms,
                            const char* symbol) {
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.second > b.second; });
    std::string out;
    bool first = true;
    for (const auto& [coef, exp] : terms) {
        if (coef == 0) continue;
        Rational mag = coef < 0 ? Rational(-coef) : coef;
        if (first) {
            if (coef < 0) out += "-";
            first = false;
        } else {
            out += coef < 0 ? " - " : " + ";
        }
        if (exp == 0) {
            out += rational_str(mag);
        } else {
            if (mag != 1) out += rational_str(mag) + "*";
            out += symbol;
            if (exp != 1) out += "^" + std::to_string(exp);
        }
    }
    if (out.empty()) out = "0";
    return out;
}

std::string intpoly_to_string(const IntPoly& p) {
    std::vector<std::pair<Rational, long>> terms;
    for (long i = 0; i <= p.degree(); ++i) {
        Integer c = p.coeff(static_cast<std::size_t>(i));
        if (c != 0) terms.emplace_back(Rational(c), i);
    }
    return terms_to_string(std::move(terms), "s");
}

}  // namespace

std::string Scalar::to_string() const {
    if (mode() == FieldMode::Quadratic) {
        const auto& a = quad();
        std::vector<std::pair<Rational, long>> terms{{a.x0, 0}, {a.x1, 1}};
        return terms_to_string(std::move(terms), "q");
    }
    const auto& a = sym();
    if (a.num.is_zero()) return "0";
    if (a.den.is_monomial()) {
        long shift = a.den.degree();
        Rational dc(a.den.lc());
        std::vector<std::pair<Rational, long>> terms;
        for (long i = 0; i <= a.num.degree(); ++i) {
            Integer c = a.num.coeff(static_cast<std::size_t>(i));
            if (c != 0) terms.emplace_back(Rational(c) / dc, i - shift);
        }
        return terms_to_string(std::move(terms), "s");
    }
    return "(" + intpoly_to_string(a.num) + ")*(" + intpoly_to_string(a.den) +
           ")^-1";
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
    return os << s.to_string();
}

// ---------------------------------------------------------------------------
// Field

Field Field::symbolic() { return Field(FieldMode::Symbolic, Rational(0)); }

Field Field::quadratic(const Rational& tau) {
    for (int bad : {-2, -1, 0, 1, 2}) {
        if (tau == bad)
            throw RootOfUnity("tau = " + rational_str(tau) +
                              " gives a root of unity for q^2 + tau q + 1 = 0");
    }
    return Field(FieldMode::Quadratic, tau);
}

const Rational& Field::tau() const {
    if (mode_ != FieldMode::Quadratic)
        throw Error("tau is only defined for quadratic fields");
    return tau_;
}

bool Field::operator==(const Field& o) const {
    return mode_ == o.mode_ &&
           (mode_ != FieldMode::Quadratic || tau_ == o.tau_);
}

Scalar Field::zero() const { return integer(0); }
Scalar Field::one() const { return integer(1); }

Scalar Field::integer(long v) const { return integer(Integer(v)); }

Scalar Field::integer(const Integer& v) const {
    if (mode_ == FieldMode::Symbolic)
        return Scalar::make_symbolic(IntPoly(v), IntPoly(Integer(1)));
    return Scalar::make_quadratic(Rational(v), Rational(0), tau_);
}

Scalar Field::rational(const Rational& v) const {
    if (mode_ == FieldMode::Symbolic)
        return Scalar::make_symbolic(IntPoly(Integer(v.get_num())),
                                     IntPoly(Integer(v.get_den())));
    return Scalar::make_quadratic(v, Rational(0), tau_);
}

Scalar Field::s_pow(long e) const {
    if (mode_ == FieldMode::Quadratic) {
        if (e % 2 != 0)
            throw HalfPowerUnsupported(
                "s (half-integer power of q) is unavailable in quadratic mode");
        return q_pow(e / 2);
    }
    if (e >= 0)
        return Scalar::make_symbolic(
            IntPoly::monomial(Integer(1), static_cast<std::size_t>(e)),
            IntPoly(Integer(1)));
    return Scalar::make_symbolic(
        IntPoly(Integer(1)),
        IntPoly::monomial(Integer(1), static_cast<std::size_t>(-e)));
}

Scalar Field::q_pow(long e) const {
    if (mode_ == FieldMode::Symbolic) return s_pow(2 * e);
    Scalar q = Scalar::make_quadratic(Rational(0), Rational(1), tau_);
    return q.pow(e);
}

Scalar Field::q_int(long k) const {
    if (k < 0) throw Error("q_int: negative argument");
    Scalar acc = zero();
    for (long i = 0; i < k; ++i) acc += q_pow(k - 1 - 2 * i);
    return acc;
}

Scalar Field::q_factorial(long k) const {
    if (k < 0) throw Error("q_factorial: negative argument");
    Scalar acc = one();
    for (long i = 1; i <= k; ++i) acc *= q_int(i);
    return acc;
}

Scalar Field::q_binomial(long n, long k) const {
    if (k < 0 || k > n || n < 0) return zero();
    Scalar r = q_pow(k * (n - k)) * q_factorial(n);
    return r / (q_factorial(n - k) * q_factorial(k));
}

// ---------------------------------------------------------------------------
// parser for the scalar expression grammar

namespace {

class ScalarParser {
public:
    ScalarParser(std::string_view text, const Field& field)
        : text_(text), field_(field) {}

    Scalar parse() {
        Scalar v = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return v;
    }

private:
    std::string_view text_;
    const Field& field_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, pos_);
    }

    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool consume(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Integer read_integer() {
        skip_ws();
        std::size_t start = pos_;
        bool neg = false;
        if (pos_ < text_.size() && text_[pos_] == '-') {
            neg = true;
            ++pos_;
        }
        std::string digits;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_])))
            digits += text_[pos_++];
        if (digits.empty()) {
            pos_ = start;
            fail("expected integer");
        }
        Integer v(digits);
        return neg ? Integer(-v) : v;
    }

    long read_exponent() {
        Integer e = read_integer();
        if (e > 100000 || e < -100000) fail("exponent out of range");
        return static_cast<long>(e.get_si());
    }

    Scalar expr() {
        Scalar v = term();
        for (;;) {
            char c = peek();
            if (c == '+') {
                ++pos_;
                v += term();
            } else if (c == '-') {
                ++pos_;
                v -= term();
            } else {
                return v;
            }
        }
    }

    static bool starts_factor(char c) {
        return std::isdigit(static_cast<unsigned char>(c)) || c == 's' ||
               c == 'q' || c == '(';
    }

    Scalar term() {
        Scalar v = factor();
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                v *= factor();
            } else if (starts_factor(c)) {
                v *= factor();  // juxtaposition
            } else {
                return v;
            }
        }
    }

    Scalar factor() {
        char c = peek();
        if (c == '-') {
            ++pos_;
            return -factor();
        }
        if (c == 's') {
            ++pos_;
            long e = consume('^') ? read_exponent() : 1;
            return field_.s_pow(e);
        }
        if (c == 'q') {
            ++pos_;
            long e = consume('^') ? read_exponent() : 1;
            return field_.q_pow(e);
        }
        if (c == '(') {
            ++pos_;
            Scalar v = expr();
            if (!consume(')')) fail("expected ')'");
            if (consume('^')) {
                long e = read_exponent();
                v = v.pow(e);
            }
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Integer n = read_integer();
            skip_ws();
            // rational := int ('/' int)?
            if (pos_ < text_.size() && text_[pos_] == '/') {
                ++pos_;
                Integer d = read_integer();
                if (d == 0) fail("zero denominator");
                Rational r(n, d);
                r.canonicalize();
                Scalar v = field_.rational(r);
                if (consume('^')) v = v.pow(read_exponent());
                return v;
            }
            Scalar v = field_.integer(n);
            if (consume('^')) v = v.pow(read_exponent());
            return v;
        }
        fail("expected factor");
    }
};

}  // namespace

Scalar Field::parse(std::string_view text) const {
    return ScalarParser(text, *this).parse();
}

std::string Field::describe() const {
    if (mode_ == FieldMode::Symbolic) return "symbolic";
    return "quadratic(tau=" + rational_str(tau_) + ")";
}

}  // namespace qdc
