#include "qdc/freealg.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace qdc {

bool word_lex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Word word_concat(const Word& a, const Word& b) {
    Word r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

// ---------------------------------------------------------------------------
// Alphabet

Alphabet::Alphabet(std::string label, std::vector<std::string> names,
                   Field field)
    : label_(std::move(label)), names_(std::move(names)), field_(field) {
    for (std::size_t i = 0; i < names_.size(); ++i)
        for (std::size_t j = i + 1; j < names_.size(); ++j)
            if (names_[i] == names_[j])
                throw Error("duplicate generator name: " + names_[i]);
}

Alphabet Alphabet::grid(std::string label, int rows, int cols, Field field) {
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(rows) * cols);
    for (int i = 1; i <= rows; ++i)
        for (int j = 1; j <= cols; ++j)
            names.push_back("a" + std::to_string(i) + std::to_string(j));
    return named_grid(std::move(label), std::move(names), rows, cols, field);
}

Alphabet Alphabet::named_grid(std::string label, std::vector<std::string> names,
                              int rows, int cols, Field field) {
    if (static_cast<int>(names.size()) != rows * cols)
        throw Error("grid alphabet size mismatch");
    Alphabet a(std::move(label), std::move(names), field);
    a.rows_ = rows;
    a.cols_ = cols;
    return a;
}

std::optional<GenId> Alphabet::find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<GenId>(i);
    return std::nullopt;
}

GenId Alphabet::at_grid(int i, int j) const {
    if (!has_grid() || i < 0 || i >= rows_ || j < 0 || j >= cols_)
        throw Error("grid index out of range");
    return static_cast<GenId>(i * cols_ + j);
}

std::pair<int, int> Alphabet::grid_pos(GenId g) const {
    if (!has_grid() || g >= size()) throw Error("grid position out of range");
    return {g / cols_, g % cols_};
}

bool same_alphabet(const AlphabetRef& a, const AlphabetRef& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->label() == b->label() && a->names() == b->names() &&
           a->field() == b->field();
}

// ---------------------------------------------------------------------------
// NCPoly

bool NCPoly::KeyLess::operator()(const Key& a, const Key& b) const {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] != b[i]) return word_lex_less(a[i], b[i]);
    }
    return a.size() < b.size();
}

NCPoly::NCPoly(AlphabetRef leg) : legs_{std::move(leg)} {
    if (!legs_.front()) throw Error("null alphabet");
}

NCPoly::NCPoly(std::vector<AlphabetRef> legs) : legs_(std::move(legs)) {
    if (legs_.empty()) throw Error("polynomial needs arity >= 1");
    for (const auto& l : legs_)
        if (!l) throw Error("null alphabet");
}

NCPoly NCPoly::unit(std::vector<AlphabetRef> legs) {
    NCPoly p(std::move(legs));
    Key k(p.arity());
    p.terms_.emplace(std::move(k), p.field().one());
    return p;
}

NCPoly NCPoly::constant(AlphabetRef leg, const Scalar& c) {
    NCPoly p(std::move(leg));
    if (!c.is_zero()) p.terms_.emplace(Key(1), c);
    return p;
}

NCPoly NCPoly::monomial(AlphabetRef leg, Word w, const Scalar& c) {
    NCPoly p(std::move(leg));
    if (!c.is_zero()) p.terms_.emplace(Key{std::move(w)}, c);
    return p;
}

NCPoly NCPoly::generator(AlphabetRef leg, GenId g) {
    if (g >= leg->size()) throw Error("generator index out of range");
    const Field f = leg->field();
    return monomial(std::move(leg), Word{g}, f.one());
}

int NCPoly::degree() const {
    int d = -1;
    for (const auto& [k, c] : terms_) {
        int t = 0;
        for (const auto& w : k) t += word_degree(w);
        d = std::max(d, t);
    }
    return d;
}

int NCPoly::leg_degree(std::size_t leg) const {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, word_degree(k.at(leg)));
    return d;
}

void NCPoly::add_term(const Key& k, const Scalar& c) {
    if (c.is_zero()) return;
    if (k.size() != arity()) throw Error("term arity mismatch");
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Scalar NCPoly::coeff(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? field().zero() : it->second;
}

Scalar NCPoly::constant_coeff() const { return coeff(Key(arity())); }

void NCPoly::require_compatible(const NCPoly& o) const {
    if (arity() != o.arity()) throw Error("tensor arity mismatch");
    for (std::size_t i = 0; i < legs_.size(); ++i)
        if (!same_alphabet(legs_[i], o.legs_[i]))
            throw Error("alphabet mismatch between polynomials");
}

NCPoly NCPoly::operator+(const NCPoly& o) const {
    require_compatible(o);
    NCPoly r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(k, c);
    return r;
}

NCPoly NCPoly::operator-() const {
    NCPoly r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
}

NCPoly NCPoly::operator-(const NCPoly& o) const { return *this + (-o); }

NCPoly NCPoly::operator*(const NCPoly& o) const {
    require_compatible(o);
    NCPoly r(legs_);
    for (const auto& [ka, ca] : terms_) {
        for (const auto& [kb, cb] : o.terms_) {
            Key k(arity());
            for (std::size_t i = 0; i < arity(); ++i)
                k[i] = word_concat(ka[i], kb[i]);
            r.add_term(k, ca * cb);
        }
    }
    return r;
}

NCPoly NCPoly::scaled(const Scalar& s) const {
    NCPoly r(legs_);
    if (s.is_zero()) return r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, c * s);
    return r;
}

NCPoly NCPoly::tensor(const NCPoly& o) const {
    std::vector<AlphabetRef> legs = legs_;
    legs.insert(legs.end(), o.legs_.begin(), o.legs_.end());
    NCPoly r(std::move(legs));
    for (const auto& [ka, ca] : terms_) {
        for (const auto& [kb, cb] : o.terms_) {
            Key k = ka;
            k.insert(k.end(), kb.begin(), kb.end());
            r.add_term(k, ca * cb);
        }
    }
    return r;
}

bool NCPoly::operator==(const NCPoly& o) const {
    if (arity() != o.arity()) return false;
    for (std::size_t i = 0; i < legs_.size(); ++i)
        if (!same_alphabet(legs_[i], o.legs_[i])) return false;
    return terms_ == o.terms_;
}

std::string NCPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        std::string cs = c.to_string();
        bool neg = false;
        if (cs.size() > 1 && cs[0] == '-' &&
            cs.find(" + ") == std::string::npos &&
            cs.find(" - ") == std::string::npos) {
            neg = true;
            cs = cs.substr(1);
        }
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        bool trivial_words = true;
        for (const auto& w : k)
            if (!w.empty()) trivial_words = false;
        bool wrap = cs.find(" + ") != std::string::npos ||
                    cs.find(" - ") != std::string::npos;
        if (trivial_words) {
            os << cs;
        } else {
            if (cs != "1") {
                if (wrap)
                    os << "(" << cs << ")";
                else
                    os << cs;
                os << "*";
            }
            bool first_leg = true;
            for (std::size_t i = 0; i < k.size(); ++i) {
                if (!first_leg) os << " (x) ";
                first_leg = false;
                if (k[i].empty()) {
                    os << "1";
                } else {
                    for (std::size_t j = 0; j < k[i].size(); ++j) {
                        if (j) os << " ";
                        os << legs_[i]->name(k[i][j]);
                    }
                }
            }
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// GenMorphism

NCPoly GenMorphism::apply_word(const Word& w) const {
    NCPoly acc = NCPoly::unit(targets);
    if (antimultiplicative) {
        for (auto it = w.rbegin(); it != w.rend(); ++it)
            acc = acc * images.at(*it);
    } else {
        for (GenId g : w) acc = acc * images.at(g);
    }
    return acc;
}

NCPoly GenMorphism::apply(const NCPoly& p) const {
    if (p.arity() != 1) throw Error("GenMorphism::apply expects arity 1");
    if (!same_alphabet(p.legs().front(), source))
        throw Error("GenMorphism::apply: alphabet mismatch");
    NCPoly r(targets);
    for (const auto& [k, c] : p.terms()) r = r + apply_word(k[0]).scaled(c);
    return r;
}

NCPoly apply_at(const GenMorphism& f, const NCPoly& p, std::size_t leg) {
    if (leg >= p.arity()) throw Error("apply_at: leg out of range");
    if (!same_alphabet(p.legs()[leg], f.source))
        throw Error("apply_at: alphabet mismatch");
    std::vector<AlphabetRef> legs;
    legs.reserve(p.arity() - 1 + f.targets.size());
    for (std::size_t i = 0; i < leg; ++i) legs.push_back(p.legs()[i]);
    for (const auto& t : f.targets) legs.push_back(t);
    for (std::size_t i = leg + 1; i < p.arity(); ++i) legs.push_back(p.legs()[i]);

    NCPoly r(std::move(legs));
    for (const auto& [k, c] : p.terms()) {
        NCPoly img = f.apply_word(k[leg]);
        for (const auto& [ik, ic] : img.terms()) {
            NCPoly::Key nk;
            nk.reserve(r.arity());
            for (std::size_t i = 0; i < leg; ++i) nk.push_back(k[i]);
            for (const auto& w : ik) nk.push_back(w);
            for (std::size_t i = leg + 1; i < p.arity(); ++i) nk.push_back(k[i]);
            r.add_term(nk, c * ic);
        }
    }
    return r;
}

NCPoly contract_unit_leg(const NCPoly& p, std::size_t leg) {
    if (leg >= p.arity()) throw Error("contract_unit_leg: leg out of range");
    if (p.arity() == 1) throw Error("contract_unit_leg: arity would drop to 0");
    std::vector<AlphabetRef> legs;
    for (std::size_t i = 0; i < p.arity(); ++i)
        if (i != leg) legs.push_back(p.legs()[i]);
    NCPoly r(std::move(legs));
    for (const auto& [k, c] : p.terms()) {
        if (!k[leg].empty())
            throw Error("contract_unit_leg: non-scalar entry in leg");
        NCPoly::Key nk;
        for (std::size_t i = 0; i < p.arity(); ++i)
            if (i != leg) nk.push_back(k[i]);
        r.add_term(nk, c);
    }
    return r;
}

NCPoly multiply_legs(const NCPoly& p) {
    for (std::size_t i = 1; i < p.arity(); ++i)
        if (!same_alphabet(p.legs()[i], p.legs()[0]))
            throw Error("multiply_legs: legs live over different algebras");
    NCPoly r(p.legs()[0]);
    for (const auto& [k, c] : p.terms()) {
        Word w;
        for (const auto& part : k) w.insert(w.end(), part.begin(), part.end());
        r.add_term({w}, c);
    }
    return r;
}

// ---------------------------------------------------------------------------
// polynomial parser

namespace {

class PolyParser {
public:
    PolyParser(AlphabetRef alpha, std::string_view text)
        : alpha_(std::move(alpha)), text_(text) {}

    NCPoly parse() {
        NCPoly v = expr();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("unexpected trailing input", pos_);
        return v;
    }

private:
    AlphabetRef alpha_;
    std::string_view text_;
    std::size_t pos_ = 0;

    const Field& field() const { return alpha_->field(); }

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
        bool neg = false;
        if (pos_ < text_.size() && text_[pos_] == '-') {
            neg = true;
            ++pos_;
        }
        std::string digits;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_])))
            digits += text_[pos_++];
        if (digits.empty()) throw ParseError("expected integer", pos_);
        Integer v(digits);
        return neg ? Integer(-v) : v;
    }

    long read_exponent() {
        Integer e = read_integer();
        if (e > 100000 || e < -100000)
            throw ParseError("exponent out of range", pos_);
        return static_cast<long>(e.get_si());
    }

    std::string read_ident() {
        skip_ws();
        std::string id;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '_'))
            id += text_[pos_++];
        return id;
    }

    bool ident_starts_here() {
        char c = peek();
        if (!std::isalpha(static_cast<unsigned char>(c))) return false;
        // 'q' and 's' are scalar symbols unless they begin a longer name
        if ((c == 'q' || c == 's') &&
            (pos_ + 1 >= text_.size() ||
             (!std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])) &&
              text_[pos_ + 1] != '_')))
            return false;
        return true;
    }

    static bool starts_factor_char(char c) {
        return std::isdigit(static_cast<unsigned char>(c)) || c == '(' ||
               std::isalpha(static_cast<unsigned char>(c));
    }

    NCPoly expr() {
        NCPoly v = term();
        for (;;) {
            char c = peek();
            if (c == '+') {
                ++pos_;
                v = v + term();
            } else if (c == '-') {
                ++pos_;
                v = v - term();
            } else {
                return v;
            }
        }
    }

    NCPoly term() {
        NCPoly v = factor();
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                v = v * factor();
            } else if (starts_factor_char(c)) {
                v = v * factor();
            } else {
                return v;
            }
        }
    }

    NCPoly pow_nc(NCPoly base, long e) {
        if (e < 0) throw ParseError("negative power of a polynomial", pos_);
        NCPoly acc = NCPoly::unit(std::vector<AlphabetRef>{alpha_});
        for (long i = 0; i < e; ++i) acc = acc * base;
        return acc;
    }

    NCPoly factor() {
        char c = peek();
        if (c == '-') {
            ++pos_;
            return -factor();
        }
        if (c == '(') {
            ++pos_;
            NCPoly v = expr();
            if (!consume(')')) throw ParseError("expected ')'", pos_);
            if (consume('^')) {
                long e = read_exponent();
                if (e < 0) {
                    if (v.leg_degree(0) > 0)
                        throw ParseError("negative power of a polynomial", pos_);
                    Scalar s = v.constant_coeff().pow(e);
                    return NCPoly::constant(alpha_, s);
                }
                return pow_nc(v, e);
            }
            return v;
        }
        if (ident_starts_here()) {
            std::size_t start = pos_;
            std::string id = read_ident();
            auto g = alpha_->find(id);
            if (!g) throw ParseError("unknown generator '" + id + "'", start);
            NCPoly v = NCPoly::generator(alpha_, *g);
            if (consume('^')) v = pow_nc(v, read_exponent());
            return v;
        }
        if (c == 'q' || c == 's') {
            ++pos_;
            long e = consume('^') ? read_exponent() : 1;
            Scalar v = (c == 'q') ? field().q_pow(e) : field().s_pow(e);
            return NCPoly::constant(alpha_, v);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Integer n = read_integer();
            skip_ws();
            Scalar v = field().integer(n);
            if (pos_ < text_.size() && text_[pos_] == '/') {
                ++pos_;
                Integer d = read_integer();
                if (d == 0) throw ParseError("zero denominator", pos_);
                Rational r(n, d);
                r.canonicalize();
                v = field().rational(r);
            }
            if (consume('^')) v = v.pow(read_exponent());
            return NCPoly::constant(alpha_, v);
        }
        throw ParseError("expected factor", pos_);
    }
};

}  // namespace

NCPoly parse_poly(const AlphabetRef& alpha, std::string_view text) {
    return PolyParser(alpha, text).parse();
}

}  // namespace qdc
