#pragma once

#include <valent/numeric.hpp>
#include <valent/polynomial.hpp>
#include <valent/valuation.hpp>

#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace valent {

enum class FieldKind { PAdic, Puiseux };

/// Which concrete valued field we compute in:
///   - PAdic:   Q with the p-adic valuation (dense in Q_p), value group Z,
///              uniformizer p, residue cardinality q = p.
///   - Puiseux: ramified rational functions Q(t^{1/N}) with the order-at-zero
///              valuation (dense in Puiseux series), value group Q,
///              uniformizer t.
/// Everything downstream depends only on valuations of finitely many field
/// operations on the inputs, which are exact in these dense subfields.
class FieldDescriptor {
public:
    static FieldDescriptor padic(long p) {
        if (!is_prime(p)) throw std::invalid_argument("p must be prime, got " + std::to_string(p));
        return FieldDescriptor(FieldKind::PAdic, p);
    }
    static FieldDescriptor puiseux() { return FieldDescriptor(FieldKind::Puiseux, 0); }

    FieldKind kind() const { return kind_; }
    bool is_padic() const { return kind_ == FieldKind::PAdic; }
    bool is_puiseux() const { return kind_ == FieldKind::Puiseux; }

    long p() const {
        if (!is_padic()) throw std::domain_error("no prime attached to the Puiseux-type field");
        return p_;
    }
    /// Residue cardinality driving probabilities (q = p); only p-adic mode
    /// carries a probability measure.
    long q() const { return p(); }

    friend bool operator==(const FieldDescriptor& a, const FieldDescriptor& b) {
        return a.kind_ == b.kind_ && a.p_ == b.p_;
    }
    friend bool operator!=(const FieldDescriptor& a, const FieldDescriptor& b) { return !(a == b); }

private:
    FieldDescriptor(FieldKind kind, long p) : kind_(kind), p_(p) {}
    FieldKind kind_;
    long p_;
};

/// Element of Q(t^{1/ram}): num(s)/den(s) where s = t^{1/ram}.
/// Canonical form: zero is (0, 1, ram 1); otherwise gcd(num, den) = 1, the
/// lowest nonzero coefficient of den is 1, and ram is minimal (no common
/// divisor of ram and all appearing exponents). Canonical form makes
/// structural equality coincide with field equality.
class RationalFunction {
public:
    RationalFunction() : num_(), den_(Rat(1)), ram_(1) {}
    RationalFunction(Poly num, Poly den, long ram) : num_(std::move(num)), den_(std::move(den)), ram_(ram) {
        if (den_.is_zero()) throw std::domain_error("division by zero");
        canonicalize();
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    long ram() const { return ram_; }

    bool is_zero() const { return num_.is_zero(); }

    Val valuation() const {
        if (is_zero()) return Val::infinity();
        Rat v(num_.ord() - den_.ord(), ram_);
        v.canonicalize();
        return Val(v);
    }

    static RationalFunction add(const RationalFunction& x, const RationalFunction& y) {
        auto [a, b, m] = aligned(x, y);
        return RationalFunction(a.num() * b.den() + b.num() * a.den(), a.den() * b.den(), m);
    }
    static RationalFunction sub(const RationalFunction& x, const RationalFunction& y) {
        auto [a, b, m] = aligned(x, y);
        return RationalFunction(a.num() * b.den() - b.num() * a.den(), a.den() * b.den(), m);
    }
    static RationalFunction mul(const RationalFunction& x, const RationalFunction& y) {
        auto [a, b, m] = aligned(x, y);
        return RationalFunction(a.num() * b.num(), a.den() * b.den(), m);
    }
    static RationalFunction div(const RationalFunction& x, const RationalFunction& y) {
        if (y.is_zero()) throw std::domain_error("division by zero");
        auto [a, b, m] = aligned(x, y);
        return RationalFunction(a.num() * b.den(), a.den() * b.num(), m);
    }
    RationalFunction negated() const {
        RationalFunction r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.ram_ == b.ram_ && a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    /// Terms of a polynomial payload as (coefficient, exponent-in-t) pairs.
    static std::vector<std::pair<Rat, Rat>> terms(const Poly& p, long ram) {
        std::vector<std::pair<Rat, Rat>> out;
        for (int k = 0; k <= p.degree(); ++k) {
            if (p.coeff(k) == 0) continue;
            Rat e(k, ram);
            e.canonicalize();
            out.emplace_back(p.coeff(k), e);
        }
        return out;
    }

private:
    static std::tuple<RationalFunction, RationalFunction, long> aligned(const RationalFunction& x,
                                                                        const RationalFunction& y) {
        long m = std::lcm(x.ram_, y.ram_);
        return {x.rescaled(m), y.rescaled(m), m};
    }

    RationalFunction rescaled(long m) const {  // to ramification m (multiple of ram_)
        RationalFunction r = *this;
        int f = static_cast<int>(m / ram_);
        if (f != 1) {
            r.num_ = r.num_.dilated(f);
            r.den_ = r.den_.dilated(f);
            r.ram_ = m;
        }
        return r;
    }

    void canonicalize() {
        if (num_.is_zero()) {
            den_ = Poly(Rat(1));
            ram_ = 1;
            return;
        }
        Poly g = Poly::gcd(num_, den_);
        if (g.degree() > 0) {
            Poly q, r;
            Poly::divmod(num_, g, q, r);
            num_ = q;
            Poly::divmod(den_, g, q, r);
            den_ = q;
        }
        Rat scale = den_.coeff(den_.ord());
        if (scale != 1) {
            Poly sp(scale);
            Poly q, r;
            Poly::divmod(num_, sp, q, r);
            num_ = q;
            Poly::divmod(den_, sp, q, r);
            den_ = q;
        }
        long g2 = den_.exponent_gcd(num_.exponent_gcd(ram_));
        if (g2 > 1) {
            num_ = num_.compressed(static_cast<int>(g2));
            den_ = den_.compressed(static_cast<int>(g2));
            ram_ /= g2;
        }
    }

    Poly num_, den_;
    long ram_;
};

/// Exact element of the chosen field, tagged with its descriptor so that
/// mixed-mode arithmetic is rejected rather than silently coerced.
class FieldElement {
public:
    FieldElement() : field_(FieldDescriptor::padic(2)), value_(Rat(0)) {}

    static FieldElement padic(const FieldDescriptor& f, Rat value) {
        require_kind(f, FieldKind::PAdic);
        value.canonicalize();
        return FieldElement(f, std::move(value));
    }
    static FieldElement puiseux(const FieldDescriptor& f, RationalFunction value) {
        require_kind(f, FieldKind::Puiseux);
        return FieldElement(f, std::move(value));
    }

    const FieldDescriptor& field() const { return field_; }

    const Rat& rat() const { return std::get<Rat>(value_); }
    const RationalFunction& fun() const { return std::get<RationalFunction>(value_); }

    bool is_zero() const {
        return field_.is_padic() ? rat() == 0 : fun().is_zero();
    }

    Val valuation() const {
        if (field_.is_padic()) {
            const Rat& x = rat();
            if (x == 0) return Val::infinity();
            Int p(field_.p());
            long v = int_valuation(x.get_num(), p) - int_valuation(x.get_den(), p);
            return Val(v);
        }
        return fun().valuation();
    }

    FieldElement operator+(const FieldElement& o) const {
        check_same(o);
        if (field_.is_padic()) return FieldElement(field_, Rat(rat() + o.rat()));
        return FieldElement(field_, RationalFunction::add(fun(), o.fun()));
    }
    FieldElement operator-(const FieldElement& o) const {
        check_same(o);
        if (field_.is_padic()) return FieldElement(field_, Rat(rat() - o.rat()));
        return FieldElement(field_, RationalFunction::sub(fun(), o.fun()));
    }
    FieldElement operator*(const FieldElement& o) const {
        check_same(o);
        if (field_.is_padic()) return FieldElement(field_, Rat(rat() * o.rat()));
        return FieldElement(field_, RationalFunction::mul(fun(), o.fun()));
    }
    FieldElement operator/(const FieldElement& o) const {
        check_same(o);
        if (o.is_zero()) throw std::domain_error("division by zero");
        if (field_.is_padic()) return FieldElement(field_, Rat(rat() / o.rat()));
        return FieldElement(field_, RationalFunction::div(fun(), o.fun()));
    }
    FieldElement operator-() const {
        if (field_.is_padic()) return FieldElement(field_, Rat(-rat()));
        return FieldElement(field_, fun().negated());
    }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        a.check_same(b);
        if (a.field_.is_padic()) return a.rat() == b.rat();
        return a.fun() == b.fun();
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

    std::string str() const {
        if (field_.is_padic()) return rat().get_str();
        auto part = [](const Poly& p, long ram) {
            if (p.is_zero()) return std::string("0");
            std::string s;
            for (auto& [c, e] : RationalFunction::terms(p, ram)) {
                if (!s.empty()) s += " + ";
                s += c.get_str();
                if (e != 0) s += "*t^(" + e.get_str() + ")";
            }
            return s;
        };
        const RationalFunction& f = fun();
        std::string s = part(f.num(), f.ram());
        if (f.den().degree() > 0 || f.den().coeff(0) != 1) s = "(" + s + ") / (" + part(f.den(), f.ram()) + ")";
        return s;
    }

private:
    FieldElement(FieldDescriptor f, Rat v) : field_(f), value_(std::move(v)) {}
    FieldElement(FieldDescriptor f, RationalFunction v) : field_(f), value_(std::move(v)) {}

    static void require_kind(const FieldDescriptor& f, FieldKind k) {
        if (f.kind() != k) throw std::invalid_argument("field element variant does not match the descriptor");
    }
    void check_same(const FieldElement& o) const {
        if (field_ != o.field_)
            throw std::invalid_argument("mixed-mode operands: elements belong to different fields");
    }

    FieldDescriptor field_;
    std::variant<Rat, RationalFunction> value_;
};

// -- element factories --------------------------------------------------

inline FieldElement field_zero(const FieldDescriptor& f) {
    return f.is_padic() ? FieldElement::padic(f, Rat(0)) : FieldElement::puiseux(f, RationalFunction());
}

inline FieldElement field_one(const FieldDescriptor& f) {
    return f.is_padic() ? FieldElement::padic(f, Rat(1))
                        : FieldElement::puiseux(f, RationalFunction(Poly(Rat(1)), Poly(Rat(1)), 1));
}

inline FieldElement field_from_rational(const FieldDescriptor& f, const Rat& x) {
    return f.is_padic() ? FieldElement::padic(f, x)
                        : FieldElement::puiseux(f, RationalFunction(Poly(x), Poly(Rat(1)), 1));
}

inline FieldElement field_from_integer(const FieldDescriptor& f, long n) {
    return field_from_rational(f, Rat(n));
}

/// One term c * t^e (Puiseux mode), e an arbitrary rational.
inline FieldElement puiseux_term(const FieldDescriptor& f, const Rat& c, const Rat& e) {
    if (!f.is_puiseux()) throw std::invalid_argument("t-power terms require the Puiseux-type field");
    if (c == 0) return field_zero(f);
    if (!e.get_den().fits_sint_p() || !e.get_num().fits_sint_p())
        throw std::domain_error("t-power exponent " + e.get_str() + " is out of the supported range");
    long ram = static_cast<long>(e.get_den().get_si());
    long k = static_cast<long>((Rat(e * ram)).get_num().get_si());
    if (k >= 0) return FieldElement::puiseux(f, RationalFunction(Poly::monomial(c, static_cast<int>(k)), Poly(Rat(1)), ram));
    return FieldElement::puiseux(f, RationalFunction(Poly(c), Poly::monomial(Rat(1), static_cast<int>(-k)), ram));
}

/// pi^e: p^e in p-adic mode (e must be an integer), t^e in Puiseux mode.
inline FieldElement uniformizer_pow(const FieldDescriptor& f, const Rat& e) {
    if (f.is_padic()) {
        if (!is_integer(e))
            throw std::domain_error("the value group is Z in p-adic mode; got exponent " + e.get_str());
        return FieldElement::padic(f, rat_pow(Int(f.p()), to_long(e)));
    }
    return puiseux_term(f, Rat(1), e);
}

inline FieldElement uniformizer_pow(const FieldDescriptor& f, const Val& v) {
    if (v.is_infinite()) return field_zero(f);
    return uniformizer_pow(f, v.finite());
}

// -- residue reduction ---------------------------------------------------

/// Canonical representative r of x + pi^gamma * O for arbitrary val(x) and
/// finite gamma: either r = 0 (when val(x) >= gamma) or val(r) = val(x) < gamma
/// with r the canonical truncation. p-adic: r = p^v * (unit residue in
/// [0, p^(gamma-v))); Puiseux: the series expansion of x truncated below
/// exponent gamma. Congruent inputs map to the same representative.
inline FieldElement canonical_residue(const FieldElement& x, const Rat& gamma) {
    const FieldDescriptor& f = x.field();
    Val vx = x.valuation();
    if (vx >= Val(gamma)) return field_zero(f);

    if (f.is_padic()) {
        long v = to_long(vx.finite());
        long k = to_long(gamma) - v;  // > 0
        Int p(f.p());
        Int mod = int_pow(p, static_cast<unsigned long>(k));
        Rat unit = x.rat() / rat_pow(p, v);
        Int num = unit.get_num() % mod;
        if (num < 0) num += mod;
        Int den_inv;
        if (mpz_invert(den_inv.get_mpz_t(), unit.get_den().get_mpz_t(), mod.get_mpz_t()) == 0)
            throw std::domain_error("denominator not invertible modulo p^k");
        Int r = (num * den_inv) % mod;
        return FieldElement::padic(f, Rat(r * rat_pow(p, v)));
    }

    // Puiseux: expand num/den as a Laurent series in s = t^{1/M} and truncate.
    const RationalFunction& rf = x.fun();
    long m = std::lcm(rf.ram(), static_cast<long>(gamma.get_den().get_si()));
    int dil = static_cast<int>(m / rf.ram());
    Poly num = rf.num().dilated(dil);
    Poly den = rf.den().dilated(dil);
    long gamma_s = to_long(Rat(gamma * m));
    int kn = num.ord(), kd = den.ord();
    long k = kn - kd;  // valuation in s-units, k < gamma_s here
    long count = gamma_s - k;
    std::vector<Rat> c(static_cast<std::size_t>(count), Rat(0));
    Rat lead = den.coeff(kd);
    for (long j = 0; j < count; ++j) {
        Rat acc = num.coeff(static_cast<int>(kn + j));
        for (long i = 1; i <= j; ++i) acc -= den.coeff(static_cast<int>(kd + i)) * c[static_cast<std::size_t>(j - i)];
        c[static_cast<std::size_t>(j)] = acc / lead;
    }
    Poly series;
    for (long j = 0; j < count; ++j)
        if (c[static_cast<std::size_t>(j)] != 0) series.set_coeff(static_cast<int>(j), c[static_cast<std::size_t>(j)]);
    if (series.is_zero()) return field_zero(f);
    if (k >= 0) return FieldElement::puiseux(f, RationalFunction(series.shifted(static_cast<int>(k)), Poly(Rat(1)), m));
    return FieldElement::puiseux(f, RationalFunction(series, Poly::monomial(Rat(1), static_cast<int>(-k)), m));
}

/// Reduction of x in O modulo pi^gamma * O to its canonical representative.
/// Requires val(x) >= 0 and finite gamma >= 0.
inline FieldElement residue_reduce(const FieldElement& x, const Rat& gamma) {
    if (gamma < 0) throw std::domain_error("residue_reduce: gamma must be >= 0");
    if (x.valuation() < Val(0)) throw std::domain_error("residue_reduce: element is not in the valuation ring");
    return canonical_residue(x, gamma);
}

inline FieldElement residue_reduce(const FieldElement& x, long gamma) { return residue_reduce(x, Rat(gamma)); }

}  // namespace valent
