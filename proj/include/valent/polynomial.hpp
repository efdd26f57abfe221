#pragma once

#include <valent/numeric.hpp>

#include <numeric>
#include <stdexcept>
#include <vector>

namespace valent {

/// Dense univariate polynomial over Q, coefficients stored low degree first.
/// This is internal machinery for the ramified rational-function field; the
/// degrees that show up there are tiny, so plain schoolbook algorithms do.
class Poly {
public:
    Poly() = default;
    Poly(const Rat& constant) {
        if (constant != 0) c_.push_back(constant);
    }
    Poly(long constant) : Poly(Rat(constant)) {}

    static Poly monomial(const Rat& coeff, int degree) {
        Poly p;
        if (coeff != 0) {
            p.c_.assign(degree + 1, Rat(0));
            p.c_[degree] = coeff;
        }
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero

    /// Lowest exponent with a nonzero coefficient.
    int ord() const {
        if (is_zero()) throw std::domain_error("ord of zero polynomial");
        int k = 0;
        while (c_[k] == 0) ++k;
        return k;
    }

    Rat coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return Rat(0);
        return c_[k];
    }

    void set_coeff(int k, const Rat& v) {
        if (k >= static_cast<int>(c_.size())) c_.resize(k + 1, Rat(0));
        c_[k] = v;
        trim();
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r;
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = a.coeff(k) + b.coeff(k);
        r.trim();
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        Poly r;
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = a.coeff(k) - b.coeff(k);
        r.trim();
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        Poly r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        r.trim();
        return r;
    }
    Poly operator-() const {
        Poly r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
        if (b.is_zero()) throw std::domain_error("polynomial division by zero");
        q = Poly();
        r = a;
        const Rat lead = b.c_.back();
        while (!r.is_zero() && r.degree() >= b.degree()) {
            int shift = r.degree() - b.degree();
            Rat f = r.c_.back() / lead;
            q.set_coeff(shift, q.coeff(shift) + f);
            for (int k = 0; k <= b.degree(); ++k) r.set_coeff(k + shift, r.coeff(k + shift) - f * b.coeff(k));
        }
    }

    /// Monic gcd. Runs a primitive pseudo-remainder sequence over Z[x] to
    /// avoid the coefficient blowup of rational Euclid; powers of x are
    /// split off first so both operands have nonzero constant term.
    static Poly gcd(const Poly& a, const Poly& b) {
        if (a.is_zero()) return monic(b);
        if (b.is_zero()) return monic(a);
        int shift = std::min(a.ord(), b.ord());
        if (a.ord() == a.degree() || b.ord() == b.degree())  // monomial operand
            return monomial(Rat(1), shift);
        std::vector<Int> za = primitive_integral(a, a.ord());
        std::vector<Int> zb = primitive_integral(b, b.ord());
        if (za.size() < zb.size()) za.swap(zb);
        while (!zb.empty()) {
            std::vector<Int> r = pseudo_rem(za, zb);
            make_primitive(r);
            za = std::move(zb);
            zb = std::move(r);
        }
        Poly g;
        g.c_.assign(za.size() + shift, Rat(0));
        for (std::size_t k = 0; k < za.size(); ++k) g.c_[k + shift] = Rat(za[k]);
        return monic(g);
    }

    static Poly monic(Poly p) {
        if (!p.is_zero() && p.c_.back() != 1) {
            Rat lead = p.c_.back();
            for (auto& c : p.c_) c /= lead;
        }
        return p;
    }

    /// Multiply by x^k.
    Poly shifted(int k) const {
        if (is_zero() || k == 0) return *this;
        Poly r;
        r.c_.assign(c_.size() + k, Rat(0));
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i + k] = c_[i];
        return r;
    }

    /// Substitute x -> x^m (m >= 1).
    Poly dilated(int m) const {
        if (m == 1 || is_zero()) return *this;
        Poly r;
        r.c_.assign((c_.size() - 1) * m + 1, Rat(0));
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i * m] = c_[i];
        r.trim();
        return r;
    }

    /// Substitute x^m -> x; every nonzero exponent must be divisible by m.
    Poly compressed(int m) const {
        if (m == 1 || is_zero()) return *this;
        Poly r;
        r.c_.assign((c_.size() - 1) / m + 1, Rat(0));
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            if (i % m != 0) throw std::domain_error("exponent not divisible in compression");
            r.c_[i / m] = c_[i];
        }
        r.trim();
        return r;
    }

    /// gcd of `seed` and every exponent carrying a nonzero coefficient.
    long exponent_gcd(long seed) const {
        long g = seed;
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != 0) g = std::gcd(g, static_cast<long>(i));
        return g;
    }

    const std::vector<Rat>& coefficients() const { return c_; }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    // Coefficients from `from` on, scaled to a primitive integer vector.
    static std::vector<Int> primitive_integral(const Poly& p, int from) {
        Int lcm(1);
        for (std::size_t k = static_cast<std::size_t>(from); k < p.c_.size(); ++k)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), p.c_[k].get_den().get_mpz_t());
        std::vector<Int> z;
        z.reserve(p.c_.size() - static_cast<std::size_t>(from));
        for (std::size_t k = static_cast<std::size_t>(from); k < p.c_.size(); ++k)
            z.push_back(Int(p.c_[k].get_num() * (lcm / p.c_[k].get_den())));
        make_primitive(z);
        return z;
    }

    static void make_primitive(std::vector<Int>& z) {
        while (!z.empty() && z.back() == 0) z.pop_back();
        if (z.empty()) return;
        Int g(0);
        for (const Int& c : z) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g > 1)
            for (Int& c : z) c /= g;
        if (z.back() < 0)
            for (Int& c : z) c = -c;
    }

    // Pseudo-remainder of a by b over Z (deg a >= deg b, b nonempty).
    static std::vector<Int> pseudo_rem(std::vector<Int> a, const std::vector<Int>& b) {
        const Int& lead = b.back();
        while (a.size() >= b.size()) {
            Int top = a.back();
            for (Int& c : a) c *= lead;
            std::size_t off = a.size() - b.size();
            for (std::size_t k = 0; k < b.size(); ++k) a[off + k] -= top * b[k];
            while (!a.empty() && a.back() == 0) a.pop_back();
            if (a.empty()) break;
        }
        return a;
    }

    std::vector<Rat> c_;
};

}  // namespace valent
