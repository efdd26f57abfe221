#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace valent {

using Int = mpz_class;
using Rat = mpq_class;

/// Exponent of the largest power of p dividing n (n != 0).
inline long int_valuation(const Int& n, const Int& p) {
    if (n == 0) throw std::domain_error("int_valuation: valuation of zero is infinite");
    Int reduced;
    return static_cast<long>(mpz_remove(reduced.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

/// p^e as an exact rational, e of either sign.
inline Rat rat_pow(const Int& base, long e) {
    Int num = int_pow(base, static_cast<unsigned long>(e >= 0 ? e : -e));
    Rat r = e >= 0 ? Rat(num) : Rat(Int(1), num);
    r.canonicalize();
    return r;
}

/// Strict parser for "a" or "a/b" decimal rationals (b > 0). Used by every
/// external input surface so diagnostics stay uniform.
inline Rat parse_rational(const std::string& s) {
    auto fail = [&]() -> Rat {
        throw std::invalid_argument("malformed rational '" + s + "' (expected \"a\" or \"a/b\")");
    };
    if (s.empty()) return fail();
    std::size_t pos = 0;
    if (s[pos] == '-' || s[pos] == '+') ++pos;
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) return fail();
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos != s.size()) {
        if (s[pos] != '/') return fail();
        ++pos;
        if (pos >= s.size()) return fail();
        std::size_t den_start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos != s.size() || pos == den_start) return fail();
        if (s.substr(den_start) == std::string(pos - den_start, '0')) return fail();
    }
    Rat r;
    if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0) return fail();
    r.canonicalize();
    return r;
}

inline std::string rational_str(const Rat& r) { return r.get_str(); }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline long to_long(const Rat& r) {
    if (!is_integer(r) || !r.get_num().fits_slong_p())
        throw std::domain_error("expected a small integer, got " + r.get_str());
    return r.get_num().get_si();
}

/// Trial-division primality, adequate for word-sized p.
inline bool is_prime(long p) {
    if (p < 2) return false;
    for (long f = 2; f * f <= p; ++f)
        if (p % f == 0) return false;
    return true;
}

}  // namespace valent
