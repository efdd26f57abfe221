#pragma once

#include <valent/entropy.hpp>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace valent {

/// Max-plus evaluator for phi(v) = max_I (v_I - h_I) together with the field
/// it came from. In p-adic mode q = p turns phi into the exact tail
/// distribution of the valuation vector, Q(v) = q^{-phi(v)}; in Puiseux mode
/// phi is still defined but carries no probability.
struct TropicalPolynomial {
    EntropyVector coefficients;
    FieldDescriptor field;
};

inline TropicalPolynomial tropical_polynomial(const Lattice& l, EntropyMethod method = EntropyMethod::Hnf) {
    return TropicalPolynomial{entropy_vector(l, method), l.field()};
}

/// Exact max over all 2^d affine terms v_I - h_I (the empty term is 0).
inline Rat phi_eval(const TropicalPolynomial& t, const std::vector<Rat>& v) {
    const int d = t.coefficients.dim;
    if (static_cast<int>(v.size()) != d) throw std::invalid_argument("vector length mismatch");
    Rat best(0);  // empty subset: v_empty - h_empty = 0
    for (SubsetMask m = 1; m < (SubsetMask{1} << d); ++m) {
        Rat term(0);
        for (int k : subset_indices(m)) term += v[static_cast<std::size_t>(k)];
        term -= t.coefficients.at(m);
        if (term > best) best = term;
    }
    return best;
}

inline Rat phi_eval(const TropicalPolynomial& t, const std::vector<long>& v) {
    std::vector<Rat> vr(v.begin(), v.end());
    return phi_eval(t, vr);
}

/// Q(v) = q^{-phi(v)} = P(V >= v coordinatewise); p-adic mode only.
inline Rat tail_prob(const TropicalPolynomial& t, const std::vector<Rat>& v) {
    if (!t.field.is_padic())
        throw std::domain_error("tail probabilities need a local field; the Puiseux-type field carries no Haar measure");
    Rat phi = phi_eval(t, v);
    if (!is_integer(phi)) throw std::domain_error("tail exponent must be an integer");
    return rat_pow(Int(t.field.q()), -to_long(phi));
}

inline Rat tail_prob(const TropicalPolynomial& t, const std::vector<long>& v) {
    std::vector<Rat> vr(v.begin(), v.end());
    return tail_prob(t, vr);
}

/// P(V = v) by inclusion-exclusion over the 2^d corner shifts of the tail:
/// P(V = v) = sum_{S subset [d]} (-1)^{|S|} Q(v + 1_S). Exact rationals.
inline Rat pmf_at(const TropicalPolynomial& t, const std::vector<long>& v) {
    const int d = t.coefficients.dim;
    Rat total(0);
    for (SubsetMask s = 0; s < (SubsetMask{1} << d); ++s) {
        std::vector<long> shifted = v;
        for (int k : subset_indices(s)) ++shifted[static_cast<std::size_t>(k)];
        Rat q = tail_prob(t, shifted);
        if (subset_size(s) % 2 == 0)
            total += q;
        else
            total -= q;
    }
    return total;
}

/// Pointwise law over an integer box [lo, hi], in row-major grid order.
inline std::vector<std::pair<std::vector<long>, Rat>> pmf_box(const TropicalPolynomial& t,
                                                              const std::vector<long>& lo,
                                                              const std::vector<long>& hi) {
    const int d = t.coefficients.dim;
    if (static_cast<int>(lo.size()) != d || static_cast<int>(hi.size()) != d)
        throw std::invalid_argument("box bounds must have length d");
    for (int k = 0; k < d; ++k)
        if (lo[static_cast<std::size_t>(k)] > hi[static_cast<std::size_t>(k)])
            throw std::invalid_argument("box lower bound exceeds upper bound");
    std::vector<std::pair<std::vector<long>, Rat>> out;
    std::vector<long> v = lo;
    while (true) {
        out.emplace_back(v, pmf_at(t, v));
        int k = d - 1;
        while (k >= 0 && v[static_cast<std::size_t>(k)] == hi[static_cast<std::size_t>(k)]) {
            v[static_cast<std::size_t>(k)] = lo[static_cast<std::size_t>(k)];
            --k;
        }
        if (k < 0) break;
        ++v[static_cast<std::size_t>(k)];
    }
    return out;
}

/// Independent route to phi(v): h(L ∩ pi^v) - h(L), computed with lattice
/// intersection only. Must agree with phi_eval of the entropy vector.
inline Rat phi_oracle_intersection(const Lattice& l, const std::vector<Rat>& v) {
    if (static_cast<int>(v.size()) != l.dim()) throw std::invalid_argument("vector length mismatch");
    Lattice box = diagonal_lattice(l.field(), v);
    return entropy_total(intersect_lattices(l, box)) - entropy_total(l);
}

inline Rat phi_oracle_intersection(const Lattice& l, const std::vector<long>& v) {
    std::vector<Rat> vr(v.begin(), v.end());
    return phi_oracle_intersection(l, vr);
}

/// Subset/coefficient dump for external polyhedral tools: one line per
/// subset, "I:<comma list> e:<0/1 vector> h:<rational>".
inline std::string export_tropical(const EntropyVector& h) {
    std::string out;
    for (SubsetMask m = 0; m < (SubsetMask{1} << h.dim); ++m) {
        std::string e;
        for (int k = 0; k < h.dim; ++k) {
            if (!e.empty()) e += ',';
            e += (m >> k) & 1u ? '1' : '0';
        }
        out += "I:" + subset_key(m) + " e:" + e + " h:" + h.at(m).get_str() + "\n";
    }
    return out;
}

}  // namespace valent
