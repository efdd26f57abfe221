#pragma once

#include <valent/valent.hpp>

#include <vector>

// Deterministic random inputs for property tests. Everything funnels through
// CounterRng so failures reproduce from the seed alone.
namespace testgen {

using namespace valent;

inline FieldElement random_padic(const FieldDescriptor& f, CounterRng& rng, long vlo, long vhi,
                                 bool allow_zero = true) {
    if (allow_zero && rng.below(5) == 0) return field_zero(f);
    long p = f.p();
    long unit = rng.range(1, p - 1) + p * rng.range(0, 3);
    long e = rng.range(vlo, vhi);
    Rat x = Rat(unit) * rat_pow(Int(p), e);
    if (rng.below(2) == 0) x = -x;
    return FieldElement::padic(f, x);
}

inline FieldElement random_puiseux(const FieldDescriptor& f, CounterRng& rng, bool allow_zero = true) {
    if (allow_zero && rng.below(5) == 0) return field_zero(f);
    FieldElement x = field_zero(f);
    int terms = static_cast<int>(rng.below(2)) + 1;
    for (int t = 0; t < terms; ++t) {
        Rat c(rng.range(1, 4) * (rng.below(2) == 0 ? 1 : -1));
        Rat e(rng.range(-4, 4), rng.range(1, 2));
        e.canonicalize();
        x = x + puiseux_term(f, c, e);
    }
    if (x.is_zero() && !allow_zero) return field_one(f);
    return x;
}

inline FieldElement random_element(const FieldDescriptor& f, CounterRng& rng, long vlo = -3, long vhi = 3,
                                   bool allow_zero = true) {
    return f.is_padic() ? random_padic(f, rng, vlo, vhi, allow_zero) : random_puiseux(f, rng, allow_zero);
}

inline Lattice random_lattice(const FieldDescriptor& f, int d, CounterRng& rng, long vlo = -3, long vhi = 3) {
    while (true) {
        Matrix m(f, d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) m.at(i, j) = random_element(f, rng, vlo, vhi);
        if (!m.determinant().is_zero()) return Lattice(std::move(m));
    }
}

inline std::vector<FieldElement> column(const Matrix& m, int j) {
    std::vector<FieldElement> c;
    for (int i = 0; i < m.rows(); ++i) c.push_back(m.at(i, j));
    return c;
}

inline Lattice example_2x2(long p) {  // [[1, 0], [p, p^2]]
    FieldDescriptor f = FieldDescriptor::padic(p);
    Matrix m(f, 2, 2);
    m.at(0, 0) = field_one(f);
    m.at(1, 0) = field_from_integer(f, p);
    m.at(1, 1) = field_from_integer(f, p * p);
    return Lattice(m);
}

inline Lattice example_3x3(long p) {  // [[1,0,0],[1,p^2,0],[1,p,p^2]]
    FieldDescriptor f = FieldDescriptor::padic(p);
    Matrix m(f, 3, 3);
    m.at(0, 0) = field_one(f);
    m.at(1, 0) = field_one(f);
    m.at(2, 0) = field_one(f);
    m.at(1, 1) = field_from_integer(f, p * p);
    m.at(2, 1) = field_from_integer(f, p);
    m.at(2, 2) = field_from_integer(f, p * p);
    return Lattice(m);
}

}  // namespace testgen
