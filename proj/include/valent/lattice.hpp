#pragma once

#include <valent/matrix.hpp>
#include <valent/rng.hpp>

#include <stdexcept>
#include <vector>

namespace valent {

/// Full-rank O-module A * O^d in K^d, held as one invertible representative.
/// Two representatives describe the same lattice exactly when they differ by
/// right multiplication with a matrix in GL_d(O); use lattice_equal for coset
/// equality, never entrywise comparison of representatives.
class Lattice {
public:
    explicit Lattice(Matrix representative) : rep_(std::move(representative)) {
        if (rep_.rows() != rep_.cols()) throw std::invalid_argument("lattice representative must be square");
        if (rep_.determinant().is_zero()) throw std::domain_error("matrix is singular");
    }

    int dim() const { return rep_.rows(); }
    const FieldDescriptor& field() const { return rep_.field(); }
    const Matrix& representative() const { return rep_; }

private:
    Matrix rep_;
};

/// pi^v = pi^{v_1} O e_1 + ... + pi^{v_d} O e_d, kept as its exponent vector.
struct DiagonalLattice {
    FieldDescriptor field;
    std::vector<Rat> exponents;

    Lattice to_lattice() const {
        Matrix m(field, static_cast<int>(exponents.size()), static_cast<int>(exponents.size()));
        for (std::size_t i = 0; i < exponents.size(); ++i)
            m.at(static_cast<int>(i), static_cast<int>(i)) = uniformizer_pow(field, exponents[i]);
        return Lattice(m);
    }
};

inline Lattice diagonal_lattice(const FieldDescriptor& f, const std::vector<Rat>& exponents) {
    return DiagonalLattice{f, exponents}.to_lattice();
}

namespace detail {

// Column echelon over O on an r x n generating matrix (n >= r, full row
// rank). Pivots by minimal valuation in the working row, lowest column on
// ties; scales each pivot column by its unit part so the diagonal becomes an
// exact uniformizer power. Afterwards columns r..n-1 are zero.
inline void column_echelon(Matrix& g) {
    const int r = g.rows(), n = g.cols();
    for (int j = 0; j < r; ++j) {
        int pivot = -1;
        Val best = Val::infinity();
        for (int c = j; c < n; ++c) {
            if (g.at(j, c).is_zero()) continue;
            Val v = g.at(j, c).valuation();
            if (pivot < 0 || v < best) {
                pivot = c;
                best = v;
            }
        }
        if (pivot < 0) throw std::domain_error("matrix is singular");
        if (pivot != j)
            for (int i = 0; i < r; ++i) std::swap(g.at(i, j), g.at(i, pivot));
        FieldElement unit = g.at(j, j) / uniformizer_pow(g.field(), best.finite());
        for (int i = j; i < r; ++i) g.at(i, j) = g.at(i, j) / unit;
        for (int c = j + 1; c < n; ++c) {
            if (g.at(j, c).is_zero()) continue;
            FieldElement mult = g.at(j, c) / g.at(j, j);
            for (int i = j; i < r; ++i) g.at(i, c) = g.at(i, c) - mult * g.at(i, j);
        }
    }
}

// Reduces every below-diagonal entry of a lower-triangular matrix with
// uniformizer-power diagonal to its canonical residue modulo the diagonal of
// its own row. Rows are processed top to bottom: reducing entry (i, j) only
// perturbs rows > i of column j, which have not been reduced yet.
inline void reduce_below_diagonal(Matrix& t) {
    const int d = t.rows();
    for (int i = 1; i < d; ++i) {
        Rat gamma = t.at(i, i).valuation().finite();
        for (int j = 0; j < i; ++j) {
            if (t.at(i, j).is_zero()) continue;
            FieldElement r = canonical_residue(t.at(i, j), gamma);
            FieldElement mult = (t.at(i, j) - r) / t.at(i, i);
            if (mult.is_zero()) continue;
            for (int k = i; k < d; ++k) t.at(k, j) = t.at(k, j) - mult * t.at(k, i);
        }
    }
}

// Canonical Hermite form of the lattice generated by the columns of g.
inline Matrix hermite_of_generators(Matrix g) {
    column_echelon(g);
    std::vector<int> idx(static_cast<std::size_t>(g.rows()));
    for (int i = 0; i < g.rows(); ++i) idx[static_cast<std::size_t>(i)] = i;
    Matrix t = g.submatrix(idx, idx);
    reduce_below_diagonal(t);
    return t;
}

}  // namespace detail

/// The unique lower-triangular coset representative with exact
/// uniformizer-power diagonal pi^{a_i} and every below-diagonal entry equal
/// to its canonical residue modulo pi^{a_i} (in particular zero or of
/// valuation < a_i, the diagonal of its own row).
inline Matrix hermite_normal_form(const Lattice& l) {
    return detail::hermite_of_generators(l.representative());
}

struct SmithDecomposition {
    Matrix u, d, v;  // input = u * d * v, u and v in GL_d(O)
};

/// Non-archimedean singular value decomposition: A = U D V with U, V
/// unimodular over O and D diagonal with exact uniformizer powers sorted by
/// nondecreasing valuation. The diagonal valuations sum to val(det A).
inline SmithDecomposition smith_decomposition(const Matrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("smith decomposition needs a square matrix");
    const int d = a.rows();
    const FieldDescriptor& f = a.field();
    Matrix m = a, u = Matrix::identity(f, d), v = Matrix::identity(f, d);

    for (int k = 0; k < d; ++k) {
        int pi = -1, pj = -1;
        Val best = Val::infinity();
        for (int i = k; i < d; ++i)
            for (int j = k; j < d; ++j) {
                if (m.at(i, j).is_zero()) continue;
                Val val = m.at(i, j).valuation();
                if (pi < 0 || val < best) {
                    pi = i;
                    pj = j;
                    best = val;
                }
            }
        if (pi < 0) throw std::domain_error("matrix is singular");
        if (pi != k)
            for (int c = 0; c < d; ++c) {
                std::swap(m.at(k, c), m.at(pi, c));
                std::swap(u.at(c, k), u.at(c, pi));  // U <- U * P
            }
        if (pj != k)
            for (int r = 0; r < d; ++r) {
                std::swap(m.at(r, k), m.at(r, pj));
                std::swap(v.at(k, r), v.at(pj, r));  // V <- P * V
            }
        FieldElement unit = m.at(k, k) / uniformizer_pow(f, best.finite());
        for (int c = 0; c < d; ++c) m.at(k, c) = m.at(k, c) / unit;
        for (int r = 0; r < d; ++r) u.at(r, k) = u.at(r, k) * unit;
        for (int i = k + 1; i < d; ++i) {
            if (m.at(i, k).is_zero()) continue;
            FieldElement mult = m.at(i, k) / m.at(k, k);
            for (int c = 0; c < d; ++c) m.at(i, c) = m.at(i, c) - mult * m.at(k, c);
            for (int r = 0; r < d; ++r) u.at(r, k) = u.at(r, k) + mult * u.at(r, i);
        }
        for (int j = k + 1; j < d; ++j) {
            if (m.at(k, j).is_zero()) continue;
            FieldElement mult = m.at(k, j) / m.at(k, k);
            for (int r = 0; r < d; ++r) m.at(r, j) = m.at(r, j) - mult * m.at(r, k);
            for (int c = 0; c < d; ++c) v.at(k, c) = v.at(k, c) + mult * v.at(j, c);
        }
    }
    return SmithDecomposition{u, m, v};
}

/// x in A O^d iff A^{-1} x has all coordinates in O.
inline bool lattice_membership(const Lattice& l, const std::vector<FieldElement>& x) {
    if (static_cast<int>(x.size()) != l.dim()) throw std::invalid_argument("vector length mismatch");
    std::vector<FieldElement> y = l.representative().inverse().apply(x);
    for (const auto& c : y)
        if (c.valuation() < Val(0)) return false;
    return true;
}

/// Coset equality: A1^{-1} A2 and A2^{-1} A1 both integral.
inline bool lattice_equal(const Lattice& l1, const Lattice& l2) {
    if (l1.dim() != l2.dim()) throw std::invalid_argument("dimension mismatch");
    return (l1.representative().inverse() * l2.representative()).is_integral() &&
           (l2.representative().inverse() * l1.representative()).is_integral();
}

/// Image of the lattice under projection onto the coordinates in `coords`
/// (0-based, strictly increasing). Rows of the representative indexed by
/// `coords` generate the image; column reduction yields a representative.
inline Lattice project_lattice(const Lattice& l, const std::vector<int>& coords) {
    if (coords.empty()) throw std::invalid_argument("projection onto the empty coordinate set");
    std::vector<int> all(static_cast<std::size_t>(l.dim()));
    for (int j = 0; j < l.dim(); ++j) all[static_cast<std::size_t>(j)] = j;
    Matrix g = l.representative().submatrix(coords, all);
    return Lattice(detail::hermite_of_generators(std::move(g)));
}

inline Lattice dual_lattice(const Lattice& l) {
    return Lattice(l.representative().inverse().transposed());
}

/// Smallest lattice containing both: column span of [A1 | A2].
inline Lattice sum_lattices(const Lattice& l1, const Lattice& l2) {
    if (l1.dim() != l2.dim() || l1.field() != l2.field())
        throw std::invalid_argument("lattice sum needs matching dimension and field");
    const int d = l1.dim();
    Matrix g(l1.field(), d, 2 * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            g.at(i, j) = l1.representative().at(i, j);
            g.at(i, d + j) = l2.representative().at(i, j);
        }
    return Lattice(detail::hermite_of_generators(std::move(g)));
}

/// Largest lattice contained in both, via duality: (L1* + L2*)*.
inline Lattice intersect_lattices(const Lattice& l1, const Lattice& l2) {
    return dual_lattice(sum_lattices(dual_lattice(l1), dual_lattice(l2)));
}

/// Exponents (a, b) of the maximal diagonal sublattice pi^a inside L and the
/// minimal diagonal superlattice pi^b containing L:
///   a_i = least m with pi^m e_i in L  = max_j ( -val( (A^{-1})_{j i} ) ),
///   b_i = min_j val(A_{i j}).
inline std::pair<std::vector<Rat>, std::vector<Rat>> diagonal_envelopes(const Lattice& l) {
    const int d = l.dim();
    Matrix inv = l.representative().inverse();
    std::vector<Rat> a(static_cast<std::size_t>(d)), b(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        bool seen = false;
        Rat ai;
        for (int j = 0; j < d; ++j) {
            const FieldElement& e = inv.at(j, i);
            if (e.is_zero()) continue;
            Rat cand = -e.valuation().finite();
            if (!seen || cand > ai) {
                ai = cand;
                seen = true;
            }
        }
        a[static_cast<std::size_t>(i)] = ai;  // some entry of column i is nonzero: inv is invertible
        Val bi = Val::infinity();
        for (int j = 0; j < d; ++j) bi = min(bi, l.representative().at(i, j).valuation());
        b[static_cast<std::size_t>(i)] = bi.finite();
    }
    return {a, b};
}

/// Element of GL_d(O): a seed-determined product of elementary matrices with
/// O entries, unit diagonal scalings and permutations.
inline Matrix random_unimodular(int d, const FieldDescriptor& f, std::uint64_t seed) {
    CounterRng rng = CounterRng::derive(seed, 0xA11CE);
    auto o_element = [&](bool unit) {
        if (f.is_padic()) {
            long p = f.p();
            long r = unit ? rng.range(1, p - 1) : rng.range(0, p - 1);
            return field_from_integer(f, r + p * rng.range(unit ? 0 : -2, 2));
        }
        FieldElement x = field_from_integer(f, unit ? rng.range(1, 5) : rng.range(-2, 2));
        if (rng.chance(0.5))
            x = x + puiseux_term(f, Rat(rng.range(-2, 2)), Rat(rng.range(1, 2)));
        return x;
    };

    Matrix m = Matrix::identity(f, d);
    auto add_col = [&](int from, int to, const FieldElement& mult) {
        for (int i = 0; i < d; ++i) m.at(i, to) = m.at(i, to) + mult * m.at(i, from);
    };
    for (int pass = 0; pass < 2; ++pass) {
        for (int t = 0; t < d; ++t) {
            int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(d)));
            int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(d)));
            if (i != j) add_col(i, j, o_element(false));
        }
        int c1 = static_cast<int>(rng.below(static_cast<std::uint64_t>(d)));
        int c2 = static_cast<int>(rng.below(static_cast<std::uint64_t>(d)));
        if (c1 != c2)
            for (int i = 0; i < d; ++i) std::swap(m.at(i, c1), m.at(i, c2));
        int c = static_cast<int>(rng.below(static_cast<std::uint64_t>(d)));
        FieldElement u = o_element(true);
        for (int i = 0; i < d; ++i) m.at(i, c) = m.at(i, c) * u;
    }
    return m;
}

}  // namespace valent
