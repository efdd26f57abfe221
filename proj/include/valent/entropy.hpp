#pragma once

#include <valent/lattice.hpp>
#include <valent/subset.hpp>

#include <stdexcept>
#include <vector>

namespace valent {

/// The full entropy map H(L) = (h_I(L))_I over all 2^d subsets, indexed by
/// bitmask. h_emptyset = 0 by convention, every value is finite, and in
/// p-adic mode every value is an integer. The same data doubles as the
/// coefficient list of the tail-distribution tropical polynomial.
struct EntropyVector {
    int dim = 0;
    std::vector<Rat> values;  // size 1 << dim, values[0] == 0

    const Rat& at(SubsetMask m) const { return values.at(m); }
};

enum class EntropyMethod { Minors, Hnf, Iterative };

/// h(L) = val(det A), independent of the chosen representative.
inline Rat entropy_total(const Lattice& l) {
    return l.representative().determinant().valuation().finite();
}

/// h_I(L) as the minimum of val(det A_{I x J}) over all column subsets J with
/// |J| = |I|. The empty minor has determinant 1, so h_empty = 0.
inline Rat entropy_subset_minors(const Lattice& l, SubsetMask i_mask) {
    if (i_mask == 0) return Rat(0);
    const int k = subset_size(i_mask);
    std::vector<int> rows = subset_indices(i_mask);
    Val best = Val::infinity();
    for_each_subset_of_size(l.dim(), k, [&](SubsetMask j_mask) {
        Matrix minor = l.representative().submatrix(rows, subset_indices(j_mask));
        best = min(best, minor.determinant().valuation());
    });
    return best.finite();  // rows of an invertible matrix have full rank
}

/// h_I(L) as the total entropy of the projected lattice L_I.
inline Rat entropy_subset_hnf(const Lattice& l, SubsetMask i_mask) {
    if (i_mask == 0) return Rat(0);
    return entropy_total(project_lattice(l, subset_indices(i_mask)));
}

/// All 2^d entropy values by the chosen method. The iterative method peels
/// off the largest index i of each subset I and adds the last inner-envelope
/// exponent of the projected lattice L_I to h_{I \ {i}}; all three methods
/// agree on every lattice.
inline EntropyVector entropy_vector(const Lattice& l, EntropyMethod method = EntropyMethod::Hnf) {
    const int d = l.dim();
    EntropyVector h;
    h.dim = d;
    h.values.assign(std::size_t{1} << d, Rat(0));
    switch (method) {
        case EntropyMethod::Minors:
            for (SubsetMask m = 1; m < (SubsetMask{1} << d); ++m) h.values[m] = entropy_subset_minors(l, m);
            break;
        case EntropyMethod::Hnf:
            for (SubsetMask m = 1; m < (SubsetMask{1} << d); ++m) h.values[m] = entropy_subset_hnf(l, m);
            break;
        case EntropyMethod::Iterative:
            // Ascending masks: m ^ top < m, so the parent value always exists.
            for (SubsetMask m = 1; m < (SubsetMask{1} << d); ++m) {
                SubsetMask top = SubsetMask{1} << subset_top(m);
                Lattice proj = project_lattice(l, subset_indices(m));
                std::vector<Rat> inner = diagonal_envelopes(proj).first;
                h.values[m] = h.values[m ^ top] + inner.back();
            }
            break;
    }
    return h;
}

/// Minimal valuation of a d x d determinant assembled from `ell` lattice
/// generators and d - ell scaled standard basis vectors pi^{v_i} e_i:
///   min over row subsets I and column subsets J of size ell of
///   val(det A_{I x J}) + sum_{i not in I} v_i.
/// The basis vectors occupy the rows outside I, which is what ties the
/// v-sum to the complement of the row subset.
inline Rat ell_distance(const Lattice& l, const std::vector<Rat>& v, int ell) {
    const int d = l.dim();
    if (static_cast<int>(v.size()) != d) throw std::invalid_argument("vector length mismatch");
    if (ell < 0 || ell > d) throw std::invalid_argument("ell out of range 0..d");
    Rat total(0);
    for (const Rat& c : v) total += c;
    Val best = Val::infinity();
    for_each_subset_of_size(d, ell, [&](SubsetMask i_mask) {
        Rat outside = total;
        for (int r : subset_indices(i_mask)) outside -= v[static_cast<std::size_t>(r)];
        if (i_mask == 0) {
            best = min(best, Val(outside));
            return;
        }
        std::vector<int> rows = subset_indices(i_mask);
        for_each_subset_of_size(d, ell, [&](SubsetMask j_mask) {
            Matrix minor = l.representative().submatrix(rows, subset_indices(j_mask));
            Val det = minor.determinant().valuation();
            if (det.is_finite()) best = min(best, Val(Rat(det.finite() + outside)));
        });
    });
    return best.finite();
}

}  // namespace valent
