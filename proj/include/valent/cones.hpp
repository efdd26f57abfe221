#pragma once

#include <valent/entropy.hpp>
#include <valent/tropical.hpp>

#include <array>
#include <stdexcept>
#include <vector>

namespace valent {

/// A point of R^{2^d} indexed by subsets with x_empty = 0: the ambient space
/// of the supermodular cone S_d.
struct SetFunctionVector {
    int dim = 0;
    std::vector<Rat> values;  // size 1 << dim

    SetFunctionVector() = default;
    SetFunctionVector(int d, std::vector<Rat> v) : dim(d), values(std::move(v)) {
        if (values.size() != (std::size_t{1} << dim)) throw std::invalid_argument("need all 2^d subset values");
        if (values[0] != 0) throw std::invalid_argument("value at the empty set must be 0");
    }
    explicit SetFunctionVector(const EntropyVector& h) : SetFunctionVector(h.dim, h.values) {}

    const Rat& at(SubsetMask m) const { return values.at(m); }
};

struct FacetTriple {
    SubsetMask conditioning;  // I
    int i, j;                 // 1-based, i < j, both outside I
};

struct SupermodularReport {
    bool inside = true;
    std::vector<FacetTriple> violated;
    std::vector<FacetTriple> tight;
};

/// Number of facet-defining inequalities of S_d: one per (I, {i,j}) with
/// i < j outside I. Equals d(d-1)2^{d-3} for d >= 3 and 1 for d = 2.
inline std::size_t supermodular_facet_count(int d) {
    if (d < 2) throw std::invalid_argument("the supermodular cone needs d >= 2");
    if (d == 2) return 1;
    return static_cast<std::size_t>(d) * static_cast<std::size_t>(d - 1) << (d - 3);
}

/// Checks every facet inequality x_{Ii} + x_{Ij} <= x_I + x_{Iij} exactly and
/// reports the violated and tight triples.
inline SupermodularReport supermodular_membership(const SetFunctionVector& x) {
    const int d = x.dim;
    if (d < 2) throw std::invalid_argument("the supermodular cone needs d >= 2");
    SupermodularReport report;
    std::size_t checked = 0;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            SubsetMask pair_mask = (SubsetMask{1} << i) | (SubsetMask{1} << j);
            SubsetMask free = (SubsetMask{1} << d) - 1 - pair_mask;
            // iterate subsets I of the complement of {i, j}
            for (SubsetMask sub = free;; sub = (sub - 1) & free) {
                Rat lhs = x.at(sub | (SubsetMask{1} << i)) + x.at(sub | (SubsetMask{1} << j));
                Rat rhs = x.at(sub) + x.at(sub | pair_mask);
                if (lhs > rhs) {
                    report.inside = false;
                    report.violated.push_back({sub, i + 1, j + 1});
                } else if (lhs == rhs) {
                    report.tight.push_back({sub, i + 1, j + 1});
                }
                ++checked;
                if (sub == 0) break;
            }
        }
    if (checked != supermodular_facet_count(d)) throw std::logic_error("facet enumeration miscount");
    return report;
}

/// X_i independent of X_j given X_I holds exactly when the entropy vector
/// sits on the corresponding face: h_{Ii} + h_{Ij} = h_I + h_{Iij}.
inline bool ci_statement(const EntropyVector& h, int i, int j, SubsetMask given) {
    if (i == j) throw std::invalid_argument("conditional independence needs distinct i, j");
    if (i < 1 || i > h.dim || j < 1 || j > h.dim) throw std::invalid_argument("index out of range");
    SubsetMask bi = SubsetMask{1} << (i - 1), bj = SubsetMask{1} << (j - 1);
    if (given & (bi | bj)) throw std::invalid_argument("i and j must lie outside the conditioning set");
    return h.at(given | bi) + h.at(given | bj) == h.at(given) + h.at(given | bi | bj);
}

/// Coordinates on the complement W of the lineality space of S_3, written
/// (w, x, y, z) = (x_2, x_3, x_13, x_23) after normalization.
struct WPoint {
    Rat w, x, y, z;

    friend bool operator==(const WPoint& a, const WPoint& b) {
        return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
    }
};

/// Projects a d = 3 set function onto W along the lineality space: subtracts
/// the unique modular function c_I = sum_{i in I} c_i with c_1 = x_1,
/// c_2 = x_12 - x_1, c_3 = x_123 - x_12, which zeroes coordinates 1, 12, 123.
inline WPoint project_to_W(const SetFunctionVector& v) {
    if (v.dim != 3) throw std::invalid_argument("the W projection is defined for d = 3");
    const Rat c1 = v.at(0b001);
    const Rat c2 = v.at(0b011) - c1;
    const Rat c3 = v.at(0b111) - v.at(0b011);
    WPoint p;
    p.w = v.at(0b010) - c2;
    p.x = v.at(0b100) - c3;
    p.y = v.at(0b101) - c1 - c3;
    p.z = v.at(0b110) - c2 - c3;
    return p;
}

/// The projection C of S_3 onto W: a pointed cone over a bipyramid cut out by
/// w <= 0, x <= y, w + x <= z, y <= 0, z <= w, y + z <= x.
inline bool cone_C_membership(const WPoint& p) {
    return p.w <= 0 && p.x <= p.y && p.w + p.x <= p.z && p.y <= 0 && p.z <= p.w && p.y + p.z <= p.x;
}

struct FanReport {
    bool member = false;
    std::vector<int> systems;  // which of the three cones (1-based) contain the point
};

/// The projection P of the entropy map's image onto W: a union of three
/// polyhedral cones inside C. Membership means at least one system holds,
/// with all equalities exact.
inline FanReport fan_P_membership(const WPoint& p) {
    FanReport r;
    if (p.w <= 0 && p.x <= p.w + p.y && p.y <= 0 && p.z == p.x) r.systems.push_back(1);
    if (p.w <= 0 && p.x <= p.y && p.y <= 0 && p.y + p.w <= p.x && p.z == p.y + p.w) r.systems.push_back(2);
    if (p.w <= 0 && p.y <= 0 && p.x == p.y + p.w && p.z <= p.w && p.x <= p.z) r.systems.push_back(3);
    r.member = !r.systems.empty();
    return r;
}

/// d = 2 preimage construction (Puiseux mode): the lattice with representative
/// [[t^{x1}, 0], [t^{x2}, t^{x12 - x1}]] has entropy vector (0; x1, x2; x12).
/// Requires x1 + x2 <= x12, i.e. membership in S_2.
inline Lattice s2_preimage(const Rat& x1, const Rat& x2, const Rat& x12) {
    if (x1 + x2 > x12) throw std::domain_error("point outside S_2: x1 + x2 must be <= x12");
    FieldDescriptor f = FieldDescriptor::puiseux();
    Matrix m(f, 2, 2);
    m.at(0, 0) = uniformizer_pow(f, x1);
    m.at(1, 0) = uniformizer_pow(f, x2);
    m.at(1, 1) = uniformizer_pow(f, Rat(x12 - x1));
    return Lattice(m);
}

}  // namespace valent
