#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace valent {

/// Subsets of {1, ..., d} as bitmasks: bit k set <=> element k+1 present.
using SubsetMask = std::uint32_t;

inline int subset_size(SubsetMask m) { return std::popcount(m); }

inline std::vector<int> subset_indices(SubsetMask m) {  // 0-based positions
    std::vector<int> idx;
    for (int k = 0; m != 0; ++k, m >>= 1)
        if (m & 1u) idx.push_back(k);
    return idx;
}

/// Largest element of a nonempty subset (0-based).
inline int subset_top(SubsetMask m) {
    if (m == 0) throw std::invalid_argument("empty subset has no largest element");
    return std::bit_width(m) - 1;
}

/// Comma-joined 1-based index list; the empty subset renders as "".
inline std::string subset_key(SubsetMask m) {
    std::string s;
    for (int k : subset_indices(m)) {
        if (!s.empty()) s += ',';
        s += std::to_string(k + 1);
    }
    return s;
}

inline SubsetMask parse_subset_key(const std::string& s, int d) {
    if (s.empty()) return 0;
    SubsetMask m = 0;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find(',', pos);
        std::string tok = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("malformed subset key '" + s + "'");
        long v = std::stol(tok);
        if (v < 1 || v > d) throw std::invalid_argument("subset index " + tok + " out of range 1.." + std::to_string(d));
        SubsetMask bit = SubsetMask{1} << (v - 1);
        if (m & bit) throw std::invalid_argument("duplicate subset index " + tok);
        m |= bit;
        pos = next == std::string::npos ? s.size() : next + 1;
    }
    return m;
}

/// Visits all size-k submasks of {0,...,d-1} in increasing numeric order.
template <typename F>
inline void for_each_subset_of_size(int d, int k, F&& f) {
    if (k == 0) {
        f(SubsetMask{0});
        return;
    }
    if (k > d) return;
    SubsetMask m = (SubsetMask{1} << k) - 1;
    const SubsetMask limit = SubsetMask{1} << d;
    while (m < limit) {
        f(m);
        SubsetMask c = m & -m, r = m + c;  // Gosper's hack
        m = (((r ^ m) >> 2) / c) | r;
        if (c == 0) break;
    }
}

}  // namespace valent
