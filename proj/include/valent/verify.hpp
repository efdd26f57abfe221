#pragma once

#include <valent/lattice.hpp>
#include <valent/rng.hpp>
#include <valent/tropical.hpp>

#include <cmath>
#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <vector>

namespace valent {

/// Uniform draw from Z / p^digits as an integer in [0, p^digits), built digit
/// by digit so the distribution is exact.
inline Int random_mod_power(CounterRng& rng, long p, int digits) {
    Int z(0);
    for (int k = 0; k < digits; ++k) {
        z *= p;
        z += static_cast<long>(rng.below(static_cast<std::uint64_t>(p)));
    }
    return z;
}

/// Monte-Carlo draws of the valuation vector V = val(X) for X uniform on the
/// lattice. Each sample is X = A Z with Z uniform on (Z/p^N)^d; the computed
/// valuation of a coordinate is trusted only below N - guard, everything at
/// or above the guard line is counted as censored.
struct SampleBatch {
    long n = 0;
    int precision = 0;
    std::uint64_t seed = 0;
    int guard = 10;
    std::vector<std::vector<long>> valuations;  // one vector per sample
    std::vector<char> censored_flags;           // parallel to valuations
    long censored = 0;

    /// A batch is usable while the censored fraction stays at or below 1%.
    bool usable() const { return censored * 100 <= n; }
    long usable_count() const { return n - censored; }
};

inline SampleBatch sample_valuations(const Lattice& l, long n, int precision, std::uint64_t seed, int guard = 10) {
    if (!l.field().is_padic()) throw std::domain_error("sampling needs a local field (p-adic mode)");
    if (precision < 1) throw std::domain_error("precision must be >= 1");
    const int d = l.dim();
    const long p = l.field().p();
    const Int pz(p);

    // The truncation Z of the exact p-adic uniform perturbs X by at least
    // p^{N - c} with c = -min(0, min val(A_ij)); the guard must dominate c.
    long c = 0;
    std::vector<std::vector<Rat>> a(static_cast<std::size_t>(d), std::vector<Rat>(static_cast<std::size_t>(d)));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const FieldElement& e = l.representative().at(i, j);
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = e.rat();
            if (!e.is_zero()) {
                long v = to_long(e.valuation().finite());
                if (-v > c) c = -v;
            }
        }
    if (guard <= c)
        throw std::domain_error("precision guard too small for this representative (needs > " + std::to_string(c) + ")");

    SampleBatch batch;
    batch.n = n;
    batch.precision = precision;
    batch.seed = seed;
    batch.guard = guard;
    batch.valuations.reserve(static_cast<std::size_t>(n));
    batch.censored_flags.reserve(static_cast<std::size_t>(n));
    const long trust_limit = precision - guard;

    for (long s = 0; s < n; ++s) {
        CounterRng rng = CounterRng::derive(seed, static_cast<std::uint64_t>(s));
        std::vector<Rat> z(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j) z[static_cast<std::size_t>(j)] = Rat(random_mod_power(rng, p, precision));
        std::vector<long> vals(static_cast<std::size_t>(d));
        bool cens = false;
        for (int i = 0; i < d; ++i) {
            Rat x(0);
            for (int j = 0; j < d; ++j) {
                const Rat& coeff = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                if (coeff != 0) x += coeff * z[static_cast<std::size_t>(j)];
            }
            long v;
            if (x == 0) {
                v = precision;  // valuation beyond anything resolvable
            } else {
                v = int_valuation(x.get_num(), pz) - int_valuation(x.get_den(), pz);
            }
            if (v >= trust_limit) cens = true;
            vals[static_cast<std::size_t>(i)] = v;
        }
        batch.valuations.push_back(std::move(vals));
        batch.censored_flags.push_back(cens ? 1 : 0);
        if (cens) ++batch.censored;
    }
    return batch;
}

struct TailReportRow {
    std::vector<long> v;
    double empirical = 0.0;
    Rat exact;
    std::optional<double> z;  // absent for degenerate cells
};

/// Compares empirical tail frequencies against the exact tropical tail over
/// an integer box. z-scores use the binomial standard error and are omitted
/// when the exact tail is within 1/n of 0 or 1 (degenerate cells).
inline std::vector<TailReportRow> empirical_tail_report(const SampleBatch& batch, const TropicalPolynomial& t,
                                                        const std::vector<long>& lo, const std::vector<long>& hi) {
    if (!batch.usable()) throw std::domain_error("sample batch is flagged: censored fraction exceeds 1%");
    const int d = t.coefficients.dim;
    if (static_cast<int>(lo.size()) != d || static_cast<int>(hi.size()) != d)
        throw std::invalid_argument("box bounds must have length d");
    const long m = batch.usable_count();

    std::vector<TailReportRow> rows;
    std::vector<long> v = lo;
    while (true) {
        long count = 0;
        for (std::size_t s = 0; s < batch.valuations.size(); ++s) {
            if (batch.censored_flags[s]) continue;
            const auto& w = batch.valuations[s];
            bool ge = true;
            for (int k = 0; k < d && ge; ++k) ge = w[static_cast<std::size_t>(k)] >= v[static_cast<std::size_t>(k)];
            if (ge) ++count;
        }
        TailReportRow row;
        row.v = v;
        row.empirical = static_cast<double>(count) / static_cast<double>(m);
        row.exact = tail_prob(t, v);
        Rat lo_band(1, m), hi_band = 1 - lo_band;
        if (row.exact >= lo_band && row.exact <= hi_band) {
            double e = row.exact.get_d();
            row.z = (row.empirical - e) / std::sqrt(e * (1.0 - e) / static_cast<double>(m));
        }
        rows.push_back(std::move(row));

        int k = d - 1;
        while (k >= 0 && v[static_cast<std::size_t>(k)] == hi[static_cast<std::size_t>(k)]) {
            v[static_cast<std::size_t>(k)] = lo[static_cast<std::size_t>(k)];
            --k;
        }
        if (k < 0) break;
        ++v[static_cast<std::size_t>(k)];
    }
    return rows;
}

namespace detail {

// Additive closure of the generator residues inside (Z/p^m)^d; returns the
// enumerated element encodings (mixed radix, base p^m).
inline std::vector<std::uint32_t> enumerate_group(const Lattice& l, long p, int m) {
    const int d = l.dim();
    Int mod = int_pow(Int(p), static_cast<unsigned long>(m));
    const std::uint64_t modw = mod.get_ui();

    std::vector<std::vector<std::uint64_t>> gens;
    for (int j = 0; j < d; ++j) {
        std::vector<std::uint64_t> g(static_cast<std::size_t>(d));
        bool nonzero = false;
        for (int i = 0; i < d; ++i) {
            const Rat& e = l.representative().at(i, j).rat();
            Int num = e.get_num() % mod;
            if (num < 0) num += mod;
            Int inv;
            if (mpz_invert(inv.get_mpz_t(), e.get_den().get_mpz_t(), mod.get_mpz_t()) == 0)
                throw std::domain_error("denominator not coprime to p after rescaling");
            Int r = (num * inv) % mod;
            g[static_cast<std::size_t>(i)] = r.get_ui();
            nonzero = nonzero || r != 0;
        }
        if (nonzero) gens.push_back(std::move(g));
    }

    std::uint64_t space = 1;
    for (int i = 0; i < d; ++i) space *= modw;
    std::vector<bool> seen(space, false);
    std::vector<std::uint32_t> elements;
    std::deque<std::uint32_t> queue;
    seen[0] = true;
    queue.push_back(0);
    std::vector<std::uint64_t> digits(static_cast<std::size_t>(d));
    while (!queue.empty()) {
        std::uint32_t idx = queue.front();
        queue.pop_front();
        elements.push_back(idx);
        std::uint64_t rest = idx;
        for (int i = 0; i < d; ++i) {
            digits[static_cast<std::size_t>(i)] = rest % modw;
            rest /= modw;
        }
        for (const auto& g : gens) {
            std::uint64_t nidx = 0, mult = 1;
            for (int i = 0; i < d; ++i) {
                std::uint64_t digit = digits[static_cast<std::size_t>(i)] + g[static_cast<std::size_t>(i)];
                if (digit >= modw) digit -= modw;
                nidx += digit * mult;
                mult *= modw;
            }
            if (!seen[nidx]) {
                seen[nidx] = true;
                queue.push_back(static_cast<std::uint32_t>(nidx));
            }
        }
    }
    return elements;
}

inline Int index_at_modulus(const Lattice& l, const std::vector<long>& v, long p, int m) {
    const int d = l.dim();
    std::vector<std::uint32_t> elements = enumerate_group(l, p, m);
    const std::uint64_t modw = int_pow(Int(p), static_cast<unsigned long>(m)).get_ui();
    std::vector<std::uint64_t> divisor(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
        divisor[static_cast<std::size_t>(i)] = int_pow(Int(p), static_cast<unsigned long>(v[static_cast<std::size_t>(i)])).get_ui();
    std::uint64_t in_box = 0;
    for (std::uint32_t idx : elements) {
        std::uint64_t rest = idx;
        bool ok = true;
        for (int i = 0; i < d && ok; ++i) {
            std::uint64_t digit = rest % modw;
            rest /= modw;
            ok = digit % divisor[static_cast<std::size_t>(i)] == 0;
        }
        if (ok) ++in_box;
    }
    if (elements.size() % in_box != 0) throw std::logic_error("subgroup order does not divide group order");
    return Int(static_cast<unsigned long>(elements.size() / in_box));
}

}  // namespace detail

/// [Lattice : Lattice ∩ pi^v] by explicit enumeration in the finite quotient
/// (Z/p^M)^d, fully independent of the entropy machinery. The lattice is
/// rescaled into O^d first (exact index correction via diagonal covariance),
/// the result must agree between moduli M and M+1, and it equals q^{phi(v)}.
inline Int brute_force_index(const Lattice& l, const std::vector<long>& v, int modexp) {
    if (!l.field().is_padic()) throw std::domain_error("index enumeration needs p-adic mode");
    const int d = l.dim();
    if (static_cast<int>(v.size()) != d) throw std::invalid_argument("vector length mismatch");
    for (long vi : v)
        if (vi < 0) throw std::invalid_argument("index enumeration needs v >= 0");
    const long p = l.field().p();

    // Clear into O^d: scale row i by p^{c_i}, c = -min(0, b). The index at
    // shifted v is unchanged because phi_{DL}(v + c) = phi_L(v).
    std::vector<Rat> b = diagonal_envelopes(l).second;
    std::vector<long> shift(static_cast<std::size_t>(d), 0);
    bool rescale = false;
    for (int i = 0; i < d; ++i) {
        long bi = to_long(b[static_cast<std::size_t>(i)]);
        if (bi < 0) {
            shift[static_cast<std::size_t>(i)] = -bi;
            rescale = true;
        }
    }
    Lattice work = l;
    std::vector<long> vv = v;
    if (rescale) {
        Matrix scaled = l.representative();
        for (int i = 0; i < d; ++i) {
            FieldElement f = uniformizer_pow(l.field(), Rat(shift[static_cast<std::size_t>(i)]));
            for (int j = 0; j < d; ++j) scaled.at(i, j) = scaled.at(i, j) * f;
            vv[static_cast<std::size_t>(i)] += shift[static_cast<std::size_t>(i)];
        }
        work = Lattice(std::move(scaled));
    }

    long vmax = 0;
    for (long vi : vv) vmax = std::max(vmax, vi);
    if (modexp < vmax) throw std::domain_error("modulus exponent too small for v (needs >= " + std::to_string(vmax) + ")");
    Int budget = int_pow(Int(p), static_cast<unsigned long>(d) * static_cast<unsigned long>(modexp + 1));
    if (budget > Int(1) << 24)
        throw std::domain_error("enumeration budget exceeded: p^(d*(M+1)) must stay within 2^24");

    Int at_m = detail::index_at_modulus(work, vv, p, modexp);
    Int at_m1 = detail::index_at_modulus(work, vv, p, modexp + 1);
    if (at_m != at_m1)
        throw std::domain_error("index did not stabilize between moduli " + std::to_string(modexp) + " and " +
                                std::to_string(modexp + 1));
    return at_m;
}

}  // namespace valent
