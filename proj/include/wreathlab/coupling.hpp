#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "wreathlab/cycle_index.hpp"
#include "wreathlab/partition.hpp"
#include "wreathlab/rng.hpp"
#include "wreathlab/wreath.hpp"

namespace wreathlab {

/// Bernoulli(1/i) indicators zeta_1..zeta_n plus the appended terminal 1 at
/// position n+1. zeta_1 = 1 always (probability 1/1). Positions are 1-based.
struct IndicatorSequence {
    int n = 0;
    std::vector<std::uint8_t> bits;  // size n+1, bits[i-1] = zeta_i, bits[n] = terminal

    std::uint8_t at(int pos) const { return bits[pos - 1]; }

    void validate() const {
        if (static_cast<int>(bits.size()) != n + 1)
            throw std::invalid_argument("indicator sequence: wrong length");
        if (n >= 1 && bits[0] != 1) throw std::invalid_argument("indicator sequence: zeta_1 != 1");
        if (bits.back() != 1) throw std::invalid_argument("indicator sequence: terminal bit != 1");
    }
};

/// A maximal gap between consecutive 1s: the pattern 1 0^{l-1} 1 with the
/// left 1 at position `left`.
struct Spacing {
    int length = 0;
    int left = 0;

    bool operator==(const Spacing&) const = default;
};

inline IndicatorSequence sample_indicators(int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("sample_indicators: n < 1");
    IndicatorSequence seq;
    seq.n = n;
    seq.bits.resize(n + 1);
    seq.bits[0] = 1;
    for (int i = 2; i <= n; ++i) seq.bits[i - 1] = rng.bernoulli(1.0 / i) ? 1 : 0;
    seq.bits[n] = 1;
    return seq;
}

/// Every spacing exactly once, left to right. Lengths sum to n.
inline std::vector<Spacing> spacings(const IndicatorSequence& seq) {
    seq.validate();
    std::vector<Spacing> out;
    int prev = 1;
    for (int pos = 2; pos <= seq.n + 1; ++pos) {
        if (seq.bits[pos - 1]) {
            out.push_back({pos - prev, prev});
            prev = pos;
        }
    }
    return out;
}

/// Draws cycle types of a uniform Gamma-element from the coefficient
/// distribution of its cycle index; group elements are never materialized.
class CycleTypeSampler {
  public:
    explicit CycleTypeSampler(const CycleIndexPoly& z)
        : block_degree_(static_cast<int>(z.degree())), table_(weights_of(z)) {
        types_.reserve(z.terms().size());
        for (const auto& [type, coeff] : z.terms()) types_.push_back(type);
    }

    const Partition& draw(Rng& rng) const { return types_[table_.draw(rng)]; }

    int block_degree() const { return block_degree_; }
    const std::vector<Partition>& types() const { return types_; }

  private:
    static std::vector<double> weights_of(const CycleIndexPoly& z) {
        std::vector<double> w;
        w.reserve(z.terms().size());
        for (const auto& [type, coeff] : z.terms()) w.push_back(to_double(coeff));
        return w;
    }

    int block_degree_;
    std::vector<Partition> types_;
    AliasTable table_;
};

/// Sample the cycle type of a uniform element of Gamma^n x| S_n without
/// touching the group: draw indicators, and for each l-spacing draw an
/// independent block type Y; every j-cycle of Y becomes a (j*l)-cycle.
/// The result always has weight (block degree) * n.
inline Partition sample_cycle_type(const CycleTypeSampler& gamma_types, int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("sample_cycle_type: n < 1");
    std::map<int, int> acc;
    int prev = 1;
    for (int pos = 2; pos <= n + 1; ++pos) {
        const bool one = pos == n + 1 || rng.bernoulli(1.0 / pos);
        if (!one) continue;
        const int l = pos - prev;
        prev = pos;
        for (auto [j, a] : gamma_types.draw(rng).entries()) acc[j * l] += a;
    }
    std::vector<Partition::Entry> entries(acc.begin(), acc.end());
    return Partition::from_mults(std::move(entries));
}

inline Partition sample_cycle_type(const GroupSpec& gamma, int n, Rng& rng) {
    CycleTypeSampler sampler(gamma.cycle_index());
    return sample_cycle_type(sampler, n, rng);
}

/// Same walk, truncated: fills counts[b-1] = number of b-cycles for b <= B.
/// Allocation-free; this is the hot path of the TV experiments.
inline void sample_coupled_counts(const CycleTypeSampler& gamma_types, int n, int B,
                                  std::vector<int>& counts, Rng& rng) {
    counts.assign(B, 0);
    int prev = 1;
    for (int pos = 2; pos <= n + 1; ++pos) {
        const bool one = pos == n + 1 || rng.bernoulli(1.0 / pos);
        if (!one) continue;
        const int l = pos - prev;
        prev = pos;
        if (l > B) {
            gamma_types.draw(rng);  // the type is still consumed
            continue;
        }
        for (auto [j, a] : gamma_types.draw(rng).entries()) {
            if (j * l > B) break;
            counts[j * l - 1] += a;
        }
    }
}

/// Doubly-indexed variant for Gamma = S_k: the block types are themselves
/// produced by inner indicator sequences of length k, one per outer spacing.
/// An outer j-spacing combined with an inner l-spacing yields one
/// (j*l)-cycle. Counts truncated at B.
inline void sample_skn_counts(int k, int n, int B, std::vector<int>& counts, Rng& rng) {
    if (k < 1 || n < 1) throw std::invalid_argument("sample_skn_counts: k, n >= 1 required");
    counts.assign(B, 0);
    int prev = 1;
    for (int pos = 2; pos <= n + 1; ++pos) {
        const bool one = pos == n + 1 || rng.bernoulli(1.0 / pos);
        if (!one) continue;
        const int j = pos - prev;
        prev = pos;
        int inner_prev = 1;
        for (int q = 2; q <= k + 1; ++q) {
            const bool inner_one = q == k + 1 || rng.bernoulli(1.0 / q);
            if (!inner_one) continue;
            const int l = q - inner_prev;
            inner_prev = q;
            if (j * l <= B) ++counts[j * l - 1];
        }
    }
}

/// The k -> infinity companion of sample_skn_counts: inner sequences become
/// infinite, so inner l-spacing counts are independent Poisson(1/l).
inline void sample_skn_limit_counts(int n, int B, std::vector<int>& counts, Rng& rng) {
    if (n < 1) throw std::invalid_argument("sample_skn_limit_counts: n >= 1 required");
    counts.assign(B, 0);
    int prev = 1;
    for (int pos = 2; pos <= n + 1; ++pos) {
        const bool one = pos == n + 1 || rng.bernoulli(1.0 / pos);
        if (!one) continue;
        const int j = pos - prev;
        prev = pos;
        for (int l = 1; j * l <= B; ++l) counts[j * l - 1] += static_cast<int>(rng.poisson(1.0 / l));
    }
}

/// Coupled sampler for the product action of S_k x S_n on the grid: two
/// independent indicator sequences; an i-spacing in the first and a
/// j-spacing in the second combine into gcd(i,j) cycles of length lcm(i,j).
inline void sample_product_coupled_counts(int k, int n, int B, std::vector<int>& counts,
                                          Rng& rng) {
    if (k < 1 || n < 1) throw std::invalid_argument("sample_product_coupled_counts: k, n >= 1");
    counts.assign(B, 0);
    // Spacing-length histograms; only lengths <= B can contribute.
    auto lengths = [&](int m) {
        std::vector<int> hist(B + 1, 0);
        int prev = 1;
        for (int pos = 2; pos <= m + 1; ++pos) {
            const bool one = pos == m + 1 || rng.bernoulli(1.0 / pos);
            if (!one) continue;
            const int l = pos - prev;
            prev = pos;
            if (l <= B) ++hist[l];
        }
        return hist;
    };
    const auto h1 = lengths(k);
    const auto h2 = lengths(n);
    for (int i = 1; i <= B; ++i) {
        if (!h1[i]) continue;
        for (int j = 1; j <= B; ++j) {
            if (!h2[j]) continue;
            const long long l = static_cast<long long>(lcm_u(i, j));
            if (l <= B)
                counts[l - 1] += static_cast<int>(gcd_u(i, j)) * h1[i] * h2[j];
        }
    }
}

/// Exact joint law of (C_1,...,C_B) for Gamma^n x| S_n, by exhausting the
/// 2^{n-1} indicator patterns and convolving the exact per-spacing type
/// distributions. Throws CapExceeded when 2^{n-1} |types|^n > cap.
inline std::map<std::vector<int>, Rat> exact_coupled_distribution(
    const CycleIndexPoly& zGamma, int n, int B, long long cap = kDefaultEnumerationCap) {
    if (n < 1) throw std::invalid_argument("exact_coupled_distribution: n < 1");
    {
        Int work = 1;
        mpz_ui_pow_ui(work.get_mpz_t(), 2, static_cast<unsigned long>(n - 1));
        Int types_pow;
        mpz_ui_pow_ui(types_pow.get_mpz_t(), zGamma.terms().size(), static_cast<unsigned long>(n));
        if (Int(work * types_pow) > static_cast<long>(cap))
            throw CapExceeded("exact_coupled_distribution: enumeration exceeds cap");
    }

    // Per spacing length l: the exact distribution of the contribution to
    // (C_1..C_B) of one block type.
    std::vector<std::vector<std::pair<std::vector<int>, Rat>>> contrib(n + 1);
    for (int l = 1; l <= n; ++l) {
        std::map<std::vector<int>, Rat> merged;
        for (const auto& [type, p] : zGamma.terms()) {
            std::vector<int> delta(B, 0);
            for (auto [j, a] : type.entries())
                if (j * l <= B) delta[j * l - 1] += a;
            merged[delta] += p;
        }
        contrib[l].assign(merged.begin(), merged.end());
    }

    std::map<std::vector<int>, Rat> law;
    const std::uint64_t patterns = n == 1 ? 1 : (std::uint64_t{1} << (n - 1));
    for (std::uint64_t mask = 0; mask < patterns; ++mask) {
        Rat pattern_prob = 1;
        std::vector<int> spacing_lengths;
        int prev = 1;
        for (int pos = 2; pos <= n + 1; ++pos) {
            bool one = true;
            if (pos <= n) {
                one = (mask >> (pos - 2)) & 1;
                pattern_prob *= one ? Rat(1, pos) : Rat(pos - 1, pos);
            }
            if (one) {
                spacing_lengths.push_back(pos - prev);
                prev = pos;
            }
        }
        std::map<std::vector<int>, Rat> dist;
        dist.emplace(std::vector<int>(B, 0), pattern_prob);
        for (int l : spacing_lengths) {
            std::map<std::vector<int>, Rat> next;
            for (const auto& [vec, p] : dist) {
                for (const auto& [delta, q] : contrib[l]) {
                    std::vector<int> sum(vec);
                    for (int b = 0; b < B; ++b) sum[b] += delta[b];
                    next[sum] += p * q;
                }
            }
            dist = std::move(next);
        }
        for (const auto& [vec, p] : dist) law[vec] += p;
    }
    return law;
}

inline std::map<std::vector<int>, Rat> exact_coupled_distribution(
    const GroupSpec& gamma, int n, int B, long long cap = kDefaultEnumerationCap) {
    return exact_coupled_distribution(gamma.cycle_index(), n, B, cap);
}

}  // namespace wreathlab
